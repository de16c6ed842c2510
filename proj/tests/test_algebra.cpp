#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>

#include "arcalg/algebra.hpp"

using namespace arcalg;

namespace {

ProductTerms mult_terms(const AlgebraContext& K, const ProductTerms& a, const ProductTerms& b) {
    ProductTerms out;
    for (auto [i, ci] : a)
        for (auto [j, cj] : b)
            for (auto [k, ck] : K.product(i, j)) {
                out[k] += ci * cj * ck;
                if (out[k] == 0) out.erase(k);
            }
    return out;
}

std::string terms_str(const AlgebraContext& K, const ProductTerms& t) {
    std::string s;
    for (auto [k, c] : t) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += std::to_string(c) + "*";
        s += "(" + diagram_str(K.basis[k]) + ")";
    }
    return s.empty() ? "0" : s;
}

}  // namespace

TEST_CASE("smallest cover: dimension, degrees, full multiplication table") {
    AlgebraContext K(1, 1);
    REQUIRE(K.dim() == 5);
    size_t e1 = K.index("v^", "v^", "v^");
    size_t X = K.index("v^", "^v", "v^");
    size_t A = K.index("v^", "^v", "^v");
    size_t B = K.index("^v", "^v", "v^");
    size_t e0 = K.index("^v", "^v", "^v");
    REQUIRE(K.basis[e1].degree == 0);
    REQUIRE(K.basis[e0].degree == 0);
    REQUIRE(K.basis[X].degree == 2);
    REQUIRE(K.basis[A].degree == 1);
    REQUIRE(K.basis[B].degree == 1);

    auto p = [&](size_t i, size_t j) { return K.product(i, j); };
    REQUIRE(p(e1, e1) == ProductTerms{{e1, 1}});
    REQUIRE(p(e0, e0) == ProductTerms{{e0, 1}});
    REQUIRE(p(e1, e0).empty());
    REQUIRE(p(e0, e1).empty());
    REQUIRE(p(A, B) == ProductTerms{{X, 1}});
    REQUIRE(p(B, A).empty());
    REQUIRE(p(X, X).empty());
    REQUIRE(p(X, A).empty());
    REQUIRE(p(B, X).empty());
    REQUIRE(p(X, e1) == ProductTerms{{X, 1}});
    REQUIRE(p(e1, X) == ProductTerms{{X, 1}});
    REQUIRE(p(e1, A) == ProductTerms{{A, 1}});
    REQUIRE(p(A, e0) == ProductTerms{{A, 1}});
    REQUIRE(p(e0, B) == ProductTerms{{B, 1}});
    REQUIRE(p(B, e1) == ProductTerms{{B, 1}});
    REQUIRE(p(A, A).empty());
    REQUIRE(p(B, B).empty());
    REQUIRE(p(A, X).empty());
    REQUIRE(p(X, B).empty());
}

TEST_CASE("regular truncation of the smallest cover is k[x]/x^2") {
    AlgebraContext H(1, 1, true);
    REQUIRE(H.dim() == 2);
    size_t e = H.index("v^", "v^", "v^");
    size_t x = H.index("v^", "^v", "v^");
    REQUIRE(H.product(e, e) == ProductTerms{{e, 1}});
    REQUIRE(H.product(e, x) == ProductTerms{{x, 1}});
    REQUIRE(H.product(x, e) == ProductTerms{{x, 1}});
    REQUIRE(H.product(x, x).empty());
}

TEST_CASE("dimension 47 at (2,2) with per-weight counts") {
    AlgebraContext K(2, 2);
    REQUIRE(K.dim() == 47);
    // #{λ : λ̲ oriented by μ} in weight enumeration order
    std::vector<int> dvec;
    for (const Weight& mu : K.weights) {
        int c = 0;
        for (const Weight& la : K.weights)
            if (is_oriented(K.cup(la), mu)) ++c;
        dvec.push_back(c);
    }
    REQUIRE(dvec == std::vector<int>{1, 2, 2, 2, 5, 3});
    std::vector<int> pdim;
    for (const Weight& la : K.weights) pdim.push_back((int)K.with_top(la).size());
    REQUIRE(pdim == std::vector<int>{11, 11, 7, 7, 8, 3});
}

TEST_CASE("worked products reproduce the two displayed examples byte-exactly") {
    AlgebraContext K(2, 2);
    size_t a = K.index("v^v^", "v^v^", "vv^^");
    size_t b = K.index("vv^^", "v^v^", "v^v^");
    REQUIRE(terms_str(K, K.product(a, b)) == "(v^v^|v^^v|v^v^) + (v^v^|^vv^|v^v^)");
    ProductTerms expect1{{K.index("v^v^", "v^^v", "v^v^"), 1}, {K.index("v^v^", "^vv^", "v^v^"), 1}};
    REQUIRE(K.product(a, b) == expect1);

    REQUIRE(terms_str(K, K.product(b, a)) == "(vv^^|v^v^|vv^^) + (vv^^|^v^v|vv^^)");
    ProductTerms expect2{{K.index("vv^^", "^v^v", "vv^^"), 1}, {K.index("vv^^", "v^v^", "vv^^"), 1}};
    REQUIRE(K.product(b, a) == expect2);
}

TEST_CASE("idempotents are orthogonal and sum to the identity") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
        AlgebraContext K(m, n);
        for (const Weight& la : K.basis_weights)
            for (const Weight& mu : K.basis_weights) {
                auto pr = K.product(K.idempotent(la), K.idempotent(mu));
                if (la == mu)
                    REQUIRE(pr == ProductTerms{{K.idempotent(la), 1}});
                else
                    REQUIRE(pr.empty());
            }
        for (size_t i = 0; i < K.dim(); ++i) {
            ProductTerms left, right;
            for (const Weight& la : K.basis_weights) {
                for (auto [k, c] : K.product(K.idempotent(la), i)) left[k] += c;
                for (auto [k, c] : K.product(i, K.idempotent(la))) right[k] += c;
            }
            REQUIRE(left == ProductTerms{{i, 1}});
            REQUIRE(right == ProductTerms{{i, 1}});
        }
    }
}

TEST_CASE("associativity, exhaustively on small covers") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}}) {
        AlgebraContext K(m, n);
        const size_t d = K.dim();
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                ProductTerms ij = K.product(i, j);
                for (size_t k = 0; k < d; ++k) {
                    ProductTerms lhs = mult_terms(K, ij, {{k, 1}});
                    ProductTerms rhs = mult_terms(K, {{i, 1}}, K.product(j, k));
                    REQUIRE(lhs == rhs);
                }
            }
    }
}

TEST_CASE("products are graded") {
    AlgebraContext K(2, 2);
    for (size_t i = 0; i < K.dim(); ++i)
        for (size_t j = 0; j < K.dim(); ++j)
            for (auto [k, c] : K.product(i, j))
                REQUIRE(K.basis[k].degree == K.basis[i].degree + K.basis[j].degree);
}

TEST_CASE("star is a degree-preserving anti-automorphism") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}}) {
        AlgebraContext K(m, n);
        for (size_t i = 0; i < K.dim(); ++i) {
            REQUIRE(K.star(K.star(i)) == i);
            REQUIRE(K.basis[K.star(i)].degree == K.basis[i].degree);
        }
        for (size_t i = 0; i < K.dim(); ++i)
            for (size_t j = 0; j < K.dim(); ++j) {
                ProductTerms mapped;
                for (auto [k, c] : K.product(i, j)) mapped[K.star(k)] += c;
                REQUIRE(mapped == K.product(K.star(j), K.star(i)));
            }
    }
}

TEST_CASE("rotation plus star is an isomorphism onto the transposed-box cover") {
    AlgebraContext K12(1, 2), K21(2, 1);
    REQUIRE(K12.dim() == K21.dim());
    for (size_t i = 0; i < K12.dim(); ++i) {
        size_t phi = star_rotate_diagram(K12, i, K21);
        REQUIRE(K12.basis[i].degree == K21.basis[phi].degree);
    }
    for (size_t i = 0; i < K12.dim(); ++i)
        for (size_t j = 0; j < K12.dim(); ++j) {
            ProductTerms mapped;
            for (auto [k, c] : K12.product(i, j)) mapped[star_rotate_diagram(K12, k, K21)] += c;
            REQUIRE(mapped ==
                    K21.product(star_rotate_diagram(K12, i, K21), star_rotate_diagram(K12, j, K21)));
        }
    // rotation alone is an anti-isomorphism
    for (size_t i = 0; i < K12.dim(); ++i)
        for (size_t j = 0; j < K12.dim(); ++j) {
            ProductTerms mapped;
            for (auto [k, c] : K12.product(i, j)) mapped[rotate_diagram(K12, k, K21)] += c;
            REQUIRE(mapped == K21.product(rotate_diagram(K12, j, K21), rotate_diagram(K12, i, K21)));
        }
}

TEST_CASE("surgery result does not depend on the site schedule") {
    AlgebraContext K(2, 2);
    for (size_t i = 0; i < K.dim(); ++i)
        for (size_t j = 0; j < K.dim(); ++j) {
            const BasisDiagram& a = K.basis[i];
            const BasisDiagram& b = K.basis[j];
            if (a.top != b.bottom) continue;
            surgery::PictureSpec ps;
            ps.labels = {a.middle, b.middle};
            add_cup_arcs(ps, K.cup(a.bottom), 0, -1);
            add_mirror_gap(ps, K.cup(a.top), 0);
            add_cup_arcs(ps, K.cup(b.top), 1, 2);
            std::reverse(ps.sites.begin(), ps.sites.end());
            ProductTerms reversed;
            for (const auto& st : surgery::run(ps)) ++reversed[K.index(a.bottom, st[0], b.top)];
            REQUIRE(reversed == K.product(i, j));
        }
}

TEST_CASE("the regular truncation embeds multiplicatively") {
    AlgebraContext K(2, 2), H(2, 2, true);
    for (size_t i = 0; i < H.dim(); ++i)
        for (size_t j = 0; j < H.dim(); ++j) {
            const BasisDiagram& a = H.basis[i];
            const BasisDiagram& b = H.basis[j];
            ProductTerms viaK;
            for (auto [k, c] : K.product(K.index(a.bottom, a.middle, a.top),
                                         K.index(b.bottom, b.middle, b.top))) {
                const BasisDiagram& d = K.basis[k];
                viaK[H.index(d.bottom, d.middle, d.top)] += c;
            }
            REQUIRE(viaK == H.product(i, j));
        }
}

TEST_CASE("field-coefficient elements multiply through the integer table") {
    AlgebraContext K(1, 1);
    size_t X = K.index("v^", "^v", "v^");
    size_t A = K.index("v^", "^v", "^v");
    size_t B = K.index("^v", "^v", "v^");
    AlgElem<Rational> ab{{A, Rational(1)}, {B, Rational(1)}};
    auto sq = mult(K, ab, ab);
    REQUIRE(sq == AlgElem<Rational>{{X, Rational(1)}});
    Fp::set_modulus(3);
    AlgElem<Fp> abp{{A, Fp(1)}, {B, Fp(2)}};
    auto sqp = mult(K, abp, abp);
    REQUIRE(sqp == AlgElem<Fp>{{X, Fp(2)}});
    auto st = star_elem(K, abp);
    REQUIRE(st == AlgElem<Fp>{{B, Fp(1)}, {A, Fp(2)}});
}
