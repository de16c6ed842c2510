#pragma once

// The diagram algebras.  A basis element (λ|μ|ν) is an oriented stacked
// diagram: cup diagram of λ below, weight μ on the line, cap diagram of ν
// above, with both halves oriented by μ.  Multiplication stacks two such
// pictures and resolves the middle cap/cup pairs by surgery.
//
// One context class serves both algebras: the full cover uses every weight
// as bottom/top; the regular-weight truncation e·A·e restricts bottom and
// top to regular weights (middles stay unrestricted).

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "arcalg/combinatorics.hpp"
#include "arcalg/fields.hpp"
#include "arcalg/poly.hpp"
#include "arcalg/surgery.hpp"

namespace arcalg {

struct BasisDiagram {
    Weight bottom, middle, top;
    int degree = 0;
};

inline std::string diagram_str(const BasisDiagram& d) { return d.bottom + "|" + d.middle + "|" + d.top; }

inline BasisDiagram parse_diagram_str(const std::string& s) {
    size_t a = s.find('|');
    size_t b = (a == std::string::npos) ? std::string::npos : s.find('|', a + 1);
    if (b == std::string::npos) throw std::invalid_argument("diagram string must be bottom|middle|top");
    BasisDiagram d;
    d.bottom = s.substr(0, a);
    d.middle = s.substr(a + 1, b - a - 1);
    d.top = s.substr(b + 1);
    return d;
}

// Arcs of a cup diagram placed on weight line `line`, rays running to `ray_line`.
inline void add_cup_arcs(surgery::PictureSpec& ps, const CupDiagram& cd, int line, int ray_line) {
    for (auto [i, j] : cd.cups) ps.arcs.push_back({line, i, line, j});
    for (int k : cd.rays) ps.arcs.push_back({line, k, ray_line, k});
}

// Kissing cap/cup pairs of a seam between lines g and g+1: surgery sites in
// left-endpoint order, rays becoming vertical strands.
inline void add_mirror_gap(surgery::PictureSpec& ps, const CupDiagram& cd, int g) {
    for (auto [i, j] : cd.cups) {
        int cap = static_cast<int>(ps.arcs.size());
        ps.arcs.push_back({g, i, g, j});
        int cup = static_cast<int>(ps.arcs.size());
        ps.arcs.push_back({g + 1, i, g + 1, j});
        ps.sites.push_back({cap, cup});
    }
    for (int k : cd.rays) ps.arcs.push_back({g, k, g + 1, k});
}

using ProductTerms = std::map<size_t, long long>;  // basis index -> integer coefficient

class AlgebraContext {
   public:
    int m, n;
    bool regular_only;
    std::vector<Weight> weights;        // ambient weight set, enumeration order
    std::vector<Weight> basis_weights;  // admissible bottom/top weights
    std::vector<BasisDiagram> basis;

    AlgebraContext(int m_, int n_, bool regular_only_ = false)
        : m(m_), n(n_), regular_only(regular_only_), weights(enumerate_weights(m_, n_)) {
        for (size_t k = 0; k < weights.size(); ++k) {
            weight_idx_[weights[k]] = static_cast<int>(k);
            cup_[weights[k]] = cup_diagram(weights[k]);
        }
        for (const Weight& w : weights)
            if (!regular_only || is_regular(w)) basis_weights.push_back(w);
        for (const Weight& bot : basis_weights)
            for (const Weight& top : basis_weights)
                for (const Weight& mid : weights) {
                    const CupDiagram& cb = cup_.at(bot);
                    const CupDiagram& ct = cup_.at(top);
                    if (!is_oriented(cb, mid) || !is_oriented(ct, mid)) continue;
                    BasisDiagram d{bot, mid, top, degree(cb, mid) + degree(ct, mid)};
                    index_[key(d)] = basis.size();
                    by_bottom_[bot].push_back(basis.size());
                    by_top_[top].push_back(basis.size());
                    basis.push_back(std::move(d));
                }
        for (const Weight& w : basis_weights) {
            by_bottom_.try_emplace(w);
            by_top_.try_emplace(w);
        }
    }

    size_t dim() const { return basis.size(); }

    const CupDiagram& cup(const Weight& w) const { return cup_.at(w); }

    long long find(const Weight& bot, const Weight& mid, const Weight& top) const {
        auto it = weight_idx_.find(bot);
        auto im = weight_idx_.find(mid);
        auto iu = weight_idx_.find(top);
        if (it == weight_idx_.end() || im == weight_idx_.end() || iu == weight_idx_.end()) return -1;
        auto ib = index_.find({it->second, im->second, iu->second});
        return ib == index_.end() ? -1 : static_cast<long long>(ib->second);
    }

    size_t index(const Weight& bot, const Weight& mid, const Weight& top) const {
        long long k = find(bot, mid, top);
        if (k < 0) throw std::logic_error("algebra: diagram not in basis: " + bot + "|" + mid + "|" + top);
        return static_cast<size_t>(k);
    }

    size_t idempotent(const Weight& w) const { return index(w, w, w); }

    bool is_idempotent(size_t i) const {
        return basis[i].bottom == basis[i].middle && basis[i].middle == basis[i].top;
    }

    size_t star(size_t i) const { return index(basis[i].top, basis[i].middle, basis[i].bottom); }

    const std::vector<size_t>& with_bottom(const Weight& w) const { return by_bottom_.at(w); }
    const std::vector<size_t>& with_top(const Weight& w) const { return by_top_.at(w); }

    const ProductTerms& product(size_t i, size_t j) const {
        uint64_t k = (static_cast<uint64_t>(i) << 32) | j;
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(k, multiply_raw(i, j)).first->second;
    }

    ProductTerms multiply_raw(size_t i, size_t j) const {
        const BasisDiagram& a = basis[i];
        const BasisDiagram& b = basis[j];
        ProductTerms out;
        if (a.top != b.bottom) return out;
        surgery::PictureSpec ps;
        ps.labels = {a.middle, b.middle};
        add_cup_arcs(ps, cup_.at(a.bottom), 0, -1);
        add_mirror_gap(ps, cup_.at(a.top), 0);
        add_cup_arcs(ps, cup_.at(b.top), 1, 2);
        for (const auto& st : surgery::run(ps)) {
            if (st[0] != st[1]) throw std::logic_error("algebra: seam weights disagree after surgery");
            size_t idx = index(a.bottom, st[0], b.top);
            if (basis[idx].degree != a.degree + b.degree)
                throw std::logic_error("algebra: product term violates degree additivity");
            ++out[idx];
        }
        return out;
    }

   private:
    std::array<int, 3> key(const BasisDiagram& d) const {
        return {weight_idx_.at(d.bottom), weight_idx_.at(d.middle), weight_idx_.at(d.top)};
    }

    std::map<Weight, int> weight_idx_;
    std::map<Weight, CupDiagram> cup_;
    std::map<std::array<int, 3>, size_t> index_;
    std::map<Weight, std::vector<size_t>> by_bottom_, by_top_;
    mutable std::unordered_map<uint64_t, ProductTerms> memo_;
};

// 180° rotation of weights: reverse and exchange ∨ ↔ ∧ (lands in Λ_{n,m}).
inline Weight rev_flip(const Weight& w) {
    Weight r(w.rbegin(), w.rend());
    for (char& c : r) c = (c == DOWN) ? UP : DOWN;
    return r;
}

// Rotating the whole picture is an anti-isomorphism onto the (n,m) algebra.
inline size_t rotate_diagram(const AlgebraContext& src, size_t i, const AlgebraContext& dst) {
    const BasisDiagram& d = src.basis[i];
    return dst.index(rev_flip(d.top), rev_flip(d.middle), rev_flip(d.bottom));
}

// rotate ∘ star: a degree-preserving isomorphism onto the (n,m) algebra.
inline size_t star_rotate_diagram(const AlgebraContext& src, size_t i, const AlgebraContext& dst) {
    const BasisDiagram& d = src.basis[i];
    return dst.index(rev_flip(d.bottom), rev_flip(d.middle), rev_flip(d.top));
}

// Graded Cartan matrix over the admissible bottom/top weights.
inline std::vector<std::vector<Poly>> cartan_matrix(const AlgebraContext& ctx) {
    size_t w = ctx.basis_weights.size();
    std::vector<std::vector<Poly>> c(w, std::vector<Poly>(w));
    std::map<Weight, size_t> pos;
    for (size_t k = 0; k < w; ++k) pos[ctx.basis_weights[k]] = k;
    for (const BasisDiagram& d : ctx.basis) {
        Poly& e = c[pos[d.bottom]][pos[d.top]];
        e = e + Poly::q_power(d.degree);
    }
    return c;
}

// Field-coefficient elements as sparse maps over the diagram basis.
template <class F>
using AlgElem = std::map<size_t, F>;

template <class F>
void add_scaled(AlgElem<F>& acc, const AlgElem<F>& x, const F& c) {
    for (const auto& [i, v] : x) {
        F w = acc.count(i) ? acc[i] + v * c : v * c;
        if (FieldTraits<F>::is_zero(w))
            acc.erase(i);
        else
            acc[i] = w;
    }
}

template <class F>
AlgElem<F> mult(const AlgebraContext& ctx, const AlgElem<F>& a, const AlgElem<F>& b) {
    AlgElem<F> out;
    for (const auto& [i, ci] : a)
        for (const auto& [j, cj] : b) {
            F c = ci * cj;
            if (FieldTraits<F>::is_zero(c)) continue;
            for (const auto& [k, mult_k] : ctx.product(i, j)) {
                F w = c * FieldTraits<F>::from_long(mult_k);
                auto it = out.find(k);
                if (it == out.end())
                    out[k] = w;
                else {
                    it->second = it->second + w;
                    if (FieldTraits<F>::is_zero(it->second)) out.erase(it);
                }
            }
        }
    return out;
}

template <class F>
AlgElem<F> star_elem(const AlgebraContext& ctx, const AlgElem<F>& a) {
    AlgElem<F> out;
    for (const auto& [i, c] : a) out[ctx.star(i)] = c;
    return out;
}

}  // namespace arcalg
