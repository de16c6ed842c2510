#pragma once

// Geometric bimodules attached to the elementary crossingless matching with a
// single turn-back joining two neighbouring boundary points, the exact pairs
// of induction/restriction functors they induce between the module categories
// of adjacent box sizes, the truncation onto regular weights together with its
// two adjoints and unit map, and the inductive construction of the
// indecomposable tilting modules.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arcalg/algebra.hpp"
#include "arcalg/combinatorics.hpp"
#include "arcalg/linalg.hpp"
#include "arcalg/modules.hpp"
#include "arcalg/surgery.hpp"

namespace arcalg {

// ---------------------------------------------------------------------------
// The matching joins boundary points p, p+1 (1-based).  Crossing it deletes
// (or inserts) the two symbols at those positions; a weight can cross only if
// the two symbols are opposite.  The pair helpers live with the other weight
// combinatorics; here we only add the lowest weight of a box.

inline Weight minimal_weight(int m, int n) { return Weight(static_cast<size_t>(n), DOWN) + Weight(static_cast<size_t>(m), UP); }

// ---------------------------------------------------------------------------
// ContextCache — shared, lazily built algebra contexts keyed by box size.
// Multiplication tables are memoized per context, so reusing one context
// across functor applications is much cheaper than rebuilding it.

class ContextCache {
   public:
    const AlgebraContext& get(int m, int n, bool regular_only = false) {
        auto key = std::make_tuple(m, n, regular_only);
        auto it = store_.find(key);
        if (it == store_.end()) it = store_.emplace(key, std::make_unique<AlgebraContext>(m, n, regular_only)).first;
        return *it->second;
    }

   private:
    std::map<std::tuple<int, int, bool>, std::unique_ptr<AlgebraContext>> store_;
};

// ---------------------------------------------------------------------------
// TurnbackBimodule
//
// Basis: stacked oriented pictures with four label lines, reading bottom to
// top: an outer face (cup diagram under its weight), an inner weight line on
// the wide side of the matching, the turn-back coupon, an inner weight line
// on the narrow side, and the mirrored outer face on top.  `wide_below`
// selects which side of the matching faces down; the wide inner line always
// carries the oriented pair at positions (pos, pos+1) that the turn-back
// swallows.  The left algebra acts by stacking underneath, the right algebra
// by stacking on top; both actions are evaluated by the generic surgery
// engine, and commute (spot-checked on construction).

class TurnbackBimodule {
   public:
    struct Elem {
        Weight out_b;   // outer face weight at the bottom
        Weight line_b;  // inner weight line at the bottom
        Weight line_t;  // inner weight line at the top
        Weight out_t;   // outer face weight at the top
        int degree = 0;
    };

    const AlgebraContext* wide;
    const AlgebraContext* narrow;
    int pos;          // the turn-back joins wide-side boundary points pos, pos+1
    bool wide_below;  // true: the wide side faces down (its algebra acts on the left)

    std::vector<Elem> basis;

    TurnbackBimodule(const AlgebraContext& wideK, const AlgebraContext& narrowK, int p, bool wide_below_)
        : wide(&wideK), narrow(&narrowK), pos(p), wide_below(wide_below_) {
        if (narrowK.m != wideK.m - 1 || narrowK.n != wideK.n - 1)
            throw std::invalid_argument("turn-back bimodule: box sizes must differ by one in each direction");
        if (p < 1 || p >= wideK.m + wideK.n) throw std::invalid_argument("turn-back bimodule: position out of range");
        for (const Weight& nu : wideK.weights) {
            if (!has_pair(nu, pos)) continue;
            const Weight lam = remove_pair(nu, pos);
            const int coupon_deg = (nu[static_cast<size_t>(pos - 1)] == '^') ? 1 : 0;
            for (const Weight& mu : wideK.basis_weights) {
                if (!is_oriented(wideK.cup(mu), nu)) continue;
                const int dmu = degree(wideK.cup(mu), nu);
                for (const Weight& eta : narrowK.basis_weights) {
                    if (!is_oriented(narrowK.cup(eta), lam)) continue;
                    const int deg = dmu + degree(narrowK.cup(eta), lam) + coupon_deg;
                    Elem e;
                    if (wide_below)
                        e = Elem{mu, nu, lam, eta, deg};
                    else
                        e = Elem{eta, lam, nu, mu, deg};
                    index_[key_of(e.out_b, e.line_b, e.line_t, e.out_t)] = basis.size();
                    by_out_b_[e.out_b].push_back(basis.size());
                    by_out_t_[e.out_t].push_back(basis.size());
                    basis.push_back(std::move(e));
                }
            }
        }
        for (const Weight& w : bottom_algebra().basis_weights) by_out_b_.try_emplace(w);
        for (const Weight& w : top_algebra().basis_weights) by_out_t_.try_emplace(w);
        verify_commutation(60);
    }

    const AlgebraContext& bottom_algebra() const { return wide_below ? *wide : *narrow; }
    const AlgebraContext& top_algebra() const { return wide_below ? *narrow : *wide; }

    size_t dim() const { return basis.size(); }

    long long find(const Weight& out_b, const Weight& line_b, const Weight& line_t, const Weight& out_t) const {
        auto it = index_.find(key_of(out_b, line_b, line_t, out_t));
        return (it == index_.end()) ? -1 : static_cast<long long>(it->second);
    }

    size_t index(const Weight& out_b, const Weight& line_b, const Weight& line_t, const Weight& out_t) const {
        long long r = find(out_b, line_b, line_t, out_t);
        if (r < 0)
            throw std::logic_error("turn-back bimodule: unknown element " + out_b + "|" + line_b + "|" + line_t + "|" + out_t);
        return static_cast<size_t>(r);
    }

    const std::vector<size_t>& with_out_b(const Weight& w) const { return by_out_b_.at(w); }
    const std::vector<size_t>& with_out_t(const Weight& w) const { return by_out_t_.at(w); }

    // a · x for a in the bottom algebra; requires the faces to meet.
    const ProductTerms& left_act(size_t a, size_t x) const {
        const uint64_t key = (static_cast<uint64_t>(a) << 32) | static_cast<uint64_t>(x);
        auto it = lmemo_.find(key);
        if (it != lmemo_.end()) return it->second;
        const AlgebraContext& A = bottom_algebra();
        const BasisDiagram& da = A.basis.at(a);
        const Elem& e = basis.at(x);
        if (da.top != e.out_b) throw std::invalid_argument("turn-back bimodule: left action faces do not meet");
        surgery::PictureSpec ps;
        ps.labels = {da.middle, e.line_b, e.line_t};
        if (wide_below)
            ps.x = {{}, {}, narrow_x()};
        else
            ps.x = {narrow_x(), narrow_x(), {}};
        add_cup_arcs(ps, A.cup(da.bottom), 0, -1);
        add_mirror_gap(ps, A.cup(da.top), 0);
        if (wide_below)
            add_coupon(ps, 1, 2);
        else
            add_coupon(ps, 2, 1);
        add_cup_arcs(ps, top_algebra().cup(e.out_t), 2, 3);
        ProductTerms out;
        for (const auto& st : surgery::run(ps)) {
            if (st[0] != st[1]) throw std::logic_error("turn-back bimodule: seam mismatch in left action");
            const size_t r = index(da.bottom, st[1], st[2], e.out_t);
            if (basis[r].degree != da.degree + e.degree)
                throw std::logic_error("turn-back bimodule: left action does not add degrees");
            ++out[r];
        }
        return lmemo_.emplace(key, std::move(out)).first->second;
    }

    // x · b for b in the top algebra; requires the faces to meet.
    const ProductTerms& right_act(size_t x, size_t b) const {
        const uint64_t key = (static_cast<uint64_t>(x) << 32) | static_cast<uint64_t>(b);
        auto it = rmemo_.find(key);
        if (it != rmemo_.end()) return it->second;
        const AlgebraContext& B = top_algebra();
        const BasisDiagram& db = B.basis.at(b);
        const Elem& e = basis.at(x);
        if (e.out_t != db.bottom) throw std::invalid_argument("turn-back bimodule: right action faces do not meet");
        surgery::PictureSpec ps;
        ps.labels = {e.line_b, e.line_t, db.middle};
        if (wide_below)
            ps.x = {{}, narrow_x(), narrow_x()};
        else
            ps.x = {narrow_x(), {}, {}};
        add_cup_arcs(ps, bottom_algebra().cup(e.out_b), 0, -1);
        if (wide_below)
            add_coupon(ps, 0, 1);
        else
            add_coupon(ps, 1, 0);
        add_mirror_gap(ps, B.cup(e.out_t), 1);
        add_cup_arcs(ps, B.cup(db.top), 2, 3);
        ProductTerms out;
        for (const auto& st : surgery::run(ps)) {
            if (st[1] != st[2]) throw std::logic_error("turn-back bimodule: seam mismatch in right action");
            const size_t r = index(e.out_b, st[0], st[1], db.top);
            if (basis[r].degree != e.degree + db.degree)
                throw std::logic_error("turn-back bimodule: right action does not add degrees");
            ++out[r];
        }
        return rmemo_.emplace(key, std::move(out)).first->second;
    }

   private:
    static std::string key_of(const Weight& a, const Weight& b, const Weight& c, const Weight& d) {
        return a + "|" + b + "|" + c + "|" + d;
    }

    std::vector<int> narrow_x() const {
        // x-coordinates aligning the narrow side's positions with the wide
        // side's, leaving room for the two swallowed positions
        std::vector<int> x(static_cast<size_t>(narrow->m + narrow->n));
        for (int k = 1; k <= narrow->m + narrow->n; ++k) x[static_cast<size_t>(k - 1)] = (k < pos) ? k : k + 2;
        return x;
    }

    void add_coupon(surgery::PictureSpec& ps, int wide_line, int narrow_line) const {
        ps.arcs.push_back({wide_line, pos, wide_line, pos + 1});
        const int wl = wide->m + wide->n;
        int nk = 1;
        for (int k = 1; k <= wl; ++k) {
            if (k == pos || k == pos + 1) continue;
            ps.arcs.push_back({wide_line, k, narrow_line, nk});
            ++nk;
        }
    }

    // (a·x)·b = a·(x·b) on a strided sample of composable triples
    void verify_commutation(size_t budget) const {
        const AlgebraContext& A = bottom_algebra();
        const AlgebraContext& B = top_algebra();
        const uint64_t total = static_cast<uint64_t>(A.dim()) * dim() * B.dim();
        if (total == 0) return;
        const uint64_t step = std::max<uint64_t>(1, total / (budget * 8 + 1));
        size_t checked = 0;
        for (uint64_t t = 0; t < total && checked < budget; t += step) {
            const size_t a = static_cast<size_t>(t % A.dim());
            const size_t x = static_cast<size_t>((t / A.dim()) % dim());
            const size_t b = static_cast<size_t>(t / (A.dim() * dim()));
            if (A.basis[a].top != basis[x].out_b || basis[x].out_t != B.basis[b].bottom) continue;
            std::map<size_t, long long> lhs, rhs;
            for (const auto& [y, c] : left_act(a, x))
                for (const auto& [z, d] : right_act(y, b)) lhs[z] += c * d;
            for (const auto& [y, c] : right_act(x, b))
                for (const auto& [z, d] : left_act(a, y)) rhs[z] += c * d;
            for (auto* mp : {&lhs, &rhs})
                for (auto it2 = mp->begin(); it2 != mp->end();) it2 = (it2->second == 0) ? mp->erase(it2) : std::next(it2);
            if (lhs != rhs) throw std::logic_error("turn-back bimodule: left and right actions do not commute");
            ++checked;
        }
    }

    std::map<std::string, size_t> index_;
    std::map<Weight, std::vector<size_t>> by_out_b_, by_out_t_;
    mutable std::unordered_map<uint64_t, ProductTerms> lmemo_, rmemo_;
};

// Image of an integer product coefficient in the field, as a sparse entry;
// entries that vanish in the field's characteristic are dropped.
template <class F>
void push_term(SparseCol<F>& col, size_t row, long long c) {
    F v = FieldTraits<F>::from_long(c);
    if (!FieldTraits<F>::is_zero(v)) col.push_back({row, std::move(v)});
}

// The bimodule viewed as a left module over its bottom algebra.
template <class F>
ModuleRep<F> bimodule_as_left_module(const TurnbackBimodule& B, std::string name) {
    const AlgebraContext& K = B.bottom_algebra();
    ModuleRep<F> M;
    M.ctx = &K;
    M.name = std::move(name);
    M.coord_weight.resize(B.dim());
    for (size_t x = 0; x < B.dim(); ++x) M.coord_weight[x] = weight_index(K, B.basis[x].out_b);
    M.action.assign(K.dim(), {});
    for (size_t a = 0; a < K.dim(); ++a) {
        const Weight& atop = K.basis[a].top;
        for (size_t x : B.with_out_b(atop)) {
            const ProductTerms& terms = B.left_act(a, x);
            if (terms.empty()) continue;
            SparseCol<F> col;
            for (const auto& [y, c] : terms) push_term(col, y, c);
            if (!col.empty()) M.action[a][x] = std::move(col);
        }
    }
    finish_module(M);
    return M;
}

// The bimodule viewed as a left module over the top algebra, via its
// anti-automorphism (reflection): a ⋆ x := x · star(a).
template <class F>
ModuleRep<F> bimodule_as_right_module(const TurnbackBimodule& B, std::string name) {
    const AlgebraContext& K = B.top_algebra();
    ModuleRep<F> M;
    M.ctx = &K;
    M.name = std::move(name);
    M.coord_weight.resize(B.dim());
    for (size_t x = 0; x < B.dim(); ++x) M.coord_weight[x] = weight_index(K, B.basis[x].out_t);
    M.action.assign(K.dim(), {});
    for (size_t a = 0; a < K.dim(); ++a) {
        const size_t sa = K.star(a);
        const Weight& atop = K.basis[a].top;  // = bottom of star(a)
        for (size_t x : B.with_out_t(atop)) {
            const ProductTerms& terms = B.right_act(x, sa);
            if (terms.empty()) continue;
            SparseCol<F> col;
            for (const auto& [y, c] : terms) push_term(col, y, c);
            if (!col.empty()) M.action[a][x] = std::move(col);
        }
    }
    finish_module(M);
    return M;
}

// ---------------------------------------------------------------------------
// Relative tensor with the bimodule: B ⊗_{top algebra} N, a module over the
// bottom algebra.  Realized as the quotient of the free pair space spanned by
// (x, s) with out_t(x) = weight(s) by the balancing relations
// x·b ⊗ s − x ⊗ b·s over all basis elements b; the quotient's stability
// check re-verifies that the relation span is closed under the left action.

template <class F>
ModuleRep<F> apply_bimodule(const TurnbackBimodule& B, const ModuleRep<F>& N, std::string name) {
    const AlgebraContext& Kb = B.bottom_algebra();
    const AlgebraContext& Kt = B.top_algebra();
    if (N.ctx != &Kt) throw std::invalid_argument("bimodule tensor: module is over the wrong algebra");

    std::vector<std::pair<size_t, size_t>> pairs;
    std::map<std::pair<size_t, size_t>, size_t> pidx;
    for (size_t x = 0; x < B.dim(); ++x) {
        auto it = N.coords_by_weight.find(weight_index(Kt, B.basis[x].out_t));
        if (it == N.coords_by_weight.end()) continue;
        for (size_t s : it->second) {
            pidx[{x, s}] = pairs.size();
            pairs.emplace_back(x, s);
        }
    }

    ModuleRep<F> raw;
    raw.ctx = &Kb;
    raw.name = name + " (free pairs)";
    raw.coord_weight.resize(pairs.size());
    for (size_t t = 0; t < pairs.size(); ++t) raw.coord_weight[t] = weight_index(Kb, B.basis[pairs[t].first].out_b);
    raw.action.assign(Kb.dim(), {});
    for (size_t a = 0; a < Kb.dim(); ++a) {
        const Weight& atop = Kb.basis[a].top;
        for (size_t t = 0; t < pairs.size(); ++t) {
            const auto& [x, s] = pairs[t];
            if (B.basis[x].out_b != atop) continue;
            const ProductTerms& terms = B.left_act(a, x);
            if (terms.empty()) continue;
            SparseCol<F> col;
            for (const auto& [y, c] : terms) push_term(col, pidx.at({y, s}), c);
            if (!col.empty()) raw.action[a][t] = std::move(col);
        }
    }
    finish_module(raw);

    std::vector<Vec<F>> rels;
    for (size_t x = 0; x < B.dim(); ++x) {
        for (size_t b = 0; b < Kt.dim(); ++b) {
            if (Kt.is_idempotent(b)) continue;  // idempotent relations are trivial on matched pairs
            if (Kt.basis[b].bottom != B.basis[x].out_t) continue;
            const ProductTerms& xb = B.right_act(x, b);
            auto it = N.coords_by_weight.find(weight_index(Kt, Kt.basis[b].top));
            if (it == N.coords_by_weight.end()) continue;
            const SparseAction<F>& act = N.action[b];
            for (size_t s : it->second) {
                Vec<F> r(pairs.size(), FieldTraits<F>::zero());
                for (const auto& [y, c] : xb) {
                    const size_t t = pidx.at({y, s});
                    r[t] = r[t] + FieldTraits<F>::from_long(c);
                }
                auto cs = act.find(s);
                if (cs != act.end())
                    for (const auto& [u, c] : cs->second) {
                        const size_t t = pidx.at({x, u});
                        r[t] = r[t] - c;
                    }
                bool nz = false;
                for (const F& v : r)
                    if (!FieldTraits<F>::is_zero(v)) {
                        nz = true;
                        break;
                    }
                if (nz) rels.push_back(std::move(r));
            }
        }
    }
    return quotient_module(raw, rels, std::move(name));
}

// ---------------------------------------------------------------------------
// Truncation onto regular weights and its adjoints.
//
// The subalgebra on regular weights is the idempotent truncation of the full
// algebra: its basis diagrams are those with regular bottom and top faces,
// with unchanged structure constants.  The truncation functor keeps the
// regular weight spaces of a module.

template <class F>
struct Truncation {
    ModuleRep<F> module;
    std::vector<long long> pos;  // old coordinate -> new coordinate, -1 if dropped
};

template <class F>
Truncation<F> schur_truncation(const AlgebraContext& H, const ModuleRep<F>& M, std::string name = "") {
    const AlgebraContext& K = *M.ctx;
    if (!H.regular_only || K.regular_only || H.m != K.m || H.n != K.n)
        throw std::invalid_argument("truncation: expects the regular-weight subalgebra of the module's algebra");
    Truncation<F> T;
    T.pos.assign(M.dim(), -1);
    std::vector<size_t> keep;
    for (size_t j = 0; j < M.dim(); ++j)
        if (is_regular(M.weight_of(j))) {
            T.pos[j] = static_cast<long long>(keep.size());
            keep.push_back(j);
        }
    ModuleRep<F>& R = T.module;
    R.ctx = &H;
    R.name = name.empty() ? ("f(" + M.name + ")") : std::move(name);
    R.coord_weight.resize(keep.size());
    for (size_t t = 0; t < keep.size(); ++t) R.coord_weight[t] = weight_index(H, M.weight_of(keep[t]));
    R.action.assign(H.dim(), {});
    for (size_t aH = 0; aH < H.dim(); ++aH) {
        const BasisDiagram& d = H.basis[aH];
        const size_t aK = K.index(d.bottom, d.middle, d.top);
        for (const auto& [j, col] : M.action[aK]) {
            if (T.pos[j] < 0) continue;
            SparseCol<F> nc;
            for (const auto& [i, c] : col) {
                if (T.pos[i] < 0) throw std::logic_error("truncation: action leaks out of the regular weight spaces");
                nc.push_back({static_cast<size_t>(T.pos[i]), c});
            }
            if (!nc.empty()) R.action[aH][static_cast<size_t>(T.pos[j])] = std::move(nc);
        }
    }
    finish_module(R);
    return T;
}

template <class F>
ModuleRep<F> schur_f(const AlgebraContext& H, const ModuleRep<F>& M, std::string name = "") {
    return schur_truncation<F>(H, M, std::move(name)).module;
}

// Right adjoint of the truncation: the space of intertwiners from the
// truncated projectives.  Block λ carries Hom over the regular subalgebra
// from f(P(λ)) to N; a basis element a sends block top(a) to block bottom(a)
// by precomposition with right multiplication.  The blocks, solved hom bases
// and flattening data are kept so the unit map can be materialized.
template <class F>
struct GSpace {
    ModuleRep<F> module;
    std::vector<Weight> block_weight;
    std::vector<size_t> block_offset;                 // start of each block in the module coordinates
    std::vector<ModuleRep<F>> fproj;                  // truncated projective per block (hom domain)
    std::vector<std::vector<size_t>> block_diagrams;  // full-algebra diagram index per domain coordinate
    std::vector<std::vector<Matrix<F>>> homs;         // solved hom basis per block
    std::vector<HomPairs> hps;
    std::vector<RrefBasis<F>> flats;

    size_t block_of(const Weight& w) const {
        for (size_t k = 0; k < block_weight.size(); ++k)
            if (block_weight[k] == w) return k;
        throw std::invalid_argument("right adjoint: unknown block " + w);
    }
};

template <class F>
GSpace<F> schur_g_space(const AlgebraContext& K, const AlgebraContext& H, const ModuleRep<F>& N) {
    if (N.ctx != &H) throw std::invalid_argument("right adjoint: module is over the wrong algebra");
    if (!H.regular_only || K.regular_only || H.m != K.m || H.n != K.n)
        throw std::invalid_argument("right adjoint: mismatched algebra pair");
    GSpace<F> G;
    size_t total = 0;
    for (const Weight& lam : K.basis_weights) {
        ModuleRep<F> P = projective_module<F>(K, lam);
        std::vector<size_t> diag;
        for (size_t j = 0; j < P.dim(); ++j)
            if (is_regular(P.weight_of(j))) diag.push_back(P.proj_shape->coord_diagram[j]);
        ModuleRep<F> fp = schur_f<F>(H, P, "f(P(" + lam + "))");
        std::vector<Matrix<F>> homs = hom_space(fp, N);
        HomPairs hp = build_hom_pairs(fp, N);
        RrefBasis<F> fb(hp.pairs.size());
        for (const Matrix<F>& X : homs)
            if (!fb.insert(flatten_map(hp, X))) throw std::logic_error("right adjoint: dependent hom basis");
        // Re-express the hom basis by the stored reduced rows: coordinate
        // vectors computed against fb then refer to exactly these maps.
        for (size_t j = 0; j < homs.size(); ++j) {
            const Vec<F>& row = fb.rows()[j];
            Matrix<F> X(N.dim(), fp.dim());
            for (size_t t = 0; t < hp.pairs.size(); ++t) X.at(hp.pairs[t].second, hp.pairs[t].first) = row[t];
            homs[j] = std::move(X);
        }
        G.block_weight.push_back(lam);
        G.block_offset.push_back(total);
        total += homs.size();
        G.block_diagrams.push_back(std::move(diag));
        G.fproj.push_back(std::move(fp));
        G.homs.push_back(std::move(homs));
        G.hps.push_back(std::move(hp));
        G.flats.push_back(std::move(fb));
    }

    ModuleRep<F>& g = G.module;
    g.ctx = &K;
    g.name = "g(" + N.name + ")";
    g.coord_weight.resize(total);
    for (size_t k = 0; k < G.block_weight.size(); ++k) {
        const int wi = weight_index(K, G.block_weight[k]);
        const size_t end = (k + 1 < G.block_offset.size()) ? G.block_offset[k + 1] : total;
        for (size_t t = G.block_offset[k]; t < end; ++t) g.coord_weight[t] = wi;
    }
    g.action.assign(K.dim(), {});
    for (size_t a = 0; a < K.dim(); ++a) {
        const BasisDiagram& d = K.basis[a];
        const size_t src = G.block_of(d.top);
        const size_t dst = G.block_of(d.bottom);
        if (G.homs[src].empty() || G.homs[dst].empty()) continue;
        // right multiplication by a on the truncated projectives, as a matrix
        // from the block-bottom domain to the block-top domain
        const std::vector<size_t>& dom = G.block_diagrams[dst];
        const std::vector<size_t>& cod = G.block_diagrams[src];
        std::map<size_t, size_t> codpos;
        for (size_t r = 0; r < cod.size(); ++r) codpos[cod[r]] = r;
        Matrix<F> R(cod.size(), dom.size());
        for (size_t c = 0; c < dom.size(); ++c)
            for (const auto& [z, mult] : K.product(dom[c], a)) R.at(codpos.at(z), c) = FieldTraits<F>::from_long(mult);
        for (size_t gidx = 0; gidx < G.homs[src].size(); ++gidx) {
            Matrix<F> comp = G.homs[src][gidx] * R;
            auto co = G.flats[dst].coordinates(flatten_map(G.hps[dst], comp));
            if (!co) throw std::logic_error("right adjoint: composed map escaped the hom space");
            SparseCol<F> col;
            for (size_t r = 0; r < co->size(); ++r)
                if (!FieldTraits<F>::is_zero((*co)[r])) col.push_back({G.block_offset[dst] + r, (*co)[r]});
            if (!col.empty()) g.action[a][G.block_offset[src] + gidx] = std::move(col);
        }
    }
    finish_module(g);
    return G;
}

template <class F>
ModuleRep<F> schur_g(const AlgebraContext& K, const AlgebraContext& H, const ModuleRep<F>& N) {
    return schur_g_space(K, H, N).module;
}

// Left adjoint of the truncation: the relative tensor of the span of
// diagrams with regular top face against the module, over the regular
// subalgebra.  Same balancing-relation construction as the bimodule tensor.
template <class F>
ModuleRep<F> schur_g_tilde(const AlgebraContext& K, const AlgebraContext& H, const ModuleRep<F>& N, std::string name = "") {
    if (N.ctx != &H) throw std::invalid_argument("left adjoint: module is over the wrong algebra");
    if (!H.regular_only || K.regular_only || H.m != K.m || H.n != K.n)
        throw std::invalid_argument("left adjoint: mismatched algebra pair");
    if (name.empty()) name = "g~(" + N.name + ")";

    std::vector<size_t> cols;  // diagrams with regular top face
    for (size_t x = 0; x < K.dim(); ++x)
        if (is_regular(K.basis[x].top)) cols.push_back(x);

    std::vector<std::pair<size_t, size_t>> pairs;  // (position in cols, module coordinate)
    std::map<std::pair<size_t, size_t>, size_t> pidx;
    for (size_t cx = 0; cx < cols.size(); ++cx) {
        auto it = N.coords_by_weight.find(weight_index(H, K.basis[cols[cx]].top));
        if (it == N.coords_by_weight.end()) continue;
        for (size_t s : it->second) {
            pidx[{cx, s}] = pairs.size();
            pairs.emplace_back(cx, s);
        }
    }
    std::map<size_t, size_t> colpos;
    for (size_t cx = 0; cx < cols.size(); ++cx) colpos[cols[cx]] = cx;

    ModuleRep<F> raw;
    raw.ctx = &K;
    raw.name = name + " (free pairs)";
    raw.coord_weight.resize(pairs.size());
    for (size_t t = 0; t < pairs.size(); ++t) raw.coord_weight[t] = weight_index(K, K.basis[cols[pairs[t].first]].bottom);
    raw.action.assign(K.dim(), {});
    for (size_t a = 0; a < K.dim(); ++a) {
        const Weight& atop = K.basis[a].top;
        for (size_t t = 0; t < pairs.size(); ++t) {
            const auto& [cx, s] = pairs[t];
            if (K.basis[cols[cx]].bottom != atop) continue;
            SparseCol<F> col;
            for (const auto& [y, c] : K.product(a, cols[cx])) push_term(col, pidx.at({colpos.at(y), s}), c);
            if (!col.empty()) raw.action[a][t] = std::move(col);
        }
    }
    finish_module(raw);

    std::vector<Vec<F>> rels;
    for (size_t cx = 0; cx < cols.size(); ++cx) {
        const Weight& xtop = K.basis[cols[cx]].top;
        for (size_t bH = 0; bH < H.dim(); ++bH) {
            if (H.is_idempotent(bH)) continue;
            const BasisDiagram& db = H.basis[bH];
            if (db.bottom != xtop) continue;
            const size_t bK = K.index(db.bottom, db.middle, db.top);
            auto it = N.coords_by_weight.find(weight_index(H, db.top));
            if (it == N.coords_by_weight.end()) continue;
            const SparseAction<F>& act = N.action[bH];
            for (size_t s : it->second) {
                Vec<F> r(pairs.size(), FieldTraits<F>::zero());
                for (const auto& [y, c] : K.product(cols[cx], bK)) {
                    const size_t t = pidx.at({colpos.at(y), s});
                    r[t] = r[t] + FieldTraits<F>::from_long(c);
                }
                auto cs = act.find(s);
                if (cs != act.end())
                    for (const auto& [u, c] : cs->second) {
                        const size_t t = pidx.at({cx, u});
                        r[t] = r[t] - c;
                    }
                bool nz = false;
                for (const F& v : r)
                    if (!FieldTraits<F>::is_zero(v)) {
                        nz = true;
                        break;
                    }
                if (nz) rels.push_back(std::move(r));
            }
        }
    }
    return quotient_module(raw, rels, std::move(name));
}

// Unit of the truncation/right-adjoint pair: v ↦ (x ↦ x·v), materialized as
// an honest matrix into the solved hom-space coordinates.
template <class F>
struct EtaPack {
    ModuleRep<F> fM;
    GSpace<F> g;      // g(fM)
    Matrix<F> eta;    // g.module.dim × M.dim
    bool natural = false;
    bool iso = false;
};

template <class F>
EtaPack<F> eta_pack(const AlgebraContext& K, const AlgebraContext& H, const ModuleRep<F>& M) {
    if (M.ctx != &K) throw std::invalid_argument("unit map: module is over the wrong algebra");
    EtaPack<F> E;
    Truncation<F> tr = schur_truncation<F>(H, M);
    E.fM = std::move(tr.module);
    E.g = schur_g_space<F>(K, H, E.fM);
    E.eta = Matrix<F>(E.g.module.dim(), M.dim());
    for (size_t v = 0; v < M.dim(); ++v) {
        const Weight& lam = M.weight_of(v);
        const size_t k = E.g.block_of(lam);
        const std::vector<size_t>& dom = E.g.block_diagrams[k];
        Matrix<F> phi(E.fM.dim(), dom.size());
        for (size_t c = 0; c < dom.size(); ++c) {
            auto col = M.action[dom[c]].find(v);
            if (col == M.action[dom[c]].end()) continue;
            for (const auto& [i, coef] : col->second) {
                if (tr.pos[i] < 0) throw std::logic_error("unit map: image leaks out of the regular weight spaces");
                phi.at(static_cast<size_t>(tr.pos[i]), c) = coef;
            }
        }
        auto co = E.g.flats[k].coordinates(flatten_map(E.g.hps[k], phi));
        if (!co) throw std::logic_error("unit map: evaluation escaped the hom space");
        for (size_t r = 0; r < co->size(); ++r) E.eta.at(E.g.block_offset[k] + r, v) = (*co)[r];
    }
    E.natural = intertwines(ModuleMap<F>{&M, &E.g.module, E.eta});
    E.iso = E.natural && E.g.module.dim() == M.dim() && rank(E.eta) == M.dim();
    return E;
}

// ---------------------------------------------------------------------------
// Tilting modules, built inductively: the minimal weight's tilting module is
// its (simple = standard) module, and crossing the matching at the first
// up-down pair lifts the smaller tilting module through the tensor functor.

template <class F>
ModuleRep<F> tilting_module(ContextCache& cc, int m, int n, const Weight& lam);

template <class F>
ModuleRep<F> tilting_module_at(ContextCache& cc, int m, int n, const Weight& lam, int p) {
    const AlgebraContext& K = cc.get(m, n);
    if (!has_up_down(lam, p)) throw std::invalid_argument("tilting: weight has no up-down pair at position " + std::to_string(p));
    const Weight lamp = remove_pair(lam, p);
    ModuleRep<F> inner = tilting_module<F>(cc, m - 1, n - 1, lamp);
    TurnbackBimodule B(K, cc.get(m - 1, n - 1), p, true);
    return apply_bimodule(B, inner, "T(" + lam + ")");
}

template <class F>
ModuleRep<F> tilting_module(ContextCache& cc, int m, int n, const Weight& lam) {
    const AlgebraContext& K = cc.get(m, n);
    if (static_cast<int>(lam.size()) != m + n) throw std::invalid_argument("tilting: weight has the wrong length");
    if (lam == minimal_weight(m, n)) {
        ModuleRep<F> T = simple_module<F>(K, lam);
        T.name = "T(" + lam + ")";
        return T;
    }
    for (int p = 1; p < m + n; ++p)
        if (has_up_down(lam, p)) return tilting_module_at<F>(cc, m, n, lam, p);
    throw std::invalid_argument("tilting: not a weight of this box");  // unreachable for valid weights
}

}  // namespace arcalg
