#pragma once

// Finite-dimensional left modules over an AlgebraContext, presented by
// explicit action matrices, one per algebra basis element.
//
// Representation conventions, fixed across the library:
//   * every coordinate carries a weight, and the idempotent e_w acts as the
//     coordinate projection onto the weight-w coordinates (verified on
//     construction);
//   * action matrices are stored column-sparse (an absent column is zero),
//     and block shape is enforced: the matrix of a basis element a is
//     supported on columns of weight top(a) and rows of weight bottom(a);
//   * the defining relation  action(a)∘action(b) = Σ_d c^{ab}_d action(d)
//     is spot-checked on construction against the algebra's structure
//     constants, on a deterministic sample of compatible pairs.
//
// Submodules and quotients are cut along weight-homogeneous reduced bases,
// so every derived module satisfies the same conventions by construction.
// The Jacobson radical is realized as the span of the positive-degree part
// acting on the module (the algebra is non-negatively graded with split
// semisimple degree-0 part); the test suite independently cross-checks this
// against the kernel-of-all-maps-to-simples characterization.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arcalg/algebra.hpp"
#include "arcalg/klpoly.hpp"
#include "arcalg/linalg.hpp"

namespace arcalg {

template <class F>
using SparseCol = std::vector<std::pair<size_t, F>>;  // (row, coeff), rows strictly increasing

template <class F>
using SparseAction = std::map<size_t, SparseCol<F>>;  // column -> nonzero entries

// Present when the module is, by construction, a direct sum of left ideals
// K·e_w realized on the diagram basis.  Hom spaces out of such a module have
// an exact structural basis (maps x ↦ x·v for v in a weight space of the
// target), which the resolution machinery uses; the generic solver below
// remains the definition and the two are cross-checked in the test suite.
struct ProjectiveShape {
    std::vector<Weight> summand_tops;    // top weight of each summand
    std::vector<size_t> summand_offset;  // first coordinate of each summand
    std::vector<size_t> coord_diagram;   // algebra basis index realizing each coordinate
};

template <class F>
struct ModuleRep {
    const AlgebraContext* ctx = nullptr;
    std::string name;
    std::vector<int> coord_weight;        // per coordinate: index into ctx->weights
    std::vector<SparseAction<F>> action;  // indexed by algebra basis element
    std::map<int, std::vector<size_t>> coords_by_weight;
    std::optional<ProjectiveShape> proj_shape;

    size_t dim() const { return coord_weight.size(); }

    const Weight& weight_of(size_t j) const { return ctx->weights[static_cast<size_t>(coord_weight[j])]; }

    Vec<F> apply(size_t a, const Vec<F>& v) const {
        Vec<F> r(dim(), FieldTraits<F>::zero());
        for (const auto& [j, col] : action[a]) {
            if (FieldTraits<F>::is_zero(v[j])) continue;
            for (const auto& [i, c] : col) r[i] = r[i] + c * v[j];
        }
        return r;
    }

    Matrix<F> action_matrix(size_t a) const {
        Matrix<F> m(dim(), dim());
        for (const auto& [j, col] : action[a])
            for (const auto& [i, c] : col) m.at(i, j) = c;
        return m;
    }

    std::map<Weight, long long> weight_counts() const {
        std::map<Weight, long long> out;
        for (size_t j = 0; j < dim(); ++j) ++out[weight_of(j)];
        return out;
    }
};

inline int weight_index(const AlgebraContext& ctx, const Weight& w) {
    for (size_t k = 0; k < ctx.weights.size(); ++k)
        if (ctx.weights[k] == w) return static_cast<int>(k);
    throw std::invalid_argument("module: unknown weight " + w);
}

namespace detail_mod {

template <class F>
Vec<F> sparse_to_vec(size_t dim, const SparseCol<F>& col) {
    Vec<F> v(dim, FieldTraits<F>::zero());
    for (const auto& [i, c] : col) v[i] = c;
    return v;
}

template <class F>
SparseCol<F> vec_to_sparse(const Vec<F>& v) {
    SparseCol<F> col;
    for (size_t i = 0; i < v.size(); ++i)
        if (!FieldTraits<F>::is_zero(v[i])) col.emplace_back(i, v[i]);
    return col;
}

template <class F>
void prune_zeros(std::map<size_t, std::map<size_t, F>>& cols) {
    for (auto it = cols.begin(); it != cols.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = FieldTraits<F>::is_zero(jt->second) ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? cols.erase(it) : std::next(it);
    }
}

}  // namespace detail_mod

// Validates the conventions above and fills the weight-space cache.
template <class F>
void finish_module(ModuleRep<F>& M) {
    const AlgebraContext& K = *M.ctx;
    if (M.action.size() != K.dim()) throw std::logic_error("module: action table size mismatch");

    std::set<int> admissible;
    for (const Weight& w : K.basis_weights) admissible.insert(weight_index(K, w));
    M.coords_by_weight.clear();
    for (size_t j = 0; j < M.dim(); ++j) {
        if (!admissible.count(M.coord_weight[j]))
            throw std::logic_error("module: coordinate weight has no idempotent: " + M.weight_of(j));
        M.coords_by_weight[M.coord_weight[j]].push_back(j);
    }

    // idempotents act as the weight projections
    for (const Weight& w : K.basis_weights) {
        int wi = weight_index(K, w);
        const SparseAction<F>& A = M.action[K.idempotent(w)];
        size_t expected = M.coords_by_weight.count(wi) ? M.coords_by_weight.at(wi).size() : 0;
        if (A.size() != expected)
            throw std::logic_error("module: idempotent support mismatch (" + M.name + ", " + w + ")");
        for (const auto& [j, col] : A) {
            bool ok = M.coord_weight[j] == wi && col.size() == 1 && col[0].first == j &&
                      col[0].second == FieldTraits<F>::one();
            if (!ok) throw std::logic_error("module: idempotent is not the weight projection (" + M.name + ")");
        }
    }

    // block shape and sparse-storage invariants
    for (size_t a = 0; a < K.dim(); ++a) {
        int ti = weight_index(K, K.basis[a].top);
        int bi = weight_index(K, K.basis[a].bottom);
        for (const auto& [j, col] : M.action[a]) {
            if (j >= M.dim() || M.coord_weight[j] != ti)
                throw std::logic_error("module: action column outside its weight block (" + M.name + ")");
            if (col.empty()) throw std::logic_error("module: stored empty column (" + M.name + ")");
            long long prev = -1;
            for (const auto& [i, c] : col) {
                if (i >= M.dim() || M.coord_weight[i] != bi)
                    throw std::logic_error("module: action row outside its weight block (" + M.name + ")");
                if (FieldTraits<F>::is_zero(c))
                    throw std::logic_error("module: stored zero coefficient (" + M.name + ")");
                if (static_cast<long long>(i) <= prev)
                    throw std::logic_error("module: column rows not strictly increasing (" + M.name + ")");
                prev = static_cast<long long>(i);
            }
        }
    }

    // structure constants on a deterministic sample of compatible pairs
    const uint64_t dimK = K.dim();
    const uint64_t total = dimK * dimK;
    const size_t budget = 160;
    const uint64_t step = std::max<uint64_t>(1, total / (budget * 4));
    size_t checked = 0;
    for (uint64_t t = 0; t < total && checked < budget; t += step) {
        size_t a = static_cast<size_t>(t / dimK), b = static_cast<size_t>(t % dimK);
        if (K.basis[a].top != K.basis[b].bottom) continue;
        std::map<size_t, std::map<size_t, F>> lhs, rhs;
        for (const auto& [j, colb] : M.action[b]) {
            std::map<size_t, F> acc;
            for (const auto& [k, cb] : colb) {
                auto ita = M.action[a].find(k);
                if (ita == M.action[a].end()) continue;
                for (const auto& [i, ca] : ita->second) {
                    F& slot = acc.try_emplace(i, FieldTraits<F>::zero()).first->second;
                    slot = slot + ca * cb;
                }
            }
            if (!acc.empty()) lhs[j] = std::move(acc);
        }
        for (const auto& [d, cll] : K.product(a, b)) {
            F f = FieldTraits<F>::from_long(cll);
            if (FieldTraits<F>::is_zero(f)) continue;
            for (const auto& [j, col] : M.action[d]) {
                auto& acc = rhs[j];
                for (const auto& [i, c] : col) {
                    F& slot = acc.try_emplace(i, FieldTraits<F>::zero()).first->second;
                    slot = slot + f * c;
                }
            }
        }
        detail_mod::prune_zeros(lhs);
        detail_mod::prune_zeros(rhs);
        if (lhs != rhs) throw std::logic_error("module: structure constants violated (" + M.name + ")");
        ++checked;
    }
}

// ---------------------------------------------------------------------------
// constructors

// Left ideal K·e_lam on the diagram basis: all basis diagrams with top lam.
template <class F>
ModuleRep<F> projective_module(const AlgebraContext& ctx, const Weight& lam) {
    ModuleRep<F> M;
    M.ctx = &ctx;
    M.name = "P(" + lam + ")";
    const std::vector<size_t>& coords = ctx.with_top(lam);
    std::map<size_t, size_t> pos;
    for (size_t k = 0; k < coords.size(); ++k) pos[coords[k]] = k;
    M.coord_weight.resize(coords.size());
    for (size_t k = 0; k < coords.size(); ++k)
        M.coord_weight[k] = weight_index(ctx, ctx.basis[coords[k]].bottom);
    M.action.assign(ctx.dim(), {});
    for (size_t a = 0; a < ctx.dim(); ++a) {
        const Weight& atop = ctx.basis[a].top;
        for (size_t k = 0; k < coords.size(); ++k) {
            if (ctx.basis[coords[k]].bottom != atop) continue;
            std::map<size_t, F> col;
            for (const auto& [d, c] : ctx.product(a, coords[k])) {
                F f = FieldTraits<F>::from_long(c);
                if (!FieldTraits<F>::is_zero(f)) col[pos.at(d)] = f;
            }
            if (!col.empty()) M.action[a][k] = SparseCol<F>(col.begin(), col.end());
        }
    }
    ProjectiveShape sh;
    sh.summand_tops = {lam};
    sh.summand_offset = {0};
    sh.coord_diagram.assign(coords.begin(), coords.end());
    M.proj_shape = std::move(sh);
    finish_module(M);
    return M;
}

// One-dimensional module where e_lam acts by 1 and everything of positive
// degree acts by 0.
template <class F>
ModuleRep<F> simple_module(const AlgebraContext& ctx, const Weight& lam) {
    bool admissible = false;
    for (const Weight& w : ctx.basis_weights) admissible = admissible || (w == lam);
    if (!admissible) throw std::invalid_argument("simple module label is not admissible: " + lam);
    ModuleRep<F> M;
    M.ctx = &ctx;
    M.name = "L(" + lam + ")";
    M.coord_weight = {weight_index(ctx, lam)};
    M.action.assign(ctx.dim(), {});
    M.action[ctx.idempotent(lam)][0] = SparseCol<F>{{0, FieldTraits<F>::one()}};
    finish_module(M);
    return M;
}

template <class F>
ModuleRep<F> direct_sum_module(const AlgebraContext& ctx, const std::vector<const ModuleRep<F>*>& parts,
                               std::string name) {
    ModuleRep<F> M;
    M.ctx = &ctx;
    M.name = std::move(name);
    M.action.assign(ctx.dim(), {});
    ProjectiveShape sh;
    bool shaped = true;
    size_t off = 0;
    for (const ModuleRep<F>* p : parts) {
        if (p->ctx != &ctx) throw std::invalid_argument("direct sum: mixed algebras");
        M.coord_weight.insert(M.coord_weight.end(), p->coord_weight.begin(), p->coord_weight.end());
        for (size_t a = 0; a < ctx.dim(); ++a)
            for (const auto& [j, col] : p->action[a]) {
                SparseCol<F> shifted;
                shifted.reserve(col.size());
                for (const auto& [i, c] : col) shifted.emplace_back(i + off, c);
                M.action[a][j + off] = std::move(shifted);
            }
        if (p->proj_shape) {
            for (size_t g = 0; g < p->proj_shape->summand_tops.size(); ++g) {
                sh.summand_tops.push_back(p->proj_shape->summand_tops[g]);
                sh.summand_offset.push_back(off + p->proj_shape->summand_offset[g]);
            }
            for (size_t d : p->proj_shape->coord_diagram) sh.coord_diagram.push_back(d);
        } else {
            shaped = false;
        }
        off += p->dim();
    }
    if (shaped) M.proj_shape = std::move(sh);
    finish_module(M);
    return M;
}

template <class F>
ModuleRep<F> zero_module(const AlgebraContext& ctx) {
    return direct_sum_module<F>(ctx, {}, "0");
}

// Splits a spanning set into weight-homogeneous components and returns the
// reduced basis of the span (rows weight-homogeneous, pivots increasing).
// The result spans the closure of the input under the weight projections.
template <class F>
RrefBasis<F> weight_split_span(const ModuleRep<F>& M, const std::vector<Vec<F>>& gens) {
    std::map<int, RrefBasis<F>> per;
    for (const Vec<F>& g : gens) {
        std::map<int, Vec<F>> comp;
        for (size_t j = 0; j < M.dim(); ++j) {
            if (FieldTraits<F>::is_zero(g[j])) continue;
            auto [it, fresh] = comp.try_emplace(M.coord_weight[j], Vec<F>(M.dim(), FieldTraits<F>::zero()));
            it->second[j] = g[j];
        }
        for (auto& [w, v] : comp) per.try_emplace(w, M.dim()).first->second.insert(std::move(v));
    }
    RrefBasis<F> out(M.dim());
    for (auto& [w, rb] : per)
        for (const Vec<F>& r : rb.rows()) out.insert(r);
    return out;
}

// Multiset of weights of a weight-homogeneous reduced basis.
template <class F>
std::map<Weight, long long> span_weight_counts(const ModuleRep<F>& M, const RrefBasis<F>& rb) {
    std::map<Weight, long long> out;
    for (size_t k = 0; k < rb.size(); ++k) ++out[M.weight_of(rb.pivots()[k])];
    return out;
}

inline std::map<Weight, long long> diff_counts(const std::map<Weight, long long>& a,
                                               const std::map<Weight, long long>& b) {
    std::map<Weight, long long> out = a;
    for (const auto& [w, v] : b) {
        out[w] -= v;
        if (out[w] == 0) out.erase(w);
    }
    for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

// Submodule spanned by `gens` (must be action-stable), with its reduced
// weight-homogeneous basis exposed for embedding back into M.
template <class F>
std::pair<ModuleRep<F>, RrefBasis<F>> submodule_with_rows(const ModuleRep<F>& M,
                                                          const std::vector<Vec<F>>& gens,
                                                          std::string name) {
    const AlgebraContext& K = *M.ctx;
    RrefBasis<F> rb = weight_split_span(M, gens);
    ModuleRep<F> S;
    S.ctx = M.ctx;
    S.name = std::move(name);
    const size_t d = rb.size();
    S.coord_weight.resize(d);
    for (size_t k = 0; k < d; ++k) S.coord_weight[k] = M.coord_weight[rb.pivots()[k]];
    S.action.assign(K.dim(), {});
    for (size_t a = 0; a < K.dim(); ++a) {
        if (M.action[a].empty()) continue;
        int ti = weight_index(K, K.basis[a].top);
        for (size_t k = 0; k < d; ++k) {
            if (S.coord_weight[k] != ti) continue;
            Vec<F> img = M.apply(a, rb.rows()[k]);
            if (is_zero_vec(img)) continue;
            auto co = rb.coordinates(img);
            if (!co) throw std::logic_error("submodule: span is not action-stable (" + S.name + ")");
            SparseCol<F> col = detail_mod::vec_to_sparse(*co);
            if (!col.empty()) S.action[a][k] = std::move(col);
        }
    }
    finish_module(S);
    return {std::move(S), std::move(rb)};
}

template <class F>
ModuleRep<F> submodule_module(const ModuleRep<F>& M, const std::vector<Vec<F>>& gens, std::string name) {
    return submodule_with_rows(M, gens, std::move(name)).first;
}

// Quotient of M by the action-stable span of `gens`.  Coordinates are the
// ambient coordinates away from the span's pivots.
template <class F>
ModuleRep<F> quotient_module(const ModuleRep<F>& M, const std::vector<Vec<F>>& gens, std::string name) {
    const AlgebraContext& K = *M.ctx;
    RrefBasis<F> rb = weight_split_span(M, gens);
    for (size_t a = 0; a < K.dim(); ++a) {
        if (M.action[a].empty()) continue;
        int ti = weight_index(K, K.basis[a].top);
        for (size_t k = 0; k < rb.size(); ++k) {
            if (M.coord_weight[rb.pivots()[k]] != ti) continue;
            if (!rb.contains(M.apply(a, rb.rows()[k])))
                throw std::logic_error("quotient: span is not action-stable (" + name + ")");
        }
    }
    std::vector<char> is_piv(M.dim(), 0);
    for (size_t p : rb.pivots()) is_piv[p] = 1;
    std::vector<size_t> rep;
    std::vector<long long> rep_of(M.dim(), -1);
    for (size_t j = 0; j < M.dim(); ++j)
        if (!is_piv[j]) {
            rep_of[j] = static_cast<long long>(rep.size());
            rep.push_back(j);
        }
    ModuleRep<F> Q;
    Q.ctx = M.ctx;
    Q.name = std::move(name);
    Q.coord_weight.resize(rep.size());
    for (size_t k = 0; k < rep.size(); ++k) Q.coord_weight[k] = M.coord_weight[rep[k]];
    Q.action.assign(K.dim(), {});
    for (size_t a = 0; a < K.dim(); ++a) {
        if (M.action[a].empty()) continue;
        int ti = weight_index(K, K.basis[a].top);
        for (size_t k = 0; k < rep.size(); ++k) {
            if (Q.coord_weight[k] != ti) continue;
            Vec<F> e(M.dim(), FieldTraits<F>::zero());
            e[rep[k]] = FieldTraits<F>::one();
            Vec<F> img = rb.reduce(M.apply(a, e));
            SparseCol<F> col;
            for (size_t i = 0; i < M.dim(); ++i) {
                if (FieldTraits<F>::is_zero(img[i])) continue;
                if (rep_of[i] < 0) throw std::logic_error("quotient: residual hit a pivot coordinate");
                col.emplace_back(static_cast<size_t>(rep_of[i]), img[i]);
            }
            if (!col.empty()) Q.action[a][k] = std::move(col);
        }
    }
    finish_module(Q);
    return Q;
}

// Contravariant duality: (a·φ)(v) = φ(a*·v); the action of a on the dual is
// the transpose of the action of star(a).
template <class F>
ModuleRep<F> dual_module(const ModuleRep<F>& M, std::string name) {
    const AlgebraContext& K = *M.ctx;
    ModuleRep<F> D;
    D.ctx = M.ctx;
    D.name = std::move(name);
    D.coord_weight = M.coord_weight;
    D.action.assign(K.dim(), {});
    for (size_t a = 0; a < K.dim(); ++a) {
        const SparseAction<F>& S = M.action[K.star(a)];
        std::map<size_t, std::map<size_t, F>> cols;
        for (const auto& [j, col] : S)
            for (const auto& [i, c] : col) cols[i][j] = c;
        for (auto& [j, m] : cols) D.action[a][j] = SparseCol<F>(m.begin(), m.end());
    }
    finish_module(D);
    return D;
}

template <class F>
ModuleRep<F> dual_module(const ModuleRep<F>& M) {
    return dual_module(M, "dual(" + M.name + ")");
}

// ---------------------------------------------------------------------------
// radical, socle, series

// Span of the positive-degree part of the algebra acting on M; this is the
// Jacobson radical of M (non-negative grading, split semisimple degree 0).
template <class F>
RrefBasis<F> radical_span(const ModuleRep<F>& M) {
    const AlgebraContext& K = *M.ctx;
    RrefBasis<F> rb(M.dim());
    for (size_t a = 0; a < K.dim(); ++a) {
        if (K.basis[a].degree == 0) continue;
        for (const auto& [j, col] : M.action[a]) rb.insert(detail_mod::sparse_to_vec(M.dim(), col));
    }
    return rb;
}

template <class F>
ModuleRep<F> radical_module(const ModuleRep<F>& M) {
    return submodule_module(M, radical_span(M).rows(), "rad(" + M.name + ")");
}

template <class F>
std::map<Weight, long long> top_counts(const ModuleRep<F>& M) {
    return diff_counts(M.weight_counts(), span_weight_counts(M, radical_span(M)));
}

// Largest submodule killed by the positive-degree part.
template <class F>
RrefBasis<F> socle_span(const ModuleRep<F>& M) {
    const AlgebraContext& K = *M.ctx;
    RrefBasis<F> constraints(M.dim());
    for (size_t a = 0; a < K.dim(); ++a) {
        if (K.basis[a].degree == 0) continue;
        std::map<size_t, Vec<F>> rows;
        for (const auto& [j, col] : M.action[a])
            for (const auto& [i, c] : col)
                rows.try_emplace(i, Vec<F>(M.dim(), FieldTraits<F>::zero())).first->second[j] = c;
        for (auto& [i, r] : rows) constraints.insert(std::move(r));
    }
    return weight_split_span(M, kernel_basis(constraints.to_matrix()));
}

template <class F>
std::map<Weight, long long> socle_counts(const ModuleRep<F>& M) {
    return span_weight_counts(M, socle_span(M));
}

template <class F>
struct Filtration {
    std::vector<std::map<Weight, long long>> layers;  // semisimple layer multisets
    std::vector<RrefBasis<F>> steps;                  // the proper chain cutting the layers
};

// layers[k] = rad^k M / rad^{k+1} M, k = 0 .. Loewy length - 1.
template <class F>
Filtration<F> radical_filtration(const ModuleRep<F>& M) {
    const AlgebraContext& K = *M.ctx;
    Filtration<F> out;
    std::vector<Vec<F>> cur;
    for (size_t j = 0; j < M.dim(); ++j) {
        Vec<F> e(M.dim(), FieldTraits<F>::zero());
        e[j] = FieldTraits<F>::one();
        cur.push_back(std::move(e));
    }
    std::map<Weight, long long> cur_counts = M.weight_counts();
    while (true) {
        RrefBasis<F> next(M.dim());
        for (const Vec<F>& v : cur)
            for (size_t a = 0; a < K.dim(); ++a) {
                if (K.basis[a].degree == 0 || M.action[a].empty()) continue;
                Vec<F> img = M.apply(a, v);
                if (!is_zero_vec(img)) next.insert(std::move(img));
            }
        auto nc = span_weight_counts(M, next);
        out.layers.push_back(diff_counts(cur_counts, nc));
        if (next.size() == 0) break;
        if (next.size() >= cur.size())
            throw std::logic_error("radical series is not strictly decreasing (" + M.name + ")");
        cur = next.rows();
        cur_counts = nc;
        out.steps.push_back(std::move(next));
    }
    if (M.dim() == 0) out.layers.clear();
    return out;
}

// layers[k] = soc^{k+1} M / soc^k M, k = 0 .. (bottom-up).
template <class F>
Filtration<F> socle_filtration(const ModuleRep<F>& M) {
    const AlgebraContext& K = *M.ctx;
    Filtration<F> out;
    RrefBasis<F> prev(M.dim());
    std::map<Weight, long long> prev_counts;
    while (prev.size() < M.dim()) {
        RrefBasis<F> constraints(M.dim());
        for (size_t a = 0; a < K.dim(); ++a) {
            if (K.basis[a].degree == 0) continue;
            std::map<size_t, Vec<F>> rows;
            for (const auto& [j, col] : M.action[a]) {
                Vec<F> cd = prev.reduce(detail_mod::sparse_to_vec(M.dim(), col));
                for (size_t i = 0; i < M.dim(); ++i)
                    if (!FieldTraits<F>::is_zero(cd[i]))
                        rows.try_emplace(i, Vec<F>(M.dim(), FieldTraits<F>::zero())).first->second[j] = cd[i];
            }
            for (auto& [i, r] : rows) constraints.insert(std::move(r));
        }
        RrefBasis<F> next = weight_split_span(M, kernel_basis(constraints.to_matrix()));
        auto nc = span_weight_counts(M, next);
        out.layers.push_back(diff_counts(nc, prev_counts));
        if (next.size() <= prev.size())
            throw std::logic_error("socle series stalled (" + M.name + ")");
        prev = next;
        prev_counts = std::move(nc);
        out.steps.push_back(std::move(next));
    }
    return out;
}

// dim e_lam M; composition multiplicity of L(lam), all simples being
// one-dimensional.
template <class F>
long long comp_mult(const ModuleRep<F>& M, const Weight& lam) {
    auto wc = M.weight_counts();
    auto it = wc.find(lam);
    return it == wc.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// standard modules

// Δ(lam) = P(lam) / (trace in rad P(lam) of the weight spaces e_mu with
// mu not below lam), realized as the spin closure of those components.
template <class F>
ModuleRep<F> standard_module(const AlgebraContext& ctx, const Weight& lam) {
    ModuleRep<F> P = projective_module<F>(ctx, lam);
    RrefBasis<F> rad = radical_span(P);
    std::vector<Vec<F>> seeds;
    for (size_t k = 0; k < rad.size(); ++k) {
        const Weight& w = P.weight_of(rad.pivots()[k]);
        if (!lt(w, lam)) seeds.push_back(rad.rows()[k]);
    }
    RrefBasis<F> trace = spin(P.dim(), seeds, [&](const Vec<F>& v) {
        std::vector<Vec<F>> images;
        for (size_t a = 0; a < ctx.dim(); ++a) {
            if (ctx.basis[a].degree == 0 || P.action[a].empty()) continue;  // idempotents fix weight components
            Vec<F> img = P.apply(a, v);
            if (!is_zero_vec(img)) images.push_back(std::move(img));
        }
        return images;
    });
    return quotient_module(P, trace.rows(), "Delta(" + lam + ")");
}

// ---------------------------------------------------------------------------
// homomorphisms

template <class F>
struct ModuleMap {
    const ModuleRep<F>* source = nullptr;
    const ModuleRep<F>* target = nullptr;
    Matrix<F> matrix;  // target.dim × source.dim
};

template <class F>
bool intertwines(const ModuleMap<F>& f) {
    const ModuleRep<F>& M = *f.source;
    const ModuleRep<F>& N = *f.target;
    const AlgebraContext& K = *M.ctx;
    if (f.matrix.rows != N.dim() || f.matrix.cols != M.dim()) return false;
    for (size_t a = 0; a < K.dim(); ++a) {
        for (size_t j = 0; j < M.dim(); ++j) {
            // lhs = f(a·e_j), from the sparse column of a on M
            Vec<F> lhs(N.dim(), FieldTraits<F>::zero());
            auto it = M.action[a].find(j);
            if (it != M.action[a].end())
                for (const auto& [l, c] : it->second)
                    for (size_t i = 0; i < N.dim(); ++i) lhs[i] = lhs[i] + c * f.matrix.at(i, l);
            // rhs = a·f(e_j)
            Vec<F> fj(N.dim(), FieldTraits<F>::zero());
            for (size_t i = 0; i < N.dim(); ++i) fj[i] = f.matrix.at(i, j);
            Vec<F> rhs = N.apply(a, fj);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

struct HomPairs {
    std::vector<std::pair<size_t, size_t>> pairs;  // (source coordinate, target coordinate)
    std::map<std::pair<size_t, size_t>, size_t> index;
};

template <class F>
HomPairs build_hom_pairs(const ModuleRep<F>& M, const ModuleRep<F>& N) {
    HomPairs hp;
    for (size_t j = 0; j < M.dim(); ++j)
        for (size_t i = 0; i < N.dim(); ++i)
            if (M.coord_weight[j] == N.coord_weight[i]) {
                hp.index[{j, i}] = hp.pairs.size();
                hp.pairs.emplace_back(j, i);
            }
    return hp;
}

template <class F>
Vec<F> flatten_map(const HomPairs& hp, const Matrix<F>& X) {
    Vec<F> v(hp.pairs.size(), FieldTraits<F>::zero());
    for (size_t t = 0; t < hp.pairs.size(); ++t) v[t] = X.at(hp.pairs[t].second, hp.pairs[t].first);
    return v;
}

// Basis of Hom(M, N), found by solving the full intertwiner system.  The
// unknowns are restricted to weight-matched coordinate pairs, which realizes
// the idempotent constraints structurally (idempotents act as the weight
// projections on both sides); all other basis elements contribute equations.
template <class F>
std::vector<Matrix<F>> hom_space(const ModuleRep<F>& M, const ModuleRep<F>& N) {
    if (M.ctx != N.ctx) throw std::invalid_argument("hom_space: mixed algebras");
    const AlgebraContext& K = *M.ctx;
    HomPairs hp = build_hom_pairs(M, N);
    if (hp.pairs.empty()) return {};
    RrefBasis<F> C(hp.pairs.size());
    for (size_t a = 0; a < K.dim(); ++a) {
        if (K.is_idempotent(a)) continue;
        int ti = weight_index(K, K.basis[a].top);
        int bi = weight_index(K, K.basis[a].bottom);
        auto jt = M.coords_by_weight.find(ti);
        if (jt == M.coords_by_weight.end()) continue;
        auto nbot = N.coords_by_weight.find(bi);
        for (size_t j : jt->second) {
            std::map<size_t, std::map<size_t, F>> rows;  // target coordinate -> constraint row
            for (const auto& [k, col] : N.action[a])
                for (const auto& [i, c] : col) {
                    F& slot = rows[i].try_emplace(hp.index.at({j, k}), FieldTraits<F>::zero()).first->second;
                    slot = slot + c;
                }
            auto mc = M.action[a].find(j);
            if (mc != M.action[a].end() && nbot != N.coords_by_weight.end())
                for (const auto& [l, c] : mc->second)
                    for (size_t i : nbot->second) {
                        F& slot = rows[i].try_emplace(hp.index.at({l, i}), FieldTraits<F>::zero()).first->second;
                        slot = slot - c;
                    }
            for (auto& [i, r] : rows) {
                Vec<F> rv(hp.pairs.size(), FieldTraits<F>::zero());
                bool nonzero = false;
                for (const auto& [t, c] : r)
                    if (!FieldTraits<F>::is_zero(c)) {
                        rv[t] = c;
                        nonzero = true;
                    }
                if (nonzero) C.insert(std::move(rv));
            }
        }
    }
    std::vector<Matrix<F>> out;
    for (const Vec<F>& u : kernel_basis(C.to_matrix())) {
        Matrix<F> X(N.dim(), M.dim());
        for (size_t t = 0; t < hp.pairs.size(); ++t) X.at(hp.pairs[t].second, hp.pairs[t].first) = u[t];
        if (!intertwines(ModuleMap<F>{&M, &N, X}))
            throw std::logic_error("hom_space: solver produced a non-intertwiner");
        out.push_back(std::move(X));
    }
    return out;
}

// Structural basis of Hom(P, N) for P a direct sum of diagram-basis left
// ideals: one map x ↦ x·v per summand generator and per target weight-space
// basis vector v.  Exact by projectivity; cross-checked against hom_space in
// the test suite.
template <class F>
std::vector<Matrix<F>> proj_hom_space(const ModuleRep<F>& P, const ModuleRep<F>& N) {
    if (P.ctx != N.ctx) throw std::invalid_argument("proj_hom_space: mixed algebras");
    if (!P.proj_shape) throw std::logic_error("proj_hom_space: module lacks projective presentation data");
    const AlgebraContext& K = *P.ctx;
    const ProjectiveShape& sh = *P.proj_shape;
    std::vector<Matrix<F>> out;
    for (size_t g = 0; g < sh.summand_tops.size(); ++g) {
        size_t off = sh.summand_offset[g];
        size_t end = (g + 1 < sh.summand_offset.size()) ? sh.summand_offset[g + 1] : P.dim();
        int wi = weight_index(K, sh.summand_tops[g]);
        auto it = N.coords_by_weight.find(wi);
        if (it == N.coords_by_weight.end()) continue;
        for (size_t i : it->second) {
            Matrix<F> X(N.dim(), P.dim());
            for (size_t x = off; x < end; ++x) {
                auto col = N.action[sh.coord_diagram[x]].find(i);
                if (col == N.action[sh.coord_diagram[x]].end()) continue;
                for (const auto& [r, c] : col->second) X.at(r, x) = c;
            }
            out.push_back(std::move(X));
        }
    }
    return out;
}

template <class F>
std::vector<Matrix<F>> hom_space_auto(const ModuleRep<F>& M, const ModuleRep<F>& N) {
    return M.proj_shape ? proj_hom_space(M, N) : hom_space(M, N);
}

// Isomorphism test.  `false` answers are certified by isomorphism invariants
// (dimensions, weight multisets, top/socle/radical-layer multisets, Hom
// dimension comparisons); `true` answers by an explicit invertible
// intertwiner.  If neither certificate is found the routine throws rather
// than guess.
template <class F>
bool is_iso(const ModuleRep<F>& M, const ModuleRep<F>& N) {
    if (M.ctx != N.ctx) throw std::invalid_argument("is_iso: mixed algebras");
    if (M.dim() != N.dim()) return false;
    if (M.dim() == 0) return true;
    if (M.weight_counts() != N.weight_counts()) return false;
    if (top_counts(M) != top_counts(N)) return false;
    if (socle_counts(M) != socle_counts(N)) return false;
    if (radical_filtration(M).layers != radical_filtration(N).layers) return false;

    std::vector<Matrix<F>> H = hom_space_auto(M, N);
    if (H.empty()) return false;
    auto invertible = [&](const Matrix<F>& X) { return rank(X) == M.dim(); };
    for (const Matrix<F>& X : H)
        if (invertible(X)) return true;
    if (H.size() == 1) return false;  // every hom is a scalar multiple of the single basis map

    auto combine = [&](const std::vector<F>& cs) {
        Matrix<F> X(N.dim(), M.dim());
        for (size_t t = 0; t < H.size(); ++t) {
            if (FieldTraits<F>::is_zero(cs[t])) continue;
            for (size_t e = 0; e < X.a.size(); ++e) X.a[e] = X.a[e] + cs[t] * H[t].a[e];
        }
        return X;
    };

    long long p = FieldTraits<F>::characteristic();
    if (p > 0) {
        // small finite field: exhaust all combinations if feasible
        double combos = 1;
        for (size_t t = 0; t < H.size() && combos <= 4096.0; ++t) combos *= static_cast<double>(p);
        if (combos <= 4096.0) {
            std::vector<long long> digits(H.size(), 0);
            while (true) {
                size_t t = 0;
                while (t < H.size() && digits[t] == p - 1) digits[t++] = 0;
                if (t == H.size()) break;
                ++digits[t];
                std::vector<F> cs;
                for (long long dgt : digits) cs.push_back(FieldTraits<F>::from_long(dgt));
                if (invertible(combine(cs))) return true;
            }
            return false;  // exhaustive: no combination is invertible
        }
    }

    // deterministic trials
    {
        std::vector<F> ones(H.size(), FieldTraits<F>::one());
        if (invertible(combine(ones))) return true;
        std::vector<F> ramp;
        for (size_t t = 0; t < H.size(); ++t) ramp.push_back(FieldTraits<F>::from_long(static_cast<long long>(t + 1)));
        if (invertible(combine(ramp))) return true;
        uint64_t state = 0x9e3779b97f4a7c15ull;
        for (int trial = 0; trial < 64; ++trial) {
            std::vector<F> cs;
            for (size_t t = 0; t < H.size(); ++t) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                cs.push_back(FieldTraits<F>::from_long(1 + static_cast<long long>((state >> 33) % 997)));
            }
            if (invertible(combine(cs))) return true;
        }
    }

    // certified refutations through Hom dimensions
    size_t hmn = H.size();
    size_t emm = hom_space_auto(M, M).size();
    size_t enn = hom_space_auto(N, N).size();
    if (hmn != emm || hmn != enn) return false;
    size_t hnm = hom_space_auto(N, M).size();
    if (hnm != emm) return false;

    throw std::runtime_error("is_iso: undecided for " + M.name + " vs " + N.name);
}

// ---------------------------------------------------------------------------
// covers, resolutions, Ext

template <class F>
struct Cover {
    ModuleRep<F> P;
    Matrix<F> map;                 // P -> M, surjective
    std::vector<Weight> summands;  // top weight of each projective summand
};

template <class F>
Cover<F> projective_cover(const ModuleRep<F>& M) {
    const AlgebraContext& K = *M.ctx;
    RrefBasis<F> acc = radical_span(M);
    std::vector<size_t> gens;
    for (size_t j = 0; j < M.dim(); ++j) {
        Vec<F> e(M.dim(), FieldTraits<F>::zero());
        e[j] = FieldTraits<F>::one();
        if (acc.insert(std::move(e))) gens.push_back(j);
    }
    std::vector<Weight> summands;
    std::vector<ModuleRep<F>> parts;
    for (size_t j : gens) {
        summands.push_back(M.weight_of(j));
        parts.push_back(projective_module<F>(K, summands.back()));
    }
    std::vector<const ModuleRep<F>*> ptrs;
    for (const auto& p : parts) ptrs.push_back(&p);
    ModuleRep<F> P = direct_sum_module<F>(K, ptrs, "cover(" + M.name + ")");
    Matrix<F> phi(M.dim(), P.dim());
    size_t off = 0;
    for (size_t g = 0; g < gens.size(); ++g) {
        const std::vector<size_t>& coords = K.with_top(summands[g]);
        for (size_t x = 0; x < coords.size(); ++x) {
            auto it = M.action[coords[x]].find(gens[g]);
            if (it != M.action[coords[x]].end())
                for (const auto& [i, c] : it->second) phi.at(i, off + x) = c;
        }
        off += coords.size();
    }
    if (rank(phi) != M.dim()) throw std::logic_error("projective cover: not surjective (" + M.name + ")");
    return {std::move(P), std::move(phi), std::move(summands)};
}

template <class F>
struct Resolution {
    std::vector<ModuleRep<F>> terms;            // P_0, P_1, ...
    std::vector<Matrix<F>> maps;                // maps[0]: P_0 -> M; maps[k]: P_k -> P_{k-1}
    std::vector<std::vector<Weight>> summands;  // projective summand tops per term
};

// Minimal projective resolution out to homological degree `length`, by
// iterated projective covers of syzygies.  A nonzero `dim_cap` bounds the
// dimension of each term; the resolution stops early (returning fewer terms)
// instead of exceeding it, so callers can report partial results.
template <class F>
Resolution<F> minimal_resolution(const ModuleRep<F>& M, int length, size_t dim_cap = 0) {
    const AlgebraContext& K = *M.ctx;
    Resolution<F> R;
    Cover<F> c0 = projective_cover(M);
    if (dim_cap && c0.P.dim() > dim_cap) return R;
    R.terms.push_back(std::move(c0.P));
    R.maps.push_back(std::move(c0.map));
    R.summands.push_back(std::move(c0.summands));
    for (int k = 1; k <= length; ++k) {
        const size_t prev_dim = R.terms.back().dim();
        std::vector<Vec<F>> ker = kernel_basis(R.maps.back());
        if (ker.empty()) {
            R.maps.push_back(Matrix<F>(prev_dim, 0));
            R.terms.push_back(zero_module<F>(K));
            R.summands.push_back({});
            continue;
        }
        auto [syz, rows] = submodule_with_rows(R.terms.back(), ker, "syzygy");
        Cover<F> ck = projective_cover(syz);
        if (dim_cap && ck.P.dim() > dim_cap) break;
        Matrix<F> incl(prev_dim, syz.dim());
        for (size_t s = 0; s < rows.size(); ++s)
            for (size_t i = 0; i < prev_dim; ++i) incl.at(i, s) = rows.rows()[s][i];
        R.maps.push_back(incl * ck.map);
        R.terms.push_back(std::move(ck.P));
        R.summands.push_back(std::move(ck.summands));
    }
    for (size_t k = 1; k < R.maps.size(); ++k) {
        Matrix<F> z = R.maps[k - 1] * R.maps[k];
        for (const F& x : z.a)
            if (!FieldTraits<F>::is_zero(x)) throw std::logic_error("resolution: differential does not square to zero");
    }
    return R;
}

// dim Ext^j(M, N) for j = 0..jmax, as the cohomology of the Hom complex of a
// projective resolution of M.  The Hom spaces of the (projective) terms are
// taken with their structural basis; the cohomology is computed honestly
// from the induced cochain maps.  `ext_dims_from` reuses a prebuilt
// resolution across several targets; if the resolution was cut short by a
// dimension cap, the returned vector is shorter than jmax+1 (possibly empty),
// covering only the degrees the available terms determine.
template <class F>
std::vector<long long> ext_dims_from(const Resolution<F>& R, const ModuleRep<F>& N, int jmax) {
    const int avail = static_cast<int>(R.terms.size()) - 2;  // Ext^j needs terms 0..j+1
    const int jeff = std::min(jmax, avail);
    if (jeff < 0) return {};
    const size_t used = static_cast<size_t>(jeff) + 2;
    std::vector<std::vector<Matrix<F>>> homs(used);
    std::vector<HomPairs> hps(used);
    std::vector<RrefBasis<F>> flats;
    for (size_t k = 0; k < used; ++k) {
        homs[k] = proj_hom_space(R.terms[k], N);
        hps[k] = build_hom_pairs(R.terms[k], N);
        RrefBasis<F> fb(hps[k].pairs.size());
        for (const Matrix<F>& X : homs[k])
            if (!fb.insert(flatten_map(hps[k], X)))
                throw std::logic_error("ext: structural hom basis is dependent");
        flats.push_back(std::move(fb));
    }
    // cochain maps delta_k : Hom(P_k, N) -> Hom(P_{k+1}, N), phi -> phi ∘ d_{k+1}
    std::vector<Matrix<F>> delta;
    for (int k = 0; k <= jeff; ++k) {
        Matrix<F> D(homs[k + 1].size(), homs[k].size());
        for (size_t g = 0; g < homs[k].size(); ++g) {
            Matrix<F> comp = homs[k][g] * R.maps[k + 1];
            auto co = flats[k + 1].coordinates(flatten_map(hps[k + 1], comp));
            if (!co) throw std::logic_error("ext: composed map escaped the hom space");
            // columns are expressed in the reduced-row basis of the codomain
            // hom space; only ranks and kernel dimensions are consumed below,
            // and those are basis-independent.
            for (size_t r = 0; r < co->size(); ++r) D.at(r, g) = (*co)[r];
        }
        delta.push_back(std::move(D));
    }
    std::vector<long long> out;
    long long prev_rank = 0;
    for (int j = 0; j <= jeff; ++j) {
        long long rk = static_cast<long long>(rank(delta[j]));
        long long kerdim = static_cast<long long>(homs[j].size()) - rk;
        out.push_back(kerdim - prev_rank);
        prev_rank = rk;
    }
    return out;
}

template <class F>
std::vector<long long> ext_dims(const ModuleRep<F>& M, const ModuleRep<F>& N, int jmax, size_t dim_cap = 0) {
    Resolution<F> R = minimal_resolution(M, jmax + 1, dim_cap);
    return ext_dims_from(R, N, jmax);
}

template <class F>
long long ext_dim(const ModuleRep<F>& M, const ModuleRep<F>& N, int j) {
    return ext_dims(M, N, j).at(j);
}

// ---------------------------------------------------------------------------
// Δ-filtration multiplicities

struct DeltaMults {
    std::map<Weight, long long> mult;
    std::vector<Weight> negatives;  // nonempty = evidence against a Δ-filtration
};

// Composition multiplicities of every standard module, computed honestly
// from the constructed modules.
template <class F>
std::map<Weight, std::map<Weight, long long>> standard_comp_table(const AlgebraContext& ctx) {
    std::map<Weight, std::map<Weight, long long>> t;
    for (const Weight& lam : ctx.basis_weights) t[lam] = standard_module<F>(ctx, lam).weight_counts();
    return t;
}

// Solves [M] = Σ_λ c_λ [Δ(λ)] in the Grothendieck group, processing weights
// downwards; the table must be unitriangular with support below the diagonal
// label (verified as it is consumed).
template <class F>
DeltaMults delta_filtration_mults(const ModuleRep<F>& M,
                                  const std::map<Weight, std::map<Weight, long long>>& table) {
    const AlgebraContext& K = *M.ctx;
    std::map<Weight, size_t> enum_pos;
    for (size_t k = 0; k < K.basis_weights.size(); ++k) enum_pos[K.basis_weights[k]] = k;
    std::map<Weight, long long> rem = M.weight_counts();
    DeltaMults out;
    for (auto it = K.basis_weights.rbegin(); it != K.basis_weights.rend(); ++it) {
        const Weight& lam = *it;
        long long c = rem.count(lam) ? rem.at(lam) : 0;
        if (c == 0) continue;
        out.mult[lam] = c;
        if (c < 0) out.negatives.push_back(lam);
        const auto& row = table.at(lam);
        auto diag = row.find(lam);
        if (diag == row.end() || diag->second != 1)
            throw std::logic_error("delta mults: table is not unitriangular at " + lam);
        for (const auto& [mu, k] : row) {
            if (enum_pos.at(mu) > enum_pos.at(lam))
                throw std::logic_error("delta mults: table support escapes the order at " + lam);
            rem[mu] -= c * k;
        }
    }
    for (const auto& [w, v] : rem)
        if (v != 0) throw std::logic_error("delta mults: system did not close at " + w);
    return out;
}

}  // namespace arcalg
