#pragma once

// The two Kazhdan-Lusztig families attached to weights: n_{λμ}(q), read off
// from oriented cup diagrams, and the inverse family p_{λμ}(q), defined by a
// pair-removal recursion.  The matrices (p(-q)) and (n(q)) are mutually
// inverse, which the test suite verifies.

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "arcalg/combinatorics.hpp"
#include "arcalg/poly.hpp"

namespace arcalg {

// n_{λμ} = q^deg(μ̲λ) when the cup diagram of μ is oriented by λ, else 0.
inline Poly n_poly(const Weight& lam, const Weight& mu) {
    CupDiagram d = cup_diagram(mu);
    if (!is_oriented(d, lam)) return Poly();
    return Poly::q_power(degree(d, lam));
}

namespace detail {

struct PMemo {
    std::mutex mtx;
    std::map<std::pair<Weight, Weight>, Poly> table;
};

inline PMemo& p_memo() {
    static PMemo memo;
    return memo;
}

}  // namespace detail

// p_{λλ} = 1, p_{λμ} = 0 unless λ <= μ.  For λ < μ, pick the smallest i with
// "v^" at positions (i, i+1) of λ and recurse: strip the pair from both
// weights when μ also reads "v^" there, and in every case add q times the
// value at λ with that pair flipped to "^v".
inline Poly p_poly(const Weight& lam, const Weight& mu) {
    if (lam == mu) return Poly(1);
    if (!leq(lam, mu)) return Poly();
    {
        std::lock_guard<std::mutex> lock(detail::p_memo().mtx);
        auto it = detail::p_memo().table.find({lam, mu});
        if (it != detail::p_memo().table.end()) return it->second;
    }
    int i = 0;
    for (int k = 1; k + 1 <= static_cast<int>(lam.size()); ++k)
        if (has_down_up(lam, k)) {
            i = k;
            break;
        }
    // λ < μ rules out the maximal weight, so such an i exists.
    Poly minus_branch = p_poly(insert_pair(remove_pair(lam, i), i, '-'), mu).times_q();
    Poly result = minus_branch;
    if (has_down_up(mu, i)) result = p_poly(remove_pair(lam, i), remove_pair(mu, i)) + minus_branch;
    {
        std::lock_guard<std::mutex> lock(detail::p_memo().mtx);
        detail::p_memo().table.emplace(std::make_pair(lam, mu), result);
    }
    return result;
}

// As p_poly but with the pair position chosen as given (must read "v^" in λ);
// used to confirm the recursion is independent of that choice.
inline Poly p_poly_at(const Weight& lam, const Weight& mu, int i) {
    if (lam == mu) return Poly(1);
    if (!leq(lam, mu)) return Poly();
    if (!has_down_up(lam, i)) throw std::invalid_argument("p_poly_at: position must read 'v^'");
    Poly minus_branch = p_poly(insert_pair(remove_pair(lam, i), i, '-'), mu).times_q();
    if (has_down_up(mu, i)) return p_poly(remove_pair(lam, i), remove_pair(mu, i)) + minus_branch;
    return minus_branch;
}

inline std::vector<std::vector<Poly>> kl_matrix(int m, int n) {
    auto ws = enumerate_weights(m, n);
    std::vector<std::vector<Poly>> M(ws.size(), std::vector<Poly>(ws.size()));
    for (size_t a = 0; a < ws.size(); ++a)
        for (size_t b = 0; b < ws.size(); ++b) M[a][b] = n_poly(ws[a], ws[b]);
    return M;
}

inline std::vector<std::vector<Poly>> inverse_kl_matrix(int m, int n) {
    auto ws = enumerate_weights(m, n);
    std::vector<std::vector<Poly>> M(ws.size(), std::vector<Poly>(ws.size()));
    for (size_t a = 0; a < ws.size(); ++a)
        for (size_t b = 0; b < ws.size(); ++b) M[a][b] = p_poly(ws[a], ws[b]);
    return M;
}

// The two families are mutually inverse over Z[q].  With p supported on
// {first <= second} and n supported on {second <= first}, the arrangement
// that squares to the identity pairs the summation index in the FIRST slot
// of both:  sum_nu p_{nu,lam}(-q) n_{nu,mu}(q) = delta_{lam,mu}.
inline bool verify_inverse(int m, int n) {
    auto ws = enumerate_weights(m, n);
    auto P = inverse_kl_matrix(m, n);
    auto N = kl_matrix(m, n);
    for (size_t a = 0; a < ws.size(); ++a)
        for (size_t b = 0; b < ws.size(); ++b) {
            Poly s, t;
            for (size_t c = 0; c < ws.size(); ++c) {
                s = s + P[c][a].alternate() * N[c][b];
                t = t + N[a][c] * P[b][c].alternate();
            }
            Poly expect = (a == b) ? Poly(1) : Poly();
            if (s != expect || t != expect) return false;
        }
    return true;
}

// Wherever q^k appears in p_{λμ}, μ is reachable from λ by a chain of exactly
// k arrow moves.
inline bool arrow_chain_support_check(int m, int n) {
    auto ws = enumerate_weights(m, n);
    const size_t W = ws.size();
    std::map<Weight, size_t> idx;
    for (size_t a = 0; a < W; ++a) idx[ws[a]] = a;
    int maxdeg = 0;
    std::vector<std::vector<Poly>> P(W, std::vector<Poly>(W));
    for (size_t a = 0; a < W; ++a)
        for (size_t b = 0; b < W; ++b) {
            P[a][b] = p_poly(ws[a], ws[b]);
            maxdeg = std::max(maxdeg, P[a][b].degree());
        }
    // reach[k][a][b]: chain of exactly k arrows from a to b
    std::vector<std::vector<std::vector<char>>> reach(
        maxdeg + 1, std::vector<std::vector<char>>(W, std::vector<char>(W, 0)));
    for (size_t a = 0; a < W; ++a) reach[0][a][a] = 1;
    for (int k = 1; k <= maxdeg; ++k)
        for (size_t a = 0; a < W; ++a)
            for (size_t c = 0; c < W; ++c)
                if (reach[k - 1][a][c])
                    for (const Weight& succ : arrow_successors(ws[c])) reach[k][a][idx[succ]] = 1;
    for (size_t a = 0; a < W; ++a)
        for (size_t b = 0; b < W; ++b)
            for (int k = 0; k <= P[a][b].degree(); ++k)
                if (P[a][b].coeff(k) != 0 && !reach[k][a][b]) return false;
    return true;
}

// Along every arrow λ -> μ the minimum of ell over '^'-labelled positions
// drops by at most one.
inline bool min_ell_drop_check(int m, int n) {
    auto min_ell_at_up = [](const Weight& w) {
        int best = 1 << 30;
        for (int h = 1; h <= static_cast<int>(w.size()); ++h)
            if (w[h - 1] == UP) best = std::min(best, ell(w, h));
        return best;
    };
    for (const Weight& a : enumerate_weights(m, n))
        for (const Weight& b : arrow_successors(a))
            if (min_ell_at_up(b) < min_ell_at_up(a) - 1) return false;
    return true;
}

}  // namespace arcalg
