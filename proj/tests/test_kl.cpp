#include <catch2/catch_amalgamated.hpp>

#include "arcalg/klpoly.hpp"

using namespace arcalg;

TEST_CASE("n polynomials from oriented diagrams") {
    for (auto& w : enumerate_weights(2, 2)) REQUIRE(n_poly(w, w) == Poly(1));
    REQUIRE(n_poly("^v", "v^") == Poly::q_power(1));
    REQUIRE(n_poly("v^", "^v") == Poly());
    // triangular: nonzero only when the column weight is <= the row weight
    for (auto& a : enumerate_weights(2, 3))
        for (auto& b : enumerate_weights(2, 3))
            if (!n_poly(a, b).is_zero()) REQUIRE(leq(b, a));
}

TEST_CASE("p polynomials: base cases and triangularity") {
    REQUIRE(p_poly("v^", "v^") == Poly(1));
    REQUIRE(p_poly("v^", "^v") == Poly::q_power(1));
    REQUIRE(p_poly("^v", "v^") == Poly());
    for (auto& a : enumerate_weights(2, 2))
        for (auto& b : enumerate_weights(2, 2)) {
            if (!p_poly(a, b).is_zero()) REQUIRE(leq(a, b));
            REQUIRE(p_poly(a, b).nonneg_coeffs());
        }
}

TEST_CASE("the two polynomial families are mutually inverse") {
    for (int m = 0; m <= 7; ++m)
        for (int n = 0; m + n <= 7; ++n) REQUIRE(verify_inverse(m, n));
}

TEST_CASE("p at the minimal weight against the closed form") {
    for (auto [m, n] :
         std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}}) {
        Weight lam = partition_to_weight(Partition(n, m), m, n);  // (m^n), the minimum
        Partition sq(m, m);                                       // (m^m)
        Weight mu = partition_to_weight(sq, m, n);
        REQUIRE(p_poly(lam, mu) == Poly::q_power(m * (n - m)));
    }
}

TEST_CASE("recursion is independent of the chosen pair position") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {1, 3}, {2, 3}}) {
        auto ws = enumerate_weights(m, n);
        for (auto& a : ws)
            for (auto& b : ws) {
                if (a == b || !leq(a, b)) continue;
                Poly ref = p_poly(a, b);
                for (int i = 1; i < m + n; ++i)
                    if (has_down_up(a, i)) REQUIRE(p_poly_at(a, b, i) == ref);
            }
    }
}

TEST_CASE("arrow-chain support of p coefficients") {
    for (int m = 0; m <= 7; ++m)
        for (int n = 0; m + n <= 7; ++n) REQUIRE(arrow_chain_support_check(m, n));
}

TEST_CASE("arrow moves lower the minimal ell over '^' positions by at most one") {
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; m + n <= 8; ++n) REQUIRE(min_ell_drop_check(m, n));
}
