#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "arcalg/combinatorics.hpp"

using namespace arcalg;

TEST_CASE("weight enumeration basics") {
    auto w11 = enumerate_weights(1, 1);
    REQUIRE(w11 == std::vector<Weight>{"v^", "^v"});
    auto w12 = enumerate_weights(1, 2);
    REQUIRE(w12 == std::vector<Weight>{"vv^", "v^v", "^vv"});
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) {
            auto ws = enumerate_weights(m, n);
            std::set<Weight> uniq(ws.begin(), ws.end());
            REQUIRE(uniq.size() == ws.size());
            long long binom = 1;
            for (int k = 1; k <= m; ++k) binom = binom * (m + n - k + 1) / k;
            REQUIRE((long long)ws.size() == binom);
            for (auto& w : ws) {
                REQUIRE(is_valid_weight(w));
                REQUIRE(count_up(w) == m);
                REQUIRE(count_down(w) == n);
            }
        }
}

TEST_CASE("partition bijection matches the northern-perimeter reading") {
    // the running Λ_{5,5} example
    REQUIRE(weight_to_partition("v^v^^vv^^v") == Partition{5, 4, 2, 2});
    REQUIRE(partition_to_weight({5, 4, 2, 2}, 5, 5) == "v^v^^vv^^v");
    // extremes
    REQUIRE(weight_to_partition("^^^vv") == Partition{});
    REQUIRE(partition_to_weight({}, 3, 2) == "^^^vv");
    REQUIRE(weight_to_partition("vv^^^") == Partition{3, 3});
    REQUIRE(partition_to_weight({3, 3}, 3, 2) == "vv^^^");
    // roundtrip everywhere
    for (int m = 0; m <= 5; ++m)
        for (int n = 0; n + m <= 10 && n <= 5; ++n)
            for (auto& w : enumerate_weights(m, n)) {
                Partition p = weight_to_partition(w);
                REQUIRE(partition_fits_box(p, m, n));
                REQUIRE(partition_to_weight(p, m, n) == w);
            }
}

TEST_CASE("order: swap-generated order equals reverse containment of partitions") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {1, 3}, {3, 2}, {2, 4}, {4, 4}}) {
        auto ws = enumerate_weights(m, n);
        for (auto& a : ws)
            for (auto& b : ws) {
                Partition pa = weight_to_partition(a), pb = weight_to_partition(b);
                bool contained = true;
                for (size_t i = 0; i < pb.size(); ++i)
                    if (i >= pa.size() || pb[i] > pa[i]) contained = false;
                REQUIRE(leq(a, b) == contained);
            }
    }
    Weight top(3, UP);
    top += Weight(3, DOWN);  // ^^^vvv = ∅: the maximum
    for (auto& w : enumerate_weights(3, 3)) REQUIRE(leq(w, top));
}

TEST_CASE("cup diagrams") {
    CupDiagram d = cup_diagram("v^");
    REQUIRE(d.cups == std::vector<std::pair<int, int>>{{1, 2}});
    REQUIRE(d.rays.empty());

    CupDiagram e = cup_diagram("^v");
    REQUIRE(e.cups.empty());
    REQUIRE(e.rays == std::vector<int>{1, 2});

    CupDiagram f = cup_diagram("v^v^^vv^^v");
    REQUIRE(f.cups == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}, {6, 9}, {7, 8}});
    REQUIRE(f.rays == std::vector<int>{5, 10});
}

TEST_CASE("orientations and degree") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {2, 3}, {3, 3}}) {
        for (auto& w : enumerate_weights(m, n)) {
            CupDiagram d = cup_diagram(w);
            REQUIRE(is_oriented(d, w));
            REQUIRE(degree(d, w) == 0);
        }
    }
    REQUIRE(is_oriented(cup_diagram("v^"), "^v"));
    REQUIRE(degree(cup_diagram("v^"), "^v") == 1);
    REQUIRE_FALSE(is_oriented(cup_diagram("^v"), "v^"));

    // the Λ_{5,5} picture: μ̲λ for μ = (5,4,2,2), λ = (4,3,1) has degree 3
    Weight mu = partition_to_weight({5, 4, 2, 2}, 5, 5);
    Weight la = partition_to_weight({4, 3, 1}, 5, 5);
    REQUIRE(la == "^v^v^^v^vv");
    REQUIRE(is_oriented(cup_diagram(mu), la));
    REQUIRE(degree(cup_diagram(mu), la) == 3);
}

TEST_CASE("defect and regularity") {
    REQUIRE(defect("^v") == 0);
    REQUIRE_FALSE(is_regular("^v"));
    REQUIRE(is_regular("v^"));
    REQUIRE(is_regular("v^v"));
    REQUIRE(is_regular("vv^"));
    REQUIRE_FALSE(is_regular("^vv"));
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; m + n <= 8 && n <= 8; ++n)
            for (auto& w : enumerate_weights(m, n)) {
                // staircase containment
                int mm = std::min(m, n);
                Partition p = weight_to_partition(w);
                bool stair = true;
                for (int t = 0; t < mm; ++t)
                    if ((int)p.size() <= t || p[t] < mm - t) stair = false;
                REQUIRE(is_regular(w) == stair);
                REQUIRE(is_regular(w) == (defect(w) == mm));
                if (m <= n) {
                    bool elcrit = true;
                    for (int t = 1; t <= m + n; ++t)
                        if (ell(w, t) < 0) elcrit = false;
                    REQUIRE(is_regular(w) == elcrit);
                }
                // minimal weight is regular
            }
    REQUIRE(is_regular(partition_to_weight({3, 3, 3}, 3, 3)));
}

TEST_CASE("lambda_circ") {
    REQUIRE(lambda_circ("^v") == "v^");
    Weight w = partition_to_weight({5, 5, 5, 3, 1, 1}, 5, 6);
    REQUIRE(w == "vvv^^v^^vv^");
    REQUIRE(lambda_circ(w) == partition_to_weight({5, 5, 5, 4, 3, 3}, 5, 6));
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; m + n <= 8 && n <= 8; ++n)
            for (auto& w2 : enumerate_weights(m, n)) {
                Weight c = lambda_circ(w2);
                REQUIRE(is_regular(c));
                // the unique fixed point is the minimal weight v..v^..^
                Weight minimal = Weight(n, DOWN) + Weight(m, UP);
                REQUIRE((c == w2) == (w2 == minimal));
                // the defining picture: λ°̲ is oriented by λ
                REQUIRE(is_oriented(cup_diagram(c), w2));
            }
}

TEST_CASE("pair insertion and removal") {
    Weight lp = "^^v^vv^";
    REQUIRE((count_up(lp) == 4 && count_down(lp) == 3));
    REQUIRE(insert_pair(lp, 4, '+') == "^^vv^^vv^");
    REQUIRE(insert_pair(lp, 4, '-') == "^^v^v^vv^");
    REQUIRE(remove_pair("^^vv^^vv^", 4) == lp);
    REQUIRE(remove_pair("^^v^v^vv^", 4) == lp);
    REQUIRE(insert_pair("", 1, '+') == "v^");
    for (auto& w : enumerate_weights(2, 3))
        for (int i = 1; i < 5; ++i) {
            if (has_pair(w, i)) {
                char sign = (w[i - 1] == DOWN) ? '+' : '-';
                REQUIRE(insert_pair(remove_pair(w, i), i, sign) == w);
            }
        }
}

TEST_CASE("arrow relation") {
    REQUIRE(arrow_rel("v^", "^v"));
    REQUIRE(arrow_rel("vv^^", "^v^v"));
    REQUIRE_FALSE(arrow_rel("v^", "v^"));
    REQUIRE_FALSE(arrow_rel("^v", "v^"));
    // arrows strictly increase the order
    for (auto& a : enumerate_weights(2, 2))
        for (auto& b : enumerate_weights(2, 2))
            if (arrow_rel(a, b)) REQUIRE(lt(a, b));
    auto succ = arrow_successors("vv^^");
    REQUIRE(std::find(succ.begin(), succ.end(), Weight("^v^v")) != succ.end());
}
