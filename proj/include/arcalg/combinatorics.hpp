#pragma once

// Weights (strings over {v,^}), their partition encoding, the dominance-style
// partial order, cup/cap diagrams, orientation and degree, regular weights,
// the regularization w -> w°, and the local pair surgeries w', w+, w-.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arcalg {

constexpr char DOWN = 'v';
constexpr char UP = '^';

// A weight is a string over {'v','^'}; by convention m counts '^' and n counts 'v'.
using Weight = std::string;

// Weakly decreasing parts, no trailing zeros.
using Partition = std::vector<int>;

inline bool is_valid_weight(const Weight& w) {
    for (char c : w)
        if (c != DOWN && c != UP) return false;
    return true;
}

inline int count_up(const Weight& w) {
    return static_cast<int>(std::count(w.begin(), w.end(), UP));
}

inline int count_down(const Weight& w) {
    return static_cast<int>(std::count(w.begin(), w.end(), DOWN));
}

// All C(m+n, m) weights with m '^' and n 'v', lexicographic with 'v' < '^'.
inline std::vector<Weight> enumerate_weights(int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("enumerate_weights: negative m or n");
    std::vector<Weight> out;
    Weight buf;
    buf.reserve(m + n);
    auto gen = [&](auto&& self, int mu, int nu) -> void {
        if (mu == 0 && nu == 0) {
            out.push_back(buf);
            return;
        }
        if (nu > 0) {
            buf.push_back(DOWN);
            self(self, mu, nu - 1);
            buf.pop_back();
        }
        if (mu > 0) {
            buf.push_back(UP);
            self(self, mu - 1, nu);
            buf.pop_back();
        }
    };
    gen(gen, m, n);
    return out;
}

// For the j-th 'v' from the left, the part is the number of '^' strictly to its
// right; the result is weakly decreasing.  Inverse: the j-th 'v' (1-based, with
// parts padded by zeros to length n) sits at position j + m - p_j.
inline Partition weight_to_partition(const Weight& w) {
    Partition p;
    int ups_after = count_up(w);
    for (char c : w) {
        if (c == UP) --ups_after;
        else p.push_back(ups_after);
    }
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline bool partition_fits_box(const Partition& p, int m, int n) {
    if (static_cast<int>(p.size()) > n) return false;
    for (size_t j = 0; j < p.size(); ++j) {
        if (p[j] < 0 || p[j] > m) return false;
        if (j + 1 < p.size() && p[j] < p[j + 1]) return false;
    }
    return true;
}

inline Weight partition_to_weight(const Partition& p, int m, int n) {
    if (!partition_fits_box(p, m, n))
        throw std::invalid_argument("partition_to_weight: partition does not fit the m x n box");
    Weight w(m + n, UP);
    for (int j = 1; j <= n; ++j) {
        int part = (j <= static_cast<int>(p.size())) ? p[j - 1] : 0;
        w[j + m - part - 1] = DOWN;
    }
    return w;
}

// a <= b iff the partition of b is contained in the partition of a
// (coordinatewise); equivalently b is reachable from a by moving 'v's right.
inline bool leq(const Weight& a, const Weight& b) {
    if (a.size() != b.size() || count_up(a) != count_up(b))
        throw std::invalid_argument("leq: weights live in different sets");
    Partition pa = weight_to_partition(a), pb = weight_to_partition(b);
    if (pb.size() > pa.size()) return false;
    for (size_t j = 0; j < pb.size(); ++j)
        if (pb[j] > pa[j]) return false;
    return true;
}

inline bool lt(const Weight& a, const Weight& b) { return a != b && leq(a, b); }

// (#'v') - (#'^') among positions 1..t.
inline int ell(const Weight& w, int t) {
    int s = 0;
    for (int i = 0; i < t && i < static_cast<int>(w.size()); ++i)
        s += (w[i] == DOWN) ? 1 : -1;
    return s;
}

struct CupDiagram {
    std::vector<std::pair<int, int>> cups;  // 1-based, (left, right), sorted by left
    std::vector<int> rays;                  // 1-based, sorted

    bool operator==(const CupDiagram& o) const { return cups == o.cups && rays == o.rays; }
};

// Greedy nested matching: scan left to right, stack the 'v's, close a cup at
// each '^' that has an open 'v'; leftovers (which read ^...^v...v) become rays.
inline CupDiagram cup_diagram(const Weight& w) {
    CupDiagram d;
    std::vector<int> open;
    std::vector<char> matched(w.size(), 0);
    for (int i = 1; i <= static_cast<int>(w.size()); ++i) {
        if (w[i - 1] == DOWN) {
            open.push_back(i);
        } else if (!open.empty()) {
            d.cups.emplace_back(open.back(), i);
            matched[open.back() - 1] = matched[i - 1] = 1;
            open.pop_back();
        }
    }
    for (int i = 1; i <= static_cast<int>(w.size()); ++i)
        if (!matched[i - 1]) d.rays.push_back(i);
    std::sort(d.cups.begin(), d.cups.end());
    return d;
}

inline int defect(const Weight& w) {
    return static_cast<int>(cup_diagram(w).cups.size());
}

inline bool is_regular(const Weight& w) {
    return defect(w) == std::min(count_up(w), count_down(w));
}

// Orientation of a cup (equally: cap) diagram by a weight: every arc carries
// one 'v' and one '^', and no ray labeled 'v' sits left of a ray labeled '^'.
inline bool is_oriented(const CupDiagram& d, const Weight& w) {
    for (auto [i, j] : d.cups) {
        if (w[i - 1] == w[j - 1]) return false;
    }
    bool seen_down_ray = false;
    for (int r : d.rays) {
        if (w[r - 1] == DOWN) seen_down_ray = true;
        else if (seen_down_ray) return false;
    }
    return true;
}

// An arc (cup or cap alike) is clockwise iff its left endpoint reads '^' and
// its right endpoint 'v'.  The mirror image of an arc keeps its rotational
// sense under this rule, so the degree of a diagram and of its mirror agree.
inline int degree(const CupDiagram& d, const Weight& w) {
    if (!is_oriented(d, w)) throw std::invalid_argument("degree: diagram is not oriented by the weight");
    int deg = 0;
    for (auto [i, j] : d.cups) {
        (void)j;
        if (w[i - 1] == UP) ++deg;
    }
    return deg;
}

// Regularization: first greedily close clockwise cups on adjacent-modulo-cups
// '^ v' pairs, then nest anticlockwise cups over as much of the leftover
// (which reads v...v^...^) as possible, rays on the rest; w° is the weight
// whose cup diagram is that matching.
inline Weight lambda_circ(const Weight& w) {
    const int N = static_cast<int>(w.size());
    std::vector<char> matched(N, 0);
    std::vector<std::pair<int, int>> cups;
    // phase 1: '^' pushed, matched by the next 'v' (nearest unmatched '^' wins)
    std::vector<int> open;
    for (int i = 1; i <= N; ++i) {
        if (w[i - 1] == UP) {
            open.push_back(i);
        } else if (!open.empty()) {
            cups.emplace_back(open.back(), i);
            matched[open.back() - 1] = matched[i - 1] = 1;
            open.pop_back();
        }
    }
    // phase 2: leftover 'v's q_1<...<q_a then '^'s r_1<...<r_b; nest
    // (q_a, r_1), (q_{a-1}, r_2), ...
    std::vector<int> qs, rs;
    for (int i = 1; i <= N; ++i)
        if (!matched[i - 1]) (w[i - 1] == DOWN ? qs : rs).push_back(i);
    int k = static_cast<int>(std::min(qs.size(), rs.size()));
    for (int s = 0; s < k; ++s) {
        cups.emplace_back(qs[qs.size() - 1 - s], rs[s]);
        matched[qs[qs.size() - 1 - s] - 1] = matched[rs[s] - 1] = 1;
    }
    Weight out = w;  // rays keep their labels
    for (auto [i, j] : cups) {
        out[i - 1] = DOWN;
        out[j - 1] = UP;
    }
    return out;
}

inline bool has_pair(const Weight& w, int i) {  // 1-based i; w[i],w[i+1] is 'v^' or '^v'
    return i >= 1 && i + 1 <= static_cast<int>(w.size()) && w[i - 1] != w[i];
}

inline bool has_down_up(const Weight& w, int i) {
    return i >= 1 && i + 1 <= static_cast<int>(w.size()) && w[i - 1] == DOWN && w[i] == UP;
}

inline bool has_up_down(const Weight& w, int i) {
    return i >= 1 && i + 1 <= static_cast<int>(w.size()) && w[i - 1] == UP && w[i] == DOWN;
}

inline Weight remove_pair(const Weight& w, int i) {
    if (!has_pair(w, i))
        throw std::invalid_argument("remove_pair: positions i, i+1 must read 'v^' or '^v'");
    Weight out = w;
    out.erase(i - 1, 2);
    return out;
}

// sign '+' inserts "v^" at positions i, i+1; sign '-' inserts "^v".
inline Weight insert_pair(const Weight& w, int i, char sign) {
    if (i < 1 || i > static_cast<int>(w.size()) + 1)
        throw std::invalid_argument("insert_pair: position out of range");
    Weight out = w;
    out.insert(static_cast<size_t>(i - 1), sign == '+' ? "v^" : "^v");
    return out;
}

// b arises from a by swapping a 'v' at i with an '^' at j > i whose
// intervening segment is a regular balanced weight (possibly empty).
inline bool arrow_rel(const Weight& a, const Weight& b) {
    if (a.size() != b.size() || a == b) return false;
    const int N = static_cast<int>(a.size());
    for (int i = 1; i <= N; ++i) {
        if (a[i - 1] != DOWN || b[i - 1] != UP) continue;
        for (int j = i + 1; j <= N; ++j) {
            if (a[j - 1] != UP || b[j - 1] != DOWN) continue;
            Weight swapped = a;
            std::swap(swapped[i - 1], swapped[j - 1]);
            if (swapped != b) continue;
            if ((j - i - 1) % 2 != 0) continue;
            Weight seg = a.substr(i, j - i - 1);
            if (count_up(seg) != count_down(seg)) continue;
            if (seg.empty() || is_regular(seg)) return true;
        }
    }
    return false;
}

inline std::vector<Weight> arrow_successors(const Weight& a) {
    std::vector<Weight> out;
    const int N = static_cast<int>(a.size());
    for (int i = 1; i <= N; ++i) {
        if (a[i - 1] != DOWN) continue;
        for (int j = i + 1; j <= N; ++j) {
            if (a[j - 1] != UP) continue;
            if ((j - i - 1) % 2 != 0) continue;
            Weight seg = a.substr(i, j - i - 1);
            if (count_up(seg) != count_down(seg)) continue;
            if (!seg.empty() && !is_regular(seg)) continue;
            Weight b = a;
            std::swap(b[i - 1], b[j - 1]);
            out.push_back(b);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace arcalg
