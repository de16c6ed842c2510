#pragma once

// Generic surgery engine for stacked arc pictures.
//
// A picture is a stack of horizontal weight lines (index 0 = lowest) carrying
// ∨/∧ labels, plus arcs.  An arc joins two vertices (line, position); the
// pseudo-lines -1 and L denote the bottom and top boundary, so rays are arcs
// with one boundary endpoint.  Arcs with both endpoints on one weight line
// are cups/caps (the two endpoint labels of an oriented arc differ); arcs
// joining different lines are vertical strands (labels agree).
//
// A surgery site names a kissing cap/cup pair by arc index.  Performing the
// surgery replaces the pair by two vertical strands and transforms the label
// state by the merge/split rules:
//   merge  circle⊗circle: 1⊗1 ↦ 1, 1⊗x ↦ x, x⊗x ↦ 0
//   merge  circle⊗strand: 1⊗y ↦ y, x⊗y ↦ 0
//   merge  strand⊗strand: survives (labels kept) only when both strands
//          propagate from bottom to top boundary with opposite orientations
//   split  circle: 1 ↦ 1⊗x + x⊗1, x ↦ x⊗x
//   split  strand: y ↦ x⊗y (circle part clockwise, strand labels kept)
// where a circle is anticlockwise (value 1) iff its leftmost vertex is
// labelled ∨, and relabelling propagates from a seed by flipping across
// cups/caps and copying across verticals.  All surviving states carry
// coefficient +1; duplicate terminal states accumulate multiplicity.

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arcalg/combinatorics.hpp"

namespace arcalg {
namespace surgery {

struct ArcRef {
    int l1, p1;  // endpoint 1: line (-1 = bottom boundary, L = top boundary), 1-based position
    int l2, p2;  // endpoint 2
};

struct Site {
    int cap_arc;  // index into PictureSpec::arcs of the lower (cap) arc
    int cup_arc;  // index of the upper (cup) arc, one line higher, same positions
};

struct PictureSpec {
    std::vector<Weight> labels;       // initial labels per weight line, bottom first
    std::vector<std::vector<int>> x;  // optional x-coords per line (index p-1); empty => x = p
    std::vector<ArcRef> arcs;
    std::vector<Site> sites;  // executed in order
};

class Engine {
   public:
    explicit Engine(const PictureSpec& spec) : spec_(spec), arcs_(spec.arcs) {
        L = static_cast<int>(spec.labels.size());
        len_.assign(L + 2, 0);
        len_[0] = static_cast<int>(spec.labels.front().size());
        for (int l = 0; l < L; ++l) len_[l + 1] = static_cast<int>(spec.labels[l].size());
        len_[L + 1] = static_cast<int>(spec.labels.back().size());
        off_.assign(L + 3, 0);
        for (int k = 0; k <= L + 1; ++k) off_[k + 1] = off_[k] + len_[k];
        nv_ = off_[L + 2];
        for (const ArcRef& a : arcs_) {
            check_vertex(a.l1, a.p1);
            check_vertex(a.l2, a.p2);
        }
        states_.push_back(spec.labels);
    }

    std::vector<std::vector<Weight>> run() {
        for (const Site& s : spec_.sites) step(s);
        check_terminal();
        return states_;
    }

   private:
    int vid(int line, int pos) const { return off_[line + 1] + pos - 1; }
    bool is_boundary(int v) const { return v < off_[1] || v >= off_[L + 1]; }
    std::pair<int, int> line_pos(int v) const {
        int l = 0;
        while (off_[l + 1] <= v) ++l;
        return {l - 1, v - off_[l] + 1};
    }
    int xcoord(int line, int pos) const {
        if (spec_.x.empty() || spec_.x[line].empty()) return pos;
        return spec_.x[line][pos - 1];
    }
    void check_vertex(int l, int p) const {
        if (l < -1 || l > L || p < 1 || p > len_[l + 1]) throw std::logic_error("surgery: vertex out of range");
    }

    using Adj = std::vector<std::vector<std::pair<int, bool>>>;  // (neighbour, flips_label)

    Adj adjacency() const {
        Adj adj(nv_);
        for (const ArcRef& a : arcs_) {
            int u = vid(a.l1, a.p1), v = vid(a.l2, a.p2);
            bool flip = (a.l1 == a.l2);
            adj[u].push_back({v, flip});
            adj[v].push_back({u, flip});
        }
        return adj;
    }

    // component id per vertex (isolated boundary vertices get their own)
    std::vector<int> components(const Adj& adj) const {
        std::vector<int> comp(nv_, -1);
        int c = 0;
        for (int s = 0; s < nv_; ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = c;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (auto [w, f] : adj[v])
                    if (comp[w] < 0) {
                        comp[w] = c;
                        stack.push_back(w);
                    }
            }
            ++c;
        }
        return comp;
    }

    std::vector<int> member_list(const std::vector<int>& comp, int c) const {
        std::vector<int> r;
        for (int v = 0; v < nv_; ++v)
            if (comp[v] == c) r.push_back(v);
        return r;
    }

    bool is_circle(const std::vector<int>& members) const {
        for (int v : members)
            if (is_boundary(v)) return false;
        return true;
    }

    // a strand propagates when one end sits on each boundary
    bool is_propagating(const std::vector<int>& members) const {
        bool bot = false, top = false;
        for (int v : members) {
            if (v < off_[1]) bot = true;
            if (v >= off_[L + 1]) top = true;
        }
        return bot && top;
    }

    // label at the weight-line vertex adjacent to the strand's bottom endpoint;
    // for a propagating strand this is its orientation (arcs flip in pairs)
    char strand_orientation(const std::vector<Weight>& st, const std::vector<int>& members,
                            const Adj& adj) const {
        for (int v : members) {
            if (v >= off_[1]) continue;  // want the bottom-boundary endpoint
            if (adj[v].size() != 1) throw std::logic_error("surgery: boundary vertex degree != 1");
            return label_at(st, adj[v][0].first);
        }
        throw std::logic_error("surgery: strand without bottom endpoint");
    }

    // leftmost weight-line vertex: minimal (x, line, pos)
    int leftmost(const std::vector<int>& members) const {
        int best = -1;
        std::array<int, 3> bkey{0, 0, 0};
        for (int v : members) {
            if (is_boundary(v)) continue;
            auto [l, p] = line_pos(v);
            std::array<int, 3> key{xcoord(l, p), l, p};
            if (best < 0 || key < bkey) {
                best = v;
                bkey = key;
            }
        }
        if (best < 0) throw std::logic_error("surgery: component without weight-line vertex");
        return best;
    }

    char label_at(const std::vector<Weight>& st, int v) const {
        auto [l, p] = line_pos(v);
        return st[l][p - 1];
    }

    // true = anticlockwise (value 1)
    bool circle_value_one(const std::vector<Weight>& st, int lm) const { return label_at(st, lm) == DOWN; }

    void propagate(std::vector<Weight>& st, int seed, char seed_label, const Adj& adj) const {
        std::vector<char> val(nv_, 0);
        val[seed] = seed_label;
        std::vector<int> stack{seed};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, f] : adj[v]) {
                char want = f ? (val[v] == DOWN ? UP : DOWN) : val[v];
                if (val[w] == 0) {
                    val[w] = want;
                    stack.push_back(w);
                } else if (val[w] != want) {
                    throw std::logic_error("surgery: inconsistent label propagation");
                }
            }
        }
        for (int v = 0; v < nv_; ++v) {
            if (val[v] == 0 || is_boundary(v)) continue;
            auto [l, p] = line_pos(v);
            st[l][p - 1] = val[v];
        }
    }

    void relabel_circle(std::vector<Weight>& st, const std::vector<int>& members, bool anticlockwise,
                        const Adj& adj) const {
        propagate(st, leftmost(members), anticlockwise ? DOWN : UP, adj);
    }

    void step(const Site& site) {
        const ArcRef cap = arcs_.at(site.cap_arc);
        const ArcRef cup = arcs_.at(site.cup_arc);
        if (cap.l1 != cap.l2 || cup.l1 != cup.l2 || cup.l1 != cap.l1 + 1)
            throw std::logic_error("surgery: site is not a mirror cap/cup pair");
        int g = cap.l1;
        int i = std::min(cap.p1, cap.p2), j = std::max(cap.p1, cap.p2);
        if (std::min(cup.p1, cup.p2) != i || std::max(cup.p1, cup.p2) != j)
            throw std::logic_error("surgery: cap/cup positions disagree");

        Adj old_adj = adjacency();
        std::vector<int> old_comp = components(old_adj);
        int ca = old_comp[vid(g, i)];
        int cb = old_comp[vid(g + 1, i)];
        bool same = (ca == cb);
        std::vector<int> mem_a = member_list(old_comp, ca);
        std::vector<int> mem_b = same ? std::vector<int>{} : member_list(old_comp, cb);
        bool circ_a = is_circle(mem_a);
        bool circ_b = same ? false : is_circle(mem_b);
        int lm_a = leftmost(mem_a);
        int lm_b = same ? -1 : leftmost(mem_b);

        // replace the pair with vertical strands, indices stay stable
        arcs_[site.cap_arc] = ArcRef{g, i, g + 1, i};
        arcs_[site.cup_arc] = ArcRef{g, j, g + 1, j};

        Adj new_adj = adjacency();
        std::vector<int> new_comp = components(new_adj);

        std::vector<std::vector<Weight>> next;
        next.reserve(states_.size() * 2);

        if (!same) {
            // ---- merge ----
            if (circ_a || circ_b) {
                // union is a single component
                std::vector<int> merged = member_list(new_comp, new_comp[vid(g, i)]);
                bool both_circles = circ_a && circ_b;
                for (auto& st : states_) {
                    bool one_a = circ_a && circle_value_one(st, lm_a);
                    bool one_b = circ_b && circle_value_one(st, lm_b);
                    if (both_circles) {
                        if (!one_a && !one_b) continue;  // x⊗x ↦ 0
                        std::vector<Weight> ns = st;
                        relabel_circle(ns, merged, one_a && one_b, new_adj);
                        next.push_back(std::move(ns));
                    } else {
                        bool circle_is_one = circ_a ? one_a : one_b;
                        if (!circle_is_one) continue;  // x⊗y ↦ 0
                        const std::vector<int>& strand_mem = circ_a ? mem_b : mem_a;
                        int seed = leftmost(strand_mem);
                        std::vector<Weight> ns = st;
                        propagate(ns, seed, label_at(st, seed), new_adj);
                        next.push_back(std::move(ns));
                    }
                }
            } else {
                // strand⊗strand: the verticals reconnect the four loose ends
                // into two new strands; the state survives, labels kept, only
                // when both old strands propagate with opposite orientations
                if (is_propagating(mem_a) && is_propagating(mem_b)) {
                    for (auto& st : states_) {
                        if (strand_orientation(st, mem_a, old_adj) ==
                            strand_orientation(st, mem_b, old_adj))
                            continue;
                        if (st[g][i - 1] != st[g + 1][i - 1] || st[g][j - 1] != st[g + 1][j - 1])
                            throw std::logic_error(
                                "surgery: propagating strand merge left inconsistent labels");
                        next.push_back(std::move(st));
                    }
                }
            }
        } else {
            // ---- split ----
            int na = new_comp[vid(g, i)];
            int nb = new_comp[vid(g, j)];
            if (na == nb) throw std::logic_error("surgery: same-component surgery failed to split");
            std::vector<int> mem_i = member_list(new_comp, na);
            std::vector<int> mem_j = member_list(new_comp, nb);
            bool ci = is_circle(mem_i), cj = is_circle(mem_j);
            if (circ_a) {
                if (!ci || !cj) throw std::logic_error("surgery: circle split produced a strand");
                for (auto& st : states_) {
                    if (circle_value_one(st, lm_a)) {
                        // 1 ↦ 1⊗x + x⊗1
                        std::vector<Weight> s1 = st;
                        relabel_circle(s1, mem_i, true, new_adj);
                        relabel_circle(s1, mem_j, false, new_adj);
                        next.push_back(std::move(s1));
                        std::vector<Weight> s2 = st;
                        relabel_circle(s2, mem_i, false, new_adj);
                        relabel_circle(s2, mem_j, true, new_adj);
                        next.push_back(std::move(s2));
                    } else {
                        // x ↦ x⊗x
                        std::vector<Weight> s1 = st;
                        relabel_circle(s1, mem_i, false, new_adj);
                        relabel_circle(s1, mem_j, false, new_adj);
                        next.push_back(std::move(s1));
                    }
                }
            } else {
                if (ci == cj) throw std::logic_error("surgery: strand split did not give strand + circle");
                const std::vector<int>& circle_mem = ci ? mem_i : mem_j;
                for (auto& st : states_) {
                    // y ↦ x⊗y
                    std::vector<Weight> s1 = st;
                    relabel_circle(s1, circle_mem, false, new_adj);
                    next.push_back(std::move(s1));
                }
            }
        }
        states_ = std::move(next);
    }

    void check_terminal() const {
        for (const auto& st : states_) {
            for (const ArcRef& a : arcs_) {
                if (a.l1 == -1 || a.l1 == L || a.l2 == -1 || a.l2 == L) continue;
                char u = st[a.l1][a.p1 - 1], v = st[a.l2][a.p2 - 1];
                if (a.l1 == a.l2 ? (u == v) : (u != v))
                    throw std::logic_error("surgery: terminal state has an inconsistent arc");
            }
        }
    }

    const PictureSpec& spec_;
    std::vector<ArcRef> arcs_;
    int L = 0;
    int nv_ = 0;
    std::vector<int> len_, off_;
    std::vector<std::vector<Weight>> states_;
};

inline std::vector<std::vector<Weight>> run(const PictureSpec& spec) { return Engine(spec).run(); }

}  // namespace surgery
}  // namespace arcalg
