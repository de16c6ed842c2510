#pragma once
// Serialization and rendering: JSON objects that round-trip, CSV for tabular
// data, ASCII cup-diagram pictures, and the human-readable table for check
// reports.  All emitted containers iterate in deterministic (sorted or
// enumeration) order, so output is byte-stable across runs.

#include <cctype>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arcalg/checks.hpp"
#include "arcalg/klpoly.hpp"

namespace arcalg {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// weights

inline Json weight_json(const Weight& w) {
    Json j;
    j["weight"] = w;
    j["partition"] = weight_to_partition(w);
    j["regular"] = is_regular(w);
    return j;
}

inline Weight weight_from_json(const Json& j) {
    Weight w = j.at("weight").get<std::string>();
    if (!is_valid_weight(w)) throw std::invalid_argument("weight_from_json: invalid weight string");
    return w;
}

// ---------------------------------------------------------------------------
// cup diagrams

// Rows of an ASCII picture: the spaced weight, then the arcs.  Inner cups sit
// closer to the weight line; every arc endpoint is extended upward with '|',
// and rays run '|' through all rows.  Boundary point i sits at column 2(i-1).
inline std::vector<std::string> cup_ascii(const Weight& w) {
    const CupDiagram d = cup_diagram(w);
    const int N = static_cast<int>(w.size());
    const int width = N > 0 ? 2 * N - 1 : 0;

    std::vector<int> height(d.cups.size(), 1);  // 1 + max height of nested cups
    for (size_t a = 0; a < d.cups.size(); ++a)
        for (size_t b = 0; b < d.cups.size(); ++b)
            if (d.cups[a].first < d.cups[b].first && d.cups[b].second < d.cups[a].second)
                height[a] = std::max(height[a], height[b] + 1);
    int rows = d.rays.empty() ? 0 : 1;
    for (int h : height) rows = std::max(rows, h);

    std::vector<std::string> grid(rows, std::string(width, ' '));
    for (size_t a = 0; a < d.cups.size(); ++a) {
        const int ci = 2 * (d.cups[a].first - 1), cj = 2 * (d.cups[a].second - 1);
        const int r = height[a] - 1;
        grid[r][ci] = '\\';
        grid[r][cj] = '/';
        for (int c = ci + 1; c < cj; ++c) grid[r][c] = '_';
        for (int r2 = 0; r2 < r; ++r2) {
            grid[r2][ci] = '|';
            grid[r2][cj] = '|';
        }
    }
    for (int ray : d.rays)
        for (int r = 0; r < rows; ++r) grid[r][2 * (ray - 1)] = '|';

    std::string head(width, ' ');
    for (int i = 0; i < N; ++i) head[2 * i] = w[i];
    std::vector<std::string> out{head};
    for (auto& g : grid) out.push_back(std::move(g));
    return out;
}

inline Json cup_json(const Weight& w) {
    const CupDiagram d = cup_diagram(w);
    Json j;
    j["weight"] = w;
    j["cups"] = d.cups;
    j["rays"] = d.rays;
    j["ascii"] = cup_ascii(w);
    return j;
}

inline CupDiagram cup_from_json(const Json& j) {
    CupDiagram d;
    d.cups = j.at("cups").get<std::vector<std::pair<int, int>>>();
    d.rays = j.at("rays").get<std::vector<int>>();
    return d;
}

// ---------------------------------------------------------------------------
// polynomials

inline Json poly_json(const Poly& p) {
    Json j;
    j["coeffs"] = p.c;  // coeffs[k] multiplies q^k
    j["str"] = p.str();
    return j;
}

inline Poly poly_from_json(const Json& j) {
    Poly p;
    p.c = j.at("coeffs").get<std::vector<long long>>();
    p.trim();
    return p;
}

// ---------------------------------------------------------------------------
// basis diagrams and products

inline Json diagram_json(const BasisDiagram& d) {
    Json j;
    j["bottom"] = d.bottom;
    j["middle"] = d.middle;
    j["top"] = d.top;
    j["degree"] = d.degree;
    j["compact"] = diagram_str(d);
    return j;
}

// Accepts either the object emitted by diagram_json or a compact
// "bottom|middle|top" string.
inline BasisDiagram diagram_from_json(const AlgebraContext& K, const Json& j) {
    std::string compact;
    if (j.is_string()) {
        compact = j.get<std::string>();
    } else {
        compact = j.at("bottom").get<std::string>() + "|" + j.at("middle").get<std::string>() + "|" +
                  j.at("top").get<std::string>();
    }
    const BasisDiagram d = parse_diagram_str(compact);
    const long long idx = K.find(d.bottom, d.middle, d.top);
    if (idx < 0) throw std::invalid_argument("diagram_from_json: not a basis diagram: " + compact);
    return K.basis[static_cast<size_t>(idx)];
}

inline Json product_json(const AlgebraContext& K, size_t i, size_t j) {
    Json out;
    out["left"] = diagram_json(K.basis[i]);
    out["right"] = diagram_json(K.basis[j]);
    Json terms = Json::array();
    for (const auto& [t, mult] : K.product(i, j)) {
        Json term;
        term["diagram"] = diagram_json(K.basis[t]);
        term["mult"] = mult;
        terms.push_back(std::move(term));
    }
    out["terms"] = std::move(terms);
    return out;
}

inline ProductTerms product_terms_from_json(const AlgebraContext& K, const Json& j) {
    ProductTerms out;
    for (const Json& term : j.at("terms")) {
        const BasisDiagram d = diagram_from_json(K, term.at("diagram"));
        out[K.index(d.bottom, d.middle, d.top)] += term.at("mult").get<long long>();
    }
    return out;
}

// ---------------------------------------------------------------------------
// matrices over the weights

inline std::vector<std::vector<long long>> cartan_counts(const AlgebraContext& K) {
    std::map<Weight, size_t> pos;
    for (size_t k = 0; k < K.basis_weights.size(); ++k) pos[K.basis_weights[k]] = k;
    std::vector<std::vector<long long>> M(K.basis_weights.size(),
                                          std::vector<long long>(K.basis_weights.size(), 0));
    for (const BasisDiagram& d : K.basis) ++M[pos.at(d.bottom)][pos.at(d.top)];
    return M;
}

inline Json cartan_json(const AlgebraContext& K) {
    Json j;
    j["m"] = K.m;
    j["n"] = K.n;
    j["regular_only"] = K.regular_only;
    j["weights"] = K.basis_weights;
    j["matrix"] = cartan_counts(K);
    return j;
}

inline Json kl_json(int m, int n, bool inverse) {
    const std::vector<Weight> ws = enumerate_weights(m, n);
    const std::vector<std::vector<Poly>> M = inverse ? inverse_kl_matrix(m, n) : kl_matrix(m, n);
    Json j;
    j["m"] = m;
    j["n"] = n;
    j["kind"] = inverse ? "inverse" : "direct";
    j["weights"] = ws;
    Json rows = Json::array();
    for (const auto& row : M) {
        Json r = Json::array();
        for (const Poly& p : row) r.push_back(poly_json(p));
        rows.push_back(std::move(r));
    }
    j["matrix"] = std::move(rows);
    return j;
}

// ---------------------------------------------------------------------------
// module reports

inline Json counts_json(const std::map<Weight, long long>& counts) {
    Json j = Json::object();
    for (const auto& [w, c] : counts) j[w] = c;
    return j;
}

template <class F>
Json module_report_json(const ModuleRep<F>& M) {
    Json j;
    j["name"] = M.name;
    j["field"] = FieldTraits<F>::name();
    j["m"] = M.ctx->m;
    j["n"] = M.ctx->n;
    j["side"] = M.ctx->regular_only ? "H" : "K";
    j["dim"] = M.dim();
    j["weights"] = counts_json(M.weight_counts());
    j["top"] = counts_json(top_counts(M));
    j["socle"] = counts_json(socle_counts(M));
    Json layers = Json::array();
    for (const auto& layer : radical_filtration(M).layers) layers.push_back(counts_json(layer));
    j["radical_layers"] = std::move(layers);
    return j;
}

template <class F>
Json delta_mults_json(const ModuleRep<F>& M) {
    DeltaMults dm = delta_filtration_mults(M, standard_comp_table<F>(*M.ctx));
    Json j;
    j["mults"] = counts_json(dm.mult);
    j["negatives"] = dm.negatives;
    j["consistent"] = dm.negatives.empty();
    return j;
}

// ---------------------------------------------------------------------------
// check reports

inline Json check_report_json(const CheckReport& r) {
    Json j;
    j["check"] = r.check;
    Json p;
    p["m"] = r.params.m;
    p["n"] = r.params.n;
    p["characteristic"] = r.params.characteristic;
    p["jmax"] = r.params.jmax;
    p["dim_cap"] = r.params.dim_cap;
    p["deep"] = r.params.deep;
    j["params"] = std::move(p);
    j["status"] = r.status;
    j["witnesses"] = r.witnesses;
    j["millis"] = r.millis;
    return j;
}

inline CheckReport check_report_from_json(const Json& j) {
    CheckReport r;
    r.check = j.at("check").get<std::string>();
    const Json& p = j.at("params");
    r.params.m = p.at("m").get<int>();
    r.params.n = p.at("n").get<int>();
    r.params.characteristic = p.at("characteristic").get<long long>();
    r.params.jmax = p.at("jmax").get<int>();
    r.params.dim_cap = p.at("dim_cap").get<size_t>();
    r.params.deep = p.at("deep").get<bool>();
    r.status = j.at("status").get<std::string>();
    r.witnesses = j.at("witnesses").get<std::vector<std::string>>();
    r.millis = j.at("millis").get<long long>();
    return r;
}

inline Json check_reports_json(const std::vector<CheckReport>& rs) {
    Json arr = Json::array();
    for (const CheckReport& r : rs) arr.push_back(check_report_json(r));
    return arr;
}

// Human-readable table, one row per report, witnesses indented beneath.
inline std::string check_table(const std::vector<CheckReport>& rs, bool witnesses = true) {
    size_t name_w = 5, param_w = 6;
    std::vector<std::string> params;
    for (const CheckReport& r : rs) {
        std::ostringstream p;
        p << "m=" << r.params.m << " n=" << r.params.n << " char=" << r.params.characteristic;
        if (r.params.jmax > 0) p << " jmax=" << r.params.jmax;
        if (r.params.deep) p << " deep";
        params.push_back(p.str());
        name_w = std::max(name_w, r.check.size());
        param_w = std::max(param_w, params.back().size());
    }
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(name_w) + 2) << "check"
       << std::setw(static_cast<int>(param_w) + 2) << "params" << std::setw(9) << "status"
       << "time\n";
    for (size_t i = 0; i < rs.size(); ++i) {
        os << std::left << std::setw(static_cast<int>(name_w) + 2) << rs[i].check
           << std::setw(static_cast<int>(param_w) + 2) << params[i] << std::setw(9) << rs[i].status
           << rs[i].millis << "ms\n";
        if (witnesses)
            for (const std::string& w : rs[i].witnesses) os << "    - " << w << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_escape(const std::string& s) {
    bool needs = false;
    for (char c : s)
        if (c == ',' || c == '"' || c == '\n') needs = true;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_escape(header[i]);
    os << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
        os << "\n";
    }
    return os.str();
}

}  // namespace arcalg
