// Serialization: JSON round-trips for weights, cup diagrams, polynomials,
// diagrams/products, and check reports; ASCII cup pictures; CSV quoting;
// determinism of emitted JSON.

#include <catch2/catch_amalgamated.hpp>

#include "arcalg/io.hpp"

using namespace arcalg;

TEST_CASE("weight JSON round-trips and carries the partition") {
    for (const Weight& w : enumerate_weights(2, 2)) {
        Json j = weight_json(w);
        REQUIRE(weight_from_json(j) == w);
        REQUIRE(j.at("partition").get<Partition>() == weight_to_partition(w));
        REQUIRE(Json::parse(j.dump()) == j);
    }
    REQUIRE_THROWS_AS(weight_from_json(Json{{"weight", "vx^"}}), std::invalid_argument);
}

TEST_CASE("cup diagram JSON round-trips and the ASCII picture is well-formed") {
    const Weight w = "v^vv^^v^^v";
    Json j = cup_json(w);
    REQUIRE(cup_from_json(j) == cup_diagram(w));

    std::vector<std::string> pic = cup_ascii(w);
    REQUIRE(pic.size() >= 2);
    REQUIRE(pic[0][0] == 'v');
    REQUIRE(pic[0][2] == '^');
    // every line has the same width; arcs use only the drawing alphabet
    for (const std::string& line : pic) REQUIRE(line.size() == pic[0].size());
    for (size_t r = 1; r < pic.size(); ++r)
        for (char c : pic[r]) REQUIRE(std::string(" \\/_|").find(c) != std::string::npos);

    // smallest cup: the picture is exactly two lines
    std::vector<std::string> small = cup_ascii("v^");
    REQUIRE(small == std::vector<std::string>{"v ^", "\\_/"});
}

TEST_CASE("polynomial JSON round-trips") {
    Poly p = Poly::q_power(3, 2);
    p = p + Poly(1);
    Json j = poly_json(p);
    REQUIRE(poly_from_json(j) == p);
    REQUIRE(j.at("str").get<std::string>() == "2q^3 + 1");
    REQUIRE(poly_from_json(poly_json(Poly())) == Poly());
}

TEST_CASE("diagram and product JSON round-trip through the basis") {
    AlgebraContext K(1, 1);
    for (size_t i = 0; i < K.dim(); ++i) {
        Json j = diagram_json(K.basis[i]);
        BasisDiagram d = diagram_from_json(K, j);
        REQUIRE(diagram_str(d) == diagram_str(K.basis[i]));
        // compact string form is accepted directly
        BasisDiagram d2 = diagram_from_json(K, Json(diagram_str(K.basis[i])));
        REQUIRE(d2.degree == K.basis[i].degree);
    }
    for (size_t i = 0; i < K.dim(); ++i)
        for (size_t j = 0; j < K.dim(); ++j) {
            if (K.basis[i].top != K.basis[j].bottom) continue;
            Json pj = product_json(K, i, j);
            REQUIRE(product_terms_from_json(K, pj) == K.product(i, j));
            REQUIRE(Json::parse(pj.dump()) == pj);
        }
    REQUIRE_THROWS_AS(diagram_from_json(K, Json("v^|vv|v^")), std::invalid_argument);
}

TEST_CASE("cartan counts match hom dimensions between projectives") {
    AlgebraContext K(1, 2);
    auto M = cartan_counts(K);
    for (size_t a = 0; a < K.basis_weights.size(); ++a) {
        ModuleRep<Rational> Pa = projective_module<Rational>(K, K.basis_weights[a]);
        for (size_t b = 0; b < K.basis_weights.size(); ++b) {
            ModuleRep<Rational> Pb = projective_module<Rational>(K, K.basis_weights[b]);
            REQUIRE(M[a][b] == static_cast<long long>(hom_space_auto(Pb, Pa).size()));
        }
    }
    Json j = cartan_json(K);
    REQUIRE(j.at("matrix").get<std::vector<std::vector<long long>>>() == M);
}

TEST_CASE("KL matrix JSON is stable and the inverse variant is flagged") {
    Json j = kl_json(1, 1, false);
    REQUIRE(j.at("kind") == "direct");
    REQUIRE(j.at("matrix").size() == 2);
    REQUIRE(j.dump() == kl_json(1, 1, false).dump());
    Json ji = kl_json(1, 1, true);
    REQUIRE(ji.at("kind") == "inverse");
}

TEST_CASE("module report JSON carries dimensions and layers") {
    AlgebraContext K(1, 2);
    ModuleRep<Rational> P = projective_module<Rational>(K, "v^v");
    Json j = module_report_json(P);
    REQUIRE(j.at("dim").get<size_t>() == P.dim());
    REQUIRE(j.at("side") == "K");
    REQUIRE(j.at("radical_layers").size() == radical_filtration(P).layers.size());
    Json dm = delta_mults_json(P);
    REQUIRE(dm.at("consistent").get<bool>());
}

TEST_CASE("check report JSON round-trips and the table lists every check") {
    CheckReport r = check_zero_faithful_failure<Rational>(1);
    Json j = check_report_json(r);
    CheckReport r2 = check_report_from_json(j);
    REQUIRE(r2.check == r.check);
    REQUIRE(r2.status == r.status);
    REQUIRE(r2.witnesses == r.witnesses);
    REQUIRE(r2.params.m == r.params.m);
    REQUIRE(r2.millis == r.millis);

    std::string table = check_table({r});
    REQUIRE(table.find("zero-faithful-failure") != std::string::npos);
    REQUIRE(table.find("pass") != std::string::npos);
    REQUIRE(table.find(r.witnesses[0]) != std::string::npos);
}

TEST_CASE("CSV quoting escapes separators and quotes") {
    std::string csv = csv_table({"a", "b,c"}, {{"plain", "has \"quote\""}, {"x,y", "z"}});
    REQUIRE(csv == "a,\"b,c\"\nplain,\"has \"\"quote\"\"\"\n\"x,y\",z\n");
}
