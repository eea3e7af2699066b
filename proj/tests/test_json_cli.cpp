#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "lindsim/json_io.hpp"
#include "test_support.hpp"

using namespace lindsim;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("lindsim_test_" + name);
    write_text_file(path.string(), content);
    return path.string();
}

} // namespace

TEST_CASE("model JSON: operator form with Hamiltonian") {
    const char* text = R"({
        "dim": 2,
        "hamiltonian": [[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[-1.0,0.0]]],
        "lindblad_ops": [[[[0.0,0.0],[1.0,0.0]],[[0.0,0.0],[0.0,0.0]]]]
    })";
    ModelFile mf = parse_model_json(text);
    CHECK(mf.dim() == 2);
    REQUIRE(std::holds_alternative<LindbladModel>(mf.payload));
    const auto& m = std::get<LindbladModel>(mf.payload);
    CHECK(m.hamiltonian(0, 0) == cd(1.0, 0.0));
    CHECK(m.lindblad_ops[0](0, 1) == cd(1.0, 0.0));
    CHECK(mf.generator().dim == 2);
}

TEST_CASE("model JSON: one-triangle GKS entries imply the conjugate mirror") {
    const char* text = R"({
        "dim": 2,
        "gks_entries": [
            {"k":0,"l":1,"kp":0,"lp":1,"re":0.5},
            {"k":0,"l":0,"kp":0,"lp":0,"re":0.5},
            {"k":1,"l":1,"kp":1,"lp":1,"re":0.5},
            {"k":0,"l":0,"kp":1,"lp":1,"re":0.1,"im":0.2}
        ]
    })";
    ModelFile mf = parse_model_json(text);
    const auto& g = std::get<OvercompleteGKS>(mf.payload);
    ComplexMatrix a = g.dense();
    CHECK(a(OvercompleteGKS::composite(0, 0, 2), OvercompleteGKS::composite(1, 1, 2)) ==
          cd(0.1, 0.2));
    CHECK(a(OvercompleteGKS::composite(1, 1, 2), OvercompleteGKS::composite(0, 0, 2)) ==
          cd(0.1, -0.2));
}

TEST_CASE("model JSON: malformed inputs raise validation errors") {
    CHECK_THROWS_AS(parse_model_json("{"), validation_error);
    CHECK_THROWS_AS(parse_model_json(R"({"dim":2})"), validation_error);
    CHECK_THROWS_AS(parse_model_json(
                        R"({"dim":2,"lindblad_ops":[],"gks_entries":[]})"),
                    validation_error);
    // Listing an entry and its conjugate mirror together is rejected.
    CHECK_THROWS_AS(parse_model_json(R"({"dim":2,"gks_entries":[
        {"k":0,"l":0,"kp":0,"lp":0,"re":1.0},
        {"k":1,"l":1,"kp":1,"lp":1,"re":1.0},
        {"k":0,"l":0,"kp":1,"lp":1,"re":0.1},
        {"k":1,"l":1,"kp":0,"lp":0,"re":0.1}]})"),
                    validation_error);
    // Plain numbers are accepted as real entries.
    ModelFile mf = parse_model_json(R"({"dim":2,"lindblad_ops":[[[0,1],[0,0]]]})");
    const auto& m = std::get<LindbladModel>(mf.payload);
    CHECK(m.lindblad_ops[0](0, 1) == cd(1.0, 0.0));
}

TEST_CASE("class spec JSON round trips through the parser") {
    ModelFile ic = parse_model_json(
        R"({"class":"identical_coordinate","dim":2,"a":[0.5,0.5],"c":[0.1,0.1]})");
    CHECK(std::holds_alternative<ClassSpec>(ic.payload));

    ModelFile dd = parse_model_json(
        R"({"class":"dense_diagonal","dim":3,"a":[0.2,0.3,0.5],"prefix_sums":[0.2,0.5,1.0]})");
    CHECK(dd.dim() == 3);
    CHECK_THROWS_AS(parse_model_json(
                        R"({"class":"dense_diagonal","dim":3,"a":[0.2,0.3,0.5],"prefix_sums":[0.2,0.5,2.0]})"),
                    validation_error);

    ModelFile diag = parse_model_json(
        R"({"class":"diagonal","dim":3,"d":1,"entries":[{"k":0,"l":1,"value":0.4}]})");
    CHECK(diag.generator().dim == 3);

    ModelFile sop = parse_model_json(
        R"({"class":"sparse_operator","dim":2,"k":1,"op":[[[0,0],[1,0]],[[0,0],[0,0]]]})");
    const auto& spec = std::get<SparseLindbladOpSpec>(std::get<ClassSpec>(sop.payload));
    CHECK(spec.k == 1);

    CHECK_THROWS_AS(parse_model_json(R"({"class":"mystery","dim":2})"), validation_error);
}

TEST_CASE("pattern and graph files load correctly") {
    auto ppath = write_temp("pattern.json", R"({"dim":7,"orbits":[[0,1,4,5],[2,3,6]]})");
    SparsityPattern p = load_pattern_file(ppath);
    CHECK(p.nu == std::vector<int>{1, 4, 3, 6, 5, 0, 2});

    auto gpath = write_temp("graph.json",
                            R"({"vertices":3,"unweighted_random_walk":true,
                                "edges":[[0,1],[1,2]],"hamiltonian":"laplacian"})");
    WalkSpec w = load_graph_file(gpath);
    CHECK(w.vertices == 3);
    CHECK(w.hamiltonian == WalkHamiltonian::Laplacian);
    ComplexMatrix m = w.rate_matrix();
    CHECK(m(0, 1).real() == doctest::Approx(0.5));
    CHECK(m(1, 0).real() == doctest::Approx(1.0));

    auto wpath = write_temp("graphw.json",
                            R"({"vertices":2,"edges":[[0,1,0.3],[1,0,0.7]],"hamiltonian":"none"})");
    WalkSpec w2 = load_graph_file(wpath);
    CHECK(w2.rate_matrix()(0, 1).real() == doctest::Approx(0.3));
}

TEST_CASE("format_double emits 17 significant digits that round-trip") {
    const double v = 0.1 + 0.2;
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(1.0 / 3.0).size() >= 17);
}

TEST_CASE("channel JSON serialization carries dims and entries") {
    QuantumChannel e = identity_channel(2);
    std::string json = channel_to_json(e);
    CHECK(json.find("\"dim_in\":2") != std::string::npos);
    CHECK(json.find("\"choi\":[[") != std::string::npos);
}
