#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geamkit/json_io.hpp"
#include "geamkit/presets.hpp"

#include <cstdio>
#include <filesystem>
#include <unistd.h>

using namespace geamkit;

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("geamkit_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("floats are printed with 17 significant digits") {
    Json j{{"x", 1.0 / 3.0}, {"y", 2}, {"z", "s"}};
    const std::string s = to_string(j);
    CHECK(s == "{\"x\":0.33333333333333331,\"y\":2,\"z\":\"s\"}\n");
    CHECK(Json::parse(s).at("x").get<double>() == 1.0 / 3.0);
}

TEST_CASE("matrix serialization round-trips bit-exactly") {
    Rng rng(4);
    Matrix M(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Json j = Json::parse(to_string(matrix_to_json(M)));
    Matrix back = matrix_from_json(j);
    CHECK((M - back).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("geam round-trip preserves operators and re-measures parameters") {
    for (const char* name : {"mub", "sic"}) {
        Geam g = preset(name, 3);
        Json j = Json::parse(to_string(geam_to_json(g)));
        Geam back = geam_from_json(j);
        REQUIRE(back.frames.size() == g.frames.size());
        for (std::size_t a = 0; a < g.frames.size(); ++a) {
            const auto& fa = g.frames[a];
            const auto& fb = back.frames[a];
            CHECK(fb.gamma == fa.gamma);
            REQUIRE(fb.operators.size() == fa.operators.size());
            for (std::size_t k = 0; k < fa.operators.size(); ++k)
                CHECK((fb.operators[k] - fa.operators[k]).cwiseAbs().maxCoeff() == 0.0);
            CHECK(std::abs(fb.a - fa.a) < 1e-12);
            CHECK(std::abs(fb.b - fa.b) < 1e-12);
            CHECK(std::abs(fb.c - fa.c) < 1e-12);
            CHECK(std::abs(std::abs(fb.tau) - std::abs(fa.tau)) < 1e-12);
        }
        auto report = validate_geam(back);
        CHECK(report.pass);
    }
}

TEST_CASE("config round-trip including optional fields") {
    GeamConfig cfg;
    cfg.dim = 3;
    cfg.frames = {{3, 0.25, 0.0}, {3, 0.25, 0.0}};
    cfg.target_S = 0.005;
    cfg.tau_signs = {1, -1};
    GeamConfig back = config_from_json(Json::parse(to_string(config_to_json(cfg))));
    CHECK(back.dim == cfg.dim);
    REQUIRE(back.frames.size() == 2);
    CHECK(back.frames[1].gamma == 0.25);
    REQUIRE(back.target_S.has_value());
    CHECK(*back.target_S == 0.005);
    CHECK(back.tau_signs == cfg.tau_signs);

    GeamConfig plain;
    plain.dim = 2;
    plain.frames = {{2, 1.0 / 3.0, 1.0}};
    GeamConfig pback = config_from_json(Json::parse(to_string(config_to_json(plain))));
    CHECK_FALSE(pback.target_S.has_value());
    CHECK(pback.tau_signs.empty());
}

TEST_CASE("state round-trip and dimension check") {
    auto rho = random_mixed(3, 2, 55);
    DensityMatrix back = state_from_json(Json::parse(to_string(state_to_json(rho))));
    CHECK(back.dim == rho.dim);
    CHECK(back.bipartite == rho.bipartite);
    CHECK((back.matrix - rho.matrix).cwiseAbs().maxCoeff() == 0.0);

    Json bad = state_to_json(rho);
    bad["dim"] = 5;
    CHECK_THROWS_AS(state_from_json(bad), std::runtime_error);
}

TEST_CASE("write_json is atomic and read_json round-trips") {
    TempDir dir;
    const std::string path = dir.file("out.json");
    Json j{{"a", 1.5}, {"b", Json::array({1, 2, 3})}};
    write_json(j, path);
    CHECK(fs::exists(path));
    CHECK_FALSE(fs::exists(path + ".tmp"));
    CHECK(read_json(path) == j);

    // Overwrite keeps the file valid.
    Json j2{{"a", 2.5}};
    write_json(j2, path);
    CHECK(read_json(path) == j2);

    CHECK_THROWS_AS(read_json(dir.file("missing.json")), std::runtime_error);
}

TEST_CASE("report serializers expose the expected keys") {
    Geam g = preset("mub", 2);
    Json v = validation_report_to_json(validate_geam(g));
    CHECK(v.at("pass").get<bool>());
    CHECK(v.contains("min_eigenvalue"));

    Json p = design_params_to_json(design_params(g));
    CHECK(p.at("S").get<double>() == doctest::Approx(1.0 / 9.0));
    CHECK(p.at("kappa_minus").get<double>() == doctest::Approx(1.0 / 9.0));

    Vector psi = Vector::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    DensityMatrix bell{4, true, psi * psi.adjoint()};
    Json d = detection_report_to_json(detection_report(g, bell));
    CHECK(d.at("min_schmidt_number_certified").get<int>() == 2);
    CHECK(d.at("schmidt_bounds").size() == 2);
    CHECK(d.at("concurrence_lower_bound").get<double>() == doctest::Approx(1.0));
}
