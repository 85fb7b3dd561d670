// geamkit — build and validate equiangular design measurements, generate
// states, and compute measure/detection reports.

#include "geamkit/json_io.hpp"
#include "geamkit/presets.hpp"
#include "geamkit/selftest.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace gk = geamkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void emit(const gk::Json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << gk::to_string(j);
    else
        gk::write_json(j, out_path);
}

int run_preset(const std::string& name, int d, double b, int N, int M,
               const std::string& out_path) {
    gk::PresetExtra extra;
    extra.b = b;
    extra.N = N;
    extra.M = M;
    auto geam = gk::preset(name, d, extra);
    auto params = gk::design_params(geam);
    auto report = gk::validate_geam(geam);
    gk::Json j{{"geam", gk::geam_to_json(geam)},
               {"design_params", gk::design_params_to_json(params)},
               {"validation", gk::validation_report_to_json(report)}};
    emit(j, out_path);
    if (!out_path.empty())
        std::printf("%s d=%d: S=%.12g mu=%.12g C_max=%.12g (validation %s)\n",
                    name.c_str(), d, params.S, params.mu, params.C_max,
                    report.pass ? "pass" : "FAIL");
    return report.pass ? kExitOk : kExitFail;
}

int run_validate(const std::string& geam_path, double tol,
                 const std::string& out_path) {
    auto geam = gk::geam_from_json(gk::read_json(geam_path));
    auto report = gk::validate_geam(geam, tol);
    auto conical = gk::check_conical_design(geam, tol);
    gk::Json j{{"validation", gk::validation_report_to_json(report)},
               {"is_design", conical.is_design},
               {"kappa_plus", conical.kappa_plus},
               {"kappa_minus", conical.kappa_minus},
               {"design_residual", conical.residual}};
    emit(j, out_path);
    return report.pass ? kExitOk : kExitFail;
}

int run_measure(const std::string& geam_path, const std::string& state_path,
                const std::vector<double>& nu_list,
                const std::vector<double>& munu_list,
                const std::string& out_path) {
    auto geam = gk::geam_from_json(gk::read_json(geam_path));
    auto rho = gk::state_from_json(gk::read_json(state_path));
    auto params = gk::design_params(geam);
    const double purity = rho.purity();

    auto probs = gk::born_probabilities(geam, rho);
    const double ioc_direct = gk::index_of_coincidence(geam, rho);
    const double ioc_form = gk::ioc_formula(params, purity, geam.dim);

    auto bz = gk::bz_formulas(params, purity, geam.dim);
    gk::Json entropy = gk::Json::array();
    for (double nu : nu_list) {
        if (nu >= 2.0)
            entropy.push_back(gk::Json{{"nu", nu}, {"type", "renyi"},
                                       {"value", gk::renyi_entropy(probs, nu)},
                                       {"bound", gk::renyi_bound(ioc_direct, nu)}});
        if (nu <= 2.0)
            entropy.push_back(gk::Json{{"nu", nu}, {"type", "tsallis"},
                                       {"value", gk::tsallis_entropy(probs, nu)},
                                       {"bound", gk::tsallis_bound(ioc_direct, nu)}});
    }
    gk::Json coherence = gk::Json::array();
    for (std::size_t i = 0; i + 1 < munu_list.size(); i += 2) {
        const double mu = munu_list[i], nu = munu_list[i + 1];
        gk::Json entry{{"mu", mu}, {"nu", nu}};
        if (nu < 0) {  // one-parameter skew information
            entry["direct"] = gk::quantum_uncertainty(geam, rho, mu);
            entry["formula"] = gk::coherence_formula(params, rho, mu);
        } else {
            entry["direct"] = gk::quantum_uncertainty(geam, rho, mu, nu);
            entry["formula"] = gk::coherence_formula(params, rho, mu, nu);
        }
        coherence.push_back(std::move(entry));
    }
    gk::Json j{{"state_purity", purity},
               {"ioc_direct", ioc_direct},
               {"ioc_formula", ioc_form},
               {"bz", gk::Json{{"V", bz.V}, {"I", bz.I}, {"U", bz.U},
                               {"V_min", bz.V_min}, {"V_max", bz.V_max}}},
               {"entropy", std::move(entropy)},
               {"coherence", std::move(coherence)}};
    emit(j, out_path);
    return kExitOk;
}

int run_detect(const std::string& geam_path, const std::string& state_path,
               const std::string& out_path) {
    auto geam = gk::geam_from_json(gk::read_json(geam_path));
    auto rho = gk::state_from_json(gk::read_json(state_path));
    auto report = gk::detection_report(geam, rho);
    emit(gk::detection_report_to_json(report), out_path);
    return kExitOk;
}

int run_random_state(int d, int rank, bool bipartite,
                     const std::vector<double>& schmidt, std::uint64_t seed,
                     const std::string& out_path) {
    gk::DensityMatrix rho;
    if (bipartite) {
        if (!schmidt.empty()) {
            gk::RealVector lambda(schmidt.size());
            for (std::size_t i = 0; i < schmidt.size(); ++i) lambda(i) = schmidt[i];
            rho = gk::bipartite_from_schmidt(lambda, d, seed);
        } else {
            rho = gk::random_bipartite_pure(d, seed);
        }
    } else if (rank == 1) {
        rho = gk::random_pure(d, seed);
    } else {
        rho = gk::random_mixed(d, rank, seed);
    }
    emit(gk::state_to_json(rho), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("GEAMKIT_THREADS"))
        Eigen::setNbThreads(std::max(1, std::atoi(threads)));

    CLI::App app{"generalized equiangular measurement toolkit"};
    app.require_subcommand(1);

    std::string name, geam_path, state_path, out_path;
    int d = 2, rank = 1, N = 0, M = 0;
    double b = 1.0, tol = 1e-10;
    std::uint64_t seed = 0;
    bool bipartite = false;
    std::vector<double> nu_list{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<double> munu_list{0.5, -1.0};
    std::vector<double> schmidt;

    auto* preset = app.add_subcommand("preset", "build a stock measurement");
    preset->add_option("--name", name, "mub | mum | sic | gsic | nm_povm")->required();
    preset->add_option("--dim", d, "Hilbert space dimension")->required();
    preset->add_option("--b", b, "purity parameter for mum/gsic/nm_povm (default 1)");
    preset->add_option("--frames", N, "number of frames N (nm_povm)");
    preset->add_option("--outcomes", M, "outcomes per frame M (nm_povm)");
    preset->add_option("--out", out_path, "output file (default: stdout)");

    auto* validate = app.add_subcommand("validate", "check the trace conditions of a measurement file");
    validate->add_option("--geam", geam_path, "measurement JSON file")->required();
    validate->add_option("--tol", tol, "tolerance (default 1e-10)");
    validate->add_option("--out", out_path, "output file (default: stdout)");

    auto* measure = app.add_subcommand("measure", "compute the measure report for a state");
    measure->add_option("--geam", geam_path, "measurement JSON file")->required();
    measure->add_option("--state", state_path, "state JSON file")->required();
    measure->add_option("--nu", nu_list, "entropy orders");
    measure->add_option("--munu", munu_list,
                        "flat (mu, nu) pairs for coherence; nu < 0 means one-parameter");
    measure->add_option("--out", out_path, "output file (default: stdout)");

    auto* detect = app.add_subcommand("detect", "entanglement detection report for a bipartite state");
    detect->add_option("--geam", geam_path, "measurement JSON file")->required();
    detect->add_option("--state", state_path, "bipartite state JSON file")->required();
    detect->add_option("--out", out_path, "output file (default: stdout)");

    auto* random_state = app.add_subcommand("random-state", "generate a random state");
    random_state->add_option("--dim", d, "dimension (per factor when bipartite)")->required();
    random_state->add_option("--rank", rank, "rank for mixed states (default 1 = pure)");
    random_state->add_flag("--bipartite", bipartite, "generate a bipartite pure state");
    random_state->add_option("--schmidt", schmidt, "Schmidt coefficients (bipartite)");
    random_state->add_option("--seed", seed, "RNG seed (default 0)");
    random_state->add_option("--out", out_path, "output file (default: stdout)");

    auto* selftest = app.add_subcommand("selftest", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (preset->parsed()) return run_preset(name, d, b, N, M, out_path);
        if (validate->parsed()) return run_validate(geam_path, tol, out_path);
        if (measure->parsed())
            return run_measure(geam_path, state_path, nu_list, munu_list, out_path);
        if (detect->parsed()) return run_detect(geam_path, state_path, out_path);
        if (random_state->parsed())
            return run_random_state(d, rank, bipartite, schmidt, seed, out_path);
        if (selftest->parsed()) {
            auto results = gk::selftest::run_all(true);
            for (const auto& r : results)
                if (!r.pass) return kExitFail;
            return kExitOk;
        }
    } catch (const gk::RangeViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
