// selftest.hpp — end-to-end verification suite: reproduces the tabulated
// design constants for every stock measurement family and checks each derived
// measure two ways (operator summation vs the two-constant closed form).

#pragma once

#include "geamkit/entanglement.hpp"
#include "geamkit/geam.hpp"
#include "geamkit/measures.hpp"
#include "geamkit/presets.hpp"
#include "geamkit/states.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace geamkit::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double worst = 0;   // largest deviation observed (criterion-specific)
    std::string detail;
};

struct NamedGeam {
    std::string name;
    int d = 0;
    Geam geam;
    DesignParams params;
    DesignParams expected;  // closed-form constants for the family
    double exp_a = 0, exp_b = 0, exp_c = 0;
};

inline double preset_b(int d) { return (1.0 + 1.0 / d) / 2.0; }

inline std::vector<NamedGeam> preset_suite() {
    std::vector<NamedGeam> out;
    auto add = [&](const std::string& name, int d, Geam g,
                   double a, double b, double c, double mu, double S) {
        NamedGeam ng;
        ng.name = name;
        ng.d = d;
        ng.geam = std::move(g);
        ng.params = design_params(ng.geam);
        ng.expected.S = S;
        ng.expected.mu = mu;
        ng.expected.C_max = (d - 1.0) / d * S + mu;
        ng.expected.kappa_minus = S;
        ng.expected.kappa_plus = mu - S / d;
        ng.exp_a = a;
        ng.exp_b = b;
        ng.exp_c = c;
        out.push_back(std::move(ng));
    };
    for (int d : {2, 3, 5})
        add("mub d=" + std::to_string(d), d, preset_mub(d),
            1.0 / (d + 1), 1.0, 0.0,
            1.0 / (double(d) * (d + 1)), 1.0 / (double(d + 1) * (d + 1)));
    for (int d : {2, 3})
        add("sic d=" + std::to_string(d), d, preset_sic(d),
            1.0 / d, 1.0, 1.0 / (d + 1),
            1.0 / (double(d) * d), 1.0 / (double(d) * (d + 1)));
    for (int d : {2, 3, 4, 5}) {
        const double b = preset_b(d);
        add("mum d=" + std::to_string(d), d, preset_mum(d, b),
            1.0 / (d + 1), b, (1.0 - b) / (d - 1),
            1.0 / (double(d) * (d + 1)),
            (d * b - 1.0) / (double(d + 1) * (double(d) * d - 1)));
        add("gsic d=" + std::to_string(d), d, preset_gsic(d, b),
            1.0 / d, b, (d - b) / (double(d) * d - 1),
            1.0 / (double(d) * d), (d * b - 1.0) / (d * (double(d) * d - 1)));
    }
    {
        const int d = 2, N = 3, M = 2;
        const double b = 0.75;
        add("nm_povm d=2 (3,2)", d, preset_nm_povm(d, N, M, b),
            double(d) / (N * M), b, c_from_b(d, M, b),
            1.0 / (N * M), d * (d * b - 1.0) / (double(N) * M * (double(d) * d - 1)));
    }
    {
        const int d = 3, N = 4, M = 3;
        const double b = 2.0 / 3.0;
        add("nm_povm d=3 (4,3)", d, preset_nm_povm(d, N, M, b),
            double(d) / (N * M), b, c_from_b(d, M, b),
            1.0 / (N * M), d * (d * b - 1.0) / (double(N) * M * (double(d) * d - 1)));
    }
    return out;
}

// The criterion-11 pair: two structurally different d = 3 designs (four
// uniform frames of 3 vs heterogeneous frames 3,3,3,2,2) tuned to the same
// (S, mu) and hence the same (S, C_max).
inline std::pair<Geam, Geam> equal_constant_pair() {
    const double S = 1.0 / 200.0;
    GeamConfig a;
    a.dim = 3;
    a.frames.assign(4, FrameSpec{3, 0.25, 0});
    a.target_S = S;
    // gamma solving g^2 + h^2 = 1/12 with 3g + 2h = 1 matches mu = 1/12.
    const double g = (18.0 - std::sqrt(12.0)) / 78.0;
    const double h = (1.0 - 3.0 * g) / 2.0;
    GeamConfig b;
    b.dim = 3;
    b.frames = {FrameSpec{3, g, 0}, FrameSpec{3, g, 0}, FrameSpec{3, g, 0},
                FrameSpec{2, h, 0}, FrameSpec{2, h, 0}};
    b.target_S = S;
    return {build_geam(a), build_geam(b)};
}

namespace detail {

inline std::uint64_t seed_of(int criterion, int preset, int sample) {
    return 0x9e3779b97f4a7c15ull * criterion + 0x100000001b3ull * preset + sample + 1;
}

inline DensityMatrix random_state_mixture(int d, std::uint64_t seed) {
    // cycle through full-rank, lower-rank, and pure states
    switch (seed % 4) {
        case 0: return random_pure(d, seed);
        case 1: return random_mixed(d, std::max(1, d - 1), seed);
        default: return random_mixed(d, d, seed);
    }
}

inline DensityMatrix random_separable(int d, std::uint64_t seed) {
    Rng rng(seed);
    const int terms = 4;
    std::vector<double> q(terms);
    double qs = 0;
    for (auto& x : q) {
        x = rng.uniform() + 1e-3;
        qs += x;
    }
    Matrix rho = Matrix::Zero(d * d, d * d);
    for (int t = 0; t < terms; ++t) {
        DensityMatrix A = random_mixed(d, d, seed * 31 + 2 * t);
        DensityMatrix B = random_mixed(d, d, seed * 31 + 2 * t + 1);
        rho += (q[t] / qs) * kron(A.matrix, B.matrix);
    }
    return {d * d, true, std::move(rho)};
}

inline DensityMatrix maximally_mixed(int d) {
    return {d, false, Matrix::Identity(d, d) / double(d)};
}

}  // namespace detail

inline CriterionResult criterion1_table(const std::vector<NamedGeam>& suite) {
    CriterionResult res{1, "Table-of-constants reproduction for all presets", true, 0, ""};
    for (const auto& ng : suite) {
        double worst = 0;
        for (const auto& fr : ng.geam.frames) {
            for (const auto& P : fr.operators) {
                worst = std::max(worst, std::abs(P.trace().real() - ng.exp_a));
                worst = std::max(worst, std::abs((P * P).trace().real() -
                                                 ng.exp_b * ng.exp_a * ng.exp_a));
            }
            for (std::size_t k = 0; k < fr.operators.size(); ++k)
                for (std::size_t l = k + 1; l < fr.operators.size(); ++l)
                    worst = std::max(worst,
                        std::abs((fr.operators[k] * fr.operators[l]).trace().real() -
                                 ng.exp_c * ng.exp_a * ng.exp_a));
        }
        worst = std::max({worst,
                          std::abs(ng.params.S - ng.expected.S),
                          std::abs(ng.params.mu - ng.expected.mu),
                          std::abs(ng.params.C_max - ng.expected.C_max)});
        if (worst > res.worst) {
            res.worst = worst;
            res.detail = ng.name;
        }
    }
    res.pass = res.worst <= 1e-10;
    return res;
}

inline CriterionResult criterion2_conical(const std::vector<NamedGeam>& suite) {
    CriterionResult res{2, "Conical 2-design identity residual", true, 0, ""};
    for (const auto& ng : suite) {
        auto chk = check_conical_design(ng.geam);
        const double dev = std::max(chk.residual,
            std::max(std::abs(chk.kappa_plus - ng.params.kappa_plus),
                     std::abs(chk.kappa_minus - ng.params.kappa_minus)));
        if (!chk.is_design || dev > res.worst) {
            res.worst = std::max(res.worst, dev);
            res.detail = ng.name;
        }
        res.pass = res.pass && chk.is_design;
    }
    res.pass = res.pass && res.worst <= 1e-10;
    return res;
}

inline CriterionResult criterion3_sum_p2(const std::vector<NamedGeam>& suite) {
    CriterionResult res{3, "Sum of squared operators identity", true, 0, ""};
    for (const auto& ng : suite) {
        const int d = ng.d;
        Matrix sum = Matrix::Zero(d, d);
        for (const auto& fr : ng.geam.frames)
            for (const auto& P : fr.operators) sum += P * P;
        const double target = ng.params.C_max + (d - 1) * ng.params.S;
        const double dev = (sum - target * Matrix::Identity(d, d)).norm();
        if (dev > res.worst) {
            res.worst = dev;
            res.detail = ng.name;
        }
    }
    res.pass = res.worst <= 1e-10;
    return res;
}

inline CriterionResult criterion4_ioc(const std::vector<NamedGeam>& suite) {
    CriterionResult res{4, "Purity-index-of-coincidence law", true, 0, ""};
    for (std::size_t p = 0; p < suite.size(); ++p) {
        const auto& ng = suite[p];
        for (int s = 0; s < 200; ++s) {
            auto rho = detail::random_state_mixture(ng.d, detail::seed_of(4, int(p), s));
            const double direct = index_of_coincidence(ng.geam, rho);
            const double formula = ioc_formula(ng.params, rho.purity(), ng.d);
            const double dev = std::abs(direct - formula);
            if (dev > res.worst) {
                res.worst = dev;
                res.detail = ng.name;
            }
        }
    }
    res.pass = res.worst <= 1e-10;
    return res;
}

inline CriterionResult criterion5_entropy(const std::vector<NamedGeam>& suite) {
    CriterionResult res{5, "Entropy bounds and equality cases", true, 0, ""};
    const std::vector<double> renyi_nus{2.0, 2.5, 3.0};
    const std::vector<double> tsallis_nus{0.5, 1.0, 1.5, 2.0};
    double worst_violation = -1e300;
    for (std::size_t p = 0; p < suite.size(); ++p) {
        const auto& ng = suite[p];
        for (int s = 0; s < 1000; ++s) {
            auto rho = detail::random_state_mixture(ng.d, detail::seed_of(5, int(p), s));
            auto probs = born_probabilities(ng.geam, rho);
            double C = 0;
            for (double x : probs.entries) C += x * x;
            for (double nu : renyi_nus) {
                const double gap = renyi_bound(C, nu) - renyi_entropy(probs, nu);
                if (gap > worst_violation) {
                    worst_violation = gap;
                    res.detail = ng.name;
                }
            }
            for (double nu : tsallis_nus) {
                const double gap = tsallis_bound(C, nu) - tsallis_entropy(probs, nu);
                if (gap > worst_violation) {
                    worst_violation = gap;
                    res.detail = ng.name;
                }
            }
        }
        // equality cases at the maximally mixed state (uniform distribution)
        auto mixed = detail::maximally_mixed(ng.d);
        auto probs = born_probabilities(ng.geam, mixed);
        double C = 0;
        for (double x : probs.entries) C += x * x;
        for (double nu : tsallis_nus)
            if (std::abs(tsallis_bound(C, nu) - tsallis_entropy(probs, nu)) > 1e-12) {
                res.pass = false;
                res.detail = ng.name + " tsallis equality nu=" + std::to_string(nu);
            }
        if (std::abs(renyi_bound(C, 2.0) - renyi_entropy(probs, 2.0)) > 1e-12) {
            res.pass = false;
            res.detail = ng.name + " renyi equality nu=2";
        }
    }
    res.worst = worst_violation;
    res.pass = res.pass && worst_violation <= 1e-12;
    return res;
}

inline CriterionResult criterion6_bz(const std::vector<NamedGeam>& suite) {
    CriterionResult res{6, "Brukner-Zeilinger invariants, two routes", true, 0, ""};
    for (std::size_t p = 0; p < suite.size(); ++p) {
        const auto& ng = suite[p];
        for (int s = 0; s < 200; ++s) {
            auto rho = detail::random_state_mixture(ng.d, detail::seed_of(6, int(p), s));
            const double direct = bz_total_variance(ng.geam, rho);
            const auto bz = bz_formulas(ng.params, rho.purity(), ng.d);
            // I and U from the direct V via the variance relations
            const double dev = std::max({std::abs(direct - bz.V),
                                         std::abs((bz.V_max - direct) - bz.I),
                                         std::abs((direct - bz.V_min) - bz.U)});
            if (dev > res.worst) {
                res.worst = dev;
                res.detail = ng.name;
            }
        }
        // extremes
        auto pure = random_pure(ng.d, detail::seed_of(6, int(p), 100001));
        const double dev_min = std::abs(bz_total_variance(ng.geam, pure) -
                                        (ng.d - 1) * ng.params.S);
        const double dev_max = std::abs(
            bz_total_variance(ng.geam, detail::maximally_mixed(ng.d)) -
            (double(ng.d) * ng.d - 1) / ng.d * ng.params.S);
        if (dev_min > 1e-12 || dev_max > 1e-12) {
            res.pass = false;
            res.detail = ng.name + " V extremes";
        }
    }
    res.pass = res.pass && res.worst <= 1e-10;
    return res;
}

inline CriterionResult criterion7_coherence(const std::vector<NamedGeam>& suite) {
    CriterionResult res{7, "Skew-information coherence, two routes", true, 0, ""};
    const std::vector<double> mus{0.1, 0.3, 0.5};
    for (std::size_t p = 0; p < suite.size(); ++p) {
        const auto& ng = suite[p];
        if (ng.d > 4) continue;
        for (int s = 0; s < 100; ++s) {
            auto rho = random_mixed(ng.d, ng.d, detail::seed_of(7, int(p), s));
            for (double mu : mus) {
                const double direct = quantum_uncertainty(ng.geam, rho, mu);
                const double formula = coherence_formula(ng.params, rho, mu);
                const double dev = std::abs(direct - formula);
                if (dev > res.worst) {
                    res.worst = dev;
                    res.detail = ng.name;
                }
            }
        }
        const double dev_mixed =
            std::abs(quantum_uncertainty(ng.geam, detail::maximally_mixed(ng.d), 0.3));
        auto pure = random_pure(ng.d, detail::seed_of(7, int(p), 200001));
        const double dev_pure = std::abs(quantum_uncertainty(ng.geam, pure, 0.3) -
                                         ng.params.S * (ng.d - 1));
        if (dev_mixed > 1e-10 || dev_pure > 1e-10) {
            res.pass = false;
            res.detail = ng.name + " Q extremes";
        }
    }
    res.pass = res.pass && res.worst <= 1e-8;
    return res;
}

inline CriterionResult criterion8_lemma_norm(const std::vector<NamedGeam>& suite) {
    CriterionResult res{8, "Correlation trace norm vs Schmidt closed form", true, 0, ""};
    for (std::size_t p = 0; p < suite.size(); ++p) {
        const auto& ng = suite[p];
        if (ng.d > 4) continue;
        for (int s = 0; s < 200; ++s) {
            auto psi = random_bipartite_pure(ng.d, detail::seed_of(8, int(p), s));
            const double direct = trace_norm(correlation_matrix(ng.geam, psi).entries);
            const double formula = lemma1_norm(schmidt_decompose(psi), ng.params);
            const double dev = std::abs(direct - formula);
            if (dev > res.worst) {
                res.worst = dev;
                res.detail = ng.name;
            }
        }
    }
    res.pass = res.worst <= 1e-9;
    return res;
}

inline CriterionResult criterion9_schmidt(const std::vector<NamedGeam>& suite) {
    CriterionResult res{9, "Schmidt-number criterion soundness and saturation", true, 0, ""};
    // soundness: no false positives on separable states
    int sample = 0;
    for (std::size_t p = 0; p < suite.size() && sample < 500; ++p) {
        const auto& ng = suite[p];
        if (ng.d > 3) continue;
        for (int s = 0; s < 60 && sample < 500; ++s, ++sample) {
            auto rho = detail::random_separable(ng.d, detail::seed_of(9, int(p), s));
            auto chk = check_schmidt_criterion(ng.geam, rho, 1);
            if (chk.violated) {
                res.pass = false;
                res.detail = ng.name + " false positive on separable state";
            }
            res.worst = std::max(res.worst, chk.lhs - chk.rhs);
        }
    }
    // saturation at uniform-lambda rank-r pure states
    for (std::size_t p = 0; p < suite.size(); ++p) {
        const auto& ng = suite[p];
        if (ng.d > 4) continue;
        for (int r = 1; r <= ng.d; ++r) {
            RealVector lambda = RealVector::Constant(r, 1.0 / std::sqrt(double(r)));
            auto psi = bipartite_from_schmidt(lambda, ng.d,
                                              detail::seed_of(9, int(p), 1000 + r));
            auto chk = check_schmidt_criterion(ng.geam, psi, r);
            if (std::abs(chk.lhs - chk.rhs) > 1e-9) {
                res.pass = false;
                res.detail = ng.name + " saturation r=" + std::to_string(r);
            }
        }
    }
    return res;
}

inline CriterionResult criterion10_concurrence(const std::vector<NamedGeam>& suite) {
    CriterionResult res{10, "Concurrence lower bound vs pure-state value", true, 0, ""};
    int sample = 0;
    double worst_violation = -1e300;
    for (std::size_t p = 0; p < suite.size() && sample < 500; ++p) {
        const auto& ng = suite[p];
        if (ng.d > 4) continue;
        for (int s = 0; s < 40 && sample < 500; ++s, ++sample) {
            auto psi = random_bipartite_pure(ng.d, detail::seed_of(10, int(p), s));
            const double bound = concurrence_lower_bound(ng.geam, psi);
            const double exact = pure_concurrence(psi);
            if (bound - exact > worst_violation) {
                worst_violation = bound - exact;
                res.detail = ng.name;
            }
        }
    }
    res.worst = worst_violation;
    res.pass = worst_violation <= 1e-9;
    // equality at the d = 2 maximally entangled state with the MUB preset
    {
        auto geam = preset_mub(2);
        RealVector lambda = RealVector::Constant(2, 1.0 / std::sqrt(2.0));
        auto psi = bipartite_from_schmidt(lambda, 2, 7);
        const double bound = concurrence_lower_bound(geam, psi);
        if (std::abs(bound - 1.0) > 1e-9) {
            res.pass = false;
            res.detail = "mub d=2 maximally entangled equality";
        }
    }
    return res;
}

inline CriterionResult criterion11_two_constants() {
    CriterionResult res{11, "Two-constant sufficiency across different designs", true, 0, ""};
    auto [ga, gb] = equal_constant_pair();
    const auto pa = design_params(ga);
    const auto pb = design_params(gb);
    if (std::abs(pa.S - pb.S) > 1e-12 || std::abs(pa.C_max - pb.C_max) > 1e-12) {
        res.pass = false;
        res.detail = "constants differ between the paired designs";
        return res;
    }
    const int d = 3;
    for (int s = 0; s < 50; ++s) {
        auto rho = detail::random_state_mixture(d, detail::seed_of(11, 0, s));
        double dev = std::abs(index_of_coincidence(ga, rho) -
                              index_of_coincidence(gb, rho));
        dev = std::max(dev, std::abs(bz_total_variance(ga, rho) -
                                     bz_total_variance(gb, rho)));
        for (double mu : {0.1, 0.3, 0.5})
            dev = std::max(dev, std::abs(quantum_uncertainty(ga, rho, mu) -
                                         quantum_uncertainty(gb, rho, mu)));
        if (dev > res.worst) res.worst = dev;
    }
    for (int s = 0; s < 50; ++s) {
        auto psi = random_bipartite_pure(d, detail::seed_of(11, 1, s));
        const double dev =
            std::abs(trace_norm(correlation_matrix(ga, psi).entries) -
                     trace_norm(correlation_matrix(gb, psi).entries));
        if (dev > res.worst) res.worst = dev;
    }
    res.pass = res.worst <= 1e-8;
    return res;
}

inline std::vector<CriterionResult> run_all(bool verbose = true) {
    auto suite = preset_suite();
    std::vector<CriterionResult> results{
        criterion1_table(suite),     criterion2_conical(suite),
        criterion3_sum_p2(suite),    criterion4_ioc(suite),
        criterion5_entropy(suite),   criterion6_bz(suite),
        criterion7_coherence(suite), criterion8_lemma_norm(suite),
        criterion9_schmidt(suite),   criterion10_concurrence(suite),
        criterion11_two_constants()};
    if (verbose)
        for (const auto& r : results)
            std::printf("%s  criterion %2d: %s (worst deviation %.3e%s%s)\n",
                        r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.worst,
                        r.detail.empty() ? "" : ", ", r.detail.c_str());
    return results;
}

}  // namespace geamkit::selftest
