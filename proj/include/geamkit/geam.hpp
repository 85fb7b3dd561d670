// geam.hpp — generalized equiangular measurements: construction from a
// partitioned Hermitian operator basis, trace-condition validation, conical
// 2-design check, and the derived design constants.

#pragma once

#include "geamkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geamkit {

struct PositivityViolation : std::runtime_error {
    int frame, outcome;
    double min_eigenvalue;
    PositivityViolation(int alpha, int k, double ev)
        : std::runtime_error("positivity violation at frame " + std::to_string(alpha) +
                             ", outcome " + std::to_string(k) +
                             ": min eigenvalue " + std::to_string(ev)),
          frame(alpha), outcome(k), min_eigenvalue(ev) {}
};

struct RangeViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotADesign : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FrameSpec {
    int M = 2;            // number of elements, >= 2
    double gamma = 1.0;   // frame weight
    double b = 1.0;       // purity parameter, 1/d < b <= min(d, M)/d
};

struct GeamConfig {
    int dim = 2;
    std::vector<FrameSpec> frames;
    std::optional<double> target_S;   // overrides per-frame b to enforce equal S
    std::vector<int> tau_signs;       // per frame: +1, -1, or 0 = auto (try +, then -)
};

inline void check_config(const GeamConfig& cfg) {
    const int d = cfg.dim;
    if (d < 2) throw RangeViolation("dim must be >= 2");
    if (cfg.frames.empty()) throw RangeViolation("no frames");
    int count = 0;
    double gamma_sum = 0;
    for (const auto& f : cfg.frames) {
        if (f.M < 2) throw RangeViolation("frame size must be >= 2");
        if (f.gamma <= 0 || f.gamma > 1) throw RangeViolation("gamma must be in (0,1]");
        count += f.M - 1;
        gamma_sum += f.gamma;
    }
    if (count != d * d - 1)
        throw RangeViolation("sum of (M_alpha - 1) must equal d^2 - 1");
    if (std::abs(gamma_sum - 1.0) > 1e-12)
        throw RangeViolation("frame weights must sum to 1");
    if (!cfg.tau_signs.empty() && cfg.tau_signs.size() != cfg.frames.size())
        throw RangeViolation("tau_signs length must match frame count");
}

// Traceless Hermitian orthonormal basis split into groups of size M_alpha - 1.
struct OperatorBasis {
    int dim = 0;
    std::vector<std::vector<Matrix>> groups;
};

// Canonical assignment: Gell-Mann matrices in canonical order, split by frame sizes.
inline OperatorBasis partition_basis(int d, const std::vector<int>& frame_sizes) {
    int total = 0;
    for (int m : frame_sizes) {
        if (m < 2) throw RangeViolation("frame size must be >= 2");
        total += m - 1;
    }
    if (total != d * d - 1)
        throw RangeViolation("partition_basis: sizes do not cover d^2 - 1 operators");
    auto gm = gellmann_basis(d);
    OperatorBasis basis;
    basis.dim = d;
    std::size_t pos = 1;  // skip G_0
    for (int m : frame_sizes) {
        basis.groups.emplace_back(gm.begin() + pos, gm.begin() + pos + (m - 1));
        pos += static_cast<std::size_t>(m - 1);
    }
    return basis;
}

// H_{alpha,k} = G_alpha - sqrt(M)(1+sqrt(M)) G_{alpha,k} for k < M,
// H_{alpha,M} = (1+sqrt(M)) G_alpha, with G_alpha the group sum. Sums to zero.
inline std::vector<Matrix> build_H(const std::vector<Matrix>& group, int M) {
    if (static_cast<int>(group.size()) != M - 1)
        throw RangeViolation("build_H: group must have M-1 elements");
    const double sM = std::sqrt(double(M));
    Matrix G = Matrix::Zero(group[0].rows(), group[0].cols());
    for (const auto& g : group) G += g;
    std::vector<Matrix> H;
    H.reserve(M);
    for (const auto& g : group) H.push_back(G - sM * (1.0 + sM) * g);
    H.push_back((1.0 + sM) * G);
    return H;
}

struct Frame {
    std::vector<Matrix> operators;
    double gamma = 0, a = 0, b = 0, c = 0, tau = 0;
};

struct Geam {
    int dim = 0;
    std::vector<Frame> frames;

    int total_operators() const {
        int n = 0;
        for (const auto& f : frames) n += static_cast<int>(f.operators.size());
        return n;
    }
};

struct DesignParams {
    double S = 0, mu = 0, C_max = 0, kappa_plus = 0, kappa_minus = 0;
};

inline double frame_b_range_min(int d) { return 1.0 / d; }
inline double frame_b_range_max(int d, int M) { return double(std::min(d, M)) / d; }

// c_alpha = (M - d b)/(d (M-1))
inline double c_from_b(int d, int M, double b) {
    return (M - d * b) / (double(d) * (M - 1));
}

// Inverse of S = a^2 (b - c) with c as above: b = (1 + S d (M-1)/(a^2 M)) / d.
inline double b_from_S(int d, int M, double a, double S) {
    return (1.0 + S * d * (M - 1) / (a * a * M)) / d;
}

// Eq-style admissible upper bound on S for a config.
inline double max_admissible_S(const GeamConfig& cfg) {
    check_config(cfg);
    const int d = cfg.dim;
    double bound = std::numeric_limits<double>::infinity();
    for (const auto& f : cfg.frames) {
        const double base = d * f.gamma * f.gamma / f.M;
        bound = std::min({bound, base, base * (d - 1) / (f.M - 1)});
    }
    return bound;
}

// P_{alpha,k} = (a/d) I + tau H_{alpha,k} over the given basis groups.
// Throws PositivityViolation if any operator fails the PSD check.
inline Geam build_geam(const GeamConfig& cfg, const OperatorBasis& basis,
                       const Tolerances& tol = default_tol()) {
    check_config(cfg);
    const int d = cfg.dim;
    if (basis.dim != d || basis.groups.size() != cfg.frames.size())
        throw RangeViolation("build_geam: basis does not match config");
    if (cfg.target_S) {
        const double S = *cfg.target_S;
        if (S <= 0 || S > max_admissible_S(cfg) + 1e-15)
            throw RangeViolation("target_S outside admissible range");
    }
    Geam geam;
    geam.dim = d;
    for (std::size_t alpha = 0; alpha < cfg.frames.size(); ++alpha) {
        const auto& spec = cfg.frames[alpha];
        const int M = spec.M;
        Frame fr;
        fr.gamma = spec.gamma;
        fr.a = d * spec.gamma / M;
        fr.b = cfg.target_S ? b_from_S(d, M, fr.a, *cfg.target_S) : spec.b;
        if (fr.b <= frame_b_range_min(d) || fr.b > frame_b_range_max(d, M) + 1e-12)
            throw RangeViolation("b_alpha outside (1/d, min(d,M)/d] for frame " +
                                 std::to_string(alpha));
        fr.c = c_from_b(d, M, fr.b);
        const double S_alpha = fr.a * fr.a * (fr.b - fr.c);
        const double sM = std::sqrt(double(M));
        const double tau_mag = std::sqrt(S_alpha / (M * (sM + 1.0) * (sM + 1.0)));
        auto H = build_H(basis.groups[alpha], M);

        const int requested = cfg.tau_signs.empty() ? 0 : cfg.tau_signs[alpha];
        std::vector<int> candidates =
            requested == 0 ? std::vector<int>{+1, -1} : std::vector<int>{requested};
        int worst_k = 0;
        double worst_ev = std::numeric_limits<double>::infinity();
        bool built = false;
        for (int sign : candidates) {
            const double tau = sign * tau_mag;
            std::vector<Matrix> ops;
            ops.reserve(M);
            double min_ev = 0;
            int min_k = 0;
            for (int k = 0; k < M; ++k) {
                Matrix P = (fr.a / d) * Matrix::Identity(d, d) + tau * H[k];
                const double ev = min_eigenvalue(P);
                if (k == 0 || ev < min_ev) { min_ev = ev; min_k = k; }
                ops.push_back(std::move(P));
            }
            if (min_ev >= -tol.psd) {
                fr.tau = tau;
                fr.operators = std::move(ops);
                built = true;
                break;
            }
            if (min_ev < worst_ev) { worst_ev = min_ev; worst_k = min_k; }
        }
        if (!built)
            throw PositivityViolation(static_cast<int>(alpha), worst_k, worst_ev);
        geam.frames.push_back(std::move(fr));
    }
    return geam;
}

// Build over the canonical Gell-Mann partition.
inline Geam build_geam(const GeamConfig& cfg, const Tolerances& tol = default_tol()) {
    check_config(cfg);
    std::vector<int> sizes;
    for (const auto& f : cfg.frames) sizes.push_back(f.M);
    return build_geam(cfg, partition_basis(cfg.dim, sizes), tol);
}

// Inverse of the construction. Note: the identity coefficient is gamma_alpha
// (for a single frame, gamma = 1); this is what makes the output traceless.
inline OperatorBasis recover_basis(const Geam& geam) {
    OperatorBasis basis;
    basis.dim = geam.dim;
    const int d = geam.dim;
    for (const auto& fr : geam.frames) {
        if (fr.tau == 0.0)
            throw std::invalid_argument("recover_basis: tau = 0, basis unrecoverable");
        const int M = static_cast<int>(fr.operators.size());
        const double sM = std::sqrt(double(M));
        const double denom = fr.tau * M * (1.0 + sM) * (1.0 + sM);
        std::vector<Matrix> group;
        group.reserve(M - 1);
        for (int k = 0; k < M - 1; ++k)
            group.push_back((fr.gamma * Matrix::Identity(d, d) +
                             sM * fr.operators[M - 1] -
                             sM * (1.0 + sM) * fr.operators[k]) / denom);
        basis.groups.push_back(std::move(group));
    }
    return basis;
}

struct ValidationReport {
    double dev_trace = 0;        // |Tr P - a|
    double dev_purity = 0;       // |Tr P^2 - b a^2|
    double dev_within = 0;       // |Tr P P' - c a^2|, same frame
    double dev_cross = 0;        // |Tr P Q - a a'/d|, different frames
    double dev_frame_resolution = 0;  // || sum_k P - gamma I ||_max
    double dev_total_resolution = 0;  // || sum P - I ||_max
    double min_eigenvalue = 0;
    double tol = 0;
    bool pass = false;
};

inline ValidationReport validate_geam(const Geam& geam,
                                      double tol = default_tol().validate) {
    ValidationReport rep;
    rep.tol = tol;
    const int d = geam.dim;
    Matrix total = Matrix::Zero(d, d);
    rep.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (std::size_t alpha = 0; alpha < geam.frames.size(); ++alpha) {
        const auto& fr = geam.frames[alpha];
        Matrix frame_sum = Matrix::Zero(d, d);
        for (std::size_t k = 0; k < fr.operators.size(); ++k) {
            const auto& P = fr.operators[k];
            frame_sum += P;
            rep.min_eigenvalue = std::min(rep.min_eigenvalue, min_eigenvalue(P));
            rep.dev_trace = std::max(rep.dev_trace,
                                     std::abs(P.trace().real() - fr.a));
            rep.dev_purity = std::max(rep.dev_purity,
                                      std::abs((P * P).trace().real() - fr.b * fr.a * fr.a));
            for (std::size_t l = k + 1; l < fr.operators.size(); ++l)
                rep.dev_within = std::max(rep.dev_within,
                    std::abs((P * fr.operators[l]).trace().real() - fr.c * fr.a * fr.a));
            for (std::size_t beta = alpha + 1; beta < geam.frames.size(); ++beta)
                for (const auto& Q : geam.frames[beta].operators)
                    rep.dev_cross = std::max(rep.dev_cross,
                        std::abs((P * Q).trace().real() -
                                 fr.a * geam.frames[beta].a / d));
        }
        rep.dev_frame_resolution = std::max(rep.dev_frame_resolution,
            (frame_sum - fr.gamma * Matrix::Identity(d, d)).cwiseAbs().maxCoeff());
        total += frame_sum;
    }
    rep.dev_total_resolution =
        (total - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    rep.pass = rep.dev_trace <= tol && rep.dev_purity <= tol &&
               rep.dev_within <= tol && rep.dev_cross <= tol &&
               rep.dev_frame_resolution <= tol && rep.dev_total_resolution <= tol &&
               rep.min_eigenvalue >= -default_tol().psd;
    return rep;
}

struct ConicalCheck {
    bool is_design = false;
    double kappa_plus = 0, kappa_minus = 0;
    double residual = 0;  // Frobenius
};

// Least-squares projection of sum P (x) P onto span{I(x)I, F}.
inline ConicalCheck check_conical_design(const Geam& geam,
                                         double tol = default_tol().validate) {
    const int d = geam.dim;
    Matrix D = Matrix::Zero(d * d, d * d);
    for (const auto& fr : geam.frames)
        for (const auto& P : fr.operators) D += kron(P, P);
    const Matrix F = flip_operator(d);
    // Gram of {I, F}: <I,I> = d^2, <I,F> = d, <F,F> = d^2.
    const double tD = D.trace().real();
    const double tFD = (F * D).trace().real();
    const double dd = double(d) * d;
    const double det = dd * dd - double(d) * d;
    ConicalCheck out;
    out.kappa_plus = (dd * tD - d * tFD) / det;
    out.kappa_minus = (dd * tFD - d * tD) / det;
    out.residual = (D - out.kappa_plus * Matrix::Identity(d * d, d * d) -
                    out.kappa_minus * F).norm();
    out.is_design = out.residual <= tol && out.kappa_plus >= out.kappa_minus &&
                    out.kappa_minus > 0;
    return out;
}

inline DesignParams design_params(const Geam& geam,
                                  double tol = default_tol().validate) {
    const int d = geam.dim;
    double S_min = std::numeric_limits<double>::infinity(), S_max = 0;
    double mu = 0;
    for (const auto& fr : geam.frames) {
        const double S_alpha = fr.a * fr.a * (fr.b - fr.c);
        S_min = std::min(S_min, S_alpha);
        S_max = std::max(S_max, S_alpha);
        mu += fr.a * fr.gamma / d;
    }
    if (S_max - S_min > tol)
        throw NotADesign("frame symmetry constants differ: spread " +
                         std::to_string(S_max - S_min));
    DesignParams p;
    p.S = 0.5 * (S_min + S_max);
    p.mu = mu;
    p.C_max = (d - 1.0) / d * p.S + p.mu;
    p.kappa_minus = p.S;
    p.kappa_plus = p.mu - p.S / d;
    return p;
}

// Largest S (relative tolerance 1e-6) for which the construction stays PSD,
// found by bisection on (0, max_admissible_S].
inline double search_positive_S(const GeamConfig& cfg, const OperatorBasis& basis,
                                const Tolerances& tol = default_tol()) {
    check_config(cfg);
    if (cfg.target_S) throw RangeViolation("search_positive_S: config already fixes S");
    const double S_max = max_admissible_S(cfg);
    auto feasible = [&](double S) {
        GeamConfig trial = cfg;
        trial.target_S = S;
        try {
            build_geam(trial, basis, tol);
            return true;
        } catch (const PositivityViolation&) {
            return false;
        }
    };
    if (feasible(S_max)) return S_max;
    double lo = S_max * 1e-9;
    if (!feasible(lo))
        throw std::runtime_error("search_positive_S: no positive S found");
    double hi = S_max;
    while ((hi - lo) / hi > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace geamkit
