// entanglement.hpp — correlation matrix of a bipartite state under a design
// measurement, Schmidt-number criterion, and the concurrence lower bound.

#pragma once

#include "geamkit/geam.hpp"
#include "geamkit/measures.hpp"
#include "geamkit/states.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace geamkit {

inline constexpr double tol_detect = 1e-9;

struct CorrelationMatrix {
    RealMatrix entries;  // (d^2+N-1)^2, index order lexicographic (alpha, k)
};

// B_{(a,k),(b,l)} = Tr[rho (P_{a,k} (x) P_{b,l})], same GEAM on both factors.
inline CorrelationMatrix correlation_matrix(const Geam& geam, const DensityMatrix& rho) {
    const int d = geam.dim;
    if (!rho.bipartite || rho.matrix.rows() != static_cast<Eigen::Index>(d) * d)
        throw std::invalid_argument("correlation_matrix: state is not on d (x) d");
    std::vector<const Matrix*> ops;
    for (const auto& fr : geam.frames)
        for (const auto& P : fr.operators) ops.push_back(&P);
    const int n = static_cast<int>(ops.size());
    // Tr[rho (P (x) Q)] = sum over blocks: rho partial-contracted with P.
    // Precompute the d x d block contractions <i|P|j> rho_{(i q)(j q')}.
    CorrelationMatrix B;
    B.entries.resize(n, n);
    std::vector<Matrix> contracted(n, Matrix::Zero(d, d));
    for (int a = 0; a < n; ++a) {
        const Matrix& P = *ops[a];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                contracted[a] += P(j, i) *
                    rho.matrix.block(i * d, j * d, d, d);
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Complex v = (contracted[a] * (*ops[b])).trace();
            if (std::abs(v.imag()) > 1e-12)
                throw std::runtime_error("correlation_matrix: non-real entry");
            B.entries(a, b) = v.real();
        }
    return B;
}

// Closed-form trace norm for a pure state: C_max + 2S sum_{j<k} lambda_j lambda_k.
inline double lemma1_norm(const SchmidtVector& lambda, const DesignParams& params) {
    double cross = 0;
    const auto& l = lambda.coefficients;
    for (int j = 0; j < l.size(); ++j)
        for (int k = j + 1; k < l.size(); ++k) cross += l(j) * l(k);
    return params.C_max + 2.0 * params.S * cross;
}

inline double schmidt_number_bound(const DesignParams& params, int r, int d) {
    if (r < 1 || r > d)
        throw std::invalid_argument("schmidt_number_bound: r outside [1, d]");
    return params.C_max + (r - 1) * params.S;
}

struct SchmidtCriterionResult {
    bool violated = false;  // lhs > rhs certifies Schmidt number > r
    double lhs = 0, rhs = 0;
};

inline SchmidtCriterionResult check_schmidt_criterion(const Geam& geam,
                                                      const DensityMatrix& rho, int r) {
    const DesignParams params = design_params(geam);
    SchmidtCriterionResult res;
    res.lhs = trace_norm(correlation_matrix(geam, rho).entries);
    res.rhs = schmidt_number_bound(params, r, geam.dim);
    res.violated = res.lhs > res.rhs + tol_detect;
    return res;
}

// sqrt(2 (1 - Tr rho_1^2)) for a pure bipartite state.
inline double pure_concurrence(const DensityMatrix& psi) {
    if (!psi.bipartite)
        throw std::invalid_argument("pure_concurrence: state is not bipartite");
    if (std::abs(psi.purity() - 1.0) > 1e-8)
        throw ImpureInput("pure_concurrence: input is not pure");
    const int d = psi.factor_dim();
    const Matrix rho1 = partial_trace(psi.matrix, d, d, 1);
    const double p = (rho1 * rho1).trace().real();
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - p)));
}

// max(0, eta (||B||_tr - C_max)) with eta = (1/S) sqrt(2/(d(d-1))).
inline double concurrence_lower_bound(const Geam& geam, const DensityMatrix& rho) {
    const DesignParams params = design_params(geam);
    const int d = geam.dim;
    const double eta = std::sqrt(2.0 / (double(d) * (d - 1))) / params.S;
    const double norm = trace_norm(correlation_matrix(geam, rho).entries);
    return std::max(0.0, eta * (norm - params.C_max));
}

struct DetectionReport {
    double trace_norm = 0;
    struct Bound {
        int r = 0;
        double bound = 0;
        bool violated = false;
    };
    std::vector<Bound> schmidt_bounds;
    int min_schmidt_number_certified = 1;
    double concurrence_bound = 0;
};

inline DetectionReport detection_report(const Geam& geam, const DensityMatrix& rho) {
    const DesignParams params = design_params(geam);
    const int d = geam.dim;
    DetectionReport rep;
    rep.trace_norm = trace_norm(correlation_matrix(geam, rho).entries);
    rep.min_schmidt_number_certified = 1;
    for (int r = 1; r <= d; ++r) {
        DetectionReport::Bound b;
        b.r = r;
        b.bound = schmidt_number_bound(params, r, d);
        b.violated = rep.trace_norm > b.bound + tol_detect;
        if (b.violated) rep.min_schmidt_number_certified = r + 1;
        rep.schmidt_bounds.push_back(b);
    }
    const double eta = std::sqrt(2.0 / (double(d) * (d - 1))) / params.S;
    rep.concurrence_bound = std::max(0.0, eta * (rep.trace_norm - params.C_max));
    return rep;
}

}  // namespace geamkit
