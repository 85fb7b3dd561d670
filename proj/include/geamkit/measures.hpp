// measures.hpp — index of coincidence, generalized entropies with their
// design bounds, Brukner-Zeilinger invariants, and skew-information coherence.
// Each design quantity comes in two routes: direct summation over measurement
// operators and the two-constant closed form.

#pragma once

#include "geamkit/geam.hpp"
#include "geamkit/states.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace geamkit {

struct ProbabilityVector {
    std::vector<double> entries;  // lexicographic (frame, outcome)

    double sum() const {
        double s = 0;
        for (double p : entries) s += p;
        return s;
    }
};

inline ProbabilityVector born_probabilities(const Geam& geam, const DensityMatrix& rho) {
    if (rho.matrix.rows() != geam.dim)
        throw std::invalid_argument("born_probabilities: dimension mismatch");
    ProbabilityVector pv;
    pv.entries.reserve(geam.total_operators());
    for (const auto& fr : geam.frames)
        for (const auto& P : fr.operators) {
            double p = (P * rho.matrix).trace().real();
            if (p < 0) {
                if (p < -1e-12)
                    throw std::runtime_error("born_probabilities: negative probability");
                p = 0;
            }
            pv.entries.push_back(p);
        }
    return pv;
}

inline double index_of_coincidence(const Geam& geam, const DensityMatrix& rho) {
    double c = 0;
    for (double p : born_probabilities(geam, rho).entries) c += p * p;
    return c;
}

// C(rho) = S (purity - 1/d) + mu
inline double ioc_formula(const DesignParams& params, double purity, int d) {
    if (purity < 1.0 / d - 1e-12 || purity > 1.0 + 1e-12)
        throw std::invalid_argument("ioc_formula: purity outside [1/d, 1]");
    return params.S * (purity - 1.0 / d) + params.mu;
}

inline double shannon_entropy(const ProbabilityVector& p) {
    double h = 0;
    for (double x : p.entries)
        if (x > 0) h -= x * std::log(x);
    return h;
}

inline double renyi_entropy(const ProbabilityVector& p, double nu) {
    if (nu <= 0) throw std::invalid_argument("renyi_entropy: nu must be > 0");
    if (nu == 1.0) return shannon_entropy(p);
    double s = 0;
    for (double x : p.entries)
        if (x > 0) s += std::pow(x, nu);
    return std::log(s) / (1.0 - nu);
}

inline double tsallis_entropy(const ProbabilityVector& p, double nu) {
    if (nu <= 0) throw std::invalid_argument("tsallis_entropy: nu must be > 0");
    if (nu == 1.0) return shannon_entropy(p);
    double s = 0;
    for (double x : p.entries)
        if (x > 0) s += std::pow(x, nu);
    return (s - 1.0) / (1.0 - nu);
}

// Lower bound R_nu >= nu/(2(1-nu)) ln C, valid for nu >= 2.
inline double renyi_bound(double C, double nu) {
    if (nu < 2.0) throw std::invalid_argument("renyi_bound: requires nu >= 2");
    if (C <= 0 || C > 1) throw std::invalid_argument("renyi_bound: C outside (0,1]");
    return nu / (2.0 * (1.0 - nu)) * std::log(C);
}

// Lower bound T_nu >= log_nu(1/C) = (C^{nu-1} - 1)/(1 - nu), valid for
// 0 < nu <= 2; nu = 1 limit is -ln C. (Saturates at uniform distributions,
// where C^{-1} equals the outcome count.)
inline double tsallis_bound(double C, double nu) {
    if (nu <= 0 || nu > 2.0) throw std::invalid_argument("tsallis_bound: nu outside (0,2]");
    if (C <= 0 || C > 1) throw std::invalid_argument("tsallis_bound: C outside (0,1]");
    if (nu == 1.0) return -std::log(C);
    return (std::pow(C, nu - 1.0) - 1.0) / (1.0 - nu);
}

// Total variance by direct summation: sum Tr(rho P^2) - (Tr rho P)^2.
inline double bz_total_variance(const Geam& geam, const DensityMatrix& rho) {
    if (rho.matrix.rows() != geam.dim)
        throw std::invalid_argument("bz_total_variance: dimension mismatch");
    double v = 0;
    for (const auto& fr : geam.frames)
        for (const auto& P : fr.operators) {
            const double p = (P * rho.matrix).trace().real();
            v += (P * P * rho.matrix).trace().real() - p * p;
        }
    return v;
}

struct BzInvariants {
    double V = 0, I = 0, U = 0;
    double V_min = 0, V_max = 0;
};

inline BzInvariants bz_formulas(const DesignParams& params, double purity, int d) {
    BzInvariants bz;
    bz.V = params.S * (d - purity);
    bz.I = params.S * (purity - 1.0 / d);
    bz.U = params.S * (1.0 - purity);
    bz.V_min = (d - 1.0) * params.S;
    bz.V_max = (double(d) * d - 1.0) / d * params.S;
    return bz;
}

// J_mu(rho, A) = Tr(rho A^2) - Tr(rho^mu A rho^{1-mu} A)
inline double skew_information(const DensityMatrix& rho, const Matrix& A, double mu) {
    if (mu < 0 || mu > 1) throw std::invalid_argument("skew_information: mu outside [0,1]");
    const Matrix rmu = fractional_power(rho.matrix, mu);
    const Matrix rnu = fractional_power(rho.matrix, 1.0 - mu);
    return (rho.matrix * A * A).trace().real() - (rmu * A * rnu * A).trace().real();
}

// Two-parameter version through J_{mu nu} = (J_mu + J_nu - J_{mu+nu})/2.
inline double skew_information(const DensityMatrix& rho, const Matrix& A,
                               double mu, double nu) {
    if (mu < 0 || nu < 0 || mu + nu > 1)
        throw std::invalid_argument("skew_information: need mu,nu >= 0, mu+nu <= 1");
    return 0.5 * (skew_information(rho, A, mu) + skew_information(rho, A, nu) -
                  skew_information(rho, A, mu + nu));
}

// Direct route: sum J_mu over all measurement operators.
inline double quantum_uncertainty(const Geam& geam, const DensityMatrix& rho, double mu) {
    if (rho.matrix.rows() != geam.dim)
        throw std::invalid_argument("quantum_uncertainty: dimension mismatch");
    const Matrix rmu = fractional_power(rho.matrix, mu);
    const Matrix rnu = fractional_power(rho.matrix, 1.0 - mu);
    double q = 0;
    for (const auto& fr : geam.frames)
        for (const auto& P : fr.operators)
            q += (rho.matrix * P * P).trace().real() -
                 (rmu * P * rnu * P).trace().real();
    return q;
}

inline double quantum_uncertainty(const Geam& geam, const DensityMatrix& rho,
                                  double mu, double nu) {
    if (mu < 0 || nu < 0 || mu + nu > 1)
        throw std::invalid_argument("quantum_uncertainty: need mu,nu >= 0, mu+nu <= 1");
    return 0.5 * (quantum_uncertainty(geam, rho, mu) +
                  quantum_uncertainty(geam, rho, nu) -
                  quantum_uncertainty(geam, rho, mu + nu));
}

// Basis-free uncertainty Q_mu(rho) = d - Tr(rho^mu) Tr(rho^{1-mu}).
inline double q_mu(const DensityMatrix& rho, double mu) {
    const int d = static_cast<int>(rho.matrix.rows());
    return d - fractional_power(rho.matrix, mu).trace().real() *
               fractional_power(rho.matrix, 1.0 - mu).trace().real();
}

// Q_{mu nu}(rho) = Q_mu + Q_nu - Q_{mu+nu}
inline double q_munu(const DensityMatrix& rho, double mu, double nu) {
    return q_mu(rho, mu) + q_mu(rho, nu) - q_mu(rho, mu + nu);
}

// Closed form Q_mu(rho, P) = S Q_mu(rho).
inline double coherence_formula(const DesignParams& params, const DensityMatrix& rho,
                                double mu) {
    return params.S * q_mu(rho, mu);
}

// Closed form Q_{mu nu}(rho, P) = (S/2) [Q_mu + Q_nu - Q_{mu+nu}].
inline double coherence_formula(const DesignParams& params, const DensityMatrix& rho,
                                double mu, double nu) {
    return 0.5 * params.S * q_munu(rho, mu, nu);
}

// Weighted combination sum_i q_i Q_{mu nu}(rho, P_i) with sum q_i S_i = 1/d,
// which equals the maximal coherence (1/2d) [Q_mu + Q_nu - Q_{mu+nu}].
inline double max_coherence(const std::vector<std::pair<double, DesignParams>>& designs,
                            const DensityMatrix& rho, double mu, double nu) {
    const int d = static_cast<int>(rho.matrix.rows());
    double weighted_S = 0;
    for (const auto& [q, params] : designs) weighted_S += q * params.S;
    if (std::abs(weighted_S - 1.0 / d) > 1e-10)
        throw std::invalid_argument("max_coherence: weights must satisfy sum q_i S_i = 1/d");
    double total = 0;
    for (const auto& [q, params] : designs)
        total += q * coherence_formula(params, rho, mu, nu);
    return total;
}

}  // namespace geamkit
