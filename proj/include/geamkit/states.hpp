// states.hpp — density matrices: seedable random pure/mixed states, bipartite
// states with prescribed Schmidt coefficients, Schmidt decomposition.

#pragma once

#include "geamkit/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace geamkit {

struct ImpureInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// mt19937_64 with an explicit Box-Muller transform; std::normal_distribution
// is implementation-defined, this stream is bit-stable across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        // 53-bit mantissa in [0, 1)
        return double(engine_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    Complex complex_gaussian() {
        const double re = gaussian();
        return {re, gaussian()};
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0;
};

struct DensityMatrix {
    int dim = 0;            // Hilbert space dim (d, or d*d when bipartite)
    bool bipartite = false; // when true, equal factors d x d with d = sqrt(dim)
    Matrix matrix;

    int factor_dim() const {
        return bipartite ? static_cast<int>(std::lround(std::sqrt(double(dim)))) : dim;
    }
    double purity() const { return (matrix * matrix).trace().real(); }
};

struct SchmidtVector {
    RealVector coefficients;  // nonincreasing, sum of squares = 1
    int rank = 0;             // entries above schmidt_floor

    static constexpr double schmidt_floor = 1e-12;
};

inline Vector random_state_vector(int d, Rng& rng) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.complex_gaussian();
    v.normalize();
    return v;
}

inline DensityMatrix random_pure(int d, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("random_pure: d must be >= 2");
    Rng rng(seed);
    Vector v = random_state_vector(d, rng);
    return {d, false, v * v.adjoint()};
}

inline DensityMatrix random_mixed(int d, int rank, std::uint64_t seed) {
    if (rank < 1 || rank > d) throw std::invalid_argument("random_mixed: rank out of range");
    Rng rng(seed);
    Matrix G(d, rank);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < rank; ++j) G(i, j) = rng.complex_gaussian();
    Matrix rho = G * G.adjoint();
    rho /= rho.trace().real();
    return {d, false, std::move(rho)};
}

// Haar-random orthonormal columns via QR with positive-diagonal phase fix.
inline Matrix haar_unitary(int d, Rng& rng) {
    Matrix G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ();
    Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const Complex r = R(i, i);
        Q.col(i) *= (std::abs(r) > 0 ? r / std::abs(r) : 1.0);
    }
    return Q;
}

// |psi> = sum_j lambda_j |e_j> (x) |f_j> with Haar-random bases.
inline Vector bipartite_vector_from_schmidt(const RealVector& lambda, int d, Rng& rng) {
    if (lambda.size() > d)
        throw std::invalid_argument("bipartite_from_schmidt: rank exceeds d");
    if (std::abs(lambda.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("bipartite_from_schmidt: coefficients not normalized");
    Matrix E = haar_unitary(d, rng), F = haar_unitary(d, rng);
    Vector psi = Vector::Zero(d * d);
    for (int j = 0; j < lambda.size(); ++j)
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q)
                psi(p * d + q) += lambda(j) * E(p, j) * F(q, j);
    return psi;
}

inline DensityMatrix bipartite_from_schmidt(const RealVector& lambda, int d,
                                            std::uint64_t seed) {
    Rng rng(seed);
    Vector psi = bipartite_vector_from_schmidt(lambda, d, rng);
    return {d * d, true, psi * psi.adjoint()};
}

inline DensityMatrix random_bipartite_pure(int d, std::uint64_t seed) {
    Rng rng(seed);
    Vector psi = random_state_vector(d * d, rng);
    return {d * d, true, psi * psi.adjoint()};
}

// Singular values of the d x d reshaped amplitude matrix, nonincreasing.
inline SchmidtVector schmidt_decompose(const Vector& psi, int d) {
    if (psi.size() != static_cast<Eigen::Index>(d) * d)
        throw std::invalid_argument("schmidt_decompose: vector is not on d (x) d");
    Matrix amp(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) amp(i, j) = psi(i * d + j);
    Eigen::JacobiSVD<Matrix> svd(amp);
    SchmidtVector out;
    out.coefficients = svd.singularValues();
    out.rank = 0;
    for (int i = 0; i < out.coefficients.size(); ++i)
        if (out.coefficients(i) > SchmidtVector::schmidt_floor) ++out.rank;
    return out;
}

// Leading eigenvector route for a bipartite density matrix given as |psi><psi|.
inline SchmidtVector schmidt_decompose(const DensityMatrix& psi) {
    if (!psi.bipartite)
        throw std::invalid_argument("schmidt_decompose: state is not bipartite");
    if (std::abs(psi.purity() - 1.0) > 1e-8)
        throw ImpureInput("schmidt_decompose: input is not pure");
    auto sd = eigh(psi.matrix);
    const int n = static_cast<int>(psi.matrix.rows());
    Vector v = sd.eigenvectors.col(n - 1);
    return schmidt_decompose(v, psi.factor_dim());
}

}  // namespace geamkit
