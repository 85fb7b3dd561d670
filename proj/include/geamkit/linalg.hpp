// linalg.hpp — dense complex-matrix substrate: Hilbert-Schmidt inner product,
// generalized Gell-Mann basis, spectral decomposition, fractional powers,
// partial trace, flip operator, trace norm.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace geamkit {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

struct Tolerances {
    double hermitian = 1e-10;
    double spectral = 1e-10;
    double psd = 1e-10;
    double eigen_floor = 1e-12;
    double validate = 1e-10;
};

inline const Tolerances& default_tol() {
    static const Tolerances t{};
    return t;
}

// Tr(A^dagger B)
inline Complex hs_inner(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("hs_inner: dimension mismatch");
    return (A.adjoint() * B).trace();
}

inline bool is_hermitian(const Matrix& M, double tol = default_tol().hermitian) {
    if (M.rows() != M.cols()) return false;
    return (M - M.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// Hermitian orthonormal basis {I/sqrt(d), symmetric pairs, antisymmetric pairs,
// diagonals}, in that fixed order. d^2 matrices, pairwise HS-orthonormal.
inline std::vector<Matrix> gellmann_basis(int d) {
    if (d < 2) throw std::invalid_argument("gellmann_basis: d must be >= 2");
    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(d) * d);
    basis.push_back(Matrix::Identity(d, d) / std::sqrt(double(d)));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Matrix M = Matrix::Zero(d, d);
            M(j, k) = inv_sqrt2;
            M(k, j) = inv_sqrt2;
            basis.push_back(M);
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Matrix M = Matrix::Zero(d, d);
            M(j, k) = Complex(0, -inv_sqrt2);
            M(k, j) = Complex(0, inv_sqrt2);
            basis.push_back(M);
        }
    for (int l = 1; l < d; ++l) {
        Matrix M = Matrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(double(l) * (l + 1));
        for (int m = 0; m < l; ++m) M(m, m) = norm;
        M(l, l) = -double(l) * norm;
        basis.push_back(M);
    }
    return basis;
}

struct SpectralDecomposition {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // columns
};

inline SpectralDecomposition eigh(const Matrix& M) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(M);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigh: eigendecomposition failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double min_eigenvalue(const Matrix& M) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(M, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

// rho^mu for Hermitian PSD rho. Eigenvalues below eigen_floor are treated as
// exactly zero; mu = 0 maps rho to the projector onto its support.
inline Matrix fractional_power(const Matrix& rho, double mu,
                               const Tolerances& tol = default_tol()) {
    auto sd = eigh(rho);
    if (sd.eigenvalues(0) < -tol.psd)
        throw std::invalid_argument("fractional_power: negative eigenvalue " +
                                    std::to_string(sd.eigenvalues(0)));
    const int d = static_cast<int>(rho.rows());
    RealVector powered(d);
    for (int i = 0; i < d; ++i) {
        const double ev = sd.eigenvalues(i);
        powered(i) = (ev <= tol.eigen_floor) ? 0.0
                   : (mu == 0.0 ? 1.0 : std::pow(ev, mu));
    }
    return sd.eigenvectors * powered.asDiagonal() * sd.eigenvectors.adjoint();
}

inline Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

// Reduced matrix on the kept subsystem; row index convention i1*d2 + i2.
inline Matrix partial_trace(const Matrix& rho, int d1, int d2, int keep) {
    if (rho.rows() != rho.cols() ||
        rho.rows() != static_cast<Eigen::Index>(d1) * d2)
        throw std::invalid_argument("partial_trace: dimension not factorable as declared");
    if (keep != 1 && keep != 2)
        throw std::invalid_argument("partial_trace: subsystem must be 1 or 2");
    if (keep == 1) {
        Matrix out = Matrix::Zero(d1, d1);
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d1; ++j)
                for (int k = 0; k < d2; ++k)
                    out(i, j) += rho(i * d2 + k, j * d2 + k);
        return out;
    }
    Matrix out = Matrix::Zero(d2, d2);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j)
            for (int k = 0; k < d1; ++k)
                out(i, j) += rho(k * d2 + i, k * d2 + j);
    return out;
}

// Swap on C^d (x) C^d: sum_{m,n} |m><n| (x) |n><m|
inline Matrix flip_operator(int d) {
    if (d < 2) throw std::invalid_argument("flip_operator: d must be >= 2");
    Matrix F = Matrix::Zero(d * d, d * d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n)
            F(m * d + n, n * d + m) = 1.0;
    return F;
}

// Sum of singular values.
inline double trace_norm(const Matrix& M) {
    Eigen::JacobiSVD<Matrix> svd(M);
    return svd.singularValues().sum();
}

inline double trace_norm(const RealMatrix& M) {
    Eigen::JacobiSVD<RealMatrix> svd(M);
    return svd.singularValues().sum();
}

}  // namespace geamkit
