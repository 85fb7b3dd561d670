#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geamkit/linalg.hpp"
#include "geamkit/states.hpp"

#include <cmath>

using namespace geamkit;

namespace {

Matrix pauli(int which) {
    Matrix M(2, 2);
    switch (which) {
        case 0: M << 0, 1, 1, 0; break;
        case 1: M << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default: M << 1, 0, 0, -1; break;
    }
    return M;
}

}  // namespace

TEST_CASE("hs_inner basics") {
    CHECK(hs_inner(Matrix::Identity(2, 2), Matrix::Identity(2, 2)).real()
          == doctest::Approx(2.0));
    CHECK(std::abs(hs_inner(pauli(2), pauli(0))) == doctest::Approx(0.0));
    Matrix A(2, 2), B(3, 3);
    A.setZero();
    B.setZero();
    CHECK_THROWS_AS(hs_inner(A, B), std::invalid_argument);
}

TEST_CASE("gellmann basis is orthonormal with identity Gram and sums to d I") {
    for (int d = 2; d <= 8; ++d) {
        auto basis = gellmann_basis(d);
        REQUIRE(basis.size() == std::size_t(d) * d);
        double worst = 0;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (j > 0) CHECK(std::abs(basis[j].trace()) < 1e-14);
            CHECK(is_hermitian(basis[j], 1e-14));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                const double expected = j == k ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(hs_inner(basis[j], basis[k]).real()
                                                 - expected));
                worst = std::max(worst, std::abs(hs_inner(basis[j], basis[k]).imag()));
            }
        }
        CHECK(worst < 1e-12);
        Matrix sum = Matrix::Zero(d, d);
        for (const auto& G : basis) sum += G * G;
        CHECK((sum - double(d) * Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(gellmann_basis(1), std::invalid_argument);
}

TEST_CASE("gellmann d=2 recovers normalized Paulis") {
    auto basis = gellmann_basis(2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK((basis[1] - s * pauli(0)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((basis[2] - s * pauli(1)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((basis[3] - s * pauli(2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("fractional_power on scalars, projectors, and diagonals") {
    const int d = 3;
    Matrix eye = Matrix::Identity(d, d);
    for (double mu : {0.25, 0.5, 0.9}) {
        Matrix out = fractional_power(eye / d, mu);
        CHECK((out - std::pow(double(d), -mu) * eye).cwiseAbs().maxCoeff() < 1e-14);
    }
    auto pure = random_pure(4, 11);
    for (double mu : {0.3, 0.7, 1.0})
        CHECK((fractional_power(pure.matrix, mu) - pure.matrix).cwiseAbs().maxCoeff()
              < 1e-12);
    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 0.75;
    diag(1, 1) = 0.25;
    Matrix root = fractional_power(diag, 0.5);
    CHECK(root(0, 0).real() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
    CHECK(root(1, 1).real() == doctest::Approx(std::sqrt(0.25)).epsilon(1e-14));

    Matrix neg = Matrix::Identity(2, 2);
    neg(0, 0) = -0.5;
    CHECK_THROWS_AS(fractional_power(neg, 0.5), std::invalid_argument);
}

TEST_CASE("fractional_power complementary product has unit trace") {
    for (int d : {2, 3, 5}) {
        auto rho = random_mixed(d, d, 42 + d);
        for (double mu : {0.2, 0.5, 0.8}) {
            Matrix prod = fractional_power(rho.matrix, mu) *
                          fractional_power(rho.matrix, 1.0 - mu);
            CHECK(std::abs(prod.trace().real() - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("fractional_power mu=0 gives the support projector") {
    auto rho = random_mixed(4, 2, 5);
    Matrix proj = fractional_power(rho.matrix, 0.0);
    CHECK((proj * proj - proj).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(proj.trace().real() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK((proj * rho.matrix - rho.matrix).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("partial_trace on product and entangled states") {
    auto a = random_mixed(2, 2, 1);
    auto b = random_mixed(3, 3, 2);
    Matrix prod = kron(a.matrix, b.matrix);
    CHECK((partial_trace(prod, 2, 3, 1) - a.matrix).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((partial_trace(prod, 2, 3, 2) - b.matrix).cwiseAbs().maxCoeff() < 1e-14);

    // maximally entangled qubit pair
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    Matrix rho = bell * bell.adjoint();
    CHECK((partial_trace(rho, 2, 2, 2) - 0.5 * Matrix::Identity(2, 2))
              .cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(partial_trace(prod, 4, 2, 1), std::invalid_argument);
}

TEST_CASE("partial_trace spectrum matches squared Schmidt coefficients") {
    const int d = 4;
    Rng rng(77);
    Vector psi = random_state_vector(d * d, rng);
    Matrix rho1 = partial_trace(psi * psi.adjoint(), d, d, 1);
    auto sd = eigh(rho1);
    auto schmidt = schmidt_decompose(psi, d);
    for (int i = 0; i < d; ++i)
        CHECK(std::abs(sd.eigenvalues(d - 1 - i) -
                       schmidt.coefficients(i) * schmidt.coefficients(i)) < 1e-10);
}

TEST_CASE("partial_trace is linear and trace-preserving") {
    Rng rng(3);
    Matrix A(6, 6), B(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            A(i, j) = rng.complex_gaussian();
            B(i, j) = rng.complex_gaussian();
        }
    Matrix lin = partial_trace(2.0 * A + 3.0 * B, 2, 3, 2) -
                 2.0 * partial_trace(A, 2, 3, 2) - 3.0 * partial_trace(B, 2, 3, 2);
    CHECK(lin.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(partial_trace(A, 2, 3, 1).trace() - A.trace()) < 1e-12);
}

TEST_CASE("flip operator swaps factors and is involutory") {
    Matrix F2 = flip_operator(2);
    CHECK(F2.trace().real() == doctest::Approx(2.0));
    CHECK((F2 - F2.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    for (int d = 2; d <= 5; ++d) {
        Matrix F = flip_operator(d);
        CHECK((F * F - Matrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff() < 1e-15);
        Rng rng(d);
        Vector x = random_state_vector(d, rng), y = random_state_vector(d, rng);
        Vector xy(d * d), yx(d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                xy(i * d + j) = x(i) * y(j);
                yx(i * d + j) = y(i) * x(j);
            }
        CHECK((F * xy - yx).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("trace_norm values and invariances") {
    CHECK(trace_norm(Matrix(Matrix::Identity(4, 4))) == doctest::Approx(4.0));
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = 3;
    D(1, 1) = -4;
    CHECK(trace_norm(D) == doctest::Approx(7.0));

    Rng rng(9);
    Vector u = random_state_vector(3, rng), v = random_state_vector(3, rng);
    Matrix outer = 2.5 * u * v.adjoint();
    CHECK(trace_norm(outer) == doctest::Approx(2.5).epsilon(1e-12));

    Matrix X(3, 3), Y(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            X(i, j) = rng.complex_gaussian();
            Y(i, j) = rng.complex_gaussian();
        }
    CHECK(trace_norm(Matrix(X + Y)) <= trace_norm(X) + trace_norm(Y) + 1e-10);
    Matrix U = haar_unitary(3, rng), V = haar_unitary(3, rng);
    CHECK(std::abs(trace_norm(Matrix(U * X * V)) - trace_norm(X)) < 1e-10);
}

TEST_CASE("eigh reconstructs and is orthonormal") {
    Rng rng(21);
    Matrix A(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) A(i, j) = rng.complex_gaussian();
    Matrix H = A + A.adjoint();
    auto sd = eigh(H);
    Matrix recon = sd.eigenvectors *
                   sd.eigenvalues.cast<Complex>().asDiagonal() *
                   sd.eigenvectors.adjoint();
    CHECK((recon - H).norm() <= 1e-10 * H.norm());
    CHECK((sd.eigenvectors.adjoint() * sd.eigenvectors -
           Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 1; i < 5; ++i) CHECK(sd.eigenvalues(i) >= sd.eigenvalues(i - 1));
}
