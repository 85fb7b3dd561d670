#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geamkit/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

using namespace geamkit;

namespace {

void check_density(const DensityMatrix& rho) {
    CHECK(is_hermitian(rho.matrix));
    CHECK(std::abs(rho.matrix.trace().real() - 1.0) < 1e-12);
    CHECK(min_eigenvalue(rho.matrix) > -1e-10);
}

}  // namespace

TEST_CASE("random_pure: purity, determinism, unitary-invariant mean") {
    auto rho = random_pure(3, 42);
    check_density(rho);
    CHECK(std::abs(rho.purity() - 1.0) < 1e-12);

    auto again = random_pure(3, 42);
    CHECK((rho.matrix - again.matrix).cwiseAbs().maxCoeff() == 0.0);

    const int samples = 10000;
    Matrix mean = Matrix::Zero(2, 2);
    for (int s = 0; s < samples; ++s) mean += random_pure(2, 1000 + s).matrix;
    mean /= samples;
    CHECK((mean - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff()
          < 3.0 / std::sqrt(double(samples)));
}

TEST_CASE("random_mixed ranks and purity") {
    auto rank1 = random_mixed(4, 1, 7);
    check_density(rank1);
    CHECK(std::abs(rank1.purity() - 1.0) < 1e-12);

    auto full = random_mixed(2, 2, 8);
    check_density(full);
    CHECK(full.purity() > 0.5);
    CHECK(full.purity() < 1.0);

    auto rank2 = random_mixed(5, 2, 9);
    auto sd = eigh(rank2.matrix);
    int above = 0;
    for (int i = 0; i < 5; ++i)
        if (sd.eigenvalues(i) > 1e-12) ++above;
    CHECK(above == 2);

    CHECK_THROWS_AS(random_mixed(3, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_mixed(3, 4, 1), std::invalid_argument);
}

TEST_CASE("bipartite_from_schmidt round-trips the coefficients") {
    SUBCASE("product state") {
        RealVector lambda(1);
        lambda << 1.0;
        auto psi = bipartite_from_schmidt(lambda, 3, 5);
        check_density(psi);
        auto sv = schmidt_decompose(psi);
        CHECK(sv.rank == 1);
        CHECK(sv.coefficients(0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("maximally entangled qubits") {
        RealVector lambda = RealVector::Constant(2, 1.0 / std::sqrt(2.0));
        auto psi = bipartite_from_schmidt(lambda, 2, 5);
        auto sv = schmidt_decompose(psi);
        CHECK(sv.rank == 2);
        CHECK(std::abs(sv.coefficients(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    }
    SUBCASE("random coefficients, d = 4, 100 draws") {
        for (int trial = 0; trial < 100; ++trial) {
            Rng rng(5000 + trial);
            RealVector lambda(4);
            for (int i = 0; i < 4; ++i) lambda(i) = rng.uniform() + 0.01;
            lambda /= lambda.norm();
            std::sort(lambda.data(), lambda.data() + 4, std::greater<double>());
            auto psi = bipartite_from_schmidt(lambda, 4, 6000 + trial);
            auto sv = schmidt_decompose(psi);
            for (int i = 0; i < 4; ++i)
                CHECK(std::abs(sv.coefficients(i) - lambda(i)) < 1e-10);
        }
    }
    SUBCASE("unnormalized coefficients rejected") {
        RealVector lambda(2);
        lambda << 1.0, 1.0;
        CHECK_THROWS_AS(bipartite_from_schmidt(lambda, 2, 1), std::invalid_argument);
    }
}

TEST_CASE("schmidt_decompose special cases and error paths") {
    Vector e00 = Vector::Zero(4);
    e00(0) = 1.0;
    auto sv = schmidt_decompose(e00, 2);
    CHECK(sv.rank == 1);
    CHECK(sv.coefficients(0) == doctest::Approx(1.0));

    for (int d : {2, 3, 4}) {
        Vector ent = Vector::Zero(d * d);
        for (int i = 0; i < d; ++i) ent(i * d + i) = 1.0 / std::sqrt(double(d));
        auto s = schmidt_decompose(ent, d);
        CHECK(s.rank == d);
        for (int i = 0; i < d; ++i)
            CHECK(std::abs(s.coefficients(i) - 1.0 / std::sqrt(double(d))) < 1e-12);
    }

    DensityMatrix mixed{4, true, Matrix::Identity(4, 4) / 4.0};
    CHECK_THROWS_AS(schmidt_decompose(mixed), ImpureInput);
}

TEST_CASE("agreement between schmidt_decompose and partial_trace spectrum") {
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 3;
        Rng rng(900 + trial);
        Vector psi = random_state_vector(d * d, rng);
        auto sv = schmidt_decompose(psi, d);
        auto sd = eigh(partial_trace(psi * psi.adjoint(), d, d, 1));
        for (int i = 0; i < d; ++i)
            CHECK(std::abs(sv.coefficients(i) * sv.coefficients(i) -
                           sd.eigenvalues(d - 1 - i)) < 1e-10);
    }
}

TEST_CASE("haar_unitary columns are orthonormal") {
    Rng rng(1);
    for (int d : {2, 5}) {
        Matrix U = haar_unitary(d, rng);
        CHECK((U.adjoint() * U - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
    }
}
