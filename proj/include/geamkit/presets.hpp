// presets.hpp — stock measurement families: complete MUB sets (d = 2, 3, 4, 5, 7),
// Weyl-Heisenberg SIC POVMs (d = 2..5), and the generic frame constructions
// (MUM, gSIC, (N,M)-POVM) built on top of them.

#pragma once

#include "geamkit/geam.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace geamkit {

// Complete set of d+1 mutually unbiased bases, columns are basis vectors.
// d = 2: Pauli eigenbases; odd primes: quadratic Gauss-sum construction;
// d = 4: the standard two-qubit table.
inline std::vector<Matrix> mub_bases(int d) {
    std::vector<Matrix> bases;
    if (d == 2) {
        const double s = 1.0 / std::sqrt(2.0);
        Matrix H(2, 2), Y(2, 2);
        H << s, s, s, -s;
        Y << s, s, Complex(0, s), Complex(0, -s);
        bases = {Matrix::Identity(2, 2), H, Y};
    } else if (d == 3 || d == 5 || d == 7) {
        bases.push_back(Matrix::Identity(d, d));
        const double norm = 1.0 / std::sqrt(double(d));
        for (int m = 0; m < d; ++m) {
            Matrix B(d, d);
            for (int k = 0; k < d; ++k)
                for (int j = 0; j < d; ++j) {
                    const int phase = (m * j * j + j * k) % d;
                    B(j, k) = norm * std::polar(1.0, 2.0 * std::numbers::pi * phase / d);
                }
            bases.push_back(B);
        }
    } else if (d == 4) {
        const Complex i(0, 1);
        const std::vector<std::vector<std::vector<Complex>>> table = {
            {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, -1, 1}, {1, -1, 1, -1}},
            {{1, -1, -i, -i}, {1, -1, i, i}, {1, 1, i, -i}, {1, 1, -i, i}},
            {{1, -i, -i, -1}, {1, -i, i, 1}, {1, i, i, -1}, {1, i, -i, 1}},
            {{1, -i, -1, -i}, {1, -i, 1, i}, {1, i, 1, -i}, {1, i, -1, i}},
        };
        bases.push_back(Matrix::Identity(4, 4));
        for (const auto& t : table) {
            Matrix B(4, 4);
            for (int k = 0; k < 4; ++k)
                for (int j = 0; j < 4; ++j) B(j, k) = t[k][j] * 0.5;
            bases.push_back(B);
        }
    } else {
        throw RangeViolation("mub_bases: no construction shipped for d = " +
                             std::to_string(d));
    }
    return bases;
}

// SIC fiducial vectors. d = 2 (tetrahedron) and d = 3 (Hesse) are algebraic;
// d = 4 and d = 5 are frozen numerical solutions certified at runtime.
inline Vector sic_fiducial(int d) {
    Vector f(d);
    switch (d) {
        case 2: {
            const double s3 = std::sqrt(3.0);
            f(0) = std::sqrt((1.0 + 1.0 / s3) / 2.0);
            f(1) = std::polar(std::sqrt((1.0 - 1.0 / s3) / 2.0),
                              std::numbers::pi / 4.0);
            break;
        }
        case 3: {
            const double s = 1.0 / std::sqrt(2.0);
            f << 0.0, s, -s;
            break;
        }
        case 4:
            f << Complex(2.85434437257325070e-02, -1.99153506504050948e-01),
                 Complex(-2.98029203182701097e-01, 2.68063475463547862e-01),
                 Complex(4.80799096396238079e-01, 6.89099689594969284e-02),
                 Complex(7.50284855853206700e-01, 0.0);
            break;
        case 5:
            f << Complex(3.18668151769060715e-01, -3.66363450871956875e-01),
                 Complex(-1.04354773168302897e-01, -1.70542165534812190e-01),
                 Complex(-1.48133004730396783e-01, -1.90959077223206708e-01),
                 Complex(7.01929297522377871e-01, 0.0),
                 Complex(-3.96798571923225485e-01, -1.25264840797434357e-01);
            break;
        default:
            throw RangeViolation("sic_fiducial: no fiducial shipped for d = " +
                                 std::to_string(d));
    }
    return f;
}

// Weyl-Heisenberg orbit X^a Z^b |fiducial>, d^2 unit vectors.
inline std::vector<Vector> weyl_heisenberg_orbit(int d, const Vector& fiducial) {
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Vector v(d);
            for (int j = 0; j < d; ++j)
                v((j + a) % d) = fiducial(j) *
                    std::polar(1.0, 2.0 * std::numbers::pi * (double(b) * j) / d);
            out.push_back(std::move(v));
        }
    return out;
}

namespace detail {

// Symmetric (Loewdin) orthonormalization in the HS inner product. Real Gram
// coefficients keep the operators Hermitian and traceless.
inline std::vector<Matrix> lowdin_orthonormalize(const std::vector<Matrix>& ops) {
    const int n = static_cast<int>(ops.size());
    RealMatrix gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            gram(i, j) = hs_inner(ops[i], ops[j]).real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(gram);
    RealMatrix inv_sqrt = solver.eigenvectors() *
        solver.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        solver.eigenvectors().transpose();
    std::vector<Matrix> out;
    out.reserve(ops.size());
    for (int i = 0; i < n; ++i) {
        Matrix M = Matrix::Zero(ops[0].rows(), ops[0].cols());
        for (int j = 0; j < n; ++j) M += inv_sqrt(i, j) * ops[j];
        out.push_back(std::move(M));
    }
    return out;
}

inline Geam geam_from_rank1_frames(int d,
                                   const std::vector<std::vector<Vector>>& frames,
                                   double gamma, double scale) {
    Geam geam;
    geam.dim = d;
    for (const auto& vecs : frames) {
        Frame fr;
        fr.gamma = gamma;
        const int M = static_cast<int>(vecs.size());
        fr.a = d * gamma / M;
        fr.b = 1.0;
        fr.c = c_from_b(d, M, 1.0);
        const double sM = std::sqrt(double(M));
        fr.tau = std::sqrt(fr.a * fr.a * (fr.b - fr.c) / (M * (sM + 1) * (sM + 1)));
        for (const auto& v : vecs)
            fr.operators.push_back(scale * (v * v.adjoint()));
        geam.frames.push_back(std::move(fr));
    }
    return geam;
}

// Basis recovered from a measurement and re-orthonormalized, keeping the
// per-frame grouping. Kills the ~1e-13 residue of numerical fiducials.
inline OperatorBasis derived_basis(const Geam& geam) {
    auto basis = recover_basis(geam);
    std::vector<Matrix> flat;
    std::vector<std::size_t> sizes;
    for (auto& grp : basis.groups) {
        sizes.push_back(grp.size());
        for (auto& g : grp) flat.push_back(std::move(g));
    }
    flat = lowdin_orthonormalize(flat);
    basis.groups.clear();
    std::size_t pos = 0;
    for (std::size_t n : sizes) {
        basis.groups.emplace_back(flat.begin() + pos, flat.begin() + pos + n);
        pos += n;
    }
    return basis;
}

}  // namespace detail

// Complete-MUB GEAM: N = d+1 frames of rank-1 projectors weighted 1/(d+1).
inline Geam preset_mub(int d) {
    auto bases = mub_bases(d);
    std::vector<std::vector<Vector>> frames;
    for (const auto& B : bases) {
        std::vector<Vector> vecs;
        for (int k = 0; k < d; ++k) vecs.push_back(B.col(k));
        frames.push_back(std::move(vecs));
    }
    const double gamma = 1.0 / (d + 1);
    return detail::geam_from_rank1_frames(d, frames, gamma, gamma);
}

// SIC POVM: d^2 subnormalized rank-1 projectors (1/d)|phi><phi|.
inline Geam preset_sic(int d) {
    auto orbit = weyl_heisenberg_orbit(d, sic_fiducial(d));
    return detail::geam_from_rank1_frames(d, {orbit}, 1.0, 1.0 / d);
}

// MUM: generic construction on the MUB-derived basis; positive for any
// admissible b by convexity with the projective (b = 1) endpoint.
inline Geam preset_mum(int d, double b) {
    auto basis = detail::derived_basis(preset_mub(d));
    GeamConfig cfg;
    cfg.dim = d;
    cfg.frames.assign(d + 1, FrameSpec{d, 1.0 / (d + 1), b});
    return build_geam(cfg, basis);
}

// gSIC: single frame of d^2 operators on the SIC-derived basis.
inline Geam preset_gsic(int d, double b) {
    auto basis = detail::derived_basis(preset_sic(d));
    GeamConfig cfg;
    cfg.dim = d;
    cfg.frames = {FrameSpec{d * d, 1.0, b}};
    return build_geam(cfg, basis);
}

// (N,M)-POVM: N frames of M elements with uniform weight. Uses the MUB- or
// SIC-derived basis when the shape matches one, else the canonical Gell-Mann
// partition (whose positivity range for b is narrower).
inline Geam preset_nm_povm(int d, int N, int M, double b) {
    if (N * (M - 1) != d * d - 1)
        throw RangeViolation("nm_povm: N (M-1) must equal d^2 - 1");
    GeamConfig cfg;
    cfg.dim = d;
    cfg.frames.assign(N, FrameSpec{M, 1.0 / N, b});
    if (N == d + 1 && M == d) {
        try {
            return build_geam(cfg, detail::derived_basis(preset_mub(d)));
        } catch (const RangeViolation&) { /* no MUB set for this d */ }
    }
    if (N == 1 && M == d * d) {
        try {
            return build_geam(cfg, detail::derived_basis(preset_sic(d)));
        } catch (const RangeViolation&) { /* no fiducial for this d */ }
    }
    return build_geam(cfg);
}

struct PresetExtra {
    double b = 0;
    int N = 0, M = 0;
};

inline Geam preset(const std::string& name, int d, const PresetExtra& extra = {}) {
    if (name == "mub") return preset_mub(d);
    if (name == "sic") return preset_sic(d);
    if (name == "mum") return preset_mum(d, extra.b);
    if (name == "gsic") return preset_gsic(d, extra.b);
    if (name == "nm_povm") return preset_nm_povm(d, extra.N, extra.M, extra.b);
    throw RangeViolation("unknown preset: " + name);
}

}  // namespace geamkit
