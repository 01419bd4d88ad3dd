#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "openmap/dynamics.hpp"
#include "openmap/models.hpp"
#include "openmap/states.hpp"

namespace openmap {

// Supermatrix conventions. A acts on flattened states,
//   rho'(r',s') = sum_{r,s} A[(r',s'),(r,s)] rho(r,s),
// with composite index (i,j) = 2i+j. The reshuffled form
//   B[(i,j),(k,l)] = A[(i,k),(j,l)]
// is hermitian for hermiticity-preserving maps and carries the positivity
// structure: the map is completely positive iff B >= 0.
using SuperMatrixA = Mat;
using ChoiMatrix = Mat;

constexpr std::uint64_t kDefaultSeed = 0x6f70656e6d6170ULL;

inline Mat reshuffle(const Mat& m) {
    if (m.rows() != 4 || m.cols() != 4) throw BadDimsError("reshuffle: expected a 4x4 matrix");
    Mat out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = m(2 * i + k, 2 * j + l);
    return out;
}

inline Mat apply_supermatrix(const SuperMatrixA& a, const Mat& rho) {
    if (a.rows() != 4 || a.cols() != 4) throw BadDimsError("apply_supermatrix: A must be 4x4");
    if (rho.rows() != 2 || rho.cols() != 2)
        throw BadDimsError("apply_supermatrix: state must be 2x2");
    Mat out = Mat::Zero(2, 2);
    for (int rp = 0; rp < 2; ++rp)
        for (int sp = 0; sp < 2; ++sp)
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s)
                    out(rp, sp) += a(2 * rp + sp, 2 * r + s) * rho(r, s);
    return out;
}

inline Mat apply_choi(const ChoiMatrix& b, const Mat& rho) {
    return apply_supermatrix(reshuffle(b), rho);
}

struct MapCoeffs {
    double b1 = 0.0, b2 = 0.0, b3 = 0.0;
};

// replacement map onto (1 + b3 sz)/2; diagonal in the reshuffled form
inline ChoiMatrix template_z(double b3) {
    Mat b = Mat::Zero(4, 4);
    b(0, 0) = b(1, 1) = 0.5 * (1.0 + b3);
    b(2, 2) = b(3, 3) = 0.5 * (1.0 - b3);
    return b;
}

// family generated by a tilted impurity state with bloch (a1, 0, a3); the
// off-diagonal blocks carry the transported transverse components
inline ChoiMatrix template_tilted(double a1, const MapCoeffs& c) {
    if (std::abs(a1) < 1e-9)
        throw DegenerateA1Error("template_tilted: a1 too close to zero, use template_z");
    Mat b = template_z(c.b3);
    b(1, 2) = c.b1 / a1;
    b(2, 1) = c.b1 / a1;
    b(0, 3) = cplx(0.0, -c.b2 / a1);
    b(3, 0) = cplx(0.0, c.b2 / a1);
    return b;
}

// Transverse coefficients of the reduced map for the generating family
// rho1(a1, a3) x (1 - sz)/2 in closed form; the longitudinal coefficient is
// taken from the actual evolution. `uncorrected` switches to the raw closed
// forms: their b2 carries the sign of the opposite evolution convention
// exp(+iHt) and their b3 drops the term that restores the t=0 identity
// b3(0) = a3. The flag exists only for the comparison tests.
inline MapCoeffs closed_form_coeffs(const ModelParams& p, double a1, double a3, double t,
                                    bool uncorrected = false) {
    const double w = std::sqrt(4.0 * p.v * p.v +
                               (p.epsilon - p.varepsilon_k0) * (p.epsilon - p.varepsilon_k0));
    const double mean_arg = 0.5 * t * (p.epsilon + p.varepsilon_k0);
    const double rabi_arg = 0.5 * t * w;
    const double c1 = std::cos(mean_arg), s1 = std::sin(mean_arg);
    const double c2 = std::cos(rabi_arg), s2 = std::sin(rabi_arg);
    const double ratio = w > 0.0 ? (p.epsilon - p.varepsilon_k0) * s2 / w : 0.0;

    MapCoeffs out;
    out.b1 = (c1 * c2 - s1 * ratio) * a1;
    const double b2_raw = (-s1 * c2 - c1 * ratio) * a1;
    if (uncorrected) {
        out.b2 = b2_raw;
        const double w2 = w * w;
        out.b3 = w2 > 0.0
                     ? (2.0 * (-1.0 + a3) * p.v * p.v +
                        a3 * (p.epsilon - p.varepsilon_k0) * (p.epsilon - p.varepsilon_k0) +
                        (1.0 + a3) * p.v * p.v * std::cos(0.5 * t * w)) /
                           w2
                     : a3;
        return out;
    }
    out.b2 = -b2_raw;

    InitialStateSpec gen;
    gen.family = InitialStateSpec::Family::TiltedProduct;
    gen.a1 = a1;
    gen.a3 = a3;
    gen.partner = InitialStateSpec::Partner::SpinDown;
    const Mat rho_t = reduced(evolve(build_initial(gen), h_effective(p), t));
    out.b3 = bloch_of(rho_t).z;
    return out;
}

// eigenvalues of the tilted template, lambda1..2 from b1 and lambda3..4 from
// b2; at a1 = 0 the expressions continue to the z-template pair (1 -+ b3)/2
inline std::array<double, 4> closed_form_eigs(double a1, const MapCoeffs& c) {
    if (std::abs(a1) < 1e-9) {
        if (std::abs(c.b1) > 1e-6 || std::abs(c.b2) > 1e-6)
            throw DegenerateA1Error(
                "closed_form_eigs: a1 ~ 0 with nonvanishing transverse coefficients");
        const double m = std::abs(c.b3);
        return {0.5 * (1.0 - m), 0.5 * (1.0 + m), 0.5 * (1.0 - m), 0.5 * (1.0 + m)};
    }
    const double r1 = std::sqrt(4.0 * c.b1 * c.b1 + a1 * a1 * c.b3 * c.b3);
    const double r2 = std::sqrt(4.0 * c.b2 * c.b2 + a1 * a1 * c.b3 * c.b3);
    return {(a1 - r1) / (2.0 * a1), (a1 + r1) / (2.0 * a1), (a1 - r2) / (2.0 * a1),
            (a1 + r2) / (2.0 * a1)};
}

struct ExtractedMap {
    ChoiMatrix b;
    double a1 = 0.0;  // transverse component of the generating state
    MapCoeffs coeffs;
};

// Reconstructs the reduced map at the sample time from the generating bloch
// vector and its image. The generating family must lie in the xz plane.
inline ExtractedMap extract_map(const Bloch& initial, const TrajectorySample& sample) {
    if (std::abs(initial.y) > 1e-12)
        throw ConfigInvalidError("extract_map: generating state must have zero y component");
    ExtractedMap out;
    out.a1 = initial.x;
    out.coeffs.b1 = sample.bloch.x;
    out.coeffs.b2 = sample.bloch.y;
    out.coeffs.b3 = sample.bloch.z;
    if (std::abs(initial.x) < 1e-9) {
        out.a1 = 0.0;
        out.b = template_z(out.coeffs.b3);
    } else {
        out.b = template_tilted(out.a1, out.coeffs);
    }
    return out;
}

enum class MapClass { CompletelyPositive, PositiveOnDomain, NotPositiveOnDomain };

inline std::string to_string(MapClass c) {
    switch (c) {
        case MapClass::CompletelyPositive: return "CP";
        case MapClass::PositiveOnDomain: return "positive_on_domain";
        default: return "not_positive_on_domain";
    }
}

struct Classification {
    MapClass verdict = MapClass::CompletelyPositive;
    double min_choi_eigenvalue = 0.0;
    // a state whose image under the map has a negative eigenvalue; for
    // PositiveOnDomain verdicts this is a sampled state outside the domain
    std::optional<Mat> witness;
    double witness_output_eigenvalue = 0.0;
};

namespace detail {

inline double min_eig_2x2(const Mat& m) {
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double off = std::abs(m(0, 1));
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + off * off);
}

// uniform doubles in [0,1) from the raw engine stream; distributions from
// <random> are not pinned across standard libraries, the engine itself is
inline double canonical_u01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline Mat random_pure_state(std::mt19937_64& eng) {
    // Box-Muller normals for the four real components of the ket
    double comp[4];
    for (int k = 0; k < 4; k += 2) {
        double u1 = canonical_u01(eng);
        while (u1 <= 0.0) u1 = canonical_u01(eng);
        const double u2 = canonical_u01(eng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        comp[k] = r * std::cos(2.0 * M_PI * u2);
        comp[k + 1] = r * std::sin(2.0 * M_PI * u2);
    }
    Vec psi(2);
    psi(0) = cplx(comp[0], comp[1]);
    psi(1) = cplx(comp[2], comp[3]);
    const double n = psi.norm();
    if (n < 1e-12) {
        psi(0) = 1.0;
        psi(1) = 0.0;
    } else {
        psi /= n;
    }
    return psi * psi.adjoint();
}

}  // namespace detail

// CP when the reshuffled form is positive semidefinite; otherwise the map is
// applied to every domain state and to `samples` random pure states to locate
// where positivity fails
inline Classification classify(const ChoiMatrix& b, const std::vector<Mat>& domain_states,
                               std::uint64_t seed = kDefaultSeed, int samples = 1000,
                               double cp_tol = kCpTol) {
    Classification out;
    const Spectrum spec = eig_hermitian(b);
    out.min_choi_eigenvalue = spec.values(spec.values.size() - 1);
    if (out.min_choi_eigenvalue >= -cp_tol) {
        out.verdict = MapClass::CompletelyPositive;
        return out;
    }

    const SuperMatrixA a = reshuffle(b);
    double worst = 0.0;
    for (const Mat& rho : domain_states) {
        const double lo = detail::min_eig_2x2(apply_supermatrix(a, rho));
        if (lo < worst) {
            worst = lo;
            out.witness = rho;
        }
    }
    if (worst < -kStateTol) {
        out.verdict = MapClass::NotPositiveOnDomain;
        out.witness_output_eigenvalue = worst;
        return out;
    }

    out.verdict = MapClass::PositiveOnDomain;
    out.witness.reset();
    std::mt19937_64 eng(seed);
    for (int k = 0; k < samples; ++k) {
        const Mat rho = detail::random_pure_state(eng);
        const double lo = detail::min_eig_2x2(apply_supermatrix(a, rho));
        if (lo < worst) {
            worst = lo;
            out.witness = rho;
            out.witness_output_eigenvalue = lo;
        }
    }
    return out;
}

struct KrausTerm {
    Mat op;        // sqrt(|lambda|) times the reshaped eigenvector
    int sign = 1;  // sign of the eigenvalue
    double eigenvalue = 0.0;
};

// rho' = sum_k sign_k C_k rho C_k^dag reproduces the map exactly, including
// the indefinite case where some signs are negative
inline std::vector<KrausTerm> kraus_from_choi(const ChoiMatrix& b, double drop_tol = 1e-12) {
    const Spectrum spec = eig_hermitian(b);
    std::vector<KrausTerm> out;
    for (Eigen::Index k = 0; k < spec.values.size(); ++k) {
        const double lam = spec.values(k);
        if (std::abs(lam) <= drop_tol) continue;
        KrausTerm term;
        term.eigenvalue = lam;
        term.sign = lam >= 0.0 ? 1 : -1;
        term.op = Mat(2, 2);
        const double scale = std::sqrt(std::abs(lam));
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) term.op(r, c) = scale * spec.vectors(2 * r + c, k);
        out.push_back(std::move(term));
    }
    return out;
}

struct SupermatrixReport {
    double hermiticity_pairing_residual = 0.0;  // B == B^dag in the A index pairing
    double trace_residual = 0.0;                // sum_r A[(r,r),(r',s')] == delta
    double min_choi_eigenvalue = 0.0;
    double choi_trace_residual = 0.0;  // |Tr B - 2|
    bool hermiticity_preserving = false;
    bool trace_preserving = false;
    bool completely_positive = false;
};

inline SupermatrixReport validate_supermatrix(const SuperMatrixA& a, double tol = kCpTol) {
    if (a.rows() != 4 || a.cols() != 4)
        throw BadDimsError("validate_supermatrix: A must be 4x4");
    const ChoiMatrix b = reshuffle(a);
    SupermatrixReport rep;
    rep.hermiticity_pairing_residual = hermiticity_residual(b);
    double tp = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            cplx acc = 0.0;
            for (int rp = 0; rp < 2; ++rp) acc += a(2 * rp + rp, 2 * r + s);
            tp = std::max(tp, std::abs(acc - (r == s ? cplx(1.0) : cplx(0.0))));
        }
    rep.trace_residual = tp;
    rep.hermiticity_preserving = rep.hermiticity_pairing_residual <= kHermTol * 10;
    rep.trace_preserving = rep.trace_residual <= tol;
    if (rep.hermiticity_preserving) {
        const Spectrum spec = eig_hermitian(0.5 * (b + Mat(b.adjoint())));
        rep.min_choi_eigenvalue = spec.values(spec.values.size() - 1);
        rep.completely_positive = rep.min_choi_eigenvalue >= -tol;
    }
    rep.choi_trace_residual = std::abs(b.trace() - cplx(2.0));
    return rep;
}

}  // namespace openmap
