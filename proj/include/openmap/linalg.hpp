#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "openmap/error.hpp"

namespace openmap {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kHermTol = 1e-12;
constexpr double kCpTol = 1e-10;
constexpr double kStateTol = 1e-10;

inline double max_abs(const Mat& m) {
    return m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const Mat& m) {
    return m.allFinite();
}

inline double hermiticity_residual(const Mat& m) {
    return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const Mat& m, double tol = kHermTol) {
    return m.rows() == m.cols() && hermiticity_residual(m) <= tol;
}

inline void require_square(const Mat& m, const std::string& who) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw BadDimsError(who + ": matrix must be square and nonempty, got " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (!all_finite(m)) throw InvariantError(who + ": matrix has non-finite entries");
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// eigenvalues sorted descending, columns of `vectors` matching
struct Spectrum {
    Eigen::VectorXd values;
    Mat vectors;
};

inline Spectrum eig_hermitian(const Mat& m, double herm_tol = kHermTol) {
    require_square(m, "eig_hermitian");
    const double res = hermiticity_residual(m);
    if (res > herm_tol)
        throw NotHermitianError("eig_hermitian: residual " + std::to_string(res) +
                                " exceeds tolerance");
    Eigen::SelfAdjointEigenSolver<Mat> solver(m);
    if (solver.info() != Eigen::Success)
        throw InvariantError("eig_hermitian: eigensolver failed to converge");
    const Eigen::Index n = m.rows();
    Spectrum s;
    s.values.resize(n);
    s.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        s.values(k) = solver.eigenvalues()(n - 1 - k);
        s.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return s;
}

// U = exp(-i h t), built from the eigendecomposition of h
inline Mat unitary_from_hamiltonian(const Mat& h, double t) {
    const Spectrum s = eig_hermitian(h);
    const Eigen::Index n = h.rows();
    Vec phases(n);
    for (Eigen::Index k = 0; k < n; ++k)
        phases(k) = std::exp(cplx(0.0, -s.values(k) * t));
    return s.vectors * phases.asDiagonal() * s.vectors.adjoint();
}

inline Mat unitary_from_spectrum(const Spectrum& s, double t) {
    const Eigen::Index n = s.values.size();
    Vec phases(n);
    for (Eigen::Index k = 0; k < n; ++k)
        phases(k) = std::exp(cplx(0.0, -s.values(k) * t));
    return s.vectors * phases.asDiagonal() * s.vectors.adjoint();
}

// Traces out every subsystem not listed in `keep` (1-based slots, leftmost
// factor is slot 1). Kept subsystems preserve their relative order.
inline Mat partial_trace(const Mat& rho, const std::vector<int>& dims,
                         const std::vector<int>& keep) {
    require_square(rho, "partial_trace");
    Eigen::Index total = 1;
    for (int d : dims) {
        if (d < 1) throw BadDimsError("partial_trace: subsystem dimension must be positive");
        total *= d;
    }
    if (total != rho.rows())
        throw BadDimsError("partial_trace: dims product " + std::to_string(total) +
                           " does not match matrix size " + std::to_string(rho.rows()));
    const int n = static_cast<int>(dims.size());
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 1 || k > n) throw BadSiteError("partial_trace: keep index out of range");
        if (kept[k - 1]) throw BadSiteError("partial_trace: duplicate keep index");
        kept[k - 1] = true;
    }

    // row-major strides over the tensor factors
    std::vector<Eigen::Index> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

    std::vector<int> keep_idx, trace_idx;
    for (int i = 0; i < n; ++i) (kept[i] ? keep_idx : trace_idx).push_back(i);

    Eigen::Index dkeep = 1, dtrace = 1;
    for (int i : keep_idx) dkeep *= dims[i];
    for (int i : trace_idx) dtrace *= dims[i];

    auto offset = [&](const std::vector<int>& slots, Eigen::Index flat) {
        Eigen::Index off = 0;
        for (int pos = static_cast<int>(slots.size()) - 1; pos >= 0; --pos) {
            const int slot = slots[pos];
            off += (flat % dims[slot]) * stride[slot];
            flat /= dims[slot];
        }
        return off;
    };

    Mat out = Mat::Zero(dkeep, dkeep);
    for (Eigen::Index i = 0; i < dkeep; ++i) {
        const Eigen::Index ri = offset(keep_idx, i);
        for (Eigen::Index j = 0; j < dkeep; ++j) {
            const Eigen::Index rj = offset(keep_idx, j);
            cplx acc = 0.0;
            for (Eigen::Index k = 0; k < dtrace; ++k) {
                const Eigen::Index rk = offset(trace_idx, k);
                acc += rho(ri + rk, rj + rk);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

}  // namespace openmap
