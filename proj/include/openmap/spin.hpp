#pragma once

#include <utility>

#include "openmap/linalg.hpp"

namespace openmap {

enum class Axis { X, Y, Z };

inline const Mat& pauli(Axis a) {
    static const Mat sx = [] {
        Mat m(2, 2);
        m << 0, 1, 1, 0;
        return m;
    }();
    static const Mat sy = [] {
        Mat m(2, 2);
        m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
        return m;
    }();
    static const Mat sz = [] {
        Mat m(2, 2);
        m << 1, 0, 0, -1;
        return m;
    }();
    switch (a) {
        case Axis::X: return sx;
        case Axis::Y: return sy;
        default: return sz;
    }
}

inline const Mat& identity2() {
    static const Mat id = Mat::Identity(2, 2);
    return id;
}

// op acting on qubit `site` of an n-qubit register; site 1 is the leftmost
// tensor factor (most significant bit of the basis index)
inline Mat embed(const Mat& op, int site, int nqubits) {
    if (op.rows() != 2 || op.cols() != 2)
        throw BadDimsError("embed: operator must be 2x2");
    if (nqubits < 1 || site < 1 || site > nqubits)
        throw BadSiteError("embed: site " + std::to_string(site) + " outside 1.." +
                           std::to_string(nqubits));
    Mat out = (site == 1) ? op : Mat(identity2());
    for (int s = 2; s <= nqubits; ++s) out = kron(out, s == site ? op : identity2());
    return out;
}

struct Bloch {
    double x = 0.0, y = 0.0, z = 0.0;
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Bloch bloch_of(const Mat& rho) {
    if (rho.rows() != 2 || rho.cols() != 2) throw BadDimsError("bloch_of: state must be 2x2");
    Bloch b;
    b.x = (pauli(Axis::X) * rho).trace().real();
    b.y = (pauli(Axis::Y) * rho).trace().real();
    b.z = (pauli(Axis::Z) * rho).trace().real();
    return b;
}

inline Mat state_of_bloch(const Bloch& b, double tol = 1e-12) {
    if (b.norm() > 1.0 + tol)
        throw BlochNormError("state_of_bloch: |a| = " + std::to_string(b.norm()) +
                             " exceeds the Bloch ball");
    return 0.5 * (Mat(identity2()) + b.x * pauli(Axis::X) + b.y * pauli(Axis::Y) +
                  b.z * pauli(Axis::Z));
}

// ladder operators in the convention sigma_pm = sigma_x +- i sigma_y
// (no 1/2 factor, so sigma_+ sigma_- = 4 |0><0|)
inline std::pair<Mat, Mat> sigma_plus_minus() {
    Mat sp = pauli(Axis::X) + cplx(0, 1) * pauli(Axis::Y);
    Mat sm = pauli(Axis::X) - cplx(0, 1) * pauli(Axis::Y);
    return {sp, sm};
}

// hermitian within tol, unit trace, eigenvalues >= -tol
inline void validate_density(const Mat& rho, double tol = kStateTol) {
    require_square(rho, "validate_density");
    const double hres = hermiticity_residual(rho);
    if (hres > tol)
        throw StateValidationError("density matrix not hermitian, residual " +
                                   std::to_string(hres));
    const double tres = std::abs(rho.trace() - cplx(1.0, 0.0));
    if (tres > tol)
        throw StateValidationError("density matrix trace deviates from 1 by " +
                                   std::to_string(tres));
    // symmetrize before the eigensolve so the residual does not leak into eigenvalues
    const Mat sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
    if (solver.info() != Eigen::Success)
        throw InvariantError("validate_density: eigensolver failed");
    const double lo = solver.eigenvalues().minCoeff();
    if (lo < -tol)
        throw StateValidationError("density matrix has negative eigenvalue " +
                                   std::to_string(lo));
}

}  // namespace openmap
