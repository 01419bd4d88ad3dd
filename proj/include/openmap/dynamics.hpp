#pragma once

#include <cmath>
#include <vector>

#include "openmap/linalg.hpp"
#include "openmap/spin.hpp"

namespace openmap {

struct TimeGrid {
    double t_start = 0.1;
    double t_end = 0.9;
    int steps = 33;

    void validate() const {
        if (steps < 1) throw ConfigInvalidError("grid.steps must be at least 1");
        if (!(t_end >= t_start)) throw ConfigInvalidError("grid.t_end must be >= t_start");
        if (!std::isfinite(t_start) || !std::isfinite(t_end))
            throw ConfigInvalidError("grid bounds must be finite");
    }

    std::vector<double> times() const {
        validate();
        std::vector<double> out(steps);
        if (steps == 1) {
            out[0] = t_start;
            return out;
        }
        const double dt = (t_end - t_start) / (steps - 1);
        for (int k = 0; k < steps; ++k) out[k] = t_start + dt * k;
        return out;
    }

    double spacing() const {
        return steps > 1 ? (t_end - t_start) / (steps - 1) : 0.0;
    }
};

inline Mat evolve(const Mat& rho0, const Mat& h, double t) {
    validate_density(rho0);
    const Mat u = unitary_from_hamiltonian(h, t);
    return u * rho0 * u.adjoint();
}

// reduced state of the impurity (qubit 1, leftmost factor)
inline Mat reduced(const Mat& rho_full) {
    Eigen::Index d = rho_full.rows();
    int n = 0;
    while (d > 1) {
        if (d % 2 != 0) throw BadDimsError("reduced: dimension is not a power of two");
        d /= 2;
        ++n;
    }
    if (n < 1) throw BadDimsError("reduced: empty register");
    return partial_trace(rho_full, std::vector<int>(n, 2), {1});
}

struct TrajectorySample {
    double t = 0.0;
    Mat rho_s;  // 2x2 reduced state of the impurity
    Bloch bloch;
};

// unitary evolution of rho0 under h sampled on the grid; each reduced state
// is validated before it is returned
inline std::vector<TrajectorySample> trajectory(const Mat& rho0, const Mat& h,
                                                const TimeGrid& grid) {
    validate_density(rho0);
    if (rho0.rows() != h.rows())
        throw BadDimsError("trajectory: state and Hamiltonian dimensions differ");
    const Spectrum spec = eig_hermitian(h);
    std::vector<TrajectorySample> out;
    out.reserve(grid.steps);
    for (double t : grid.times()) {
        const Mat u = unitary_from_spectrum(spec, t);
        TrajectorySample s;
        s.t = t;
        s.rho_s = reduced(u * rho0 * u.adjoint());
        validate_density(s.rho_s);
        s.bloch = bloch_of(s.rho_s);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace openmap
