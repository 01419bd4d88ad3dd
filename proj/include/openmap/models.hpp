#pragma once

#include <cmath>

#include "openmap/spin.hpp"

namespace openmap {

// epsilon: impurity level, varepsilon_k0: resonant mode level, v: hybridization,
// j_zz: zz coupling to the extra spins (unused by the closed topology)
struct ModelParams {
    double epsilon = -8.0;
    double varepsilon_k0 = -2.0;
    double v = 4.0;
    double j_zz = 0.0;
};

enum class Topology { Closed, BathTwoOnQubit2, BathOneOnBoth };

inline int qubit_count(Topology t) {
    switch (t) {
        case Topology::Closed: return 2;
        case Topology::BathOneOnBoth: return 3;
        default: return 4;
    }
}

// two-site hopping Hamiltonian in spin form:
//   (eps/2) sz1 + (veps/2) sz2 + (V/2)(sx1 sx2 + sy1 sy2)
inline Mat h_effective(const ModelParams& p) {
    const int n = 2;
    return 0.5 * p.epsilon * embed(pauli(Axis::Z), 1, n) +
           0.5 * p.varepsilon_k0 * embed(pauli(Axis::Z), 2, n) +
           0.5 * p.v *
               (embed(pauli(Axis::X), 1, n) * embed(pauli(Axis::X), 2, n) +
                embed(pauli(Axis::Y), 1, n) * embed(pauli(Axis::Y), 2, n));
}

// the always-on drift part of the control Hamiltonian: pure sz terms whose
// coefficients are (mean level) -/+ (half Rabi splitting)
inline Mat h_drift(const ModelParams& p) {
    const double mean = 0.5 * (p.epsilon + p.varepsilon_k0);
    const double split = std::sqrt(0.25 * (p.epsilon - p.varepsilon_k0) *
                                       (p.epsilon - p.varepsilon_k0) +
                                   p.v * p.v);
    const int n = 2;
    return 0.5 * (mean - split) * embed(pauli(Axis::Z), 1, n) +
           0.5 * (mean + split) * embed(pauli(Axis::Z), 2, n);
}

// system term plus zz couplings for the chosen layout; extra spins carry no
// local field, so they are frozen spectators of the hopping dynamics
inline Mat h_total(const ModelParams& p, Topology topo) {
    const int n = qubit_count(topo);
    if (topo == Topology::Closed) return h_effective(p);

    Mat h = kron(h_effective(p), Mat::Identity(1 << (n - 2), 1 << (n - 2)));
    auto zz = [&](int a, int b) {
        return Mat(embed(pauli(Axis::Z), a, n) * embed(pauli(Axis::Z), b, n));
    };
    if (topo == Topology::BathTwoOnQubit2)
        h += 0.25 * p.j_zz * (zz(2, 3) + zz(2, 4) + zz(3, 4));
    else
        h += 0.25 * p.j_zz * (zz(1, 3) + zz(2, 3));
    return h;
}

// number-conserving form on the Fock basis |n_b n_c> in order 00,01,10,11:
//   eps b^dag b + veps c^dag c + V (c^dag b + b^dag c)
inline Mat fermion_hamiltonian(const ModelParams& p) {
    Mat h = Mat::Zero(4, 4);
    h(1, 1) = p.varepsilon_k0;
    h(2, 2) = p.epsilon;
    h(3, 3) = p.epsilon + p.varepsilon_k0;
    h(1, 2) = p.v;
    h(2, 1) = p.v;
    return h;
}

enum class SequenceForm {
    // pulse program equal to exp(-i(theta/2)(sx sx + sy sy))
    Effective,
    // alternate pulse order; equals the effective form conjugated by
    // exp(-i pi/4 sz2), i.e. the same gate in a z-rotated frame of qubit 2
    ModeFrameRotated,
};

inline Mat compile_sequence(double theta, SequenceForm form = SequenceForm::Effective) {
    const int n = 2;
    const double q = M_PI / 4.0;
    auto rot = [&](Axis a, int site, double angle) {
        // exp(i angle sigma) = cos(angle) I + i sin(angle) sigma
        Mat m = std::cos(angle) * Mat(identity2()) +
                cplx(0, 1) * std::sin(angle) * pauli(a);
        return embed(m, site, n);
    };
    auto zz_rot = [&](double angle) {
        // exp(i angle sz1 sz2); the zz operator is diagonal with entries +1,-1,-1,+1
        Mat m = Mat::Zero(4, 4);
        const cplx even = std::exp(cplx(0, angle)), odd = std::exp(cplx(0, -angle));
        m(0, 0) = even;
        m(1, 1) = odd;
        m(2, 2) = odd;
        m(3, 3) = even;
        return m;
    };

    if (form == SequenceForm::ModeFrameRotated) {
        return rot(Axis::X, 2, q) * rot(Axis::Y, 1, -q) * zz_rot(-theta / 2) *
               rot(Axis::Y, 1, q) * rot(Axis::X, 1, q) * rot(Axis::X, 2, -q) *
               rot(Axis::Y, 2, -q) * zz_rot(theta / 2) * rot(Axis::X, 1, -q) *
               rot(Axis::Y, 2, q);
    }
    return rot(Axis::Y, 2, -q) * rot(Axis::Y, 1, -q) * zz_rot(-theta / 2) *
           rot(Axis::Y, 1, q) * rot(Axis::Y, 2, q) * rot(Axis::X, 1, q) *
           rot(Axis::X, 2, -q) * zz_rot(theta / 2) * rot(Axis::X, 1, -q) *
           rot(Axis::X, 2, q);
}

}  // namespace openmap
