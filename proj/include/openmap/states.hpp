#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "openmap/spin.hpp"

namespace openmap {

// Initial-state families. Qubit 1 is the impurity, qubit 2 the resonant mode;
// `bath_qubits` extra spins prepared in |1> are appended on the right.
struct InitialStateSpec {
    enum class Family { PureComputational, EntangledPair, CorrelatedMixture, TiltedProduct };
    // partner state of the tilted impurity: the mode either mirrors the tilt
    // with flipped z, or is plain spin-down
    enum class Partner { MatchingTilt, SpinDown };

    Family family = Family::PureComputational;
    std::string bits = "01";     // PureComputational: full register, e.g. "0111"
    double alpha0 = M_SQRT1_2;   // EntangledPair: alpha0|01..> + alpha1|10..>
    double alpha1 = M_SQRT1_2;
    double p = 0.5;              // CorrelatedMixture weight of the |00> component
    double a1 = 0.2;             // TiltedProduct bloch components of the impurity
    double a3 = 0.97;
    Partner partner = Partner::MatchingTilt;
    int bath_qubits = 0;         // 0, 1 or 2 appended |1> spins (non-pure families)

    int qubits() const {
        if (family == Family::PureComputational) return static_cast<int>(bits.size());
        return 2 + bath_qubits;
    }
};

inline Mat build_initial(const InitialStateSpec& spec) {
    using Family = InitialStateSpec::Family;

    auto ket_density = [](int dim, int index) {
        Mat rho = Mat::Zero(dim, dim);
        rho(index, index) = 1.0;
        return rho;
    };
    auto append_bath = [&](Mat rho, int extra) {
        for (int k = 0; k < extra; ++k) rho = kron(rho, ket_density(2, 1));
        return rho;
    };

    switch (spec.family) {
        case Family::PureComputational: {
            const int n = static_cast<int>(spec.bits.size());
            if (n < 2 || n > 4)
                throw ConfigInvalidError("initial_state.bits: register must have 2 to 4 qubits");
            int index = 0;
            for (char c : spec.bits) {
                if (c != '0' && c != '1')
                    throw ConfigInvalidError("initial_state.bits: only '0' and '1' allowed");
                index = index * 2 + (c - '0');
            }
            return ket_density(1 << n, index);
        }
        case Family::EntangledPair: {
            const double norm = spec.alpha0 * spec.alpha0 + spec.alpha1 * spec.alpha1;
            if (std::abs(norm - 1.0) > 1e-12)
                throw ConfigInvalidError("initial_state: alpha0^2 + alpha1^2 must be 1, got " +
                                         std::to_string(norm));
            Vec psi = Vec::Zero(4);
            psi(1) = spec.alpha0;  // |01>
            psi(2) = spec.alpha1;  // |10>
            return append_bath(psi * psi.adjoint(), spec.bath_qubits);
        }
        case Family::CorrelatedMixture: {
            if (spec.p < 0.0 || spec.p > 1.0)
                throw ConfigInvalidError("initial_state.p must lie in [0, 1]");
            // component I: impurity occupied, mode empty; component II: both empty
            const Mat comp_i = kron(ket_density(2, 1), ket_density(2, 0));
            const Mat comp_ii = kron(ket_density(2, 0), ket_density(2, 0));
            return append_bath((1.0 - spec.p) * comp_i + spec.p * comp_ii, spec.bath_qubits);
        }
        case Family::TiltedProduct: {
            if (spec.a1 * spec.a1 + spec.a3 * spec.a3 > 1.0 + 1e-12)
                throw BlochNormError("initial_state: a1^2 + a3^2 exceeds 1");
            const Mat rho1 = state_of_bloch({spec.a1, 0.0, spec.a3});
            const Mat rho2 = spec.partner == InitialStateSpec::Partner::MatchingTilt
                                 ? state_of_bloch({spec.a1, 0.0, -spec.a3})
                                 : state_of_bloch({0.0, 0.0, -1.0});
            return append_bath(kron(rho1, rho2), spec.bath_qubits);
        }
    }
    throw ConfigInvalidError("initial_state: unknown family");
}

// named states used by the scenario catalogue
inline const std::vector<std::pair<std::string, InitialStateSpec>>& state_catalogue() {
    static const std::vector<std::pair<std::string, InitialStateSpec>> entries = [] {
        std::vector<std::pair<std::string, InitialStateSpec>> v;
        auto pure = [](std::string bits) {
            InitialStateSpec s;
            s.family = InitialStateSpec::Family::PureComputational;
            s.bits = std::move(bits);
            return s;
        };
        v.emplace_back("A1-00", pure("00"));
        v.emplace_back("A1-01", pure("01"));
        v.emplace_back("A1-10", pure("10"));
        v.emplace_back("A1-11", pure("11"));
        v.emplace_back("fig1", pure("01"));
        v.emplace_back("fig3", pure("011"));

        InitialStateSpec bell;
        bell.family = InitialStateSpec::Family::EntangledPair;
        v.emplace_back("A2-entangled", bell);

        InitialStateSpec mix;
        mix.family = InitialStateSpec::Family::CorrelatedMixture;
        v.emplace_back("A3-correlated", mix);

        v.emplace_back("A4-0011", pure("0011"));
        v.emplace_back("A4-0111", pure("0111"));
        v.emplace_back("A4-1011", pure("1011"));
        v.emplace_back("A4-1111", pure("1111"));

        InitialStateSpec bell_bath = bell;
        bell_bath.bath_qubits = 2;
        v.emplace_back("A5-entangled-bath", bell_bath);

        InitialStateSpec mix_bath = mix;
        mix_bath.bath_qubits = 2;
        v.emplace_back("A6-correlated-bath", mix_bath);

        InitialStateSpec tilt_text;
        tilt_text.family = InitialStateSpec::Family::TiltedProduct;
        v.emplace_back("fig4-text", tilt_text);

        InitialStateSpec tilt_caption = tilt_text;
        tilt_caption.partner = InitialStateSpec::Partner::SpinDown;
        v.emplace_back("fig4-caption", tilt_caption);
        return v;
    }();
    return entries;
}

inline InitialStateSpec state_preset(const std::string& name) {
    for (const auto& [n, spec] : state_catalogue())
        if (n == name) return spec;
    throw ConfigInvalidError("unknown state preset '" + name + "'");
}

}  // namespace openmap
