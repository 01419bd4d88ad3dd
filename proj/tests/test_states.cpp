#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "openmap/states.hpp"
#include "openmap/linalg.hpp"

using namespace openmap;

namespace {

InitialStateSpec pure(std::string bits) {
    InitialStateSpec s;
    s.family = InitialStateSpec::Family::PureComputational;
    s.bits = std::move(bits);
    return s;
}

}  // namespace

TEST_CASE("computational states land on the right basis index") {
    const Mat r01 = build_initial(pure("01"));
    REQUIRE(r01.rows() == 4);
    REQUIRE(r01(1, 1) == cplx(1.0));
    REQUIRE(std::abs(r01.trace() - cplx(1.0)) == 0.0);

    const Mat r0111 = build_initial(pure("0111"));
    REQUIRE(r0111.rows() == 16);
    REQUIRE(r0111(7, 7) == cplx(1.0));

    const Mat r011 = build_initial(pure("011"));
    REQUIRE(r011.rows() == 8);
    REQUIRE(r011(3, 3) == cplx(1.0));
}

TEST_CASE("bit strings are validated") {
    REQUIRE_THROWS_AS(build_initial(pure("0")), ConfigInvalidError);
    REQUIRE_THROWS_AS(build_initial(pure("00000")), ConfigInvalidError);
    REQUIRE_THROWS_AS(build_initial(pure("02")), ConfigInvalidError);
    REQUIRE_THROWS_AS(build_initial(pure("ab")), ConfigInvalidError);
}

TEST_CASE("entangled pair builds the superposition of |01> and |10>") {
    InitialStateSpec s;
    s.family = InitialStateSpec::Family::EntangledPair;
    const Mat rho = build_initial(s);
    REQUIRE(rho.rows() == 4);
    REQUIRE(std::abs(rho(1, 1) - cplx(0.5)) < 1e-15);
    REQUIRE(std::abs(rho(2, 2) - cplx(0.5)) < 1e-15);
    REQUIRE(std::abs(rho(1, 2) - cplx(0.5)) < 1e-15);
    REQUIRE(std::abs(rho(0, 0)) == 0.0);

    // purity 1: it is a ket
    REQUIRE(std::abs((rho * rho).trace() - cplx(1.0)) < 1e-14);

    s.alpha0 = 0.6;
    s.alpha1 = 0.8;
    const Mat skew = build_initial(s);
    REQUIRE(std::abs(skew(1, 1) - cplx(0.36)) < 1e-15);
    REQUIRE(std::abs(skew(2, 2) - cplx(0.64)) < 1e-15);

    s.alpha1 = 0.9;
    REQUIRE_THROWS_AS(build_initial(s), ConfigInvalidError);
}

TEST_CASE("entangled pair with appended bath spins") {
    InitialStateSpec s;
    s.family = InitialStateSpec::Family::EntangledPair;
    s.bath_qubits = 2;
    const Mat rho = build_initial(s);
    REQUIRE(rho.rows() == 16);
    REQUIRE(s.qubits() == 4);

    // bath factor is |11><11|
    const Mat bath = partial_trace(rho, {4, 4}, {2});
    REQUIRE(std::abs(bath(3, 3) - cplx(1.0)) < 1e-14);

    // pair factor survives the trace over the bath
    InitialStateSpec bare = s;
    bare.bath_qubits = 0;
    REQUIRE(max_abs(partial_trace(rho, {4, 4}, {1}) - build_initial(bare)) < 1e-14);
}

TEST_CASE("correlated mixture weights its two components") {
    InitialStateSpec s;
    s.family = InitialStateSpec::Family::CorrelatedMixture;
    s.p = 0.3;
    const Mat rho = build_initial(s);
    REQUIRE(std::abs(rho(0, 0) - cplx(0.3)) < 1e-15);  // |00><00| carries p
    REQUIRE(std::abs(rho(2, 2) - cplx(0.7)) < 1e-15);  // |10><10| carries 1-p
    REQUIRE(max_abs(rho - Mat(rho.adjoint())) == 0.0);

    s.p = -0.1;
    REQUIRE_THROWS_AS(build_initial(s), ConfigInvalidError);
    s.p = 1.5;
    REQUIRE_THROWS_AS(build_initial(s), ConfigInvalidError);
}

TEST_CASE("tilted product carries the requested bloch vectors") {
    InitialStateSpec s;
    s.family = InitialStateSpec::Family::TiltedProduct;
    s.a1 = 0.2;
    s.a3 = 0.5;
    const Mat rho = build_initial(s);
    const Bloch b1 = bloch_of(partial_trace(rho, {2, 2}, {1}));
    const Bloch b2 = bloch_of(partial_trace(rho, {2, 2}, {2}));
    REQUIRE(std::abs(b1.x - 0.2) < 1e-14);
    REQUIRE(std::abs(b1.z - 0.5) < 1e-14);
    REQUIRE(std::abs(b2.x - 0.2) < 1e-14);  // matching tilt mirrors x
    REQUIRE(std::abs(b2.z + 0.5) < 1e-14);  // and flips z

    s.partner = InitialStateSpec::Partner::SpinDown;
    const Mat rho2 = build_initial(s);
    const Bloch down = bloch_of(partial_trace(rho2, {2, 2}, {2}));
    REQUIRE(std::abs(down.x) == 0.0);
    REQUIRE(std::abs(down.z + 1.0) < 1e-14);

    s.a1 = 0.9;
    s.a3 = 0.9;
    REQUIRE_THROWS_AS(build_initial(s), BlochNormError);
}

TEST_CASE("qubit counts follow the family and bath") {
    REQUIRE(pure("01").qubits() == 2);
    REQUIRE(pure("0111").qubits() == 4);
    InitialStateSpec s;
    s.family = InitialStateSpec::Family::TiltedProduct;
    REQUIRE(s.qubits() == 2);
    s.bath_qubits = 2;
    REQUIRE(s.qubits() == 4);
}

TEST_CASE("state presets resolve to valid states") {
    const auto& cat = state_catalogue();
    REQUIRE(cat.size() == 16);
    std::set<std::string> names;
    for (const auto& [name, spec] : cat) {
        names.insert(name);
        REQUIRE_NOTHROW(validate_density(build_initial(spec)));
    }
    REQUIRE(names.size() == cat.size());

    REQUIRE(state_preset("fig3").bits == "011");
    REQUIRE(state_preset("fig4-caption").partner == InitialStateSpec::Partner::SpinDown);
    REQUIRE(state_preset("fig4-text").partner == InitialStateSpec::Partner::MatchingTilt);
    REQUIRE(state_preset("A5-entangled-bath").bath_qubits == 2);
    REQUIRE_THROWS_AS(state_preset("nope"), ConfigInvalidError);
}
