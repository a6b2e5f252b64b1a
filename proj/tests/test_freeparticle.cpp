#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "arrowm/dynamics.hpp"
#include "arrowm/errors.hpp"
#include "arrowm/freeparticle.hpp"

using namespace arrowm;
using boost::math::quadrature::gauss_kronrod;
using std::numbers::pi;

namespace {

const GaussianPacketParams packet{1.0, 0.64, 0.3};

// (2 pi)^-1/2 int exp(-i p x) psi(x, t) dx by the trapezoid rule on a wide window.
cplx momentum_by_quadrature(const GaussianPacketParams& p, double momentum, double t) {
    const double centre = position_mean(p, t);
    const double half = 20.0 * position_width(p, t);
    const std::size_t n = 8001;
    const double dx = 2.0 * half / static_cast<double>(n - 1);
    cplx acc{};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = centre - half + static_cast<double>(i) * dx;
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        acc += w * std::polar(1.0, -momentum * x) * position_wavefunction(p, x, t);
    }
    return acc * dx / std::sqrt(2.0 * pi);
}

double position_norm(const GaussianPacketParams& p, double t) {
    const double c = position_mean(p, t), s = position_width(p, t);
    return gauss_kronrod<double, 61>::integrate([&](double x) { return position_density(p, x, t); }, c - 20 * s,
                                                c + 20 * s, 15, 1e-14);
}

}  // namespace

TEST_CASE("momentum wavefunction is the Fourier transform of the packet") {
    const double peak = std::pow(pi * packet.xi0 * packet.xi0, -0.25);
    CHECK(std::abs(momentum_wavefunction(packet, packet.p0)) == doctest::Approx(peak).epsilon(1e-14));
    CHECK(std::abs(momentum_by_quadrature(packet, packet.p0, 0.0)) == doctest::Approx(peak).epsilon(1e-10));
    for (double q : {-0.5, 0.0, 0.2, 0.64, 1.1, 1.7}) {
        CAPTURE(q);
        CHECK(std::abs(momentum_by_quadrature(packet, q, 0.0) - momentum_wavefunction(packet, q)) <= 1e-10);
    }
}

TEST_CASE("momentum profile has Gaussian shape and unit norm") {
    const double ratio = std::abs(momentum_wavefunction(packet, packet.p0 + packet.xi0)) /
                         std::abs(momentum_wavefunction(packet, packet.p0));
    CHECK(ratio == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    const double n = gauss_kronrod<double, 61>::integrate(
        [](double q) { return std::norm(momentum_wavefunction(packet, q)); }, -10.0, 10.0, 15, 1e-14);
    CHECK(n == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("position density at t = 0 is a centred unit Gaussian") {
    CHECK(position_mean(packet, 0.0) == 0.0);
    CHECK(position_norm(packet, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(position_density(packet, 0.7, 0.0) == doctest::Approx(position_density(packet, -0.7, 0.0)).epsilon(1e-14));
    CHECK(position_density(packet, 0.0, 0.0) > position_density(packet, 0.3, 0.0));
}

TEST_CASE("packet spreads and drifts with the group velocity") {
    auto variance = [](double t) {
        const double c = position_mean(packet, t), s = position_width(packet, t);
        return gauss_kronrod<double, 61>::integrate(
            [&](double x) { return (x - c) * (x - c) * position_density(packet, x, t); }, c - 20 * s, c + 20 * s, 15,
            1e-14);
    };
    double prev = variance(0.0);
    for (double t : {0.5, 2.0, 6.0, 12.0}) {
        const double v = variance(t);
        CHECK(v > prev);
        CHECK(v == doctest::Approx(position_width(packet, t) * position_width(packet, t)).epsilon(1e-10));
        prev = v;
        const double dx = 1e-3;
        double best_x = 0.0, best = -1.0;
        for (double x = -5.0; x <= 15.0; x += dx) {
            const double d = position_density(packet, x, t);
            if (d > best) best = d, best_x = x;
        }
        CHECK(std::abs(best_x - packet.p0 / packet.eta * t) <= dx);
    }
}

TEST_CASE("energy representation keeps unit norm on tail-safe bounds") {
    const auto st = to_energy_state(packet, make_log_grid(1e-18, 50.0, 4096));
    CHECK(st.channels() == std::vector<std::string>{"+", "-"});
    CHECK(std::abs(norm_squared(st) - 1.0) <= 1e-8);
}

TEST_CASE("bounds [1e-6, 50] lose low-energy mass and are rejected") {
    const auto g = make_log_grid(1e-6, 50.0, 4096);
    // |f|^2 ~ E^-1/2 near 0 in both channels, so the missing mass scales as sqrt(e_min)
    CHECK(tail_mass(packet, *g) > 1e-5);
    CHECK_THROWS_AS(to_energy_state(packet, g), ScenarioError);
    const auto st = to_energy_state(packet, g, 1e-3);
    CHECK(1.0 - norm_squared(st) == doctest::Approx(tail_mass(packet, *g)).epsilon(1e-3));
}

TEST_CASE("negative-momentum channel carries the Gaussian tail mass") {
    const double oracle = gauss_kronrod<double, 61>::integrate(
        [](double q) { return std::norm(momentum_wavefunction(packet, q)); }, -10.0, 0.0, 15, 1e-15);
    CHECK(negative_momentum_mass(packet) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(oracle == doctest::Approx(0.5 * std::erfc(packet.p0 / packet.xi0)).epsilon(1e-12));
    const auto g = make_log_grid(1e-18, 50.0, 4096);
    const auto st = to_energy_state(packet, g);
    double minus = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) minus += g->weights()[i] * std::norm(st.channel(1)[i]);
    CHECK(std::abs(minus - oracle) <= 1e-4);
}

TEST_CASE("zero mean momentum gives mirror channels") {
    const GaussianPacketParams sym{1.0, 0.0, 0.3};
    const auto st = to_energy_state(sym, make_log_grid(1e-18, 50.0, 512));
    for (std::size_t i = 0; i < st.grid().size(); ++i) CHECK(st.channel(0)[i] == st.channel(1)[i]);
}

TEST_CASE("norm chain across representations") {
    const double pos = position_norm(packet, 0.0);
    const double mom = gauss_kronrod<double, 61>::integrate(
        [](double q) { return std::norm(momentum_wavefunction(packet, q)); }, -10.0, 10.0, 15, 1e-14);
    const double energy = norm_squared(to_energy_state(packet, make_log_grid(1e-18, 50.0, 4096)));
    CHECK(std::abs(pos - 1.0) <= 1e-8);
    CHECK(std::abs(mom - 1.0) <= 1e-8);
    CHECK(std::abs(energy - 1.0) <= 1e-8);
    CHECK(std::abs(position_norm(packet, 7.0) - 1.0) <= 1e-8);
}

TEST_CASE("evolution commutes with the representation map") {
    const auto g = make_log_grid(1e-18, 50.0, 1024);
    const auto fast = MApplier::fast();
    const auto st = to_energy_state(packet, g);
    for (double t : {1.5, 4.0}) {
        // energy amplitudes of the time-t packet, from a Fourier quadrature of psi(x, t)
        EnergyState direct(g, {"+", "-"});
        for (std::size_t i = 0; i < g->size(); ++i) {
            const double e = g->points()[i];
            const double p = std::sqrt(2.0 * packet.eta * e);
            const double jac = std::pow(packet.eta / (2.0 * e), 0.25);
            direct.channel(0)[i] = jac * momentum_by_quadrature(packet, p, t);
            direct.channel(1)[i] = jac * momentum_by_quadrature(packet, -p, t);
        }
        CHECK(std::abs(expectation_m(direct, fast) - expectation_m(evolve(st, t), fast)) <= 1e-6);
    }
}

TEST_CASE("invalid packet parameters") {
    CHECK_THROWS_AS((GaussianPacketParams{0.0, 0.64, 0.3}.validate()), DomainError);
    CHECK_THROWS_AS((GaussianPacketParams{1.0, 0.64, -0.3}.validate()), DomainError);
    CHECK_NOTHROW(packet.validate());
}
