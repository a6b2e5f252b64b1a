#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "arrowm/dense_operator.hpp"
#include "arrowm/errors.hpp"
#include "arrowm/mellin.hpp"
#include "arrowm/random_states.hpp"

using namespace arrowm;
using std::numbers::pi;

namespace {

double interior_residual(const EnergyState& mg, const EnergyState& g, double m, double fraction) {
    const auto mask = interior_mask(g.grid(), fraction);
    const auto w = g.grid().weights();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!mask[i]) continue;
        num += w[i] * std::norm(mg.channel(0)[i] - m * g.channel(0)[i]);
        den += w[i] * std::norm(g.channel(0)[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("eigenvalue and frequency coordinates") {
    CHECK(eigenvalue_of_frequency(0.0) == 0.5);
    CHECK(eigenvalue_of_frequency(50.0) < 1e-130);
    CHECK(eigenvalue_of_frequency(1e4) == 0.0);
    CHECK(eigenvalue_of_frequency(-50.0) == 1.0);
    CHECK(eigenvalue_of_frequency(2.0) < eigenvalue_of_frequency(1.0));
    CHECK(frequency_of_eigenvalue(0.8) == doctest::Approx(-0.220636).epsilon(1e-6));
    CHECK(frequency_of_eigenvalue(0.8) == doctest::Approx(std::log(0.25) / (2.0 * pi)).epsilon(1e-15));
    CHECK_THROWS_AS(frequency_of_eigenvalue(0.0), DomainError);
    CHECK_THROWS_AS(frequency_of_eigenvalue(1.0), DomainError);
    CHECK_THROWS_AS(frequency_of_eigenvalue(-0.1), DomainError);
}

TEST_CASE("m(nu) and nu(m) are mutual inverses on [1e-6, 1 - 1e-6]") {
    double worst = 0.0;
    for (int k = 0; k <= 2000; ++k) {
        const double m = 1e-6 + (1.0 - 2e-6) * k / 2000.0;
        worst = std::max(worst, std::abs(eigenvalue_of_frequency(frequency_of_eigenvalue(m)) - m));
        const auto q = EigenvalueCoordinate::from_eigenvalue(m);
        CHECK(q.jacobian > 0.0);
        CHECK(q.jacobian == doctest::Approx(2.0 * pi * m * (1.0 - m)));
    }
    CHECK(worst <= 1e-14);
    const auto q = EigenvalueCoordinate::from_frequency(-0.3);
    CHECK(q.m == doctest::Approx(1.0 / (1.0 + std::exp(-0.6 * pi))));
}

TEST_CASE("E^-1/2 times a smooth window concentrates at nu = 0") {
    const auto g = make_log_grid(1e-6, 1e6, 1024);
    const auto f = windowed(sample_eigenfunction(0.5, "+", g), raised_cosine_window(*g, 0.6));
    const auto spec = forward_mellin(f);
    std::size_t best = 0;
    for (std::size_t k = 0; k < spec.size(); ++k)
        if (std::abs(spec.coefficients[0][k]) > std::abs(spec.coefficients[0][best])) best = k;
    CHECK(std::abs(spec.frequencies[best]) <= spec.dnu);
}

TEST_CASE("frequency grid layout") {
    const auto g = make_log_grid(1e-3, 1e3, 256);
    const auto spec = forward_mellin(EnergyState(g, {"+"}), 4);
    REQUIRE(spec.size() == 1024);
    CHECK(spec.dnu == doctest::Approx(2.0 * pi / (1024 * g->du())));
    CHECK(spec.frequencies.front() == doctest::Approx(-512 * spec.dnu));
    CHECK(spec.frequencies[512] == 0.0);
}

TEST_CASE("Parseval and round trip on random states") {
    std::mt19937_64 rng(21);
    const auto g = make_log_grid(1e-3, 1e3, 1024);
    SmoothStateSpec s;
    s.channels = {"+", "-"};
    for (int k = 0; k < 10; ++k) {
        const auto f = random_smooth_state(g, rng, s).state;
        for (std::size_t padding : {1u, 2u, 4u}) {
            const auto spec = forward_mellin(f, padding);
            CHECK(std::abs(spectral_moments(spec).mass - 1.0) <= 1e-8);
            CHECK(norm(inverse_mellin(spec) - f) <= 1e-12 * norm(f));
            CHECK(norm(inverse_mellin(spec, g) - f) <= 1e-12 * norm(f));
        }
    }
}

TEST_CASE("forward transform is linear") {
    std::mt19937_64 rng(23);
    const auto g = make_log_grid(1e-3, 1e3, 512);
    const auto f = random_smooth_state(g, rng).state;
    const auto h = random_smooth_state(g, rng).state;
    const cplx a(0.7, -0.2), b(-1.1, 0.4);
    const auto lhs = forward_mellin(a * f + b * h);
    const auto sf = forward_mellin(f), sh = forward_mellin(h);
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        const cplx rhs = a * sf.coefficients[0][k] + b * sh.coefficients[0][k];
        worst = std::max(worst, std::abs(lhs.coefficients[0][k] - rhs));
        scale = std::max(scale, std::abs(rhs));
    }
    CHECK(worst <= 1e-14 * scale);
}

TEST_CASE("zero spectrum inverts to the zero state") {
    const auto g = make_log_grid(1e-3, 1e3, 128);
    auto spec = forward_mellin(EnergyState(g, {"+", "-"}));
    CHECK(norm(inverse_mellin(spec)) == 0.0);
}

TEST_CASE("a single frequency spike inverts to one power law") {
    const auto g = make_log_grid(1e-2, 1e2, 256);
    auto spec = forward_mellin(EnergyState(g, {"+"}), 2);
    const std::size_t k = spec.size() / 2 + 37;
    spec.coefficients[0][k] = 1.0;
    const double nu = spec.frequencies[k];
    const auto f = inverse_mellin(spec);
    const auto e = g->points();
    const cplx ref = f.channel(0)[0] / std::pow(cplx(e[0]), cplx(-0.5, -nu));
    CHECK(std::abs(ref) > 0.0);
    for (std::size_t i = 0; i < g->size(); ++i) {
        const cplx mode = std::pow(cplx(e[i]), cplx(-0.5, -nu));
        CHECK(std::abs(f.channel(0)[i] / mode - ref) <= 1e-12 * std::abs(ref));
    }
}

TEST_CASE("inverse onto a different grid is a structural error") {
    const auto spec = forward_mellin(EnergyState(make_log_grid(1e-2, 1e2, 128), {"+"}));
    CHECK_THROWS_AS(inverse_mellin(spec, make_log_grid(1e-2, 1e2, 256)), StructuralError);
    CHECK_THROWS_AS(inverse_mellin(spec, make_log_grid(1e-2, 1e1, 128)), StructuralError);
}

TEST_CASE("multiplying twice equals multiplying by m squared") {
    std::mt19937_64 rng(29);
    const auto g = make_log_grid(1e-3, 1e3, 256);
    const auto spec = forward_mellin(random_smooth_state(g, rng).state);
    auto twice = spec;
    apply_eigenvalue_multiplier(twice);
    apply_eigenvalue_multiplier(twice);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double m = eigenvalue_of_frequency(spec.frequencies[k]);
        CHECK(twice.coefficients[0][k] == m * (m * spec.coefficients[0][k]));
    }
}

TEST_CASE("fast path reproduces a windowed eigenfunction") {
    const auto g = make_log_grid(1e-12, 1e12, 2048);
    const auto window = raised_cosine_window(*g, 0.6);
    for (double m : {0.2, 0.3, 0.5, 0.8}) {
        CAPTURE(m);
        const auto f = windowed(sample_eigenfunction(m, "+", g), window);
        CHECK(interior_residual(apply_m_fast(f), f, m, 0.3) <= 1e-3);
    }
}

TEST_CASE("fast path agrees with the dense path") {
    std::mt19937_64 rng(31);
    const auto g = make_log_grid(1e-3, 1e3, 1024);
    const DenseOperator op(g);
    for (int k = 0; k < 5; ++k) {
        const auto f = random_smooth_state(g, rng).state;
        CHECK(norm(apply_m_fast(f) - apply_m_direct(f, op)) / norm(f) <= 1e-6);
    }
}

TEST_CASE("coefficient evaluation matches FFT samples") {
    std::mt19937_64 rng(37);
    const auto g = make_log_grid(1e-3, 1e3, 512);
    const auto f = random_smooth_state(g, rng).state;
    const auto spec = forward_mellin(f, 4);
    for (std::size_t k = 100; k < spec.size(); k += 211) {
        const cplx direct = mellin_coefficient(f, 0, spec.frequencies[k]);
        CHECK(std::abs(direct - spec.coefficients[0][k]) <= 1e-12);
    }
}

TEST_CASE("eigen-density moments match norm and dense expectation") {
    std::mt19937_64 rng(41);
    const auto g = make_log_grid(1e-3, 1e3, 1024);
    const DenseOperator op(g);
    const double floor = min_representable_frequency;
    // both pieces share the nu step 0.005
    const auto m_grid = eigenvalue_grid(floor, 30.0, 6701);
    for (int k = 0; k < 3; ++k) {
        const auto f = random_smooth_state(g, rng).state;
        const auto rho = eigen_density(f, m_grid);
        const double mass = integrate_density(m_grid, rho[0], 0) + frequency_mass(f, -30.0, floor, 5301, 0);
        const double first = integrate_density(m_grid, rho[0], 1) + frequency_mass(f, -30.0, floor, 5301, 1);
        CHECK(std::abs(mass - 1.0) <= 1e-6);
        CHECK(std::abs(first - inner_product(f, apply_m_direct(f, op)).real()) <= 1e-6);
    }
}

TEST_CASE("eigen-density of a windowed eigenfunction peaks at its eigenvalue") {
    const auto g = make_log_grid(1e-12, 1e12, 2048);
    const auto f = windowed(sample_eigenfunction(0.5, "+", g), raised_cosine_window(*g, 0.6));
    std::vector<double> m_grid(999);
    for (std::size_t i = 0; i < m_grid.size(); ++i) m_grid[i] = 0.001 * static_cast<double>(i + 1);
    const auto rho = eigen_density(f, m_grid);
    const auto best = std::max_element(rho[0].begin(), rho[0].end()) - rho[0].begin();
    CHECK(std::abs(m_grid[static_cast<std::size_t>(best)] - 0.5) <= 0.001);
    CHECK_THROWS_AS(eigen_density(f, std::vector<double>{0.5, 1.0}), DomainError);
}

TEST_CASE("sampled eigenfunction at m = 0.5 has modulus E^-1/2 / pi") {
    const auto g = make_log_grid(1e-4, 1e4, 101);
    const auto f = sample_eigenfunction(0.5, "-", g, {"+", "-"});
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double e = g->points()[i];
        CHECK(std::abs(f.channel(1)[i]) == doctest::Approx(1.0 / (pi * std::sqrt(e))).epsilon(1e-13));
        CHECK(f.channel(0)[i] == cplx{});
    }
    CHECK_THROWS_AS(sample_eigenfunction(1.0, "+", g), DomainError);
    CHECK_THROWS_AS(sample_eigenfunction(0.5, "x", g), StructuralError);
}

TEST_CASE("eigenfunction phase winds by -nu per e-fold") {
    // du = 0.1, so points i and i + 10 differ by a factor e
    const auto g = make_log_grid(1.0, std::exp(4.0), 41);
    for (double m : {0.1, 0.37, 0.8}) {
        const auto f = sample_eigenfunction(m, "+", g);
        const double nu = frequency_of_eigenvalue(m);
        for (std::size_t i = 0; i + 10 < g->size(); ++i) {
            const double d = std::arg(f.channel(0)[i + 10] / f.channel(0)[i]);
            CHECK(std::remainder(d + nu, 2.0 * pi) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("windowed eigenfunctions of well separated eigenvalues are nearly orthogonal") {
    const auto g = make_log_grid(1e-12, 1e12, 2048);
    const auto window = raised_cosine_window(*g, 0.6);
    // |nu - nu'| >= 2, against a window bandwidth 2 pi / ln(e_max / e_min) ~ 0.11
    for (auto [m1, m2] : {std::pair{1e-3, 0.999}, std::pair{1e-6, 0.5}, std::pair{1e-4, 0.9999},
                          std::pair{0.5, 1.0 - 1e-6}}) {
        CAPTURE(m1);
        CAPTURE(m2);
        REQUIRE(std::abs(frequency_of_eigenvalue(m1) - frequency_of_eigenvalue(m2)) >= 2.0);
        const auto a = windowed(sample_eigenfunction(m1, "+", g), window);
        const auto b = windowed(sample_eigenfunction(m2, "+", g), window);
        CHECK(std::abs(inner_product(a, b)) <= 1e-3 * norm(a) * norm(b));
    }
}

TEST_CASE("completeness kernel tends to the Cauchy kernel") {
    const cplx target = cplx(0.0, 1.0 / (2.0 * pi));
    CHECK(std::abs(completeness_kernel_check(2.0, 1.0, 1e-4) - target) <= 1e-3);
    CHECK(std::abs(cauchy_kernel(2.0, 1.0) - target) <= 1e-16);
    double prev = std::abs(completeness_kernel_check(2.0, 1.0, 1e-2) - target);
    for (double theta : {1e-3, 1e-4, 1e-5, 1e-6}) {
        const double err = std::abs(completeness_kernel_check(2.0, 1.0, theta) - target);
        // first order in theta
        CHECK(prev / err == doctest::Approx(10.0).epsilon(0.05));
        prev = err;
    }
}

TEST_CASE("completeness kernel on the diagonal is finite and grows as theta shrinks") {
    double prev = 0.0;
    for (double theta : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const cplx v = completeness_kernel_check(1.5, 1.5, theta);
        CHECK(std::isfinite(v.real()));
        CHECK(std::isfinite(v.imag()));
        CHECK(std::abs(v) > prev);
        prev = std::abs(v);
    }
}

TEST_CASE("completeness kernel is Hermitian off the diagonal as theta vanishes") {
    for (auto [e, ep] : {std::pair{2.0, 1.0}, std::pair{0.03, 0.8}, std::pair{40.0, 7.0}}) {
        const cplx a = completeness_kernel_check(e, ep, 1e-6);
        const cplx b = completeness_kernel_check(ep, e, 1e-6);
        CHECK(std::abs(a - std::conj(b)) <= 1e-5 * std::abs(a));
    }
}

TEST_CASE("closed form agrees with the m-integral at moderate theta") {
    for (auto [e, ep] : {std::pair{2.0, 1.0}, std::pair{0.3, 0.9}}) {
        const cplx closed = completeness_kernel_check(e, ep, 0.5);
        const cplx integral = completeness_kernel_integral(e, ep, 0.5);
        CHECK(std::abs(closed - integral) <= 1e-6 * std::abs(closed));
    }
}

TEST_CASE("completeness kernel rejects invalid arguments") {
    CHECK_THROWS_AS(completeness_kernel_check(1.0, 2.0, 0.0), DomainError);
    CHECK_THROWS_AS(completeness_kernel_check(1.0, 2.0, -1e-3), DomainError);
    CHECK_THROWS_AS(completeness_kernel_check(0.0, 2.0, 1e-3), DomainError);
}

TEST_CASE("window and mask shapes") {
    const auto g = make_log_grid(1e-3, 1e3, 1001);
    const auto w = raised_cosine_window(*g, 0.6);
    CHECK(w.front() == doctest::Approx(0.0).scale(1.0));
    CHECK(w[500] == 1.0);
    CHECK(w[250] == 1.0);
    CHECK(w[100] > 0.0);
    CHECK(w[100] < 1.0);
    const auto mask = interior_mask(*g, 0.3);
    CHECK(std::count(mask.begin(), mask.end(), true) == doctest::Approx(301).epsilon(0.01));
}
