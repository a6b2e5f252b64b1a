#include "arrowm/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arrowm/errors.hpp"
#include "arrowm/fft.hpp"

namespace arrowm {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
const double inv_sqrt_two_pi = 1.0 / std::sqrt(two_pi);

std::size_t transform_length(std::size_t n, std::size_t padding) {
    std::size_t len = n * padding;
    return len % 2 == 0 ? len : len + 1;
}

void check_uniform(const LogEnergyGrid& grid) {
    if (grid.spacing_defect() > 1e-12) throw StructuralError("mellin: grid is not log-uniform");
}

}  // namespace

double eigenvalue_of_frequency(double nu) {
    if (nu > 0.0) {
        const double e = std::exp(-two_pi * nu);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(two_pi * nu));
}

double frequency_of_eigenvalue(double m) {
    if (!(m > 0.0 && m < 1.0)) throw DomainError("frequency_of_eigenvalue: m must lie in (0, 1)");
    return (std::log1p(-m) - std::log(m)) / two_pi;
}

EigenvalueCoordinate EigenvalueCoordinate::from_eigenvalue(double m) {
    const double nu = frequency_of_eigenvalue(m);
    return {m, nu, two_pi * m * (1.0 - m)};
}

EigenvalueCoordinate EigenvalueCoordinate::from_frequency(double nu) {
    const double m = eigenvalue_of_frequency(nu);
    // 1 - m without cancellation
    const double one_minus_m = eigenvalue_of_frequency(-nu);
    return {m, nu, two_pi * m * one_minus_m};
}

MellinSpectrum forward_mellin(const EnergyState& state, std::size_t padding) {
    if (padding == 0) throw DomainError("forward_mellin: padding must be >= 1");
    const auto& grid = state.grid();
    check_uniform(grid);
    const std::size_t n = grid.size();
    const std::size_t len = transform_length(n, padding);
    const double du = grid.du();

    MellinSpectrum spec;
    spec.grid = state.grid_ptr();
    spec.channels = state.channels();
    spec.padding = padding;
    spec.dnu = two_pi / (static_cast<double>(len) * du);
    spec.frequencies.resize(len);
    for (std::size_t k = 0; k < len; ++k)
        spec.frequencies[k] = (static_cast<double>(k) - static_cast<double>(len / 2)) * spec.dnu;

    const auto energies = grid.points();
    std::vector<cplx> buf(len);
    for (std::size_t c = 0; c < state.channel_count(); ++c) {
        const auto f = state.channel(c);
        std::fill(buf.begin(), buf.end(), cplx{});
        // (-1)^j shifts the DFT index origin to nu = 0 at k = len / 2.
        for (std::size_t j = 0; j < n; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            buf[j] = sign * std::sqrt(energies[j]) * f[j];
        }
        fft::transform(buf, +1);
        std::vector<cplx> coeff(len);
        for (std::size_t k = 0; k < len; ++k) {
            const cplx phase = std::polar(1.0, spec.frequencies[k] * grid.u_min());
            coeff[k] = inv_sqrt_two_pi * du * phase * buf[k];
        }
        spec.coefficients.push_back(std::move(coeff));
    }
    return spec;
}

EnergyState inverse_mellin(const MellinSpectrum& spec) {
    if (!spec.grid) throw StructuralError("inverse_mellin: spectrum carries no grid");
    const auto& grid = *spec.grid;
    const std::size_t n = grid.size();
    const std::size_t len = transform_length(n, spec.padding);
    const double du = grid.du();
    const double expected_dnu = two_pi / (static_cast<double>(len) * du);
    if (spec.frequencies.size() != len || spec.coefficients.size() != spec.channels.size() ||
        std::abs(spec.dnu - expected_dnu) > 1e-12 * expected_dnu)
        throw StructuralError("inverse_mellin: frequency grid incompatible with energy grid");
    for (const auto& row : spec.coefficients)
        if (row.size() != len) throw StructuralError("inverse_mellin: coefficient row length");

    const auto energies = grid.points();
    EnergyState out(spec.grid, spec.channels);
    std::vector<cplx> buf(len);
    for (std::size_t c = 0; c < spec.channels.size(); ++c) {
        const auto& coeff = spec.coefficients[c];
        for (std::size_t k = 0; k < len; ++k)
            buf[k] = std::polar(1.0, -spec.frequencies[k] * grid.u_min()) * coeff[k];
        fft::transform(buf, -1);
        auto f = out.channel(c);
        for (std::size_t j = 0; j < n; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            f[j] = inv_sqrt_two_pi * spec.dnu * sign * buf[j] / std::sqrt(energies[j]);
        }
    }
    return out;
}

EnergyState inverse_mellin(const MellinSpectrum& spec, const GridPtr& grid) {
    if (!grid || !spec.grid || !(*grid == *spec.grid))
        throw StructuralError("inverse_mellin: spectrum belongs to a different grid");
    return inverse_mellin(spec);
}

void apply_eigenvalue_multiplier(MellinSpectrum& spec) {
    for (auto& row : spec.coefficients)
        for (std::size_t k = 0; k < row.size(); ++k) row[k] *= eigenvalue_of_frequency(spec.frequencies[k]);
}

EnergyState apply_m_fast(const EnergyState& state, std::size_t padding) {
    auto spec = forward_mellin(state, padding);
    apply_eigenvalue_multiplier(spec);
    return inverse_mellin(spec);
}

namespace {

std::vector<cplx> log_weighted(const EnergyState& state, std::size_t channel) {
    const auto f = state.channel(channel);
    const auto energies = state.grid().points();
    std::vector<cplx> h(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) h[j] = std::sqrt(energies[j]) * f[j];
    return h;
}

cplx fourier_sum(const LogEnergyGrid& grid, std::span<const cplx> h, double nu) {
    const cplx z = std::polar(1.0, nu * grid.du());
    cplx acc{};
    for (std::size_t j = h.size(); j-- > 0;) acc = acc * z + h[j];
    return inv_sqrt_two_pi * grid.du() * std::polar(1.0, nu * grid.u_min()) * acc;
}

}  // namespace

cplx mellin_coefficient(const EnergyState& state, std::size_t channel, double nu) {
    const auto h = log_weighted(state, channel);
    return fourier_sum(state.grid(), h, nu);
}

std::vector<std::vector<double>> eigen_density(const EnergyState& state,
                                               std::span<const double> m_grid) {
    std::vector<EigenvalueCoordinate> coords;
    coords.reserve(m_grid.size());
    for (double m : m_grid) {
        if (!(m > 0.0 && m < 1.0)) throw DomainError("eigen_density: m must lie in (0, 1)");
        coords.push_back(EigenvalueCoordinate::from_eigenvalue(m));
    }
    std::vector<std::vector<double>> rho(state.channel_count(), std::vector<double>(m_grid.size()));
    for (std::size_t c = 0; c < state.channel_count(); ++c) {
        const auto h = log_weighted(state, c);
        for (std::size_t i = 0; i < coords.size(); ++i)
            rho[c][i] = std::norm(fourier_sum(state.grid(), h, coords[i].nu)) / coords[i].jacobian;
    }
    return rho;
}

std::vector<double> eigenvalue_grid(double nu_lo, double nu_hi, std::size_t count) {
    if (count < 2 || !(nu_hi > nu_lo)) throw DomainError("eigenvalue_grid: need nu_lo < nu_hi, count >= 2");
    std::vector<double> m(count);
    const double step = (nu_hi - nu_lo) / static_cast<double>(count - 1);
    // ascending m <=> descending nu
    for (std::size_t i = 0; i < count; ++i)
        m[i] = eigenvalue_of_frequency(nu_hi - static_cast<double>(i) * step);
    for (double v : m)
        if (!(v > 0.0 && v < 1.0)) throw DomainError("eigenvalue_grid: nu range leaves (0, 1) in double precision");
    return m;
}

double frequency_mass(const EnergyState& state, double nu_lo, double nu_hi, std::size_t count,
                      int moment) {
    if (count < 2 || !(nu_hi > nu_lo)) throw DomainError("frequency_mass: need nu_lo < nu_hi, count >= 2");
    const double step = (nu_hi - nu_lo) / static_cast<double>(count - 1);
    double acc = 0.0;
    for (std::size_t c = 0; c < state.channel_count(); ++c) {
        const auto h = log_weighted(state, c);
        for (std::size_t i = 0; i < count; ++i) {
            const double nu = nu_lo + static_cast<double>(i) * step;
            const double w = (i == 0 || i + 1 == count) ? 0.5 * step : step;
            acc += w * std::pow(eigenvalue_of_frequency(nu), moment) *
                   std::norm(fourier_sum(state.grid(), h, nu));
        }
    }
    return acc;
}

double integrate_density(std::span<const double> m_grid, std::span<const double> rho, int moment) {
    if (m_grid.size() != rho.size()) throw StructuralError("integrate_density: size mismatch");
    if (m_grid.size() < 2) return 0.0;
    double acc = 0.0;
    auto integrand = [&](std::size_t i, const EigenvalueCoordinate& q) {
        return rho[i] * q.jacobian * std::pow(q.m, moment);
    };
    auto prev = EigenvalueCoordinate::from_eigenvalue(m_grid[0]);
    double prev_val = integrand(0, prev);
    for (std::size_t i = 1; i < m_grid.size(); ++i) {
        const auto cur = EigenvalueCoordinate::from_eigenvalue(m_grid[i]);
        const double cur_val = integrand(i, cur);
        acc += 0.5 * (prev_val + cur_val) * std::abs(cur.nu - prev.nu);
        prev = cur;
        prev_val = cur_val;
    }
    return acc;
}

SpectralMoments spectral_moments(const MellinSpectrum& spec) {
    SpectralMoments out{0.0, 0.0};
    for (const auto& row : spec.coefficients) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            const double p = std::norm(row[k]) * spec.dnu;
            out.mass += p;
            out.first += eigenvalue_of_frequency(spec.frequencies[k]) * p;
        }
    }
    return out;
}

EnergyState sample_eigenfunction(double m, const std::string& channel, GridPtr grid,
                                 std::vector<std::string> channels) {
    const auto q = EigenvalueCoordinate::from_eigenvalue(m);
    EnergyState out(std::move(grid), std::move(channels));
    const std::size_t c = out.channel_index(channel);
    const double norm_m = 1.0 / (two_pi * std::sqrt(m * (1.0 - m)));
    auto f = out.channel(c);
    const auto& g = out.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double u = g.u(i);
        f[i] = norm_m * std::exp(-0.5 * u) * std::polar(1.0, -q.nu * u);
    }
    return out;
}

std::vector<double> raised_cosine_window(const LogEnergyGrid& grid, double flat_fraction) {
    if (!(flat_fraction >= 0.0 && flat_fraction < 1.0))
        throw DomainError("raised_cosine_window: flat fraction must lie in [0, 1)");
    const double span = grid.u_max() - grid.u_min();
    const double taper = 0.5 * (1.0 - flat_fraction);
    std::vector<double> w(grid.size(), 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = (grid.u(i) - grid.u_min()) / span;
        const double edge = std::min(x, 1.0 - x);
        if (edge < taper) w[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * edge / taper));
    }
    return w;
}

EnergyState windowed(EnergyState state, std::span<const double> window) {
    if (window.size() != state.grid().size()) throw StructuralError("windowed: window length");
    for (std::size_t c = 0; c < state.channel_count(); ++c) {
        auto f = state.channel(c);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] *= window[i];
    }
    return state;
}

std::vector<bool> interior_mask(const LogEnergyGrid& grid, double fraction) {
    const double span = grid.u_max() - grid.u_min();
    std::vector<bool> mask(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = (grid.u(i) - grid.u_min()) / span;
        mask[i] = std::abs(x - 0.5) <= 0.5 * fraction;
    }
    return mask;
}

namespace {

void check_kernel_args(double e, double e_prime, double theta) {
    if (!(theta > 0.0)) throw DomainError("completeness kernel: theta must be positive");
    if (!(e > 0.0 && e_prime > 0.0)) throw DomainError("completeness kernel: energies must be positive");
}

}  // namespace

cplx completeness_kernel_check(double e, double e_prime, double theta) {
    check_kernel_args(e, e_prime, theta);
    const double x = std::log(e / e_prime);
    // -pi a with a = (i / 2 pi) (i theta + x)
    const cplx z{0.5 * theta, -0.5 * x};
    const double prefactor = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * std::sqrt(e * e_prime));
    return prefactor * std::numbers::pi / std::sin(z);
}

cplx completeness_kernel_integral(double e, double e_prime, double theta) {
    check_kernel_args(e, e_prime, theta);
    if (theta >= two_pi) throw DomainError("completeness kernel: theta must be below 2 pi");
    const double x = std::log(e / e_prime);
    // m = m(nu) maps (0, 1) onto the real line; in nu the integrand is
    // 2 pi m(nu) exp(theta nu - i x nu), analytic for |Im nu| < 1/2, so the
    // trapezoid rule converges geometrically in the step.
    const double nu_lo = -40.0 / theta;
    const double nu_hi = 40.0 / (two_pi - theta);
    const double h = 0.02;
    const auto steps = static_cast<std::size_t>(std::ceil((nu_hi - nu_lo) / h));
    const double step = (nu_hi - nu_lo) / static_cast<double>(steps);
    cplx acc{};
    for (std::size_t k = 0; k <= steps; ++k) {
        const double nu = nu_lo + static_cast<double>(k) * step;
        const double wk = (k == 0 || k == steps) ? 0.5 : 1.0;
        acc += wk * eigenvalue_of_frequency(nu) * std::exp(theta * nu) * std::polar(1.0, -x * nu);
    }
    acc *= two_pi * step;
    const double prefactor = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * std::sqrt(e * e_prime));
    return prefactor * acc;
}

}  // namespace arrowm
