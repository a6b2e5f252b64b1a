#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arrowm/grid.hpp"

namespace arrowm {

/// m(nu) = (1 + exp(2 pi nu))^-1, evaluated without overflow.
double eigenvalue_of_frequency(double nu);
/// nu(m) = (2 pi)^-1 ln((1 - m) / m); throws DomainError unless 0 < m < 1.
double frequency_of_eigenvalue(double m);

struct EigenvalueCoordinate {
    double m;
    double nu;
    double jacobian;  // |dm/dnu| = 2 pi m (1 - m)

    static EigenvalueCoordinate from_eigenvalue(double m);
    static EigenvalueCoordinate from_frequency(double nu);
};

/// Channel-wise coefficients c_lambda(nu_k) of the diagonal representation of M.
///
/// c(nu) = (2 pi)^-1/2 du sum_i exp(i nu u_i) E_i^{1/2} f(E_i), sampled on
/// nu_k = (k - N/2) dnu, dnu = 2 pi / (N du), N = padding * n. The source is
/// zero-padded to N samples so that multipliers act as linear, not circular,
/// convolutions on the grid. Paper coefficients (g_{m,lambda}, f) equal
/// c(nu(m)) / sqrt(jacobian(m)).
struct MellinSpectrum {
    GridPtr grid;
    std::vector<std::string> channels;
    std::size_t padding = 1;
    double dnu = 0.0;
    std::vector<double> frequencies;
    std::vector<std::vector<cplx>> coefficients;

    std::size_t size() const noexcept { return frequencies.size(); }
};

inline constexpr std::size_t default_padding = 4;

MellinSpectrum forward_mellin(const EnergyState& state, std::size_t padding = default_padding);
EnergyState inverse_mellin(const MellinSpectrum& spec);
/// Checks that `spec` was produced on `grid` before inverting.
EnergyState inverse_mellin(const MellinSpectrum& spec, const GridPtr& grid);

/// Multiply every coefficient by m(nu_k).
void apply_eigenvalue_multiplier(MellinSpectrum& spec);

/// O(n log n) application of M through its eigenfunction expansion.
EnergyState apply_m_fast(const EnergyState& state, std::size_t padding = default_padding);

/// Per-channel rho_lambda(m) = |c(nu(m))|^2 / jacobian(m).
std::vector<std::vector<double>> eigen_density(const EnergyState& state,
                                               std::span<const double> m_grid);

/// Band-limited value of c_lambda at arbitrary nu (direct evaluation of the
/// Fourier sum that the padded FFT samples).
cplx mellin_coefficient(const EnergyState& state, std::size_t channel, double nu);

/// Frequency band in which m(nu), written with 17 significant digits, still
/// determines nu to ~1e-7: below the floor 1 - m falls under ~3e-10, above the
/// ceiling m approaches the double underflow range.
inline constexpr double min_representable_frequency = -3.5;
inline constexpr double max_representable_frequency = 100.0;

/// sum_lambda int_{nu_lo}^{nu_hi} m(nu)^moment |c_lambda(nu)|^2 dnu by the trapezoid
/// rule on `count` points; covers spectral mass outside the representable m range.
double frequency_mass(const EnergyState& state, double nu_lo, double nu_hi, std::size_t count,
                      int moment = 0);

/// Ascending eigenvalue grid m(nu) for nu uniformly spaced on [nu_lo, nu_hi].
std::vector<double> eigenvalue_grid(double nu_lo, double nu_hi, std::size_t count);

/// int rho dm over the sampled range, integrated by the trapezoid rule in nu
/// (rho dm = rho jacobian dnu). `moment` selects int m^moment rho dm.
double integrate_density(std::span<const double> m_grid, std::span<const double> rho,
                         int moment = 0);

struct SpectralMoments {
    double mass;   // sum_lambda int |c|^2 dnu
    double first;  // sum_lambda int m(nu) |c|^2 dnu
};
SpectralMoments spectral_moments(const MellinSpectrum& spec);

/// Samples of g_{m,lambda}(E) = E^{-1/2 - i nu(m)} / (2 pi sqrt(m(1-m))) in
/// `channel`, zero in the other channels. Not normalizable; unnormalized.
EnergyState sample_eigenfunction(double m, const std::string& channel, GridPtr grid,
                                 std::vector<std::string> channels = {"+"});

/// Tukey weights in u: 1 on the central `flat_fraction` of the grid, raised-cosine
/// tapers to 0 at both ends.
std::vector<double> raised_cosine_window(const LogEnergyGrid& grid, double flat_fraction = 0.6);
EnergyState windowed(EnergyState state, std::span<const double> window);
/// Indicator of the central `fraction` of the u-range.
std::vector<bool> interior_mask(const LogEnergyGrid& grid, double fraction);

/// Closed form of the theta-regularized completeness integral
///   (4 pi^2)^-1 (E E')^-1/2 int_0^1 dm (1-m)^{-a-1} m^a,  a = (i/2pi) ln(e^{i theta} E / E'),
/// which is (4 pi^2)^-1 (E E')^-1/2 pi / sin(-pi a) and tends to the Cauchy kernel
/// as theta -> 0+. Throws DomainError for theta <= 0 or non-positive energies.
cplx completeness_kernel_check(double e, double e_prime, double theta);

/// The same quantity by direct quadrature of the m-integral (substituted to nu).
/// Slow; meant for moderate theta (>= ~0.05).
cplx completeness_kernel_integral(double e, double e_prime, double theta);

}  // namespace arrowm
