#pragma once

#include "arrowm/grid.hpp"

namespace arrowm {

/// Free Gaussian packet of mass eta, momentum centre p0 and momentum width xi0 (hbar = 1).
struct GaussianPacketParams {
    double eta = 1.0;
    double p0 = 0.64;
    double xi0 = 0.3;

    void validate() const;
};

/// phi(p) = (pi xi0^2)^-1/4 exp(-(p - p0)^2 / (2 xi0^2)), the t = 0 packet under
/// phi(p) = (2 pi)^-1/2 int dx exp(-i p x) psi(x, 0).
cplx momentum_wavefunction(const GaussianPacketParams& params, double p);

/// psi(x, t) in closed form.
cplx position_wavefunction(const GaussianPacketParams& params, double x, double t);
double position_density(const GaussianPacketParams& params, double x, double t);

/// Standard deviation and mean of |psi(x, t)|^2.
double position_mean(const GaussianPacketParams& params, double t);
double position_width(const GaussianPacketParams& params, double t);

/// Probability of |phi|^2 falling outside the two energy channels' grid window,
/// i.e. outside sqrt(2 eta e_min) <= |p| <= sqrt(2 eta e_max).
double tail_mass(const GaussianPacketParams& params, const LogEnergyGrid& grid);

/// int_{p<0} |phi(p)|^2 dp in closed form.
double negative_momentum_mass(const GaussianPacketParams& params);

inline constexpr double tail_safety_tolerance = 1e-8;

/// Two-channel energy representation f_pm(E) = (eta / 2E)^{1/4} phi(pm sqrt(2 eta E)),
/// channels {"+", "-"}. Throws ScenarioError if the tail mass exceeds `max_tail`.
EnergyState to_energy_state(const GaussianPacketParams& params, GridPtr grid,
                            double max_tail = tail_safety_tolerance);

}  // namespace arrowm
