#include "arrowm/freeparticle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "arrowm/errors.hpp"

namespace arrowm {

void GaussianPacketParams::validate() const {
    if (!(eta > 0.0)) throw DomainError("gaussian packet: eta must be positive");
    if (!(xi0 > 0.0)) throw DomainError("gaussian packet: xi0 must be positive");
    if (!std::isfinite(p0)) throw DomainError("gaussian packet: p0 must be finite");
}

cplx momentum_wavefunction(const GaussianPacketParams& params, double p) {
    const double d = p - params.p0;
    return std::pow(std::numbers::pi * params.xi0 * params.xi0, -0.25) *
           std::exp(-d * d / (2.0 * params.xi0 * params.xi0));
}

cplx position_wavefunction(const GaussianPacketParams& params, double x, double t) {
    const double eta = params.eta;
    const double xi2 = params.xi0 * params.xi0;
    const double p0 = params.p0;
    const cplx denom{eta, xi2 * t};
    // (eta^2 xi^2 / (pi denom^2))^{1/4} with Re(denom) > 0
    const cplx prefactor = std::pow(eta * eta * xi2 / std::numbers::pi, 0.25) / std::sqrt(denom);
    const cplx numer = eta * xi2 * x * x + cplx{0.0, 1.0} * p0 * (p0 * t - 2.0 * eta * x);
    return prefactor * std::exp(-numer / (2.0 * denom));
}

double position_density(const GaussianPacketParams& params, double x, double t) {
    return std::norm(position_wavefunction(params, x, t));
}

double position_mean(const GaussianPacketParams& params, double t) { return params.p0 * t / params.eta; }

double position_width(const GaussianPacketParams& params, double t) {
    const double eta = params.eta;
    const double xi2 = params.xi0 * params.xi0;
    return std::sqrt((eta * eta + xi2 * xi2 * t * t) / (2.0 * eta * eta * xi2));
}

double tail_mass(const GaussianPacketParams& params, const LogEnergyGrid& grid) {
    params.validate();
    // |phi|^2 is normal with mean p0 and standard deviation xi0 / sqrt(2).
    const double p_lo = std::sqrt(2.0 * params.eta * grid.e_min());
    const double p_hi = std::sqrt(2.0 * params.eta * grid.e_max());
    const double xi = params.xi0;
    const double p0 = params.p0;
    const double above = 0.5 * std::erfc((p_hi - p0) / xi);
    const double below = 0.5 * std::erfc((p_hi + p0) / xi);
    const double core = 0.5 * (std::erfc((p0 - p_lo) / xi) - std::erfc((p0 + p_lo) / xi));
    return above + below + std::abs(core);
}

double negative_momentum_mass(const GaussianPacketParams& params) {
    params.validate();
    return 0.5 * std::erfc(params.p0 / params.xi0);
}

EnergyState to_energy_state(const GaussianPacketParams& params, GridPtr grid, double max_tail) {
    params.validate();
    const double tail = tail_mass(params, *grid);
    if (tail > max_tail) {
        std::ostringstream msg;
        msg << "gaussian packet not tail-safe on [" << grid->e_min() << ", " << grid->e_max()
            << "]: mass " << tail << " outside the grid exceeds " << max_tail
            << "; widen the energy bounds";
        throw ScenarioError(msg.str());
    }
    EnergyState out(grid, {"+", "-"});
    auto plus = out.channel(0);
    auto minus = out.channel(1);
    const auto energies = grid->points();
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const double e = energies[i];
        const double jac = std::pow(params.eta / (2.0 * e), 0.25);
        const double p = std::sqrt(2.0 * params.eta * e);
        plus[i] = jac * momentum_wavefunction(params, p);
        minus[i] = jac * momentum_wavefunction(params, -p);
    }
    return out;
}

}  // namespace arrowm
