#include "arrowm/random_states.hpp"

#include <algorithm>
#include <cmath>

#include "arrowm/errors.hpp"

namespace arrowm {

SmoothState random_smooth_state(const GridPtr& grid, std::mt19937_64& rng, const SmoothStateSpec& spec) {
    const double u_lo = grid->u_min();
    const double u_hi = grid->u_max();
    const double mid = 0.5 * (u_lo + u_hi);
    const double half = 0.5 * spec.centre_fraction * (u_hi - u_lo);
    const double edge_gap = 0.5 * (u_hi - u_lo) - half;
    // 8 widths to the nearest edge keeps the edge amplitude below exp(-32).
    const double width_cap = std::min(spec.max_width, edge_gap / 8.0);
    if (!(width_cap > 0.0)) throw DomainError("random_smooth_state: grid too narrow for smooth bumps");
    const double width_floor = std::min(spec.min_width, width_cap);

    std::uniform_real_distribution<double> centre(mid - half, mid + half);
    std::uniform_real_distribution<double> width(width_floor, width_cap);
    std::uniform_real_distribution<double> carrier(-spec.max_carrier, spec.max_carrier);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    EnergyState state(grid, spec.channels);
    double max_log_energy = u_lo;
    for (std::size_t c = 0; c < state.channel_count(); ++c) {
        auto f = state.channel(c);
        for (std::size_t b = 0; b < spec.bumps; ++b) {
            const double uc = centre(rng);
            const double s = width(rng);
            const double kappa = carrier(rng);
            const cplx amp{unit(rng), unit(rng)};
            max_log_energy = std::max(max_log_energy, uc + 6.0 * s);
            for (std::size_t i = 0; i < f.size(); ++i) {
                const double u = grid->u(i);
                const double z = (u - uc) / s;
                // f = h(u) exp(-u/2) with h a Gaussian bump in u
                f[i] += amp * std::exp(-0.5 * z * z - 0.5 * u) * std::polar(1.0, kappa * u);
            }
        }
    }
    return {normalized(std::move(state)), max_log_energy};
}

}  // namespace arrowm
