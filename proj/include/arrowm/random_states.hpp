#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arrowm/grid.hpp"

namespace arrowm {

// Sums of Gaussian bumps in u = ln E with random centres, widths, carrier
// frequencies and complex amplitudes. Centres stay in the central
// `centre_fraction` of the grid and widths are capped so that the amplitude at
// the grid edges is below ~1e-13 of the peak.
struct SmoothStateSpec {
    std::size_t bumps = 3;
    double centre_fraction = 0.3;
    double min_width = 0.3;
    double max_width = 0.6;
    double max_carrier = 3.0;
    std::vector<std::string> channels = {"+"};
};

struct SmoothState {
    EnergyState state;
    double max_log_energy;  // upper edge of the support, max(centre + 6 width)
};

SmoothState random_smooth_state(const GridPtr& grid, std::mt19937_64& rng,
                                const SmoothStateSpec& spec = {});

}  // namespace arrowm
