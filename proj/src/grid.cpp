#include "arrowm/grid.hpp"

#include <algorithm>
#include <cmath>

#include "arrowm/errors.hpp"

namespace arrowm {

LogEnergyGrid::LogEnergyGrid(double e_min, double e_max, std::size_t n)
    : e_min_(e_min), e_max_(e_max) {
    if (!(e_min > 0.0) || !std::isfinite(e_min)) throw DomainError("grid: e_min must be positive");
    if (!(e_max > e_min) || !std::isfinite(e_max)) throw DomainError("grid: e_max must exceed e_min");
    if (n < 2) throw DomainError("grid: need at least two points");

    u0_ = std::log(e_min);
    du_ = (std::log(e_max) - u0_) / static_cast<double>(n - 1);
    points_.resize(n);
    weights_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        points_[i] = std::exp(u(i));
        weights_[i] = points_[i] * du_;
    }
    // endpoints exact
    points_.front() = e_min;
    points_.back() = e_max;
    weights_.front() = 0.5 * e_min * du_;
    weights_.back() = 0.5 * e_max * du_;
}

double LogEnergyGrid::spacing_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < size(); ++i) {
        const double step = u(i + 1) - u(i);
        worst = std::max(worst, std::abs(step - du_));
    }
    return worst / du_;
}

GridPtr make_log_grid(double e_min, double e_max, std::size_t n) {
    return std::make_shared<const LogEnergyGrid>(e_min, e_max, n);
}

EnergyState::EnergyState(GridPtr grid, std::vector<std::string> channels)
    : grid_(std::move(grid)), channels_(std::move(channels)) {
    if (!grid_) throw StructuralError("state: null grid");
    if (channels_.empty()) throw StructuralError("state: at least one channel required");
    amps_.assign(channels_.size(), std::vector<cplx>(grid_->size(), cplx{}));
}

EnergyState::EnergyState(GridPtr grid, std::vector<std::string> channels,
                         std::vector<std::vector<cplx>> amplitudes)
    : grid_(std::move(grid)), channels_(std::move(channels)), amps_(std::move(amplitudes)) {
    if (!grid_) throw StructuralError("state: null grid");
    if (channels_.empty()) throw StructuralError("state: at least one channel required");
    if (amps_.size() != channels_.size())
        throw StructuralError("state: amplitude rows do not match channel count");
    for (const auto& row : amps_)
        if (row.size() != grid_->size())
            throw StructuralError("state: amplitude row length does not match grid");
}

std::size_t EnergyState::channel_index(const std::string& label) const {
    const auto it = std::find(channels_.begin(), channels_.end(), label);
    if (it == channels_.end()) throw StructuralError("state: unknown channel '" + label + "'");
    return static_cast<std::size_t>(it - channels_.begin());
}

bool EnergyState::compatible_with(const EnergyState& other) const noexcept {
    return (grid_ == other.grid_ || *grid_ == *other.grid_) && channels_ == other.channels_;
}

EnergyState& EnergyState::operator*=(cplx s) {
    for (auto& row : amps_)
        for (auto& a : row) a *= s;
    return *this;
}

EnergyState& EnergyState::operator+=(const EnergyState& other) {
    if (!compatible_with(other)) throw StructuralError("state: grid or channel mismatch");
    for (std::size_t c = 0; c < amps_.size(); ++c)
        for (std::size_t i = 0; i < amps_[c].size(); ++i) amps_[c][i] += other.amps_[c][i];
    return *this;
}

EnergyState operator*(cplx s, EnergyState state) {
    state *= s;
    return state;
}

EnergyState operator+(EnergyState a, const EnergyState& b) {
    a += b;
    return a;
}

EnergyState operator-(EnergyState a, const EnergyState& b) {
    a += cplx{-1.0} * b;
    return a;
}

cplx inner_product(const EnergyState& a, const EnergyState& b) {
    if (!a.compatible_with(b)) throw StructuralError("inner_product: grid or channel mismatch");
    const auto w = a.grid().weights();
    cplx acc{};
    for (std::size_t c = 0; c < a.channel_count(); ++c) {
        const auto fa = a.channel(c);
        const auto fb = b.channel(c);
        for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * std::conj(fa[i]) * fb[i];
    }
    return acc;
}

double norm_squared(const EnergyState& s) {
    const auto w = s.grid().weights();
    double acc = 0.0;
    for (std::size_t c = 0; c < s.channel_count(); ++c) {
        const auto f = s.channel(c);
        for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * std::norm(f[i]);
    }
    return acc;
}

double norm(const EnergyState& s) { return std::sqrt(norm_squared(s)); }

EnergyState normalized(EnergyState s) {
    const double nrm = norm(s);
    if (!(nrm > 0.0)) throw DomainError("normalized: zero state");
    s *= cplx{1.0 / nrm};
    return s;
}

double boundary_mass(const EnergyState& s, std::size_t cells) {
    const auto w = s.grid().weights();
    const std::size_t n = w.size();
    cells = std::min(cells, n / 2);
    double acc = 0.0;
    for (std::size_t c = 0; c < s.channel_count(); ++c) {
        const auto f = s.channel(c);
        for (std::size_t i = 0; i < cells; ++i)
            acc += w[i] * std::norm(f[i]) + w[n - 1 - i] * std::norm(f[n - 1 - i]);
    }
    return acc;
}

}  // namespace arrowm
