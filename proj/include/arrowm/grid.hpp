#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace arrowm {

using cplx = std::complex<double>;

/// Log-uniform discretization of [e_min, e_max] with trapezoidal weights in u = ln E.
///
/// E_i = exp(u_0 + i du); w_i = E_i du in the interior and E_i du / 2 at the
/// two endpoints, so that sum_i w_i g(E_i) approximates the integral of g dE.
class LogEnergyGrid {
public:
    LogEnergyGrid(double e_min, double e_max, std::size_t n);

    double e_min() const noexcept { return e_min_; }
    double e_max() const noexcept { return e_max_; }
    std::size_t size() const noexcept { return points_.size(); }
    double du() const noexcept { return du_; }
    double u(std::size_t i) const noexcept { return u0_ + static_cast<double>(i) * du_; }
    double u_min() const noexcept { return u0_; }
    double u_max() const noexcept { return u(size() - 1); }

    std::span<const double> points() const noexcept { return points_; }
    std::span<const double> weights() const noexcept { return weights_; }

    // Largest deviation of consecutive log spacings from du, in units of du.
    double spacing_defect() const;

    friend bool operator==(const LogEnergyGrid& a, const LogEnergyGrid& b) noexcept {
        return a.e_min_ == b.e_min_ && a.e_max_ == b.e_max_ && a.size() == b.size();
    }

private:
    double e_min_;
    double e_max_;
    double u0_;
    double du_;
    std::vector<double> points_;
    std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const LogEnergyGrid>;

GridPtr make_log_grid(double e_min, double e_max, std::size_t n);

/// Multi-channel amplitude function f_lambda(E_i) on a shared grid.
class EnergyState {
public:
    EnergyState(GridPtr grid, std::vector<std::string> channels);
    EnergyState(GridPtr grid, std::vector<std::string> channels,
                std::vector<std::vector<cplx>> amplitudes);

    const LogEnergyGrid& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    const std::vector<std::string>& channels() const noexcept { return channels_; }
    std::size_t channel_count() const noexcept { return channels_.size(); }
    std::size_t channel_index(const std::string& label) const;

    std::span<cplx> channel(std::size_t c) { return amps_.at(c); }
    std::span<const cplx> channel(std::size_t c) const { return amps_.at(c); }

    // Same grid and same ordered channel labels.
    bool compatible_with(const EnergyState& other) const noexcept;

    EnergyState& operator*=(cplx s);
    EnergyState& operator+=(const EnergyState& other);

private:
    GridPtr grid_;
    std::vector<std::string> channels_;
    std::vector<std::vector<cplx>> amps_;
};

EnergyState operator*(cplx s, EnergyState state);
EnergyState operator+(EnergyState a, const EnergyState& b);
EnergyState operator-(EnergyState a, const EnergyState& b);

/// sum_lambda sum_i w_i conj(a_lambda(E_i)) b_lambda(E_i)
cplx inner_product(const EnergyState& a, const EnergyState& b);
double norm_squared(const EnergyState& s);
double norm(const EnergyState& s);
EnergyState normalized(EnergyState s);

/// Quadrature mass carried by the first and last `cells` grid points of every channel.
double boundary_mass(const EnergyState& s, std::size_t cells);

}  // namespace arrowm
