#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "arrowm/grid.hpp"

namespace arrowm {

/// Singular Cauchy kernel -(2 pi i)^-1 (E - E')^-1 of M, off the diagonal.
cplx cauchy_kernel(double e, double e_prime);

/// Hermitian discretization of M in weighted coordinates v_i = sqrt(w_i) f(E_i).
///
/// The action is the Plemelj split (Mf)(E) = f(E)/2 - (2 pi i)^-1 PV int f(E')/(E-E') dE'.
/// The principal value uses the alternating-point rule: nodes j with i - j odd,
/// doubled weight, so A_ij = 2 sqrt(w_i w_j) K(E_i, E_j) for odd i - j, zero for
/// even i - j != 0, and A_ii = 1/2. In u = ln E the matrix is Toeplitz away from the
/// two endpoint rows; the rule is spectrally accurate for states resolved below
/// half the u-Nyquist frequency.
class DenseOperator {
public:
    explicit DenseOperator(GridPtr grid);

    const LogEnergyGrid& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

    // max_ij |A_ij - conj(A_ji)|
    double hermiticity_residual() const;

private:
    GridPtr grid_;
    Eigen::MatrixXcd matrix_;
    Eigen::VectorXd sqrt_weights_;

    friend std::vector<EnergyState> apply_m_direct(std::span<const EnergyState>, const DenseOperator&);
};

DenseOperator build_dense_m(GridPtr grid);

EnergyState apply_m_direct(const EnergyState& state, const DenseOperator& op);
/// Applies M to several states with one matrix-matrix product.
std::vector<EnergyState> apply_m_direct(std::span<const EnergyState> states, const DenseOperator& op);

/// Ascending eigenvalues of the Hermitian matrix.
std::vector<double> dense_spectrum(const DenseOperator& op);

}  // namespace arrowm
