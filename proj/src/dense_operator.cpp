#include "arrowm/dense_operator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "arrowm/errors.hpp"

namespace arrowm {

cplx cauchy_kernel(double e, double e_prime) {
    // -(2 pi i)^-1 = i / (2 pi)
    return cplx{0.0, 1.0 / (2.0 * std::numbers::pi * (e - e_prime))};
}

DenseOperator::DenseOperator(GridPtr grid) : grid_(std::move(grid)) {
    if (!grid_) throw StructuralError("build_dense_m: null grid");
    const auto& g = *grid_;
    const auto n = static_cast<Eigen::Index>(g.size());
    const double du = g.du();

    // Trapezoid endpoint factor tau_i = sqrt(w_i / (E_i du)).
    std::vector<double> tau(g.size(), 1.0);
    tau.front() = tau.back() = std::sqrt(0.5);

    sqrt_weights_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) sqrt_weights_[i] = std::sqrt(g.weights()[i]);

    // sqrt(w_i w_j) / (E_i - E_j) = tau_i tau_j du / (2 sinh((u_i - u_j) / 2)); the
    // sinh form is exactly odd in (i - j), which makes the matrix exactly Hermitian.
    // Doubled alternating-point weight: 2 * i/(2 pi) = i/pi.
    std::vector<double> toeplitz(g.size(), 0.0);
    for (std::size_t k = 1; k < g.size(); k += 2)
        toeplitz[k] = du / (std::numbers::pi * 2.0 * std::sinh(0.5 * static_cast<double>(k) * du));

    matrix_ = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == j) {
                matrix_(i, i) = 0.5;
                continue;
            }
            const auto k = std::abs(i - j);
            if (k % 2 == 0) continue;
            const double mag = tau[i] * tau[j] * toeplitz[k];
            matrix_(i, j) = cplx{0.0, i > j ? mag : -mag};
        }
    }
}

double DenseOperator::hermiticity_residual() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

DenseOperator build_dense_m(GridPtr grid) { return DenseOperator(std::move(grid)); }

EnergyState apply_m_direct(const EnergyState& state, const DenseOperator& op) {
    return std::move(apply_m_direct(std::span<const EnergyState>(&state, 1), op).front());
}

std::vector<EnergyState> apply_m_direct(std::span<const EnergyState> states, const DenseOperator& op) {
    const auto n = static_cast<Eigen::Index>(op.grid().size());
    Eigen::Index columns = 0;
    for (const auto& s : states) {
        if (!(s.grid() == op.grid())) throw StructuralError("apply_m_direct: grid mismatch");
        columns += static_cast<Eigen::Index>(s.channel_count());
    }

    Eigen::MatrixXcd v(n, columns);
    Eigen::Index col = 0;
    for (const auto& s : states) {
        for (std::size_t c = 0; c < s.channel_count(); ++c, ++col) {
            const auto f = s.channel(c);
            for (Eigen::Index i = 0; i < n; ++i) v(i, col) = op.sqrt_weights_[i] * f[i];
        }
    }
    const Eigen::MatrixXcd y = op.matrix_ * v;

    std::vector<EnergyState> out;
    out.reserve(states.size());
    col = 0;
    for (const auto& s : states) {
        EnergyState r(s.grid_ptr(), s.channels());
        for (std::size_t c = 0; c < s.channel_count(); ++c, ++col) {
            auto f = r.channel(c);
            for (Eigen::Index i = 0; i < n; ++i) f[i] = y(i, col) / op.sqrt_weights_[i];
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<double> dense_spectrum(const DenseOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "dense_spectrum: eigensolver failed (n = " << op.grid().size()
            << ", hermiticity residual = " << op.hermiticity_residual() << ")";
        throw NumericalError(msg.str());
    }
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace arrowm
