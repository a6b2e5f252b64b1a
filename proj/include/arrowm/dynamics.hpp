#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "arrowm/dense_operator.hpp"
#include "arrowm/grid.hpp"
#include "arrowm/mellin.hpp"

namespace arrowm {

enum class PathKind { direct, fast };

std::string to_string(PathKind p);
PathKind parse_path_kind(const std::string& s);

// Selects how M is applied: the dense oracle matrix or the diagonal Mellin path.
class MApplier {
public:
    static MApplier direct(std::shared_ptr<const DenseOperator> op);
    static MApplier fast(std::size_t padding = default_padding);

    PathKind kind() const noexcept { return kind_; }
    EnergyState apply(const EnergyState& state) const;
    std::vector<EnergyState> apply(std::span<const EnergyState> states) const;

private:
    MApplier(PathKind kind, std::shared_ptr<const DenseOperator> op, std::size_t padding)
        : kind_(kind), op_(std::move(op)), padding_(padding) {}

    PathKind kind_;
    std::shared_ptr<const DenseOperator> op_;
    std::size_t padding_;
};

/// [U(t) f](E) = exp(-i E t) f(E).
EnergyState evolve(const EnergyState& state, double t);

inline constexpr double imaginary_part_tolerance = 1e-10;
inline constexpr double monotonicity_tolerance = 1e-8;

/// ||psi||^-2 Re(psi, M psi). Throws DomainError for the zero state and
/// NumericalError if |Im(psi, M psi)| exceeds 1e-10 ||psi||^2.
double expectation_m(const EnergyState& state, const MApplier& path);
/// Same, given m_state = M state already computed.
double expectation_m(const EnergyState& state, const EnergyState& m_state, PathKind path);

struct MonotoneViolation {
    double t_from;
    double t_to;
    double increase;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<MonotoneViolation> monotone_violations;
    // Largest value[i+1] - value[i]; negative when strictly decreasing.
    double max_step_increase = 0.0;

    double initial_value() const { return values.front(); }
    double terminal_value() const { return values.back(); }
};

/// <M>(t) along U(t) psi at the given strictly increasing times t_0 >= 0.
/// Time samples are evaluated concurrently.
Trajectory trajectory(const EnergyState& state, std::span<const double> times,
                      const MApplier& path);

std::vector<double> uniform_times(double t_start, double t_end, std::size_t count);

}  // namespace arrowm
