#include "arrowm/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "arrowm/errors.hpp"

namespace arrowm {

std::string to_string(PathKind p) { return p == PathKind::direct ? "direct" : "fast"; }

PathKind parse_path_kind(const std::string& s) {
    if (s == "direct") return PathKind::direct;
    if (s == "fast") return PathKind::fast;
    throw DomainError("unknown path '" + s + "' (expected direct or fast)");
}

MApplier MApplier::direct(std::shared_ptr<const DenseOperator> op) {
    if (!op) throw StructuralError("MApplier::direct: null operator");
    return MApplier(PathKind::direct, std::move(op), 0);
}

MApplier MApplier::fast(std::size_t padding) { return MApplier(PathKind::fast, nullptr, padding); }

EnergyState MApplier::apply(const EnergyState& state) const {
    if (kind_ == PathKind::direct) return apply_m_direct(state, *op_);
    return apply_m_fast(state, padding_);
}

std::vector<EnergyState> MApplier::apply(std::span<const EnergyState> states) const {
    if (kind_ == PathKind::direct) return apply_m_direct(states, *op_);
    std::vector<EnergyState> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(apply_m_fast(s, padding_));
    return out;
}

EnergyState evolve(const EnergyState& state, double t) {
    EnergyState out = state;
    const auto energies = state.grid().points();
    std::vector<cplx> phase(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) phase[i] = std::polar(1.0, -energies[i] * t);
    for (std::size_t c = 0; c < out.channel_count(); ++c) {
        auto f = out.channel(c);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] *= phase[i];
    }
    return out;
}

double expectation_m(const EnergyState& state, const MApplier& path) {
    if (!(norm_squared(state) > 0.0)) throw DomainError("expectation_m: zero state");
    return expectation_m(state, path.apply(state), path.kind());
}

double expectation_m(const EnergyState& state, const EnergyState& m_state, PathKind path) {
    const double nrm2 = norm_squared(state);
    if (!(nrm2 > 0.0)) throw DomainError("expectation_m: zero state");
    const cplx value = inner_product(state, m_state);
    if (std::abs(value.imag()) > imaginary_part_tolerance * nrm2) {
        std::ostringstream msg;
        msg << "expectation_m: Im(psi, M psi) = " << value.imag() << " exceeds tolerance (norm^2 = "
            << nrm2 << ", path = " << to_string(path) << ")";
        throw NumericalError(msg.str());
    }
    return value.real() / nrm2;
}

std::vector<double> uniform_times(double t_start, double t_end, std::size_t count) {
    if (count < 2) throw DomainError("uniform_times: need at least two samples");
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i)
        t[i] = t_start + (t_end - t_start) * static_cast<double>(i) / static_cast<double>(count - 1);
    return t;
}

Trajectory trajectory(const EnergyState& state, std::span<const double> times, const MApplier& path) {
    if (times.empty()) throw DomainError("trajectory: no times");
    if (times.front() < 0.0) throw DomainError("trajectory: times must start at t >= 0");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i + 1] > times[i])) throw DomainError("trajectory: times must be strictly increasing");

    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.values.assign(times.size(), 0.0);

    // Samples are processed in blocks so the direct path runs as a matrix-matrix product.
    constexpr std::size_t block = 32;
    const std::size_t blocks = (times.size() + block - 1) / block;
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, blocks);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t b = next++; b < blocks; b = next++) {
            try {
                const std::size_t lo = b * block;
                const std::size_t hi = std::min(times.size(), lo + block);
                std::vector<EnergyState> evolved;
                evolved.reserve(hi - lo);
                for (std::size_t i = lo; i < hi; ++i) evolved.push_back(evolve(state, times[i]));
                const auto applied = path.apply(std::span<const EnergyState>(evolved));
                for (std::size_t i = lo; i < hi; ++i)
                    traj.values[i] = expectation_m(evolved[i - lo], applied[i - lo], path.kind());
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    if (failure) std::rethrow_exception(failure);

    traj.max_step_increase = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double delta = traj.values[i + 1] - traj.values[i];
        traj.max_step_increase = std::max(traj.max_step_increase, delta);
        if (delta > monotonicity_tolerance)
            traj.monotone_violations.push_back({times[i], times[i + 1], delta});
    }
    if (times.size() == 1) traj.max_step_increase = 0.0;
    return traj;
}

}  // namespace arrowm
