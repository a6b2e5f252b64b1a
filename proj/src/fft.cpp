#include "arrowm/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "arrowm/errors.hpp"

namespace arrowm::fft {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on fresh
// arrays is. Plans live for the process lifetime.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        fftw_complex* scratch = fftw_alloc_complex(static_cast<std::size_t>(n));
        fftw_plan plan = fftw_plan_dft_1d(n, scratch, scratch,
                                          sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        if (plan == nullptr) throw NumericalError("fft: plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void transform(std::span<std::complex<double>> data, int sign) {
    if (data.empty()) return;
    if (sign != 1 && sign != -1) throw NumericalError("fft: sign must be +1 or -1");
    fftw_plan plan = cache().get(static_cast<int>(data.size()), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace arrowm::fft
