#include "wvtinfo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace wvtinfo {

namespace {

// FFTW's planner is not thread-safe; execution with new-array functions is.
// Plans are made once per (size, direction) with FFTW_ESTIMATE, which never
// depends on timing, so results are identical run to run. FFTW_UNALIGNED lets
// any std::vector buffer be passed to the same plan.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<cplx> scratch(static_cast<std::size_t>(n));
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

void execute(std::span<cplx> data, int sign) {
    if (data.empty()) return;
    fftw_plan plan = cache().get(static_cast<int>(data.size()), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void fft_forward_inplace(std::span<cplx> data) { execute(data, FFTW_FORWARD); }

void fft_backward_inplace(std::span<cplx> data) { execute(data, FFTW_BACKWARD); }

std::vector<cplx> dft(std::span<const cplx> x) {
    std::vector<cplx> out(x.begin(), x.end());
    fft_forward_inplace(out);
    return out;
}

std::vector<cplx> idft(std::span<const cplx> spectrum) {
    std::vector<cplx> out(spectrum.begin(), spectrum.end());
    fft_backward_inplace(out);
    const double scale = out.empty() ? 1.0 : 1.0 / static_cast<double>(out.size());
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace wvtinfo
