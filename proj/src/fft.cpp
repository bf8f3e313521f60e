#include "fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace wigqdd::fft {
namespace {

// FFTW_ESTIMATE keeps plan selection deterministic, so identical inputs give
// bit-identical outputs across runs.
constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

using Key = std::tuple<int, std::size_t, std::size_t, int>;

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(bool strided, std::size_t rows, std::size_t len, Direction dir) {
    const Key key{strided ? 1 : 0, rows, len, dir == Direction::forward ? 1 : 0};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::vector<std::complex<double>> scratch(rows * len);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = nullptr;
    if (!strided) {
      const int n = static_cast<int>(len);
      plan = fftw_plan_many_dft(1, &n, static_cast<int>(rows), buf, nullptr, 1, n,
                                buf, nullptr, 1, n, sign, kFlags);
    } else {
      // `len` transforms of length `rows`, stride `len`, distance 1.
      const int n = static_cast<int>(rows);
      const int stride = static_cast<int>(len);
      plan = fftw_plan_many_dft(1, &n, stride, buf, nullptr, stride, 1, buf,
                                nullptr, stride, 1, sign, kFlags);
    }
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void rows(std::complex<double>* data, std::size_t rows, std::size_t len, Direction dir) {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(cache().get(false, rows, len, dir), buf, buf);
}

void columns(std::complex<double>* data, std::size_t rows, std::size_t cols, Direction dir) {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(cache().get(true, rows, cols, dir), buf, buf);
}

}  // namespace wigqdd::fft
