#include "chirptf/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace chirptf {

struct Fft::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  ~Plans() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
  }
};

namespace {

// FFTW planning is not thread-safe; execution with new-array execute is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const Fft::Plans> plans_for(std::size_t n) {
  static std::map<std::size_t, std::shared_ptr<const Fft::Plans>> cache;
  std::lock_guard lock(planner_mutex());
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<cplx> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int len = static_cast<int>(n);
  auto plans = std::make_shared<Fft::Plans>();
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans->fwd = fftw_plan_dft_1d(len, buf, buf, FFTW_FORWARD, flags);
  plans->inv = fftw_plan_dft_1d(len, buf, buf, FFTW_BACKWARD, flags);
  if (!plans->fwd || !plans->inv) throw Error("FFTW failed to create a plan");
  cache.emplace(n, plans);
  return plans;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw ConfigError("Fft: length must be positive");
  plans_ = plans_for(n);
}

void Fft::forward(std::span<cplx> data) const {
  if (data.size() != n_) throw GridMismatch("Fft::forward: buffer length mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->fwd, p, p);
}

void Fft::inverse(std::span<cplx> data) const {
  if (data.size() != n_) throw GridMismatch("Fft::inverse: buffer length mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->inv, p, p);
}

}  // namespace chirptf
