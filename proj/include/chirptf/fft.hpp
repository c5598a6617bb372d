#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "chirptf/core.hpp"

namespace chirptf {

/// In-place complex DFT of a fixed length, backed by FFTW.
///
/// forward:  X[k] = sum_l x[l] exp(-j 2 pi k l / n)
/// inverse:  x[l] = sum_k X[k] exp(+j 2 pi k l / n)   (unnormalized)
///
/// Plans are created once per (length, direction) and shared; execute() is
/// safe to call concurrently on distinct buffers.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::span<cplx> data) const;
  void inverse(std::span<cplx> data) const;

  struct Plans;

 private:
  std::size_t n_;
  std::shared_ptr<const Plans> plans_;
};

}  // namespace chirptf
