#pragma once

// Internal spectral machinery: a thin FFTW wrapper for power-of-two complex
// transforms and a Bluestein chirp-z evaluator for bilinear-phase sums
//
//   out[k] = sum_m in[m] * exp(-i (beta + m sigma)(gamma + k delta)),
//
// which is the common shape of the Wigner momentum transform, the ambiguity
// frequency transform, and their evaluation on arbitrary target lattices.

#include <complex>
#include <span>
#include <vector>

#include "phasespace/grid.hpp"

namespace phasespace::detail {

/// Forward DFT, X[k] = sum_m x[m] e^{-2 pi i k m / N}.  N must be a power
/// of two.  The shared plan cache is serialized internally, so calls are
/// safe from multiple threads.
void fft(std::span<const complex> in, std::span<complex> out);

/// Inverse DFT including the 1/N factor.
void ifft(std::span<const complex> in, std::span<complex> out);

/// Band-limited upsampling by two: n samples on spacing d -> 2n samples on
/// spacing d/2 with the same leading point.  Even output indices reproduce
/// the input exactly.
std::vector<complex> upsample2(std::span<const complex> in);

/// Chirp-z evaluator with cached chirp tables.  One instance per
/// (M, K, sigma*delta) triple; apply() is O((M+K) log) per row.
class Czt {
 public:
  Czt(int m_in, int k_out, double sigma, double delta);

  int input_size() const { return m_; }
  int output_size() const { return k_; }
  double sigma() const { return sigma_; }
  double delta() const { return delta_; }

  /// out[k] = sum_m in[m] exp(-i (beta + m sigma)(gamma + k delta)).
  void apply(double beta, double gamma, std::span<const complex> in,
             std::span<complex> out) const;

 private:
  int m_, k_, n_;
  double sigma_, delta_;
  std::vector<complex> chirp_m_;   // e^{-i sigma delta m^2 / 2}
  std::vector<complex> chirp_k_;   // e^{-i sigma delta k^2 / 2}
  std::vector<complex> kernel_ft_; // FFT of e^{+i sigma delta l^2 / 2}
};

}  // namespace phasespace::detail
