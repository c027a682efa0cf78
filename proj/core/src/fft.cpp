#include "phasespace/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace phasespace::detail {

namespace {

// FFTW plans keyed by (size, sign).  Plans are created with FFTW_ESTIMATE so
// the chosen algorithm (and thus rounding) is deterministic across runs.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  void execute(int n, int sign, const complex* in, complex* out) {
    // FFTW planning and plan-buffer reuse are not thread-safe; one lock
    // serializes them so transform calls stay safe to issue concurrently.
    std::lock_guard<std::mutex> lock(mu_);
    Entry& e = entry(n, sign);
    std::copy(in, in + n, reinterpret_cast<complex*>(e.in));
    fftw_execute(e.plan);
    std::copy(reinterpret_cast<complex*>(e.out), reinterpret_cast<complex*>(e.out) + n, out);
  }

 private:
  struct Entry {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan plan = nullptr;
  };

  Entry& entry(int n, int sign) {
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    Entry e;
    e.in = fftw_alloc_complex(n);
    e.out = fftw_alloc_complex(n);
    e.plan = fftw_plan_dft_1d(n, e.in, e.out, sign, FFTW_ESTIMATE);
    return plans_.emplace(key, e).first->second;
  }

  std::map<std::pair<int, int>, Entry> plans_;
  std::mutex mu_;
};

bool is_pow2(size_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void fft(std::span<const complex> in, std::span<complex> out) {
  if (in.size() != out.size() || !is_pow2(in.size()))
    throw std::invalid_argument("fft: size must be a power of two and match output");
  PlanCache::instance().execute(static_cast<int>(in.size()), FFTW_FORWARD, in.data(), out.data());
}

void ifft(std::span<const complex> in, std::span<complex> out) {
  if (in.size() != out.size() || !is_pow2(in.size()))
    throw std::invalid_argument("ifft: size must be a power of two and match output");
  const int n = static_cast<int>(in.size());
  PlanCache::instance().execute(n, FFTW_BACKWARD, in.data(), out.data());
  const double scale = 1.0 / n;
  for (complex& v : out) v *= scale;
}

std::vector<complex> upsample2(std::span<const complex> in) {
  const size_t n = in.size();
  if (!is_pow2(n)) throw std::invalid_argument("upsample2: size must be a power of two");
  std::vector<complex> spec(n);
  fft(in, spec);
  // Zero-pad the spectrum; the Nyquist bin is split between +n/2 and -n/2.
  std::vector<complex> spec2(2 * n, complex{0.0, 0.0});
  const size_t half = n / 2;
  for (size_t k = 0; k < half; ++k) spec2[k] = spec[k];
  spec2[half] = 0.5 * spec[half];
  spec2[2 * n - half] = 0.5 * spec[half];
  for (size_t k = half + 1; k < n; ++k) spec2[n + k] = spec[k];
  std::vector<complex> out(2 * n);
  ifft(spec2, out);
  for (complex& v : out) v *= 2.0;  // length doubling undoes the 1/N convention
  return out;
}

namespace {

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// e^{i phi m^2 / 2} with phi*m^2 potentially in the thousands of radians;
// double trig argument reduction is accurate enough (< 1e-10) at this scale.
complex quad_phase(double phi, long long m) {
  const double arg = 0.5 * phi * static_cast<double>(m) * static_cast<double>(m);
  return complex{std::cos(arg), std::sin(arg)};
}

}  // namespace

Czt::Czt(int m_in, int k_out, double sigma, double delta)
    : m_(m_in), k_(k_out), sigma_(sigma), delta_(delta) {
  if (m_ <= 0 || k_ <= 0) throw std::invalid_argument("Czt: sizes must be positive");
  n_ = next_pow2(m_ + k_ - 1);
  const double phi = sigma_ * delta_;
  chirp_m_.resize(m_);
  for (int m = 0; m < m_; ++m) chirp_m_[m] = quad_phase(-phi, m);
  chirp_k_.resize(k_);
  for (int k = 0; k < k_; ++k) chirp_k_[k] = quad_phase(-phi, k);
  // kernel v[l] = e^{+i phi l^2 / 2} laid out circularly for l in
  // [-(M-1), K-1].
  std::vector<complex> v(n_, complex{0.0, 0.0});
  for (int l = 0; l < k_; ++l) v[l] = quad_phase(phi, l);
  for (int l = 1; l < m_; ++l) v[n_ - l] = quad_phase(phi, l);
  kernel_ft_.resize(n_);
  fft(v, kernel_ft_);
}

void Czt::apply(double beta, double gamma, std::span<const complex> in,
                std::span<complex> out) const {
  if (static_cast<int>(in.size()) != m_ || static_cast<int>(out.size()) != k_)
    throw std::invalid_argument("Czt::apply: size mismatch");
  // exp(-i (beta + m sigma)(gamma + k delta))
  //   = e^{-i beta gamma} e^{-i beta delta k} e^{-i m sigma gamma} w^{mk},
  // w = e^{-i sigma delta}, and w^{mk} is evaluated by Bluestein convolution.
  std::vector<complex> buf(n_, complex{0.0, 0.0});
  for (int m = 0; m < m_; ++m) {
    const complex pre = std::polar(1.0, -sigma_ * gamma * m);
    buf[m] = in[m] * pre * chirp_m_[m];
  }
  std::vector<complex> spec(n_);
  fft(buf, spec);
  for (int i = 0; i < n_; ++i) spec[i] *= kernel_ft_[i];
  ifft(spec, buf);
  const complex head = std::polar(1.0, -beta * gamma);
  for (int k = 0; k < k_; ++k) {
    const complex post = std::polar(1.0, -beta * delta_ * k);
    out[k] = head * post * chirp_k_[k] * buf[k];
  }
}

}  // namespace phasespace::detail
