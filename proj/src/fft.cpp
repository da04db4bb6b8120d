#include "mwdlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "mwdlab/error.hpp"

namespace mwdlab {

namespace {

using Key = std::tuple<std::vector<int>, int, int, int, int, int>;

struct PlanCache {
  std::mutex mutex;
  std::map<Key, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

int to_int(std::size_t v) {
  if (v > static_cast<std::size_t>(1) << 30) fail(ErrorKind::GridTooLarge, "transform too long");
  return static_cast<int>(v);
}

// Planning is not thread-safe in FFTW; execution of an existing plan on new
// arrays is, provided the plan was created with FFTW_UNALIGNED.
fftw_plan get_plan(const std::vector<int>& n, int howmany, int stride, int dist, int sign,
                   fftw_complex* sample) {
  Key key{n, howmany, stride, dist, sign, 0};
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  if (auto it = c.plans.find(key); it != c.plans.end()) return it->second;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan p = fftw_plan_many_dft(static_cast<int>(n.size()), n.data(), howmany, sample, nullptr,
                                   stride, dist, sample, nullptr, stride, dist,
                                   sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, flags);
  if (p == nullptr) fail(ErrorKind::Unsupported, "FFTW could not create a plan");
  c.plans.emplace(std::move(key), p);
  return p;
}

}  // namespace

void dft(std::span<std::complex<double>> data, std::span<const std::size_t> extents, int sign) {
  if (data.empty()) return;
  std::vector<int> n;
  std::size_t total = 1;
  for (std::size_t e : extents) {
    n.push_back(to_int(e));
    total *= e;
  }
  if (total != data.size()) fail(ErrorKind::InvalidArgument, "extents do not match data size");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(get_plan(n, 1, 1, 0, sign, ptr), ptr, ptr);
}

void dft_batch(std::complex<double>* data, std::size_t n, std::size_t howmany, std::size_t stride,
               std::size_t dist, int sign) {
  if (n == 0 || howmany == 0) return;
  auto* ptr = reinterpret_cast<fftw_complex*>(data);
  fftw_plan p = get_plan({to_int(n)}, to_int(howmany), to_int(stride), to_int(dist), sign, ptr);
  fftw_execute_dft(p, ptr, ptr);
}

std::size_t good_fft_size(std::size_t n) {
  for (std::size_t m = n < 1 ? 1 : n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

}  // namespace mwdlab
