#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace bilap::detail {
namespace {

// The FFTW planner is not reentrant; executing an existing plan on new
// arrays is. Plans live for the life of the process.
std::mutex plan_mutex;

fftw_plan plan_for(int dim, int n, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard lock(plan_mutex);
  auto key = std::make_tuple(dim, n, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= std::size_t(n);
  std::vector<cplx> scratch(total);
  std::vector<int> shape(std::size_t(dim), n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int dir = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = fftw_plan_dft(dim, shape.data(), buf, buf, dir, flags);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_in_place(int dim, int n, int sign, std::span<cplx> data) {
  fftw_plan plan = plan_for(dim, n, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace bilap::detail
