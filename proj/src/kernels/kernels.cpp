#include "paremio/kernels.hpp"

#include <cstdlib>

namespace paremio::kernels {

namespace {

using FoldFn = bool (*)(const unsigned char*, std::size_t, unsigned char*);
using RatioFn = void (*)(const double*, const double*, double*, std::size_t);
using SplitFn = void (*)(const double*, std::size_t, double*, double*);

struct Backend {
  const char* name;
  FoldFn fold;
  RatioFn ratio;
  SplitFn split;
};

Backend select_backend() {
  const char* force = std::getenv("PAREMIO_FORCE_SCALAR");
  const bool forced_scalar = force && *force && *force != '0';
#if defined(PAREMIO_HAVE_AVX2)
  if (!forced_scalar && __builtin_cpu_supports("avx2"))
    return {"avx2", &ascii_fold_avx2, &ratio_or_nan_avx2,
            &nan_mask_split_avx2};
#else
  (void)forced_scalar;
#endif
  return {"scalar", &ascii_fold_scalar, &ratio_or_nan_scalar,
          &nan_mask_split_scalar};
}

const Backend& backend() {
  static const Backend b = select_backend();
  return b;
}

} // namespace

bool ascii_fold(const unsigned char* in, std::size_t n, unsigned char* out) {
  return backend().fold(in, n, out);
}

void ratio_or_nan(const double* num, const double* den, double* out,
                  std::size_t n) {
  backend().ratio(num, den, out, n);
}

void nan_mask_split(const double* x, std::size_t n, double* vals,
                    double* counts) {
  backend().split(x, n, vals, counts);
}

const char* active_backend() { return backend().name; }

} // namespace paremio::kernels
