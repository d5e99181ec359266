#include "paremio/kernels.hpp"

#include <cmath>
#include <limits>

namespace paremio::kernels {

bool ascii_fold_scalar(const unsigned char* in, std::size_t n,
                       unsigned char* out) {
  bool any_high = false;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned char c = in[i];
    if (c >= 0x80) {
      out[i] = c;
      any_high = true;
    } else if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<unsigned char>(c + 32);
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      out[i] = c;
    } else if (c == ' ' || (c >= '\t' && c <= '\r')) {
      out[i] = ' ';
    } else {
      out[i] = 0;
    }
  }
  return any_high;
}

void ratio_or_nan_scalar(const double* num, const double* den, double* out,
                         std::size_t n) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < n; ++i)
    out[i] = den[i] > 0.0 ? num[i] / den[i] : nan;
}

void nan_mask_split_scalar(const double* x, std::size_t n, double* vals,
                           double* counts) {
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(x[i])) {
      vals[i] = 0.0;
      counts[i] = 0.0;
    } else {
      vals[i] = x[i];
      counts[i] = 1.0;
    }
  }
}

} // namespace paremio::kernels
