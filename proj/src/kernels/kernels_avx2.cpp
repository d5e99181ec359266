#if defined(PAREMIO_HAVE_AVX2)

#include "paremio/kernels.hpp"

#include <immintrin.h>

#include <limits>

namespace paremio::kernels {

namespace {

// v in [lo, lo+span] for unsigned bytes, via min_epu8(t, span) == t.
inline __m256i in_range_epu8(__m256i v, unsigned char lo, unsigned char span) {
  const __m256i t = _mm256_sub_epi8(v, _mm256_set1_epi8(static_cast<char>(lo)));
  return _mm256_cmpeq_epi8(_mm256_min_epu8(t, _mm256_set1_epi8(static_cast<char>(span))), t);
}

} // namespace

bool ascii_fold_avx2(const unsigned char* in, std::size_t n,
                     unsigned char* out) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i space = _mm256_set1_epi8(' ');
  const __m256i case_bit = _mm256_set1_epi8(0x20);
  __m256i high_seen = zero;

  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in + i));
    const __m256i high = _mm256_cmpgt_epi8(zero, v); // bit 7 set
    const __m256i upper = in_range_epu8(v, 'A', 25);
    const __m256i lower = in_range_epu8(v, 'a', 25);
    const __m256i digit = in_range_epu8(v, '0', 9);
    const __m256i ws = _mm256_or_si256(
        in_range_epu8(v, '\t', 4), _mm256_cmpeq_epi8(v, space));

    __m256i r = _mm256_and_si256(ws, space);
    const __m256i keep = _mm256_or_si256(_mm256_or_si256(lower, digit), high);
    r = _mm256_blendv_epi8(r, v, keep);
    r = _mm256_blendv_epi8(r, _mm256_or_si256(v, case_bit), upper);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), r);
    high_seen = _mm256_or_si256(high_seen, high);
  }

  bool any_high = _mm256_movemask_epi8(high_seen) != 0;
  if (i < n)
    any_high |= ascii_fold_scalar(in + i, n - i, out + i);
  return any_high;
}

void ratio_or_nan_avx2(const double* num, const double* den, double* out,
                       std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d nan =
      _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(den + i);
    const __m256d q = _mm256_div_pd(_mm256_loadu_pd(num + i), d);
    const __m256d pos = _mm256_cmp_pd(d, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(nan, q, pos));
  }
  if (i < n)
    ratio_or_nan_scalar(num + i, den + i, out + i, n - i);
}

void nan_mask_split_avx2(const double* x, std::size_t n, double* vals,
                         double* counts) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d ord = _mm256_cmp_pd(v, v, _CMP_ORD_Q); // false on NaN
    _mm256_storeu_pd(vals + i, _mm256_and_pd(v, ord));
    _mm256_storeu_pd(counts + i, _mm256_and_pd(one, ord));
  }
  if (i < n)
    nan_mask_split_scalar(x + i, n - i, vals + i, counts + i);
}

} // namespace paremio::kernels

#endif // PAREMIO_HAVE_AVX2
