#pragma once

#include <cstddef>

namespace paremio::kernels {

// Byte-level and array-level inner loops used by the normalizer and the
// series math. Each kernel has a scalar reference implementation and, on
// x86-64 with AVX2, a vector variant selected once at startup. The scalar
// and vector variants are required to produce bit-identical output; the
// test suite checks this on random inputs.
//
// Setting PAREMIO_FORCE_SCALAR=1 in the environment pins the scalar
// variants regardless of CPU support.

/// Fold one buffer of text bytes for tokenization, writing exactly n bytes:
///   'A'..'Z'            -> lowercased
///   'a'..'z', '0'..'9'  -> unchanged
///   ASCII whitespace    -> ' '  (tab, LF, VT, FF, CR, space)
///   other bytes < 0x80  -> 0x00 (deleted; token halves join across them)
///   bytes >= 0x80       -> copied through untouched
/// Returns true if any byte >= 0x80 was seen, in which case the caller must
/// re-run the slower code-point-aware pass over the original input.
bool ascii_fold(const unsigned char* in, std::size_t n, unsigned char* out);

/// out[i] = num[i] / den[i] where den[i] > 0, quiet NaN otherwise.
void ratio_or_nan(const double* num, const double* den, double* out,
                  std::size_t n);

/// Split a series into NaN-masked values and 0/1 presence counts:
///   vals[i]   = isnan(x[i]) ? 0.0 : x[i]
///   counts[i] = isnan(x[i]) ? 0.0 : 1.0
void nan_mask_split(const double* x, std::size_t n, double* vals,
                    double* counts);

/// Name of the variant set in use: "avx2" or "scalar".
const char* active_backend();

// Reference implementations, exposed for the equivalence tests.
bool ascii_fold_scalar(const unsigned char* in, std::size_t n,
                       unsigned char* out);
void ratio_or_nan_scalar(const double* num, const double* den, double* out,
                         std::size_t n);
void nan_mask_split_scalar(const double* x, std::size_t n, double* vals,
                           double* counts);

#if defined(PAREMIO_HAVE_AVX2)
bool ascii_fold_avx2(const unsigned char* in, std::size_t n,
                     unsigned char* out);
void ratio_or_nan_avx2(const double* num, const double* den, double* out,
                       std::size_t n);
void nan_mask_split_avx2(const double* x, std::size_t n, double* vals,
                         double* counts);
#endif

} // namespace paremio::kernels
