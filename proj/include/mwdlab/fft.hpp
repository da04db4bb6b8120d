#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mwdlab {

/// Unnormalized in-place DFT over a row-major array with the given extents.
/// sign = -1 computes sum_k x_k e^{-2 pi i jk/N}, sign = +1 the conjugate kernel.
void dft(std::span<std::complex<double>> data, std::span<const std::size_t> extents, int sign);
inline void dft(std::span<std::complex<double>> data, int sign) {
  const std::size_t n = data.size();
  dft(data, std::span<const std::size_t>(&n, 1), sign);
}

/// Strided batch of 1-d transforms of length n: element j of transform b sits
/// at data[b * dist + j * stride].
void dft_batch(std::complex<double>* data, std::size_t n, std::size_t howmany, std::size_t stride,
               std::size_t dist, int sign);

/// Smallest 2^a 3^b 5^c 7^d not below n.
std::size_t good_fft_size(std::size_t n);

}  // namespace mwdlab
