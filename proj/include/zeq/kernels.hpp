#ifndef ZEQ_KERNELS_HPP
#define ZEQ_KERNELS_HPP

#include <functional>
#include <vector>

#include <zeq/poly.hpp>

namespace zeq::kernels
{

// Product of two polynomials dropping terms of total degree >= limit
// (limit < 0: no truncation). The serial version is the reference; the
// OpenMP version splits the left operand's terms across threads and merges
// the partial sums. Results are identical since arithmetic is exact.
Poly mul_truncated_serial(const Poly &a, const Poly &b, int limit);
Poly mul_truncated_parallel(const Poly &a, const Poly &b, int limit);

// Dispatches on operand size.
Poly mul_truncated(const Poly &a, const Poly &b, int limit);

// Work size (|a| * |b|) above which mul_truncated goes parallel.
inline constexpr std::size_t kParallelMulThreshold = 4096;

// Runs f(0..n-1) serially or with an OpenMP loop; f must write only to
// its own slot of any shared output.
void for_each_index_serial(int n, const std::function<void(int)> &f);
void for_each_index_parallel(int n, const std::function<void(int)> &f);

int max_threads();

} // namespace zeq::kernels

#endif
