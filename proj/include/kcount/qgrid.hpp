#ifndef KCOUNT_QGRID_HPP
#define KCOUNT_QGRID_HPP

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <vector>

namespace kcount {

// Sentinel for g[0] = floor(log_Q(Q^0 - 1)) = -inf.
constexpr std::int64_t kFloorNegInf = std::numeric_limits<std::int64_t>::min();

// Geometric grid {Q^k} with Q = 1 + eps/(n+1) and size s = min{t >= 0 : Q^t >= 2^n}.
// Q is kept as an exact rational; everything derived from it is computed by
// exact rational comparison, never by floating-point logarithms.
struct GridParams {
  std::int64_t n = 0;
  mpq_class eps;
  mpq_class Q;
  std::int64_t s = 0;
};

// g[d] = floor(log_Q(Q^d - 1)) for d >= 1, g[0] = -inf.
// Nondecreasing on d >= 1 and g[d] < d everywhere.
struct FloorTable {
  std::vector<std::int64_t> g;

  std::int64_t size() const { return static_cast<std::int64_t>(g.size()); }
  std::int64_t operator[](std::int64_t d) const { return g[static_cast<std::size_t>(d)]; }
};

// Exact Q^e as a rational (num and den of Q are coprime, so no gcd pass).
mpq_class qpow(const mpq_class& Q, std::int64_t e);

// Compares x against Q^e exactly by cross-multiplication; returns <0, 0, >0.
int cmp_with_qpow(const mpq_class& x, const mpq_class& Q, std::int64_t e);
int cmp_with_qpow(const mpz_class& x, const mpq_class& Q, std::int64_t e);

// floor(log_Q x): the unique k with Q^k <= x < Q^{k+1}. Exponential-then-binary
// search over exact rational powers. Throws ParameterError for x <= 0.
std::int64_t floor_log_q(const GridParams& p, const mpq_class& x);

// Smallest integer t with Q^t >= x (x > 0).
std::int64_t ceil_log_q(const GridParams& p, const mpq_class& x);

// Throws ParameterError unless 0 < eps < 1, CapacityError if s overflows int64.
GridParams make_grid_params(std::int64_t n, const mpq_class& eps);

// Builds g[0..s]. Near-linear: a single candidate exponent advances with d,
// each step one exact integer comparison maintained incrementally; the tail
// where g[d] = d - 1 is detected once and filled directly.
FloorTable build_floor_table(const GridParams& p);

}  // namespace kcount

#endif  // KCOUNT_QGRID_HPP
