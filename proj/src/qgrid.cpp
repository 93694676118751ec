#include "kcount/qgrid.hpp"

#include <cmath>
#include <string>

#include "kcount/errors.hpp"

namespace kcount {

namespace {

mpz_class pow_mpz(const mpz_class& base, std::int64_t e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

mpq_class qpow(const mpq_class& Q, std::int64_t e) {
  const mpz_class& a = Q.get_num();
  const mpz_class& b = Q.get_den();
  mpq_class r;
  if (e >= 0) {
    r.get_num() = pow_mpz(a, e);
    r.get_den() = pow_mpz(b, e);
  } else {
    r.get_num() = pow_mpz(b, -e);
    r.get_den() = pow_mpz(a, -e);
  }
  return r;
}

int cmp_with_qpow(const mpq_class& x, const mpq_class& Q, std::int64_t e) {
  // x = p/q vs a^e/b^e (e >= 0):  p b^e vs q a^e.
  const mpz_class& a = Q.get_num();
  const mpz_class& b = Q.get_den();
  mpz_class lhs, rhs;
  if (e >= 0) {
    lhs = x.get_num() * pow_mpz(b, e);
    rhs = x.get_den() * pow_mpz(a, e);
  } else {
    lhs = x.get_num() * pow_mpz(a, -e);
    rhs = x.get_den() * pow_mpz(b, -e);
  }
  return cmp(lhs, rhs);
}

int cmp_with_qpow(const mpz_class& x, const mpq_class& Q, std::int64_t e) {
  return cmp_with_qpow(mpq_class(x), Q, e);
}

std::int64_t floor_log_q(const GridParams& p, const mpq_class& x) {
  if (sgn(x) <= 0) throw ParameterError("floor_log_q: argument must be positive");
  int c1 = cmp(x, mpq_class(1));
  if (c1 == 0) return 0;
  if (c1 > 0) {
    // Q^lo <= x; grow hi until Q^hi > x.
    std::int64_t lo = 0, hi = 1;
    while (cmp_with_qpow(x, p.Q, hi) >= 0) {
      lo = hi;
      if (hi > (std::int64_t{1} << 62)) throw CapacityError("floor_log_q: exponent overflow");
      hi *= 2;
    }
    while (hi - lo > 1) {
      std::int64_t mid = lo + (hi - lo) / 2;
      if (cmp_with_qpow(x, p.Q, mid) >= 0) lo = mid; else hi = mid;
    }
    return lo;
  }
  // x < 1: find m = floor(log_Q(1/x)); then Q^{-m-1} < x <= Q^{-m}.
  mpq_class inv = 1 / x;
  std::int64_t m = floor_log_q(p, inv);
  return cmp_with_qpow(x, p.Q, -m) == 0 ? -m : -m - 1;
}

std::int64_t ceil_log_q(const GridParams& p, const mpq_class& x) {
  std::int64_t f = floor_log_q(p, x);
  return cmp_with_qpow(x, p.Q, f) == 0 ? f : f + 1;
}

GridParams make_grid_params(std::int64_t n, const mpq_class& eps) {
  if (n < 0) throw ParameterError("make_grid_params: n must be nonnegative");
  if (sgn(eps) <= 0 || cmp(eps, mpq_class(1)) >= 0)
    throw ParameterError("make_grid_params: eps must lie in (0,1)");
  GridParams p;
  p.n = n;
  p.eps = eps;
  p.eps.canonicalize();
  p.Q = 1 + p.eps / (n + 1);
  p.Q.canonicalize();

  // Preflight with doubles: s ~= n ln2 / ln Q. Exact search below would try to
  // materialize Q^s, so refuse pathological eps before that.
  double lnq = std::log1p(eps.get_d() / static_cast<double>(n + 1));
  double est = lnq > 0 ? static_cast<double>(n) * 0.6931471805599453 / lnq : 0.0;
  if (est > 9.0e18)
    throw CapacityError("make_grid_params: grid size s ~ " + std::to_string(est) +
                        " exceeds the 64-bit range (about " +
                        std::to_string(std::log2(est)) + " bits required)");

  if (n == 0) {
    p.s = 0;
    return p;
  }
  // s = min{t : Q^t >= 2^n}, exact.
  mpq_class two_n(mpz_class(1) << static_cast<unsigned long>(n));
  p.s = ceil_log_q(p, two_n);
  return p;
}

FloorTable build_floor_table(const GridParams& p) {
  FloorTable ft;
  ft.g.assign(static_cast<std::size_t>(p.s) + 1, kFloorNegInf);
  if (p.s < 1) return ft;

  const mpz_class& a = p.Q.get_num();
  const mpz_class& b = p.Q.get_den();

  // Tail: g[d] = d-1 exactly iff Q^{d-1} >= 1/(Q-1).
  mpq_class inv_qm1 = 1 / mpq_class(p.Q - 1);
  std::int64_t d_tail = ceil_log_q(p, inv_qm1) + 1;  // first d with g[d] = d-1

  std::int64_t k0 = floor_log_q(p, mpq_class(p.Q - 1));  // g[1], always <= 0 here
  ft.g[1] = k0;

  // Incremental two-pointer for 2 <= d < d_tail. With k' = k - k0 >= 0, the
  // advance test Q^{k+1} <= Q^d - 1 becomes X*(a/b) + Y <= Z for
  //   X = a^{k'} b^{d-k'-k0},  Y = a^{-k0} b^d,  Z = a^{d-k0},
  // all nonnegative integer powers maintained by one small mul/div per step.
  std::int64_t kprime = 0;
  mpz_class X = pow_mpz(b, 1 - k0);
  mpz_class Y = pow_mpz(a, -k0) * b;
  mpz_class Z = pow_mpz(a, 1 - k0);
  mpz_class cand, sum;

  std::int64_t d_mid = std::min(p.s, d_tail - 1);
  for (std::int64_t d = 2; d <= d_mid; ++d) {
    X *= b;
    Y *= b;
    Z *= a;
    std::int64_t k = k0 + kprime;
    while (k + 1 <= d - 1) {
      cand = X * a;
      mpz_divexact(cand.get_mpz_t(), cand.get_mpz_t(), b.get_mpz_t());
      sum = cand + Y;
      if (cmp(sum, Z) > 0) break;
      X = cand;
      ++kprime;
      ++k;
    }
    ft.g[static_cast<std::size_t>(d)] = k;
  }
  for (std::int64_t d = std::max<std::int64_t>(2, d_tail); d <= p.s; ++d)
    ft.g[static_cast<std::size_t>(d)] = d - 1;
  return ft;
}

}  // namespace kcount
