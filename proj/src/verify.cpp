#include "kcount/verify.hpp"

#include <mpfr.h>

namespace kcount {

bool qpow_le_exp_eps(const mpq_class& Q, std::int64_t n, const mpq_class& eps) {
  // Q^{n+1} <= e^eps  <=>  (n+1) ln Q <= eps.
  mpfr_t lhs, rhs;
  mpfr_init2(lhs, 256);
  mpfr_init2(rhs, 256);
  mpfr_set_q(lhs, Q.get_mpq_t(), MPFR_RNDU);
  mpfr_log(lhs, lhs, MPFR_RNDU);
  mpfr_mul_si(lhs, lhs, static_cast<long>(n + 1), MPFR_RNDU);
  mpfr_set_q(rhs, eps.get_mpq_t(), MPFR_RNDD);
  bool ok = mpfr_cmp(lhs, rhs) <= 0;
  mpfr_clear(lhs);
  mpfr_clear(rhs);
  return ok;
}

std::vector<mpz_class> ceil_qpow_range(const mpq_class& Q, std::int64_t n, std::int64_t s) {
  const mpz_class& a = Q.get_num();
  const mpz_class& b = Q.get_den();
  mpz_class num, den, c;
  mpz_pow_ui(num.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(n));
  std::vector<mpz_class> out;
  out.reserve(static_cast<std::size_t>(n + s + 1));
  for (std::int64_t e = -n; e <= s; ++e) {
    mpz_cdiv_q(c.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.push_back(c);
    num *= a;
    den *= b;
  }
  return out;
}

bool check_sandwich(const DpTable& tbl, const TauOracle& oracle) {
  const std::int64_t n = tbl.params.n;
  const std::int64_t s = tbl.params.s;
  std::vector<mpz_class> ceils = ceil_qpow_range(tbl.params.Q, n, s);
  for (std::int64_t i = 0; i <= n; ++i) {
    const auto& row = tbl.rows[static_cast<std::size_t>(i)];
    for (std::int64_t j = 0; j <= s; ++j) {
      ExtInt lower = oracle.tau_ceil(i, ceils[static_cast<std::size_t>(j - i + n)]);
      ExtInt upper = oracle.tau_ceil(i, ceils[static_cast<std::size_t>(j + n)]);
      const ExtInt& cell = row[static_cast<std::size_t>(j)];
      if (cmp(lower, cell) > 0 || cmp(cell, upper) > 0) return false;
    }
  }
  return true;
}

VerifyReport verify_instance(const KnapsackInstance& inst, const mpq_class& eps,
                             std::int64_t sandwich_max_n, const OracleLimits& limits) {
  VerifyReport rep;
  rep.est = approx_count(inst, eps);
  rep.z = enum_count(inst, limits);
  rep.ratio = qpow_over_count(rep.est.Q, rep.est.upper_exponent, rep.z);
  rep.upper_ok = cmp_count_vs_qpow(rep.z, rep.est.Q, rep.est.upper_exponent) <= 0;
  rep.lower_ok = cmp_count_vs_qpow(rep.z, rep.est.Q, rep.est.lower_exponent) >= 0;
  rep.ratio_bound_ok = qpow_le_exp_eps(rep.est.Q, rep.est.n, eps);
  if (inst.n() <= sandwich_max_n) {
    rep.sandwich_checked = true;
    GridParams p = make_grid_params(inst.n(), eps);
    FloorTable floors = build_floor_table(p);
    DpTable tbl = build_table(inst, p, floors);
    TauOracle oracle(inst, limits);
    rep.sandwich_ok = check_sandwich(tbl, oracle);
  }
  return rep;
}

}  // namespace kcount
