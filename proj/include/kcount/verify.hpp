#ifndef KCOUNT_VERIFY_HPP
#define KCOUNT_VERIFY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "kcount/core.hpp"
#include "kcount/instance.hpp"
#include "kcount/oracle.hpp"

namespace kcount {

struct VerifyReport {
  mpz_class z;               // exact count from enumeration
  CountEstimate est;
  double ratio = 0.0;        // Z' / Z
  bool upper_ok = false;     // Z <= Q^{j'+1}, exact
  bool lower_ok = false;     // Q^{j'-n} <= Z, exact
  bool ratio_bound_ok = false;  // Q^{n+1} <= e^eps, to interval precision
  bool sandwich_checked = false;
  bool sandwich_ok = true;   // two-sided tau sandwich on every cell

  bool all_ok() const {
    return upper_ok && lower_ok && ratio_bound_ok && (!sandwich_checked || sandwich_ok);
  }
};

// Q^{n+1} <= e^eps, decided as (n+1) ln Q <= eps with 256-bit directed rounding.
bool qpow_le_exp_eps(const mpq_class& Q, std::int64_t n, const mpq_class& eps);

// ceil(Q^e) for e in [-n, s], one incremental pass; index by e + n.
std::vector<mpz_class> ceil_qpow_range(const mpq_class& Q, std::int64_t n, std::int64_t s);

// tau(i, Q^{j-i}) <= T[i][j] <= tau(i, Q^j) on every cell.
bool check_sandwich(const DpTable& tbl, const TauOracle& oracle);

// Runs the approximation and the enumeration oracle, checks the certified
// interval exactly, and (for n <= sandwich_max_n) the full tau sandwich.
VerifyReport verify_instance(const KnapsackInstance& inst, const mpq_class& eps,
                             std::int64_t sandwich_max_n = 12,
                             const OracleLimits& limits = {});

}  // namespace kcount

#endif  // KCOUNT_VERIFY_HPP
