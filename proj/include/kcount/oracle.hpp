#ifndef KCOUNT_ORACLE_HPP
#define KCOUNT_ORACLE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "kcount/extint.hpp"
#include "kcount/instance.hpp"
#include "kcount/qgrid.hpp"

namespace kcount {

struct OracleLimits {
  std::int64_t enum_max_n = 25;
  mpz_class dp_max_capacity = mpz_class(10000000);  // 10^7
  std::int64_t tau_max_prefix = 20;
};

// Number of subsets with weight sum <= capacity, by meet-in-the-middle
// enumeration. Refuses n above the limit.
mpz_class enum_count(const KnapsackInstance& inst, const OracleLimits& limits = {});

// Same count via the pseudo-polynomial counting DP over capacities 0..C.
// Refuses capacities above the limit.
mpz_class dp_count(const KnapsackInstance& inst, const OracleLimits& limits = {});

// Exact tau(i, a): smallest capacity admitting at least a solutions among the
// first i weights. Holds the sorted subset-sum multiset of every prefix.
class TauOracle {
 public:
  TauOracle(const KnapsackInstance& inst, const OracleLimits& limits = {});

  std::int64_t max_prefix() const { return static_cast<std::int64_t>(tables_.size()) - 1; }
  const mpz_class& weight(std::int64_t i) const;  // w_i, 1-based
  const std::vector<mpz_class>& sums(std::int64_t i) const;

  // tau(i, a) = -inf for a = 0, the ceil(a)-th smallest subset sum for
  // 0 < a <= 2^i, +inf for a > 2^i.
  ExtInt tau(std::int64_t i, const mpq_class& a) const;

  // tau(i, a) for a > 0 given ceil(a) directly (avoids materializing huge
  // rationals like Q^j at every cell of the sandwich check).
  ExtInt tau_ceil(std::int64_t i, const mpz_class& ceil_a) const;

 private:
  std::vector<mpz_class> weights_;
  std::vector<std::vector<mpz_class>> tables_;  // tables_[i]: sorted, 2^i entries
};

// Verifies the tau recurrence
//   tau(i,a) = min_alpha max(tau(i-1, alpha a), tau(i-1, (1-alpha) a) + w_i)
// by evaluating every breakpoint where either ceiling changes, plus an
// interior point of every interval between breakpoints.
bool check_tau_recurrence(const TauOracle& oracle, std::int64_t i, const mpq_class& a);

// Reference semantics for the table recurrence: exhaustively evaluates every
// candidate t in 0..j in both orientations and returns the minimum of the
// maxima. compute_cell must match this exactly.
ExtInt linear_scan_cell(const std::vector<ExtInt>& prev_row, std::int64_t j,
                        const mpz_class& w, const FloorTable& floors);

// Every cell of the next row by linear scan (one prev_row + w precompute).
std::vector<ExtInt> linear_scan_row(const std::vector<ExtInt>& prev_row,
                                    const mpz_class& w, const FloorTable& floors);

}  // namespace kcount

#endif  // KCOUNT_ORACLE_HPP
