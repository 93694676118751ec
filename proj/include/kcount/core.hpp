#ifndef KCOUNT_CORE_HPP
#define KCOUNT_CORE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "kcount/extint.hpp"
#include "kcount/instance.hpp"
#include "kcount/qgrid.hpp"

namespace kcount {

// One DP row. Row monotonicity puts every +inf entry in a suffix, so the row
// is a finite prefix vals[0, inf_start) plus an implicit +inf tail.
// vals entries at or past inf_start are meaningless.
template <class S>
struct DpRow {
  std::vector<S> vals;
  std::int64_t inf_start = 0;
};

namespace detail {

inline int scalar_cmp(std::uint64_t a, std::uint64_t b) { return (a > b) - (a < b); }
inline int scalar_cmp(const mpz_class& a, const mpz_class& b) { return cmp(a, b); }

// Lightweight handle into row storage: cls is -1 (-inf), 0 (finite), +1 (+inf).
template <class S>
struct Ref {
  int cls;
  const S* p;
};

template <class S>
inline int ref_cmp(Ref<S> a, Ref<S> b) {
  if (a.cls != b.cls) return a.cls < b.cls ? -1 : 1;
  if (a.cls != 0) return 0;
  return scalar_cmp(*a.p, *b.p);
}

template <class S>
inline Ref<S> ref_max(Ref<S> a, Ref<S> b) {
  return ref_cmp(a, b) >= 0 ? a : b;
}

// Candidate evaluation for one cell T[i,j]. With alpha = Q^{t-j} the
// recurrence's index pair floors to (t, t + g[j-t]); with alpha = 1 - Q^{t-j}
// it is the mirror image. A finite negative index reads as 0 by the table convention;
// the -inf index (alpha hitting 0 or 1 exactly) contributes -inf, so that
// max() drops the corresponding arm, matching tau's base case.
template <class S>
struct CellEval {
  const DpRow<S>& prev;
  const std::vector<S>& prevw;  // prev.vals[k] + w, defined for k < prev.inf_start
  const S& w;
  const S& zero;
  const FloorTable& floors;
  std::int64_t j;

  Ref<S> read_prev(std::int64_t k) const {
    if (k < 0) return {0, &zero};
    if (k >= prev.inf_start) return {1, nullptr};
    return {0, &prev.vals[static_cast<std::size_t>(k)]};
  }
  Ref<S> read_prev_plus_w(std::int64_t k) const {
    if (k < 0) return {0, &w};
    if (k >= prev.inf_start) return {1, nullptr};
    return {0, &prevw[static_cast<std::size_t>(k)]};
  }

  // Family A: max(T[i-1,t], T[i-1,t+g[j-t]] + w). First arm nondecreasing in
  // t, second nonincreasing (t + g[j-t] = floor(log_Q(Q^j - Q^t))).
  Ref<S> inc_a(std::int64_t t) const { return read_prev(t); }
  Ref<S> dec_a(std::int64_t t) const {
    std::int64_t gd = floors[j - t];
    if (gd == kFloorNegInf) return {-1, nullptr};
    return read_prev_plus_w(t + gd);
  }

  // Family B: max(T[i-1,t+g[j-t]], T[i-1,t] + w).
  Ref<S> inc_b(std::int64_t t) const { return read_prev_plus_w(t); }
  Ref<S> dec_b(std::int64_t t) const {
    std::int64_t gd = floors[j - t];
    if (gd == kFloorNegInf) return {-1, nullptr};
    return read_prev(t + gd);
  }

  // Family C: max(T[i-1,t-1], T[i-1,t+g[j-t]] + w). Covers the open intervals
  // of alpha just below each point of the first breakpoint family, where the
  // first floor still sits one lower while the second floor has already moved:
  // neither breakpoint family evaluates that pair. Here the t = j sentinel is
  // a small positive 1-alpha (index finite negative), so it reads as w, not as
  // a dropped arm.
  Ref<S> inc_c(std::int64_t t) const { return read_prev(t - 1); }
  Ref<S> dec_c(std::int64_t t) const {
    std::int64_t gd = floors[j - t];
    if (gd == kFloorNegInf) return {0, &w};
    return read_prev_plus_w(t + gd);
  }
};

// Minimizes max(inc(t), dec(t)) over t in [0, j] for inc nondecreasing and
// dec nonincreasing: binary-search the first t with inc >= dec, then evaluate
// that position, its neighbors, and both boundaries. Plateaus and the
// floor-induced ties are absorbed by the neighbor evaluations; exact
// equivalence with the linear scan is enforced by tests.
template <class S, class Inc, class Dec>
Ref<S> minimize_family(std::int64_t j, Inc inc, Dec dec) {
  std::int64_t lo = 0, hi = j;  // inc(j) >= dec(j) always (dec(j) = -inf)
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (ref_cmp(inc(mid), dec(mid)) >= 0) hi = mid; else lo = mid + 1;
  }
  Ref<S> best{1, nullptr};
  const std::int64_t cands[5] = {lo - 1, lo, lo + 1, 0, j};
  for (std::int64_t t : cands) {
    if (t < 0 || t > j) continue;
    Ref<S> v = ref_max(inc(t), dec(t));
    if (ref_cmp(v, best) < 0) best = v;
  }
  return best;
}

template <class S>
Ref<S> compute_cell_kernel(const CellEval<S>& ev, std::int64_t j) {
  CellEval<S> e = ev;
  e.j = j;
  Ref<S> a = minimize_family<S>(
      j, [&](std::int64_t t) { return e.inc_a(t); },
      [&](std::int64_t t) { return e.dec_a(t); });
  Ref<S> b = minimize_family<S>(
      j, [&](std::int64_t t) { return e.inc_b(t); },
      [&](std::int64_t t) { return e.dec_b(t); });
  Ref<S> c = minimize_family<S>(
      j, [&](std::int64_t t) { return e.inc_c(t); },
      [&](std::int64_t t) { return e.dec_c(t); });
  Ref<S> best = ref_cmp(a, b) <= 0 ? a : b;
  return ref_cmp(best, c) <= 0 ? best : c;
}

}  // namespace detail

// Full-table DP (every row retained as extended integers). Intended for
// desk-scale runs and the sandwich checks; approx_count uses the two-row path.
struct DpTable {
  GridParams params;
  FloorTable floors;
  std::vector<std::vector<ExtInt>> rows;  // (n+1) x (s+1)
};

// One cell of the recurrence. prev_row must be monotone nondecreasing.
ExtInt compute_cell(const std::vector<ExtInt>& prev_row, std::int64_t j,
                    const mpz_class& w, const FloorTable& floors);

DpTable build_table(const KnapsackInstance& inst, const GridParams& p,
                    const FloorTable& floors);

// Output of the approximation: Z' = Q^{j'+1} and the certified interval
// [Q^{j'-n}, Q^{j'+1}] containing the true count.
struct CountEstimate {
  std::int64_t j_prime = 0;
  mpq_class Q;
  std::int64_t n = 0;
  std::int64_t s = 0;
  std::int64_t upper_exponent = 0;  // j' + 1
  std::int64_t lower_exponent = 0;  // j' - n
  double log2_upper = 0.0;  // (j'+1) log2 Q, rounded up
  double log2_lower = 0.0;  // (j'-n) log2 Q, rounded down
  std::string log2_upper_str;
  std::string log2_lower_str;
};

CountEstimate extract_estimate(const DpTable& tbl, const KnapsackInstance& inst);

// make_grid_params + build_floor_table + two-row table build + extraction.
// Cells within a row may be computed in parallel; results are identical for
// any thread count.
CountEstimate approx_count(const KnapsackInstance& inst, const mpq_class& eps,
                           int threads = 1);

// Exact comparison of an integer count against Q^e; returns <0, 0, >0.
inline int cmp_count_vs_qpow(const mpz_class& z, const mpq_class& Q, std::int64_t e) {
  return cmp_with_qpow(z, Q, e);
}

// Q^e rounded to sig_digits significant decimal digits, directed upward.
std::string qpow_decimal_upper(const mpq_class& Q, std::int64_t e, int sig_digits);

// Q^e / z as a double via 192-bit log-space arithmetic (z > 0).
double qpow_over_count(const mpq_class& Q, std::int64_t e, const mpz_class& z);

namespace detail {

// Two-row builder shared by approx_count and tests; returns the last row.
// If row_sink is nonnull it receives a copy of every row (including row 0).
template <class S>
DpRow<S> build_last_row(const std::vector<S>& weights, const GridParams& p,
                        const FloorTable& floors, int threads,
                        std::vector<std::vector<ExtInt>>* row_sink = nullptr);

// Largest j with row[j] <= capacity (well-defined: row[0] = 0).
std::int64_t extract_jprime(const DpRow<std::uint64_t>& last, const mpz_class& capacity);
std::int64_t extract_jprime(const DpRow<mpz_class>& last, const mpz_class& capacity);

}  // namespace detail

}  // namespace kcount

#endif  // KCOUNT_CORE_HPP
