#include "kcount/oracle.hpp"

#include <algorithm>
#include <set>

#include "kcount/errors.hpp"

namespace kcount {

namespace {

// All subset sums of the given weights (2^k entries, unsorted).
std::vector<mpz_class> all_subset_sums(const std::vector<mpz_class>& ws) {
  std::vector<mpz_class> sums{mpz_class(0)};
  for (const auto& w : ws) {
    std::size_t base = sums.size();
    sums.resize(base * 2);
    for (std::size_t i = 0; i < base; ++i) sums[base + i] = sums[i] + w;
  }
  return sums;
}

}  // namespace

mpz_class enum_count(const KnapsackInstance& inst, const OracleLimits& limits) {
  if (inst.n() > limits.enum_max_n)
    throw LimitError("enum_count: n = " + std::to_string(inst.n()) +
                     " exceeds the enumeration limit " + std::to_string(limits.enum_max_n));
  std::size_t half = inst.weights.size() / 2;
  std::vector<mpz_class> lo_ws(inst.weights.begin(), inst.weights.begin() + half);
  std::vector<mpz_class> hi_ws(inst.weights.begin() + half, inst.weights.end());
  std::vector<mpz_class> lo = all_subset_sums(lo_ws);
  std::vector<mpz_class> hi = all_subset_sums(hi_ws);
  std::sort(hi.begin(), hi.end());

  mpz_class z = 0;
  mpz_class budget;
  for (const auto& a : lo) {
    budget = inst.capacity - a;
    if (sgn(budget) < 0) continue;
    z += std::upper_bound(hi.begin(), hi.end(), budget) - hi.begin();
  }
  return z;
}

mpz_class dp_count(const KnapsackInstance& inst, const OracleLimits& limits) {
  // Sums never exceed the total weight, so the DP range can be clamped.
  mpz_class cap = inst.capacity;
  mpz_class total = inst.total_weight();
  if (cap > total) cap = total;
  if (cap > limits.dp_max_capacity)
    throw LimitError("dp_count: effective capacity " + cap.get_str() +
                     " exceeds the limit " + limits.dp_max_capacity.get_str() +
                     " (cost is pseudo-polynomial in C)");

  std::size_t c = cap.get_ui();
  std::vector<mpz_class> cnt(c + 1);
  cnt[0] = 1;
  for (const auto& w : inst.weights) {
    if (w > cap) continue;  // item never fits
    if (sgn(w) == 0) {
      for (auto& x : cnt) x *= 2;
      continue;
    }
    std::size_t wi = w.get_ui();
    for (std::size_t j = c; j >= wi; --j) cnt[j] += cnt[j - wi];
  }
  mpz_class z = 0;
  for (const auto& x : cnt) z += x;
  return z;
}

TauOracle::TauOracle(const KnapsackInstance& inst, const OracleLimits& limits)
    : weights_(inst.weights) {
  std::int64_t prefixes = std::min(inst.n(), limits.tau_max_prefix);
  tables_.reserve(static_cast<std::size_t>(prefixes) + 1);
  tables_.push_back({mpz_class(0)});
  for (std::int64_t i = 1; i <= prefixes; ++i) {
    const auto& prev = tables_.back();
    const mpz_class& w = weights_[static_cast<std::size_t>(i - 1)];
    std::vector<mpz_class> shifted(prev.size());
    for (std::size_t k = 0; k < prev.size(); ++k) shifted[k] = prev[k] + w;
    std::vector<mpz_class> merged(prev.size() * 2);
    std::merge(prev.begin(), prev.end(), shifted.begin(), shifted.end(), merged.begin());
    tables_.push_back(std::move(merged));
  }
}

const mpz_class& TauOracle::weight(std::int64_t i) const {
  return weights_.at(static_cast<std::size_t>(i - 1));
}

const std::vector<mpz_class>& TauOracle::sums(std::int64_t i) const {
  if (i < 0 || i > max_prefix())
    throw LimitError("TauOracle: prefix " + std::to_string(i) + " not built");
  return tables_[static_cast<std::size_t>(i)];
}

ExtInt TauOracle::tau(std::int64_t i, const mpq_class& a) const {
  if (sgn(a) < 0) throw ParameterError("tau: a must be nonnegative");
  if (sgn(a) == 0) {
    sums(i);  // still validate the prefix
    return ExtInt::neg_inf();
  }
  mpz_class ceil_a;
  mpz_cdiv_q(ceil_a.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
  return tau_ceil(i, ceil_a);
}

ExtInt TauOracle::tau_ceil(std::int64_t i, const mpz_class& ceil_a) const {
  const auto& table = sums(i);
  if (sgn(ceil_a) <= 0) throw ParameterError("tau_ceil: requires ceil(a) >= 1");
  if (ceil_a > static_cast<unsigned long>(table.size())) return ExtInt::pos_inf();
  return ExtInt(table[ceil_a.get_ui() - 1]);
}

bool check_tau_recurrence(const TauOracle& oracle, std::int64_t i, const mpq_class& a) {
  if (i < 1) throw ParameterError("check_tau_recurrence: i must be >= 1");
  const mpz_class& w = oracle.weight(i);
  ExtInt lhs = oracle.tau(i, a);

  // Candidate values v = alpha*a: every point where ceil(v) or ceil(a - v)
  // changes, i.e. v or a - v integral, plus a midpoint of each gap.
  std::set<mpq_class> points{mpq_class(0), a};
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
  for (mpz_class k = 1; k <= fl; ++k) {
    points.insert(mpq_class(k));
    mpq_class rest = a - mpq_class(k);
    if (sgn(rest) > 0) points.insert(rest);
  }
  std::vector<mpq_class> cands(points.begin(), points.end());
  std::size_t breakpoints = cands.size();
  for (std::size_t k = 0; k + 1 < breakpoints; ++k)
    cands.push_back((cands[k] + cands[k + 1]) / 2);

  ExtInt best = ExtInt::pos_inf();
  for (const auto& v : cands) {
    ExtInt arm1 = oracle.tau(i - 1, v);
    ExtInt arm2 = oracle.tau(i - 1, mpq_class(a - v)).plus(w);
    best = min(best, max(arm1, arm2));
  }
  return cmp(best, lhs) == 0;
}

namespace {

// Shared candidate evaluation: prevw must hold prev_row[k] + w.
const ExtInt* scan_candidates(const std::vector<ExtInt>& prev, const std::vector<ExtInt>& prevw,
                              const ExtInt& w_ext, std::int64_t j, const FloorTable& floors) {
  static const ExtInt kZero = ExtInt::zero();
  static const ExtInt kNegInf = ExtInt::neg_inf();
  const ExtInt* best = nullptr;
  for (std::int64_t t = 0; t <= j; ++t) {
    std::int64_t gd = floors[j - t];
    const ExtInt* arm2a;  // T[i-1, t+g[j-t]] + w
    const ExtInt* arm1b;  // T[i-1, t+g[j-t]]
    const ExtInt* arm2c;  // as arm2a, but the t = j sentinel is a finite
                          // negative index (alpha just below 1), reading as w
    if (gd == kFloorNegInf) {
      arm2a = &kNegInf;
      arm1b = &kNegInf;
      arm2c = &w_ext;
    } else {
      std::int64_t k = t + gd;
      arm2a = k < 0 ? &w_ext : &prevw[static_cast<std::size_t>(k)];
      arm1b = k < 0 ? &kZero : &prev[static_cast<std::size_t>(k)];
      arm2c = arm2a;
    }
    const ExtInt& prev_tm1 = t == 0 ? kZero : prev[static_cast<std::size_t>(t - 1)];
    const ExtInt& a = max(prev[static_cast<std::size_t>(t)], *arm2a);
    const ExtInt& b = max(*arm1b, prevw[static_cast<std::size_t>(t)]);
    // the open alpha interval just below the t-th first-floor breakpoint,
    // where the first floor is still t-1 but the second floor already moved
    const ExtInt& c = max(prev_tm1, *arm2c);
    const ExtInt& m = min(min(a, b), c);  // reference into stable row storage
    if (best == nullptr || m < *best) best = &m;
  }
  return best;
}

}  // namespace

ExtInt linear_scan_cell(const std::vector<ExtInt>& prev_row, std::int64_t j,
                        const mpz_class& w, const FloorTable& floors) {
  std::vector<ExtInt> prevw(prev_row.size());
  for (std::size_t k = 0; k < prev_row.size(); ++k) prevw[k] = prev_row[k].plus(w);
  ExtInt w_ext(w);
  return *scan_candidates(prev_row, prevw, w_ext, j, floors);
}

std::vector<ExtInt> linear_scan_row(const std::vector<ExtInt>& prev_row,
                                    const mpz_class& w, const FloorTable& floors) {
  std::vector<ExtInt> prevw(prev_row.size());
  for (std::size_t k = 0; k < prev_row.size(); ++k) prevw[k] = prev_row[k].plus(w);
  ExtInt w_ext(w);
  std::vector<ExtInt> out(prev_row.size());
  for (std::size_t j = 0; j < prev_row.size(); ++j)
    out[j] = *scan_candidates(prev_row, prevw, w_ext, static_cast<std::int64_t>(j), floors);
  return out;
}

}  // namespace kcount
