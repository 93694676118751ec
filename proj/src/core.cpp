#include "kcount/core.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <thread>

#include "kcount/errors.hpp"

namespace kcount {

namespace detail {

namespace {

template <class S>
void fill_plus_w(const DpRow<S>& prev, const S& w, std::vector<S>& prevw) {
  for (std::int64_t k = 0; k < prev.inf_start; ++k)
    prevw[static_cast<std::size_t>(k)] = prev.vals[static_cast<std::size_t>(k)] + w;
}

// Computes cells [begin, end) of the current row; returns the first index in
// the range that came out +inf (row monotonicity makes the rest of the range
// +inf as well), or end if all finite.
template <class S>
std::int64_t run_chunk(const CellEval<S>& ev, std::int64_t begin, std::int64_t end,
                       std::vector<S>& out) {
  for (std::int64_t j = begin; j < end; ++j) {
    Ref<S> r = compute_cell_kernel(ev, j);
    if (r.cls == 1) return j;
    out[static_cast<std::size_t>(j)] = *r.p;
  }
  return end;
}

template <class S>
std::vector<ExtInt> row_to_ext(const DpRow<S>& row) {
  std::vector<ExtInt> out;
  out.reserve(row.vals.size());
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(row.vals.size()); ++k) {
    if (k < row.inf_start)
      out.push_back(ExtInt(mpz_class(row.vals[static_cast<std::size_t>(k)])));
    else
      out.push_back(ExtInt::pos_inf());
  }
  return out;
}

}  // namespace

template <class S>
DpRow<S> build_last_row(const std::vector<S>& weights, const GridParams& p,
                        const FloorTable& floors, int threads,
                        std::vector<std::vector<ExtInt>>* row_sink) {
  const std::int64_t cols = p.s + 1;
  static const S kZero{};

  DpRow<S> prev, cur;
  prev.vals.assign(static_cast<std::size_t>(cols), S{});
  prev.inf_start = 1;  // T[0,0] = 0, T[0,j] = +inf for j > 0
  cur.vals.assign(static_cast<std::size_t>(cols), S{});
  std::vector<S> prevw(static_cast<std::size_t>(cols));

  if (row_sink) row_sink->push_back(row_to_ext(prev));

  threads = std::max(1, threads);
  for (const S& w : weights) {
    fill_plus_w(prev, w, prevw);
    CellEval<S> ev{prev, prevw, w, kZero, floors, 0};
    if (threads == 1 || cols < 1024) {
      cur.inf_start = run_chunk(ev, 0, cols, cur.vals);
    } else {
      std::int64_t chunk = (cols + threads - 1) / threads;
      // firsts[t] = first +inf index inside chunk t, or the chunk's end if
      // the whole chunk came out finite (run_chunk's "none found" value).
      std::vector<std::int64_t> firsts(static_cast<std::size_t>(threads), cols);
      std::vector<std::int64_t> ends(static_cast<std::size_t>(threads), cols);
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) {
        std::int64_t b = t * chunk, e = std::min<std::int64_t>(cols, b + chunk);
        if (b >= e) break;
        ends[static_cast<std::size_t>(t)] = e;
        pool.emplace_back([&, t, b, e] {
          firsts[static_cast<std::size_t>(t)] = run_chunk(ev, b, e, cur.vals);
        });
      }
      for (auto& th : pool) th.join();
      cur.inf_start = cols;
      for (int t = 0; t < threads; ++t) {
        std::size_t u = static_cast<std::size_t>(t);
        if (firsts[u] < ends[u]) {
          cur.inf_start = firsts[u];
          break;  // chunks are in index order; the first hit is global
        }
      }
    }
    std::swap(prev, cur);
    if (row_sink) row_sink->push_back(row_to_ext(prev));
  }
  return prev;
}

template DpRow<std::uint64_t> build_last_row(const std::vector<std::uint64_t>&,
                                             const GridParams&, const FloorTable&, int,
                                             std::vector<std::vector<ExtInt>>*);
template DpRow<mpz_class> build_last_row(const std::vector<mpz_class>&, const GridParams&,
                                         const FloorTable&, int,
                                         std::vector<std::vector<ExtInt>>*);

namespace {

// true iff row value at j is <= capacity
template <class S>
bool le_capacity(const DpRow<S>& row, std::int64_t j, const mpz_class& cap);

template <>
bool le_capacity(const DpRow<std::uint64_t>& row, std::int64_t j, const mpz_class& cap) {
  if (j >= row.inf_start) return false;
  return mpz_cmp_ui(cap.get_mpz_t(), row.vals[static_cast<std::size_t>(j)]) >= 0;
}

template <>
bool le_capacity(const DpRow<mpz_class>& row, std::int64_t j, const mpz_class& cap) {
  if (j >= row.inf_start) return false;
  return cmp(row.vals[static_cast<std::size_t>(j)], cap) <= 0;
}

template <class S>
std::int64_t extract_jprime_impl(const DpRow<S>& last, const mpz_class& capacity) {
  assert(last.inf_start >= 1);  // row[0] = 0 <= capacity always
  std::int64_t lo = 0, hi = last.inf_start - 1;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (le_capacity(last, mid, capacity)) lo = mid; else hi = mid - 1;
  }
  return lo;
}

}  // namespace

std::int64_t extract_jprime(const DpRow<std::uint64_t>& last, const mpz_class& capacity) {
  return extract_jprime_impl(last, capacity);
}
std::int64_t extract_jprime(const DpRow<mpz_class>& last, const mpz_class& capacity) {
  return extract_jprime_impl(last, capacity);
}

}  // namespace detail

namespace {

DpRow<mpz_class> row_from_ext(const std::vector<ExtInt>& row) {
  DpRow<mpz_class> out;
  out.inf_start = static_cast<std::int64_t>(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k].is_neg_inf()) throw ParameterError("DP rows cannot contain -inf");
    if (row[k].is_pos_inf()) {
      out.inf_start = static_cast<std::int64_t>(k);
      break;
    }
  }
  out.vals.assign(row.size(), mpz_class());
  for (std::int64_t k = 0; k < out.inf_start; ++k)
    out.vals[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k)].value();
  return out;
}

// log2 bounds via MPFR with directed rounding at 192 bits.
void fill_log_bounds(CountEstimate& est) {
  mpfr_t lq_up, lq_dn, r;
  mpfr_init2(lq_up, 192);
  mpfr_init2(lq_dn, 192);
  mpfr_init2(r, 192);
  mpfr_set_q(lq_up, est.Q.get_mpq_t(), MPFR_RNDU);
  mpfr_log2(lq_up, lq_up, MPFR_RNDU);
  mpfr_set_q(lq_dn, est.Q.get_mpq_t(), MPFR_RNDD);
  mpfr_log2(lq_dn, lq_dn, MPFR_RNDD);

  auto fmt = [&](mpfr_t x, mpfr_rnd_t rnd) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.24R*e", rnd, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  };

  mpfr_mul_si(r, lq_up, static_cast<long>(est.upper_exponent), MPFR_RNDU);
  est.log2_upper = mpfr_get_d(r, MPFR_RNDU);
  est.log2_upper_str = fmt(r, MPFR_RNDU);

  mpfr_mul_si(r, est.lower_exponent >= 0 ? lq_dn : lq_up,
              static_cast<long>(est.lower_exponent), MPFR_RNDD);
  est.log2_lower = mpfr_get_d(r, MPFR_RNDD);
  est.log2_lower_str = fmt(r, MPFR_RNDD);

  mpfr_clear(lq_up);
  mpfr_clear(lq_dn);
  mpfr_clear(r);
}

CountEstimate make_estimate(const GridParams& p, std::int64_t j_prime) {
  CountEstimate est;
  est.j_prime = j_prime;
  est.Q = p.Q;
  est.n = p.n;
  est.s = p.s;
  est.upper_exponent = j_prime + 1;
  est.lower_exponent = j_prime - p.n;
  fill_log_bounds(est);
  return est;
}

bool fits_uint64_path(const KnapsackInstance& inst) {
  mpz_class total = inst.total_weight();
  return mpz_sizeinbase(total.get_mpz_t(), 2) <= 62;
}

}  // namespace

ExtInt compute_cell(const std::vector<ExtInt>& prev_row, std::int64_t j,
                    const mpz_class& w, const FloorTable& floors) {
  DpRow<mpz_class> prev = row_from_ext(prev_row);
  std::vector<mpz_class> prevw(prev.vals.size());
  detail::fill_plus_w(prev, w, prevw);
  static const mpz_class kZero = 0;
  detail::CellEval<mpz_class> ev{prev, prevw, w, kZero, floors, 0};
  detail::Ref<mpz_class> r = detail::compute_cell_kernel(ev, j);
  return r.cls == 1 ? ExtInt::pos_inf() : ExtInt(*r.p);
}

DpTable build_table(const KnapsackInstance& inst, const GridParams& p,
                    const FloorTable& floors) {
  DpTable tbl;
  tbl.params = p;
  tbl.floors = floors;
  std::vector<mpz_class> weights(inst.weights.begin(), inst.weights.end());
  detail::build_last_row<mpz_class>(weights, p, floors, 1, &tbl.rows);
  return tbl;
}

CountEstimate extract_estimate(const DpTable& tbl, const KnapsackInstance& inst) {
  DpRow<mpz_class> last = row_from_ext(tbl.rows.back());
  return make_estimate(tbl.params, detail::extract_jprime(last, inst.capacity));
}

CountEstimate approx_count(const KnapsackInstance& inst, const mpq_class& eps,
                           int threads) {
  GridParams p = make_grid_params(inst.n(), eps);
  FloorTable floors = build_floor_table(p);
  std::int64_t j_prime;
  if (fits_uint64_path(inst)) {
    std::vector<std::uint64_t> weights;
    weights.reserve(inst.weights.size());
    for (const auto& w : inst.weights) weights.push_back(mpz_get_ui(w.get_mpz_t()));
    DpRow<std::uint64_t> last = detail::build_last_row(weights, p, floors, threads);
    j_prime = detail::extract_jprime(last, inst.capacity);
  } else {
    DpRow<mpz_class> last = detail::build_last_row(inst.weights, p, floors, threads);
    j_prime = detail::extract_jprime(last, inst.capacity);
  }
  return make_estimate(p, j_prime);
}

std::string qpow_decimal_upper(const mpq_class& Q, std::int64_t e, int sig_digits) {
  mpq_class v = qpow(Q, e);
  mpfr_t x;
  // enough precision that the decimal rounding dominates
  mpfr_init2(x, static_cast<mpfr_prec_t>(sig_digits * 4 + 64));
  mpfr_set_q(x, v.get_mpq_t(), MPFR_RNDU);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*R*e", sig_digits - 1, MPFR_RNDU, x);
  std::string s(buf);
  mpfr_free_str(buf);
  mpfr_clear(x);
  return s;
}

double qpow_over_count(const mpq_class& Q, std::int64_t e, const mpz_class& z) {
  // 192-bit log-space arithmetic: exact enough that a mathematically clean
  // ratio of 1 comes out as exactly 1.0 in double.
  mpfr_t lq, lz;
  mpfr_init2(lq, 192);
  mpfr_init2(lz, 192);
  mpfr_set_q(lq, Q.get_mpq_t(), MPFR_RNDN);
  mpfr_log2(lq, lq, MPFR_RNDN);
  mpfr_mul_si(lq, lq, static_cast<long>(e), MPFR_RNDN);
  mpfr_set_z(lz, z.get_mpz_t(), MPFR_RNDN);
  mpfr_log2(lz, lz, MPFR_RNDN);
  mpfr_sub(lq, lq, lz, MPFR_RNDN);
  mpfr_exp2(lq, lq, MPFR_RNDN);
  double r = mpfr_get_d(lq, MPFR_RNDN);
  mpfr_clear(lq);
  mpfr_clear(lz);
  return r;
}

}  // namespace kcount
