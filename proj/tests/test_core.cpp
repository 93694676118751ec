#include <doctest.h>

#include <random>

#include "kcount/core.hpp"
#include "kcount/oracle.hpp"
#include "kcount/verify.hpp"

using namespace kcount;

namespace {

KnapsackInstance inst(std::vector<long> ws, long cap) {
  KnapsackInstance k;
  for (long w : ws) k.weights.emplace_back(w);
  k.capacity = cap;
  return k;
}

KnapsackInstance random_inst(std::mt19937_64& rng, int n, long wmax) {
  KnapsackInstance k;
  mpz_class total = 0;
  for (int i = 0; i < n; ++i) {
    long w = 1 + static_cast<long>(rng() % wmax);
    k.weights.emplace_back(w);
    total += w;
  }
  k.capacity = mpz_class(rng() % (mpz_get_ui(total.get_mpz_t()) + 1));
  return k;
}

bool interval_contains(const CountEstimate& est, const mpz_class& z) {
  return cmp_count_vs_qpow(z, est.Q, est.lower_exponent) >= 0 &&
         cmp_count_vs_qpow(z, est.Q, est.upper_exponent) <= 0;
}

}  // namespace

TEST_CASE("compute_cell basics on the row-0 boundary") {
  GridParams p = make_grid_params(1, mpq_class(1, 2));  // Q=5/4, s=4
  FloorTable ft = build_floor_table(p);
  std::vector<ExtInt> row0(static_cast<std::size_t>(p.s) + 1, ExtInt::pos_inf());
  row0[0] = ExtInt::zero();
  mpz_class w = 1;

  // Hand-derived for weights=[1]: T[1][0..3] = 0,1,1,1. At j = 4 the alpha
  // interval just below Q^{-3} pairs first floor 0 with second floor 0, so the
  // cell is 1 as well (tau(1, Q^3) = 1 <= 1 <= tau(1, Q^4) = +inf holds).
  CHECK(compute_cell(row0, 0, w, ft) == ExtInt::zero());
  CHECK(compute_cell(row0, 1, w, ft) == ExtInt(1L));
  CHECK(compute_cell(row0, 2, w, ft) == ExtInt(1L));
  CHECK(compute_cell(row0, 3, w, ft) == ExtInt(1L));
  CHECK(compute_cell(row0, 4, w, ft) == ExtInt(1L));
}

TEST_CASE("compute_cell equals the linear-scan reference on random rows") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    GridParams p = make_grid_params(n, trial % 2 ? mpq_class(1, 2) : mpq_class(1, 10));
    FloorTable ft = build_floor_table(p);
    KnapsackInstance k = random_inst(rng, n, 30);

    std::vector<ExtInt> row(static_cast<std::size_t>(p.s) + 1, ExtInt::pos_inf());
    row[0] = ExtInt::zero();
    for (int i = 0; i < n; ++i) {
      std::vector<ExtInt> ref = linear_scan_row(row, k.weights[i], ft);
      for (std::int64_t j = 0; j <= p.s; ++j) {
        CAPTURE(trial);
        CAPTURE(i);
        CAPTURE(j);
        CHECK(compute_cell(row, j, k.weights[i], ft) == ref[static_cast<std::size_t>(j)]);
      }
      row = std::move(ref);
    }
  }
}

TEST_CASE("rows are monotone nondecreasing with an +inf suffix") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    GridParams p = make_grid_params(n, mpq_class(1, 4));
    FloorTable ft = build_floor_table(p);
    KnapsackInstance k = random_inst(rng, n, 100);
    DpTable tbl = build_table(k, p, ft);
    for (const auto& row : tbl.rows) {
      bool seen_inf = false;
      for (std::size_t j = 0; j + 1 < row.size(); ++j) {
        CHECK(cmp(row[j], row[j + 1]) <= 0);
        if (row[j].is_pos_inf()) seen_inf = true;
        if (seen_inf) CHECK(row[j].is_pos_inf());
      }
    }
  }
}

TEST_CASE("estimate interval contains the exact count on hand instances") {
  struct Case { std::vector<long> ws; long cap; long znum; };
  for (const Case& c : {Case{{5, 6, 7}, 4, 1},
                        Case{{1, 2, 3}, 6, 8},
                        Case{{1, 2, 3}, 2, 3},
                        Case{{1, 1, 1, 1}, 2, 11},
                        Case{{}, 0, 1}}) {
    for (auto eps : {mpq_class(1, 2), mpq_class(1, 10)}) {
      KnapsackInstance k = inst(c.ws, c.cap);
      CountEstimate est = approx_count(k, eps);
      CAPTURE(c.cap);
      CHECK(interval_contains(est, mpz_class(c.znum)));
      // Z' = Q^{j'+1} is an overestimate of Z.
      CHECK(cmp_count_vs_qpow(mpz_class(c.znum), est.Q, est.upper_exponent) <= 0);
    }
  }
}

TEST_CASE("estimate interval and ratio bound on random instances") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 14);
    KnapsackInstance k = random_inst(rng, n, 1L << 16);
    mpq_class eps = trial % 3 == 0 ? mpq_class(1, 2)
                  : trial % 3 == 1 ? mpq_class(1, 10) : mpq_class(3, 4);
    mpz_class z = enum_count(k);
    CountEstimate est = approx_count(k, eps);
    CAPTURE(trial);
    CHECK(interval_contains(est, z));
    CHECK(qpow_le_exp_eps(est.Q, est.n, eps));
    double ratio = qpow_over_count(est.Q, est.upper_exponent, z);
    CHECK(ratio >= 1.0 - 1e-12);
    CHECK(ratio <= std::exp(mpq_get_d(eps.get_mpq_t())) * (1 + 1e-12));
    CHECK(est.log2_lower <= est.log2_upper);
  }
}

TEST_CASE("uint64 and mpz kernels produce identical last rows") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + static_cast<int>(rng() % 8);
    GridParams p = make_grid_params(n, mpq_class(1, 5));
    FloorTable ft = build_floor_table(p);
    KnapsackInstance k = random_inst(rng, n, 1000);

    std::vector<std::uint64_t> wu;
    std::vector<mpz_class> wz;
    for (const auto& w : k.weights) {
      wu.push_back(mpz_get_ui(w.get_mpz_t()));
      wz.push_back(w);
    }
    DpRow<std::uint64_t> ru = detail::build_last_row<std::uint64_t>(wu, p, ft, 1);
    DpRow<mpz_class> rz = detail::build_last_row<mpz_class>(wz, p, ft, 1);
    REQUIRE(ru.inf_start == rz.inf_start);
    for (std::int64_t j = 0; j < ru.inf_start; ++j)
      CHECK(mpz_class(ru.vals[static_cast<std::size_t>(j)]) == rz.vals[static_cast<std::size_t>(j)]);
    CHECK(detail::extract_jprime(ru, k.capacity) == detail::extract_jprime(rz, k.capacity));
  }
}

TEST_CASE("threaded build matches serial exactly") {
  std::mt19937_64 rng(31337);
  KnapsackInstance k = random_inst(rng, 12, 1L << 20);
  for (auto eps : {mpq_class(1, 2), mpq_class(1, 10)}) {
    CountEstimate a = approx_count(k, eps, 1);
    CountEstimate b = approx_count(k, eps, 4);
    CHECK(a.j_prime == b.j_prime);
    CHECK(a.log2_upper == b.log2_upper);
    CHECK(a.log2_lower == b.log2_lower);
  }
}

TEST_CASE("zero weights double the count and keep the interval valid") {
  KnapsackInstance k = inst({0, 0, 5}, 4);
  mpz_class z = enum_count(k);
  CHECK(z == 4);
  CountEstimate est = approx_count(k, mpq_class(1, 10));
  CHECK(interval_contains(est, z));
}

TEST_CASE("empty instance counts exactly one solution") {
  KnapsackInstance k = inst({}, 0);
  CountEstimate est = approx_count(k, mpq_class(1, 2));
  CHECK(interval_contains(est, mpz_class(1)));
  CHECK(est.n == 0);
}
