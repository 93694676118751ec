// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line.
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "kcount/bench.hpp"
#include "kcount/core.hpp"
#include "kcount/oracle.hpp"
#include "kcount/verify.hpp"

using namespace kcount;

#ifndef KCOUNT_CLI_PATH
#error "KCOUNT_CLI_PATH must be defined by the build"
#endif

namespace {

void report(int k, const char* name, bool ok) {
  std::printf("[%d/9] %-42s %s\n", k, name, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
  CHECK_MESSAGE(ok, name);
}

struct Suite1Item {
  GenSpec spec;
  KnapsackInstance inst;
};

std::vector<Suite1Item> suite1_instances() {
  std::vector<Suite1Item> items;
  for (Family f : {Family::Uniform, Family::EqualWeights, Family::PowersOfTwo,
                   Family::HalfCapacity}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      GenSpec s;
      s.family = f;
      s.n = 1 + static_cast<std::int64_t>(seed % 18);
      s.bits = 1 + static_cast<int>(seed % 20);
      s.cap_rule = seed % 3 == 0 ? CapRule::Random
                 : seed % 3 == 1 ? CapRule::Half : CapRule::Full;
      s.seed = seed;
      items.push_back({s, gen_instance(s)});
    }
  }
  return items;
}

KnapsackInstance random_inst(std::mt19937_64& rng, int n, long wmax, long cap_max = -1) {
  KnapsackInstance k;
  mpz_class total = 0;
  for (int i = 0; i < n; ++i) {
    long w = 1 + static_cast<long>(rng() % wmax);
    k.weights.emplace_back(w);
    total += w;
  }
  unsigned long span = cap_max >= 0 ? static_cast<unsigned long>(cap_max) + 1
                                    : mpz_get_ui(total.get_mpz_t()) + 1;
  k.capacity = mpz_class(rng() % span);
  return k;
}

bool rows_monotone(const std::vector<std::vector<ExtInt>>& rows) {
  for (const auto& row : rows)
    for (std::size_t j = 0; j + 1 < row.size(); ++j)
      if (cmp(row[j], row[j + 1]) > 0) return false;
  return true;
}

bool floors_monotone(const FloorTable& ft) {
  for (std::size_t d = 2; d < ft.size(); ++d)
    if (ft[static_cast<std::int64_t>(d) - 1] > ft[static_cast<std::int64_t>(d)]) return false;
  return true;
}

// Exactness of every g[d]: Q^{g[d]} <= Q^d - 1 < Q^{g[d]+1}, by one
// incremental pass keeping Q^d and Q^{g[d]} as exact rationals.
bool floors_exact_all(const GridParams& p, const FloorTable& ft) {
  if (ft[0] != kFloorNegInf) return false;
  if (p.s == 0) return true;
  mpq_class pd = p.Q;             // Q^d
  mpq_class ag = qpow(p.Q, ft[1]);  // Q^{g[d]}
  std::int64_t g = ft[1];
  for (std::int64_t d = 1; d <= p.s; ++d) {
    if (ft[d] < g) return false;
    while (g < ft[d]) {
      ag *= p.Q;
      ++g;
    }
    mpq_class target = pd - 1;
    if (!(cmp(ag, target) <= 0 && cmp(target, mpq_class(ag * p.Q)) < 0)) return false;
    pd *= p.Q;
  }
  return true;
}

bool floor_entry_exact(const GridParams& p, const FloorTable& ft, std::int64_t d) {
  mpq_class target = qpow(p.Q, d) - 1;
  std::int64_t gd = ft[d];
  return cmp_with_qpow(target, p.Q, gd) >= 0 && cmp_with_qpow(target, p.Q, gd + 1) < 0;
}

double timed_run(const KnapsackInstance& inst, const mpq_class& eps, int threads) {
  auto t0 = std::chrono::steady_clock::now();
  CountEstimate est = approx_count(inst, eps, threads);
  auto t1 = std::chrono::steady_clock::now();
  (void)est;
  return std::chrono::duration<double>(t1 - t0).count();
}

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''"; else q += c;
  }
  return q + "'";
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& stdin_text) {
  static const std::string in_file = []() {
    const char* tmp = ::getenv("TMPDIR");
    return std::string(tmp ? tmp : "/tmp") + "/kcount_accept_stdin.txt";
  }();
  {
    std::ofstream f(in_file, std::ios::binary);
    f << stdin_text;
  }
  std::string cmd = shell_quote(KCOUNT_CLI_PATH) + " " + args + " < " +
                    shell_quote(in_file) + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = ::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("acceptance") {
  const std::vector<mpq_class> suite1_eps = {mpq_class(3, 10), mpq_class(1, 10),
                                             mpq_class(1, 50)};
  auto items = suite1_instances();

  // --- 1: certified interval and ratio bound on every family instance ---
  bool ok1 = true;
  for (const auto& item : items) {
    mpz_class z = enum_count(item.inst);
    for (const auto& eps : suite1_eps) {
      CountEstimate est = approx_count(item.inst, eps);
      bool upper = cmp_count_vs_qpow(z, est.Q, est.upper_exponent) <= 0;
      bool lower = cmp_count_vs_qpow(z, est.Q, est.lower_exponent) >= 0;
      bool ratio = qpow_le_exp_eps(est.Q, est.n, eps);
      if (!(upper && lower && ratio)) ok1 = false;
    }
  }
  report(1, "error bound: 1 <= Z'/Z <= e^eps, 800x3 runs", ok1);

  // --- 2: two-sided tau bound on every table cell ---
  bool ok2 = true;
  {
    std::mt19937_64 rng(220001);
    for (int t = 0; t < 50; ++t) {
      int n = 1 + t % 12;
      KnapsackInstance k = random_inst(rng, n, 1L << 10);
      TauOracle tau(k);
      for (const auto& eps : {mpq_class(1, 2), mpq_class(1, 10)}) {
        GridParams p = make_grid_params(n, eps);
        FloorTable ft = build_floor_table(p);
        DpTable tbl = build_table(k, p, ft);
        if (!check_sandwich(tbl, tau)) ok2 = false;
        if (!rows_monotone(tbl.rows)) ok2 = false;
      }
    }
  }
  report(2, "tau sandwich on all cells, 50 instances", ok2);

  // --- 3: tau recurrence at all integers and half-integers ---
  bool ok3 = true;
  {
    std::mt19937_64 rng(330001);
    for (int t = 0; t < 20; ++t) {
      KnapsackInstance k = random_inst(rng, 10, 1L << 12);
      TauOracle tau(k);
      for (int i = 1; i <= 10; ++i) {
        long lim = 1L << i;
        for (long a = 1; a <= lim; ++a) {
          if (!check_tau_recurrence(tau, i, mpq_class(a))) ok3 = false;
          if (!check_tau_recurrence(tau, i, mpq_class(2 * a - 1, 2))) ok3 = false;
        }
      }
    }
  }
  report(3, "tau recurrence, i<=10, 20 instances", ok3);

  // --- 4: the two exact counters agree ---
  bool ok4 = true;
  {
    std::mt19937_64 rng(440001);
    for (int t = 0; t < 100; ++t) {
      int n = 1 + t % 20;
      KnapsackInstance k = random_inst(rng, n, 2000, 10000);
      if (enum_count(k) != dp_count(k)) ok4 = false;
    }
  }
  report(4, "enum_count == dp_count, 100 instances", ok4);

  // --- 5: binary-search cell equals exhaustive linear scan everywhere ---
  bool ok5 = true;
  {
    std::mt19937_64 rng(550001);
    for (int t = 0; t < 100; ++t) {
      int n = 1 + t % 10;
      KnapsackInstance k = random_inst(rng, n, 1L << 14);
      for (const auto& eps : {mpq_class(1, 2), mpq_class(1, 10)}) {
        GridParams p = make_grid_params(n, eps);
        FloorTable ft = build_floor_table(p);
        std::vector<ExtInt> row(static_cast<std::size_t>(p.s) + 1, ExtInt::pos_inf());
        row[0] = ExtInt::zero();
        bool mono = true;
        for (int i = 0; i < n; ++i) {
          std::vector<ExtInt> ref = linear_scan_row(row, k.weights[i], ft);
          for (std::int64_t j = 0; j <= p.s; ++j) {
            if (compute_cell(row, j, k.weights[i], ft) != ref[static_cast<std::size_t>(j)])
              ok5 = false;
            if (j > 0 && cmp(ref[static_cast<std::size_t>(j) - 1],
                             ref[static_cast<std::size_t>(j)]) > 0)
              mono = false;
          }
          row = std::move(ref);
        }
        if (!mono) ok5 = false;
      }
    }
  }
  report(5, "compute_cell == linear scan, 100 instances", ok5);

  // --- 6: floor table exact at three full grids plus a sampled large grid ---
  bool ok6 = true;
  {
    for (auto [n, num, den] :
         {std::tuple<long, long, long>{3, 1, 2}, {10, 1, 10}, {50, 1, 20}}) {
      GridParams p = make_grid_params(n, mpq_class(num, den));
      FloorTable ft = build_floor_table(p);
      if (!floors_exact_all(p, ft)) ok6 = false;
      if (!floors_monotone(ft)) ok6 = false;
    }
    GridParams p = make_grid_params(200, mpq_class(1, 10));
    FloorTable ft = build_floor_table(p);
    if (!floors_monotone(ft)) ok6 = false;
    std::mt19937_64 rng(660001);
    for (int t = 0; t < 1000; ++t) {
      std::int64_t d = 1 + static_cast<std::int64_t>(rng() % p.s);
      if (!floor_entry_exact(p, ft, d)) ok6 = false;
    }
  }
  report(6, "floor table exactness, 3 grids + 1000 samples", ok6);

  // --- 7: T rows monotone and g monotone on the suite-1 instances ---
  // (suites 2 and 5 checked their tables inline above)
  bool ok7 = ok2 && ok5;
  for (const auto& item : items) {
    GridParams p = make_grid_params(item.inst.n(), mpq_class(1, 10));
    FloorTable ft = build_floor_table(p);
    if (!floors_monotone(ft)) ok7 = false;
    std::vector<std::uint64_t> w;
    for (const auto& x : item.inst.weights) w.push_back(mpz_get_ui(x.get_mpz_t()));
    std::vector<std::vector<ExtInt>> rows;
    detail::build_last_row<std::uint64_t>(w, p, ft, 1, &rows);
    if (!rows_monotone(rows)) ok7 = false;
  }
  report(7, "monotonicity of T rows and g", ok7);

  // --- 8: wall-clock budget plus growth-rate bands ---
  bool ok8 = true;
  {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    GenSpec big;
    big.family = Family::Uniform;
    big.n = 500;
    big.bits = 20;
    big.seed = 88;
    double t500 = timed_run(gen_instance(big), mpq_class(1, 10), hw);
    std::printf("      n=500 eps=1/10: %.1fs (%d threads)\n", t500, hw);
    if (t500 >= 600.0) ok8 = false;

    auto scale_time = [&](std::int64_t n, const mpq_class& eps) {
      GenSpec s;
      s.family = Family::Uniform;
      s.n = n;
      s.bits = 20;
      s.seed = 88;
      return timed_run(gen_instance(s), eps, hw);
    };
    double t100 = scale_time(100, mpq_class(1, 10));
    double t200 = scale_time(200, mpq_class(1, 10));
    double t400 = scale_time(400, mpq_class(1, 10));
    std::printf("      n sweep: %.2fs %.2fs %.2fs\n", t100, t200, t400);
    for (double r : {t200 / t100, t400 / t200}) {
      if (!(r >= 8.0 / 3.0 && r <= 8.0 * 3.0)) ok8 = false;
    }
    double e5 = scale_time(100, mpq_class(1, 5));
    double e10 = t100;
    double e20 = scale_time(100, mpq_class(1, 20));
    std::printf("      eps sweep: %.2fs %.2fs %.2fs\n", e5, e10, e20);
    for (double r : {e10 / e5, e20 / e10}) {
      if (!(r >= 1.0 && r <= 4.0)) ok8 = false;
    }
  }
  report(8, "performance budget and growth bands", ok8);

  // --- 9: CLI verify on every suite-1 instance; byte-stable goldens ---
  bool ok9 = true;
  {
    std::size_t idx = 0;
    for (const auto& item : items) {
      const mpq_class& eps = suite1_eps[idx++ % suite1_eps.size()];
      std::string eps_str = eps.get_str();
      RunResult r = run_cli("verify --eps " + eps_str + " --input -",
                            serialize_instance_text(item.inst));
      if (r.exit_code != 0) {
        ok9 = false;
        std::printf("      verify failed (%d) on %s seed %llu\n", r.exit_code,
                    family_to_string(item.spec.family).c_str(),
                    static_cast<unsigned long long>(item.spec.seed));
      }
    }
    const std::string sample = "4 7\n5 1 3 2\n";
    for (const std::string& args :
         {std::string("count --eps 1/10 --input -"),
          std::string("count --eps 1/10 --format json --input -"),
          std::string("exact --mode dp --input -"),
          std::string("gen --family adversarial-dense --n 9 --bits 8 --seed 3")}) {
      RunResult a = run_cli(args, sample);
      RunResult b = run_cli(args, sample);
      if (a.exit_code != 0 || a.out != b.out) ok9 = false;
    }
  }
  report(9, "CLI verify + byte-stable outputs", ok9);
}
