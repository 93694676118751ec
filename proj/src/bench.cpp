#include "kcount/bench.hpp"

#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <tuple>

#include "kcount/core.hpp"
#include "kcount/errors.hpp"
#include "kcount/oracle.hpp"

namespace kcount {

Family family_from_string(const std::string& name) {
  if (name == "uniform") return Family::Uniform;
  if (name == "equal-weights") return Family::EqualWeights;
  if (name == "powers-of-two") return Family::PowersOfTwo;
  if (name == "half-capacity") return Family::HalfCapacity;
  if (name == "adversarial-dense") return Family::AdversarialDense;
  throw ParameterError("unknown instance family: '" + name + "'");
}

std::string family_to_string(Family f) {
  switch (f) {
    case Family::Uniform: return "uniform";
    case Family::EqualWeights: return "equal-weights";
    case Family::PowersOfTwo: return "powers-of-two";
    case Family::HalfCapacity: return "half-capacity";
    case Family::AdversarialDense: return "adversarial-dense";
  }
  return "?";
}

CapRule cap_rule_from_string(const std::string& name) {
  if (name == "half") return CapRule::Half;
  if (name == "full") return CapRule::Full;
  if (name == "rand") return CapRule::Random;
  throw ParameterError("unknown capacity rule: '" + name + "'");
}

std::string cap_rule_to_string(CapRule r) {
  switch (r) {
    case CapRule::Half: return "half";
    case CapRule::Full: return "full";
    case CapRule::Random: return "rand";
  }
  return "?";
}

KnapsackInstance gen_instance(const GenSpec& spec) {
  if (spec.n < 0) throw ParameterError("gen_instance: n must be nonnegative");
  if (spec.bits < 1 || spec.bits > 62)
    throw ParameterError("gen_instance: bits must lie in 1..62");
  std::mt19937_64 rng(spec.seed);

  KnapsackInstance inst;
  inst.weights.reserve(static_cast<std::size_t>(spec.n));
  std::uint64_t wmax = (std::uint64_t{1} << spec.bits) - 1;
  switch (spec.family) {
    case Family::Uniform:
    case Family::HalfCapacity:
      for (std::int64_t i = 0; i < spec.n; ++i)
        inst.weights.emplace_back(static_cast<unsigned long>(1 + rng() % wmax));
      break;
    case Family::EqualWeights: {
      mpz_class w = mpz_class(1) << (spec.bits - 1);
      inst.weights.assign(static_cast<std::size_t>(spec.n), w);
      break;
    }
    case Family::PowersOfTwo:
      for (std::int64_t i = 0; i < spec.n; ++i)
        inst.weights.push_back(mpz_class(1) << static_cast<unsigned long>(i));
      break;
    case Family::AdversarialDense: {
      // Narrow weight band: subset sums cluster heavily around multiples.
      mpz_class base = mpz_class(1) << (spec.bits - 1);
      for (std::int64_t i = 0; i < spec.n; ++i)
        inst.weights.push_back(base + static_cast<unsigned long>(
                                          rng() % static_cast<std::uint64_t>(spec.n + 1)));
      break;
    }
  }

  mpz_class total = inst.total_weight();
  CapRule rule = spec.family == Family::HalfCapacity ? CapRule::Half : spec.cap_rule;
  switch (rule) {
    case CapRule::Half: inst.capacity = total / 2; break;
    case CapRule::Full: inst.capacity = total; break;
    case CapRule::Random: {
      gmp_randclass gr(gmp_randinit_mt);
      gr.seed(static_cast<unsigned long>(spec.seed ^ 0x9e3779b97f4a7c15ULL));
      inst.capacity = gr.get_z_range(total + 1);
      break;
    }
  }
  return inst;
}

namespace {

double log2_mpz(const mpz_class& z) {
  signed long exp2;
  double d = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log2(d) + static_cast<double>(exp2);
}

std::string eps_to_string(const mpq_class& eps) {
  return eps.get_num().get_str() + "/" + eps.get_den().get_str();
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<BenchRecord> run_sweep(const std::vector<GenSpec>& specs,
                                   const std::vector<mpq_class>& eps_list,
                                   bool with_oracle, int threads, std::int64_t enum_limit) {
  std::vector<BenchRecord> records;
  for (const auto& spec : specs)
    for (const auto& eps : eps_list) {
      BenchRecord rec;
      rec.spec = spec;
      rec.eps = eps;
      records.push_back(std::move(rec));
    }
  std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    auto ka = std::make_tuple(static_cast<int>(a.spec.family), a.spec.n, a.spec.bits,
                              a.spec.seed);
    auto kb = std::make_tuple(static_cast<int>(b.spec.family), b.spec.n, b.spec.bits,
                              b.spec.seed);
    if (ka != kb) return ka < kb;
    return cmp(a.eps, b.eps) < 0;
  });

  for (auto& rec : records) {
    try {
      KnapsackInstance inst = gen_instance(rec.spec);
      auto t0 = std::chrono::steady_clock::now();
      CountEstimate est = approx_count(inst, rec.eps, threads);
      auto t1 = std::chrono::steady_clock::now();
      rec.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      rec.s = est.s;
      rec.j_prime = est.j_prime;
      rec.log2_lower = est.log2_lower;
      rec.log2_upper = est.log2_upper;
      rec.mem_bytes = static_cast<std::uint64_t>(est.s + 1) * 3 * 8;
      if (with_oracle && inst.n() <= enum_limit) {
        OracleLimits lim;
        lim.enum_max_n = enum_limit;
        mpz_class z = enum_count(inst, lim);
        rec.has_oracle = true;
        rec.oracle_log2 = log2_mpz(z);
        rec.ratio = qpow_over_count(est.Q, est.upper_exponent, z);
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  }
  return records;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "family,n,bits,seed,eps,s,jprime,log2_lower,log2_upper,oracle_log2,ratio,"
         "time_ms,mem_bytes\n";
  for (const auto& r : records) {
    out << family_to_string(r.spec.family) << ',' << r.spec.n << ',' << r.spec.bits << ','
        << r.spec.seed << ',' << eps_to_string(r.eps) << ',';
    if (r.error.empty()) {
      out << r.s << ',' << r.j_prime << ',' << fmt_double(r.log2_lower) << ','
          << fmt_double(r.log2_upper) << ',';
      if (r.has_oracle)
        out << fmt_double(r.oracle_log2) << ',' << fmt_double(r.ratio);
      else
        out << ',';
      out << ',' << fmt_double(r.time_ms) << ',' << r.mem_bytes;
    } else {
      out << ",,,,,,,error:" << r.error;
    }
    out << '\n';
  }
  return out.str();
}

std::string records_to_json_lines(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) {
    out << "{\"family\":\"" << family_to_string(r.spec.family) << "\",\"n\":" << r.spec.n
        << ",\"bits\":" << r.spec.bits << ",\"seed\":" << r.spec.seed << ",\"eps\":\""
        << eps_to_string(r.eps) << "\"";
    if (r.error.empty()) {
      out << ",\"s\":" << r.s << ",\"jprime\":" << r.j_prime
          << ",\"log2_lower\":" << fmt_double(r.log2_lower)
          << ",\"log2_upper\":" << fmt_double(r.log2_upper);
      if (r.has_oracle)
        out << ",\"oracle_log2\":" << fmt_double(r.oracle_log2)
            << ",\"ratio\":" << fmt_double(r.ratio);
      out << ",\"time_ms\":" << fmt_double(r.time_ms) << ",\"mem_bytes\":" << r.mem_bytes;
    } else {
      out << ",\"error\":\"" << r.error << "\"";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace kcount
