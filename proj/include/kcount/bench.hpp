#ifndef KCOUNT_BENCH_HPP
#define KCOUNT_BENCH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "kcount/instance.hpp"

namespace kcount {

enum class Family { Uniform, EqualWeights, PowersOfTwo, HalfCapacity, AdversarialDense };
enum class CapRule { Half, Full, Random };

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);
CapRule cap_rule_from_string(const std::string& name);
std::string cap_rule_to_string(CapRule r);

// Deterministic: the same spec always yields the same instance.
struct GenSpec {
  Family family = Family::Uniform;
  std::int64_t n = 0;
  int bits = 20;  // weight bit size, 1..62 where applicable
  CapRule cap_rule = CapRule::Half;
  std::uint64_t seed = 0;
};

KnapsackInstance gen_instance(const GenSpec& spec);

struct BenchRecord {
  GenSpec spec;
  mpq_class eps;
  std::int64_t s = 0;
  std::int64_t j_prime = 0;
  double log2_lower = 0.0;
  double log2_upper = 0.0;
  bool has_oracle = false;
  double oracle_log2 = 0.0;
  double ratio = 0.0;  // Z' / Z, only when has_oracle
  double time_ms = 0.0;
  std::uint64_t mem_bytes = 0;  // estimated working-set of the row buffers
  std::string error;
};

// One record per (spec, eps), in canonical order (spec fields, then eps).
// Per-record failures are recorded in the error field and the sweep continues.
std::vector<BenchRecord> run_sweep(const std::vector<GenSpec>& specs,
                                   const std::vector<mpq_class>& eps_list,
                                   bool with_oracle, int threads = 1,
                                   std::int64_t enum_limit = 25);

// CSV header:
// family,n,bits,seed,eps,s,jprime,log2_lower,log2_upper,oracle_log2,ratio,time_ms,mem_bytes
std::string records_to_csv(const std::vector<BenchRecord>& records);
// JSON lines, identical fields one object per record.
std::string records_to_json_lines(const std::vector<BenchRecord>& records);

}  // namespace kcount

#endif  // KCOUNT_BENCH_HPP
