#ifndef KCOUNT_INSTANCE_HPP
#define KCOUNT_INSTANCE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kcount {

// 0/1 knapsack instance: nonnegative integer weights and capacity.
struct KnapsackInstance {
  std::vector<mpz_class> weights;
  mpz_class capacity;

  std::int64_t n() const { return static_cast<std::int64_t>(weights.size()); }
  mpz_class total_weight() const;
};

// Text format:
//   line 1: "n C"
//   line 2: n whitespace-separated decimal weights (absent when n = 0)
// JSON alternative: {"weights": ["1","2"], "capacity": "10"}.
KnapsackInstance parse_instance_text(std::istream& in);
KnapsackInstance parse_instance_json(const std::string& text);

// Auto-detects JSON by a leading '{'.
KnapsackInstance parse_instance(std::istream& in);
KnapsackInstance parse_instance_string(const std::string& text);

std::string serialize_instance_text(const KnapsackInstance& inst);
std::string serialize_instance_json(const KnapsackInstance& inst);

// Parses a decimal string ("0.25") or plain fraction ("1/4") into an exact
// rational. Scientific notation is rejected.
mpq_class parse_decimal_rational(const std::string& text);

}  // namespace kcount

#endif  // KCOUNT_INSTANCE_HPP
