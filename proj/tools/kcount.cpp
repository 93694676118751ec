#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kcount/bench.hpp"
#include "kcount/core.hpp"
#include "kcount/errors.hpp"
#include "kcount/instance.hpp"
#include "kcount/oracle.hpp"
#include "kcount/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitParameter = 3;
constexpr int kExitLimit = 4;

// Grid exponents above this are not expanded to exact decimal output.
constexpr std::int64_t kExactDecimalMaxExponent = 100000;

kcount::KnapsackInstance load_instance(const std::string& path) {
  if (path.empty() || path == "-") return kcount::parse_instance(std::cin);
  std::ifstream in(path);
  if (!in) throw kcount::ParseError("cannot open input file: " + path);
  return kcount::parse_instance(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kcount: certified approximate counting of 0/1 knapsack solutions"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string eps_str = "0.1";
  std::string format = "text";
  std::string mode = "enum";
  int threads = 1;

  auto* cmd_count = app.add_subcommand("count", "approximate count with certified interval");
  cmd_count->add_option("--input", input, "instance file (text or JSON), '-' for stdin");
  cmd_count->add_option("--eps", eps_str, "relative-error target in (0,1), exact decimal")->required();
  cmd_count->add_option("--format", format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_count->add_option("--threads", threads, "row-parallel workers");

  auto* cmd_exact = app.add_subcommand("exact", "exact count via an oracle");
  cmd_exact->add_option("--input", input, "instance file, '-' for stdin");
  cmd_exact->add_option("--mode", mode, "enum | dp")->check(CLI::IsMember({"enum", "dp"}));

  auto* cmd_verify = app.add_subcommand("verify", "run approximation against the exact oracle");
  cmd_verify->add_option("--input", input, "instance file, '-' for stdin");
  cmd_verify->add_option("--eps", eps_str, "relative-error target in (0,1)")->required();

  std::string family = "uniform", cap_rule = "half";
  std::int64_t gen_n = 10;
  int gen_bits = 20;
  std::uint64_t seed = 0;
  auto* cmd_gen = app.add_subcommand("gen", "generate a reproducible instance");
  cmd_gen->add_option("--family", family,
                      "uniform | equal-weights | powers-of-two | half-capacity | "
                      "adversarial-dense");
  cmd_gen->add_option("--n", gen_n, "item count");
  cmd_gen->add_option("--bits", gen_bits, "weight bit size (1..62)");
  cmd_gen->add_option("--seed", seed, "RNG seed");
  cmd_gen->add_option("--cap-rule", cap_rule, "half | full | rand");
  cmd_gen->add_option("--format", format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> families{"uniform"};
  std::vector<std::int64_t> n_list{100};
  std::vector<std::string> eps_list{"0.1"};
  std::vector<std::uint64_t> seeds{0};
  std::string out_path;
  bool no_oracle = false;
  auto* cmd_bench = app.add_subcommand("bench", "timing/error sweep, CSV + JSON lines");
  cmd_bench->add_option("--family", families, "instance families (repeatable)");
  cmd_bench->add_option("--n", n_list, "instance sizes (repeatable)");
  cmd_bench->add_option("--bits", gen_bits, "weight bit size");
  cmd_bench->add_option("--eps", eps_list, "eps values (repeatable)");
  cmd_bench->add_option("--seed", seeds, "seeds (repeatable)");
  cmd_bench->add_option("--cap-rule", cap_rule, "half | full | rand");
  cmd_bench->add_option("--out", out_path, "output prefix; writes <out>.csv and <out>.jsonl");
  cmd_bench->add_option("--threads", threads, "row-parallel workers");
  cmd_bench->add_flag("--no-oracle", no_oracle, "skip the enumeration oracle columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParameter;
  }

  try {
    if (*cmd_count) {
      kcount::KnapsackInstance inst = load_instance(input);
      mpq_class eps = kcount::parse_decimal_rational(eps_str);
      kcount::CountEstimate est = kcount::approx_count(inst, eps, threads);
      bool want_exact = est.upper_exponent <= kExactDecimalMaxExponent;
      std::string exact_dec =
          want_exact ? kcount::qpow_decimal_upper(est.Q, est.upper_exponent, 30) : "";
      if (format == "json") {
        std::cout << "{\"n\":" << est.n << ",\"eps\":\"" << eps.get_num().get_str() << "/"
                  << eps.get_den().get_str() << "\",\"Q\":{\"num\":\""
                  << est.Q.get_num().get_str() << "\",\"den\":\"" << est.Q.get_den().get_str()
                  << "\"},\"s\":" << est.s << ",\"j_prime\":" << est.j_prime
                  << ",\"log2_lower\":\"" << est.log2_lower_str << "\",\"log2_upper\":\""
                  << est.log2_upper_str << "\"";
        if (want_exact) std::cout << ",\"exact_decimal\":\"" << exact_dec << "\"";
        std::cout << "}\n";
      } else {
        std::cout << "n " << est.n << "\n"
                  << "Q " << est.Q.get_num().get_str() << "/" << est.Q.get_den().get_str()
                  << "\n"
                  << "s " << est.s << "\n"
                  << "j_prime " << est.j_prime << "\n"
                  << "log2_lower " << est.log2_lower_str << " (rounded down)\n"
                  << "log2_upper " << est.log2_upper_str << " (rounded up)\n";
        if (want_exact)
          std::cout << "estimate Q^" << est.upper_exponent << " = " << exact_dec
                    << " (30 significant digits, rounded up)\n";
        else
          std::cout << "estimate Q^" << est.upper_exponent
                    << " (exponent above decimal-expansion threshold)\n";
      }
      return kExitOk;
    }

    if (*cmd_exact) {
      kcount::KnapsackInstance inst = load_instance(input);
      mpz_class z = mode == "dp" ? kcount::dp_count(inst) : kcount::enum_count(inst);
      std::cout << z.get_str() << "\n";
      return kExitOk;
    }

    if (*cmd_verify) {
      kcount::KnapsackInstance inst = load_instance(input);
      mpq_class eps = kcount::parse_decimal_rational(eps_str);
      kcount::VerifyReport rep = kcount::verify_instance(inst, eps);
      std::cout << "Z " << rep.z.get_str() << "\n"
                << "Z_prime Q^" << rep.est.upper_exponent << "\n"
                << "log2_lower " << rep.est.log2_lower_str << "\n"
                << "log2_upper " << rep.est.log2_upper_str << "\n"
                << "ratio " << rep.ratio << "\n"
                << "check Z<=Z' " << (rep.upper_ok ? "pass" : "FAIL") << "\n"
                << "check lower<=Z " << (rep.lower_ok ? "pass" : "FAIL") << "\n"
                << "check Q^(n+1)<=e^eps " << (rep.ratio_bound_ok ? "pass" : "FAIL") << "\n";
      if (rep.sandwich_checked)
        std::cout << "check sandwich " << (rep.sandwich_ok ? "pass" : "FAIL") << "\n";
      std::cout << (rep.all_ok() ? "PASS" : "FAIL") << "\n";
      return rep.all_ok() ? kExitOk : kExitVerifyFailed;
    }

    if (*cmd_gen) {
      kcount::GenSpec spec;
      spec.family = kcount::family_from_string(family);
      spec.n = gen_n;
      spec.bits = gen_bits;
      spec.seed = seed;
      spec.cap_rule = kcount::cap_rule_from_string(cap_rule);
      kcount::KnapsackInstance inst = kcount::gen_instance(spec);
      std::cout << (format == "json" ? kcount::serialize_instance_json(inst) + "\n"
                                     : kcount::serialize_instance_text(inst));
      return kExitOk;
    }

    if (*cmd_bench) {
      std::vector<kcount::GenSpec> specs;
      for (const auto& fam : families)
        for (std::int64_t n : n_list)
          for (std::uint64_t sd : seeds) {
            kcount::GenSpec spec;
            spec.family = kcount::family_from_string(fam);
            spec.n = n;
            spec.bits = gen_bits;
            spec.seed = sd;
            spec.cap_rule = kcount::cap_rule_from_string(cap_rule);
            specs.push_back(spec);
          }
      std::vector<mpq_class> eps_values;
      for (const auto& e : eps_list) eps_values.push_back(kcount::parse_decimal_rational(e));
      auto records = kcount::run_sweep(specs, eps_values, !no_oracle, threads);
      std::string csv = kcount::records_to_csv(records);
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream fc(out_path + ".csv");
        fc << csv;
        std::ofstream fj(out_path + ".jsonl");
        fj << kcount::records_to_json_lines(records);
        if (!fc || !fj) throw kcount::ParameterError("cannot write output: " + out_path);
      }
      return kExitOk;
    }
  } catch (const kcount::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const kcount::LimitError& e) {
    std::cerr << "limit error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const kcount::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitParameter;
  }
  return kExitOk;
}
