#include "kcount/instance.hpp"

#include <cctype>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kcount/errors.hpp"

namespace kcount {

namespace {

mpz_class parse_mpz(const std::string& tok, const char* field) {
  if (tok.empty()) throw ParseError(std::string("empty ") + field);
  mpz_class v;
  if (v.set_str(tok, 10) != 0)
    throw ParseError(std::string("invalid integer for ") + field + ": '" + tok + "'");
  if (sgn(v) < 0) throw ParseError(std::string(field) + " must be nonnegative: '" + tok + "'");
  return v;
}

void validate(const KnapsackInstance& inst) {
  for (const auto& w : inst.weights)
    if (sgn(w) < 0) throw ParseError("weights must be nonnegative");
  if (sgn(inst.capacity) < 0) throw ParseError("capacity must be nonnegative");
}

}  // namespace

mpz_class KnapsackInstance::total_weight() const {
  mpz_class t = 0;
  for (const auto& w : weights) t += w;
  return t;
}

KnapsackInstance parse_instance_text(std::istream& in) {
  std::string n_tok, c_tok;
  if (!(in >> n_tok >> c_tok)) throw ParseError("expected header line 'n C'");
  long n;
  try {
    std::size_t pos = 0;
    n = std::stol(n_tok, &pos);
    if (pos != n_tok.size()) throw std::invalid_argument(n_tok);
  } catch (const std::exception&) {
    throw ParseError("invalid item count n: '" + n_tok + "'");
  }
  if (n < 0) throw ParseError("item count n must be nonnegative");

  KnapsackInstance inst;
  inst.capacity = parse_mpz(c_tok, "capacity");
  inst.weights.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    std::string tok;
    if (!(in >> tok))
      throw ParseError("expected " + std::to_string(n) + " weights, got " + std::to_string(i));
    inst.weights.push_back(parse_mpz(tok, "weight"));
  }
  std::string extra;
  if (in >> extra) throw ParseError("trailing token after weights: '" + extra + "'");
  return inst;
}

KnapsackInstance parse_instance_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON instance: ") + e.what());
  }
  if (!j.is_object() || !j.contains("weights") || !j.contains("capacity"))
    throw ParseError("JSON instance must be an object with 'weights' and 'capacity'");
  if (!j["weights"].is_array()) throw ParseError("'weights' must be an array of decimal strings");

  KnapsackInstance inst;
  inst.capacity = parse_mpz(j["capacity"].get<std::string>(), "capacity");
  for (const auto& w : j["weights"]) {
    if (!w.is_string()) throw ParseError("'weights' entries must be decimal strings");
    inst.weights.push_back(parse_mpz(w.get<std::string>(), "weight"));
  }
  validate(inst);
  return inst;
}

KnapsackInstance parse_instance(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_string(buf.str());
}

KnapsackInstance parse_instance_string(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_instance_json(text);
    break;
  }
  std::istringstream in(text);
  return parse_instance_text(in);
}

std::string serialize_instance_text(const KnapsackInstance& inst) {
  std::ostringstream out;
  out << inst.n() << ' ' << inst.capacity.get_str() << '\n';
  for (std::int64_t i = 0; i < inst.n(); ++i) {
    if (i) out << ' ';
    out << inst.weights[static_cast<std::size_t>(i)].get_str();
  }
  if (inst.n() > 0) out << '\n';
  return out.str();
}

std::string serialize_instance_json(const KnapsackInstance& inst) {
  nlohmann::json j;
  j["capacity"] = inst.capacity.get_str();
  j["weights"] = nlohmann::json::array();
  for (const auto& w : inst.weights) j["weights"].push_back(w.get_str());
  return j.dump();
}

mpq_class parse_decimal_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational");
  for (char c : text)
    if (c == 'e' || c == 'E')
      throw ParseError("scientific notation not accepted: '" + text + "'");

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpz_class num = parse_mpz(text.substr(0, slash), "numerator");
    mpz_class den = parse_mpz(text.substr(slash + 1), "denominator");
    if (sgn(den) == 0) throw ParseError("zero denominator: '" + text + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  auto dot = text.find('.');
  std::string digits = dot == std::string::npos
                           ? text
                           : text.substr(0, dot) + text.substr(dot + 1);
  if (digits.empty()) throw ParseError("invalid decimal: '" + text + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("invalid decimal: '" + text + "'");
  mpz_class num(digits, 10);
  mpz_class den = 1;
  if (dot != std::string::npos) {
    std::size_t frac_digits = text.size() - dot - 1;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace kcount
