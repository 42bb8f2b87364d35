#include "twistmat/ring_parse.hpp"

#include <cctype>
#include <regex>

#include "twistmat/errors.hpp"

namespace twistmat::rings {

namespace {

using json = nlohmann::json;

class ElementParser {
public:
  ElementParser(const Ring& r, std::string_view text, char var) : ring_(r), text_(text), var_(var) {}

  RingElement parse() {
    RingElement v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::parse_error, msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_atom() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == var_ || c == 's' || c == 't';
  }

  RingElement expr() {
    RingElement acc = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term();
      } else if (c == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RingElement term() {
    RingElement acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        ++pos_;
        acc = divide(acc, unary());
      } else if (starts_atom()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  RingElement unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  long long signed_int() {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    } else if (peek() == '(') {
      ++pos_;
      const long long v = signed_int();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    const long long v = std::stoll(std::string(text_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  RingElement power() {
    RingElement base = atom();
    if (peek() == '^') {
      ++pos_;
      return pow(base, signed_int());
    }
    return base;
  }

  RingElement atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RingElement v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RingElement::from_integer(ring_, mpz_class(std::string(text_.substr(start, pos_ - start))));
    }
    if (text_.substr(pos_, 5) == "sqrt(") {
      pos_ += 5;
      const long long d = signed_int();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      if (ring_->kind() != RingKind::quadratic || ring_->quadratic_d() != d)
        throw Error(ErrorCode::spec_mismatch, "sqrt(" + std::to_string(d) + ") is not in " + ring_->name());
      return sqrt_d(ring_);
    }
    if (c == var_) {
      ++pos_;
      if (!ring_->is_poly_like()) throw Error(ErrorCode::spec_mismatch, std::string(1, var_) + " is not in " + ring_->name());
      return variable(ring_);
    }
    if (c == 's') {
      ++pos_;
      if (ring_->kind() == RingKind::integers || ring_->kind() == RingKind::s_integers ||
          ring_->kind() == RingKind::quadratic || ring_->field().is_prime_field())
        throw Error(ErrorCode::spec_mismatch, "s is not in " + ring_->name());
      return RingElement::from_field(ring_, ring_->field().generator());
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Ring& ring_;
  std::string_view text_;
  char var_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Field field_of_order(long long q, const std::string& modulus) {
  long long p = 0;
  int k = 0;
  for (long long cand = 2; cand <= q; ++cand) {
    if (!is_prime(cand) || q % cand) continue;
    long long m = q;
    int e = 0;
    while (m % cand == 0) {
      m /= cand;
      ++e;
    }
    if (m != 1) throw Error(ErrorCode::invalid_spec, std::to_string(q) + " is not a prime power");
    p = cand;
    k = e;
    break;
  }
  if (p == 0) throw Error(ErrorCode::invalid_spec, "field order must be a prime power");
  const auto prime = FiniteField::prime(static_cast<std::uint32_t>(p));
  if (!modulus.empty()) {
    const Poly m = parse_poly(prime, modulus, 's');
    if (m.degree() != k) throw Error(ErrorCode::invalid_spec, "modulus degree does not match the field order");
    return std::make_shared<const FiniteField>(static_cast<std::uint32_t>(p), m.c);
  }
  if (k == 1) return prime;
  for (const Poly& m : poly::monic_of_degree(*prime, k))
    if (poly::is_irreducible(*prime, m)) return std::make_shared<const FiniteField>(static_cast<std::uint32_t>(p), m.c);
  throw Error(ErrorCode::invalid_spec, "no irreducible modulus found");
}

Field field_from_json(const json& j) {
  if (!j.contains("p")) throw Error(ErrorCode::invalid_spec, "ring spec needs \"p\"");
  const long long p = j.at("p").get<long long>();
  if (!is_prime(p)) throw Error(ErrorCode::invalid_spec, std::to_string(p) + " is not prime");
  const auto prime = FiniteField::prime(static_cast<std::uint32_t>(p));
  if (!j.contains("modulus")) return prime;
  const Poly m = parse_poly(prime, j.at("modulus").get<std::string>(), 's');
  if (m.degree() == 1) return prime;
  return std::make_shared<const FiniteField>(static_cast<std::uint32_t>(p), m.c);
}

std::vector<long> factor_square_free(long long n) {
  std::vector<long> primes;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      primes.push_back(static_cast<long>(p));
      while (n % p == 0) n /= p;
    }
  if (n > 1) primes.push_back(static_cast<long>(n));
  return primes;
}

// "F_q", "F_p[s]/(m)" optionally followed by "[t,...]".
Ring parse_field_name(const std::string& text) {
  static const std::regex head(R"(^F_(\d+)(\[s\]/\(([^)]*)\))?(.*)$)");
  std::smatch m;
  if (!std::regex_match(text, m, head)) throw Error(ErrorCode::parse_error, "unknown ring name \"" + text + "\"");
  const Field F = field_of_order(std::stoll(m[1]), m[3]);
  std::string rest = m[4];
  if (rest.empty()) return RingSpec::finite_field(F);
  if (rest.size() < 3 || rest.front() != '[' || rest.back() != ']' || rest[1] != 't')
    throw Error(ErrorCode::parse_error, "unknown ring name \"" + text + "\"");
  rest = rest.substr(2, rest.size() - 3);
  bool t_inv = false;
  std::vector<Poly> inverted;
  // split on commas that are not inside parentheses
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : rest) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) parts.push_back(trim(cur));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string& part = parts[i];
    if (i == 0 && part.empty()) continue;
    if (part == "t^-1" || part == "1/t") {
      t_inv = true;
      continue;
    }
    static const std::regex inv(R"(^\((.*)\)\^-1$)");
    std::smatch pm;
    if (!std::regex_match(part, pm, inv)) throw Error(ErrorCode::parse_error, "cannot read ring generator \"" + part + "\"");
    inverted.push_back(parse_poly(F, pm[1].str()));
  }
  if (!t_inv && inverted.empty()) return RingSpec::poly(F);
  return RingSpec::localized_poly(F, t_inv, std::move(inverted));
}

}  // namespace

Poly parse_poly(const Field& F, std::string_view text, char var) {
  const std::string s = trim(text);
  const bool dense = s.size() > 1 && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (dense) {
    std::vector<FieldElem> c;
    for (char ch : s) {
      const std::uint32_t v = static_cast<std::uint32_t>(ch - '0');
      if (v >= F->characteristic()) throw Error(ErrorCode::parse_error, "digit out of range in \"" + s + "\"");
      c.push_back(F->from_int(v));
    }
    return Poly(std::move(c));
  }
  const Ring r = RingSpec::poly(F);
  const RingElement e = ElementParser(r, s, var).parse();
  return e.poly_numerator();
}

RingElement parse_element(const Ring& r, std::string_view text) {
  if (trim(text).empty()) throw Error(ErrorCode::parse_error, "empty element");
  return ElementParser(r, text, 't').parse();
}

Ring ring_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error(ErrorCode::invalid_spec, "ring spec must be an object with \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "integers") return RingSpec::integers();
    if (kind == "s_integers") return RingSpec::s_integers(j.at("primes").get<std::vector<long>>());
    if (kind == "quadratic") return RingSpec::quadratic(j.at("d").get<long>());
    if (kind == "finite_field") return RingSpec::finite_field(field_from_json(j));
    if (kind == "poly") return RingSpec::poly(field_from_json(j));
    if (kind == "localized_poly") {
      const Field F = field_from_json(j);
      std::vector<Poly> inv;
      for (const auto& f : j.value("inverted", json::array())) inv.push_back(parse_poly(F, f.get<std::string>()));
      return RingSpec::localized_poly(F, j.value("t_inverted", false), std::move(inv));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_spec, std::string("bad ring spec: ") + e.what());
  }
  throw Error(ErrorCode::invalid_spec, "unknown ring kind \"" + kind + "\"");
}

Ring parse_ring(std::string_view text) {
  const std::string s = trim(text);
  if (!s.empty() && s.front() == '{') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::parse_error, std::string("ring JSON: ") + e.what());
    }
    return ring_from_json(j);
  }
  std::string compact;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact == "Z") return RingSpec::integers();
  if (compact == "R_f") {
    const auto F2 = FiniteField::prime(2);
    return RingSpec::localized_poly(F2, true, {Poly({1, 1, 0, 1})});
  }
  static const std::regex sint(R"(^Z\[1/(\d+)\]$)");
  static const std::regex quad(R"(^Z\[sqrt\((-?\d+)\)\]$)");
  std::smatch m;
  if (std::regex_match(compact, m, sint)) {
    const long long n = std::stoll(m[1]);
    if (n < 2) throw Error(ErrorCode::invalid_spec, "Z[1/N] needs N >= 2");
    return RingSpec::s_integers(factor_square_free(n));
  }
  if (std::regex_match(compact, m, quad)) return RingSpec::quadratic(std::stol(m[1]));
  return parse_field_name(compact);
}

json ring_to_json(const Ring& r) {
  json j;
  auto field_fields = [&](json& o) {
    o["p"] = r->field().characteristic();
    if (!r->field().is_prime_field())
      o["modulus"] = poly::to_string(*FiniteField::prime(r->field().characteristic()), Poly(r->field().modulus()), 's');
  };
  switch (r->kind()) {
    case RingKind::integers:
      j["kind"] = "integers";
      break;
    case RingKind::s_integers:
      j["kind"] = "s_integers";
      j["primes"] = r->primes();
      break;
    case RingKind::quadratic:
      j["kind"] = "quadratic";
      j["d"] = r->quadratic_d();
      break;
    case RingKind::finite_field:
      j["kind"] = "finite_field";
      field_fields(j);
      break;
    case RingKind::poly:
      j["kind"] = "poly";
      field_fields(j);
      break;
    case RingKind::localized_poly: {
      j["kind"] = "localized_poly";
      field_fields(j);
      j["t_inverted"] = r->t_inverted();
      json inv = json::array();
      for (const auto& f : r->inverted()) inv.push_back(poly::to_string(r->field(), f));
      j["inverted"] = inv;
      break;
    }
  }
  j["name"] = r->name();
  return j;
}

}  // namespace twistmat::rings
