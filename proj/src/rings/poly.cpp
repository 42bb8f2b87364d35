#include "twistmat/poly.hpp"

#include <algorithm>
#include <sstream>

#include "twistmat/errors.hpp"

namespace twistmat::rings {

namespace {

void trim(std::vector<FieldElem>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

Poly::Poly(std::vector<FieldElem> coeffs) : c(std::move(coeffs)) { trim(c); }

Poly Poly::constant(FieldElem v) { return Poly(std::vector<FieldElem>{v}); }

Poly Poly::monomial(FieldElem v, std::size_t degree) {
  std::vector<FieldElem> c(degree + 1, 0);
  c[degree] = v;
  return Poly(std::move(c));
}

bool Poly::operator<(const Poly& o) const {
  if (c.size() != o.c.size()) return c.size() < o.c.size();
  for (std::size_t i = c.size(); i-- > 0;)
    if (c[i] != o.c[i]) return c[i] < o.c[i];
  return false;
}

namespace poly {

Poly add(const FiniteField& F, const Poly& a, const Poly& b) {
  std::vector<FieldElem> r(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(r));
}

Poly neg(const FiniteField& F, const Poly& a) {
  std::vector<FieldElem> r(a.c.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.neg(a.c[i]);
  return Poly(std::move(r));
}

Poly sub(const FiniteField& F, const Poly& a, const Poly& b) { return add(F, a, neg(F, b)); }

Poly mul(const FiniteField& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<FieldElem> r(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
  }
  return Poly(std::move(r));
}

Poly scale(const FiniteField& F, const Poly& a, FieldElem s) {
  std::vector<FieldElem> r(a.c.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(a.c[i], s);
  return Poly(std::move(r));
}

Poly pow(const FiniteField& F, const Poly& a, unsigned long e) {
  Poly result = Poly::constant(1), base = a;
  while (e) {
    if (e & 1) result = mul(F, result, base);
    e >>= 1;
    if (e) base = mul(F, base, base);
  }
  return result;
}

std::pair<Poly, Poly> divmod(const FiniteField& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::not_a_unit, "polynomial division by zero");
  std::vector<FieldElem> r = a.c;
  const std::size_t db = b.c.size() - 1;
  if (r.size() <= db) return {Poly{}, a};
  std::vector<FieldElem> q(r.size() - db, 0);
  const FieldElem lead_inv = F.inv(b.lead());
  for (std::size_t top = r.size(); top-- > db;) {
    const FieldElem coef = F.mul(r[top], lead_inv);
    if (coef == 0) continue;
    const std::size_t shift = top - db;
    q[shift] = coef;
    for (std::size_t i = 0; i <= db; ++i) r[shift + i] = F.sub(r[shift + i], F.mul(coef, b.c[i]));
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly mod(const FiniteField& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

bool divides(const FiniteField& F, const Poly& d, const Poly& a) { return mod(F, a, d).is_zero(); }

Poly monic(const FiniteField& F, const Poly& a) {
  if (a.is_zero()) return a;
  return scale(F, a, F.inv(a.lead()));
}

Poly gcd(const FiniteField& F, const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = mod(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(F, x);
}

FieldElem eval(const FiniteField& F, const Poly& a, FieldElem x) {
  FieldElem r = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

Poly frobenius(const FiniteField& F, const Poly& a, std::uint32_t power) {
  std::vector<FieldElem> r(a.c.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.frobenius(a.c[i], power);
  return Poly(std::move(r));
}

bool is_irreducible(const FiniteField& F, const Poly& f) {
  const int n = f.degree();
  if (n < 1) throw Error(ErrorCode::invalid_spec, "irreducibility needs degree >= 1");
  if (n == 1) return true;
  const Poly t = Poly::variable();
  Poly power = t;  // t^(q^i) mod f
  for (int i = 1; i <= n / 2; ++i) {
    // raise to the q-th power by repeated squaring modulo f
    Poly base = power, acc = Poly::constant(1);
    unsigned long e = F.order();
    while (e) {
      if (e & 1) acc = mod(F, mul(F, acc, base), f);
      e >>= 1;
      if (e) base = mod(F, mul(F, base, base), f);
    }
    power = acc;
    const Poly g = gcd(F, sub(F, power, t), f);
    if (g.degree() > 0) return false;
  }
  return true;
}

Poly reciprocal(const Poly& f) {
  std::vector<FieldElem> r(f.c.rbegin(), f.c.rend());
  return Poly(std::move(r));
}

bool is_self_reciprocal(const Poly& f) { return reciprocal(f) == f; }

std::vector<Poly> monic_of_degree(const FiniteField& F, int degree) {
  std::vector<Poly> out;
  if (degree < 0) return out;
  std::uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= F.order();
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<FieldElem> c(degree + 1);
    std::uint64_t x = code;
    // most significant digit is the t^(degree-1) coefficient
    for (int i = 0; i < degree; ++i) {
      c[i] = static_cast<FieldElem>(x % F.order());
      x /= F.order();
    }
    c[degree] = 1;
    out.emplace_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const FiniteField& F, const Poly& a, char var) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    const FieldElem c = a.c[i];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    std::string cs = F.to_string(c);
    const bool compound = !F.is_prime_field() && cs.find_first_of("+s") != std::string::npos;
    if (i == 0) {
      os << (compound ? "(" + cs + ")" : cs);
      continue;
    }
    if (c != 1) os << (compound ? "(" + cs + ")" : cs) << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

}  // namespace poly

}  // namespace twistmat::rings
