#include "twistmat/ring.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "twistmat/errors.hpp"

namespace twistmat::rings {

namespace {

std::string field_name(const FiniteField& F) {
  std::string base = "F_" + std::to_string(F.characteristic());
  if (F.is_prime_field()) return base;
  return base + "[s]/(" + poly::to_string(*FiniteField::prime(F.characteristic()), Poly(F.modulus()), 's') + ")";
}

bool is_square_free(long d) {
  long m = d < 0 ? -d : d;
  for (long k = 2; k * k <= m; ++k)
    if (m % (k * k) == 0) return false;
  return true;
}

mpz_class prime_power_product(const std::vector<long>& primes, const std::vector<int>& k) {
  mpz_class r = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (k[i] == 0) continue;
    mpz_class pp;
    mpz_ui_pow_ui(pp.get_mpz_t(), static_cast<unsigned long>(primes[i]), static_cast<unsigned long>(k[i]));
    r *= pp;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// RingSpec

Ring RingSpec::integers() {
  static const Ring z = [] {
    auto* r = new RingSpec();
    r->kind_ = RingKind::integers;
    return Ring(r);
  }();
  return z;
}

Ring RingSpec::s_integers(std::vector<long> primes) {
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
    throw Error(ErrorCode::invalid_spec, "S-integer primes must be distinct");
  for (long p : primes)
    if (!is_prime(p)) throw Error(ErrorCode::invalid_spec, "S-integer entry " + std::to_string(p) + " is not prime");
  if (primes.empty()) return integers();
  auto* r = new RingSpec();
  r->kind_ = RingKind::s_integers;
  r->primes_ = std::move(primes);
  return Ring(r);
}

Ring RingSpec::quadratic(long d) {
  if (d == 0 || d == 1 || !is_square_free(d))
    throw Error(ErrorCode::invalid_spec, "quadratic d must be square-free and not 0 or 1");
  auto* r = new RingSpec();
  r->kind_ = RingKind::quadratic;
  r->d_ = d;
  if (d > 1) {
    const mpz_class dd = d;
    for (long y = 1; y <= 2000000; ++y) {
      const mpz_class dy2 = dd * y * y;
      for (int s : {-1, 1}) {
        const mpz_class cand = dy2 + s;
        if (cand > 0 && mpz_perfect_square_p(cand.get_mpz_t())) {
          mpz_class x;
          mpz_sqrt(x.get_mpz_t(), cand.get_mpz_t());
          r->fundamental_unit_ = std::make_pair(x, mpz_class(y));
          break;
        }
      }
      if (r->fundamental_unit_) break;
    }
  }
  return Ring(r);
}

Ring RingSpec::finite_field(Field field) {
  auto* r = new RingSpec();
  r->kind_ = RingKind::finite_field;
  r->field_ = std::move(field);
  return Ring(r);
}

Ring RingSpec::poly(Field field) {
  auto* r = new RingSpec();
  r->kind_ = RingKind::poly;
  r->field_ = std::move(field);
  return Ring(r);
}

Ring RingSpec::localized_poly(Field field, bool t_inverted, std::vector<Poly> inverted) {
  const FiniteField& F = *field;
  for (std::size_t i = 0; i < inverted.size(); ++i) {
    const Poly& f = inverted[i];
    if (f.degree() < 1 || f.lead() != 1)
      throw Error(ErrorCode::invalid_spec, "inverted polynomials must be monic of degree >= 1");
    if (!poly::is_irreducible(F, f))
      throw Error(ErrorCode::invalid_spec, poly::to_string(F, f) + " is not irreducible");
    if (f == Poly::variable())
      throw Error(ErrorCode::invalid_spec, "invert t through t_inverted, not the inverted list");
    for (std::size_t j = 0; j < i; ++j)
      if (inverted[j] == f) throw Error(ErrorCode::invalid_spec, "inverted polynomials must be pairwise coprime");
  }
  if (!t_inverted && inverted.empty()) return poly(std::move(field));
  auto* r = new RingSpec();
  r->kind_ = RingKind::localized_poly;
  r->field_ = std::move(field);
  r->t_inverted_ = t_inverted;
  r->inverted_ = std::move(inverted);
  if (t_inverted) r->gen_polys_.push_back(Poly::variable());
  for (const auto& f : r->inverted_) r->gen_polys_.push_back(f);
  return Ring(r);
}

std::size_t RingSpec::generator_count() const noexcept {
  if (is_integer_like()) return primes_.size();
  return gen_polys_.size();
}

bool RingSpec::characteristic_zero() const noexcept {
  return kind_ == RingKind::integers || kind_ == RingKind::s_integers || kind_ == RingKind::quadratic;
}

std::string RingSpec::name() const {
  switch (kind_) {
    case RingKind::integers:
      return "Z";
    case RingKind::s_integers: {
      long prod = 1;
      for (long p : primes_) prod *= p;
      return "Z[1/" + std::to_string(prod) + "]";
    }
    case RingKind::quadratic:
      return "Z[sqrt(" + std::to_string(d_) + ")]";
    case RingKind::finite_field:
      return field_name(*field_);
    case RingKind::poly:
      return field_name(*field_) + "[t]";
    case RingKind::localized_poly: {
      std::string s = field_name(*field_) + "[t";
      if (t_inverted_) s += ",t^-1";
      for (const auto& f : inverted_) s += ",(" + poly::to_string(*field_, f) + ")^-1";
      return s + "]";
    }
  }
  return "?";
}

bool RingSpec::operator==(const RingSpec& o) const {
  if (kind_ != o.kind_) return false;
  if (primes_ != o.primes_ || d_ != o.d_ || t_inverted_ != o.t_inverted_ || inverted_ != o.inverted_) return false;
  if (static_cast<bool>(field_) != static_cast<bool>(o.field_)) return false;
  return !field_ || *field_ == *o.field_;
}

bool same_ring(const Ring& a, const Ring& b) { return a == b || *a == *b; }

void require_same_ring(const Ring& a, const Ring& b) {
  if (!same_ring(a, b)) throw Error(ErrorCode::spec_mismatch, "operands live in " + a->name() + " and " + b->name());
}

// ---------------------------------------------------------------------------
// Normalization helpers

class ElementAccess {
public:
  static RingElement int_normalized(const Ring& r, mpz_class num, std::vector<int> k) {
    RingElement e(r);
    if (num == 0) return e;
    const auto& primes = r->primes();
    for (std::size_t i = 0; i < primes.size(); ++i) {
      while (k[i] > 0 && mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(primes[i]))) {
        mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(primes[i]));
        --k[i];
      }
    }
    e.num_ = std::move(num);
    for (auto& x : k) x = -x;
    e.exps_ = std::move(k);
    return e;
  }

  static RingElement poly_normalized(const Ring& r, Poly num, std::vector<int> k) {
    RingElement e(r);
    if (num.is_zero()) return e;
    const FiniteField& F = r->field();
    for (std::size_t i = 0; i < k.size(); ++i) {
      const Poly& g = r->generator_poly(i);
      while (k[i] > 0) {
        auto [q, rem] = poly::divmod(F, num, g);
        if (!rem.is_zero()) break;
        num = std::move(q);
        --k[i];
      }
    }
    e.pnum_ = std::move(num);
    for (auto& x : k) x = -x;
    e.exps_ = std::move(k);
    return e;
  }

  static std::vector<int> denominators(const RingElement& a) {
    std::vector<int> k(a.exps_.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = -a.exps_[i];
    return k;
  }

  static Poly poly_power_product(const Ring& r, const std::vector<int>& k) {
    const FiniteField& F = r->field();
    Poly out = Poly::constant(1);
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] > 0) out = poly::mul(F, out, poly::pow(F, r->generator_poly(i), static_cast<unsigned long>(k[i])));
    return out;
  }

  static RingElement add(const RingElement& a, const RingElement& b) {
    const Ring& r = a.ring_;
    switch (r->kind()) {
      case RingKind::integers:
      case RingKind::s_integers: {
        auto ka = denominators(a), kb = denominators(b);
        std::vector<int> m(ka.size()), da(ka.size()), db(ka.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
          m[i] = std::max(ka[i], kb[i]);
          da[i] = m[i] - ka[i];
          db[i] = m[i] - kb[i];
        }
        mpz_class num = a.num_ * prime_power_product(r->primes(), da) + b.num_ * prime_power_product(r->primes(), db);
        return int_normalized(r, std::move(num), std::move(m));
      }
      case RingKind::quadratic: {
        RingElement e(r);
        e.num_ = a.num_ + b.num_;
        e.aux_ = a.aux_ + b.aux_;
        return e;
      }
      case RingKind::finite_field: {
        RingElement e(r);
        e.fval_ = r->field().add(a.fval_, b.fval_);
        return e;
      }
      case RingKind::poly:
      case RingKind::localized_poly: {
        const FiniteField& F = r->field();
        auto ka = denominators(a), kb = denominators(b);
        std::vector<int> m(ka.size()), da(ka.size()), db(ka.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
          m[i] = std::max(ka[i], kb[i]);
          da[i] = m[i] - ka[i];
          db[i] = m[i] - kb[i];
        }
        Poly num = poly::add(F, poly::mul(F, a.pnum_, poly_power_product(r, da)),
                             poly::mul(F, b.pnum_, poly_power_product(r, db)));
        return poly_normalized(r, std::move(num), std::move(m));
      }
    }
    return RingElement(r);
  }

  static RingElement mul(const RingElement& a, const RingElement& b) {
    const Ring& r = a.ring_;
    switch (r->kind()) {
      case RingKind::integers:
      case RingKind::s_integers: {
        auto ka = denominators(a), kb = denominators(b);
        for (std::size_t i = 0; i < ka.size(); ++i) ka[i] += kb[i];
        return int_normalized(r, a.num_ * b.num_, std::move(ka));
      }
      case RingKind::quadratic: {
        RingElement e(r);
        e.num_ = a.num_ * b.num_ + r->quadratic_d() * a.aux_ * b.aux_;
        e.aux_ = a.num_ * b.aux_ + a.aux_ * b.num_;
        return e;
      }
      case RingKind::finite_field: {
        RingElement e(r);
        e.fval_ = r->field().mul(a.fval_, b.fval_);
        return e;
      }
      case RingKind::poly:
      case RingKind::localized_poly: {
        auto ka = denominators(a), kb = denominators(b);
        for (std::size_t i = 0; i < ka.size(); ++i) ka[i] += kb[i];
        return poly_normalized(r, poly::mul(r->field(), a.pnum_, b.pnum_), std::move(ka));
      }
    }
    return RingElement(r);
  }

  static RingElement neg(const RingElement& a) {
    RingElement e = a;
    switch (a.kind()) {
      case RingKind::integers:
      case RingKind::s_integers:
        e.num_ = -a.num_;
        break;
      case RingKind::quadratic:
        e.num_ = -a.num_;
        e.aux_ = -a.aux_;
        break;
      case RingKind::finite_field:
        e.fval_ = a.ring_->field().neg(a.fval_);
        break;
      case RingKind::poly:
      case RingKind::localized_poly:
        e.pnum_ = poly::neg(a.ring_->field(), a.pnum_);
        break;
    }
    return e;
  }

  // Multiplicities of the inverted generators inside the numerator, and the
  // cofactor left after removing them.
  static std::vector<int> strip_int(const RingElement& a, mpz_class& rest) {
    const auto& primes = a.ring_->primes();
    std::vector<int> m(primes.size(), 0);
    rest = a.num_;
    for (std::size_t i = 0; i < primes.size(); ++i)
      while (rest != 0 && mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(primes[i]))) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(primes[i]));
        ++m[i];
      }
    return m;
  }

  static std::vector<int> strip_poly(const RingElement& a, Poly& rest) {
    const Ring& r = a.ring_;
    const FiniteField& F = r->field();
    std::vector<int> m(r->generator_count(), 0);
    rest = a.pnum_;
    for (std::size_t i = 0; i < m.size(); ++i) {
      while (!rest.is_zero()) {
        auto [q, rem] = poly::divmod(F, rest, r->generator_poly(i));
        if (!rem.is_zero()) break;
        rest = std::move(q);
        ++m[i];
      }
    }
    return m;
  }

  static void set_int(RingElement& e, mpz_class num, std::vector<int> exps) {
    e.num_ = std::move(num);
    e.exps_ = std::move(exps);
  }
  static void set_quad(RingElement& e, mpz_class a, mpz_class b) {
    e.num_ = std::move(a);
    e.aux_ = std::move(b);
  }
  static void set_field(RingElement& e, FieldElem v) { e.fval_ = v; }
};

// ---------------------------------------------------------------------------
// RingElement

RingElement::RingElement(Ring ring) : ring_(std::move(ring)) {
  if (ring_->is_integer_like() || ring_->is_poly_like()) exps_.assign(ring_->generator_count(), 0);
}

bool RingElement::is_zero() const noexcept {
  switch (kind()) {
    case RingKind::integers:
    case RingKind::s_integers:
      return num_ == 0;
    case RingKind::quadratic:
      return num_ == 0 && aux_ == 0;
    case RingKind::finite_field:
      return fval_ == 0;
    case RingKind::poly:
    case RingKind::localized_poly:
      return pnum_.is_zero();
  }
  return false;
}

bool RingElement::is_one() const noexcept {
  const bool no_den = std::all_of(exps_.begin(), exps_.end(), [](int x) { return x == 0; });
  switch (kind()) {
    case RingKind::integers:
    case RingKind::s_integers:
      return num_ == 1 && no_den;
    case RingKind::quadratic:
      return num_ == 1 && aux_ == 0;
    case RingKind::finite_field:
      return fval_ == 1;
    case RingKind::poly:
    case RingKind::localized_poly:
      return no_den && pnum_.c.size() == 1 && pnum_.c[0] == 1;
  }
  return false;
}

bool RingElement::operator==(const RingElement& o) const {
  if (!same_ring(ring_, o.ring_)) return false;
  return num_ == o.num_ && aux_ == o.aux_ && fval_ == o.fval_ && pnum_ == o.pnum_ && exps_ == o.exps_;
}

std::size_t RingElement::hash() const {
  std::size_t h = static_cast<std::size_t>(kind()) * 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  mix(std::hash<std::string>{}(num_.get_str(16)));
  mix(std::hash<std::string>{}(aux_.get_str(16)));
  mix(fval_);
  for (auto c : pnum_.c) mix(c);
  for (auto e : exps_) mix(static_cast<std::size_t>(e));
  return h;
}

std::string RingElement::to_string() const {
  switch (kind()) {
    case RingKind::integers:
    case RingKind::s_integers: {
      std::vector<int> k(exps_.size());
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = -exps_[i];
      const mpz_class den = prime_power_product(ring_->primes(), k);
      if (den == 1) return num_.get_str();
      return num_.get_str() + "/" + den.get_str();
    }
    case RingKind::quadratic: {
      const std::string root = "sqrt(" + std::to_string(ring_->quadratic_d()) + ")";
      if (aux_ == 0) return num_.get_str();
      std::string b;
      if (aux_ == 1) b = root;
      else if (aux_ == -1) b = "-" + root;
      else b = aux_.get_str() + "*" + root;
      if (num_ == 0) return b;
      return num_.get_str() + (aux_ > 0 ? "+" : "") + b;
    }
    case RingKind::finite_field:
      return ring_->field().to_string(fval_);
    case RingKind::poly:
    case RingKind::localized_poly: {
      const FiniteField& F = ring_->field();
      std::string num = poly::to_string(F, pnum_);
      const bool has_den = std::any_of(exps_.begin(), exps_.end(), [](int x) { return x != 0; });
      if (!has_den) return num;
      std::vector<std::string> parts;
      if (!(pnum_.c.size() == 1 && pnum_.c[0] == 1)) {
        const bool compound = num.find('+') != std::string::npos || num.find('*') != std::string::npos ||
                              num.find('t') != std::string::npos;
        parts.push_back(compound ? "(" + num + ")" : num);
      }
      for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        const Poly& g = ring_->generator_poly(i);
        const std::string gs = g == Poly::variable() ? "t" : "(" + poly::to_string(F, g) + ")";
        parts.push_back(gs + "^" + std::to_string(exps_[i]));
      }
      std::string out;
      for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
      return out;
    }
  }
  return "?";
}

RingElement RingElement::from_integer(const Ring& r, const mpz_class& v) {
  switch (r->kind()) {
    case RingKind::integers:
    case RingKind::s_integers:
      return ElementAccess::int_normalized(r, v, std::vector<int>(r->generator_count(), 0));
    case RingKind::quadratic: {
      RingElement e(r);
      ElementAccess::set_quad(e, v, 0);
      return e;
    }
    case RingKind::finite_field:
    case RingKind::poly:
    case RingKind::localized_poly: {
      const mpz_class red = ((v % r->field().characteristic()) + r->field().characteristic()) % r->field().characteristic();
      const FieldElem fv = r->field().from_int(red.get_si());
      return from_field(r, fv);
    }
  }
  return RingElement(r);
}

RingElement RingElement::from_fraction(const Ring& r, const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::denominator_not_invertible, "zero denominator");
  switch (r->kind()) {
    case RingKind::integers:
    case RingKind::s_integers: {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      mpz_class n = num / g, d = den / g;
      if (d < 0) {
        n = -n;
        d = -d;
      }
      const auto& primes = r->primes();
      std::vector<int> k(primes.size(), 0);
      for (std::size_t i = 0; i < primes.size(); ++i)
        while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(primes[i]))) {
          mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(primes[i]));
          ++k[i];
        }
      if (d != 1)
        throw Error(ErrorCode::denominator_not_invertible,
                    "denominator factor " + d.get_str() + " is not inverted in " + r->name());
      if (n == 0) return RingElement(r);
      return ElementAccess::int_normalized(r, std::move(n), std::move(k));
    }
    case RingKind::quadratic: {
      if (num % den != 0)
        throw Error(ErrorCode::denominator_not_invertible, "denominator " + den.get_str() + " is not a unit in " + r->name());
      return from_integer(r, num / den);
    }
    default: {
      const RingElement n = from_integer(r, num), d = from_integer(r, den);
      if (d.is_zero()) throw Error(ErrorCode::denominator_not_invertible, "denominator vanishes in " + r->name());
      return n * unit_inverse(d);
    }
  }
}

RingElement RingElement::from_quadratic(const Ring& r, const mpz_class& a, const mpz_class& b) {
  if (r->kind() != RingKind::quadratic) throw Error(ErrorCode::spec_mismatch, "not a quadratic ring");
  RingElement e(r);
  ElementAccess::set_quad(e, a, b);
  return e;
}

RingElement RingElement::from_field(const Ring& r, FieldElem v) {
  switch (r->kind()) {
    case RingKind::finite_field: {
      RingElement e(r);
      ElementAccess::set_field(e, v % r->field().order());
      return e;
    }
    case RingKind::poly:
    case RingKind::localized_poly:
      return from_poly(r, Poly::constant(v));
    default:
      throw Error(ErrorCode::spec_mismatch, r->name() + " has no finite base field");
  }
}

RingElement RingElement::from_poly(const Ring& r, const Poly& p) {
  if (!r->is_poly_like()) throw Error(ErrorCode::spec_mismatch, r->name() + " is not a polynomial ring");
  return ElementAccess::poly_normalized(r, p, std::vector<int>(r->generator_count(), 0));
}

RingElement RingElement::from_poly_fraction(const Ring& r, const Poly& num, const Poly& den) {
  if (!r->is_poly_like()) throw Error(ErrorCode::spec_mismatch, r->name() + " is not a polynomial ring");
  if (den.is_zero()) throw Error(ErrorCode::denominator_not_invertible, "zero denominator");
  const FiniteField& F = r->field();
  Poly d = den;
  std::vector<int> k(r->generator_count(), 0);
  for (std::size_t i = 0; i < k.size(); ++i) {
    while (d.degree() > 0) {
      auto [q, rem] = poly::divmod(F, d, r->generator_poly(i));
      if (!rem.is_zero()) break;
      d = std::move(q);
      ++k[i];
    }
  }
  if (d.degree() != 0)
    throw Error(ErrorCode::denominator_not_invertible,
                "denominator factor " + poly::to_string(F, d) + " is not inverted in " + r->name());
  const Poly n = poly::scale(F, num, F.inv(d.lead()));
  return ElementAccess::poly_normalized(r, n, std::move(k));
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring(), b.ring());
  return ElementAccess::add(a, b);
}

RingElement operator-(const RingElement& a) { return ElementAccess::neg(a); }

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring(), b.ring());
  return ElementAccess::mul(a, b);
}

// ---------------------------------------------------------------------------
// Free functions

RingElement zero(const Ring& r) { return RingElement(r); }
RingElement one(const Ring& r) { return RingElement::from_integer(r, 1); }
RingElement from_int(const Ring& r, long long v) { return RingElement::from_integer(r, mpz_class(static_cast<long>(v))); }

RingElement variable(const Ring& r) { return RingElement::from_poly(r, Poly::variable()); }

RingElement sqrt_d(const Ring& r) { return RingElement::from_quadratic(r, 0, 1); }

RingElement add(const RingElement& a, const RingElement& b) { return a + b; }
RingElement sub(const RingElement& a, const RingElement& b) { return a - b; }
RingElement mul(const RingElement& a, const RingElement& b) { return a * b; }
RingElement neg(const RingElement& a) { return -a; }

RingElement pow(const RingElement& a, long long e) {
  RingElement base = e < 0 ? unit_inverse(a) : a;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  RingElement result = one(a.ring());
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::optional<RingElement> try_inverse(const RingElement& a) {
  if (a.is_zero()) return std::nullopt;
  const Ring& r = a.ring();
  switch (r->kind()) {
    case RingKind::integers:
    case RingKind::s_integers: {
      mpz_class rest;
      auto m = ElementAccess::strip_int(a, rest);
      if (rest != 1 && rest != -1) return std::nullopt;
      // a = rest * prod p^(m+e), inverse = rest * prod p^-(m+e)
      std::vector<int> up(m.size()), down(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        const int total = m[i] + a.exponents()[i];
        (total < 0 ? up[i] : down[i]) = total < 0 ? -total : total;
      }
      return RingElement::from_fraction(r, rest * prime_power_product(r->primes(), up),
                                        prime_power_product(r->primes(), down));
    }
    case RingKind::quadratic: {
      const mpz_class n = a.numerator() * a.numerator() - r->quadratic_d() * a.sqrt_coefficient() * a.sqrt_coefficient();
      if (n != 1 && n != -1) return std::nullopt;
      return RingElement::from_quadratic(r, a.numerator() * n, -a.sqrt_coefficient() * n);
    }
    case RingKind::finite_field:
      return RingElement::from_field(r, r->field().inv(a.field_value()));
    case RingKind::poly:
    case RingKind::localized_poly: {
      Poly rest;
      auto m = ElementAccess::strip_poly(a, rest);
      if (rest.degree() != 0) return std::nullopt;
      const FiniteField& F = r->field();
      std::vector<int> up(m.size()), down(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        const int total = m[i] + a.exponents()[i];
        (total < 0 ? up[i] : down[i]) = total < 0 ? -total : total;
      }
      const Poly num = poly::scale(F, ElementAccess::poly_power_product(r, up), F.inv(rest.lead()));
      return RingElement::from_poly_fraction(r, num, ElementAccess::poly_power_product(r, down));
    }
  }
  return std::nullopt;
}

RingElement unit_inverse(const RingElement& a) {
  auto inv = try_inverse(a);
  if (!inv) throw Error(ErrorCode::not_a_unit, a.to_string() + " is not a unit in " + a.ring()->name());
  return *inv;
}

RingElement UnitFactorization::multiply_out() const {
  RingElement r = constant;
  for (std::size_t i = 0; i < generators.size(); ++i) r = r * pow(generators[i], exponents[i]);
  return r;
}

namespace {

int sign_quadratic(const mpz_class& a, const mpz_class& b, long d) {
  // sign of a + b sqrt(d), d > 0
  const int sa = sgn(a), sb = sgn(b);
  if (sa >= 0 && sb >= 0) return (sa || sb) ? 1 : 0;
  if (sa <= 0 && sb <= 0) return -1;
  const mpz_class a2 = a * a, db2 = d * b * b;
  if (sa > 0) return a2 > db2 ? 1 : -1;
  return db2 > a2 ? 1 : -1;
}

}  // namespace

std::optional<UnitFactorization> is_unit(const RingElement& a) {
  if (a.is_zero()) return std::nullopt;
  const Ring& r = a.ring();
  switch (r->kind()) {
    case RingKind::integers:
    case RingKind::s_integers: {
      mpz_class rest;
      auto m = ElementAccess::strip_int(a, rest);
      if (rest != 1 && rest != -1) return std::nullopt;
      UnitFactorization f{RingElement::from_integer(r, rest), {}, {}};
      for (std::size_t i = 0; i < m.size(); ++i) {
        f.generators.push_back(from_int(r, r->primes()[i]));
        f.exponents.push_back(m[i] + a.exponents()[i]);
      }
      return f;
    }
    case RingKind::quadratic: {
      if (!try_inverse(a)) return std::nullopt;
      const long d = r->quadratic_d();
      if (d < 0) return UnitFactorization{a, {}, {}};
      const auto& fu = r->fundamental_unit();
      if (!fu) throw Error(ErrorCode::unsupported_spec, "fundamental unit of " + r->name() + " not found");
      const RingElement eps = RingElement::from_quadratic(r, fu->first, fu->second);
      const RingElement eps_inv = unit_inverse(eps);
      RingElement w = a;
      RingElement sign = one(r);
      if (sign_quadratic(w.numerator(), w.sqrt_coefficient(), d) < 0) {
        w = -w;
        sign = -sign;
      }
      long k = 0;
      // a positive unit x + y sqrt(d) exceeds 1 iff x, y > 0 and is below 1 iff sgn x != sgn y
      while (w.numerator() > 0 && w.sqrt_coefficient() > 0) {
        w = w * eps_inv;
        ++k;
      }
      while (sgn(w.numerator()) * sgn(w.sqrt_coefficient()) < 0) {
        w = w * eps;
        --k;
      }
      return UnitFactorization{sign, {eps}, {k}};
    }
    case RingKind::finite_field:
      return UnitFactorization{a, {}, {}};
    case RingKind::poly:
    case RingKind::localized_poly: {
      Poly rest;
      auto m = ElementAccess::strip_poly(a, rest);
      if (rest.degree() != 0) return std::nullopt;
      UnitFactorization f{RingElement::from_field(r, rest.lead()), {}, {}};
      for (std::size_t i = 0; i < m.size(); ++i) {
        f.generators.push_back(RingElement::from_poly(r, r->generator_poly(i)));
        f.exponents.push_back(m[i] + a.exponents()[i]);
      }
      return f;
    }
  }
  return std::nullopt;
}

std::vector<RingElement> as_sum_of_units(const RingElement& a) {
  const Ring& r = a.ring();
  if (r->kind() == RingKind::finite_field) {
    if (a.is_zero()) return {};
    return {a};
  }
  if (r->kind() != RingKind::localized_poly || !r->t_inverted())
    throw Error(ErrorCode::unsupported_spec, "sum-of-units decomposition needs t inverted");
  std::vector<RingElement> out;
  RingElement den_part = one(r);
  for (std::size_t i = 0; i < a.exponents().size(); ++i)
    if (a.exponents()[i] != 0)
      den_part = den_part * pow(RingElement::from_poly(r, r->generator_poly(i)), a.exponents()[i]);
  for (std::size_t k = 0; k < a.poly_numerator().c.size(); ++k) {
    const FieldElem c = a.poly_numerator().c[k];
    if (c == 0) continue;
    out.push_back(RingElement::from_poly(r, Poly::monomial(c, k)) * den_part);
  }
  return out;
}

RingElement evaluate_poly(const Poly& p, const RingElement& x) {
  const Ring& r = x.ring();
  RingElement acc = zero(r);
  for (std::size_t i = p.c.size(); i-- > 0;) acc = acc * x + RingElement::from_field(r, p.c[i]);
  return acc;
}

}  // namespace twistmat::rings

namespace twistmat::rings {

RingElement divide(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring(), b.ring());
  if (b.is_zero()) throw Error(ErrorCode::denominator_not_invertible, "division by zero");
  if (auto inv = try_inverse(b)) return a * *inv;
  const Ring& r = a.ring();
  switch (r->kind()) {
    case RingKind::integers:
    case RingKind::s_integers: {
      // a/b = (na * Db) / (Da * nb) with D the generator denominators
      std::vector<int> ka(r->generator_count()), kb(r->generator_count());
      for (std::size_t i = 0; i < ka.size(); ++i) {
        ka[i] = -a.exponents()[i];
        kb[i] = -b.exponents()[i];
      }
      return RingElement::from_fraction(r, a.numerator() * prime_power_product(r->primes(), kb),
                                        b.numerator() * prime_power_product(r->primes(), ka));
    }
    case RingKind::quadratic: {
      const mpz_class n = b.numerator() * b.numerator() - r->quadratic_d() * b.sqrt_coefficient() * b.sqrt_coefficient();
      const RingElement t = a * RingElement::from_quadratic(r, b.numerator(), -b.sqrt_coefficient());
      if (t.numerator() % n != 0 || t.sqrt_coefficient() % n != 0)
        throw Error(ErrorCode::denominator_not_invertible, b.to_string() + " does not divide " + a.to_string());
      return RingElement::from_quadratic(r, t.numerator() / n, t.sqrt_coefficient() / n);
    }
    case RingKind::poly:
    case RingKind::localized_poly: {
      const FiniteField& F = r->field();
      std::vector<int> ka(r->generator_count()), kb(r->generator_count());
      for (std::size_t i = 0; i < ka.size(); ++i) {
        ka[i] = -a.exponents()[i];
        kb[i] = -b.exponents()[i];
      }
      const Poly num = poly::mul(F, a.poly_numerator(), ElementAccess::poly_power_product(r, kb));
      const Poly den = poly::mul(F, b.poly_numerator(), ElementAccess::poly_power_product(r, ka));
      auto [q, rem] = poly::divmod(F, num, den);
      if (rem.is_zero()) return RingElement::from_poly(r, q);
      const Poly g = poly::gcd(F, num, den);
      return RingElement::from_poly_fraction(r, poly::divmod(F, num, g).first, poly::divmod(F, den, g).first);
    }
    case RingKind::finite_field:
      break;
  }
  throw Error(ErrorCode::denominator_not_invertible, "cannot divide");
}

}  // namespace twistmat::rings
