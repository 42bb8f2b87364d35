#include "twistmat/ring_aut.hpp"

#include <algorithm>
#include <set>

#include "twistmat/errors.hpp"

namespace twistmat::rings {

using json = nlohmann::json;

RingAutomorphism RingAutomorphism::identity() {
  RingAutomorphism r;
  r.verified = true;
  return r;
}

RingAutomorphism RingAutomorphism::quadratic_conjugation() {
  RingAutomorphism r;
  r.kind = RingAutKind::quadratic_conjugation;
  r.verified = true;
  return r;
}

RingAutomorphism RingAutomorphism::frobenius(std::uint32_t power) {
  RingAutomorphism r;
  r.kind = power == 0 ? RingAutKind::identity : RingAutKind::frobenius;
  r.frobenius_power = power;
  r.verified = true;
  return r;
}

bool RingAutomorphism::operator==(const RingAutomorphism& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case RingAutKind::identity:
    case RingAutKind::quadratic_conjugation:
      return true;
    case RingAutKind::frobenius:
      return frobenius_power == o.frobenius_power;
    case RingAutKind::monomial:
      return a == o.a && b == o.b && c == o.c && d == o.d && lambda == o.lambda && mu == o.mu;
    case RingAutKind::affine:
      return lambda == o.lambda && shift == o.shift;
  }
  return false;
}

std::string RingAutomorphism::to_string() const {
  switch (kind) {
    case RingAutKind::identity:
      return "id";
    case RingAutKind::quadratic_conjugation:
      return "quad_conj";
    case RingAutKind::frobenius:
      return "frobenius(" + std::to_string(frobenius_power) + ")";
    case RingAutKind::monomial: {
      auto mono = [](FieldElem k, long e1, long e2) {
        std::string m = k != 1 ? std::to_string(k) : "";
        auto factor = [&](const char* v, long e) {
          if (e == 0) return;
          if (!m.empty()) m += "*";
          m += v;
          if (e != 1) m += "^" + std::to_string(e);
        };
        factor("t", e1);
        factor("f", e2);
        return m.empty() ? std::string("1") : m;
      };
      return "t->" + mono(lambda, a, b) + ", f->" + mono(mu, c, d) + " (a,b,c,d)=(" + std::to_string(a) + "," +
             std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d) + ")";
    }
    case RingAutKind::affine:
      return "t->" + std::to_string(lambda) + "*t+" + std::to_string(shift);
  }
  return "?";
}

json RingAutomorphism::to_json() const {
  json j;
  switch (kind) {
    case RingAutKind::identity:
      j["kind"] = "identity";
      break;
    case RingAutKind::quadratic_conjugation:
      j["kind"] = "quad_conj";
      break;
    case RingAutKind::frobenius:
      j["kind"] = "frobenius";
      j["power"] = frobenius_power;
      break;
    case RingAutKind::monomial:
      j["kind"] = "monomial";
      j["a"] = a;
      j["b"] = b;
      j["c"] = c;
      j["d"] = d;
      j["lambda"] = lambda;
      j["mu"] = mu;
      break;
    case RingAutKind::affine:
      j["kind"] = "affine";
      j["lambda"] = lambda;
      j["shift"] = shift;
      break;
  }
  j["verified"] = verified;
  return j;
}

RingAutomorphism RingAutomorphism::from_json(const json& j) {
  try {
    const std::string k = j.is_string() ? j.get<std::string>() : j.at("kind").get<std::string>();
    if (k == "identity" || k == "id") return identity();
    if (k == "quad_conj" || k == "quadratic_conjugation") return quadratic_conjugation();
    if (k == "frobenius") return frobenius(j.is_object() ? j.value("power", 1u) : 1u);
    if (!j.is_object()) throw Error(ErrorCode::parse_error, "ring automorphism \"" + k + "\" needs parameters");
    RingAutomorphism r;
    if (k == "monomial") {
      r.kind = RingAutKind::monomial;
      r.a = j.at("a").get<long>();
      r.b = j.value("b", 0L);
      r.c = j.value("c", 0L);
      r.d = j.value("d", 1L);
      r.lambda = j.value("lambda", 1u);
      r.mu = j.value("mu", 1u);
      return r;
    }
    if (k == "affine") {
      r.kind = RingAutKind::affine;
      r.lambda = j.value("lambda", 1u);
      r.shift = j.value("shift", 0u);
      return r;
    }
    throw Error(ErrorCode::parse_error, "unknown ring automorphism \"" + k + "\"");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("ring automorphism JSON: ") + e.what());
  }
}

void require_compatible(const RingAutomorphism& phi, const Ring& r) {
  bool ok = true;
  switch (phi.kind) {
    case RingAutKind::identity:
      break;
    case RingAutKind::quadratic_conjugation:
      ok = r->kind() == RingKind::quadratic;
      break;
    case RingAutKind::frobenius:
      ok = r->kind() == RingKind::finite_field;
      break;
    case RingAutKind::monomial:
      ok = r->kind() == RingKind::localized_poly && r->t_inverted() && r->inverted().size() <= 1;
      break;
    case RingAutKind::affine:
      ok = r->kind() == RingKind::poly;
      break;
  }
  if (!ok) throw Error(ErrorCode::spec_mismatch, phi.to_string() + " does not act on " + r->name());
}

namespace {

RingElement image_of_t(const Ring& r, const RingAutomorphism& phi) {
  switch (phi.kind) {
    case RingAutKind::monomial: {
      RingElement T = RingElement::from_field(r, phi.lambda) * pow(variable(r), phi.a);
      if (!r->inverted().empty()) T = T * pow(RingElement::from_poly(r, r->inverted()[0]), phi.b);
      return T;
    }
    case RingAutKind::affine:
      return RingElement::from_field(r, phi.lambda) * variable(r) + RingElement::from_field(r, phi.shift);
    default:
      return variable(r);
  }
}

// Apply the substitution t -> T to an element of a poly-like ring.
RingElement substitute(const RingElement& x, const RingElement& T) {
  const Ring& r = x.ring();
  RingElement out = evaluate_poly(x.poly_numerator(), T);
  for (std::size_t i = 0; i < r->generator_count(); ++i) {
    const int e = x.exponents()[i];
    if (e == 0) continue;
    out = out * pow(evaluate_poly(r->generator_poly(i), T), e);
  }
  return out;
}

}  // namespace

RingElement apply_ring_aut(const RingAutomorphism& phi, const RingElement& x) {
  const Ring& r = x.ring();
  require_compatible(phi, r);
  switch (phi.kind) {
    case RingAutKind::identity:
      return x;
    case RingAutKind::quadratic_conjugation:
      return RingElement::from_quadratic(r, x.numerator(), -x.sqrt_coefficient());
    case RingAutKind::frobenius:
      return RingElement::from_field(r, r->field().frobenius(x.field_value(), phi.frobenius_power));
    case RingAutKind::monomial:
    case RingAutKind::affine:
      return substitute(x, image_of_t(r, phi));
  }
  return x;
}

RingAutomorphism from_image_of_t(const Ring& r, const RingElement& image) {
  require_same_ring(r, image.ring());
  RingAutomorphism out;
  if (r->kind() == RingKind::poly) {
    const Poly& p = image.poly_numerator();
    if (p.degree() != 1) throw Error(ErrorCode::not_an_automorphism, "t -> " + image.to_string() + " is not invertible");
    out.kind = RingAutKind::affine;
    out.lambda = p.coeff(1);
    out.shift = p.coeff(0);
    if (out.lambda == 1 && out.shift == 0) return RingAutomorphism::identity();
    return out;
  }
  if (r->kind() != RingKind::localized_poly || !r->t_inverted() || r->inverted().size() > 1)
    throw Error(ErrorCode::unsupported_spec, "monomial automorphisms need F_q[t, t^-1] or F_q[t, t^-1, f^-1]");
  const auto ft = is_unit(image);
  if (!ft) throw Error(ErrorCode::not_an_automorphism, "image of t " + image.to_string() + " is not a unit");
  out.kind = RingAutKind::monomial;
  out.lambda = ft->constant.poly_numerator().lead();
  out.a = ft->exponents[0];
  out.b = r->inverted().empty() ? 0 : ft->exponents[1];
  if (!r->inverted().empty()) {
    const auto ff = is_unit(evaluate_poly(r->inverted()[0], image));
    if (!ff) throw Error(ErrorCode::not_an_automorphism, "image of f is not a unit");
    out.mu = ff->constant.poly_numerator().lead();
    out.c = ff->exponents[0];
    out.d = ff->exponents[1];
  }
  if (out.lambda == 1 && out.a == 1 && out.b == 0 && out.c == 0 && out.d == 1 && out.mu == 1)
    return RingAutomorphism::identity();
  return out;
}

RingAutomorphism compose(const Ring& r, const RingAutomorphism& phi, const RingAutomorphism& psi) {
  require_compatible(phi, r);
  require_compatible(psi, r);
  if (phi.kind == RingAutKind::identity) return psi;
  if (psi.kind == RingAutKind::identity) return phi;
  if (phi.kind == RingAutKind::quadratic_conjugation) return RingAutomorphism::identity();
  if (phi.kind == RingAutKind::frobenius)
    return RingAutomorphism::frobenius((phi.frobenius_power + psi.frobenius_power) % r->field().degree());
  RingAutomorphism out = from_image_of_t(r, apply_ring_aut(phi, image_of_t(r, psi)));
  out.verified = phi.verified && psi.verified;
  return out;
}

RingAutomorphism inverse(const Ring& r, const RingAutomorphism& phi) {
  require_compatible(phi, r);
  switch (phi.kind) {
    case RingAutKind::identity:
    case RingAutKind::quadratic_conjugation:
      return phi;
    case RingAutKind::frobenius:
      return RingAutomorphism::frobenius((r->field().degree() - phi.frobenius_power) % r->field().degree());
    case RingAutKind::affine: {
      const FiniteField& F = r->field();
      RingAutomorphism out = phi;
      out.lambda = F.inv(phi.lambda);
      out.shift = F.neg(F.mul(out.lambda, phi.shift));
      return out;
    }
    case RingAutKind::monomial: {
      const FiniteField& F = r->field();
      const bool has_f = !r->inverted().empty();
      const long det = has_f ? phi.a * phi.d - phi.b * phi.c : phi.a;
      if (det != 1 && det != -1) throw Error(ErrorCode::not_an_automorphism, phi.to_string() + " has exponent determinant " + std::to_string(det));
      const long a2 = has_f ? det * phi.d : phi.a;
      const long b2 = has_f ? -det * phi.b : 0;
      // phi(lambda' t^a2 f^b2) = lambda' lambda^a2 mu^b2 t f^0
      const FieldElem scale = F.mul(F.pow(phi.lambda, a2), F.pow(phi.mu, b2));
      RingElement T = RingElement::from_field(r, F.inv(scale)) * pow(variable(r), a2);
      if (has_f) T = T * pow(RingElement::from_poly(r, r->inverted()[0]), b2);
      RingAutomorphism out = from_image_of_t(r, T);
      if (!(compose(r, phi, out) == RingAutomorphism::identity()))
        throw Error(ErrorCode::not_an_automorphism, phi.to_string() + " is not invertible");
      out.verified = phi.verified;
      return out;
    }
  }
  return phi;
}

bool verify_ring_homomorphism(const Ring& r, const RingAutomorphism& phi, int samples, Rng& rng) {
  if (apply_ring_aut(phi, one(r)) != one(r)) return false;
  for (int i = 0; i < samples; ++i) {
    const RingElement x = random_element(r, rng), y = random_element(r, rng);
    const RingElement px = apply_ring_aut(phi, x), py = apply_ring_aut(phi, y);
    if (apply_ring_aut(phi, x + y) != px + py) return false;
    if (apply_ring_aut(phi, x * y) != px * py) return false;
  }
  return true;
}

std::vector<RingAutomorphism> ring_aut_search(const Ring& r, long bound, std::uint64_t seed) {
  if (r->kind() != RingKind::localized_poly || !r->t_inverted() || r->inverted().size() != 1)
    throw Error(ErrorCode::unsupported_spec, "ring_aut_search needs F_p[t, t^-1, f^-1] with exactly one f");
  if (!r->field().is_prime_field())
    throw Error(ErrorCode::unsupported_spec, "ring_aut_search works over prime fields only");
  if (bound < 0) throw Error(ErrorCode::invalid_spec, "bound must be non-negative");
  const FiniteField& F = r->field();
  const Poly& f = r->inverted()[0];
  const Poly t_minus_1({F.neg(1), 1});
  if (f == t_minus_1) throw Error(ErrorCode::unsupported_spec, "f = t-1 is excluded");

  Rng rng(seed);
  std::vector<RingAutomorphism> out{RingAutomorphism::identity()};
  const RingElement t = variable(r), fe = RingElement::from_poly(r, f);
  for (FieldElem lambda = 1; lambda < F.order(); ++lambda) {
    for (long a = -bound; a <= bound; ++a) {
      for (long b = -bound; b <= bound; ++b) {
        const RingElement T = RingElement::from_field(r, lambda) * pow(t, a) * pow(fe, b);
        const auto fu = is_unit(evaluate_poly(f, T));
        if (!fu) continue;
        const long c = fu->exponents[0], d = fu->exponents[1];
        if (std::abs(c) > bound || std::abs(d) > bound) continue;
        const long det = a * d - b * c;
        if (det != 1 && det != -1) continue;
        RingAutomorphism cand;
        cand.kind = RingAutKind::monomial;
        cand.lambda = lambda;
        cand.a = a;
        cand.b = b;
        cand.c = c;
        cand.d = d;
        cand.mu = fu->constant.poly_numerator().lead();
        if ((lambda == 1 && a == 1 && b == 0 && c == 0 && d == 1 && cand.mu == 1)) continue;
        try {
          (void)inverse(r, cand);
        } catch (const Error&) {
          continue;
        }
        if (!verify_ring_homomorphism(r, cand, 50, rng)) continue;
        cand.verified = true;
        out.push_back(cand);
      }
    }
  }
  return out;
}

std::vector<RingAutomorphism> ring_automorphism_group(const Ring& r) {
  if (!r->is_poly_like()) throw Error(ErrorCode::unsupported_spec, "ring automorphism group needs a polynomial ring");
  if (!r->field().is_prime_field())
    throw Error(ErrorCode::unsupported_spec, "ring automorphism group is only tabulated over prime fields");
  const FiniteField& F = r->field();
  std::vector<RingAutomorphism> out;
  if (r->kind() == RingKind::poly) {
    for (FieldElem lambda = 1; lambda < F.order(); ++lambda)
      for (FieldElem s = 0; s < F.order(); ++s) {
        RingAutomorphism a;
        a.kind = RingAutKind::affine;
        a.lambda = lambda;
        a.shift = s;
        a.verified = true;
        out.push_back(lambda == 1 && s == 0 ? RingAutomorphism::identity() : a);
      }
    return out;
  }
  if (!r->t_inverted() || r->inverted().size() > 1)
    throw Error(ErrorCode::unsupported_spec, "automorphisms of " + r->name() + " are not tabulated");
  if (r->inverted().empty()) {
    for (long a : {1L, -1L})
      for (FieldElem lambda = 1; lambda < F.order(); ++lambda) {
        RingAutomorphism m;
        m.kind = RingAutKind::monomial;
        m.a = a;
        m.lambda = lambda;
        m.verified = true;
        out.push_back(a == 1 && lambda == 1 ? RingAutomorphism::identity() : m);
      }
    return out;
  }
  out = ring_aut_search(r, 5);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (const auto& c : {compose(r, out[i], out[j]), compose(r, out[j], out[i]), inverse(r, out[i])}) {
        if (std::find(out.begin(), out.end(), c) == out.end()) {
          if (out.size() > 4096) throw Error(ErrorCode::too_large, "automorphism closure does not stabilise");
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

Poly transcendental_seed(const Ring& r) {
  if (!r->is_poly_like()) throw Error(ErrorCode::unsupported_spec, "fixed_transcendental needs a polynomial ring");
  const FiniteField& F = r->field();
  for (int deg = 1;; ++deg) {
    for (const Poly& g : poly::monic_of_degree(F, deg)) {
      if (g == Poly::variable()) continue;
      if (std::find(r->inverted().begin(), r->inverted().end(), g) != r->inverted().end()) continue;
      if (poly::is_irreducible(F, g)) return g;
    }
  }
}

RingElement fixed_transcendental(const Ring& r) {
  const Poly g = transcendental_seed(r);
  const RingElement ge = RingElement::from_poly(r, g);
  RingElement x = one(r);
  for (const auto& sigma : ring_automorphism_group(r)) x = x * apply_ring_aut(sigma, ge);
  return x;
}

// ---------------------------------------------------------------------------

Reduction Reduction::modulo_prime(const Ring& source, long p) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_spec, std::to_string(p) + " is not prime");
  Reduction red;
  red.source_ = source;
  red.target_ = RingSpec::finite_field(FiniteField::prime(static_cast<std::uint32_t>(p)));
  red.description_ = "mod " + std::to_string(p);
  const FiniteField& F = red.target_->field();
  if (source->is_integer_like()) {
    for (long q : source->primes()) {
      if (q == p) throw Error(ErrorCode::ideal_not_coprime, std::to_string(p) + " is inverted in " + source->name());
      red.generator_inverse_.push_back(F.inv(F.from_int(q)));
    }
    return red;
  }
  if (source->kind() == RingKind::quadratic) {
    if (p == 2) throw Error(ErrorCode::unsupported_spec, "quadratic reduction needs an odd prime");
    const FieldElem dd = F.from_int(source->quadratic_d());
    for (FieldElem x = 0; x < F.order(); ++x)
      if (F.mul(x, x) == dd) {
        red.sqrt_image_ = x;
        return red;
      }
    throw Error(ErrorCode::unsupported_spec,
                std::to_string(source->quadratic_d()) + " is not a square mod " + std::to_string(p));
  }
  throw Error(ErrorCode::unsupported_spec, "reduction modulo a prime needs an integer-like or quadratic ring");
}

Reduction Reduction::modulo_poly(const Ring& source, const Poly& g) {
  if (!source->is_poly_like()) throw Error(ErrorCode::unsupported_spec, "reduction modulo a polynomial needs a polynomial ring");
  if (!source->field().is_prime_field())
    throw Error(ErrorCode::unsupported_spec, "reduction modulo a polynomial works over prime fields only");
  const FiniteField& base = source->field();
  if (g.degree() < 1 || g.lead() != 1 || !poly::is_irreducible(base, g))
    throw Error(ErrorCode::invalid_spec, poly::to_string(base, g) + " is not monic irreducible");
  Reduction red;
  red.source_ = source;
  auto field = std::make_shared<const FiniteField>(base.characteristic(), g.c);
  red.target_ = RingSpec::finite_field(field);
  red.description_ = "mod " + poly::to_string(base, g);
  const FieldElem s = field->generator();
  for (std::size_t i = 0; i < source->generator_count(); ++i) {
    const Poly& h = source->generator_poly(i);
    FieldElem v = 0;
    for (std::size_t k = h.c.size(); k-- > 0;) v = field->add(field->mul(v, s), field->from_int(h.c[k]));
    if (v == 0)
      throw Error(ErrorCode::ideal_not_coprime, poly::to_string(base, g) + " divides the inverted " + poly::to_string(base, h));
    red.generator_inverse_.push_back(field->inv(v));
  }
  return red;
}

RingElement Reduction::operator()(const RingElement& a) const {
  require_same_ring(source_, a.ring());
  const FiniteField& F = target_->field();
  FieldElem v = 0;
  switch (source_->kind()) {
    case RingKind::integers:
    case RingKind::s_integers: {
      const long p = static_cast<long>(F.characteristic());
      mpz_class m = a.numerator() % p;
      if (m < 0) m += p;
      v = F.from_int(m.get_si());
      for (std::size_t i = 0; i < generator_inverse_.size(); ++i)
        v = F.mul(v, F.pow(generator_inverse_[i], -a.exponents()[i]));
      break;
    }
    case RingKind::quadratic: {
      const long p = static_cast<long>(F.characteristic());
      mpz_class x = a.numerator() % p, y = a.sqrt_coefficient() % p;
      if (x < 0) x += p;
      if (y < 0) y += p;
      v = F.add(F.from_int(x.get_si()), F.mul(F.from_int(y.get_si()), sqrt_image_));
      break;
    }
    case RingKind::poly:
    case RingKind::localized_poly: {
      const FieldElem s = F.generator();
      const Poly& num = a.poly_numerator();
      for (std::size_t k = num.c.size(); k-- > 0;) v = F.add(F.mul(v, s), F.from_int(num.c[k]));
      for (std::size_t i = 0; i < generator_inverse_.size(); ++i)
        v = F.mul(v, F.pow(generator_inverse_[i], -a.exponents()[i]));
      break;
    }
    case RingKind::finite_field:
      break;
  }
  return RingElement::from_field(target_, v);
}

RingElement reduce_mod(const RingElement& a, long p) { return Reduction::modulo_prime(a.ring(), p)(a); }

RingElement reduce_mod(const RingElement& a, const Poly& g) { return Reduction::modulo_poly(a.ring(), g)(a); }

}  // namespace twistmat::rings
