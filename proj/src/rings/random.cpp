#include "twistmat/random.hpp"

#include "twistmat/errors.hpp"

namespace twistmat::rings {

long long uniform_int(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

RingElement random_element(const Ring& r, Rng& rng, const RandomParams& params) {
  switch (r->kind()) {
    case RingKind::integers:
    case RingKind::s_integers: {
      const mpz_class num = static_cast<long>(uniform_int(rng, -params.height, params.height));
      mpz_class den = 1;
      for (long p : r->primes()) {
        const long long e = uniform_int(rng, 0, params.exponent);
        for (long long k = 0; k < e; ++k) den *= p;
      }
      return RingElement::from_fraction(r, num, den);
    }
    case RingKind::quadratic:
      return RingElement::from_quadratic(r, static_cast<long>(uniform_int(rng, -params.height, params.height)),
                                         static_cast<long>(uniform_int(rng, -params.height, params.height)));
    case RingKind::finite_field:
      return RingElement::from_field(r, static_cast<FieldElem>(uniform_int(rng, 0, r->field().order() - 1)));
    case RingKind::poly:
    case RingKind::localized_poly: {
      const int deg = static_cast<int>(uniform_int(rng, 0, params.degree));
      std::vector<FieldElem> c(static_cast<std::size_t>(deg) + 1);
      for (auto& x : c) x = static_cast<FieldElem>(uniform_int(rng, 0, r->field().order() - 1));
      while (!c.empty() && c.back() == 0) c.pop_back();
      RingElement e = RingElement::from_poly(r, Poly(std::move(c)));
      for (std::size_t i = 0; i < r->generator_count(); ++i) {
        const long long k = uniform_int(rng, 0, params.exponent);
        if (k) e = e * pow(RingElement::from_poly(r, r->generator_poly(i)), -k);
      }
      return e;
    }
  }
  return zero(r);
}

RingElement random_nonzero(const Ring& r, Rng& rng, const RandomParams& params) {
  for (;;) {
    RingElement e = random_element(r, rng, params);
    if (!e.is_zero()) return e;
  }
}

RingElement random_unit(const Ring& r, Rng& rng, const RandomParams& params) {
  const bool negate = uniform_int(rng, 0, 1) == 1;
  switch (r->kind()) {
    case RingKind::integers:
    case RingKind::s_integers: {
      RingElement u = from_int(r, negate ? -1 : 1);
      for (long p : r->primes()) u = u * pow(from_int(r, p), uniform_int(rng, -params.exponent, params.exponent));
      return u;
    }
    case RingKind::quadratic: {
      RingElement u = from_int(r, negate ? -1 : 1);
      if (r->quadratic_d() == -1 && uniform_int(rng, 0, 1) == 1) u = u * sqrt_d(r);
      if (const auto& fu = r->fundamental_unit()) {
        const RingElement eps = RingElement::from_quadratic(r, fu->first, fu->second);
        u = u * pow(eps, uniform_int(rng, -params.exponent, params.exponent));
      }
      return u;
    }
    case RingKind::finite_field:
    case RingKind::poly:
    case RingKind::localized_poly: {
      RingElement u = RingElement::from_field(r, static_cast<FieldElem>(uniform_int(rng, 1, r->field().order() - 1)));
      for (std::size_t i = 0; i < r->generator_count(); ++i)
        u = u * pow(RingElement::from_poly(r, r->generator_poly(i)), uniform_int(rng, -params.exponent, params.exponent));
      return u;
    }
  }
  return one(r);
}

}  // namespace twistmat::rings
