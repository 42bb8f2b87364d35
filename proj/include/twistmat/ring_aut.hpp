#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistmat/random.hpp"
#include "twistmat/ring.hpp"

namespace twistmat::rings {

enum class RingAutKind { identity, quadratic_conjugation, frobenius, monomial, affine };

/// Ring automorphism descriptor.
///
/// monomial (localized rings with t inverted and at most one f):
///   t -> lambda * t^a * f^b,  f -> mu * t^c * f^d
/// affine (polynomial rings): t -> lambda * t + shift
struct RingAutomorphism {
  RingAutKind kind = RingAutKind::identity;
  std::uint32_t frobenius_power = 0;
  long a = 1, b = 0, c = 0, d = 1;
  FieldElem lambda = 1;
  FieldElem mu = 1;
  FieldElem shift = 0;
  bool verified = false;

  static RingAutomorphism identity();
  static RingAutomorphism quadratic_conjugation();
  static RingAutomorphism frobenius(std::uint32_t power);

  std::string to_string() const;
  nlohmann::json to_json() const;
  static RingAutomorphism from_json(const nlohmann::json& j);

  bool operator==(const RingAutomorphism& o) const;
};

/// Throws spec_mismatch when the descriptor does not fit the ring.
void require_compatible(const RingAutomorphism& phi, const Ring& r);

RingElement apply_ring_aut(const RingAutomorphism& phi, const RingElement& x);

/// Descriptor of the poly-like endomorphism determined by t -> image.
RingAutomorphism from_image_of_t(const Ring& r, const RingElement& image);

/// phi o psi
RingAutomorphism compose(const Ring& r, const RingAutomorphism& phi, const RingAutomorphism& psi);
RingAutomorphism inverse(const Ring& r, const RingAutomorphism& phi);

/// Checks additivity, multiplicativity and phi(1) = 1 on random pairs.
bool verify_ring_homomorphism(const Ring& r, const RingAutomorphism& phi, int samples, Rng& rng);

/// Unit-monomial automorphisms of F_p[t, t^-1, f^-1] with exponents bounded
/// by `bound`. The identity is always first.
std::vector<RingAutomorphism> ring_aut_search(const Ring& r, long bound, std::uint64_t seed = default_seed);

/// All ring automorphisms of a poly-like ring over a prime field, for the
/// shapes where they are known: F_p[t] (affine), F_p[t, t^-1] (t -> c t^+-1),
/// and F_p[t, t^-1, f^-1] (closure of the bound-5 search).
std::vector<RingAutomorphism> ring_automorphism_group(const Ring& r);

/// x = prod_sigma sigma(g) for the least monic irreducible g coprime to t and
/// the inverted polynomials.
RingElement fixed_transcendental(const Ring& r);
/// The g used by fixed_transcendental.
Poly transcendental_seed(const Ring& r);

/// Ring homomorphism onto a finite field.
class Reduction {
public:
  /// Integer-like or quadratic source, reduction modulo the prime p.
  static Reduction modulo_prime(const Ring& source, long p);
  /// Poly-like source over a prime field, reduction modulo monic irreducible g.
  static Reduction modulo_poly(const Ring& source, const Poly& g);

  const Ring& source() const noexcept { return source_; }
  const Ring& target() const noexcept { return target_; }

  RingElement operator()(const RingElement& a) const;

  /// Short description, e.g. "mod 5" or "mod t^2+t+1".
  std::string describe() const { return description_; }

private:
  Ring source_;
  Ring target_;
  FieldElem sqrt_image_ = 0;
  std::vector<FieldElem> generator_inverse_;
  std::string description_;
};

RingElement reduce_mod(const RingElement& a, long p);
RingElement reduce_mod(const RingElement& a, const Poly& g);

}  // namespace twistmat::rings
