#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twistmat/finite_field.hpp"

namespace twistmat::rings {

/// Polynomial over a finite field: coefficients in ascending degree with no
/// trailing zeros. The zero polynomial has no coefficients.
struct Poly {
  std::vector<FieldElem> c;

  Poly() = default;
  explicit Poly(std::vector<FieldElem> coeffs);

  int degree() const noexcept { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const noexcept { return c.empty(); }
  FieldElem lead() const noexcept { return c.empty() ? 0 : c.back(); }
  FieldElem coeff(std::size_t i) const noexcept { return i < c.size() ? c[i] : 0; }

  static Poly constant(FieldElem v);
  static Poly monomial(FieldElem v, std::size_t degree);
  static Poly variable() { return monomial(1, 1); }

  bool operator==(const Poly& o) const = default;
  /// Degree first, then coefficients from the top down.
  bool operator<(const Poly& o) const;
};

namespace poly {

Poly add(const FiniteField& F, const Poly& a, const Poly& b);
Poly sub(const FiniteField& F, const Poly& a, const Poly& b);
Poly neg(const FiniteField& F, const Poly& a);
Poly mul(const FiniteField& F, const Poly& a, const Poly& b);
Poly scale(const FiniteField& F, const Poly& a, FieldElem s);
Poly pow(const FiniteField& F, const Poly& a, unsigned long e);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const FiniteField& F, const Poly& a, const Poly& b);
Poly mod(const FiniteField& F, const Poly& a, const Poly& b);
bool divides(const FiniteField& F, const Poly& d, const Poly& a);
/// Monic gcd (zero if both inputs are zero).
Poly gcd(const FiniteField& F, const Poly& a, const Poly& b);
Poly monic(const FiniteField& F, const Poly& a);
FieldElem eval(const FiniteField& F, const Poly& a, FieldElem x);
Poly frobenius(const FiniteField& F, const Poly& a, std::uint32_t power);

/// Rabin-style test: f is irreducible iff gcd(t^(q^i) - t, f) = 1 for all
/// 1 <= i <= deg f / 2. Requires deg f >= 1.
bool is_irreducible(const FiniteField& F, const Poly& f);

/// f_r(t) = t^deg(f) f(1/t), i.e. the coefficient vector reversed (and trimmed).
Poly reciprocal(const Poly& f);
bool is_self_reciprocal(const Poly& f);

/// All monic polynomials of the given degree, in increasing lexicographic
/// coefficient order (top coefficient fixed to 1, lower ones ascending).
std::vector<Poly> monic_of_degree(const FiniteField& F, int degree);

std::string to_string(const FiniteField& F, const Poly& a, char var = 't');

}  // namespace poly

}  // namespace twistmat::rings
