#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistmat/finite_field.hpp"
#include "twistmat/poly.hpp"

namespace twistmat::rings {

enum class RingKind { integers, s_integers, quadratic, finite_field, poly, localized_poly };

class RingSpec;
using Ring = std::shared_ptr<const RingSpec>;

/// Description of one of the supported integral domains. Instances are
/// immutable and shared by every element that lives in the ring.
class RingSpec {
public:
  static Ring integers();
  /// Z[1/p_1, ..., 1/p_k]; the primes must be distinct.
  static Ring s_integers(std::vector<long> primes);
  /// Z[sqrt(d)] with d square-free and d not in {0, 1}.
  static Ring quadratic(long d);
  static Ring finite_field(Field field);
  static Ring poly(Field field);
  /// F_q[t, t^-1 (optional), f_1^-1, ..., f_m^-1]; the f_i must be monic,
  /// irreducible, pairwise coprime and different from t.
  static Ring localized_poly(Field field, bool t_inverted, std::vector<Poly> inverted);

  RingKind kind() const noexcept { return kind_; }
  bool is_integer_like() const noexcept {
    return kind_ == RingKind::integers || kind_ == RingKind::s_integers;
  }
  bool is_poly_like() const noexcept {
    return kind_ == RingKind::poly || kind_ == RingKind::localized_poly;
  }

  const std::vector<long>& primes() const noexcept { return primes_; }
  long quadratic_d() const noexcept { return d_; }
  const FiniteField& field() const { return *field_; }
  const Field& field_ptr() const noexcept { return field_; }
  bool t_inverted() const noexcept { return t_inverted_; }
  const std::vector<Poly>& inverted() const noexcept { return inverted_; }

  /// Number of inverted generators (primes, or t followed by the f_i).
  std::size_t generator_count() const noexcept;
  /// Poly-like rings: the i-th inverted generator as a polynomial.
  const Poly& generator_poly(std::size_t i) const { return gen_polys_[i]; }

  bool characteristic_zero() const noexcept;
  /// True for finite fields only.
  bool is_finite() const noexcept { return kind_ == RingKind::finite_field; }

  /// Fundamental unit x + y sqrt(d) (d > 1), found by search; nullopt when
  /// d < 0 or the search bound is exceeded.
  const std::optional<std::pair<mpz_class, mpz_class>>& fundamental_unit() const noexcept {
    return fundamental_unit_;
  }

  /// Short human name such as "Z[1/6]" or "F_2[t,t^-1,(t^3+t+1)^-1]".
  std::string name() const;

  bool operator==(const RingSpec& o) const;

private:
  RingSpec() = default;

  RingKind kind_ = RingKind::integers;
  std::vector<long> primes_;
  long d_ = 0;
  Field field_;
  bool t_inverted_ = false;
  std::vector<Poly> inverted_;
  std::vector<Poly> gen_polys_;
  std::optional<std::pair<mpz_class, mpz_class>> fundamental_unit_;
};

bool same_ring(const Ring& a, const Ring& b);
void require_same_ring(const Ring& a, const Ring& b);

struct UnitFactorization;

/// Canonical exact element of a supported ring.
///
/// Integer-like rings store a reduced fraction numerator / prod p_i^k_i with
/// the exponent vector holding -k_i. Poly-like rings do the same with the
/// inverted polynomials. Equal values have identical representations, so
/// structural comparison is value comparison.
class RingElement {
public:
  explicit RingElement(Ring ring);  // zero

  const Ring& ring() const noexcept { return ring_; }
  RingKind kind() const noexcept { return ring_->kind(); }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  const mpz_class& numerator() const noexcept { return num_; }      // integer-like, quadratic a
  const mpz_class& sqrt_coefficient() const noexcept { return aux_; }  // quadratic b
  FieldElem field_value() const noexcept { return fval_; }
  const Poly& poly_numerator() const noexcept { return pnum_; }
  /// Non-positive exponents of the inverted generators.
  const std::vector<int>& exponents() const noexcept { return exps_; }

  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }
  std::size_t hash() const;

  /// Sparse human-readable form that parse_element reads back.
  std::string to_string() const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a);

  // Builders; these are the only ways to produce non-zero values.
  static RingElement from_integer(const Ring& r, const mpz_class& v);
  static RingElement from_fraction(const Ring& r, const mpz_class& num, const mpz_class& den);
  static RingElement from_quadratic(const Ring& r, const mpz_class& a, const mpz_class& b);
  static RingElement from_field(const Ring& r, FieldElem v);
  static RingElement from_poly(const Ring& r, const Poly& p);
  static RingElement from_poly_fraction(const Ring& r, const Poly& num, const Poly& den);

private:
  friend class ElementAccess;

  Ring ring_;
  mpz_class num_;
  mpz_class aux_;
  FieldElem fval_ = 0;
  Poly pnum_;
  std::vector<int> exps_;
};

RingElement zero(const Ring& r);
RingElement one(const Ring& r);
RingElement from_int(const Ring& r, long long v);
/// The polynomial variable t (poly-like rings only).
RingElement variable(const Ring& r);
/// sqrt(d) in a quadratic ring.
RingElement sqrt_d(const Ring& r);

RingElement add(const RingElement& a, const RingElement& b);
RingElement sub(const RingElement& a, const RingElement& b);
RingElement mul(const RingElement& a, const RingElement& b);
RingElement neg(const RingElement& a);
/// Integer power; negative exponents require a unit.
RingElement pow(const RingElement& a, long long e);

/// Exact quotient a / b; throws denominator_not_invertible when it is not in
/// the ring.
RingElement divide(const RingElement& a, const RingElement& b);

/// Some(inverse) iff a is a unit.
std::optional<RingElement> try_inverse(const RingElement& a);
/// Inverse of a unit; throws not_a_unit otherwise.
RingElement unit_inverse(const RingElement& a);

/// Product decomposition of a unit: constant * prod generators[i]^exponents[i].
/// The constant is +-1 for integer-like rings, a torsion unit for quadratic
/// rings and a nonzero field element for the function-field rings.
struct UnitFactorization {
  RingElement constant;
  std::vector<RingElement> generators;
  std::vector<long> exponents;

  RingElement multiply_out() const;
};

std::optional<UnitFactorization> is_unit(const RingElement& a);

/// Write a as a list of units summing to it (poly-like rings where every
/// monomial is a unit, i.e. t is inverted).
std::vector<RingElement> as_sum_of_units(const RingElement& a);

/// Evaluate a polynomial over the base field at a ring element.
RingElement evaluate_poly(const Poly& p, const RingElement& x);

struct RingElementHash {
  std::size_t operator()(const RingElement& e) const { return e.hash(); }
};

}  // namespace twistmat::rings
