#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace twistmat::rings {

/// Element of a finite field, encoded as sum_k digit_k * p^k where the digits
/// are the coefficients of the residue class in F_p[s]/(modulus).
using FieldElem = std::uint32_t;

/// The field F_q = F_p[s]/(m(s)) with an explicit monic irreducible modulus.
/// A degree-one modulus gives the prime field. Multiplication goes through
/// discrete log tables, so q is capped at 2^16.
class FiniteField {
public:
  static constexpr std::uint32_t max_order = 1u << 16;

  /// `modulus` lists coefficients over F_p in ascending degree and must be
  /// monic and irreducible.
  FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus);

  static std::shared_ptr<const FiniteField> prime(std::uint32_t p);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return k_; }
  std::uint32_t order() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return k_ == 1; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, long long e) const;
  FieldElem frobenius(FieldElem a, std::uint32_t power) const;

  /// Image of an integer under Z -> F_p -> F_q.
  FieldElem from_int(long long v) const;
  /// The class of s; equals from_int(-m_0) in the prime-field case.
  FieldElem generator() const;
  /// A fixed primitive element (smallest encoding of multiplicative order q-1).
  FieldElem primitive() const noexcept { return primitive_; }

  std::vector<std::uint32_t> digits(FieldElem a) const;
  FieldElem from_digits(const std::vector<std::uint32_t>& d) const;

  /// "0".."p-1" in the prime field, otherwise a sparse polynomial in s.
  std::string to_string(FieldElem a) const;

  bool operator==(const FiniteField& o) const {
    return p_ == o.p_ && modulus_ == o.modulus_;
  }

private:
  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<FieldElem> exp_;
  FieldElem primitive_ = 1;
};

using Field = std::shared_ptr<const FiniteField>;

bool is_prime(long long n);

}  // namespace twistmat::rings
