#include "twistmat/finite_field.hpp"

#include <sstream>

#include "twistmat/errors.hpp"

namespace twistmat::rings {

namespace {

using Digits = std::vector<std::uint32_t>;

void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo b over F_p (b monic-izable, nonzero).
Digits fp_mod(Digits a, const Digits& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  std::uint64_t lead_inv = 1;
  {
    // b's leading coefficient is invertible mod p
    std::uint64_t base = b.back() % p, e = p - 2, r = 1;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    lead_inv = r;
  }
  while (a.size() > db) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint64_t sub = c * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool fp_irreducible_bruteforce(const Digits& m, std::uint32_t p) {
  const std::size_t deg = m.size() - 1;
  if (deg <= 1) return deg == 1;
  // every monic polynomial of degree 1..deg/2
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Digits cand(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        cand[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      cand[d] = 1;
      if (fp_mod(m, cand, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FiniteField::FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_spec, "field characteristic must be prime");
  for (auto& c : modulus_) c %= p;
  trim(modulus_);
  if (modulus_.size() < 2) throw Error(ErrorCode::invalid_spec, "field modulus must have degree >= 1");
  if (modulus_.back() != 1) throw Error(ErrorCode::invalid_spec, "field modulus must be monic");
  k_ = static_cast<std::uint32_t>(modulus_.size() - 1);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    q *= p;
    if (q > max_order) throw Error(ErrorCode::unsupported_spec, "field order exceeds 2^16");
  }
  q_ = static_cast<std::uint32_t>(q);
  if (!fp_irreducible_bruteforce(modulus_, p))
    throw Error(ErrorCode::invalid_spec, "field modulus is not irreducible over F_p");

  // Multiply by schoolbook polynomial arithmetic while building the tables.
  auto slow_mul = [&](FieldElem a, FieldElem b) {
    Digits da = digits(a), db = digits(b);
    Digits prod(2 * k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i)
      for (std::uint32_t j = 0; j < k_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(da[i]) * db[j]) % p_);
    return from_digits(fp_mod(prod, modulus_, p_));
  };

  exp_.assign(q_, 0);
  log_.assign(q_, 0);
  for (FieldElem g = 1; g < q_; ++g) {
    FieldElem x = 1;
    std::uint32_t ord = 0;
    do {
      exp_[ord] = x;
      x = slow_mul(x, g);
      ++ord;
    } while (x != 1 && ord < q_);
    if (ord == q_ - 1) {
      primitive_ = g;
      break;
    }
  }
  for (std::uint32_t i = 0; i + 1 < q_; ++i) log_[exp_[i]] = i;
}

std::shared_ptr<const FiniteField> FiniteField::prime(std::uint32_t p) {
  return std::make_shared<const FiniteField>(p, std::vector<std::uint32_t>{0, 1});
}

std::vector<std::uint32_t> FiniteField::digits(FieldElem a) const {
  std::vector<std::uint32_t> d(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

FieldElem FiniteField::from_digits(const std::vector<std::uint32_t>& d) const {
  FieldElem r = 0;
  for (std::size_t i = std::min<std::size_t>(d.size(), k_); i-- > 0;) r = r * p_ + d[i] % p_;
  return r;
}

FieldElem FiniteField::add(FieldElem a, FieldElem b) const {
  if (k_ == 1) return (a + b) % p_;
  FieldElem r = 0, place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

FieldElem FiniteField::neg(FieldElem a) const {
  if (k_ == 1) return (p_ - a) % p_;
  FieldElem r = 0, place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return r;
}

FieldElem FiniteField::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FiniteField::mul(FieldElem a, FieldElem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

FieldElem FiniteField::inv(FieldElem a) const {
  if (a == 0) throw Error(ErrorCode::not_a_unit, "zero has no inverse in F_q");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FieldElem FiniteField::pow(FieldElem a, long long e) const {
  if (a == 0) {
    if (e < 0) throw Error(ErrorCode::not_a_unit, "zero has no inverse in F_q");
    return e == 0 ? 1 : 0;
  }
  const long long m = q_ - 1;
  long long idx = (static_cast<long long>(log_[a]) * (e % m)) % m;
  if (idx < 0) idx += m;
  return exp_[idx];
}

FieldElem FiniteField::frobenius(FieldElem a, std::uint32_t power) const {
  FieldElem r = a;
  for (std::uint32_t i = 0; i < power % k_; ++i) r = pow(r, p_);
  return r;
}

FieldElem FiniteField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<FieldElem>(r);
}

FieldElem FiniteField::generator() const {
  if (k_ == 1) return from_int(-static_cast<long long>(modulus_[0]));
  return p_;
}

std::string FiniteField::to_string(FieldElem a) const {
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  const auto d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << d[i];
      continue;
    }
    if (d[i] != 1) os << d[i] << '*';
    os << 's';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

}  // namespace twistmat::rings
