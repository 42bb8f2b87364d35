#include "twistmat/group.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "twistmat/errors.hpp"
#include "twistmat/ring_parse.hpp"

namespace twistmat::groups {

using json = nlohmann::json;

IndexSet::IndexSet(int n, std::vector<int> members) : n_(n), mask_(static_cast<std::size_t>(n) + 1, false) {
  if (n < 2) throw Error(ErrorCode::invalid_spec, "matrix size must be at least 2");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (int i : members) {
    if (i < 1 || i > n) throw Error(ErrorCode::invalid_spec, "index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    mask_[static_cast<std::size_t>(i)] = true;
  }
  members_ = std::move(members);
}

IndexSet IndexSet::all(int n) {
  std::vector<int> m;
  for (int i = 1; i <= n; ++i) m.push_back(i);
  return IndexSet(n, m);
}

IndexSet IndexSet::empty(int n) { return IndexSet(n, {}); }

std::string IndexSet::to_string() const {
  std::string s = "{";
  for (std::size_t k = 0; k < members_.size(); ++k) s += (k ? "," : "") + std::to_string(members_[k]);
  return s + "}";
}

std::optional<int> ng_violation(const IndexSet& ix) {
  for (int i = 1; i < ix.n(); ++i)
    if (!ix.contains(i) && !ix.contains(i + 1)) return i;
  return std::nullopt;
}

bool ng_condition(const IndexSet& ix) { return !ng_violation(ix).has_value(); }

// ---------------------------------------------------------------------------

QuotientKind QuotientSpec::element_kind() const {
  switch (kind) {
    case Kind::mod_commutator_u:
      return QuotientKind::mod_commutator_u;
    case Kind::mod_center_u4:
      return QuotientKind::mod_center_u4;
    default:
      return QuotientKind::none;
  }
}

std::string QuotientSpec::name() const {
  switch (kind) {
    case Kind::none:
      return "none";
    case Kind::mod_commutator_u:
      return "mod_commutator_u";
    case Kind::mod_center_u4:
      return "mod_center_u4";
    case Kind::mod_ideal:
      return "mod_ideal(" + (reduction ? reduction->describe() : std::string("?")) + ")";
  }
  return "?";
}

json QuotientSpec::to_json() const {
  json j;
  j["quotient"] = kind == Kind::mod_ideal ? "mod_ideal" : name();
  if (kind == Kind::mod_ideal && reduction) j["reduction"] = reduction->describe();
  return j;
}

QuotientSpec parse_quotient(const json& j, const Ring& source) {
  const std::string k = j.is_string() ? j.get<std::string>() : j.value("quotient", std::string("none"));
  if (k == "none") return QuotientSpec::none();
  if (k == "mod_commutator_u") return QuotientSpec::mod_commutator_u();
  if (k == "mod_center_u4") return QuotientSpec::mod_center_u4();
  if (k == "mod_ideal") {
    if (!j.is_object()) throw Error(ErrorCode::parse_error, "mod_ideal needs \"p\" or \"g\"");
    if (j.contains("p")) return QuotientSpec::mod_ideal(rings::Reduction::modulo_prime(source, j.at("p").get<long>()));
    if (j.contains("g") && source->is_poly_like())
      return QuotientSpec::mod_ideal(
          rings::Reduction::modulo_poly(source, rings::parse_poly(source->field_ptr(), j.at("g").get<std::string>())));
    throw Error(ErrorCode::parse_error, "mod_ideal needs \"p\" (integer-like rings) or \"g\" (polynomial rings)");
  }
  throw Error(ErrorCode::parse_error, "unknown quotient \"" + k + "\"");
}

void require_compatible(const QuotientSpec& q, const IndexSet& ix) {
  if (q.kind == QuotientSpec::Kind::mod_center_u4 && !(ix == IndexSet(4, {2, 3})))
    throw Error(ErrorCode::incompatible_quotient, "mod_center_u4 needs n=4, I={2,3}");
  if (q.kind == QuotientSpec::Kind::mod_ideal && !q.reduction)
    throw Error(ErrorCode::incompatible_quotient, "mod_ideal without a reduction");
}

bool retained(QuotientKind q, int n, int i, int j) {
  switch (q) {
    case QuotientKind::none:
      return true;
    case QuotientKind::mod_commutator_u:
      return j == i + 1;
    case QuotientKind::mod_center_u4:
      return !(i == 1 && j == n);
  }
  return true;
}

// ---------------------------------------------------------------------------

GroupElement::GroupElement(IndexSet ix, Ring ring, QuotientKind q) : ix_(std::move(ix)), ring_(std::move(ring)), q_(q) {
  if (q_ == QuotientKind::mod_center_u4 && !(ix_ == IndexSet(4, {2, 3})))
    throw Error(ErrorCode::incompatible_quotient, "mod_center_u4 needs n=4, I={2,3}");
  const std::size_t n = static_cast<std::size_t>(ix_.n());
  u_.assign(n * (n - 1) / 2, rings::zero(ring_));
  d_.assign(n, rings::one(ring_));
}

std::size_t GroupElement::index(int i, int j) const {
  if (i < 1 || j > n() || i >= j)
    throw Error(ErrorCode::index_out_of_pattern, "(" + std::to_string(i) + "," + std::to_string(j) + ") is not strictly upper");
  // rows 1..i-1 contribute (n-1) + ... + (n-i+1) entries
  const int before = (i - 1) * n() - (i - 1) * i / 2;
  return static_cast<std::size_t>(before + (j - i - 1));
}

const RingElement& GroupElement::upper(int i, int j) const { return u_[index(i, j)]; }

const RingElement& GroupElement::diag(int i) const {
  if (i < 1 || i > n()) throw Error(ErrorCode::index_out_of_pattern, "diagonal index " + std::to_string(i));
  return d_[static_cast<std::size_t>(i - 1)];
}

void GroupElement::set_upper(int i, int j, RingElement r) {
  rings::require_same_ring(ring_, r.ring());
  const std::size_t k = index(i, j);
  if (!retained(q_, n(), i, j)) {
    if (r.is_zero()) return;
    throw Error(ErrorCode::index_out_of_pattern,
                "(" + std::to_string(i) + "," + std::to_string(j) + ") is dropped in this quotient");
  }
  u_[k] = std::move(r);
}

void GroupElement::set_diag(int i, RingElement u) {
  rings::require_same_ring(ring_, u.ring());
  if (i < 1 || i > n()) throw Error(ErrorCode::index_out_of_pattern, "diagonal index " + std::to_string(i));
  if (!ix_.contains(i)) {
    if (u.is_one()) return;
    throw Error(ErrorCode::index_out_of_pattern, "diagonal position " + std::to_string(i) + " is outside I = " + ix_.to_string());
  }
  if (!rings::try_inverse(u)) throw Error(ErrorCode::not_a_unit, u.to_string() + " is not a unit");
  d_[static_cast<std::size_t>(i - 1)] = std::move(u);
}

void GroupElement::clear_dropped() {
  if (q_ == QuotientKind::none) return;
  for (int i = 1; i <= n(); ++i)
    for (int j = i + 1; j <= n(); ++j)
      if (!retained(q_, n(), i, j)) u_[index(i, j)] = rings::zero(ring_);
}

bool GroupElement::is_identity() const {
  return std::all_of(u_.begin(), u_.end(), [](const RingElement& r) { return r.is_zero(); }) &&
         std::all_of(d_.begin(), d_.end(), [](const RingElement& r) { return r.is_one(); });
}

GroupElement GroupElement::unipotent_part() const {
  GroupElement g = *this;
  for (auto& x : g.d_) x = rings::one(ring_);
  return g;
}

GroupElement GroupElement::diagonal_part() const {
  GroupElement g = *this;
  for (auto& x : g.u_) x = rings::zero(ring_);
  return g;
}

bool GroupElement::operator==(const GroupElement& o) const {
  return ix_ == o.ix_ && q_ == o.q_ && rings::same_ring(ring_, o.ring_) && u_ == o.u_ && d_ == o.d_;
}

std::size_t GroupElement::hash() const {
  std::size_t h = static_cast<std::size_t>(n()) * 1315423911u;
  for (const auto& x : u_) h = h * 1000003u ^ x.hash();
  for (const auto& x : d_) h = h * 1000003u ^ x.hash();
  return h;
}

json GroupElement::to_json() const {
  json j;
  json diag = json::array();
  for (const auto& x : d_) diag.push_back(x.to_string());
  j["diag"] = diag;
  json up = json::object();
  for (int i = 1; i <= n(); ++i)
    for (int k = i + 1; k <= n(); ++k) {
      const auto& r = upper(i, k);
      if (!r.is_zero()) up[std::to_string(i) + "," + std::to_string(k)] = r.to_string();
    }
  j["upper"] = up;
  return j;
}

std::string GroupElement::to_string() const { return to_json().dump(); }

void require_same_group(const GroupElement& a, const GroupElement& b) {
  if (!(a.index_set() == b.index_set()) || a.quotient() != b.quotient())
    throw Error(ErrorCode::spec_mismatch, "elements live in different groups");
  rings::require_same_ring(a.ring(), b.ring());
}

GroupElement identity(const IndexSet& ix, const Ring& ring, QuotientKind q) { return GroupElement(ix, ring, q); }

GroupElement elementary(const IndexSet& ix, const Ring& ring, int i, int j, const RingElement& r, QuotientKind q) {
  GroupElement g(ix, ring, q);
  if (i < 1 || j > ix.n() || i >= j)
    throw Error(ErrorCode::index_out_of_pattern, "e(" + std::to_string(i) + "," + std::to_string(j) + ") is not strictly upper");
  if (retained(q, ix.n(), i, j)) g.set_upper(i, j, r);
  return g;
}

GroupElement diagonal_gen(const IndexSet& ix, const Ring& ring, int i, const RingElement& u, QuotientKind q) {
  if (i < 1 || i > ix.n() || !ix.contains(i))
    throw Error(ErrorCode::index_out_of_pattern, "d_" + std::to_string(i) + " with I = " + ix.to_string());
  GroupElement g(ix, ring, q);
  g.set_diag(i, u);
  return g;
}

GroupElement diagonal(const IndexSet& ix, const Ring& ring, const std::vector<RingElement>& u, QuotientKind q) {
  if (static_cast<int>(u.size()) != ix.n()) throw Error(ErrorCode::invalid_spec, "diagonal needs n entries");
  GroupElement g(ix, ring, q);
  for (int i = 1; i <= ix.n(); ++i) g.set_diag(i, u[static_cast<std::size_t>(i - 1)]);
  return g;
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  require_same_group(a, b);
  const int n = a.n();
  // (U1 D1)(U2 D2) = U1 (D1 U2 D1^-1) D1 D2
  std::vector<RingElement> dinv(static_cast<std::size_t>(n), rings::one(a.ring_));
  for (int i = 0; i < n; ++i)
    if (!a.d_[static_cast<std::size_t>(i)].is_one()) dinv[static_cast<std::size_t>(i)] = rings::unit_inverse(a.d_[static_cast<std::size_t>(i)]);
  GroupElement out(a.ix_, a.ring_, a.q_);
  std::vector<RingElement> w = b.u_;  // D1 U2 D1^-1
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      RingElement& x = w[a.index(i, j)];
      if (x.is_zero()) continue;
      const auto& di = a.d_[static_cast<std::size_t>(i - 1)];
      const auto& dj = dinv[static_cast<std::size_t>(j - 1)];
      if (!di.is_one()) x = di * x;
      if (!dj.is_one()) x = x * dj;
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (!retained(a.q_, n, i, j)) continue;
      RingElement s = a.u_[a.index(i, j)] + w[a.index(i, j)];
      for (int k = i + 1; k < j; ++k) {
        const auto& x = a.u_[a.index(i, k)];
        const auto& y = w[a.index(k, j)];
        if (!x.is_zero() && !y.is_zero()) s = s + x * y;
      }
      out.u_[out.index(i, j)] = std::move(s);
    }
  for (std::size_t i = 0; i < out.d_.size(); ++i) out.d_[i] = a.d_[i] * b.d_[i];
  return out;
}

GroupElement inverse(const GroupElement& a) {
  const int n = a.n();
  // (U D)^-1 = (D^-1 V D) D^-1 with V = U^-1
  GroupElement out(a.ix_, a.ring_, a.q_);
  std::vector<RingElement> v(a.u_.size(), rings::zero(a.ring_));
  for (int len = 1; len < n; ++len)
    for (int i = 1; i + len <= n; ++i) {
      const int j = i + len;
      RingElement s = -a.u_[a.index(i, j)];
      for (int k = i + 1; k < j; ++k) {
        const auto& x = a.u_[a.index(i, k)];
        const auto& y = v[a.index(k, j)];
        if (!x.is_zero() && !y.is_zero()) s = s - x * y;
      }
      v[a.index(i, j)] = std::move(s);
    }
  std::vector<RingElement> dinv(static_cast<std::size_t>(n), rings::one(a.ring_));
  for (int i = 0; i < n; ++i)
    if (!a.d_[static_cast<std::size_t>(i)].is_one()) dinv[static_cast<std::size_t>(i)] = rings::unit_inverse(a.d_[static_cast<std::size_t>(i)]);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      RingElement x = v[a.index(i, j)];
      if (!x.is_zero()) x = dinv[static_cast<std::size_t>(i - 1)] * x * a.d_[static_cast<std::size_t>(j - 1)];
      out.u_[out.index(i, j)] = std::move(x);
    }
  out.d_ = dinv;
  out.clear_dropped();
  return out;
}

GroupElement power(const GroupElement& a, long long e) {
  GroupElement base = e < 0 ? inverse(a) : a;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  GroupElement r(a.index_set(), a.ring(), a.quotient());
  while (k) {
    if (k & 1) r = multiply(r, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return r;
}

GroupElement commutator(const GroupElement& a, const GroupElement& b) {
  return multiply(multiply(a, b), multiply(inverse(a), inverse(b)));
}

GroupElement conjugate(const GroupElement& g, const GroupElement& h) { return multiply(multiply(h, g), inverse(h)); }

GroupElement iterated_commutator(const GroupElement& x, const GroupElement& y, int ell) {
  if (ell < 1) throw Error(ErrorCode::invalid_spec, "iterated commutator length must be positive");
  GroupElement c = commutator(x, y);
  for (int k = 1; k < ell; ++k) c = commutator(c, y);
  return c;
}

GroupElement project(const GroupElement& g, const QuotientSpec& q) {
  require_compatible(q, g.index_set());
  if (q.kind == QuotientSpec::Kind::mod_ideal) {
    if (!rings::same_ring(q.reduction->source(), g.ring()))
      throw Error(ErrorCode::incompatible_quotient, "reduction source differs from the element ring");
    GroupElement out(g.ix_, q.reduction->target(), g.q_);
    for (std::size_t k = 0; k < g.u_.size(); ++k) out.u_[k] = (*q.reduction)(g.u_[k]);
    for (std::size_t k = 0; k < g.d_.size(); ++k) out.d_[k] = (*q.reduction)(g.d_[k]);
    return out;
  }
  const QuotientKind target = q.element_kind();
  if (target == g.q_ || target == QuotientKind::none) {
    if (target == QuotientKind::none && g.q_ != QuotientKind::none)
      throw Error(ErrorCode::incompatible_quotient, "cannot lift a quotient element");
    return g;
  }
  if (g.q_ == QuotientKind::mod_commutator_u)
    throw Error(ErrorCode::incompatible_quotient, "mod_commutator_u is coarser than " + q.name());
  GroupElement out = g;
  out.q_ = target;
  out.clear_dropped();
  return out;
}

GroupElement apply_entrywise(const rings::RingAutomorphism& alpha, const GroupElement& g) {
  GroupElement out(g.index_set(), g.ring(), g.quotient());
  const int n = g.n();
  for (int i = 1; i <= n; ++i) {
    out.set_diag(i, rings::apply_ring_aut(alpha, g.diag(i)));
    for (int j = i + 1; j <= n; ++j)
      if (retained(g.quotient(), n, i, j)) out.set_upper(i, j, rings::apply_ring_aut(alpha, g.upper(i, j)));
  }
  return out;
}

std::vector<std::vector<RingElement>> to_matrix(const GroupElement& g) {
  const int n = g.n();
  std::vector<std::vector<RingElement>> m(static_cast<std::size_t>(n), std::vector<RingElement>(static_cast<std::size_t>(n), rings::zero(g.ring())));
  for (int i = 1; i <= n; ++i) {
    m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] = g.diag(i);
    for (int j = i + 1; j <= n; ++j) m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = g.upper(i, j) * g.diag(j);
  }
  return m;
}

GroupElement element_from_json(const IndexSet& ix, const Ring& ring, const json& j, QuotientKind q) {
  GroupElement g(ix, ring, q);
  try {
    if (j.contains("diag")) {
      const auto& d = j.at("diag");
      if (!d.is_array() || static_cast<int>(d.size()) != ix.n()) throw Error(ErrorCode::parse_error, "\"diag\" needs n entries");
      for (int i = 1; i <= ix.n(); ++i) g.set_diag(i, rings::parse_element(ring, d[static_cast<std::size_t>(i - 1)].get<std::string>()));
    }
    if (j.contains("upper")) {
      static const std::regex key(R"(^\s*(\d+)\s*,\s*(\d+)\s*$)");
      for (const auto& [k, v] : j.at("upper").items()) {
        std::smatch m;
        if (!std::regex_match(k, m, key)) throw Error(ErrorCode::parse_error, "bad upper key \"" + k + "\"");
        g.set_upper(std::stoi(m[1]), std::stoi(m[2]), rings::parse_element(ring, v.get<std::string>()));
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("group element JSON: ") + e.what());
  }
  return g;
}

GroupElement parse_word(const IndexSet& ix, const Ring& ring, const std::string& word, QuotientKind q) {
  std::vector<std::string> factors;
  int depth = 0;
  std::string cur;
  for (char c : word) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '*' && depth == 0) {
      factors.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  factors.push_back(cur);
  static const std::regex ee(R"(^\s*e\(\s*(\d+)\s*,\s*(\d+)\s*;(.*)\)\s*(\^\s*(-?\d+))?\s*$)");
  static const std::regex dd(R"(^\s*d\(\s*(\d+)\s*;(.*)\)\s*(\^\s*(-?\d+))?\s*$)");
  static const std::regex one(R"(^\s*1\s*$)");
  GroupElement g(ix, ring, q);
  for (const auto& f : factors) {
    std::smatch m;
    GroupElement x(ix, ring, q);
    std::string exp;
    if (std::regex_match(f, m, ee)) {
      x = elementary(ix, ring, std::stoi(m[1]), std::stoi(m[2]), rings::parse_element(ring, m[3].str()), q);
      exp = m[5];
    } else if (std::regex_match(f, m, dd)) {
      x = diagonal_gen(ix, ring, std::stoi(m[1]), rings::parse_element(ring, m[2].str()), q);
      exp = m[4];
    } else if (!std::regex_match(f, one)) {
      throw Error(ErrorCode::parse_error, "cannot read word factor \"" + f + "\"");
    }
    if (!exp.empty()) x = power(x, std::stoll(exp));
    g = multiply(g, x);
  }
  return g;
}

GroupElement random_unipotent(const IndexSet& ix, const Ring& ring, Rng& rng, QuotientKind q) {
  GroupElement g(ix, ring, q);
  for (int i = 1; i <= ix.n(); ++i)
    for (int j = i + 1; j <= ix.n(); ++j)
      if (retained(q, ix.n(), i, j)) g.set_upper(i, j, rings::random_element(ring, rng));
  return g;
}

GroupElement random_group_element(const IndexSet& ix, const Ring& ring, Rng& rng, QuotientKind q) {
  GroupElement g = random_unipotent(ix, ring, rng, q);
  for (int i : ix.members()) g.set_diag(i, rings::random_unit(ring, rng));
  return g;
}

}  // namespace twistmat::groups
