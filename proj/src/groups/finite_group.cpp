#include "twistmat/finite_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>

#include "twistmat/errors.hpp"

namespace twistmat::groups {

namespace {
constexpr std::size_t table_cache_limit = 1024;
}

TableGroup::TableGroup(std::string name, std::size_t order, std::vector<Elem> table, std::vector<Elem> generators,
                       std::vector<std::string> labels)
    : name_(std::move(name)),
      order_(order),
      table_(std::move(table)),
      inverse_(order, 0),
      generators_(std::move(generators)),
      labels_(std::move(labels)) {
  if (table_.size() != order_ * order_) throw Error(ErrorCode::invalid_spec, "multiplication table has the wrong size");
  bool found = false;
  for (Elem e = 0; e < order_ && !found; ++e) {
    bool ok = true;
    for (Elem x = 0; x < order_ && ok; ++x) ok = multiply(e, x) == x && multiply(x, e) == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::invalid_spec, "table has no identity");
  for (Elem a = 0; a < order_; ++a)
    for (Elem b = 0; b < order_; ++b)
      if (multiply(a, b) == identity_) {
        inverse_[a] = b;
        break;
      }
}

TableGroup TableGroup::cyclic(std::size_t n) {
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Elem>((a + b) % n);
  std::vector<Elem> gens;
  if (n > 1) gens.push_back(1);
  return TableGroup("Z/" + std::to_string(n), n, std::move(t), std::move(gens));
}

TableGroup TableGroup::materialize(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Elem> t(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = g.multiply(a, b);
  std::vector<std::string> labels;
  for (Elem a = 0; a < n; ++a) labels.push_back(g.label(a));
  return TableGroup(g.describe(), n, std::move(t), g.generators(), std::move(labels));
}

std::string TableGroup::label(Elem a) const {
  if (a < labels_.size()) return labels_[a];
  return std::to_string(a);
}

std::size_t enumeration_limit() {
  if (const char* env = std::getenv("TWISTMAT_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

// ---------------------------------------------------------------------------

std::size_t MatrixGroup::predicted_order(const IndexSet& ix, const Ring& field_ring, QuotientKind q) {
  if (field_ring->kind() != rings::RingKind::finite_field)
    throw Error(ErrorCode::unsupported_spec, "finite enumeration needs a finite field, got " + field_ring->name());
  const std::size_t qf = field_ring->field().order();
  const std::size_t cap = std::numeric_limits<std::size_t>::max() / (qf + 1);
  std::size_t total = 1;
  auto times = [&](std::size_t f) {
    if (total > cap) total = std::numeric_limits<std::size_t>::max();
    else total *= f;
  };
  for (int i = 1; i <= ix.n(); ++i)
    for (int j = i + 1; j <= ix.n(); ++j)
      if (retained(q, ix.n(), i, j)) times(qf);
  for (std::size_t k = 0; k < ix.members().size(); ++k) times(qf - 1);
  return total;
}

MatrixGroup::MatrixGroup(IndexSet ix, Ring field_ring, QuotientKind q, std::size_t limit)
    : ix_(std::move(ix)), ring_(std::move(field_ring)), q_(q) {
  if (q_ == QuotientKind::mod_center_u4 && !(ix_ == IndexSet(4, {2, 3})))
    throw Error(ErrorCode::incompatible_quotient, "mod_center_u4 needs n=4, I={2,3}");
  order_ = predicted_order(ix_, ring_, q_);
  if (order_ > limit || order_ > std::numeric_limits<Elem>::max())
    throw Error(ErrorCode::too_large, describe() + " has " +
                                          (order_ == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                                               : std::to_string(order_)) +
                                          " elements, above the limit " + std::to_string(limit));
  for (int i = 1; i <= ix_.n(); ++i)
    for (int j = i + 1; j <= ix_.n(); ++j)
      if (retained(q_, ix_.n(), i, j)) coords_.emplace_back(i, j);
  const int n = ix_.n();
  Raw id{std::vector<FieldElem>(static_cast<std::size_t>(n * (n - 1) / 2), 0), std::vector<FieldElem>(static_cast<std::size_t>(n), 1)};
  identity_ = pack(id);
  const rings::FiniteField& F = ring_->field();
  for (int i = 1; i < n; ++i)
    for (std::uint32_t k = 0; k < F.degree(); ++k) {
      Raw g = id;
      std::vector<std::uint32_t> digits(F.degree(), 0);
      digits[k] = 1;
      g.u[uidx(i, i + 1)] = F.from_digits(digits);
      generators_.push_back(pack(g));
    }
  if (F.order() > 2)
    for (int i : ix_.members()) {
      Raw g = id;
      g.d[static_cast<std::size_t>(i - 1)] = F.primitive();
      generators_.push_back(pack(g));
    }
  if (order_ <= table_cache_limit) {
    std::vector<Raw> raws;
    raws.reserve(order_);
    for (Elem a = 0; a < order_; ++a) raws.push_back(unpack(a));
    table_.resize(order_ * order_);
    inverse_table_.resize(order_);
    for (Elem a = 0; a < order_; ++a) {
      inverse_table_[a] = pack(raw_inverse(raws[a]));
      for (Elem b = 0; b < order_; ++b) table_[static_cast<std::size_t>(a) * order_ + b] = pack(raw_multiply(raws[a], raws[b]));
    }
  }
}

std::size_t MatrixGroup::uidx(int i, int j) const {
  const int n = ix_.n();
  return static_cast<std::size_t>((i - 1) * n - (i - 1) * i / 2 + (j - i - 1));
}

MatrixGroup::Raw MatrixGroup::unpack(Elem a) const {
  const int n = ix_.n();
  const std::uint32_t qf = ring_->field().order();
  Raw r{std::vector<FieldElem>(static_cast<std::size_t>(n * (n - 1) / 2), 0), std::vector<FieldElem>(static_cast<std::size_t>(n), 1)};
  std::size_t x = a;
  // least significant digit is the last coordinate
  const auto& members = ix_.members();
  for (std::size_t k = members.size(); k-- > 0;) {
    r.d[static_cast<std::size_t>(members[k] - 1)] = static_cast<FieldElem>(x % (qf - 1) + 1);
    x /= (qf - 1);
  }
  for (std::size_t k = coords_.size(); k-- > 0;) {
    r.u[uidx(coords_[k].first, coords_[k].second)] = static_cast<FieldElem>(x % qf);
    x /= qf;
  }
  return r;
}

Elem MatrixGroup::pack(const Raw& r) const {
  const std::uint32_t qf = ring_->field().order();
  std::size_t x = 0;
  for (const auto& [i, j] : coords_) x = x * qf + r.u[uidx(i, j)];
  for (int i : ix_.members()) x = x * (qf - 1) + (r.d[static_cast<std::size_t>(i - 1)] - 1);
  return static_cast<Elem>(x);
}

MatrixGroup::Raw MatrixGroup::raw_multiply(const Raw& a, const Raw& b) const {
  const rings::FiniteField& F = ring_->field();
  const int n = ix_.n();
  Raw out{std::vector<FieldElem>(a.u.size(), 0), std::vector<FieldElem>(a.d.size(), 1)};
  std::vector<FieldElem> w(b.u.size());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const FieldElem x = b.u[uidx(i, j)];
      w[uidx(i, j)] = x == 0 ? 0 : F.mul(F.mul(a.d[static_cast<std::size_t>(i - 1)], x), F.inv(a.d[static_cast<std::size_t>(j - 1)]));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (!retained(q_, n, i, j)) continue;
      FieldElem s = F.add(a.u[uidx(i, j)], w[uidx(i, j)]);
      for (int k = i + 1; k < j; ++k) s = F.add(s, F.mul(a.u[uidx(i, k)], w[uidx(k, j)]));
      out.u[uidx(i, j)] = s;
    }
  for (std::size_t i = 0; i < a.d.size(); ++i) out.d[i] = F.mul(a.d[i], b.d[i]);
  return out;
}

MatrixGroup::Raw MatrixGroup::raw_inverse(const Raw& a) const {
  const rings::FiniteField& F = ring_->field();
  const int n = ix_.n();
  std::vector<FieldElem> v(a.u.size(), 0);
  for (int len = 1; len < n; ++len)
    for (int i = 1; i + len <= n; ++i) {
      const int j = i + len;
      FieldElem s = F.neg(a.u[uidx(i, j)]);
      for (int k = i + 1; k < j; ++k) s = F.sub(s, F.mul(a.u[uidx(i, k)], v[uidx(k, j)]));
      v[uidx(i, j)] = s;
    }
  Raw out{std::vector<FieldElem>(a.u.size(), 0), std::vector<FieldElem>(a.d.size(), 1)};
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (retained(q_, n, i, j))
        out.u[uidx(i, j)] = F.mul(F.mul(F.inv(a.d[static_cast<std::size_t>(i - 1)]), v[uidx(i, j)]), a.d[static_cast<std::size_t>(j - 1)]);
  for (std::size_t i = 0; i < a.d.size(); ++i) out.d[i] = F.inv(a.d[i]);
  return out;
}

Elem MatrixGroup::multiply(Elem a, Elem b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
  return pack(raw_multiply(unpack(a), unpack(b)));
}

Elem MatrixGroup::inverse(Elem a) const {
  if (!inverse_table_.empty()) return inverse_table_[a];
  return pack(raw_inverse(unpack(a)));
}

std::string MatrixGroup::describe() const {
  std::string s = "S_" + std::to_string(ix_.n()) + "^" + ix_.to_string() + "(" + ring_->name() + ")";
  if (q_ == QuotientKind::mod_commutator_u) s += "/U'";
  if (q_ == QuotientKind::mod_center_u4) s += "/Z(U_4)";
  return s;
}

std::string MatrixGroup::label(Elem a) const { return decode(a).to_string(); }

Elem MatrixGroup::encode(const GroupElement& g) const {
  if (!(g.index_set() == ix_) || g.quotient() != q_ || !rings::same_ring(g.ring(), ring_))
    throw Error(ErrorCode::spec_mismatch, "element does not belong to " + describe());
  Raw r{std::vector<FieldElem>(static_cast<std::size_t>(ix_.n() * (ix_.n() - 1) / 2), 0), std::vector<FieldElem>(static_cast<std::size_t>(ix_.n()), 1)};
  for (const auto& [i, j] : coords_) r.u[uidx(i, j)] = g.upper(i, j).field_value();
  for (int i : ix_.members()) r.d[static_cast<std::size_t>(i - 1)] = g.diag(i).field_value();
  return pack(r);
}

GroupElement MatrixGroup::decode(Elem a) const {
  const Raw r = unpack(a);
  GroupElement g(ix_, ring_, q_);
  for (const auto& [i, j] : coords_) g.set_upper(i, j, rings::RingElement::from_field(ring_, r.u[uidx(i, j)]));
  for (int i : ix_.members()) g.set_diag(i, rings::RingElement::from_field(ring_, r.d[static_cast<std::size_t>(i - 1)]));
  return g;
}

std::vector<GroupElement> enumerate_finite_group(const IndexSet& ix, const Ring& field_ring, const QuotientSpec& q) {
  if (q.kind == QuotientSpec::Kind::mod_ideal)
    throw Error(ErrorCode::incompatible_quotient, "enumerate over the residue field ring instead of mod_ideal");
  require_compatible(q, ix);
  const MatrixGroup g(ix, field_ring, q.element_kind());
  std::vector<GroupElement> out;
  out.reserve(g.order());
  for (Elem a = 0; a < g.order(); ++a) out.push_back(g.decode(a));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Elem> subgroup_closure(const FiniteGroup& g, const std::vector<Elem>& gens) {
  std::vector<bool> seen(g.order(), false);
  std::deque<Elem> queue{g.identity()};
  seen[g.identity()] = true;
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (Elem s : gens) {
      const Elem y = g.multiply(x, s);
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

std::size_t element_order(const FiniteGroup& g, Elem a) {
  std::size_t k = 1;
  Elem x = a;
  while (x != g.identity()) {
    x = g.multiply(x, a);
    ++k;
  }
  return k;
}

FiniteQuotient quotient_group(const FiniteGroup& g, const std::vector<Elem>& normal_generators) {
  FiniteQuotient fq;
  fq.kernel = subgroup_closure(g, normal_generators);
  std::vector<bool> in_n(g.order(), false);
  for (Elem x : fq.kernel) in_n[x] = true;
  for (Elem s : g.generators())
    for (Elem x : normal_generators)
      if (!in_n[g.multiply(g.multiply(s, x), g.inverse(s))])
        throw Error(ErrorCode::incompatible_quotient, "subgroup is not normal");
  constexpr Elem unset = std::numeric_limits<Elem>::max();
  fq.projection.assign(g.order(), unset);
  for (Elem x = 0; x < g.order(); ++x) {
    if (fq.projection[x] != unset) continue;
    const Elem idx = static_cast<Elem>(fq.representatives.size());
    fq.representatives.push_back(x);
    for (Elem k : fq.kernel) fq.projection[g.multiply(x, k)] = idx;
  }
  const std::size_t m = fq.representatives.size();
  std::vector<Elem> table(m * m);
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b)
      table[static_cast<std::size_t>(a) * m + b] = fq.projection[g.multiply(fq.representatives[a], fq.representatives[b])];
  std::vector<Elem> gens;
  for (Elem s : g.generators()) {
    const Elem p = fq.projection[s];
    if (p != fq.projection[g.identity()] && std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
  }
  std::vector<std::string> labels;
  for (Elem r : fq.representatives) labels.push_back(g.label(r) + "N");
  fq.group = std::make_shared<TableGroup>(g.describe() + "/N", m, std::move(table), std::move(gens), std::move(labels));
  return fq;
}

bool is_automorphism(const FiniteGroup& g, const Perm& phi) {
  if (phi.size() != g.order()) return false;
  std::vector<bool> hit(g.order(), false);
  for (Elem y : phi) {
    if (y >= g.order() || hit[y]) return false;
    hit[y] = true;
  }
  for (Elem s : g.generators())
    for (Elem x = 0; x < g.order(); ++x)
      if (phi[g.multiply(s, x)] != g.multiply(phi[s], phi[x])) return false;
  return phi[g.identity()] == g.identity();
}

Perm induced_on_quotient(const FiniteGroup& g, const FiniteQuotient& q, const Perm& phi) {
  std::vector<bool> in_n(g.order(), false);
  for (Elem x : q.kernel) in_n[x] = true;
  for (Elem x : q.kernel)
    if (!in_n[phi[x]]) throw Error(ErrorCode::kernel_not_invariant, "phi moves kernel element " + g.label(x) + " outside N");
  Perm out(q.representatives.size());
  for (Elem c = 0; c < out.size(); ++c) out[c] = q.projection[phi[q.representatives[c]]];
  return out;
}

Perm identity_perm(const FiniteGroup& g) {
  Perm p(g.order());
  for (Elem x = 0; x < p.size(); ++x) p[x] = x;
  return p;
}

Perm compose_perm(const Perm& phi, const Perm& psi) {
  Perm out(psi.size());
  for (std::size_t x = 0; x < psi.size(); ++x) out[x] = phi[psi[x]];
  return out;
}

Perm inverse_perm(const Perm& phi) {
  Perm out(phi.size());
  for (std::size_t x = 0; x < phi.size(); ++x) out[phi[x]] = static_cast<Elem>(x);
  return out;
}

Perm inner_perm(const FiniteGroup& g, Elem h) {
  Perm out(g.order());
  const Elem hi = g.inverse(h);
  for (Elem x = 0; x < out.size(); ++x) out[x] = g.multiply(g.multiply(h, x), hi);
  return out;
}

}  // namespace twistmat::groups
