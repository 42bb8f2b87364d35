#include "twistmat/twisted.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "twistmat/errors.hpp"

namespace twistmat::twisted {

using json = nlohmann::json;
using rings::FieldElem;
using rings::Poly;

namespace {

constexpr Elem unset = std::numeric_limits<Elem>::max();

struct UnionFind {
  std::vector<Elem> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Elem{0}); }
  Elem find(Elem x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Keeps the smaller root so roots are least class members.
  void unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

void require_enumerable(const FiniteGroup& G) {
  if (G.order() > groups::enumeration_limit())
    throw Error(ErrorCode::too_large, G.describe() + " has " + std::to_string(G.order()) + " elements, limit " +
                                          std::to_string(groups::enumeration_limit()));
}

// The subgroup with the given sorted elements as a table group, plus the map
// back into G.
groups::TableGroup subgroup_table(const FiniteGroup& G, const std::vector<Elem>& elems) {
  const std::size_t m = elems.size();
  std::vector<Elem> index(G.order(), unset);
  for (Elem i = 0; i < m; ++i) index[elems[i]] = i;
  std::vector<Elem> table(m * m);
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b) table[static_cast<std::size_t>(a) * m + b] = index[G.multiply(elems[a], elems[b])];
  std::vector<Elem> gens;
  std::vector<Elem> span{index[G.identity()]};
  std::vector<bool> in_span(m, false);
  in_span[span[0]] = true;
  // Greedy generating set: add an element whenever it is not yet reached.
  for (Elem a = 0; a < m; ++a) {
    if (in_span[a]) continue;
    gens.push_back(a);
    std::vector<Elem> queue(span);
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (Elem s : gens) {
        const Elem y = table[static_cast<std::size_t>(queue[k]) * m + s];
        if (!in_span[y]) {
          in_span[y] = true;
          queue.push_back(y);
        }
      }
    span = queue;
  }
  std::vector<std::string> labels;
  for (Elem x : elems) labels.push_back(G.label(x));
  return groups::TableGroup(G.describe() + " subgroup", m, std::move(table), std::move(gens), std::move(labels));
}

}  // namespace

GroupElement twisted_conjugate(const Automorphism& phi, const GroupElement& x, const GroupElement& g) {
  return groups::multiply(groups::multiply(g, x), groups::inverse(automorphisms::apply(phi, g)));
}

Elem twisted_conjugate(const FiniteGroup& G, const Perm& phi, Elem x, Elem g) {
  return G.multiply(G.multiply(g, x), G.inverse(phi[g]));
}

json ReidemeisterReport::to_json() const {
  return json{{"group", group},   {"automorphism", automorphism}, {"order", order},
              {"R", count},       {"representatives", labels},    {"class_sizes", sizes}};
}

ReidemeisterReport reidemeister_classes_finite(const FiniteGroup& G, const Perm& phi, const std::string& phi_name) {
  require_enumerable(G);
  if (!groups::is_automorphism(G, phi))
    throw Error(ErrorCode::not_an_automorphism, (phi_name.empty() ? std::string("map") : phi_name) + " is not an automorphism of " +
                                                    G.describe());
  const std::size_t n = G.order();
  UnionFind uf(n);
  for (Elem x = 0; x < n; ++x)
    for (Elem s : G.generators()) uf.unite(x, twisted_conjugate(G, phi, x, s));
  ReidemeisterReport rep;
  rep.group = G.describe();
  rep.automorphism = phi_name;
  rep.order = n;
  std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
  for (Elem x = 0; x < n; ++x) {
    const Elem r = uf.find(x);
    if (slot[r] == std::numeric_limits<std::size_t>::max()) {
      slot[r] = rep.representatives.size();
      rep.representatives.push_back(r);
      rep.sizes.push_back(0);
      rep.labels.push_back(G.label(r));
    }
    ++rep.sizes[slot[r]];
  }
  rep.count = rep.representatives.size();
  return rep;
}

std::size_t commuting_pair_class_count(const FiniteGroup& G) {
  require_enumerable(G);
  std::size_t pairs = 0;
  for (Elem a = 0; a < G.order(); ++a)
    for (Elem b = 0; b < G.order(); ++b)
      if (G.multiply(a, b) == G.multiply(b, a)) ++pairs;
  return pairs / G.order();
}

std::vector<Elem> fixed_points_finite(const FiniteGroup& G, const Perm& phi) {
  require_enumerable(G);
  std::vector<Elem> out;
  for (Elem x = 0; x < G.order(); ++x)
    if (phi[x] == x) out.push_back(x);
  return out;
}

std::size_t reidemeister_lower_bound_via_quotient(const FiniteGroup& G, const std::vector<Elem>& normal_generators,
                                                  const Perm& phi) {
  require_enumerable(G);
  const auto q = groups::quotient_group(G, normal_generators);
  const Perm bar = groups::induced_on_quotient(G, q, phi);
  return reidemeister_classes_finite(*q.group, bar).count;
}

json HeathCheck::to_json() const {
  return json{{"consistent", consistent},       {"R_phi", r_phi},           {"R_quotient", r_quotient},
              {"classes_above", classes_above}, {"fibre_counts", fibre_counts}, {"fibre_total", fibre_total}};
}

HeathCheck heath_finiteness_check(const FiniteGroup& G, const std::vector<Elem>& normal_generators, const Perm& phi) {
  require_enumerable(G);
  const auto q = groups::quotient_group(G, normal_generators);
  const Perm bar = groups::induced_on_quotient(G, q, phi);
  const auto full = reidemeister_classes_finite(G, phi);
  const auto low = reidemeister_classes_finite(*q.group, bar);

  std::vector<Elem> class_of(G.order());
  {
    UnionFind uf(G.order());
    for (Elem x = 0; x < G.order(); ++x)
      for (Elem s : G.generators()) uf.unite(x, twisted_conjugate(G, phi, x, s));
    for (Elem x = 0; x < G.order(); ++x) class_of[x] = uf.find(x);
  }
  UnionFind quf(q.group->order());
  for (Elem c = 0; c < q.group->order(); ++c)
    for (Elem s : q.group->generators()) quf.unite(c, twisted_conjugate(*q.group, bar, c, s));

  const auto sub = subgroup_table(G, q.kernel);
  HeathCheck h;
  h.r_phi = full.count;
  h.r_quotient = low.count;
  for (Elem rc : low.representatives) {
    std::unordered_set<Elem> above;
    for (Elem x = 0; x < G.order(); ++x)
      if (quf.find(q.projection[x]) == rc) above.insert(class_of[x]);
    h.classes_above.push_back(above.size());
    // N-orbits on N g correspond to classes of n -> g phi(n) g^-1 on N.
    const Elem g = q.representatives[rc];
    const Elem gi = G.inverse(g);
    Perm psi(q.kernel.size());
    for (std::size_t k = 0; k < q.kernel.size(); ++k) {
      const Elem y = G.multiply(G.multiply(g, phi[q.kernel[k]]), gi);
      psi[k] = static_cast<Elem>(std::lower_bound(q.kernel.begin(), q.kernel.end(), y) - q.kernel.begin());
    }
    const std::size_t r = reidemeister_classes_finite(sub, psi).count;
    h.fibre_counts.push_back(r);
    h.fibre_total += r;
  }
  h.consistent = h.r_quotient <= h.r_phi && h.r_phi <= h.fibre_total;
  for (std::size_t i = 0; i < h.classes_above.size(); ++i)
    h.consistent = h.consistent && h.classes_above[i] >= 1 && h.classes_above[i] <= h.fibre_counts[i];
  std::size_t sum = 0;
  for (auto c : h.classes_above) sum += c;
  h.consistent = h.consistent && sum == h.r_phi;
  return h;
}

// ---------------------------------------------------------------------------

json FixFamilyCertificate::to_json() const {
  json d = json::array();
  for (const auto& x : d_c) d.push_back(x.to_string());
  return json{{"n", n},
              {"I", index_set.to_string()},
              {"ring", ring},
              {"quotient", "mod_commutator_u"},
              {"epsilon", epsilon},
              {"alpha", alpha.to_json()},
              {"d_c", d},
              {"automorphism", automorphism},
              {"parameter_set", parameter_set},
              {"requested", requested},
              {"verified", verified},
              {"finitely_generated", {{"verdict", fingen.finitely_generated},
                                      {"condition", fingen.condition},
                                      {"reason", fingen.reason}}},
              {"residually_finite", residual_finiteness},
              {"jabara_applicable", jabara_applicable}};
}

FixFamilyCertificate fix_family_certify(int n, const IndexSet& ix, const Ring& ring, int epsilon,
                                        const rings::RingAutomorphism& alpha, const std::vector<RingElement>& d_c,
                                        int count) {
  auto unmet = [](const std::string& m) { return Error(ErrorCode::precondition_unmet, m); };
  if (n < 4 || ix.n() != n) throw unmet("needs n >= 4 and an index set of the same size");
  if (epsilon != 0 && epsilon != 1) throw unmet("epsilon must be 0 or 1");
  if (count < 0) throw unmet("count must be non-negative");
  if (auto bad = groups::ng_violation(ix)) throw unmet("(NG) fails at i=" + std::to_string(*bad));
  if (static_cast<int>(d_c.size()) != n) throw unmet("d_c needs n entries");
  for (int i = 1; i <= n; ++i) {
    const RingElement& x = d_c[static_cast<std::size_t>(i - 1)];
    rings::require_same_ring(x.ring(), ring);
    if (!rings::try_inverse(x)) throw unmet("d_c entry " + x.to_string() + " is not a unit");
    if (ix.contains(i) && !x.is_one()) throw unmet("d_c must be 1 on I");
  }
  try {
    rings::require_compatible(alpha, ring);
  } catch (const Error& e) {
    throw unmet(e.what());
  }

  FixFamilyCertificate cert;
  cert.n = n;
  cert.index_set = ix;
  cert.ring = ring->name();
  cert.epsilon = epsilon;
  cert.alpha = alpha;
  cert.d_c = d_c;
  cert.requested = count;
  cert.fingen = groups::is_finitely_generated(ring, ix);
  cert.residual_finiteness =
      "cited: finitely generated soluble linear groups over commutative rings are residually finite (P. Hall); not computed";
  cert.jabara_applicable = cert.fingen.finitely_generated;

  std::vector<automorphisms::Atom> atoms{automorphisms::Inner{automorphisms::dc_star(d_c, ix)},
                                         automorphisms::DiagConj{d_c}};
  if (epsilon == 1) atoms.push_back(automorphisms::Flip{});
  atoms.push_back(automorphisms::RingInduced{alpha});
  const auto q = groups::QuotientSpec::mod_commutator_u();
  const Automorphism bar = automorphisms::induce_on_quotient(Automorphism(atoms), ix, ring, q);
  cert.automorphism = bar.describe();

  std::optional<RingElement> x;
  if (ring->characteristic_zero()) {
    cert.parameter_set = "s = 1.." + std::to_string(count);
  } else {
    x = rings::fixed_transcendental(ring);
    cert.parameter_set = "s = x^k, k = 1.." + std::to_string(count) + ", x = " + x->to_string();
  }
  for (int k = 1; k <= count; ++k) {
    const RingElement s = x ? rings::pow(*x, k) : rings::from_int(ring, k);
    if (rings::apply_ring_aut(alpha, s) != s) throw unmet(alpha.to_string() + " moves the parameter " + s.to_string());
    const GroupElement e = groups::project(
        groups::multiply(groups::elementary(ix, ring, 1, 2, s), groups::elementary(ix, ring, n - 1, n, s)), q);
    const GroupElement img = automorphisms::apply(bar, e);
    if (img != e)
      throw Error(ErrorCode::parameter_not_fixed,
                  "s = " + s.to_string() + ": " + e.to_string() + " maps to " + img.to_string());
    ++cert.verified;
  }
  return cert;
}

// ---------------------------------------------------------------------------

json FixSearchReport::to_json() const {
  json pts = json::array();
  for (const auto& g : fixed_points) pts.push_back(g.to_json());
  return json{{"automorphism", automorphism},
              {"ring", ring},
              {"bounds", {{"height", bounds.height}, {"exponent", bounds.exponent}, {"degree", bounds.degree}}},
              {"values_per_coordinate", values_per_coordinate},
              {"points_searched", points_searched},
              {"fixed_points", pts}};
}

std::vector<RingElement> box_values(const Ring& ring, const BoxBounds& b) {
  std::vector<RingElement> out;
  std::unordered_set<RingElement, rings::RingElementHash> seen;
  auto push = [&](const RingElement& x) {
    if (seen.insert(x).second) out.push_back(x);
  };
  using rings::RingKind;
  switch (ring->kind()) {
    case RingKind::integers:
      for (int a = -b.height; a <= b.height; ++a) push(rings::from_int(ring, a));
      break;
    case RingKind::s_integers: {
      std::vector<RingElement> dens{rings::one(ring)};
      for (long p : ring->primes()) {
        std::vector<RingElement> next;
        const RingElement pinv = rings::unit_inverse(rings::from_int(ring, p));
        for (const auto& d : dens)
          for (int e = 0; e <= b.exponent; ++e) next.push_back(d * rings::pow(pinv, e));
        dens = std::move(next);
      }
      for (int a = -b.height; a <= b.height; ++a)
        for (const auto& d : dens) push(rings::from_int(ring, a) * d);
      break;
    }
    case RingKind::quadratic:
      for (int a = -b.height; a <= b.height; ++a)
        for (int c = -b.height; c <= b.height; ++c) push(RingElement::from_quadratic(ring, a, c));
      break;
    case RingKind::finite_field:
      for (FieldElem v = 0; v < ring->field().order(); ++v) push(RingElement::from_field(ring, v));
      break;
    default: {
      const FieldElem q = ring->field().order();
      std::vector<RingElement> nums;
      std::vector<FieldElem> c(static_cast<std::size_t>(b.degree + 1), 0);
      for (;;) {
        Poly p;
        p.c = c;
        nums.push_back(RingElement::from_poly(ring, p));
        std::size_t k = 0;
        while (k < c.size() && ++c[k] == q) c[k++] = 0;
        if (k == c.size()) break;
      }
      std::vector<RingElement> dens{rings::one(ring)};
      for (std::size_t i = 0; i < ring->generator_count(); ++i) {
        const RingElement ginv = rings::unit_inverse(RingElement::from_poly(ring, ring->generator_poly(i)));
        std::vector<RingElement> next;
        for (const auto& d : dens)
          for (int e = 0; e <= b.exponent; ++e) next.push_back(d * rings::pow(ginv, e));
        dens = std::move(next);
      }
      for (const auto& a : nums)
        for (const auto& d : dens) push(a * d);
    }
  }
  return out;
}

FixSearchReport fix_trivial_box_search(const Automorphism& phi, const Ring& ring, const BoxBounds& b) {
  const IndexSet ix(3, {2});
  FixSearchReport rep;
  rep.automorphism = phi.describe();
  rep.ring = ring->name();
  rep.bounds = b;
  const auto vals = box_values(ring, b);
  rep.values_per_coordinate = vals.size();
  for (const auto& x : vals)
    for (const auto& y : vals)
      for (const auto& z : vals) {
        GroupElement g(ix, ring);
        g.set_upper(1, 2, x);
        g.set_upper(2, 3, y);
        g.set_upper(1, 3, z);
        ++rep.points_searched;
        if (automorphisms::apply(phi, g) == g) rep.fixed_points.push_back(g);
      }
  return rep;
}

Automorphism abels3_psi(const Ring& ring, const RingElement& u) {
  const IndexSet ix(3, {2});
  auto atoms = automorphisms::abels3_phi(ring).atoms();
  atoms.insert(atoms.begin(), automorphisms::Inner{groups::diagonal_gen(ix, ring, 2, u)});
  return Automorphism(std::move(atoms));
}

// ---------------------------------------------------------------------------

std::vector<Elem> irredundant_generators(const FiniteGroup& G) {
  std::vector<Elem> out;
  std::vector<bool> in_span(G.order(), false);
  in_span[G.identity()] = true;
  std::vector<Elem> span{G.identity()};
  for (Elem s : G.generators()) {
    if (in_span[s]) continue;
    out.push_back(s);
    for (std::size_t k = 0; k < span.size(); ++k)
      for (Elem t : out) {
        const Elem y = G.multiply(span[k], t);
        if (!in_span[y]) {
          in_span[y] = true;
          span.push_back(y);
        }
      }
  }
  return out;
}

namespace {

class AutSearch {
public:
  AutSearch(const FiniteGroup& G) : G_(G), gens_(irredundant_generators(G)), img_(G.order(), unset), used_(G.order(), false) {
    order_.resize(G.order());
    for (Elem x = 0; x < G.order(); ++x) order_[x] = groups::element_order(G, x);
  }

  std::vector<Perm> run() {
    img_[G_.identity()] = G_.identity();
    used_[G_.identity()] = true;
    mapped_.push_back(G_.identity());
    recurse(0);
    std::sort(found_.begin(), found_.end());
    return found_;
  }

private:
  // Extends the map over the subgroup generated by gens_[0..k]; false on a
  // clash or a collision.
  bool extend(std::size_t k) {
    for (std::size_t i = 0; i < mapped_.size(); ++i) {
      const Elem h = mapped_[i];
      for (std::size_t j = 0; j <= k; ++j) {
        const Elem x = G_.multiply(h, gens_[j]);
        const Elem im = G_.multiply(img_[h], img_[gens_[j]]);
        if (img_[x] == unset) {
          if (used_[im]) return false;
          img_[x] = im;
          used_[im] = true;
          mapped_.push_back(x);
        } else if (img_[x] != im) {
          return false;
        }
      }
    }
    return true;
  }

  void rollback(std::size_t size) {
    while (mapped_.size() > size) {
      used_[img_[mapped_.back()]] = false;
      img_[mapped_.back()] = unset;
      mapped_.pop_back();
    }
  }

  void recurse(std::size_t k) {
    if (k == gens_.size()) {
      if (mapped_.size() == G_.order() && groups::is_automorphism(G_, img_)) found_.push_back(img_);
      return;
    }
    const Elem s = gens_[k];
    for (Elem c = 0; c < G_.order(); ++c) {
      if (used_[c] || order_[c] != order_[s]) continue;
      const std::size_t size = mapped_.size();
      img_[s] = c;
      used_[c] = true;
      mapped_.push_back(s);
      if (extend(k)) recurse(k + 1);
      rollback(size);
    }
  }

  const FiniteGroup& G_;
  std::vector<Elem> gens_;
  std::vector<std::size_t> order_;
  Perm img_;
  std::vector<bool> used_;
  std::vector<Elem> mapped_;
  std::vector<Perm> found_;
};

}  // namespace

std::vector<Perm> enumerate_automorphisms_small(const FiniteGroup& G, std::size_t limit) {
  if (G.order() > limit)
    throw Error(ErrorCode::too_large, G.describe() + " has " + std::to_string(G.order()) +
                                          " elements; automorphism enumeration limit is " + std::to_string(limit));
  return AutSearch(G).run();
}

}  // namespace twistmat::twisted
