#include "twistmat/structure.hpp"

#include "twistmat/errors.hpp"

namespace twistmat::groups {

using json = nlohmann::json;
using rings::RingKind;

RingFacts ring_facts(const Ring& r) {
  switch (r->kind()) {
    case RingKind::integers:
      return {true, true, true, "Z is a cyclic additive group; U(Z) = {+-1}"};
    case RingKind::s_integers:
      return {false, true, true, "U(Z[1/N]) = +-<primes of N>; Z[U] = Z[1/N] so 1 generates"};
    case RingKind::quadratic:
      return {true, true, true, "Z[sqrt(d)] is free of rank 2; units by Dirichlet"};
    case RingKind::finite_field:
      return {true, true, true, "finite ring"};
    case RingKind::poly:
      return {false, true, false, "U(F_q[t]) = F_q^* is finite, Z[U] = F_q and F_q[t] is infinite-dimensional"};
    case RingKind::localized_poly:
      if (r->t_inverted())
        return {false, true, true, "U(R) = F_q^* x <t, f_i>; Z[U] already contains t^+-1 and f_i^+-1, so 1 generates"};
      return {false, true, true, "U(R) = F_q^* x <f_i>; F_q[t] is free of rank deg f_1 over F_q[f_1]"};
  }
  return {};
}

FinGenResult is_finitely_generated(const Ring& r, const IndexSet& ix) {
  FinGenResult res;
  res.facts = ring_facts(r);
  res.ng_failure = ng_violation(ix);
  if (res.facts.additive_fg) {
    res.finitely_generated = true;
    res.condition = "(i)";
    res.reason = "(R,+) finitely generated";
    return res;
  }
  if (!res.facts.units_fg) {
    res.condition = "no";
    res.reason = "(R,+) not f.g.; U(R) not f.g.";
    return res;
  }
  if (!res.facts.module_fg) {
    res.condition = "no";
    res.reason = "(R,+) not f.g.; R not f.g. over U(R)";
    return res;
  }
  if (res.ng_failure) {
    res.condition = "no";
    res.reason = "(R,+) not f.g.; (NG) fails at i=" + std::to_string(*res.ng_failure);
    return res;
  }
  res.finitely_generated = true;
  res.condition = "(ii)";
  res.reason = "U(R) f.g., R f.g. over U(R), (NG) holds";
  return res;
}

bool RelationReport::all_passed() const {
  for (const auto& r : relations)
    if (r.failures) return false;
  return true;
}

json RelationReport::to_json() const {
  json arr = json::array();
  for (const auto& r : relations) {
    json j;
    j["name"] = r.name;
    j["statement"] = r.statement;
    j["samples"] = r.samples;
    j["failures"] = r.failures;
    j["passed"] = r.failures == 0;
    if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
    arr.push_back(j);
  }
  return arr;
}

namespace {

int pick(Rng& rng, int lo, int hi) { return static_cast<int>(rings::uniform_int(rng, lo, hi)); }

std::pair<int, int> random_position(Rng& rng, int n) {
  const int i = pick(rng, 1, n - 1);
  return {i, pick(rng, i + 1, n)};
}

class Checker {
public:
  Checker(std::string name, std::string statement) { res_.name = std::move(name), res_.statement = std::move(statement); }
  void check(const GroupElement& lhs, const GroupElement& rhs, const std::string& what) {
    ++res_.samples;
    if (lhs == rhs) return;
    if (res_.failures++ == 0) res_.counterexample = what + ": " + lhs.to_string() + " != " + rhs.to_string();
  }
  RelationResult result() const { return res_; }

private:
  RelationResult res_;
};

}  // namespace

RelationReport verify_relations(const Ring& r, const IndexSet& ix, int samples, Rng& rng) {
  RelationReport rep;
  const int n = ix.n();
  const auto& I = ix.members();
  auto e = [&](int i, int j, const RingElement& x) { return elementary(ix, r, i, j, x); };
  auto d = [&](int i, const RingElement& u) { return diagonal_gen(ix, r, i, u); };

  if (!I.empty()) {
    Checker c1("diag_product", "d_i(u) d_i(v) = d_i(uv)");
    Checker c2("diag_commute", "d_i(u) d_j(v) = d_j(v) d_i(u)");
    for (int s = 0; s < samples; ++s) {
      const int i = I[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(I.size()) - 1))];
      const int j = I[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(I.size()) - 1))];
      const RingElement u = rings::random_unit(r, rng), v = rings::random_unit(r, rng);
      c1.check(multiply(d(i, u), d(i, v)), d(i, u * v), "u=" + u.to_string() + " v=" + v.to_string());
      c2.check(multiply(d(i, u), d(j, v)), multiply(d(j, v), d(i, u)), "i=" + std::to_string(i) + " j=" + std::to_string(j));
    }
    rep.relations.push_back(c1.result());
    rep.relations.push_back(c2.result());
  }

  Checker c3("elementary_add", "e_ij(r) e_ij(s) = e_ij(r+s)");
  Checker c4("commutator_inverse", "[e_ij(r), e_kl(s)]^-1 = [e_ij(r), e_kl(s)^-1]");
  Checker c5("commutator_formula", "[e_ij(r), e_kl(s)] = e_il(rs) if j=k; 1 if i!=l and k!=j");
  for (int s = 0; s < samples; ++s) {
    const auto [i, j] = random_position(rng, n);
    const RingElement x = rings::random_element(r, rng), y = rings::random_element(r, rng);
    c3.check(multiply(e(i, j, x), e(i, j, y)), e(i, j, x + y), "r=" + x.to_string() + " s=" + y.to_string());
    const auto [k, l] = random_position(rng, n);
    const GroupElement a = e(i, j, x), b = e(k, l, y);
    c4.check(inverse(commutator(a, b)), commutator(a, inverse(b)), "positions");
    // pick a second position meeting one of the two formula cases
    for (int tries = 0; tries < 64; ++tries) {
      const auto [k2, l2] = random_position(rng, n);
      const GroupElement b2 = e(k2, l2, y);
      if (j == k2) {
        c5.check(commutator(a, b2), e(i, l2, x * y), "j=k");
        break;
      }
      if (i != l2 && k2 != j) {
        c5.check(commutator(a, b2), identity(ix, r), "i!=l, k!=j");
        break;
      }
    }
  }
  rep.relations.push_back(c3.result());
  rep.relations.push_back(c4.result());
  rep.relations.push_back(c5.result());

  if (!I.empty()) {
    Checker c6("diag_action_single", "d_i(u) e_kl(r) d_i(u)^-1 = e_kl(ur), e_kl(u^-1 r) or e_kl(r)");
    Checker c7("diag_action_full", "d e_ij(r) d^-1 = e_ij(u_i u_j^-1 r)");
    for (int s = 0; s < samples; ++s) {
      const int i = I[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(I.size()) - 1))];
      const auto [k, l] = random_position(rng, n);
      const RingElement u = rings::random_unit(r, rng), x = rings::random_element(r, rng);
      RingElement expected = x;
      if (i == k) expected = u * x;
      else if (i == l) expected = rings::unit_inverse(u) * x;
      c6.check(conjugate(e(k, l, x), d(i, u)), e(k, l, expected), "i=" + std::to_string(i));

      std::vector<RingElement> us(static_cast<std::size_t>(n), rings::one(r));
      for (int m : I) us[static_cast<std::size_t>(m - 1)] = rings::random_unit(r, rng);
      const GroupElement dd = diagonal(ix, r, us);
      c7.check(conjugate(e(k, l, x), dd),
               e(k, l, us[static_cast<std::size_t>(k - 1)] * rings::unit_inverse(us[static_cast<std::size_t>(l - 1)]) * x),
               "d=" + dd.to_string());
    }
    rep.relations.push_back(c6.result());
    rep.relations.push_back(c7.result());
  }
  return rep;
}

}  // namespace twistmat::groups
