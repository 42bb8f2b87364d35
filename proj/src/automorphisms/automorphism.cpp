#include "twistmat/automorphism.hpp"

#include <algorithm>

#include "twistmat/errors.hpp"
#include "twistmat/random.hpp"
#include "twistmat/ring_parse.hpp"

namespace twistmat::automorphisms {

using json = nlohmann::json;
using groups::retained;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void incompatible(const std::string& msg) { throw Error(ErrorCode::incompatible_atom, msg); }

bool units_are_plus_minus_one(const Ring& r) {
  switch (r->kind()) {
    case rings::RingKind::integers:
      return true;
    case rings::RingKind::quadratic:
      return r->quadratic_d() < -1;
    case rings::RingKind::finite_field:
      return r->field().order() <= 3;
    default:
      return false;
  }
}

void require_abels3(const GroupElement& g, const char* name) {
  if (!(g.index_set() == IndexSet(3, {2})) || g.quotient() != QuotientKind::none)
    incompatible(std::string(name) + " acts on S_3^{2}(R) only");
}

GroupElement apply_flip(const GroupElement& g) {
  const int n = g.n();
  const GroupElement v = groups::inverse(g.unipotent_part());
  GroupElement out(g.index_set(), g.ring(), g.quotient());
  try {
    for (int a = 1; a <= n; ++a) {
      const RingElement& da = g.diag(n + 1 - a);
      out.set_diag(a, da.is_one() ? da : rings::unit_inverse(da));
      for (int b = a + 1; b <= n; ++b) {
        if (!retained(g.quotient(), n, a, b)) continue;
        const RingElement& x = v.upper(n + 1 - b, n + 1 - a);
        out.set_upper(a, b, (a + b) % 2 == 0 ? x : -x);
      }
    }
  } catch (const Error& e) {
    incompatible(std::string("flip leaves the pattern: ") + e.what());
  }
  return out;
}

GroupElement apply_diag_conj(const DiagConj& dc, const GroupElement& g) {
  const int n = g.n();
  if (static_cast<int>(dc.d.size()) != n) incompatible("diag_conj needs n entries");
  std::vector<RingElement> inv;
  for (const auto& x : dc.d) {
    rings::require_same_ring(x.ring(), g.ring());
    auto i = rings::try_inverse(x);
    if (!i) incompatible("diag_conj entry " + x.to_string() + " is not a unit");
    inv.push_back(*i);
  }
  GroupElement out = g;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (!retained(g.quotient(), n, i, j)) continue;
      const RingElement& x = g.upper(i, j);
      if (x.is_zero()) continue;
      out.set_upper(i, j, dc.d[static_cast<std::size_t>(i - 1)] * x * inv[static_cast<std::size_t>(j - 1)]);
    }
  return out;
}

GroupElement apply_abels3_phi(const GroupElement& g) {
  require_abels3(g, "abels3_phi");
  const Ring& r = g.ring();
  const RingElement u = g.diag(2);
  if (u * u != rings::one(r)) incompatible("abels3_phi needs u^2 = 1, got u = " + u.to_string());
  const RingElement x = g.upper(1, 2) * u, y = g.upper(2, 3), z = g.upper(1, 3);
  const RingElement x2 = rings::from_int(r, 2) * x + u * y;
  const RingElement y2 = u * x;
  const RingElement z2 = x * x + u * x * y - z;
  GroupElement out(g.index_set(), r);
  out.set_diag(2, u);
  out.set_upper(1, 2, x2 * u);  // u^-1 = u
  out.set_upper(2, 3, y2);
  out.set_upper(1, 3, z2);
  return out;
}

GroupElement apply_abels3_phi_v(const Abels3PhiV& a, const GroupElement& g) {
  require_abels3(g, "abels3_phi_v");
  const Ring& r = g.ring();
  rings::require_same_ring(r, a.v.ring());
  const RingElement u = g.diag(2), ui = rings::unit_inverse(u);
  const RingElement x = g.upper(1, 2) * u, y = g.upper(2, 3), z = g.upper(1, 3);
  const RingElement x2 = -(y * ui);
  const RingElement y2 = a.v * x * ui;
  const RingElement z2 = -(a.v * x * y * ui) + a.v * z;
  GroupElement out(g.index_set(), r);
  out.set_diag(2, ui);
  out.set_upper(1, 2, x2 * u);  // entry / new diagonal 1/u
  out.set_upper(2, 3, y2);
  out.set_upper(1, 3, z2);
  return out;
}

GroupElement apply_superdiagonal(const SuperdiagonalMap& m, const GroupElement& g) {
  const int n = g.n();
  if (g.quotient() != QuotientKind::mod_commutator_u) incompatible("superdiagonal maps act on mod-commutator quotients only");
  if (static_cast<int>(m.sigma.size()) != n - 1 || static_cast<int>(m.phi.size()) != n - 1)
    incompatible("superdiagonal map needs n-1 slots");
  GroupElement out(g.index_set(), g.ring(), g.quotient());
  try {
    for (int s = 1; s < n; ++s) {
      const int t = m.sigma[static_cast<std::size_t>(s - 1)];
      out.set_upper(t, t + 1, m.phi[static_cast<std::size_t>(s - 1)](g.upper(s, s + 1)));
    }
    for (int a = 1; a <= n; ++a) {
      const int src = m.diag_perm.empty() ? a : m.diag_perm[static_cast<std::size_t>(a - 1)];
      const RingElement& x = g.diag(src);
      out.set_diag(a, m.diag_invert && !x.is_one() ? rings::unit_inverse(x) : x);
    }
  } catch (const Error& e) {
    incompatible(std::string("superdiagonal map: ") + e.what());
  }
  return out;
}

json atom_to_json(const Atom& a) {
  return std::visit(overloaded{
                        [](const Inner& x) { return json{{"atom", "inner"}, {"g", x.h.to_json()}}; },
                        [](const DiagConj& x) {
                          json d = json::array();
                          for (const auto& e : x.d) d.push_back(e.to_string());
                          return json{{"atom", "diag_conj"}, {"d", d}};
                        },
                        [](const Flip&) { return json{{"atom", "flip"}}; },
                        [](const RingInduced& x) { return json{{"atom", "ring"}, {"desc", x.alpha.to_json()}}; },
                        [](const Abels3Phi&) { return json{{"atom", "abels3_phi"}}; },
                        [](const Abels3PhiV& x) { return json{{"atom", "abels3_phi_v"}, {"v", x.v.to_string()}}; },
                        [](const SuperdiagonalMap& x) {
                          json phi = json::array();
                          for (const auto& p : x.phi) phi.push_back(json{{"scale", p.scale.to_string()}, {"alpha", p.alpha.to_json()}});
                          return json{{"atom", "superdiagonal"}, {"sigma", x.sigma}, {"phi", phi},
                                      {"diag_perm", x.diag_perm}, {"diag_invert", x.diag_invert}};
                        },
                    },
                    a);
}

}  // namespace

RingElement AdditiveMap::operator()(const RingElement& r) const { return scale * rings::apply_ring_aut(alpha, r); }

std::string atom_name(const Atom& a) {
  return std::visit(overloaded{
                        [](const Inner& x) { return "inner(" + x.h.to_string() + ")"; },
                        [](const DiagConj& x) {
                          std::string s = "diag_conj(";
                          for (std::size_t i = 0; i < x.d.size(); ++i) s += (i ? "," : "") + x.d[i].to_string();
                          return s + ")";
                        },
                        [](const Flip&) { return std::string("flip"); },
                        [](const RingInduced& x) { return "ring(" + x.alpha.to_string() + ")"; },
                        [](const Abels3Phi&) { return std::string("abels3_phi"); },
                        [](const Abels3PhiV& x) { return "abels3_phi_v(" + x.v.to_string() + ")"; },
                        [](const SuperdiagonalMap&) { return std::string("superdiagonal"); },
                    },
                    a);
}

GroupElement apply_atom(const Atom& atom, const GroupElement& g) {
  return std::visit(overloaded{
                        [&](const Inner& x) {
                          GroupElement h = x.h;
                          if (!(h.index_set() == g.index_set()) || !rings::same_ring(h.ring(), g.ring()))
                            incompatible("inner conjugator lives in another group");
                          if (h.quotient() != g.quotient()) h = groups::project(h, {static_cast<QuotientSpec::Kind>(g.quotient()), nullptr});
                          return groups::conjugate(g, h);
                        },
                        [&](const DiagConj& x) { return apply_diag_conj(x, g); },
                        [&](const Flip&) { return apply_flip(g); },
                        [&](const RingInduced& x) {
                          try {
                            return groups::apply_entrywise(x.alpha, g);
                          } catch (const Error& e) {
                            incompatible(e.what());
                          }
                        },
                        [&](const Abels3Phi&) { return apply_abels3_phi(g); },
                        [&](const Abels3PhiV& x) { return apply_abels3_phi_v(x, g); },
                        [&](const SuperdiagonalMap& x) { return apply_superdiagonal(x, g); },
                    },
                    atom);
}

GroupElement apply(const Automorphism& phi, const GroupElement& g) {
  GroupElement x = g;
  for (auto it = phi.atoms().rbegin(); it != phi.atoms().rend(); ++it) x = apply_atom(*it, x);
  return x;
}

GroupElement Automorphism::operator()(const GroupElement& g) const { return apply(*this, g); }

std::string Automorphism::describe() const {
  if (atoms_.empty()) return "id";
  std::string s;
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += (i ? " o " : "") + atom_name(atoms_[i]);
  return s;
}

json Automorphism::to_json() const {
  json arr = json::array();
  for (const auto& a : atoms_) arr.push_back(atom_to_json(a));
  return arr;
}

Automorphism compose(const Automorphism& phi, const Automorphism& psi) {
  std::vector<Atom> atoms = phi.atoms();
  atoms.insert(atoms.end(), psi.atoms().begin(), psi.atoms().end());
  return Automorphism(std::move(atoms));
}

std::optional<Automorphism> try_inverse(const Automorphism& phi, const Ring& ring) {
  std::vector<Atom> out;
  for (auto it = phi.atoms().rbegin(); it != phi.atoms().rend(); ++it) {
    std::optional<Atom> inv = std::visit(
        overloaded{
            [](const Inner& x) -> std::optional<Atom> { return Inner{groups::inverse(x.h)}; },
            [](const DiagConj& x) -> std::optional<Atom> {
              DiagConj d;
              for (const auto& e : x.d) d.d.push_back(rings::unit_inverse(e));
              return d;
            },
            [](const Flip&) -> std::optional<Atom> { return Flip{}; },
            [&](const RingInduced& x) -> std::optional<Atom> { return RingInduced{rings::inverse(ring, x.alpha)}; },
            [](const Abels3Phi&) -> std::optional<Atom> { return std::nullopt; },
            [](const Abels3PhiV&) -> std::optional<Atom> { return std::nullopt; },
            [&](const SuperdiagonalMap& x) -> std::optional<Atom> {
              const std::size_t k = x.sigma.size();
              SuperdiagonalMap m;
              m.sigma.assign(k, 0);
              m.phi.assign(k, AdditiveMap{rings::one(ring), rings::RingAutomorphism::identity()});
              for (std::size_t s = 0; s < k; ++s) {
                const std::size_t t = static_cast<std::size_t>(x.sigma[s] - 1);
                m.sigma[t] = static_cast<int>(s + 1);
                const auto ai = rings::inverse(ring, x.phi[s].alpha);
                m.phi[t] = AdditiveMap{rings::apply_ring_aut(ai, rings::unit_inverse(x.phi[s].scale)), ai};
              }
              if (!x.diag_perm.empty()) {
                m.diag_perm.assign(x.diag_perm.size(), 0);
                for (std::size_t a = 0; a < x.diag_perm.size(); ++a)
                  m.diag_perm[static_cast<std::size_t>(x.diag_perm[a] - 1)] = static_cast<int>(a + 1);
              }
              m.diag_invert = x.diag_invert;
              return m;
            },
        },
        *it);
    if (!inv) return std::nullopt;
    out.push_back(*inv);
  }
  return Automorphism(std::move(out));
}

Automorphism automorphism_from_json(const json& j, const IndexSet& ix, const Ring& ring, QuotientKind q) {
  if (!j.is_array()) throw Error(ErrorCode::parse_error, "automorphism must be a JSON array of atoms");
  std::vector<Atom> atoms;
  try {
    for (const auto& a : j) {
      const std::string kind = a.at("atom").get<std::string>();
      if (kind == "inner") {
        const auto& g = a.at("g");
        atoms.push_back(Inner{g.is_string() ? groups::parse_word(ix, ring, g.get<std::string>(), q)
                                            : groups::element_from_json(ix, ring, g, q)});
      } else if (kind == "diag_conj") {
        DiagConj d;
        for (const auto& e : a.at("d")) {
          RingElement x = rings::parse_element(ring, e.get<std::string>());
          if (!rings::try_inverse(x)) throw Error(ErrorCode::not_a_unit, x.to_string() + " is not a unit");
          d.d.push_back(x);
        }
        if (static_cast<int>(d.d.size()) != ix.n()) throw Error(ErrorCode::parse_error, "diag_conj needs n entries");
        atoms.push_back(d);
      } else if (kind == "flip") {
        atoms.push_back(Flip{});
      } else if (kind == "ring") {
        const auto alpha = rings::RingAutomorphism::from_json(a.at("desc"));
        rings::require_compatible(alpha, ring);
        atoms.push_back(RingInduced{alpha});
      } else if (kind == "abels3_phi") {
        for (const auto& x : abels3_phi(ring).atoms()) atoms.push_back(x);
      } else if (kind == "abels3_phi_v") {
        for (const auto& x : abels3_phi_v(ring, rings::parse_element(ring, a.at("v").get<std::string>())).atoms())
          atoms.push_back(x);
      } else if (kind == "superdiagonal") {
        SuperdiagonalMap m;
        m.sigma = a.at("sigma").get<std::vector<int>>();
        for (const auto& p : a.at("phi"))
          m.phi.push_back(AdditiveMap{rings::parse_element(ring, p.value("scale", std::string("1"))),
                                      rings::RingAutomorphism::from_json(p.value("alpha", json("id")))});
        m.diag_perm = a.value("diag_perm", std::vector<int>{});
        m.diag_invert = a.value("diag_invert", false);
        atoms.push_back(m);
      } else {
        throw Error(ErrorCode::parse_error, "unknown atom \"" + kind + "\"");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("automorphism JSON: ") + e.what());
  }
  return Automorphism(std::move(atoms));
}

HomomorphismCheck verify_homomorphism(const ElementMap& f, const IndexSet& ix, const Ring& ring, int samples, Rng& rng,
                                      QuotientKind q, bool unipotent_only) {
  HomomorphismCheck res;
  for (int s = 0; s < samples; ++s) {
    const GroupElement a = unipotent_only ? groups::random_unipotent(ix, ring, rng, q) : groups::random_group_element(ix, ring, rng, q);
    const GroupElement b = unipotent_only ? groups::random_unipotent(ix, ring, rng, q) : groups::random_group_element(ix, ring, rng, q);
    ++res.samples;
    const GroupElement lhs = f(groups::multiply(a, b));
    const GroupElement rhs = groups::multiply(f(a), f(b));
    if (lhs != rhs) {
      res.ok = false;
      res.witness = "a=" + a.to_string() + " b=" + b.to_string() + ": f(ab)=" + lhs.to_string() + " f(a)f(b)=" + rhs.to_string();
      return res;
    }
  }
  return res;
}

HomomorphismCheck verify_homomorphism(const Automorphism& phi, const IndexSet& ix, const Ring& ring, int samples, Rng& rng,
                                      QuotientKind q) {
  HomomorphismCheck res = verify_homomorphism([&](const GroupElement& g) { return apply(phi, g); }, ix, ring, samples, rng, q);
  if (!res.ok) return res;
  const auto inv = try_inverse(phi, ring);
  if (!inv) return res;
  res.inverse_checked = true;
  for (int s = 0; s < samples; ++s) {
    const GroupElement a = groups::random_group_element(ix, ring, rng, q);
    if (apply(*inv, apply(phi, a)) != a || apply(phi, apply(*inv, a)) != a) {
      res.ok = false;
      res.witness = "inverse fails at " + a.to_string();
      return res;
    }
  }
  return res;
}

DiagonalSplit split_diagonal(const std::vector<RingElement>& d, const IndexSet& ix) {
  if (static_cast<int>(d.size()) != ix.n()) throw Error(ErrorCode::invalid_spec, "diagonal needs n entries");
  DiagonalSplit s;
  for (int i = 1; i <= ix.n(); ++i) {
    const RingElement& x = d[static_cast<std::size_t>(i - 1)];
    if (!rings::try_inverse(x)) throw Error(ErrorCode::not_a_unit, x.to_string() + " is not a unit");
    const RingElement one = rings::one(x.ring());
    s.d_I.push_back(ix.contains(i) ? x : one);
    s.d_c.push_back(ix.contains(i) ? one : x);
  }
  return s;
}

GroupElement dc_star(const std::vector<RingElement>& d_c, const IndexSet& ix) {
  const int n = ix.n();
  if (static_cast<int>(d_c.size()) != n) throw Error(ErrorCode::invalid_spec, "d_c needs n entries");
  if (auto bad = groups::ng_violation(ix))
    throw Error(ErrorCode::ng_violated, "(NG) fails at i=" + std::to_string(*bad) + " for I=" + ix.to_string());
  const Ring& r = d_c.front().ring();
  std::vector<RingElement> u(static_cast<std::size_t>(n), rings::one(r));
  for (int i = 1; i <= n; ++i)
    if (!ix.contains(i)) u[static_cast<std::size_t>(i - 1)] = d_c[static_cast<std::size_t>(i - 1)];
  std::vector<RingElement> star(static_cast<std::size_t>(n), rings::one(r));
  auto times = [&](int pos, int src) {
    star[static_cast<std::size_t>(pos - 1)] = star[static_cast<std::size_t>(pos - 1)] * u[static_cast<std::size_t>(src - 1)];
  };
  times(1, 2);
  times(2, 1);
  times(n - 1, n);
  times(n, n - 1);
  for (int i = 1; i <= n; ++i)
    if (!ix.contains(i) && !star[static_cast<std::size_t>(i - 1)].is_one())
      throw Error(ErrorCode::ng_violated, "d^c_* has entry " + star[static_cast<std::size_t>(i - 1)].to_string() +
                                              " at position " + std::to_string(i) + " outside I");
  return groups::diagonal(ix, r, star);
}

Automorphism abels3_phi(const Ring& ring) {
  if (!units_are_plus_minus_one(ring))
    throw Error(ErrorCode::bad_unit, "abels3_phi needs U(R) = {1,-1}; " + ring->name() + " has more units");
  return Automorphism({Abels3Phi{}});
}

Automorphism abels3_phi_v(const Ring& ring, const RingElement& v) {
  rings::require_same_ring(ring, v.ring());
  if (!rings::try_inverse(v)) throw Error(ErrorCode::bad_unit, v.to_string() + " is not a unit");
  if (v.is_one() || (-v).is_one()) throw Error(ErrorCode::bad_unit, "v must differ from 1 and -1");
  return Automorphism({Abels3PhiV{v}});
}

std::vector<GroupElement> kernel_generators(const IndexSet& ix, const Ring& ring, const QuotientSpec& q) {
  groups::require_compatible(q, ix);
  std::vector<RingElement> values{rings::one(ring)};
  if (ring->is_poly_like()) values.push_back(rings::variable(ring));
  if (ring->kind() == rings::RingKind::quadratic) values.push_back(rings::sqrt_d(ring));
  const int n = ix.n();
  std::vector<GroupElement> out;
  switch (q.kind) {
    case QuotientSpec::Kind::none:
      break;
    case QuotientSpec::Kind::mod_commutator_u:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 2; j <= n; ++j)
          for (const auto& v : values) out.push_back(groups::elementary(ix, ring, i, j, v));
      break;
    case QuotientSpec::Kind::mod_center_u4:
      for (const auto& v : values) out.push_back(groups::elementary(ix, ring, 1, 4, v));
      break;
    case QuotientSpec::Kind::mod_ideal: {
      const Ring& src = q.reduction->source();
      RingElement pi = rings::zero(src);
      const std::string desc = q.reduction->describe();  // "mod <p>" or "mod <g>"
      pi = rings::parse_element(src, desc.substr(4));
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          for (const auto& v : values) out.push_back(groups::elementary(ix, ring, i, j, pi * v));
      break;
    }
  }
  return out;
}

Automorphism induce_on_quotient(const Automorphism& phi, const IndexSet& ix, const Ring& ring, const QuotientSpec& q) {
  const auto kernel = kernel_generators(ix, ring, q);
  for (auto it = phi.atoms().rbegin(); it != phi.atoms().rend(); ++it)
    for (const auto& k : kernel) {
      const GroupElement img = groups::project(apply_atom(*it, k), q);
      if (!img.is_identity())
        throw Error(ErrorCode::kernel_not_invariant, atom_name(*it) + " moves kernel generator " + k.to_string() + " to " +
                                                         apply_atom(*it, k).to_string());
    }
  std::vector<Atom> out;
  for (const auto& a : phi.atoms()) {
    if (q.kind != QuotientSpec::Kind::mod_ideal) {
      if (const auto* in = std::get_if<Inner>(&a)) out.push_back(Inner{groups::project(in->h, q)});
      else out.push_back(a);
      continue;
    }
    const auto& red = *q.reduction;
    out.push_back(std::visit(
        overloaded{
            [&](const Inner& x) -> Atom { return Inner{groups::project(x.h, q)}; },
            [&](const DiagConj& x) -> Atom {
              DiagConj d;
              for (const auto& e : x.d) d.d.push_back(red(e));
              return d;
            },
            [](const Flip&) -> Atom { return Flip{}; },
            [&](const RingInduced& x) -> Atom {
              if (x.alpha.kind != rings::RingAutKind::identity)
                throw Error(ErrorCode::unsupported_spec, "induced ring automorphism on the residue field is not represented");
              return x;
            },
            [&](const Abels3Phi&) -> Atom {
              abels3_phi(red.target());
              return Abels3Phi{};
            },
            [&](const Abels3PhiV& x) -> Atom { return Abels3PhiV{red(x.v)}; },
            [&](const SuperdiagonalMap&) -> Atom {
              throw Error(ErrorCode::unsupported_spec, "superdiagonal maps do not descend along a ring change");
            },
        },
        a));
  }
  return Automorphism(std::move(out));
}

groups::Perm to_perm(const Automorphism& phi, const groups::MatrixGroup& g) {
  groups::Perm p(g.order());
  for (groups::Elem a = 0; a < g.order(); ++a) p[a] = g.encode(apply(phi, g.decode(a)));
  return p;
}

bool SuperdiagonalForm::fixes_middle_slot(int n) const {
  if (n % 2 != 0) return true;
  const int mid = n / 2;
  return sigma[static_cast<std::size_t>(mid - 1)] == mid;
}

std::string SuperdiagonalForm::describe() const {
  std::string s = "sigma=(";
  for (std::size_t i = 0; i < sigma.size(); ++i) s += (i ? "," : "") + std::to_string(sigma[i]);
  s += ") phi=[";
  for (std::size_t i = 0; i < phi.size(); ++i) {
    s += i ? ";" : "";
    for (std::size_t r = 0; r < phi[i].size(); ++r) s += (r ? "," : "") + std::to_string(phi[i][r]);
  }
  return s + "]";
}

std::optional<SuperdiagonalForm> check_superdiagonal_form(const groups::MatrixGroup& g, const groups::Perm& phi) {
  if (g.quotient() != QuotientKind::mod_commutator_u) throw Error(ErrorCode::incompatible_quotient, "needs a mod-commutator quotient");
  const int n = g.index_set().n();
  const Ring& ring = g.ring();
  const auto& F = ring->field();
  SuperdiagonalForm form;
  form.sigma.assign(static_cast<std::size_t>(n - 1), 0);
  form.phi.assign(static_cast<std::size_t>(n - 1), std::vector<rings::FieldElem>(F.order(), 0));
  for (int s = 1; s < n; ++s) {
    int target = 0;
    for (rings::FieldElem r = 1; r < F.order(); ++r) {
      const GroupElement e = groups::elementary(g.index_set(), ring, s, s + 1, RingElement::from_field(ring, r), g.quotient());
      const GroupElement img = g.decode(phi[g.encode(e)]);
      for (int i = 1; i <= n; ++i)
        if (!img.diag(i).is_one()) return std::nullopt;
      int slot = 0;
      for (int t = 1; t < n; ++t)
        if (!img.upper(t, t + 1).is_zero()) {
          if (slot) return std::nullopt;
          slot = t;
        }
      if (!slot || (target && slot != target)) return std::nullopt;
      target = slot;
      form.phi[static_cast<std::size_t>(s - 1)][r] = img.upper(slot, slot + 1).field_value();
    }
    form.sigma[static_cast<std::size_t>(s - 1)] = target;
  }
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (int t : form.sigma)
    if (seen[static_cast<std::size_t>(t)]++) return std::nullopt;
  for (const auto& table : form.phi) {
    std::vector<bool> hit(F.order(), false);
    for (rings::FieldElem r = 0; r < F.order(); ++r) {
      if (hit[table[r]]) return std::nullopt;
      hit[table[r]] = true;
      for (rings::FieldElem r2 = 0; r2 < F.order(); ++r2)
        if (table[F.add(r, r2)] != F.add(table[r], table[r2])) return std::nullopt;
    }
  }
  return form;
}

}  // namespace twistmat::automorphisms
