#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "twistmat/finite_group.hpp"
#include "twistmat/group.hpp"
#include "twistmat/ring_aut.hpp"

namespace twistmat::automorphisms {

using groups::GroupElement;
using groups::IndexSet;
using groups::QuotientKind;
using groups::QuotientSpec;
using rings::Ring;
using rings::RingElement;

/// r -> scale * alpha(r)
struct AdditiveMap {
  RingElement scale;
  rings::RingAutomorphism alpha;

  RingElement operator()(const RingElement& r) const;
};

/// x -> h x h^-1
struct Inner {
  GroupElement h;
};
/// Conjugation by an arbitrary invertible diagonal matrix diag(d_1..d_n).
struct DiagConj {
  std::vector<RingElement> d;
};
/// X -> J X^-T J^-1 with J_{k,n+1-k} = (-1)^k.
struct Flip {};
struct RingInduced {
  rings::RingAutomorphism alpha;
};
/// n = 3, I = {2}: (x, y, z, u) -> (2x+uy, ux, x^2+uxy-z, u) on
/// [[1,x,z],[0,u,y],[0,0,1]]; needs U(R) = {1,-1}.
struct Abels3Phi {};
/// n = 3, I = {2}: (x, y, z, u) -> (-y/u, vx/u, -vxy/u + vz, 1/u).
struct Abels3PhiV {
  RingElement v;
};
/// Mod-commutator quotients only: slot (s, s+1) goes to slot
/// (sigma[s-1], sigma[s-1]+1) with value phi[s-1](r); the diagonal entry at
/// position a becomes d_{diag_perm[a-1]}, inverted when diag_invert is set.
struct SuperdiagonalMap {
  std::vector<int> sigma;
  std::vector<AdditiveMap> phi;
  std::vector<int> diag_perm;
  bool diag_invert = false;
};

using Atom = std::variant<Inner, DiagConj, Flip, RingInduced, Abels3Phi, Abels3PhiV, SuperdiagonalMap>;

std::string atom_name(const Atom& a);

/// Composition of atoms; atoms[0] is applied last (phi = atoms[0] o atoms[1] o ...).
class Automorphism {
public:
  Automorphism() = default;
  explicit Automorphism(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool is_identity() const noexcept { return atoms_.empty(); }

  GroupElement operator()(const GroupElement& g) const;

  std::string describe() const;
  nlohmann::json to_json() const;

private:
  std::vector<Atom> atoms_;
};

GroupElement apply_atom(const Atom& atom, const GroupElement& g);
GroupElement apply(const Automorphism& phi, const GroupElement& g);

/// phi o psi
Automorphism compose(const Automorphism& phi, const Automorphism& psi);
/// Inverse atom list when every atom has a known inverse.
std::optional<Automorphism> try_inverse(const Automorphism& phi, const Ring& ring);

/// [{"atom":"flip"},{"atom":"ring","desc":"quad_conj"},{"atom":"diag_conj","d":["u","1","1","u^-1"]},
///  {"atom":"inner","g":<element JSON or word>},{"atom":"abels3_phi"},{"atom":"abels3_phi_v","v":"2"}]
Automorphism automorphism_from_json(const nlohmann::json& j, const IndexSet& ix, const Ring& ring,
                                    QuotientKind q = QuotientKind::none);

struct HomomorphismCheck {
  bool ok = true;
  int samples = 0;
  bool inverse_checked = false;
  std::string witness;
};

using ElementMap = std::function<GroupElement(const GroupElement&)>;

/// phi(ab) = phi(a) phi(b) on random pairs, plus phi^-1(phi(a)) = a when an
/// inverse atom list exists.
HomomorphismCheck verify_homomorphism(const Automorphism& phi, const IndexSet& ix, const Ring& ring, int samples,
                                      Rng& rng, QuotientKind q = QuotientKind::none);
/// Same multiplicativity test for an arbitrary map.
HomomorphismCheck verify_homomorphism(const ElementMap& f, const IndexSet& ix, const Ring& ring, int samples, Rng& rng,
                                      QuotientKind q = QuotientKind::none, bool unipotent_only = false);

struct DiagonalSplit {
  std::vector<RingElement> d_I;
  std::vector<RingElement> d_c;
};
DiagonalSplit split_diagonal(const std::vector<RingElement>& d, const IndexSet& ix);

/// d_1(u_2) d_2(u_1) d_{n-1}(u_n) d_n(u_{n-1}) for d_c = diag(u_1..u_n)
/// supported on the complement of I; lies in T_I when (NG) holds.
GroupElement dc_star(const std::vector<RingElement>& d_c, const IndexSet& ix);

Automorphism abels3_phi(const Ring& ring);
Automorphism abels3_phi_v(const Ring& ring, const RingElement& v);

/// The atoms of phi acting on the quotient. Throws kernel_not_invariant when
/// some atom moves a kernel generator out of the kernel.
Automorphism induce_on_quotient(const Automorphism& phi, const IndexSet& ix, const Ring& ring, const QuotientSpec& q);

/// Kernel generators of the quotient map (with unit entries).
std::vector<GroupElement> kernel_generators(const IndexSet& ix, const Ring& ring, const QuotientSpec& q);

/// Image table of phi on an enumerated finite group.
groups::Perm to_perm(const Automorphism& phi, const groups::MatrixGroup& g);

/// Slot permutation and value tables of a finite mod-commutator automorphism.
struct SuperdiagonalForm {
  std::vector<int> sigma;                           // slot s -> sigma[s-1]
  std::vector<std::vector<rings::FieldElem>> phi;   // phi[s-1][r] in the target slot
  bool fixes_middle_slot(int n) const;
  std::string describe() const;
};
std::optional<SuperdiagonalForm> check_superdiagonal_form(const groups::MatrixGroup& g, const groups::Perm& phi);

}  // namespace twistmat::automorphisms
