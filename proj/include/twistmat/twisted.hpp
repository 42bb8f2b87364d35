#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistmat/automorphism.hpp"
#include "twistmat/finite_group.hpp"
#include "twistmat/structure.hpp"

namespace twistmat::twisted {

using automorphisms::Automorphism;
using groups::Elem;
using groups::FiniteGroup;
using groups::GroupElement;
using groups::IndexSet;
using groups::Perm;
using rings::Ring;
using rings::RingElement;

/// g x phi(g)^-1
GroupElement twisted_conjugate(const Automorphism& phi, const GroupElement& x, const GroupElement& g);
Elem twisted_conjugate(const FiniteGroup& G, const Perm& phi, Elem x, Elem g);

struct ReidemeisterReport {
  std::string group;
  std::string automorphism;
  std::size_t order = 0;
  std::size_t count = 0;
  std::vector<Elem> representatives;  // least element of each class, increasing
  std::vector<std::size_t> sizes;
  std::vector<std::string> labels;

  nlohmann::json to_json() const;
};

/// Orbits of (g, x) -> g x phi(g)^-1. Throws too_large above the enumeration
/// limit and not_an_automorphism when phi is not one.
ReidemeisterReport reidemeister_classes_finite(const FiniteGroup& G, const Perm& phi, const std::string& phi_name = "");

/// Number of conjugacy classes as |{(a,b): ab = ba}| / |G|.
std::size_t commuting_pair_class_count(const FiniteGroup& G);

std::vector<Elem> fixed_points_finite(const FiniteGroup& G, const Perm& phi);

/// R of the induced map on G/N, N the normal closure of the given elements.
/// Throws kernel_not_invariant when phi(N) != N.
std::size_t reidemeister_lower_bound_via_quotient(const FiniteGroup& G, const std::vector<Elem>& normal_generators,
                                                  const Perm& phi);

struct HeathCheck {
  bool consistent = false;
  std::size_t r_phi = 0;
  std::size_t r_quotient = 0;
  /// For every class of the induced map with representative coset gN, the
  /// number of phi-classes above it and R(iota_g o phi|_N).
  std::vector<std::size_t> classes_above;
  std::vector<std::size_t> fibre_counts;
  std::size_t fibre_total = 0;

  nlohmann::json to_json() const;
};

/// Checks R(phi_bar) <= R(phi) <= sum over phi_bar-classes gN of
/// R(iota_g o phi|_N), class by class.
HeathCheck heath_finiteness_check(const FiniteGroup& G, const std::vector<Elem>& normal_generators, const Perm& phi);

struct FixFamilyCertificate {
  int n = 0;
  IndexSet index_set{2, {}};
  std::string ring;
  int epsilon = 0;
  rings::RingAutomorphism alpha;
  std::vector<RingElement> d_c;
  std::string automorphism;   // describe() of the induced map
  std::string parameter_set;  // "s = 1..K" or "s = x^k, k = 1..K, x = ..."
  int requested = 0;
  int verified = 0;
  groups::FinGenResult fingen;
  std::string residual_finiteness;
  bool jabara_applicable = false;

  nlohmann::json to_json() const;
};

/// Verifies that iota_{d*} o iota_{d_c} o flip^eps o alpha_* fixes
/// e_{1,2}(s) e_{n-1,n}(s) modulo U' for the first K parameters s.
FixFamilyCertificate fix_family_certify(int n, const IndexSet& ix, const Ring& ring, int epsilon,
                                        const rings::RingAutomorphism& alpha, const std::vector<RingElement>& d_c,
                                        int count);

struct BoxBounds {
  int height = 20;    // numerator coefficient bound
  int exponent = 1;   // bound on exponents of inverted generators
  int degree = 2;     // numerator degree bound for polynomial rings
};

struct FixSearchReport {
  std::string automorphism;
  std::string ring;
  BoxBounds bounds;
  std::size_t values_per_coordinate = 0;
  std::size_t points_searched = 0;
  std::vector<GroupElement> fixed_points;

  nlohmann::json to_json() const;
};

/// Coordinate values of the search box.
std::vector<RingElement> box_values(const Ring& ring, const BoxBounds& b);

/// All unipotent elements of S_3^{2}(R) with coordinates in the box that
/// phi fixes.
FixSearchReport fix_trivial_box_search(const Automorphism& phi, const Ring& ring, const BoxBounds& b);

/// iota_{d_2(u)} o phi on S_3^{2}(R).
Automorphism abels3_psi(const Ring& ring, const RingElement& u);

/// Every automorphism of G as image tables, sorted. Throws too_large when
/// |G| exceeds the limit.
std::vector<Perm> enumerate_automorphisms_small(const FiniteGroup& G, std::size_t limit = 200);

/// Generators of G with redundant ones dropped, in the given order.
std::vector<Elem> irredundant_generators(const FiniteGroup& G);

}  // namespace twistmat::twisted
