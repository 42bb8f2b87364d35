#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistmat/ring.hpp"
#include "twistmat/ring_aut.hpp"

namespace twistmat::groups {

using rings::Ring;
using rings::RingElement;

/// Matrix size n >= 2 and a subset I of {1..n}.
class IndexSet {
public:
  IndexSet(int n, std::vector<int> members);

  static IndexSet all(int n);
  static IndexSet empty(int n);

  int n() const noexcept { return n_; }
  bool contains(int i) const noexcept { return i >= 1 && i <= n_ && mask_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& members() const noexcept { return members_; }

  /// "{2,3}"
  std::string to_string() const;
  bool operator==(const IndexSet& o) const { return n_ == o.n_ && members_ == o.members_; }

private:
  int n_;
  std::vector<int> members_;
  std::vector<bool> mask_;
};

/// i not in I implies i+1 in I, for 1 <= i <= n-1.
bool ng_condition(const IndexSet& ix);
/// First i violating the condition.
std::optional<int> ng_violation(const IndexSet& ix);

enum class QuotientKind { none, mod_commutator_u, mod_center_u4 };

/// Which characteristic quotient a computation lives in. mod_ideal changes
/// the coefficient ring through a reduction and keeps the coordinates.
struct QuotientSpec {
  enum class Kind { none, mod_commutator_u, mod_center_u4, mod_ideal };
  Kind kind = Kind::none;
  std::shared_ptr<const rings::Reduction> reduction;

  static QuotientSpec none() { return {}; }
  static QuotientSpec mod_commutator_u() { return {Kind::mod_commutator_u, nullptr}; }
  static QuotientSpec mod_center_u4() { return {Kind::mod_center_u4, nullptr}; }
  static QuotientSpec mod_ideal(rings::Reduction red) {
    return {Kind::mod_ideal, std::make_shared<const rings::Reduction>(std::move(red))};
  }

  /// Quotient kind carried by elements (mod_ideal keeps none).
  QuotientKind element_kind() const;
  std::string name() const;
  nlohmann::json to_json() const;
};

/// Parses {"quotient":"mod_commutator_u"} or a bare name ("none",
/// "mod_commutator_u", "mod_center_u4"). mod_ideal needs the source ring:
/// {"quotient":"mod_ideal","p":5} or {"quotient":"mod_ideal","g":"t^2+t+1"}.
QuotientSpec parse_quotient(const nlohmann::json& j, const Ring& source);

/// Throws incompatible_quotient when q does not fit (n, I).
void require_compatible(const QuotientSpec& q, const IndexSet& ix);

/// Whether coordinate (i, j) survives in the quotient.
bool retained(QuotientKind q, int n, int i, int j);

/// Element of S_n^I(R) (or a quotient) stored as unipotent part U and
/// diagonal D; the matrix is U * D.
class GroupElement {
public:
  /// Identity.
  GroupElement(IndexSet ix, Ring ring, QuotientKind q = QuotientKind::none);

  const IndexSet& index_set() const noexcept { return ix_; }
  const Ring& ring() const noexcept { return ring_; }
  QuotientKind quotient() const noexcept { return q_; }
  int n() const noexcept { return ix_.n(); }

  /// 1-based, i < j.
  const RingElement& upper(int i, int j) const;
  const RingElement& diag(int i) const;

  /// Sets a coordinate; dropped coordinates and diagonal positions outside I
  /// are rejected (index_out_of_pattern), non-units with not_a_unit.
  void set_upper(int i, int j, RingElement r);
  void set_diag(int i, RingElement u);

  bool is_identity() const;
  /// Unipotent part U (diagonal 1) and diagonal part D with this = U * D.
  GroupElement unipotent_part() const;
  GroupElement diagonal_part() const;

  bool operator==(const GroupElement& o) const;
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
  std::size_t hash() const;

  std::string to_string() const;
  nlohmann::json to_json() const;

private:
  friend GroupElement multiply(const GroupElement& a, const GroupElement& b);
  friend GroupElement inverse(const GroupElement& a);
  friend GroupElement project(const GroupElement& g, const QuotientSpec& q);

  std::size_t index(int i, int j) const;
  void clear_dropped();

  IndexSet ix_;
  Ring ring_;
  QuotientKind q_;
  std::vector<RingElement> u_;  // strictly upper entries, row-major
  std::vector<RingElement> d_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const { return g.hash(); }
};

void require_same_group(const GroupElement& a, const GroupElement& b);

GroupElement identity(const IndexSet& ix, const Ring& ring, QuotientKind q = QuotientKind::none);
/// e_{i,j}(r), 1 <= i < j <= n.
GroupElement elementary(const IndexSet& ix, const Ring& ring, int i, int j, const RingElement& r,
                        QuotientKind q = QuotientKind::none);
/// d_i(u) with i in I and u a unit.
GroupElement diagonal_gen(const IndexSet& ix, const Ring& ring, int i, const RingElement& u,
                          QuotientKind q = QuotientKind::none);
/// diag(u_1, ..., u_n), entries outside I must be 1.
GroupElement diagonal(const IndexSet& ix, const Ring& ring, const std::vector<RingElement>& u,
                      QuotientKind q = QuotientKind::none);

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
GroupElement power(const GroupElement& a, long long e);
/// [a, b] = a b a^-1 b^-1
GroupElement commutator(const GroupElement& a, const GroupElement& b);
/// h g h^-1
GroupElement conjugate(const GroupElement& g, const GroupElement& h);
/// [[x, y], ..., y] with ell copies of y.
GroupElement iterated_commutator(const GroupElement& x, const GroupElement& y, int ell);

GroupElement project(const GroupElement& g, const QuotientSpec& q);

/// Apply a ring automorphism entrywise.
GroupElement apply_entrywise(const rings::RingAutomorphism& alpha, const GroupElement& g);

/// Dense n x n matrix of the element (full groups only).
std::vector<std::vector<RingElement>> to_matrix(const GroupElement& g);

/// {"diag":[...], "upper":{"1,2":"r", ...}}
GroupElement element_from_json(const IndexSet& ix, const Ring& ring, const nlohmann::json& j,
                               QuotientKind q = QuotientKind::none);
/// Words such as "e(1,2;t+1)*d(2;t^-1)"; "1" is the identity.
GroupElement parse_word(const IndexSet& ix, const Ring& ring, const std::string& word,
                        QuotientKind q = QuotientKind::none);

/// Random element: random retained upper entries and random units on I.
GroupElement random_group_element(const IndexSet& ix, const Ring& ring, Rng& rng,
                                  QuotientKind q = QuotientKind::none);
GroupElement random_unipotent(const IndexSet& ix, const Ring& ring, Rng& rng,
                              QuotientKind q = QuotientKind::none);

}  // namespace twistmat::groups
