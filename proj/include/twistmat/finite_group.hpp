#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "twistmat/group.hpp"

namespace twistmat::groups {

using Elem = std::uint32_t;
using rings::FieldElem;
/// An automorphism (or any self-map) of a finite group as an image table.
using Perm = std::vector<Elem>;

/// Finite group with elements 0..order()-1.
class FiniteGroup {
public:
  virtual ~FiniteGroup() = default;

  virtual std::size_t order() const = 0;
  virtual Elem identity() const = 0;
  virtual Elem multiply(Elem a, Elem b) const = 0;
  virtual Elem inverse(Elem a) const = 0;
  virtual const std::vector<Elem>& generators() const = 0;
  virtual std::string describe() const = 0;
  virtual std::string label(Elem a) const { return std::to_string(a); }
};

/// Group given by an explicit multiplication table.
class TableGroup : public FiniteGroup {
public:
  TableGroup(std::string name, std::size_t order, std::vector<Elem> table, std::vector<Elem> generators,
             std::vector<std::string> labels = {});

  /// Z/n written additively; element k is the residue k.
  static TableGroup cyclic(std::size_t n);
  static TableGroup materialize(const FiniteGroup& g);

  std::size_t order() const override { return order_; }
  Elem identity() const override { return identity_; }
  Elem multiply(Elem a, Elem b) const override { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inverse(Elem a) const override { return inverse_[a]; }
  const std::vector<Elem>& generators() const override { return generators_; }
  std::string describe() const override { return name_; }
  std::string label(Elem a) const override;

private:
  std::string name_;
  std::size_t order_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<Elem> generators_;
  std::vector<std::string> labels_;
  Elem identity_ = 0;
};

/// Enumeration cap: TWISTMAT_LIMIT if set, else 10^6.
std::size_t enumeration_limit();

/// S_n^I(F_q) or one of its quotients, with elements numbered in
/// lexicographic order of their coordinate vectors: retained upper entries
/// row-major, then the diagonal units at positions in I.
class MatrixGroup : public FiniteGroup {
public:
  /// Throws too_large when the order exceeds `limit`.
  MatrixGroup(IndexSet ix, Ring field_ring, QuotientKind q, std::size_t limit = enumeration_limit());

  /// |F|^(retained coordinates) * (|F|-1)^|I|, saturating.
  static std::size_t predicted_order(const IndexSet& ix, const Ring& field_ring, QuotientKind q);

  std::size_t order() const override { return order_; }
  Elem identity() const override { return identity_; }
  Elem multiply(Elem a, Elem b) const override;
  Elem inverse(Elem a) const override;
  const std::vector<Elem>& generators() const override { return generators_; }
  std::string describe() const override;
  std::string label(Elem a) const override;

  Elem encode(const GroupElement& g) const;
  GroupElement decode(Elem a) const;

  const IndexSet& index_set() const noexcept { return ix_; }
  const Ring& ring() const noexcept { return ring_; }
  QuotientKind quotient() const noexcept { return q_; }

  /// Retained upper coordinates in encoding order.
  const std::vector<std::pair<int, int>>& coordinates() const noexcept { return coords_; }

private:
  struct Raw {
    std::vector<FieldElem> u;  // all strictly upper entries, row-major
    std::vector<FieldElem> d;
  };
  Raw unpack(Elem a) const;
  Elem pack(const Raw& r) const;
  Raw raw_multiply(const Raw& a, const Raw& b) const;
  Raw raw_inverse(const Raw& a) const;
  std::size_t uidx(int i, int j) const;

  IndexSet ix_;
  Ring ring_;
  QuotientKind q_;
  std::size_t order_ = 1;
  std::vector<std::pair<int, int>> coords_;
  std::vector<Elem> generators_;
  Elem identity_ = 0;
  std::vector<Elem> table_;  // cached Cayley table for small groups
  std::vector<Elem> inverse_table_;
};

/// All elements of S_n^I(F) modulo q, each exactly once, in MatrixGroup order.
std::vector<GroupElement> enumerate_finite_group(const IndexSet& ix, const Ring& field_ring, const QuotientSpec& q);

/// Subgroup generated by `gens`, sorted.
std::vector<Elem> subgroup_closure(const FiniteGroup& g, const std::vector<Elem>& gens);
std::size_t element_order(const FiniteGroup& g, Elem a);

/// G/N for N the subgroup generated by `normal_generators` (must be normal).
struct FiniteQuotient {
  std::shared_ptr<TableGroup> group;
  std::vector<Elem> projection;  // element of G -> coset index
  std::vector<Elem> kernel;      // sorted elements of N
  std::vector<Elem> representatives;  // least element of each coset
};
FiniteQuotient quotient_group(const FiniteGroup& g, const std::vector<Elem>& normal_generators);

/// phi is an automorphism iff it is a bijection with
/// phi(s x) = phi(s) phi(x) for every generator s and every x.
bool is_automorphism(const FiniteGroup& g, const Perm& phi);
/// Induced map on G/N; throws kernel_not_invariant when phi(N) != N.
Perm induced_on_quotient(const FiniteGroup& g, const FiniteQuotient& q, const Perm& phi);

Perm identity_perm(const FiniteGroup& g);
/// phi o psi
Perm compose_perm(const Perm& phi, const Perm& psi);
Perm inverse_perm(const Perm& phi);
/// x -> h x h^-1
Perm inner_perm(const FiniteGroup& g, Elem h);

}  // namespace twistmat::groups
