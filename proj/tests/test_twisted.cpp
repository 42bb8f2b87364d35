#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "twistmat/errors.hpp"
#include "twistmat/ring_parse.hpp"
#include "twistmat/twisted.hpp"

using namespace twistmat;
using namespace twistmat::twisted;
using groups::MatrixGroup;
using groups::QuotientKind;
using groups::TableGroup;
using rings::parse_element;
using rings::parse_ring;

namespace {

Perm negation(std::size_t n) {
  Perm p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = static_cast<Elem>((n - k) % n);
  return p;
}

// Conjugacy classes by direct orbit computation.
std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& G) {
  std::vector<int> seen(G.order(), 0);
  std::vector<std::vector<Elem>> out;
  for (Elem x = 0; x < G.order(); ++x) {
    if (seen[x]) continue;
    std::set<Elem> cls;
    for (Elem g = 0; g < G.order(); ++g) cls.insert(G.multiply(G.multiply(g, x), G.inverse(g)));
    for (Elem y : cls) seen[y] = 1;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

// R(phi) for finite G equals the number of phi-invariant conjugacy classes.
std::size_t invariant_class_count(const FiniteGroup& G, const Perm& phi) {
  std::size_t k = 0;
  for (const auto& cls : conjugacy_classes(G)) {
    std::set<Elem> img;
    for (Elem x : cls) img.insert(phi[x]);
    if (std::equal(img.begin(), img.end(), cls.begin(), cls.end())) ++k;
  }
  return k;
}

Perm flip_perm(const MatrixGroup& G) {
  const Automorphism f{{automorphisms::Flip{}}};
  const auto bar = automorphisms::induce_on_quotient(f, G.index_set(), G.ring(),
                                                     G.quotient() == QuotientKind::mod_commutator_u
                                                         ? groups::QuotientSpec::mod_commutator_u()
                                                         : G.quotient() == QuotientKind::mod_center_u4
                                                               ? groups::QuotientSpec::mod_center_u4()
                                                               : groups::QuotientSpec::none());
  return automorphisms::to_perm(bar, G);
}

struct Example {
  std::shared_ptr<FiniteGroup> G;
  Perm phi;
};

std::vector<Example> examples() {
  std::vector<Example> ex;
  auto add_cyclic = [&](std::size_t n) {
    auto G = std::make_shared<TableGroup>(TableGroup::cyclic(n));
    ex.push_back({G, negation(n)});
    ex.push_back({G, groups::identity_perm(*G)});
  };
  add_cyclic(4);
  add_cyclic(5);
  add_cyclic(12);
  const Ring f2 = parse_ring("F_2"), f3 = parse_ring("F_3");
  auto u4 = std::make_shared<MatrixGroup>(IndexSet::empty(4), f2, QuotientKind::none);
  ex.push_back({u4, groups::identity_perm(*u4)});
  ex.push_back({u4, flip_perm(*u4)});
  auto s4 = std::make_shared<MatrixGroup>(IndexSet(4, {2, 3}), f2, QuotientKind::none);
  ex.push_back({s4, groups::identity_perm(*s4)});
  auto a4 = std::make_shared<MatrixGroup>(IndexSet(4, {2, 3}), f3, QuotientKind::mod_commutator_u);
  ex.push_back({a4, flip_perm(*a4)});
  ex.push_back({a4, groups::identity_perm(*a4)});
  auto s3 = std::make_shared<MatrixGroup>(IndexSet(3, {2}), f3, QuotientKind::none);
  ex.push_back({s3, groups::identity_perm(*s3)});
  ex.push_back({s3, automorphisms::to_perm(automorphisms::abels3_phi(f3), *s3)});
  return ex;
}

}  // namespace

TEST_CASE("twisted conjugation is a group action") {
  const Ring z6 = parse_ring("Z[1/6]");
  const IndexSet ix(4, {2, 3});
  const Automorphism phi{{automorphisms::Flip{}, automorphisms::DiagConj{{parse_element(z6, "2"), rings::one(z6),
                                                                          rings::one(z6), parse_element(z6, "3")}}}};
  Rng rng(default_seed);
  for (int s = 0; s < 200; ++s) {
    const auto x = groups::random_group_element(ix, z6, rng), g = groups::random_group_element(ix, z6, rng),
               h = groups::random_group_element(ix, z6, rng);
    REQUIRE(twisted_conjugate(phi, x, groups::identity(ix, z6)) == x);
    REQUIRE(twisted_conjugate(phi, twisted_conjugate(phi, x, h), g) ==
            twisted_conjugate(phi, x, groups::multiply(g, h)));
  }
  for (const auto& e : examples())
    for (Elem x = 0; x < e.G->order(); x += 3)
      for (Elem g = 0; g < e.G->order(); g += 5)
        for (Elem h = 0; h < e.G->order(); h += 7)
          REQUIRE(twisted_conjugate(*e.G, e.phi, twisted_conjugate(*e.G, e.phi, x, h), g) ==
                  twisted_conjugate(*e.G, e.phi, x, e.G->multiply(g, h)));
}

TEST_CASE("cyclic groups") {
  const auto z4 = TableGroup::cyclic(4), z5 = TableGroup::cyclic(5);
  const auto r4 = reidemeister_classes_finite(z4, negation(4));
  CHECK(r4.count == 2);
  CHECK(r4.representatives == std::vector<Elem>{0, 1});
  CHECK(r4.sizes == std::vector<std::size_t>{2, 2});
  CHECK(reidemeister_classes_finite(z5, negation(5)).count == 1);
  CHECK(reidemeister_classes_finite(z5, groups::identity_perm(z5)).count == 5);
  CHECK(fixed_points_finite(z4, negation(4)) == std::vector<Elem>{0, 2});
  CHECK(fixed_points_finite(z5, negation(5)) == std::vector<Elem>{0});
  CHECK(fixed_points_finite(z4, groups::identity_perm(z4)).size() == 4);
  // x -> 5x on Z/12: R = |coker(1 - 5)| = |Z/12 / 4Z/12| = 4
  Perm times5(12);
  for (Elem k = 0; k < 12; ++k) times5[k] = (5 * k) % 12;
  CHECK(reidemeister_classes_finite(TableGroup::cyclic(12), times5).count == 4);
  Perm bad = groups::identity_perm(z4);
  std::swap(bad[1], bad[2]);
  CHECK_THROWS_AS(reidemeister_classes_finite(z4, bad), Error);
}

TEST_CASE("flip on the abelianized unitriangular group") {
  const Ring f2 = parse_ring("F_2");
  const MatrixGroup G(IndexSet::empty(4), f2, QuotientKind::mod_commutator_u);
  REQUIRE(G.order() == 8);
  const auto phi = flip_perm(G);
  const auto fix = fixed_points_finite(G, phi);
  CHECK(fix.size() == 4);
  for (Elem x : fix) {
    const auto g = G.decode(x);
    CHECK(g.upper(1, 2) == g.upper(3, 4));
  }
  // abelian: R = |coker(1 - phi)| = |ker(1 - phi)|
  CHECK(reidemeister_classes_finite(G, phi).count == 4);
}

TEST_CASE("R(id) is the class number") {
  const Ring f2 = parse_ring("F_2"), f3 = parse_ring("F_3");
  const MatrixGroup s4(IndexSet(4, {2, 3}), f2, QuotientKind::none);
  REQUIRE(s4.order() == 64);
  const auto r = reidemeister_classes_finite(s4, groups::identity_perm(s4));
  const auto classes = conjugacy_classes(s4);
  CHECK(r.count == classes.size());
  CHECK(r.count == commuting_pair_class_count(s4));
  std::vector<std::size_t> sizes;
  for (const auto& c : classes) sizes.push_back(c.size());
  auto rs = r.sizes;
  std::sort(sizes.begin(), sizes.end());
  std::sort(rs.begin(), rs.end());
  CHECK(rs == sizes);
  // U_4(F_q) has 2q^3 + q^2 - 2q classes
  const MatrixGroup u4(IndexSet::empty(4), f2, QuotientKind::none);
  CHECK(reidemeister_classes_finite(u4, groups::identity_perm(u4)).count == 16);
  const MatrixGroup u4_3(IndexSet::empty(4), f3, QuotientKind::none);
  CHECK(commuting_pair_class_count(u4_3) == 2 * 27 + 9 - 6);
}

TEST_CASE("Reidemeister numbers against invariant classes") {
  for (const auto& e : examples()) {
    REQUIRE(groups::is_automorphism(*e.G, e.phi));
    const auto r = reidemeister_classes_finite(*e.G, e.phi);
    CAPTURE(e.G->describe());
    CHECK(r.count == invariant_class_count(*e.G, e.phi));
    CHECK(std::accumulate(r.sizes.begin(), r.sizes.end(), std::size_t{0}) == e.G->order());
    CHECK(std::is_sorted(r.representatives.begin(), r.representatives.end()));
  }
}

TEST_CASE("R is invariant under inner twists and relabelling") {
  Rng rng(default_seed);
  for (const auto& e : examples()) {
    const auto base = reidemeister_classes_finite(*e.G, e.phi).count;
    for (int k = 0; k < 20; ++k) {
      const Elem g = static_cast<Elem>(rng() % e.G->order());
      const auto twisted = groups::compose_perm(groups::inner_perm(*e.G, g), e.phi);
      REQUIRE(reidemeister_classes_finite(*e.G, twisted).count == base);
    }
    // relabel by a random bijection
    const std::size_t n = e.G->order();
    Perm pi(n);
    std::iota(pi.begin(), pi.end(), Elem{0});
    std::shuffle(pi.begin() + 1, pi.end(), rng);
    if (e.G->identity() != 0) continue;
    std::vector<Elem> table(n * n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) table[pi[a] * n + pi[b]] = pi[e.G->multiply(a, b)];
    std::vector<Elem> gens;
    for (Elem s : e.G->generators()) gens.push_back(pi[s]);
    const TableGroup H("relabelled", n, table, gens);
    Perm psi(n);
    for (Elem a = 0; a < n; ++a) psi[pi[a]] = pi[e.phi[a]];
    CHECK(reidemeister_classes_finite(H, psi).count == base);
  }
}

TEST_CASE("quotient lower bound and Heath bookkeeping") {
  const Ring f2 = parse_ring("F_2"), f3 = parse_ring("F_3");
  struct Triple {
    std::shared_ptr<FiniteGroup> G;
    std::vector<Elem> N;
    Perm phi;
  };
  std::vector<Triple> triples;
  {
    auto z12 = std::make_shared<TableGroup>(TableGroup::cyclic(12));
    triples.push_back({z12, {4}, negation(12)});
    triples.push_back({z12, {6}, groups::identity_perm(*z12)});
    triples.push_back({z12, {3}, negation(12)});
  }
  for (const auto& [ix, f] : {std::pair{IndexSet::empty(4), f2}, std::pair{IndexSet(4, {2, 3}), f2},
                              std::pair{IndexSet::empty(4), f3}}) {
    auto G = std::make_shared<MatrixGroup>(ix, f, QuotientKind::none);
    // commutator subgroup of U_4 is generated by e_13, e_24, e_14
    std::vector<Elem> comm;
    for (auto [i, j] : {std::pair{1, 3}, {2, 4}, {1, 4}})
      comm.push_back(G->encode(groups::elementary(ix, f, i, j, rings::one(f))));
    const Elem center = G->encode(groups::elementary(ix, f, 1, 4, rings::one(f)));
    triples.push_back({G, comm, groups::identity_perm(*G)});
    triples.push_back({G, {center}, flip_perm(*G)});
    triples.push_back({G, comm, flip_perm(*G)});
    triples.push_back({G, {center}, groups::compose_perm(groups::inner_perm(*G, 5), flip_perm(*G))});
  }
  CHECK(triples.size() >= 5);
  for (const auto& t : triples) {
    const auto r = reidemeister_classes_finite(*t.G, t.phi).count;
    const auto rq = reidemeister_lower_bound_via_quotient(*t.G, t.N, t.phi);
    CHECK(rq <= r);
    // independent: induced map on an explicit quotient table
    const auto q = groups::quotient_group(*t.G, t.N);
    const auto bar = groups::induced_on_quotient(*t.G, q, t.phi);
    CHECK(invariant_class_count(*q.group, bar) == rq);

    const auto h = heath_finiteness_check(*t.G, t.N, t.phi);
    CHECK(h.consistent);
    CHECK(h.r_phi == r);
    CHECK(h.r_quotient == rq);
    CHECK(h.classes_above.size() == rq);
    CHECK(std::accumulate(h.classes_above.begin(), h.classes_above.end(), std::size_t{0}) == r);
    for (std::size_t k = 0; k < rq; ++k) CHECK(h.classes_above[k] <= h.fibre_counts[k]);
    CHECK(h.fibre_total >= r);
  }
  // a non-invariant subgroup
  const MatrixGroup u3(IndexSet::empty(3), f2, QuotientKind::none);
  const Elem e12 = u3.encode(groups::elementary(IndexSet::empty(3), f2, 1, 2, rings::one(f2)));
  const Elem e13 = u3.encode(groups::elementary(IndexSet::empty(3), f2, 1, 3, rings::one(f2)));
  const Elem e23 = u3.encode(groups::elementary(IndexSet::empty(3), f2, 2, 3, rings::one(f2)));
  // <e12, e13> is normal; the flip sends it to <e23, e13>
  CHECK_THROWS_AS(reidemeister_lower_bound_via_quotient(u3, {e12, e13}, flip_perm(u3)), Error);
  CHECK(reidemeister_lower_bound_via_quotient(u3, {e12, e13, e23}, flip_perm(u3)) == 1);
}

TEST_CASE("fixed families") {
  const Ring z = parse_ring("Z");
  Rng rng(default_seed);
  const auto u = parse_element(z, "-1");
  const std::vector<RingElement> dc{u, rings::one(z), rings::one(z), rings::one(z)};
  for (int eps : {0, 1}) {
    const auto cert = fix_family_certify(4, IndexSet(4, {2, 3}), z, eps, rings::RingAutomorphism::identity(), dc, 100);
    CHECK(cert.verified == 100);
    CHECK(cert.fingen.finitely_generated);
    CHECK(cert.jabara_applicable);
    CHECK(cert.parameter_set == "s = 1..100");
  }
  const Ring q2 = parse_ring("Z[sqrt(2)]");
  for (int eps : {0, 1}) {
    std::vector<RingElement> d(4, rings::one(q2));
    d.push_back(parse_element(q2, "1+sqrt(2)"));
    const auto cert = fix_family_certify(5, IndexSet(5, {1, 2, 3, 4}), q2, eps,
                                         rings::RingAutomorphism::quadratic_conjugation(), d, 100);
    CHECK(cert.verified == 100);
    CHECK(cert.to_json()["verified"] == 100);
  }
  // trivial case: nothing moves
  const auto triv =
      fix_family_certify(4, IndexSet::all(4), z, 0, rings::RingAutomorphism::identity(), std::vector(4, rings::one(z)), 5);
  CHECK(triv.verified == 5);
  // positive characteristic: s = x^k for a fixed transcendental x
  const Ring rf = parse_ring("R_f");
  const auto cf = fix_family_certify(4, IndexSet(4, {2, 3}), rf, 1, rings::RingAutomorphism::identity(),
                                     {parse_element(rf, "t"), rings::one(rf), rings::one(rf), parse_element(rf, "t^3+t+1")}, 10);
  CHECK(cf.verified == 10);
  CHECK(cf.parameter_set.find("x = ") != std::string::npos);
  CHECK(cf.fingen.finitely_generated);

  auto code_of = [](auto&& f) {
    std::optional<ErrorCode> code;
    try {
      f();
    } catch (const Error& e) {
      code = e.code();
    }
    return code;
  };
  CHECK(code_of([&] { fix_family_certify(4, IndexSet(4, {2}), z, 0, rings::RingAutomorphism::identity(), dc, 3); }) ==
        ErrorCode::precondition_unmet);
  CHECK(code_of([&] {
          fix_family_certify(3, IndexSet(3, {2}), z, 0, rings::RingAutomorphism::identity(),
                             std::vector(3, rings::one(z)), 3);
        }) == ErrorCode::precondition_unmet);
  CHECK(code_of([&] {
          fix_family_certify(4, IndexSet(4, {2, 3}), z, 0, rings::RingAutomorphism::identity(),
                             {parse_element(z, "2"), rings::one(z), rings::one(z), rings::one(z)}, 3);
        }) == ErrorCode::precondition_unmet);
}

TEST_CASE("box search on S_3^{2}") {
  const Ring z = parse_ring("Z");
  const BoxBounds small{2, 1, 2};
  CHECK(box_values(z, small).size() == 5);
  const auto all = fix_trivial_box_search(Automorphism{}, z, small);
  CHECK(all.points_searched == 125);
  CHECK(all.fixed_points.size() == 125);

  const BoxBounds b{6, 1, 2};
  for (const char* w : {"1", "-1"}) {
    const auto uw = parse_element(z, w);
    const auto psi = abels3_psi(z, uw);
    const auto rep = fix_trivial_box_search(psi, z, b);
    // closed form: (x, y, z) -> (w(2x+y), wx, x^2+xy-z)
    const long s = w[0] == '-' ? -1 : 1;
    std::size_t expected = 0;
    for (long x = -6; x <= 6; ++x)
      for (long y = -6; y <= 6; ++y)
        for (long c = -6; c <= 6; ++c)
          if (s * (2 * x + y) == x && s * x == y && x * x + x * y - c == c) ++expected;
    CHECK(rep.fixed_points.size() == expected);
    REQUIRE(rep.fixed_points.size() == 1);
    CHECK(rep.fixed_points[0].is_identity());
    CHECK(rep.points_searched == 13 * 13 * 13);
  }
  // Z[1/6] box: a / (2^i 3^j) with |a| <= 1 and 0 <= i, j <= 1
  const Ring z6 = parse_ring("Z[1/6]");
  std::set<std::string> vals;
  for (long num : {-1L, 0L, 1L})
    for (long den : {1L, 2L, 3L, 6L})
      vals.insert(parse_element(z6, std::to_string(num) + "/" + std::to_string(den)).to_string());
  std::set<std::string> got;
  const auto bv = box_values(z6, BoxBounds{1, 1, 2});
  for (const auto& v : bv) got.insert(v.to_string());
  CHECK(got.size() == bv.size());
  CHECK(got == vals);
}

TEST_CASE("small automorphism groups") {
  const auto z4 = TableGroup::cyclic(4), z5 = TableGroup::cyclic(5);
  CHECK(enumerate_automorphisms_small(z4).size() == 2);
  CHECK(enumerate_automorphisms_small(z5).size() == 4);
  CHECK(enumerate_automorphisms_small(TableGroup::cyclic(12)).size() == 4);
  const Ring f2 = parse_ring("F_2");
  const MatrixGroup v(IndexSet::empty(4), f2, QuotientKind::mod_commutator_u);
  const auto gl3 = enumerate_automorphisms_small(v);
  CHECK(gl3.size() == 168);
  CHECK(std::is_sorted(gl3.begin(), gl3.end()));
  const std::set<Perm> auts(gl3.begin(), gl3.end());
  for (std::size_t a = 0; a < gl3.size(); a += 7) {
    CHECK(auts.count(groups::inverse_perm(gl3[a])));
    for (std::size_t b = 0; b < gl3.size(); b += 11) CHECK(auts.count(groups::compose_perm(gl3[a], gl3[b])));
  }
  // U_3(F_2) is dihedral of order 8
  const MatrixGroup d8(IndexSet::empty(3), f2, QuotientKind::none);
  CHECK(enumerate_automorphisms_small(d8).size() == 8);
  CHECK(irredundant_generators(z4).size() == 1);
  CHECK_THROWS_AS(enumerate_automorphisms_small(MatrixGroup(IndexSet::all(4), parse_ring("F_3"), QuotientKind::none), 200),
                  Error);
}

TEST_CASE("automorphisms of the abelianized S_4^{2,3}(F_3)") {
  const Ring f3 = parse_ring("F_3");
  const MatrixGroup G(IndexSet(4, {2, 3}), f3, QuotientKind::mod_commutator_u);
  REQUIRE(G.order() == 108);
  const auto auts = enumerate_automorphisms_small(G);
  CHECK(auts.size() == 1296);
  std::size_t middle = 0;
  for (const auto& a : auts) {
    const auto form = automorphisms::check_superdiagonal_form(G, a);
    REQUIRE(form);
    if (form->fixes_middle_slot(4)) ++middle;
  }
  CHECK(middle == 432);
  CHECK(std::find(auts.begin(), auts.end(), flip_perm(G)) != auts.end());
}
