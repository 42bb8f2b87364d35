#include <doctest.h>

#include "twistmat/automorphism.hpp"
#include "twistmat/errors.hpp"
#include "twistmat/ring_parse.hpp"

using namespace twistmat;
using namespace twistmat::automorphisms;
using groups::MatrixGroup;
using rings::parse_element;
using rings::parse_ring;

namespace {

RingElement el(const Ring& r, const char* s) { return parse_element(r, s); }

const Automorphism flip{{Flip{}}};

// [[1,x,z],[0,u,y],[0,0,1]] in S_3^{2}(R)
GroupElement abels(const Ring& r, const RingElement& x, const RingElement& y, const RingElement& z, const RingElement& u) {
  GroupElement g(IndexSet(3, {2}), r);
  g.set_diag(2, u);
  g.set_upper(1, 2, x * rings::unit_inverse(u));
  g.set_upper(2, 3, y);
  g.set_upper(1, 3, z);
  return g;
}

}  // namespace

TEST_CASE("flip on elementary matrices") {
  const Ring z = parse_ring("Z");
  const auto r = el(z, "7");
  const IndexSet u4 = IndexSet::all(4);
  CHECK(apply(flip, groups::elementary(u4, z, 1, 2, r)) == groups::elementary(u4, z, 3, 4, r));
  CHECK(apply(flip, groups::elementary(u4, z, 1, 3, r)) == groups::elementary(u4, z, 2, 4, -r));
  for (int n = 2; n <= 6; ++n) {
    const IndexSet ix = IndexSet::all(n);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const auto expected = groups::elementary(ix, z, n - j + 1, n - i + 1, (j - i - 1) % 2 ? -r : r);
        CHECK(apply(flip, groups::elementary(ix, z, i, j, r)) == expected);
      }
  }
}

TEST_CASE("flip is an involutive automorphism") {
  Rng rng(default_seed);
  for (const char* name : {"Z", "Z[sqrt(2)]", "R_f"}) {
    const Ring r = parse_ring(name);
    for (int n = 4; n <= 6; ++n) {
      for (const auto& ix : {IndexSet::all(n), IndexSet(n, {2, n - 1}), IndexSet::empty(n)}) {
        for (int s = 0; s < 500 / 3; ++s) {
          const auto g = groups::random_group_element(ix, r, rng);
          REQUIRE(apply(flip, apply(flip, g)) == g);
        }
      }
    }
  }
  const auto check = verify_homomorphism(flip, IndexSet::empty(5), parse_ring("Z"), 500, rng);
  CHECK(check.ok);
  CHECK(check.inverse_checked);
  CHECK(verify_homomorphism(flip, IndexSet::all(5), parse_ring("Z[1/6]"), 200, rng).ok);
  const IndexSet asym(4, {2});
  CHECK_THROWS_AS(apply(flip, groups::diagonal_gen(asym, parse_ring("Z"), 2, el(parse_ring("Z"), "-1"))), Error);
}

TEST_CASE("inner and diagonal conjugation") {
  const Ring r = parse_ring("Z[1/6]");
  const IndexSet ix(4, {2, 3});
  Rng rng(default_seed);
  const Automorphism id_inner{{Inner{groups::identity(ix, r)}}};
  for (int s = 0; s < 100; ++s) {
    const auto g = groups::random_group_element(ix, r, rng), h = groups::random_group_element(ix, r, rng);
    REQUIRE(apply(id_inner, g) == g);
    REQUIRE(apply(Automorphism({Inner{h}}), g) == groups::multiply(groups::multiply(h, g), groups::inverse(h)));
  }
  // conjugation by a diagonal outside T_I
  const std::vector<RingElement> d{el(r, "2"), el(r, "1"), el(r, "1"), el(r, "-3")};
  const Automorphism dc{{DiagConj{d}}};
  CHECK(apply(dc, groups::elementary(ix, r, 1, 4, el(r, "1"))) == groups::elementary(ix, r, 1, 4, el(r, "-2/3")));
  CHECK(apply(dc, groups::diagonal_gen(ix, r, 2, el(r, "3"))) == groups::diagonal_gen(ix, r, 2, el(r, "3")));
  CHECK(verify_homomorphism(dc, ix, r, 300, rng).ok);
  CHECK_THROWS_AS(automorphism_from_json(nlohmann::json::parse(R"([{"atom":"diag_conj","d":["5","1","1","1"]}])"), ix,
                                         parse_ring("Z")),
                  Error);
}

TEST_CASE("composition order and inverses") {
  const Ring r = parse_ring("Z[sqrt(2)]");
  const IndexSet ix = IndexSet::all(4);
  Rng rng(default_seed);
  const Automorphism conj{{RingInduced{rings::RingAutomorphism::quadratic_conjugation()}}};
  const Automorphism inner{{Inner{groups::parse_word(ix, r, "e(1,2;sqrt(2))*d(3;1+sqrt(2))")}}};
  const Automorphism dc{{DiagConj{{el(r, "1+sqrt(2)"), el(r, "1"), el(r, "-1"), el(r, "3+2*sqrt(2)")}}}};
  const auto phi = compose(compose(flip, conj), compose(inner, dc));
  const auto inv = try_inverse(phi, r);
  REQUIRE(inv);
  for (int s = 0; s < 200; ++s) {
    const auto g = groups::random_group_element(ix, r, rng);
    REQUIRE(apply(compose(flip, inner), g) == apply(flip, apply(inner, g)));
    REQUIRE(apply(*inv, apply(phi, g)) == g);
  }
  const auto check = verify_homomorphism(phi, ix, r, 300, rng);
  CHECK(check.ok);
  CHECK(check.inverse_checked);
  CHECK_FALSE(try_inverse(abels3_phi(parse_ring("Z")), parse_ring("Z")));

  const auto parsed = automorphism_from_json(
      nlohmann::json::parse(R"J([{"atom":"flip"},{"atom":"ring","desc":"quad_conj"},
                                {"atom":"diag_conj","d":["1+sqrt(2)","1","1","-1+sqrt(2)"]}])J"),
      ix, r);
  CHECK(parsed.atoms().size() == 3);
  CHECK(automorphism_from_json(parsed.to_json(), ix, r).describe() == parsed.describe());
  CHECK(verify_homomorphism(parsed, ix, r, 200, rng).ok);
  CHECK_THROWS_AS(automorphism_from_json(nlohmann::json::parse(R"([{"atom":"twist"}])"), ix, r), Error);
}

TEST_CASE("multiplicativity check rejects a non-homomorphism") {
  const Ring z = parse_ring("Z");
  const IndexSet ix = IndexSet::empty(4);
  ElementMap square = [&](const GroupElement& g) {
    return groups::elementary(ix, z, 1, 2, g.upper(1, 2) * g.upper(1, 2));
  };
  Rng rng(default_seed);
  const auto res = verify_homomorphism(square, ix, z, 100, rng, QuotientKind::none, true);
  CHECK_FALSE(res.ok);
  CHECK_FALSE(res.witness.empty());
}

TEST_CASE("abels3 maps") {
  const Ring z = parse_ring("Z");
  const auto phi = abels3_phi(z);
  const auto one = rings::one(z), zero = rings::zero(z);
  CHECK(apply(phi, abels(z, one, zero, zero, one)) == abels(z, el(z, "2"), one, one, one));
  CHECK(apply(phi, groups::identity(IndexSet(3, {2}), z)).is_identity());
  Rng rng(default_seed);
  // formula oracle on (x, y, z, u)
  for (int s = 0; s < 300; ++s) {
    const auto x = rings::random_element(z, rng), y = rings::random_element(z, rng), w = rings::random_element(z, rng);
    const auto u = rng() % 2 ? one : -one;
    const auto img = apply(phi, abels(z, x, y, w, u));
    REQUIRE(img == abels(z, el(z, "2") * x + u * y, u * x, x * x + u * x * y - w, u));
  }
  const auto check = verify_homomorphism(phi, IndexSet(3, {2}), z, 500, rng);
  CHECK(check.ok);
  CHECK(verify_homomorphism(abels3_phi(parse_ring("Z[sqrt(-5)]")), IndexSet(3, {2}), parse_ring("Z[sqrt(-5)]"), 200, rng).ok);
  CHECK_THROWS_AS(abels3_phi(parse_ring("Z[1/6]")), Error);
  CHECK_THROWS_AS(apply(phi, groups::identity(IndexSet(3, {1, 2}), z)), Error);

  const Ring z6 = parse_ring("Z[1/6]");
  const auto v2 = abels3_phi_v(z6, el(z6, "2"));
  const auto o6 = rings::one(z6), n6 = rings::zero(z6);
  CHECK(apply(v2, abels(z6, n6, o6, n6, o6)) == abels(z6, -o6, n6, n6, o6));
  for (int s = 0; s < 300; ++s) {
    const auto x = rings::random_element(z6, rng), y = rings::random_element(z6, rng), w = rings::random_element(z6, rng);
    const auto u = rings::random_unit(z6, rng);
    const auto ui = rings::unit_inverse(u), v = el(z6, "2");
    REQUIRE(apply(v2, abels(z6, x, y, w, u)) == abels(z6, -(y * ui), v * x * ui, -(v * x * y * ui) + v * w, ui));
  }
  CHECK(verify_homomorphism(v2, IndexSet(3, {2}), z6, 500, rng).ok);
  CHECK_THROWS_AS(abels3_phi_v(z6, el(z6, "5")), Error);
  CHECK_THROWS_AS(abels3_phi_v(z6, el(z6, "1")), Error);
  CHECK_THROWS_AS(abels3_phi_v(z6, el(z6, "-1")), Error);
  try {
    abels3_phi_v(z6, el(z6, "5"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bad_unit);
  }
}

TEST_CASE("diagonal split and d^c_*") {
  const Ring r = parse_ring("Z[1/6]");
  const IndexSet ix(4, {2, 3});
  const std::vector<RingElement> d{el(r, "2"), el(r, "3"), el(r, "-1"), el(r, "1/6")};
  const auto s = split_diagonal(d, ix);
  CHECK(s.d_I == std::vector<RingElement>{el(r, "1"), el(r, "3"), el(r, "-1"), el(r, "1")});
  CHECK(s.d_c == std::vector<RingElement>{el(r, "2"), el(r, "1"), el(r, "1"), el(r, "1/6")});
  for (std::size_t i = 0; i < 4; ++i) CHECK(s.d_I[i] * s.d_c[i] == d[i]);
  CHECK(split_diagonal(d, IndexSet::all(4)).d_c == std::vector<RingElement>(4, rings::one(r)));
  CHECK(split_diagonal(d, IndexSet::empty(4)).d_I == std::vector<RingElement>(4, rings::one(r)));

  const auto star = dc_star(s.d_c, ix);
  CHECK(star == groups::diagonal(ix, r, {el(r, "1"), el(r, "2"), el(r, "1/6"), el(r, "1")}));
  CHECK(dc_star(std::vector<RingElement>(4, rings::one(r)), ix).is_identity());
  const IndexSet i123(4, {1, 2, 3});
  CHECK(dc_star({el(r, "1"), el(r, "1"), el(r, "1"), el(r, "3")}, i123) ==
        groups::diagonal_gen(i123, r, 3, el(r, "3")));
  CHECK_THROWS_AS(dc_star(s.d_c, IndexSet(4, {2})), Error);

  // For every I with (NG) the construction lands in T_I and fixes e_12(s) e_{n-1,n}(s).
  Rng rng(default_seed);
  for (int n = 4; n <= 6; ++n)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> m;
      for (int i = 1; i <= n; ++i)
        if (mask & (1u << (i - 1))) m.push_back(i);
      const IndexSet I(n, m);
      if (!groups::ng_condition(I)) continue;
      std::vector<RingElement> dc;
      for (int i = 1; i <= n; ++i) dc.push_back(I.contains(i) ? rings::one(r) : rings::random_unit(r, rng));
      const auto st = dc_star(dc, I);
      const Automorphism both{{Inner{st}, DiagConj{dc}}};
      const auto sv = rings::random_element(r, rng);
      const auto e = groups::project(
          groups::multiply(groups::elementary(I, r, 1, 2, sv), groups::elementary(I, r, n - 1, n, sv)),
          QuotientSpec::mod_commutator_u());
      REQUIRE(apply(induce_on_quotient(both, I, r, QuotientSpec::mod_commutator_u()), e) == e);
    }
}

TEST_CASE("induced automorphisms on quotients") {
  const Ring r = parse_ring("Z[sqrt(2)]");
  const IndexSet ix = IndexSet::all(4);
  const auto qc = QuotientSpec::mod_commutator_u();
  const Automorphism phi{{Flip{}, RingInduced{rings::RingAutomorphism::quadratic_conjugation()},
                          DiagConj{{el(r, "1+sqrt(2)"), el(r, "1"), el(r, "-1"), el(r, "1")}}}};
  Rng rng(default_seed);
  for (const auto& q : {qc, QuotientSpec::mod_center_u4()}) {
    const IndexSet jx = q.kind == QuotientSpec::Kind::mod_center_u4 ? IndexSet(4, {2, 3}) : ix;
    const auto bar = induce_on_quotient(phi, jx, r, q);
    for (int s = 0; s < 200; ++s) {
      const auto g = groups::random_group_element(jx, r, rng);
      REQUIRE(groups::project(apply(phi, g), q) == apply(bar, groups::project(g, q)));
    }
  }
  // conjugation acts slotwise
  const auto conj = induce_on_quotient(Automorphism({RingInduced{rings::RingAutomorphism::quadratic_conjugation()}}), ix, r, qc);
  const auto e = groups::project(groups::elementary(ix, r, 2, 3, el(r, "3+sqrt(2)")), qc);
  CHECK(apply(conj, e) == groups::project(groups::elementary(ix, r, 2, 3, el(r, "3-sqrt(2)")), qc));
  // inner by a unipotent element is trivial on the unipotent quotient
  const auto inner = induce_on_quotient(Automorphism({Inner{groups::elementary(ix, r, 1, 2, el(r, "5"))}}), ix, r, qc);
  for (int s = 0; s < 100; ++s) {
    const auto g = groups::project(groups::random_unipotent(ix, r, rng), qc);
    REQUIRE(apply(inner, g) == g);
  }
  // mod ideal: reduction commutes with the induced map
  const auto red = groups::parse_quotient(nlohmann::json{{"quotient", "mod_ideal"}, {"p", 7}}, r);
  const Automorphism psi{{Flip{}, DiagConj{{el(r, "1+sqrt(2)"), el(r, "1"), el(r, "-1"), el(r, "1")}}}};
  const auto pbar = induce_on_quotient(psi, ix, r, red);
  for (int s = 0; s < 100; ++s) {
    const auto g = groups::random_group_element(ix, r, rng);
    REQUIRE(groups::project(apply(psi, g), red) == apply(pbar, groups::project(g, red)));
  }
  // t -> t+1 does not preserve (t^3+t+1)
  const Ring f2t = parse_ring("F_2[t]");
  rings::RingAutomorphism shift;
  shift.kind = rings::RingAutKind::affine;
  shift.lambda = 1;
  shift.shift = 1;
  const auto bad = groups::parse_quotient(nlohmann::json{{"quotient", "mod_ideal"}, {"g", "t^3+t+1"}}, f2t);
  try {
    induce_on_quotient(Automorphism({RingInduced{shift}}), IndexSet::all(3), f2t, bad);
    FAIL("expected KernelNotInvariant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kernel_not_invariant);
  }
}

TEST_CASE("superdiagonal form on the finite quotient") {
  const Ring f3 = parse_ring("F_3");
  const IndexSet ix(4, {2, 3});
  const MatrixGroup G(ix, f3, QuotientKind::mod_commutator_u);
  const auto id = check_superdiagonal_form(G, groups::identity_perm(G));
  REQUIRE(id);
  CHECK(id->sigma == std::vector<int>{1, 2, 3});
  CHECK(id->phi[0] == std::vector<rings::FieldElem>{0, 1, 2});

  const Automorphism fd{{Flip{}, DiagConj{{el(f3, "2"), el(f3, "1"), el(f3, "1"), el(f3, "1")}}}};
  const auto bar = induce_on_quotient(fd, ix, f3, QuotientSpec::mod_commutator_u());
  const auto perm = to_perm(bar, G);
  CHECK(groups::is_automorphism(G, perm));
  const auto form = check_superdiagonal_form(G, perm);
  REQUIRE(form);
  CHECK(form->sigma == std::vector<int>{3, 2, 1});
  CHECK(form->fixes_middle_slot(4));
  // slot (1,2) value r -> r/d_1 = 2r lands in slot (3,4)
  CHECK(form->phi[0] == std::vector<rings::FieldElem>{0, 2, 1});

  // a superdiagonal map given directly
  SuperdiagonalMap m;
  m.sigma = {3, 2, 1};
  for (int s = 0; s < 3; ++s) m.phi.push_back(AdditiveMap{rings::one(f3), rings::RingAutomorphism::identity()});
  m.diag_perm = {4, 3, 2, 1};
  m.diag_invert = true;
  const Automorphism sm{{m}};
  const auto sp = to_perm(sm, G);
  CHECK(groups::is_automorphism(G, sp));
  CHECK(check_superdiagonal_form(G, sp)->sigma == std::vector<int>{3, 2, 1});
  const auto sinv = try_inverse(sm, f3);
  REQUIRE(sinv);
  CHECK(groups::compose_perm(to_perm(*sinv, G), sp) == groups::identity_perm(G));
  CHECK_THROWS_AS(apply(sm, groups::identity(ix, f3)), Error);

  // an automorphism that is not superdiagonal in form does not exist, but a
  // non-automorphism table is rejected
  groups::Perm swap = groups::identity_perm(G);
  const auto e12 = G.encode(groups::elementary(ix, f3, 1, 2, rings::one(f3), QuotientKind::mod_commutator_u));
  const auto d2 = G.encode(groups::diagonal_gen(ix, f3, 2, el(f3, "2"), QuotientKind::mod_commutator_u));
  std::swap(swap[e12], swap[d2]);
  CHECK_FALSE(check_superdiagonal_form(G, swap));
}

TEST_CASE("flip on the torus of S_4^{2,3}") {
  // diag(1,u,v,1) -> diag(1,v^-1,u^-1,1); fixed exactly on v = u^-1
  const Ring rf = parse_ring("R_f");
  const IndexSet ix(4, {2, 3});
  Rng rng(default_seed);
  for (int s = 0; s < 200; ++s) {
    const auto u = rings::random_unit(rf, rng), v = rings::random_unit(rf, rng);
    const auto d = groups::diagonal(ix, rf, {rings::one(rf), u, v, rings::one(rf)});
    const auto img = apply(flip, d);
    REQUIRE(img == groups::diagonal(ix, rf, {rings::one(rf), rings::unit_inverse(v), rings::unit_inverse(u), rings::one(rf)}));
    REQUIRE((img == d) == (u * v == rings::one(rf)));
    const auto w = groups::diagonal(ix, rf, {rings::one(rf), u, rings::unit_inverse(u), rings::one(rf)});
    REQUIRE(apply(flip, w) == w);
  }
}
