// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "twistmat/cli.hpp"
#include "twistmat/errors.hpp"
#include "twistmat/poly.hpp"
#include "twistmat/ring_parse.hpp"
#include "twistmat/structure.hpp"
#include "twistmat/twisted.hpp"

using namespace twistmat;
using automorphisms::Automorphism;
using groups::Elem;
using groups::IndexSet;
using groups::MatrixGroup;
using groups::Perm;
using groups::QuotientKind;
using groups::TableGroup;
using rings::parse_element;
using rings::Ring;
using rings::RingElement;
using rings::parse_ring;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

Perm negation(std::size_t n) {
  Perm p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = static_cast<Elem>((n - k) % n);
  return p;
}

std::size_t class_count_by_orbits(const groups::FiniteGroup& G) {
  std::vector<char> seen(G.order(), 0);
  std::size_t k = 0;
  for (Elem x = 0; x < G.order(); ++x) {
    if (seen[x]) continue;
    ++k;
    for (Elem g = 0; g < G.order(); ++g) seen[G.multiply(G.multiply(g, x), G.inverse(g))] = 1;
  }
  return k;
}

Perm induced_flip(const MatrixGroup& G, const groups::QuotientSpec& q) {
  const Automorphism f{{automorphisms::Flip{}}};
  return automorphisms::to_perm(automorphisms::induce_on_quotient(f, G.index_set(), G.ring(), q), G);
}

// 1
void relation_suite(Outcome& o) {
  const auto t0 = Clock::now();
  int runs = 0;
  for (const char* name : {"Z", "Z[1/6]", "Z[sqrt(2)]", "F_2[t]", "F_2[t,t^-1]", "R_f", "F_3[t]"})
    for (int n = 2; n <= 6; ++n) {
      Rng rng(default_seed + static_cast<unsigned>(n));
      const auto rep = groups::verify_relations(parse_ring(name), IndexSet::all(n), 200, rng);
      for (const auto& r : rep.relations) o.require(r.failures == 0, std::string(name) + " n=" + std::to_string(n) + " " + r.name);
      ++runs;
    }
  const double s = since(t0);
  o.note << runs << " ring/size pairs, 200 samples per relation, " << s << " s";
  o.require(s < 10.0, "runtime under 10 s");
}

// 2
void flip_checks(Outcome& o) {
  const Automorphism tau{{automorphisms::Flip{}}};
  Rng rng(default_seed);
  const Ring z = parse_ring("Z");
  for (int n = 4; n <= 6; ++n) {
    const IndexSet ix = IndexSet::all(n);
    for (int s = 0; s < 500; ++s) {
      const auto g = groups::random_group_element(ix, z, rng);
      if (automorphisms::apply(tau, automorphisms::apply(tau, g)) != g) {
        o.require(false, "involution n=" + std::to_string(n));
        break;
      }
    }
  }
  const IndexSet u4 = IndexSet::empty(4);
  for (int s = 0; s < 50; ++s) {
    const auto r = rings::random_element(z, rng);
    o.require(automorphisms::apply(tau, groups::elementary(u4, z, 1, 2, r)) == groups::elementary(u4, z, 3, 4, r),
              "e12(r) -> e34(r)");
    o.require(automorphisms::apply(tau, groups::elementary(u4, z, 1, 3, r)) == groups::elementary(u4, z, 2, 4, -r),
              "e13(r) -> e24(-r)");
  }
  o.note << "500 samples for each n in 4..6";
}

// 3
void iterated_commutators(Outcome& o) {
  const IndexSet ix(4, {2, 3});
  for (auto [name, u] : {std::pair{"Z[1/6]", "3"}, std::pair{"R_f", "t"}}) {
    const Ring r = parse_ring(name);
    const auto uu = parse_element(r, u);
    const auto d = groups::diagonal_gen(ix, r, 2, uu);
    const auto x = groups::elementary(ix, r, 2, 4, rings::one(r));
    for (int l = 1; l <= 12; ++l)
      o.require(groups::iterated_commutator(x, d, l) == groups::elementary(ix, r, 2, 4, rings::pow(rings::one(r) - uu, l)),
                std::string(name) + " l=" + std::to_string(l));
  }
  o.note << "[e_24(1),_l d_2(u)], l = 1..12, over Z[1/6] (u=3) and R_f (u=t)";
}

// 4
void fingen_table(Outcome& o) {
  std::ostringstream out, err;
  const int st = cli::run({"fingen-table", "--format", "csv"}, out, err);
  o.require(st == 0, "fingen-table exit status");
  const auto gold = split_lines(slurp(std::filesystem::path(TWISTMAT_TEST_DATA) / "fingen_gold.csv"));
  const auto got = split_lines(out.str());
  o.require(gold.size() == 65 && got.size() == 65, "64 rows");
  std::size_t agree = 0;
  for (std::size_t k = 1; k < std::min(gold.size(), got.size()); ++k) {
    // ring,I,verdict,condition are the leading fields in both files
    auto prefix = [](const std::string& line) {
      int fields = 0;
      bool quoted = false;
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == ',' && !quoted && ++fields == 4) return line.substr(0, i);
      }
      return line;
    };
    if (prefix(gold[k]) == prefix(got[k])) ++agree;
    else o.require(false, "row " + std::to_string(k) + ": " + got[k]);
    const std::string clause = gold[k].substr(gold[k].rfind(',') + 1);
    if (clause.rfind("NG i=", 0) == 0)
      o.require(got[k].find("(NG) fails at i=" + clause.substr(5)) != std::string::npos, "failing clause row " + std::to_string(k));
  }
  const Ring rf = parse_ring("R_f");
  o.require(groups::is_finitely_generated(parse_ring("Z"), IndexSet(4, {})).finitely_generated, "Z always yes");
  o.require(groups::is_finitely_generated(rf, IndexSet(4, {2, 3})).finitely_generated, "R_f {2,3} yes");
  o.require(!groups::is_finitely_generated(rf, IndexSet(4, {2})).finitely_generated, "R_f {2} no");
  o.note << agree << "/64 rows agree with the gold file";
}

// 5
void reciprocals(Outcome& o) {
  const auto F2 = rings::FiniteField::prime(2);
  const auto f = rings::parse_poly(F2, "1+t+t^3");
  o.require(rings::poly::is_irreducible(*F2, f), "1+t+t^3 irreducible");
  o.require(rings::poly::reciprocal(f) == rings::parse_poly(F2, "1+t^2+t^3"), "f_r = 1+t^2+t^3");
  o.require(rings::poly::reciprocal(f) != f, "f_r != f");
  o.require(rings::poly::is_self_reciprocal(rings::parse_poly(F2, "1+t+t^2")), "1+t+t^2 self-reciprocal");
  o.note << "f = 1+t+t^3, f_r = " << rings::poly::to_string(*F2, rings::poly::reciprocal(f));
}

// 6
void ring_aut_search(Outcome& o) {
  const auto t0 = Clock::now();
  const auto rf = rings::ring_aut_search(parse_ring("R_f"), 5);
  o.require(rf.size() == 1 && rf[0].kind == rings::RingAutKind::identity, "R_f: identity only");
  const Ring ctl = parse_ring("F_2[t,t^-1,(t^2+t+1)^-1]");
  const auto found = rings::ring_aut_search(ctl, 5);
  bool inversion = false;
  for (const auto& a : found) inversion |= rings::apply_ring_aut(a, rings::variable(ctl)) == parse_element(ctl, "t^-1");
  o.require(found.size() >= 2 && inversion, "control contains t -> t^-1");
  const double s = since(t0);
  o.require(s < 30.0, "runtime under 30 s");
  o.note << "R_f survivors " << rf.size() << ", control survivors " << found.size() << ", " << s << " s";
}

// 7
void fixed_families(Outcome& o) {
  Rng rng(default_seed);
  const Ring z = parse_ring("Z"), q2 = parse_ring("Z[sqrt(2)]");
  int certs = 0;
  for (int eps : {0, 1}) {
    std::vector<RingElement> dc{rings::random_unit(z, rng), rings::one(z), rings::one(z), rings::random_unit(z, rng)};
    const auto c = twisted::fix_family_certify(4, IndexSet(4, {2, 3}), z, eps, rings::RingAutomorphism::identity(), dc, 100);
    o.require(c.verified == 100, "Z eps=" + std::to_string(eps));
    o.require(c.fingen.finitely_generated && !c.fingen.condition.empty(), "Z fingen recorded");
    std::vector<RingElement> dq(4, rings::one(q2));
    dq.push_back(rings::random_unit(q2, rng));
    const auto c2 = twisted::fix_family_certify(5, IndexSet(5, {1, 2, 3, 4}), q2, eps,
                                                rings::RingAutomorphism::quadratic_conjugation(), dq, 100);
    o.require(c2.verified == 100, "Z[sqrt(2)] eps=" + std::to_string(eps));
    o.require(c2.to_json().contains("finitely_generated"), "Z[sqrt(2)] fingen recorded");
    certs += 2;
  }
  o.note << certs << " certificates with 100/100";
}

// 8
void sharpness(Outcome& o) {
  const auto t0 = Clock::now();
  Rng rng(default_seed);
  const Ring z = parse_ring("Z"), z6 = parse_ring("Z[1/6]");
  const IndexSet ix(3, {2});
  const auto a = automorphisms::verify_homomorphism(automorphisms::abels3_phi(z), ix, z, 500, rng);
  o.require(a.ok && a.samples >= 500, "abels3_phi over Z");
  const auto b = automorphisms::verify_homomorphism(automorphisms::abels3_phi_v(z6, parse_element(z6, "2")), ix, z6, 500, rng);
  o.require(b.ok && b.samples >= 500, "abels3_phi_v(2) over Z[1/6]");
  for (const char* u : {"1", "-1"}) {
    const auto rep = twisted::fix_trivial_box_search(twisted::abels3_psi(z, parse_element(z, u)), z, twisted::BoxBounds{20, 1, 2});
    o.require(rep.fixed_points.size() == 1 && rep.fixed_points[0].is_identity(), std::string("Fix(psi_d2(") + u + ")) = 1");
    o.require(rep.points_searched == 41u * 41u * 41u, "full box searched");
  }
  const double s = since(t0);
  o.require(s < 60.0, "runtime under 60 s");
  o.note << "box 41^3 per map, " << s << " s";
}

// 9
void reidemeister_oracles(Outcome& o) {
  const Ring f2 = parse_ring("F_2"), f3 = parse_ring("F_3");
  const MatrixGroup s4(IndexSet(4, {2, 3}), f2, QuotientKind::none);
  const auto r_id = twisted::reidemeister_classes_finite(s4, groups::identity_perm(s4)).count;
  const auto classes = class_count_by_orbits(s4);
  o.require(s4.order() == 64 && r_id == classes, "R(id) = class number");
  const auto z4 = TableGroup::cyclic(4), z5 = TableGroup::cyclic(5);
  o.require(twisted::reidemeister_classes_finite(z4, negation(4)).count == 2, "Z/4");
  o.require(twisted::reidemeister_classes_finite(z5, negation(5)).count == 1, "Z/5");

  struct Ex {
    std::shared_ptr<groups::FiniteGroup> G;
    Perm phi;
  };
  std::vector<Ex> ex;
  auto z4p = std::make_shared<TableGroup>(z4);
  auto z5p = std::make_shared<TableGroup>(z5);
  ex.push_back({z4p, negation(4)});
  ex.push_back({z5p, negation(5)});
  auto s4p = std::make_shared<MatrixGroup>(IndexSet(4, {2, 3}), f2, QuotientKind::none);
  ex.push_back({s4p, groups::identity_perm(*s4p)});
  auto u4 = std::make_shared<MatrixGroup>(IndexSet::empty(4), f2, QuotientKind::none);
  ex.push_back({u4, induced_flip(*u4, groups::QuotientSpec::none())});
  auto a4 = std::make_shared<MatrixGroup>(IndexSet(4, {2, 3}), f3, QuotientKind::mod_commutator_u);
  ex.push_back({a4, induced_flip(*a4, groups::QuotientSpec::mod_commutator_u())});
  auto s3 = std::make_shared<MatrixGroup>(IndexSet(3, {2}), f3, QuotientKind::none);
  ex.push_back({s3, automorphisms::to_perm(automorphisms::abels3_phi(f3), *s3)});

  Rng rng(default_seed);
  for (const auto& e : ex) {
    const auto base = twisted::reidemeister_classes_finite(*e.G, e.phi).count;
    for (int k = 0; k < 20; ++k) {
      const Elem g = static_cast<Elem>(rng() % e.G->order());
      o.require(twisted::reidemeister_classes_finite(*e.G, groups::compose_perm(groups::inner_perm(*e.G, g), e.phi)).count == base,
                "inner twist on " + e.G->describe());
    }
  }

  // quotient monotonicity
  int triples = 0;
  for (const auto& [ix, f] : {std::pair{IndexSet::empty(4), f2}, std::pair{IndexSet(4, {2, 3}), f2}, std::pair{IndexSet::empty(4), f3}}) {
    const MatrixGroup G(ix, f, QuotientKind::none);
    const Elem center = G.encode(groups::elementary(ix, f, 1, 4, rings::one(f)));
    std::vector<Elem> comm;
    for (auto [i, j] : {std::pair{1, 3}, {2, 4}, {1, 4}}) comm.push_back(G.encode(groups::elementary(ix, f, i, j, rings::one(f))));
    const Perm tau = induced_flip(G, groups::QuotientSpec::none());
    for (const auto& phi : {groups::identity_perm(G), tau})
      for (const auto& N : {std::vector<Elem>{center}, comm}) {
        const auto r = twisted::reidemeister_classes_finite(G, phi).count;
        o.require(twisted::reidemeister_lower_bound_via_quotient(G, N, phi) <= r, "monotonicity on " + G.describe());
        ++triples;
      }
  }
  o.require(triples >= 5, "at least 5 triples");
  o.note << "R(id) = " << r_id << " on 64 elements (orbit count " << classes << "), " << ex.size()
         << " examples x 20 inner twists, " << triples << " quotient triples";
}

// 10
void superdiagonal(Outcome& o) {
  const auto t0 = Clock::now();
  const MatrixGroup G(IndexSet(4, {2, 3}), parse_ring("F_3"), QuotientKind::mod_commutator_u);
  o.require(G.order() == 108, "108 elements");
  const auto auts = twisted::enumerate_automorphisms_small(G);
  std::size_t ok = 0, middle = 0;
  for (const auto& a : auts)
    if (const auto form = automorphisms::check_superdiagonal_form(G, a)) {
      ++ok;
      if (form->fixes_middle_slot(4)) ++middle;
    }
  const double s = since(t0);
  o.require(!auts.empty() && ok == auts.size(), "every automorphism superdiagonal");
  o.require(s < 600.0, "runtime under 10 minutes");
  o.note << auts.size() << " automorphisms, " << ok << " superdiagonal, " << s << " s; recorded: " << middle << "/"
         << auts.size() << " fix slot (2,3) on the mod-commutator quotient";
}

// 11
void determinism(Outcome& o) {
  const std::vector<std::vector<std::string>> cmds{
      {"verify-relations", "--ring", "R_f", "--n", "5", "--samples", "50"},
      {"reidemeister", "--ring", "F_2", "--n", "4", "--set-i", "2,3"},
      {"fix-family", "--ring", "Z[sqrt(2)]", "--n", "5", "--set-i", "1,2,3,4", "--alpha", "quad_conj", "--count", "30"},
      {"ring-aut-search", "--ring", "F_2[t,t^-1,(t^2+t+1)^-1]", "--bound", "3"},
      {"fingen-table"},
      {"box-search", "--ring", "Z", "--bound", "5"},
      {"aut-enum"},
  };
  const auto root = std::filesystem::temp_directory_path() / "twistmat_acceptance";
  int compared = 0;
  for (const auto& c : cmds) {
    std::string first_json, first_csv;
    for (int rep = 0; rep < 2; ++rep) {
      const auto dir = root / std::to_string(rep);
      std::filesystem::remove_all(dir);
      auto args = c;
      args.insert(args.end(), {"--out-dir", dir.string()});
      std::ostringstream out, err;
      const int st = cli::run(args, out, err);
      o.require(st == 0, c[0] + " exit status " + std::to_string(st) + " " + err.str());
      const auto js = slurp(dir / (c[0] + ".json")), cs = slurp(dir / (c[0] + ".csv"));
      if (rep == 0) {
        first_json = js;
        first_csv = cs;
      } else {
        o.require(!js.empty() && js == first_json && cs == first_csv, c[0] + " byte-identical");
        ++compared;
      }
    }
  }
  std::filesystem::remove_all(root);
  o.note << compared << " commands re-run, JSON and CSV compared byte for byte";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"relation suite", relation_suite},
      {"flip", flip_checks},
      {"iterated commutator closed form", iterated_commutators},
      {"finite-generation table", fingen_table},
      {"reciprocal and irreducibility", reciprocals},
      {"ring automorphism search", ring_aut_search},
      {"fixed families", fixed_families},
      {"dimension 3 sharpness", sharpness},
      {"finite Reidemeister oracles", reidemeister_oracles},
      {"superdiagonal form on the abelianized quotient", superdiagonal},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (k + 1) << " " << criteria[k].first << ": " << o.note.str()
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
