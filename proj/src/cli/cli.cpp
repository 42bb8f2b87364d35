#include "twistmat/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <map>
#include <fstream>
#include <sstream>

#include "twistmat/automorphism.hpp"
#include "twistmat/errors.hpp"
#include "twistmat/finite_group.hpp"
#include "twistmat/ring_aut.hpp"
#include "twistmat/ring_parse.hpp"
#include "twistmat/structure.hpp"
#include "twistmat/twisted.hpp"

namespace twistmat::cli {

using json = nlohmann::json;
using automorphisms::Automorphism;
using groups::IndexSet;
using groups::QuotientSpec;
using rings::Ring;
using rings::RingElement;

namespace {

const std::map<std::string, std::string> summaries{
    {"verify-relations", "check the defining relations on random elements"},
    {"reidemeister", "twisted conjugacy classes of a finite group"},
    {"fix-family", "certify an infinite fixed family on U/U'"},
    {"ring-aut-search", "bounded search for automorphisms of F_p[t,t^-1,f^-1]"},
    {"fingen-table", "finite generation verdicts over all index sets"},
    {"box-search", "fixed points of the dimension 3 maps in a coordinate box"},
    {"aut-enum", "all automorphisms of a small finite quotient"},
};
const std::vector<std::string> commands{"verify-relations", "reidemeister", "fix-family", "ring-aut-search",
                                        "fingen-table",     "box-search",   "aut-enum"};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

std::vector<int> parse_index_list(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '{' && t.back() == '}') t = t.substr(1, t.size() - 2);
  if (t.empty() || t == "none") return {};
  std::vector<int> out;
  for (const auto& part : split(t, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(trim(part), &pos);
      if (pos != trim(part).size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse_error, "cannot read index \"" + part + "\"");
    }
  }
  return out;
}

json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string(what) + " is not valid JSON: " + e.what());
  }
}

// Accepts JSON or a bare word.
json loose_json(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && (t.front() == '{' || t.front() == '[' || t.front() == '"')) return parse_json_text(t, "value");
  return json(t);
}

IndexSet index_set(const ExperimentConfig& c) {
  if (c.n < 2) throw Error(ErrorCode::invalid_spec, "n must be at least 2");
  return c.set_i ? IndexSet(c.n, *c.set_i) : IndexSet::all(c.n);
}

Ring ring_or(const ExperimentConfig& c, const char* fallback) { return rings::parse_ring(c.ring.empty() ? fallback : c.ring); }

Automorphism parse_aut(const ExperimentConfig& c, const IndexSet& ix, const Ring& r) {
  if (trim(c.aut).empty()) return Automorphism{};
  return automorphisms::automorphism_from_json(parse_json_text(c.aut, "--aut"), ix, r);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// ---------------------------------------------------------------------------

Report cmd_verify_relations(const ExperimentConfig& c) {
  const Ring r = ring_or(c, "Z");
  const IndexSet ix = index_set(c);
  Rng rng(c.seed);
  const auto rep = groups::verify_relations(r, ix, c.samples, rng);
  Report out;
  out.ok = rep.all_passed();
  out.json = {{"ring", r->name()}, {"n", c.n}, {"I", ix.to_string()}, {"relations", rep.to_json()}, {"all_passed", out.ok}};
  out.json["summary"] = std::string(out.ok ? "all relations hold" : "relation failure") + " on " + std::to_string(c.samples) +
                        " samples";
  out.csv_header = {"ring", "n", "I", "relation", "samples", "failures", "passed"};
  for (const auto& x : rep.relations)
    out.csv_rows.push_back({r->name(), std::to_string(c.n), ix.to_string(), x.name, std::to_string(x.samples),
                            std::to_string(x.failures), x.failures ? "false" : "true"});
  return out;
}

Report cmd_reidemeister(const ExperimentConfig& c) {
  const Ring r = ring_or(c, "F_2");
  const IndexSet ix = index_set(c);
  const QuotientSpec q = groups::parse_quotient(loose_json(c.quotient), r);
  groups::require_compatible(q, ix);
  Automorphism phi = parse_aut(c, ix, r);
  const bool identity = phi.atoms().empty();
  Ring field = r;
  groups::QuotientKind kind = q.element_kind();
  if (q.kind == QuotientSpec::Kind::mod_ideal) field = q.reduction->target();
  if (!field->is_finite()) throw Error(ErrorCode::invalid_spec, "reidemeister needs a finite field or a mod_ideal quotient");
  if (q.kind != QuotientSpec::Kind::none) phi = automorphisms::induce_on_quotient(phi, ix, r, q);
  const groups::MatrixGroup G(ix, field, kind);
  const auto perm = automorphisms::to_perm(phi, G);
  const auto rep = twisted::reidemeister_classes_finite(G, perm, phi.describe());
  const auto fixed = twisted::fixed_points_finite(G, perm);

  Report out;
  out.json = rep.to_json();
  out.json["fixed_points"] = fixed.size();
  std::string summary = G.describe() + ": R = " + std::to_string(rep.count);
  if (identity) {
    const std::size_t k = twisted::commuting_pair_class_count(G);
    out.json["conjugacy_classes_by_commuting_pairs"] = k;
    out.json["cross_check"] = k == rep.count;
    out.ok = k == rep.count;
    summary += out.ok ? " (matches conjugacy class count)" : " (MISMATCH with conjugacy class count " + std::to_string(k) + ")";
  }
  out.json["summary"] = summary;
  out.csv_header = {"group", "order", "automorphism", "R", "fixed_points"};
  out.csv_rows.push_back({G.describe(), std::to_string(G.order()), phi.describe(), std::to_string(rep.count),
                          std::to_string(fixed.size())});
  return out;
}

Report cmd_fix_family(const ExperimentConfig& c) {
  const Ring r = ring_or(c, "Z");
  const IndexSet ix = index_set(c);
  const auto alpha = rings::RingAutomorphism::from_json(loose_json(c.alpha));
  std::vector<RingElement> dc;
  if (!trim(c.dc).empty()) {
    for (const auto& part : split(c.dc, ',')) dc.push_back(rings::parse_element(r, trim(part)));
  } else {
    Rng rng(c.seed);
    rings::RandomParams params;
    params.exponent = 2;
    for (int i = 1; i <= c.n; ++i) dc.push_back(ix.contains(i) ? rings::one(r) : rings::random_unit(r, rng, params));
  }
  const auto cert = twisted::fix_family_certify(c.n, ix, r, c.epsilon, alpha, dc, c.count);
  Report out;
  out.json = cert.to_json();
  out.json["summary"] = std::to_string(cert.verified) + "/" + std::to_string(cert.requested) + " parameters fixed";
  std::vector<std::string> d;
  for (const auto& x : dc) d.push_back(x.to_string());
  out.csv_header = {"ring", "n", "I", "epsilon", "alpha", "d_c", "verified", "requested", "finitely_generated", "condition"};
  out.csv_rows.push_back({r->name(), std::to_string(c.n), ix.to_string(), std::to_string(c.epsilon), alpha.to_string(),
                          join(d, ";"), std::to_string(cert.verified), std::to_string(cert.requested),
                          cert.fingen.finitely_generated ? "true" : "false", cert.fingen.condition});
  return out;
}

Report cmd_ring_aut_search(const ExperimentConfig& c) {
  const Ring r = ring_or(c, "R_f");
  const long bound = c.bound < 0 ? 5 : c.bound;
  const auto found = rings::ring_aut_search(r, bound, c.seed);
  Report out;
  json list = json::array();
  out.csv_header = {"ring", "bound", "index", "automorphism"};
  for (std::size_t i = 0; i < found.size(); ++i) {
    list.push_back({{"descriptor", found[i].to_json()}, {"text", found[i].to_string()}});
    out.csv_rows.push_back({r->name(), std::to_string(bound), std::to_string(i), found[i].to_string()});
  }
  out.json = {{"ring", r->name()}, {"bound", bound}, {"survivors", list}, {"count", found.size()}};
  out.json["summary"] = std::to_string(found.size()) + " surviving automorphism(s) of " + r->name();
  return out;
}

Report cmd_fingen_table(const ExperimentConfig& c) {
  const std::string spec = c.ring.empty() ? "Z;F_2[t];F_2[t,t^-1];R_f" : c.ring;
  Report out;
  out.csv_header = {"ring", "I", "finitely_generated", "condition", "reason"};
  json rows = json::array();
  std::size_t yes = 0;
  for (const auto& name : split(spec, ';')) {
    const Ring r = rings::parse_ring(trim(name));
    for (unsigned mask = 0; mask < (1u << c.n); ++mask) {
      std::vector<int> members;
      for (int i = 1; i <= c.n; ++i)
        if (mask & (1u << (i - 1))) members.push_back(i);
      const IndexSet ix(c.n, members);
      const auto res = groups::is_finitely_generated(r, ix);
      yes += res.finitely_generated;
      rows.push_back({{"ring", r->name()},
                      {"I", ix.to_string()},
                      {"finitely_generated", res.finitely_generated},
                      {"condition", res.condition},
                      {"reason", res.reason}});
      out.csv_rows.push_back({r->name(), ix.to_string(), res.finitely_generated ? "yes" : "no", res.condition, res.reason});
    }
  }
  out.json = {{"n", c.n}, {"rows", rows}};
  out.json["summary"] = std::to_string(out.csv_rows.size()) + " rows, " + std::to_string(yes) + " finitely generated";
  return out;
}

Report cmd_box_search(const ExperimentConfig& c) {
  const Ring r = ring_or(c, "Z");
  const IndexSet ix(3, {2});
  twisted::BoxBounds b;
  b.height = static_cast<int>(c.bound < 0 ? 20 : c.bound);
  b.exponent = c.exponent;
  b.degree = c.degree;
  std::vector<Automorphism> maps;
  if (!trim(c.aut).empty()) {
    maps.push_back(parse_aut(c, ix, r));
  } else {
    maps.push_back(twisted::abels3_psi(r, rings::one(r)));
    maps.push_back(twisted::abels3_psi(r, -rings::one(r)));
  }
  Report out;
  json reports = json::array();
  out.csv_header = {"ring", "automorphism", "bound", "points_searched", "fixed_points", "only_identity"};
  std::vector<std::string> parts;
  for (const auto& phi : maps) {
    const auto rep = twisted::fix_trivial_box_search(phi, r, b);
    const bool only_id = rep.fixed_points.size() == 1 && rep.fixed_points[0].is_identity();
    json j = rep.to_json();
    j["only_identity"] = only_id;
    reports.push_back(j);
    out.csv_rows.push_back({r->name(), rep.automorphism, std::to_string(b.height), std::to_string(rep.points_searched),
                            std::to_string(rep.fixed_points.size()), only_id ? "true" : "false"});
    parts.push_back(std::to_string(rep.fixed_points.size()));
  }
  out.json = {{"searches", reports}};
  out.json["summary"] = "fixed point counts: " + join(parts, ", ");
  return out;
}

Report cmd_aut_enum(const ExperimentConfig& c) {
  const Ring r = ring_or(c, "F_3");
  const IndexSet ix = c.set_i ? IndexSet(c.n, *c.set_i) : IndexSet(c.n, c.n == 4 ? std::vector<int>{2, 3} : std::vector<int>{});
  const QuotientSpec q = groups::parse_quotient(loose_json(c.quotient == "none" ? "mod_commutator_u" : c.quotient), r);
  if (q.kind == QuotientSpec::Kind::mod_ideal) throw Error(ErrorCode::invalid_spec, "aut-enum needs a finite field ring");
  groups::require_compatible(q, ix);
  if (!r->is_finite()) throw Error(ErrorCode::invalid_spec, "aut-enum needs a finite field ring");
  const groups::MatrixGroup G(ix, r, q.element_kind(), c.limit);
  const auto auts = twisted::enumerate_automorphisms_small(G, c.limit);
  const auto gens = twisted::irredundant_generators(G);
  const bool commutator = q.kind == QuotientSpec::Kind::mod_commutator_u;

  Report out;
  json list = json::array();
  std::size_t superdiagonal = 0, middle_fixed = 0;
  out.csv_header = {"group", "index", "generator_images", "superdiagonal", "sigma", "fixes_middle"};
  for (std::size_t k = 0; k < auts.size(); ++k) {
    std::vector<std::string> images;
    for (auto s : gens) images.push_back(std::to_string(auts[k][s]));
    json j{{"index", k}, {"generator_images", images}};
    std::string sigma = "", fixes = "";
    if (commutator) {
      const auto form = automorphisms::check_superdiagonal_form(G, auts[k]);
      j["superdiagonal"] = form.has_value();
      if (form) {
        ++superdiagonal;
        j["sigma"] = form->sigma;
        const bool mid = form->fixes_middle_slot(c.n);
        middle_fixed += mid;
        j["fixes_middle"] = mid;
        for (std::size_t i = 0; i < form->sigma.size(); ++i) sigma += (i ? " " : "") + std::to_string(form->sigma[i]);
        fixes = mid ? "true" : "false";
      }
    }
    list.push_back(j);
    out.csv_rows.push_back({G.describe(), std::to_string(k), join(images, " "),
                            commutator ? (j["superdiagonal"].get<bool>() ? "true" : "false") : "", sigma, fixes});
  }
  std::vector<std::string> gl;
  for (auto s : gens) gl.push_back(std::to_string(s) + " = " + G.label(s));
  out.json = {{"group", G.describe()}, {"order", G.order()}, {"generators", gl}, {"automorphisms", list}, {"count", auts.size()}};
  std::string summary = std::to_string(auts.size()) + " automorphisms of " + G.describe();
  if (commutator) {
    out.ok = superdiagonal == auts.size();
    out.json["superdiagonal_all"] = out.ok;
    out.json["middle_slot_fixed"] = middle_fixed;
    out.json["middle_slot_moved"] = auts.size() - middle_fixed;
    summary += "; superdiagonal form " + std::to_string(superdiagonal) + "/" + std::to_string(auts.size()) +
               "; middle slot fixed by " + std::to_string(middle_fixed);
  }
  out.json["summary"] = summary;
  return out;
}

std::vector<std::string> anchors(const std::string& cmd) {
  if (cmd == "verify-relations")
    return {"diagonal matrices multiply entrywise and commute", "e_ij(r) e_ij(s) = e_ij(r+s)",
            "commutators of elementary matrices", "diagonal conjugation scales e_ij(r) by u_i/u_j"};
  if (cmd == "reidemeister") return {"twisted conjugacy g ~ x g phi(x)^-1", "R(phi) counts twisted classes"};
  if (cmd == "fix-family")
    return {"e_12(s) e_{n-1,n}(s) fixed modulo U'", "infinitely many fixed points force R(phi) = infinity (Jabara)"};
  if (cmd == "ring-aut-search") return {"Aut(F_2[t,t^-1,f^-1]) = {id} for f = t^3+t+1"};
  if (cmd == "fingen-table")
    return {"finitely generated iff (R,+) f.g., or U(R) f.g., R f.g. over U(R) and (NG)"};
  if (cmd == "box-search") return {"Fix(psi) = 1 for psi = iota_{d_2(+-1)} o phi on S_3^{2}(Z)"};
  return {"automorphisms of the abelianised quotient permute superdiagonal slots"};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_spec, "cannot write " + p.string());
  f << text;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::parse_error:
    case ErrorCode::invalid_spec:
    case ErrorCode::spec_mismatch:
    case ErrorCode::unsupported_spec:
    case ErrorCode::incompatible_quotient:
    case ErrorCode::index_out_of_pattern:
    case ErrorCode::denominator_not_invertible:
    case ErrorCode::ideal_not_coprime:
      return 2;
    default:
      return 1;
  }
}

void overlay(ExperimentConfig& c, const json& j) {
  auto str = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, v] : j.items()) {
    if (key == "ring") c.ring = str(v);
    else if (key == "n") c.n = v.get<int>();
    else if (key == "set_i") c.set_i = v.is_array() ? v.get<std::vector<int>>() : parse_index_list(v.get<std::string>());
    else if (key == "quotient") c.quotient = str(v);
    else if (key == "aut") c.aut = str(v);
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "samples") c.samples = v.get<int>();
    else if (key == "bound") c.bound = v.get<long>();
    else if (key == "count") c.count = v.get<int>();
    else if (key == "epsilon") c.epsilon = v.get<int>();
    else if (key == "alpha") c.alpha = str(v);
    else if (key == "dc") c.dc = str(v);
    else if (key == "exponent") c.exponent = v.get<int>();
    else if (key == "degree") c.degree = v.get<int>();
    else if (key == "limit") c.limit = v.get<std::size_t>();
    else if (key == "out_dir") c.out_dir = v.get<std::string>();
    else if (key == "format") c.format = v.get<std::string>();
    else if (key == "record_time") c.record_time = v.get<bool>();
    else if (key == "command") continue;
    else throw Error(ErrorCode::parse_error, "unknown config key \"" + key + "\"");
  }
}

}  // namespace

json ExperimentConfig::to_json() const {
  json j{{"command", command}, {"ring", ring},        {"n", n},           {"quotient", quotient}, {"aut", aut},
         {"seed", seed},       {"samples", samples},  {"bound", bound},   {"count", count},       {"epsilon", epsilon},
         {"alpha", alpha},     {"dc", dc},            {"exponent", exponent}, {"degree", degree}, {"limit", limit},
         {"format", format}};
  j["set_i"] = set_i ? json(*set_i) : json(nullptr);
  return j;
}

std::string Report::csv() const {
  std::ostringstream s;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << csv_field(row[i]);
    s << '\n';
  };
  line(csv_header);
  for (const auto& r : csv_rows) line(r);
  return s.str();
}

Report execute(const ExperimentConfig& c) {
  if (c.command == "verify-relations") return cmd_verify_relations(c);
  if (c.command == "reidemeister") return cmd_reidemeister(c);
  if (c.command == "fix-family") return cmd_fix_family(c);
  if (c.command == "ring-aut-search") return cmd_ring_aut_search(c);
  if (c.command == "fingen-table") return cmd_fingen_table(c);
  if (c.command == "box-search") return cmd_box_search(c);
  if (c.command == "aut-enum") return cmd_aut_enum(c);
  throw Error(ErrorCode::parse_error, "unknown command \"" + c.command + "\"");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in soluble matrix groups and their twisted conjugacy classes", "twistmat"};
  app.set_version_flag("--version", std::string(TWISTMAT_VERSION));
  app.require_subcommand(1);

  ExperimentConfig flags;
  std::string set_i, config_path;
  struct Sub {
    CLI::App* app;
  };
  std::vector<Sub> subs;
  for (const auto& name : commands) {
    CLI::App* s = app.add_subcommand(name, summaries.at(name));
    s->add_option("--config", config_path, "JSON config file; flags override its keys");
    s->add_option("--ring", flags.ring, "ring name or JSON");
    s->add_option("--n", flags.n, "matrix size");
    s->add_option("--set-i", set_i, "index set I as a comma list (empty or 'none' for the empty set)");
    s->add_option("--quotient", flags.quotient, "none, mod_commutator_u, mod_center_u4 or a mod_ideal JSON object");
    s->add_option("--aut", flags.aut, "automorphism as a JSON array of atoms");
    s->add_option("--seed", flags.seed, "random seed");
    s->add_option("--samples", flags.samples, "random samples per relation");
    s->add_option("--bound", flags.bound, "search bound");
    s->add_option("--count", flags.count, "number of parameters to certify");
    s->add_option("--epsilon", flags.epsilon, "flip exponent, 0 or 1");
    s->add_option("--alpha", flags.alpha, "ring automorphism descriptor");
    s->add_option("--dc", flags.dc, "comma list of the diagonal d_c");
    s->add_option("--exponent", flags.exponent, "box bound on exponents of inverted generators");
    s->add_option("--degree", flags.degree, "box bound on numerator degree");
    s->add_option("--limit", flags.limit, "automorphism enumeration limit");
    s->add_option("--out-dir", flags.out_dir, "directory for report files");
    s->add_option("--format", flags.format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
    s->add_flag("--record-time", flags.record_time, "embed the wall time in the report");
    subs.push_back({s});
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = nullptr;
    for (const auto& s : subs)
      if (s.app->parsed()) sub = s.app;
    ExperimentConfig cfg;
    cfg.command = sub->get_name();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw Error(ErrorCode::parse_error, "cannot read config " + config_path);
      std::stringstream ss;
      ss << f.rdbuf();
      overlay(cfg, parse_json_text(ss.str(), "config"));
    }
    auto given = [&](const char* opt) { return sub->count(opt) > 0; };
    if (given("--ring")) cfg.ring = flags.ring;
    if (given("--n")) cfg.n = flags.n;
    if (given("--set-i")) cfg.set_i = parse_index_list(set_i);
    if (given("--quotient")) cfg.quotient = flags.quotient;
    if (given("--aut")) cfg.aut = flags.aut;
    if (given("--seed")) cfg.seed = flags.seed;
    if (given("--samples")) cfg.samples = flags.samples;
    if (given("--bound")) cfg.bound = flags.bound;
    if (given("--count")) cfg.count = flags.count;
    if (given("--epsilon")) cfg.epsilon = flags.epsilon;
    if (given("--alpha")) cfg.alpha = flags.alpha;
    if (given("--dc")) cfg.dc = flags.dc;
    if (given("--exponent")) cfg.exponent = flags.exponent;
    if (given("--degree")) cfg.degree = flags.degree;
    if (given("--limit")) cfg.limit = flags.limit;
    if (given("--out-dir")) cfg.out_dir = flags.out_dir;
    if (given("--format")) cfg.format = flags.format;
    if (given("--record-time")) cfg.record_time = flags.record_time;

    const auto start = std::chrono::steady_clock::now();
    Report rep = execute(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json doc{{"tool", "twistmat"},
             {"version", TWISTMAT_VERSION},
             {"command", cfg.command},
             {"seed", cfg.seed},
             {"config", cfg.to_json()},
             {"anchors", anchors(cfg.command)},
             {"status", rep.ok ? "ok" : "failed"},
             {"result", rep.json}};
    if (cfg.record_time) doc["wall_time_s"] = seconds;

    if (!cfg.out_dir.empty()) {
      std::filesystem::create_directories(cfg.out_dir);
      const std::filesystem::path base = std::filesystem::path(cfg.out_dir) / cfg.command;
      if (cfg.format != "csv") write_file(base.string() + ".json", doc.dump(2) + "\n");
      if (cfg.format != "json") write_file(base.string() + ".csv", rep.csv());
      out << cfg.command << ": " << rep.json.value("summary", std::string()) << (rep.ok ? "" : " [FAILED]") << "\n";
    } else if (cfg.format == "csv") {
      out << rep.csv();
    } else {
      out << doc.dump(2) << "\n";
    }
    return rep.ok ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace twistmat::cli
