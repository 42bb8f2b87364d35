#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "twistmat/cli.hpp"

using namespace twistmat;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int st = cli::run(args, out, err);
  return {st, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (quoted) {
      if (c == '"' && k + 1 < text.size() && text[k + 1] == '"') {
        field += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n') {
      row.push_back(field);
      field.clear();
      rows.push_back(row);
      row.clear();
    } else {
      field += c;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("twistmat_test_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("fingen table matches the gold file") {
  const auto r = run({"fingen-table", "--format", "csv"});
  REQUIRE(r.status == 0);
  const auto got = parse_csv(r.out);
  const auto gold = parse_csv(slurp(std::filesystem::path(TWISTMAT_TEST_DATA) / "fingen_gold.csv"));
  REQUIRE(got.size() == 65);
  REQUIRE(gold.size() == 65);
  for (std::size_t k = 1; k < gold.size(); ++k) {
    CAPTURE(k);
    CHECK(got[k][0] == gold[k][0]);
    CHECK(got[k][1] == gold[k][1]);
    CHECK(got[k][2] == gold[k][2]);
    CHECK(got[k][3] == gold[k][3]);
    const std::string& clause = gold[k][4];
    const std::string& reason = got[k][4];
    if (clause.rfind("NG i=", 0) == 0)
      CHECK(reason.find("(NG) fails at i=" + clause.substr(5)) != std::string::npos);
    else if (clause == "module")
      CHECK(reason.find("not f.g. over U(R)") != std::string::npos);
    else if (clause.empty())
      CHECK(reason.find("fails") == std::string::npos);
  }
}

TEST_CASE("report envelope and exit codes") {
  const auto r = run({"reidemeister", "--ring", "F_2", "--n", "4", "--set-i", "2,3"});
  REQUIRE(r.status == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["tool"] == "twistmat");
  CHECK(doc["command"] == "reidemeister");
  CHECK(doc["status"] == "ok");
  CHECK(doc["result"]["R"] == 16);
  CHECK_FALSE(doc.contains("wall_time_s"));
  CHECK(doc["anchors"].is_array());

  CHECK(run({"reidemeister", "--ring", "Q"}).status == 2);
  CHECK(run({"no-such-command"}).status == 2);
  CHECK(run({"reidemeister", "--n", "x"}).status == 2);
  CHECK(run({"reidemeister", "--ring", "F_2", "--quotient", "mod_center_u4", "--n", "5"}).status == 2);
  // enumeration limit exceeded
  CHECK(run({"reidemeister", "--ring", "F_7", "--n", "6"}).status == 1);
  // (NG) fails
  CHECK(run({"fix-family", "--ring", "Z", "--n", "4", "--set-i", "2", "--count", "3"}).status == 1);

  const auto timed = run({"fingen-table", "--ring", "Z", "--record-time"});
  REQUIRE(timed.status == 0);
  CHECK(json::parse(timed.out).contains("wall_time_s"));
}

TEST_CASE("config files and flag precedence") {
  const auto dir = scratch("config");
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"ring":"F_3","n":3,"set_i":[2],"seed":7})";
  const auto a = run({"reidemeister", "--config", cfg.string()});
  REQUIRE(a.status == 0);
  const auto ja = json::parse(a.out);
  CHECK(ja["config"]["ring"] == "F_3");
  CHECK(ja["seed"] == 7);
  const auto b = run({"reidemeister", "--config", cfg.string(), "--ring", "F_2"});
  REQUIRE(b.status == 0);
  CHECK(json::parse(b.out)["config"]["ring"] == "F_2");
  std::ofstream(dir / "bad.json") << R"({"rings":"F_3"})";
  CHECK(run({"reidemeister", "--config", (dir / "bad.json").string()}).status == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::vector<std::string>> cmds{
      {"verify-relations", "--ring", "Z[1/6]", "--n", "4", "--samples", "50"},
      {"reidemeister", "--ring", "F_3", "--n", "4", "--set-i", "2,3", "--quotient", "mod_commutator_u", "--aut",
       R"([{"atom":"flip"}])"},
      {"fix-family", "--ring", "Z", "--n", "4", "--set-i", "2,3", "--epsilon", "1", "--count", "20"},
      {"ring-aut-search", "--ring", "R_f", "--bound", "2"},
      {"box-search", "--ring", "Z", "--bound", "3"},
  };
  for (const auto& c : cmds) {
    const auto d1 = scratch("det1"), d2 = scratch("det2");
    auto a1 = c, a2 = c;
    a1.insert(a1.end(), {"--out-dir", d1.string()});
    a2.insert(a2.end(), {"--out-dir", d2.string()});
    CAPTURE(c[0]);
    REQUIRE(run(a1).status == 0);
    REQUIRE(run(a2).status == 0);
    for (const char* ext : {".json", ".csv"}) {
      const auto f1 = d1 / (c[0] + ext), f2 = d2 / (c[0] + ext);
      REQUIRE(std::filesystem::exists(f1));
      CHECK(slurp(f1) == slurp(f2));
    }
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
  }
}

TEST_CASE("binary entry point") {
  const auto dir = scratch("bin");
  const std::string cmd = std::string(TWISTMAT_CLI_PATH) + " fingen-table --ring Z --out-dir " + dir.string() +
                          " > " + (dir.string() + ".log");
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(std::filesystem::exists(dir / "fingen-table.json"));
  const auto rows = parse_csv(slurp(dir / "fingen-table.csv"));
  CHECK(rows.size() == 17);
  const std::string bad = std::string(TWISTMAT_CLI_PATH) + " reidemeister --ring Q 2> /dev/null";
  const int st = std::system(bad.c_str());
  CHECK(WEXITSTATUS(st) == 2);
  std::filesystem::remove_all(dir);
  std::filesystem::remove(dir.string() + ".log");
}
