#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "jets/cli.hpp"
#include "jets/error.hpp"
#include "jets/jet_presentation.hpp"

using namespace jets;

namespace {

const std::string kData = JETS_TEST_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "jetcalc");
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string temp_document(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "jetcalc_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);)
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

}  // namespace

TEST_CASE("jet presentations") {
  const auto cusp2 = run({"jet", data("cusp.json"), "-m", "2"});
  CHECK(cusp2.code == cli::exit_ok);
  CHECK(cusp2.out.find("-x^3 + y^2") != std::string::npos);
  CHECK(cusp2.out.find("-3*x^2*d1x + 2*y*d1y") != std::string::npos);
  CHECK(cusp2.out.find("-3*x*(d1x)^2 - 3*x^2*d2x + (d1y)^2 + 2*y*d2y") != std::string::npos);

  const auto plane3 = run({"--format", "structured", "jet", data("plane.json"), "-m", "3"});
  REQUIRE(plane3.code == cli::exit_ok);
  const auto doc = nlohmann::json::parse(plane3.out);
  CHECK(doc.at("generators").size() == 8);
  CHECK(doc.at("relations").empty());

  const auto zero = run({"jet", data("cusp.json"), "-m", "0"});
  CHECK(zero.out.find("generators: x[0] y[0]\n") != std::string::npos);
  CHECK(count_lines_with(zero.out, "^") == 1);
}

TEST_CASE("verify checks") {
  const auto d = run({"verify", "desideratum", data("cusp.json")});
  CHECK(d.code == cli::exit_ok);
  CHECK(d.out.find("jet points 6, arcs 6") != std::string::npos);

  const auto t = run({"verify", "truncation", data("cusp.json")});
  CHECK(t.code == cli::exit_ok);
  CHECK(t.out.find("EXPECTED-FAIL") != std::string::npos);
  CHECK(t.out.find("(0, 0, 0, 1)") != std::string::npos);

  const auto free_t = run({"verify", "truncation", data("line.json")});
  CHECK(free_t.code == cli::exit_ok);
  CHECK(free_t.out.find("EXPECTED-FAIL") == std::string::npos);

  const auto l = run({"verify", "leibniz", data("cusp.json")});
  CHECK(l.code == cli::exit_ok);
  CHECK(l.out.find("200/200") != std::string::npos);

  CHECK(run({"verify", "product", data("cusp.json"), "--with", data("line.json")}).code == cli::exit_ok);
  CHECK(run({"verify", "localization", data("line.json"), "--q", "3", "-m", "2"}).code == cli::exit_ok);
  CHECK(run({"verify", "base-change", data("cusp_zz.json"), "--count", "5"}).code == cli::exit_ok);
  CHECK(run({"verify", "first-sequence", data("tower_cusp.json")}).code == cli::exit_ok);
  CHECK(run({"verify", "dilation", data("cusp.json")}).code == cli::exit_ok);
  CHECK(run({"verify", "functoriality", data("line.json"), "--map", "x -> x^2", "--q", "3"}).code == cli::exit_ok);
  CHECK(run({"verify", "first-sequence", data("cusp.json")}).code != cli::exit_ok);
}

TEST_CASE("counting and orbits") {
  const auto c = run({"count", data("cusp.json"), "--q", "3", "-m", "2", "--fiber", "x=0,y=0"});
  CHECK(c.code == cli::exit_ok);
  CHECK(c.out.find("points: 27") != std::string::npos);

  const auto o = run({"orbits", data("line.json"), "--q", "3", "-m", "1", "--fiber", "x=0"});
  CHECK(o.code == cli::exit_ok);
  CHECK(o.out.find("orbits: 1\n") != std::string::npos);

  const auto f = run({"fiber", data("cusp.json"), "-m", "2", "--at", "x=0,y=0"});
  CHECK(f.code == cli::exit_ok);
  CHECK(f.out.find("(d1y)^2") != std::string::npos);

  const auto i = run({"induced", data("line.json"), "--map", "x -> x^2", "-m", "1", "--q", "3"});
  CHECK(i.code == cli::exit_ok);
  CHECK(i.out.find("2*x*d1x") != std::string::npos);
}

TEST_CASE("leading forms") {
  const auto a = run({"leading-form", data("plane.json"), "--b", "x^2", "--E", "x", "-m", "2"});
  CHECK(a.code == cli::exit_ok);
  CHECK(a.out.find("(d1x)^2") != std::string::npos);
  const auto b = run({"leading-form", data("plane.json"), "--b", "x*y", "--E", "x,y", "-m", "2"});
  CHECK(b.out.find("d1x*d1y") != std::string::npos);
  const auto c = run({"leading-form", data("ambient_ax.json"), "--b", "a*x^2", "--E", "x", "-m", "2"});
  CHECK(c.out.find("a*(d1x)^2") != std::string::npos);
  CHECK(run({"leading-form", data("plane.json"), "--b", "x", "--E", "x", "-m", "2"}).code == cli::exit_semantic_error);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::exit_parse_error);
  CHECK(run({"jet"}).code == cli::exit_parse_error);
  CHECK(run({"jet", data("missing.json"), "-m", "1"}).code == cli::exit_parse_error);
  CHECK(run({"jet", data("cusp.json"), "-m", "-1"}).code == cli::exit_parse_error);
  CHECK(run({"frobnicate"}).code == cli::exit_parse_error);
  CHECK(run({"--format", "xml", "jet", data("cusp.json")}).code == cli::exit_parse_error);
  CHECK(run({"count", data("cusp.json"), "-m", "1"}).code == cli::exit_parse_error);
  CHECK(run({"count", data("cusp.json"), "--q", "4", "-m", "1"}).code == cli::exit_semantic_error);
  CHECK(run({"count", data("cusp.json"), "--q", "3", "-m", "2", "--budget", "100"}).code ==
        cli::exit_budget_exceeded);
  CHECK(run({"fiber", data("cusp.json"), "-m", "1", "--at", "x=1,y=0"}).code == cli::exit_semantic_error);
  CHECK(run({"fiber", data("cusp.json"), "-m", "1", "--at", "x=,y=0"}).code == cli::exit_parse_error);
  CHECK(run({"induced", data("line.json"), "--map", "x -> x +", "-m", "1"}).code == cli::exit_parse_error);
  CHECK(run({"induced", data("double_point.json"), "--map", "x -> x + 1", "-m", "1"}).code ==
        cli::exit_semantic_error);
  CHECK(run({"verify", "nonsense", data("cusp.json")}).code == cli::exit_parse_error);

  const std::vector<std::pair<std::string, std::string>> malformed = {
      {"not_json.json", "{ ring: "},
      {"unknown_key.json", R"({"variables": ["x"], "colour": "red"})"},
      {"bad_relation.json", R"({"variables": ["x"], "relations": ["x^"]})"},
      {"undeclared.json", R"({"variables": ["x"], "relations": ["y"]})"},
      {"bad_ring_name.json", R"({"ring": "RR", "variables": ["x"]})"},
      {"not_object.json", R"([1, 2])"},
  };
  for (const auto& [name, text] : malformed) {
    CAPTURE(name);
    const auto o = run({"jet", temp_document(name, text), "-m", "1"});
    CHECK(o.code == cli::exit_parse_error);
    CHECK_FALSE(o.err.empty());
  }
  const auto composite = run({"jet", temp_document("composite.json", R"({"ring": {"Fp": 6}, "variables": ["x"]})"), "-m", "1"});
  CHECK(composite.code == cli::exit_semantic_error);
  const auto jet_name = run({"jet", temp_document("jet_name.json", R"({"variables": ["d1x"]})"), "-m", "1"});
  CHECK(jet_name.code == cli::exit_semantic_error);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::vector<std::string>> commands = {
      {"jet", data("cusp.json"), "-m", "2"},
      {"verify", "leibniz", data("cusp.json"), "--count", "20"},
      {"orbits", data("cusp.json"), "--q", "3", "-m", "2", "--fiber", "x=0,y=0"},
      {"--format", "structured", "verify", "base-change", data("cusp_zz.json"), "--count", "5"}};
  for (const auto& c : commands) CHECK(run(c).out == run(c).out);
}

TEST_CASE("structured output matches text output") {
  const auto text = run({"verify", "desideratum", data("cusp.json"), "--q", "3", "-m", "1"});
  const auto structured = run({"--format", "structured", "verify", "desideratum", data("cusp.json"), "--q", "3", "-m", "1"});
  REQUIRE(structured.code == text.code);
  const auto doc = nlohmann::json::parse(structured.out);
  CHECK(doc.at("result") == "PASS");
  const auto& first = doc.at("checks").at(0);
  const auto jet_points = first.at("values").at("jet_points").get<std::uint64_t>();
  CHECK(text.out.find("jet points " + std::to_string(jet_points)) != std::string::npos);
  CHECK(count_lines_with(text.out, "PASS  ") == doc.at("checks").size());

  const auto count_doc =
      nlohmann::json::parse(run({"--format", "structured", "count", data("cusp.json"), "--q", "3", "-m", "2", "--fiber", "x=0,y=0"}).out);
  CHECK(count_doc.at("points") == 27);
}

TEST_CASE("presentation documents round trip") {
  for (const auto& name : {"cusp.json", "cusp_zz.json", "tower_cusp.json", "double_point.json", "ambient_ax.json"}) {
    CAPTURE(name);
    const auto p = cli::load_presentation(data(name));
    const auto again = cli::parse_presentation_document(cli::presentation_document(p));
    CHECK(again.to_string() == p.to_string());
    CHECK(again.relations == p.relations);
    CHECK(static_cast<bool>(again.tower) == static_cast<bool>(p.tower));
  }
  const auto j = jet_presentation(cli::load_presentation(data("cusp.json")), 2);
  CHECK_THROWS_AS(cli::presentation_document(j), DomainError);
}
