#include "jets/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jets/arc_oracle.hpp"
#include "jets/error.hpp"
#include "jets/groebner.hpp"
#include "jets/jet_presentation.hpp"
#include "jets/prolong.hpp"
#include "jets/random.hpp"

namespace jets::cli {

namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Presentation documents

const std::set<std::string> kDocumentKeys = {"ring", "constants", "variables", "relations", "tower"};

std::vector<std::string> string_list(const Json& j, const std::string& key) {
  if (!j.contains(key)) return {};
  const Json& v = j.at(key);
  if (!v.is_array()) throw ParseError("'" + key + "' must be a list of strings", 0);
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw ParseError("'" + key + "' must be a list of strings", 0);
    out.push_back(item.get<std::string>());
  }
  return out;
}

CoefficientRing ring_from_json(const Json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "QQ") return CoefficientRing::rationals();
    if (name == "ZZ") return CoefficientRing::integers();
    throw ParseError("unknown ring '" + name + "' (expected \"QQ\", \"ZZ\" or {\"Fp\": p})", 0);
  }
  if (j.is_object() && j.size() == 1 && j.contains("Fp") && j.at("Fp").is_number_unsigned())
    return CoefficientRing::prime_field(j.at("Fp").get<std::uint64_t>());
  throw ParseError("malformed ring (expected \"QQ\", \"ZZ\" or {\"Fp\": p})", 0);
}

Json ring_to_json(const CoefficientRing& ring) {
  switch (ring.kind()) {
    case CoefficientRing::Kind::rationals: return "QQ";
    case CoefficientRing::Kind::integers: return "ZZ";
    case CoefficientRing::Kind::prime_field: return Json{{"Fp", ring.characteristic()}};
  }
  return "QQ";
}

Presentation presentation_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("presentation must be a JSON object", 0);
  for (const auto& [key, value] : j.items())
    if (!kDocumentKeys.count(key)) throw ParseError("unknown key '" + key + "'", 0);

  const CoefficientRing ring = j.contains("ring") ? ring_from_json(j.at("ring")) : CoefficientRing::rationals();
  std::shared_ptr<const Presentation> tower;
  if (j.contains("tower")) {
    auto inner = std::make_shared<Presentation>(presentation_from_json(j.at("tower")));
    if (!(inner->ring == ring))
      throw RingMismatch("tower is over " + inner->ring.name() + ", outer presentation over " + ring.name());
    tower = inner;
  }
  std::vector<std::string> constants = string_list(j, "constants");
  if (tower && !j.contains("constants"))
    for (const auto& g : tower->base_generators()) constants.push_back(g.base);

  Presentation p = make_presentation(ring, string_list(j, "variables"), string_list(j, "relations"),
                                     std::move(constants));
  p.tower = tower;
  p.validate();
  return p;
}

Json presentation_to_json(const Presentation& p) {
  if (p.jet_order != 0) throw DomainError("only plain presentations have a document form");
  Json j;
  j["ring"] = ring_to_json(p.ring);
  if (!p.constants.empty()) j["constants"] = p.constants;
  Json vars = Json::array();
  for (const auto& g : p.generators) vars.push_back(g.base);
  j["variables"] = vars;
  Json rels = Json::array();
  for (const auto& r : p.relations) rels.push_back(r.to_string());
  j["relations"] = rels;
  if (p.tower) j["tower"] = presentation_to_json(*p.tower);
  return j;
}

// ---------------------------------------------------------------------------
// Reports

enum class Status { pass, fail, expected_fail, info };

const char* status_label(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::expected_fail: return "EXPECTED-FAIL";
    case Status::info: return "INFO";
  }
  return "";
}

/// Text lines and the structured payload, built side by side.
struct Report {
  Json data = Json::object();
  std::vector<std::string> lines;
  Json checks = Json::array();
  bool has_checks = false;
  bool failed = false;
  std::string budget_message;

  void line(std::string text) { lines.push_back(std::move(text)); }

  void check(const std::string& name, Status status, const std::string& detail, Json values = Json::object()) {
    has_checks = true;
    if (status == Status::fail) failed = true;
    std::string text = std::string(status_label(status)) + "  " + name;
    if (!detail.empty()) text += ": " + detail;
    lines.push_back(std::move(text));
    Json c;
    c["name"] = name;
    c["status"] = status_label(status);
    c["detail"] = detail;
    c["values"] = std::move(values);
    checks.push_back(std::move(c));
  }

  void check(const std::string& name, bool ok, const std::string& detail, Json values = Json::object()) {
    check(name, ok ? Status::pass : Status::fail, detail, std::move(values));
  }

  std::string result() const {
    if (!budget_message.empty()) return "BUDGET-EXCEEDED";
    return failed ? "FAIL" : "PASS";
  }

  void print(std::ostream& out, bool structured) const {
    if (structured) {
      Json j = data;
      if (has_checks) {
        j["checks"] = checks;
        j["result"] = result();
      }
      if (!budget_message.empty()) j["budget_exceeded"] = budget_message;
      out << j.dump(2) << "\n";
      return;
    }
    for (const auto& l : lines) out << l << "\n";
    if (!budget_message.empty()) out << "budget exceeded: " << budget_message << "\n";
    if (has_checks) out << "result: " << result() << "\n";
  }
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

std::string point_text(const std::vector<JetVariable>& gens, const std::vector<std::uint32_t>& pt) {
  std::vector<std::string> names, values;
  for (const auto& g : gens) names.push_back(g.name());
  for (auto v : pt) values.push_back(std::to_string(v));
  return "(" + join(names, ", ") + ") = (" + join(values, ", ") + ")";
}

Json point_json(const std::vector<JetVariable>& gens, const std::vector<std::uint32_t>& pt) {
  Json j = Json::object();
  for (std::size_t k = 0; k < gens.size() && k < pt.size(); ++k) j[gens[k].name()] = pt[k];
  return j;
}

Json generators_json(const Presentation& p) {
  Json gens = Json::array();
  for (const auto& g : p.generators) gens.push_back(Json{{"name", g.name()}, {"weight", g.weight()}});
  return gens;
}

Json relations_json(const Presentation& p) {
  Json rels = Json::array();
  for (const auto& r : p.relations) rels.push_back(r.to_string());
  return rels;
}

void describe_presentation(Report& report, const Presentation& p) {
  report.data["ring"] = p.ring.name();
  if (!p.constants.empty()) report.data["constants"] = p.constants;
  report.data["generators"] = generators_json(p);
  report.data["relations"] = relations_json(p);
  std::istringstream text(p.to_string());
  for (std::string l; std::getline(text, l);) report.line(l);
}

// ---------------------------------------------------------------------------
// Parameters

struct Params {
  std::string format = "text";
  std::string file;
  std::string check;
  std::string with_file;
  std::string target_file;
  std::string map_text;
  std::string s_text;
  std::string b_text;
  std::string fiber_text;
  std::vector<std::string> e_vars;
  std::uint32_t q = 0;
  std::uint32_t m = 0;
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint64_t seed = 1;
  std::uint32_t count = 0;
  std::uint64_t budget = EnumerationBudget{}.max_candidates;

  // Which options were given.
  bool has_q = false, has_m = false, has_i = false, has_j = false, has_count = false;
  bool has_fiber = false, has_map = false, has_s = false;

  std::uint32_t q_or(std::uint32_t d) const { return has_q ? q : d; }
  std::uint32_t m_or(std::uint32_t d) const { return has_m ? m : d; }
  std::uint32_t count_or(std::uint32_t d) const { return has_count ? count : d; }
  EnumerationBudget enumeration_budget() const { return EnumerationBudget{budget}; }
};

std::vector<std::string> split(const std::string& text, const std::string& separators) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (separators.find(c) != std::string::npos) {
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
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

/// "x=0,y=1/2" -> {x: 0, y: 1/2}.
std::map<std::string, Coeff> parse_point(const std::string& text, const CoefficientRing& ring) {
  std::map<std::string, Coeff> point;
  for (const auto& piece : split(text, ",")) {
    const auto eq = piece.find('=');
    if (eq == std::string::npos) throw ParseError("expected name=value in '" + piece + "'", 0);
    const std::string name = trim(piece.substr(0, eq));
    const std::string value = trim(piece.substr(eq + 1));
    mpq_class v;
    if (value.empty() || v.set_str(value, 10) != 0)
      throw ParseError("malformed coordinate '" + value + "'", eq + 1);
    v.canonicalize();
    if (!point.emplace(name, ring.from_rational(v)).second)
      throw ParseError("coordinate '" + name + "' given twice", 0);
  }
  return point;
}

/// "x -> x^2, y -> y" -> {x: "x^2", y: "y"}.
std::map<std::string, std::string> parse_images(const std::string& text) {
  std::map<std::string, std::string> images;
  for (const auto& piece : split(text, ",;")) {
    const auto arrow = piece.find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'name -> expression' in '" + piece + "'", 0);
    const std::string name = trim(piece.substr(0, arrow));
    if (!images.emplace(name, trim(piece.substr(arrow + 2))).second)
      throw ParseError("image of '" + name + "' given twice", 0);
  }
  return images;
}

Json point_coordinates_json(const std::map<std::string, Coeff>& point) {
  Json j = Json::object();
  for (const auto& [name, v] : point) j[name] = coeff_to_string(v);
  return j;
}

std::vector<std::uint32_t> to_residues(const HomPoint& hp) { return residues(hp); }

// ---------------------------------------------------------------------------
// Commands

void cmd_jet(const Params& prm, Report& report) {
  const Presentation p = load_presentation(prm.file);
  const Presentation jet = p.tower ? relative_jet_presentation(p, prm.m) : jet_presentation(p, prm.m);
  report.data["command"] = "jet";
  report.data["input"] = prm.file;
  report.data["m"] = prm.m;
  describe_presentation(report, jet);
}

void cmd_count(const Params& prm, Report& report) {
  const Presentation p = load_presentation(prm.file);
  const std::uint32_t m = prm.m_or(0);
  Presentation target = jet_presentation(p, m);
  report.data["command"] = "count";
  report.data["input"] = prm.file;
  report.data["q"] = prm.q;
  report.data["m"] = m;
  if (prm.has_fiber) {
    const auto point = parse_point(prm.fiber_text, p.ring);
    target = fiber_presentation(target, point);
    report.data["fiber"] = point_coordinates_json(point);
  }
  const auto n = count_points(target, prm.q, prm.enumeration_budget());
  report.data["points"] = n;
  report.line("points: " + std::to_string(n));
}

void cmd_fiber(const Params& prm, Report& report) {
  if (!prm.has_fiber) throw DomainError("fiber needs --fiber name=value,...");
  const Presentation p = load_presentation(prm.file);
  const auto point = parse_point(prm.fiber_text, p.ring);
  const Presentation fiber = fiber_presentation(jet_presentation(p, prm.m), point);
  report.data["command"] = "fiber";
  report.data["input"] = prm.file;
  report.data["m"] = prm.m;
  report.data["fiber"] = point_coordinates_json(point);
  describe_presentation(report, fiber);
  if (prm.has_q) {
    const auto n = count_points(fiber, prm.q, prm.enumeration_budget());
    report.data["q"] = prm.q;
    report.data["points"] = n;
    report.line("points over F_" + std::to_string(prm.q) + ": " + std::to_string(n));
  }
}

void cmd_orbits(const Params& prm, Report& report) {
  const Presentation p = load_presentation(prm.file);
  Presentation target = jet_presentation(p, prm.m);
  report.data["command"] = "orbits";
  report.data["input"] = prm.file;
  report.data["q"] = prm.q;
  report.data["m"] = prm.m;
  if (prm.has_fiber) {
    const auto point = parse_point(prm.fiber_text, p.ring);
    target = fiber_presentation(target, point);
    report.data["fiber"] = point_coordinates_json(point);
  }
  const OrbitReport r = gm_orbits(target, prm.q, prm.enumeration_budget());
  report.data["points"] = r.points;
  report.data["zero_section_points"] = r.zero_section_points;
  report.data["orbit_count"] = r.orbit_count();
  Json orbits = Json::array();
  report.line("points: " + std::to_string(r.points));
  report.line("zero-section points: " + std::to_string(r.zero_section_points));
  report.line("orbits: " + std::to_string(r.orbit_count()));
  for (const auto& o : r.orbits) {
    orbits.push_back(Json{{"representative", point_json(target.generators, o.representative)},
                          {"size", o.size},
                          {"stabilizer", o.stabilizer}});
    report.line("  " + point_text(target.generators, o.representative) + "  size " + std::to_string(o.size) +
                "  stabilizer " + std::to_string(o.stabilizer));
  }
  report.data["orbits"] = orbits;
  report.check("dilated points satisfy the relations", r.dilation_preserves_relations, "");
  report.check("orbit sizes divide q - 1", r.sizes_divide_group_order, "q - 1 = " + std::to_string(prm.q - 1));
}

void cmd_induced(const Params& prm, Report& report) {
  if (!prm.has_map) throw DomainError("induced needs --map");
  const Presentation source = load_presentation(prm.file);
  const Presentation target = prm.target_file.empty() ? source : load_presentation(prm.target_file);
  const GradedAlgebraMap phi = make_map(source, target, parse_images(prm.map_text));
  const GradedAlgebraMap jet_phi = induced_map(phi, prm.m);
  report.data["command"] = "induced";
  report.data["input"] = prm.file;
  report.data["m"] = prm.m;
  Json images = Json::object();
  report.line("induced map on jets of order " + std::to_string(prm.m) + ":");
  for (const auto& g : jet_phi.source.generators) {
    const auto& img = jet_phi.images.at(g);
    images[g.name()] = img.to_string();
    report.line("  " + g.name() + " -> " + img.to_string());
  }
  report.data["images"] = images;
  if (prm.has_q) {
    const ImageReport r = jet_map_image(phi, prm.m, prm.q, prm.enumeration_budget());
    report.data["q"] = prm.q;
    report.data["domain_points"] = r.source_points;
    report.data["codomain_points"] = r.target_points;
    report.data["image_points"] = r.image.size();
    report.data["surjective"] = r.surjective();
    Json missing = Json::array();
    report.line("point map over F_" + std::to_string(prm.q) + ": " + std::to_string(r.source_points) + " -> " +
                std::to_string(r.target_points) + " points, image " + std::to_string(r.image.size()));
    for (const auto& pt : r.non_image_sample) {
      missing.push_back(point_json(r.target_generators, pt));
      report.line("  not in image: " + point_text(r.target_generators, pt));
    }
    report.data["not_in_image"] = missing;
  }
}

void cmd_leading_form(const Params& prm, Report& report) {
  if (prm.b_text.empty()) throw DomainError("leading-form needs --b");
  if (prm.e_vars.empty()) throw DomainError("leading-form needs --E");
  const Presentation p = load_presentation(prm.file);
  const Polynomial b = p.parse(prm.b_text);
  const Polynomial form = leading_form_restriction(p, b, prm.e_vars, prm.m);
  report.data["command"] = "leading-form";
  report.data["input"] = prm.file;
  report.data["b"] = b.to_string();
  report.data["E"] = prm.e_vars;
  report.data["m"] = prm.m;
  report.data["leading_form"] = form.to_string();
  report.line("leading form: " + form.to_string());
}

// ---------------------------------------------------------------------------
// verify

std::string fraction(std::uint64_t a, std::uint64_t b) { return std::to_string(a) + "/" + std::to_string(b); }

void verify_leibniz(const Params& prm, const Presentation& p, Report& report) {
  const std::uint32_t m = prm.m_or(4);
  const std::uint32_t cases = prm.count_or(200);
  const auto ctx = ProlongationContext::for_presentation(p, m);
  std::vector<JetVariable> vars = p.base_generators();
  for (const auto& c : p.constants) vars.push_back(var(c));
  std::mt19937_64 rng(prm.seed);
  std::uniform_int_distribution<std::uint32_t> pick_k(0, m);
  std::uint32_t passed = 0;
  std::string witness;
  for (std::uint32_t n = 0; n < cases; ++n) {
    const Polynomial f = random_polynomial(rng, p.ring, vars, 3, 4);
    const Polynomial g = random_polynomial(rng, p.ring, vars, 3, 4);
    const std::uint32_t k = pick_k(rng);
    if (leibniz_check(f, g, k, ctx).holds)
      ++passed;
    else if (witness.empty())
      witness = "f = " + f.to_string() + ", g = " + g.to_string() + ", k = " + std::to_string(k);
  }
  report.check("divided Leibniz rule on random products", passed == cases,
               fraction(passed, cases) + (witness.empty() ? "" : "; " + witness),
               Json{{"passed", passed}, {"cases", cases}});

  std::uint32_t homogeneous = 0, total = 0;
  for (const auto& f : p.relations) {
    const auto group = prolong_all(f, ctx);
    for (std::uint32_t k = 0; k < group.size(); ++k) {
      ++total;
      const auto info = weighted_degree_info(group[k]);
      if (info.is_homogeneous && (!info.weight || *info.weight == k)) ++homogeneous;
    }
  }
  report.check("prolonged relations are weighted-homogeneous", homogeneous == total,
               fraction(homogeneous, total), Json{{"homogeneous", homogeneous}, {"relations", total}});
}

void verify_desideratum(const Params& prm, const Presentation& p, Report& report) {
  const std::uint32_t q = prm.q_or(2), m = prm.m_or(1);
  report.data["parameters"] = Json{{"q", q}, {"m", m}};
  const DesideratumReport r = desideratum_check(p, q, m, prm.enumeration_budget());
  report.check("point counts agree", r.counts_agree,
               "jet points " + std::to_string(r.jet_points) + ", arcs " + std::to_string(r.arcs),
               Json{{"jet_points", r.jet_points}, {"arcs", r.arcs}});
  report.check("jet -> arc -> jet is the identity", r.jet_to_arc_to_jet_identity,
               std::to_string(r.jet_points) + " points", Json{{"points", r.jet_points}});
  report.check("arc -> jet -> arc is the identity", r.arc_to_jet_to_arc_identity,
               std::to_string(r.arcs) + " arcs", Json{{"arcs", r.arcs}});
}

void verify_product(const Params& prm, const Presentation& p, Report& report) {
  const Presentation other = prm.with_file.empty() ? p : load_presentation(prm.with_file);
  const std::uint32_t q = prm.q_or(2), m = prm.m_or(1);
  report.data["parameters"] = Json{{"q", q}, {"m", m}};
  const ProductResult r = product_presentation(p, other, m);
  std::string renamed;
  for (const auto& [from, to] : r.renamed) renamed += (renamed.empty() ? "" : ", ") + from + " -> " + to;
  report.check("jets of the product equal the product of jets", r.jet_of_product_equals_product_of_jets,
               renamed.empty() ? "" : "second factor renamed " + renamed);
  const auto budget = prm.enumeration_budget();
  const auto a = count_points(jet_presentation(p, m), q, budget);
  const auto b = count_points(jet_presentation(other, m), q, budget);
  const auto ab = count_points(jet_presentation(r.product, m), q, budget);
  report.check("point counts multiply", ab == a * b,
               std::to_string(ab) + " = " + std::to_string(a) + " * " + std::to_string(b),
               Json{{"product", ab}, {"first", a}, {"second", b}});
}

void verify_localization(const Params& prm, const Presentation& p, Report& report) {
  const std::uint32_t q = prm.q_or(3), m = prm.m_or(1);
  const auto gens = p.base_generators();
  if (!prm.has_s && gens.empty()) throw DomainError("localization needs --s");
  const Polynomial s = prm.has_s ? p.parse(prm.s_text) : Polynomial::variable(p.ring, gens.front());
  std::string inverse = "u";
  for (int n = 1; p.scope().count(inverse); ++n) inverse = "u" + std::to_string(n);
  report.data["parameters"] = Json{{"q", q}, {"m", m}, {"s", s.to_string()}};
  const Presentation local = localize(p, s, inverse);
  const auto budget = prm.enumeration_budget();
  const auto jets = count_points(jet_presentation(local, m), q, budget);
  const auto arcs = count_arcs_with_unit(p, s, q, m, budget);
  report.check("jets of the localization = arcs with invertible s", jets == arcs,
               std::to_string(jets) + " = " + std::to_string(arcs), Json{{"jet_points", jets}, {"arcs", arcs}});
  if (p.relations.empty() && gens.size() == 1 && s == Polynomial::variable(p.ring, gens.front())) {
    std::uint64_t expected = q - 1;
    for (std::uint32_t k = 0; k < m; ++k) expected *= q;
    report.check("punctured line count (q - 1) q^m", jets == expected,
                 std::to_string(jets) + " = " + std::to_string(expected), Json{{"expected", expected}});
  }
}

void verify_base_change(const Params& prm, const Presentation& p, Report& report) {
  if (p.ring.kind() == CoefficientRing::Kind::prime_field)
    throw DomainError("base-change needs a presentation over ZZ or QQ");
  const std::uint32_t m = prm.m_or(2);
  const std::uint32_t cases = prm.count_or(50);
  const std::vector<std::uint32_t> primes = prm.has_q ? std::vector<std::uint32_t>{prm.q}
                                                      : std::vector<std::uint32_t>{2, 3, 5};
  Json used = Json::array();
  for (auto q : primes) used.push_back(q);
  report.data["parameters"] = Json{{"primes", used}, {"m", m}, {"count", cases}, {"seed", prm.seed}};

  const Presentation jet = jet_presentation(p, m);
  for (auto q : primes) {
    const auto field = CoefficientRing::prime_field(q);
    const Presentation reduced_jet = jet_presentation(reduce_mod(p, q), m);
    bool same = reduced_jet.relations.size() == jet.relations.size();
    for (std::size_t k = 0; same && k < jet.relations.size(); ++k)
      same = map_coefficients(jet.relations[k], field) == reduced_jet.relations[k];
    report.check("jet presentation commutes with reduction mod " + std::to_string(q), same,
                 std::to_string(jet.relations.size()) + " relations");
  }

  const auto zz = CoefficientRing::integers();
  auto vars = p.base_generators();
  std::set<std::string> active;
  for (const auto& g : vars) active.insert(g.base);
  const ProlongationContext ctx(m, active);
  std::mt19937_64 rng(prm.seed);
  for (auto q : primes) {
    const auto field = CoefficientRing::prime_field(q);
    std::uint32_t passed = 0;
    for (std::uint32_t n = 0; n < cases; ++n) {
      const Polynomial f = random_polynomial(rng, zz, vars, 4, 5);
      const auto lifted = prolong_all(f, ctx);
      const auto reduced = prolong_all(map_coefficients(f, field), ctx);
      bool ok = true;
      for (std::uint32_t k = 0; k <= m; ++k) ok = ok && map_coefficients(lifted[k], field) == reduced[k];
      passed += ok ? 1 : 0;
    }
    report.check("prolong then reduce = reduce then prolong mod " + std::to_string(q), passed == cases,
                 fraction(passed, cases), Json{{"passed", passed}, {"cases", cases}});
  }
}

void verify_first_sequence(const Params& prm, const Presentation& p, Report& report) {
  if (!p.tower) throw DomainError("first-sequence needs a presentation with a tower");
  const std::uint32_t m = prm.m_or(1);
  report.data["parameters"] = Json{{"m", m}};
  const FirstSequenceReport r = first_sequence_check(p, m);
  Json kernel = Json::array(), expected = Json::array();
  std::vector<std::string> kernel_text, expected_text;
  for (const auto& k : r.kernel_generators) {
    kernel.push_back(k.to_string());
    kernel_text.push_back(k.to_string());
  }
  for (const auto& e : r.expected_generators) {
    expected.push_back(e.to_string());
    expected_text.push_back(e.to_string());
  }
  report.line("kernel generators: " + join(kernel_text, ", "));
  report.line("expected generators: " + join(expected_text, ", "));
  report.check("kernel equals the ideal of the prolonged middle generators", r.holds,
               r.kernel_is_zero ? "kernel is zero" : "",
               Json{{"kernel", kernel}, {"expected", expected}, {"kernel_is_zero", r.kernel_is_zero}});
}

void verify_dilation(const Params& prm, const Presentation& p, Report& report) {
  const std::uint32_t q = prm.q_or(3), m = prm.m_or(2);
  report.data["parameters"] = Json{{"q", q}, {"m", m}};
  const Presentation pq = reduce_mod(p, q);
  const Presentation jet = jet_presentation(pq, m);
  const auto field = pq.ring;
  const auto budget = prm.enumeration_budget();

  // Generator level.
  const auto dil = [&](std::uint32_t z) { return dilation_map(pq, m, std::nullopt, field.from_int(z)); };
  report.check("dilation by 1 is the identity", equal_on_generators(dil(1), identity_map(jet)), "");
  const GradedAlgebraMap collapse = compose(truncation_map(pq, 0, m), zero_section_map(pq, m));
  report.check("dilation by 0 is zero section after projection", equal_on_generators(dil(0), collapse), "");
  std::vector<GradedAlgebraMap> by_value;
  for (std::uint32_t z = 0; z < q; ++z) by_value.push_back(dil(z));
  std::uint32_t law = 0;
  for (std::uint32_t z = 0; z < q; ++z)
    for (std::uint32_t w = 0; w < q; ++w)
      if (equal_on_generators(compose(by_value[z], by_value[w]), by_value[(z * w) % q])) ++law;
  report.check("group law on generators", law == q * q, fraction(law, q * q));

  const GradedAlgebraMap formal = dilation_map(p, m, std::string("z"), 1);
  const Presentation formal_jet = jet_presentation(p, m);
  const Polynomial z = Polynomial::variable(formal.target.ring, var("z"));
  std::uint32_t scaled = 0;
  for (std::size_t k = 0; k < formal_jet.relations.size(); ++k) {
    const auto& r = formal_jet.relations[k];
    if (formal.apply(r) == z.pow(static_cast<std::uint32_t>(k % (m + 1))) * r) ++scaled;
  }
  report.check("relation d_k f scales by z^k", scaled == formal_jet.relations.size(),
               fraction(scaled, formal_jet.relations.size()));

  // Point level.
  const auto points = enumerate_homs(jet, FiniteRing::prime_field(q), budget);
  std::uint64_t identity = 0, zero = 0, group = 0;
  for (const auto& hp : points) {
    const auto pt = to_residues(hp);
    if (dilate_point(jet, pt, 1, q) == pt) ++identity;
    auto projected = pt;
    for (std::size_t k = 0; k < pt.size(); ++k)
      if (jet.generators[k].weight() > 0) projected[k] = 0;
    if (dilate_point(jet, pt, 0, q) == projected) ++zero;
    bool ok = true;
    for (std::uint32_t a = 0; a < q && ok; ++a)
      for (std::uint32_t b = 0; b < q && ok; ++b)
        ok = dilate_point(jet, dilate_point(jet, pt, b, q), a, q) == dilate_point(jet, pt, (a * b) % q, q);
    group += ok ? 1 : 0;
  }
  const std::uint64_t n = points.size();
  report.check("z = 1 fixes every point", identity == n, fraction(identity, n));
  report.check("z = 0 sends every point to its zero-section projection", zero == n, fraction(zero, n));
  report.check("group law on points", group == n, fraction(group, n));

  const OrbitReport orbits = gm_orbits(jet, q, budget);
  report.check("dilated points satisfy the relations", orbits.dilation_preserves_relations,
               std::to_string(orbits.points) + " points");
  report.check("orbit sizes divide q - 1", orbits.sizes_divide_group_order,
               std::to_string(orbits.orbit_count()) + " orbits off the zero section",
               Json{{"orbits", orbits.orbit_count()}, {"zero_section_points", orbits.zero_section_points}});
}

void verify_functoriality(const Params& prm, const Presentation& p, Report& report) {
  if (!prm.has_map) throw DomainError("functoriality needs --map");
  const std::uint32_t m = prm.m_or(1);
  const bool endo = prm.target_file.empty();
  const Presentation target = endo ? p : load_presentation(prm.target_file);
  report.data["parameters"] = Json{{"m", m}, {"map", prm.map_text}};
  const GradedAlgebraMap phi = make_map(p, target, parse_images(prm.map_text));
  const GradedAlgebraMap jet_phi = induced_map(phi, m);

  report.check("identity induces the identity",
               equal_on_generators(induced_map(identity_map(p), m), identity_map(jet_presentation(p, m))), "");

  // A chain of three composable maps: phi three times for an endomorphism,
  // otherwise the identities on either side of phi.
  const GradedAlgebraMap first = endo ? phi : identity_map(p);
  const GradedAlgebraMap second = phi;
  const GradedAlgebraMap third = endo ? phi : identity_map(target);
  const GradedAlgebraMap two = compose(second, first);
  const GradedAlgebraMap three = compose(third, two);
  const GradedAlgebraMap j1 = endo ? jet_phi : induced_map(first, m);
  const GradedAlgebraMap j3 = endo ? jet_phi : induced_map(third, m);
  report.check("induced(g o f) = induced(g) o induced(f)",
               equal_on_generators(induced_map(two, m), compose(jet_phi, j1)), "");
  report.check("induced(h o g o f) = induced(h) o induced(g) o induced(f)",
               equal_on_generators(induced_map(three, m), compose(j3, compose(jet_phi, j1))), "");

  if (prm.has_q) {
    const ImageReport r = jet_map_image(phi, m, prm.q, prm.enumeration_budget());
    Json missing = Json::array();
    for (const auto& pt : r.non_image_sample) missing.push_back(point_json(r.target_generators, pt));
    std::string detail = std::to_string(r.image.size()) + " of " + std::to_string(r.target_points) + " points hit";
    if (!r.non_image_sample.empty()) detail += "; missed " + point_text(r.target_generators, r.non_image_sample[0]);
    report.check("point map image over F_" + std::to_string(prm.q), Status::info, detail,
                 Json{{"image_points", r.image.size()}, {"codomain_points", r.target_points}, {"not_in_image", missing}});
  }
}

void verify_truncation(const Params& prm, const Presentation& p, Report& report) {
  const std::uint32_t q = prm.q_or(3);
  const std::uint32_t i = prm.has_i ? prm.i : 1;
  const std::uint32_t j = prm.has_j ? prm.j : i + 1;
  if (i > j) throw DomainError("truncation needs i <= j");
  report.data["parameters"] = Json{{"q", q}, {"i", i}, {"j", j}};
  truncation_map(p, i, j);
  report.check("truncation map is well defined", true, "");
  const SurjectivityReport r = truncation_surjectivity(p, i, j, q, prm.enumeration_budget());
  Json values{{"source_points", r.source_points}, {"target_points", r.target_points}, {"image_points", r.image_points}};
  const std::string counts = std::to_string(r.image_points) + " of " + std::to_string(r.target_points) +
                             " points hit from " + std::to_string(r.source_points);
  if (r.surjective) {
    report.check("truncation is surjective on points", true, counts, values);
    return;
  }
  const auto& witness = *r.witness;
  values["witness"] = point_json(r.target_generators, witness);
  const auto base = reduce_mod(p, q).base_generators();
  const std::vector<std::uint32_t> base_point(witness.begin(), witness.begin() + base.size());
  const bool smooth = jacobian_has_full_rank(p, base_point, q);
  values["witness_base_point_smooth"] = smooth;
  const std::string detail = counts + "; no preimage for " + point_text(r.target_generators, witness) +
                             (smooth ? " over a smooth point" : " over a singular point");
  report.check("truncation is surjective on points", smooth ? Status::fail : Status::expected_fail, detail, values);
}

/// "q=3, m=2" from the parameters recorded by a check.
std::string parameter_text(const Json& params) {
  std::vector<std::string> parts;
  for (const auto& [key, value] : params.items())
    parts.push_back(key + "=" + (value.is_string() ? value.get<std::string>() : value.dump()));
  return join(parts, ", ");
}

void cmd_verify(const Params& prm, Report& report) {
  const Presentation p = load_presentation(prm.file);
  report.data["command"] = "verify";
  report.data["check"] = prm.check;
  report.data["input"] = prm.file;
  report.line("verify " + prm.check + " " + prm.file);
  static const std::map<std::string, std::function<void(const Params&, const Presentation&, Report&)>> checks = {
      {"leibniz", verify_leibniz},
      {"desideratum", verify_desideratum},
      {"product", verify_product},
      {"localization", verify_localization},
      {"base-change", verify_base_change},
      {"first-sequence", verify_first_sequence},
      {"dilation", verify_dilation},
      {"functoriality", verify_functoriality},
      {"truncation", verify_truncation},
  };
  auto annotate = [&report] {
    if (report.data.contains("parameters"))
      report.lines.front() += " (" + parameter_text(report.data["parameters"]) + ")";
  };
  try {
    checks.at(prm.check)(prm, p, report);
  } catch (const BudgetExceeded&) {
    annotate();
    throw;
  }
  annotate();
}

}  // namespace

// ---------------------------------------------------------------------------

Presentation parse_presentation_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed presentation document: ") + e.what(), e.byte);
  }
  return presentation_from_json(j);
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'", 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_presentation_document(buffer.str());
}

std::string presentation_document(const Presentation& p) { return presentation_to_json(p).dump(2); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Params prm;
  CLI::App app{"Jet algebras of presented algebras: presentations, point counts and checks", "jetcalc"};
  app.require_subcommand(1);
  app.add_option("--format", prm.format, "Output format")->check(CLI::IsMember({"text", "structured"}));

  auto file_option = [&](CLI::App* sub) { sub->add_option("file", prm.file, "Presentation document")->required(); };
  auto flag = [](bool& seen) { return [&seen](const auto&) { seen = true; }; };
  auto q_option = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--q", prm.q, "Prime field size")->each(flag(prm.has_q));
    if (required) o->required();
  };
  auto m_option = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("-m,--m", prm.m, "Jet order")->each(flag(prm.has_m));
    if (required) o->required();
  };
  auto fiber_option = [&](CLI::App* sub) {
    sub->add_option("--fiber,--at", prm.fiber_text, "Base point, e.g. x=0,y=0")->each(flag(prm.has_fiber));
  };
  auto budget_option = [&](CLI::App* sub) {
    sub->add_option("--budget", prm.budget, "Maximum candidate assignments during enumeration");
  };

  std::function<void(const Params&, Report&)> handler;

  auto* jet = app.add_subcommand("jet", "Print the jet presentation");
  file_option(jet);
  m_option(jet, true);
  jet->callback([&] { handler = cmd_jet; });

  auto* count = app.add_subcommand("count", "Count F_q points of a jet scheme or fiber");
  file_option(count);
  q_option(count, true);
  m_option(count, false);
  fiber_option(count);
  budget_option(count);
  count->callback([&] { handler = cmd_count; });

  auto* fiber = app.add_subcommand("fiber", "Fiber of the jet scheme over a base point");
  file_option(fiber);
  m_option(fiber, true);
  fiber_option(fiber);
  q_option(fiber, false);
  budget_option(fiber);
  fiber->callback([&] { handler = cmd_fiber; });

  auto* orbits = app.add_subcommand("orbits", "Dilation orbits on F_q points");
  file_option(orbits);
  q_option(orbits, true);
  m_option(orbits, true);
  fiber_option(orbits);
  budget_option(orbits);
  orbits->callback([&] { handler = cmd_orbits; });

  auto* induced = app.add_subcommand("induced", "Jet map induced by an algebra map");
  file_option(induced);
  induced->add_option("--map", prm.map_text, "Images, e.g. \"x -> x^2\"")->each(flag(prm.has_map));
  induced->add_option("--target", prm.target_file, "Target presentation (default: the input)");
  q_option(induced, false);
  m_option(induced, true);
  budget_option(induced);
  induced->callback([&] { handler = cmd_induced; });

  auto* leading = app.add_subcommand("leading-form", "Leading form of d_m b along a coordinate subspace");
  file_option(leading);
  leading->add_option("--b", prm.b_text, "Polynomial vanishing to order m along E")->required();
  leading->add_option("--E", prm.e_vars, "Variables cutting out E")->delimiter(',')->required();
  m_option(leading, true);
  leading->callback([&] { handler = cmd_leading_form; });

  auto* verify = app.add_subcommand("verify", "Run a consistency check");
  verify->add_option("check", prm.check, "Check name")
      ->required()
      ->check(CLI::IsMember({"leibniz", "desideratum", "product", "localization", "base-change",
                             "first-sequence", "dilation", "functoriality", "truncation"}));
  file_option(verify);
  q_option(verify, false);
  m_option(verify, false);
  verify->add_option("--i", prm.i, "Lower jet order")->each(flag(prm.has_i));
  verify->add_option("--j", prm.j, "Upper jet order")->each(flag(prm.has_j));
  verify->add_option("--seed", prm.seed, "Random seed");
  verify->add_option("--count", prm.count, "Number of random cases")->each(flag(prm.has_count));
  verify->add_option("--with", prm.with_file, "Second factor for product");
  verify->add_option("--s", prm.s_text, "Element to invert for localization")->each(flag(prm.has_s));
  verify->add_option("--map", prm.map_text, "Images for functoriality")->each(flag(prm.has_map));
  verify->add_option("--target", prm.target_file, "Target presentation for functoriality");
  budget_option(verify);
  verify->callback([&] { handler = cmd_verify; });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_parse_error;
  }

  const bool structured = prm.format == "structured";
  Report report;
  try {
    handler(prm, report);
  } catch (const BudgetExceeded& e) {
    report.budget_message = e.what();
    report.print(out, structured);
    return exit_budget_exceeded;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_semantic_error;
  }
  report.print(out, structured);
  return report.failed ? exit_check_failed : exit_ok;
}

}  // namespace jets::cli
