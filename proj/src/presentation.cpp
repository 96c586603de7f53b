#include "jets/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "jets/error.hpp"

namespace jets {

VariableScope Presentation::scope() const {
  VariableScope names(constants.begin(), constants.end());
  for (const auto& g : generators) names.insert(g.base);
  return names;
}

std::vector<JetVariable> Presentation::base_generators() const {
  std::vector<JetVariable> out;
  for (const auto& g : generators)
    if (g.order == 0) out.push_back(g);
  return out;
}

bool Presentation::has_generator(const JetVariable& v) const {
  return std::find(generators.begin(), generators.end(), v) != generators.end();
}

std::size_t Presentation::index_of(const JetVariable& v) const {
  auto it = std::find(generators.begin(), generators.end(), v);
  if (it == generators.end()) throw DomainError("no generator " + v.name());
  return static_cast<std::size_t>(it - generators.begin());
}

void Presentation::validate() const {
  std::set<std::string> constant_names;
  for (const auto& c : constants) {
    if (!is_identifier(c) || looks_like_jet_symbol(c))
      throw DomainError("invalid constant name '" + c + "'");
    if (!constant_names.insert(c).second) throw DomainError("duplicate constant '" + c + "'");
  }
  std::set<JetVariable> seen;
  for (const auto& g : generators) {
    if (!is_identifier(g.base) || looks_like_jet_symbol(g.base))
      throw DomainError("invalid generator name '" + g.base + "'");
    if (constant_names.count(g.base))
      throw DomainError("'" + g.base + "' is both a constant and a generator");
    if (g.order > jet_order)
      throw DomainError("generator " + g.name() + " exceeds jet order " +
                        std::to_string(jet_order));
    if (!seen.insert(g).second) throw DomainError("duplicate generator " + g.name());
  }
  for (const auto& r : relations) {
    if (!(r.ring() == ring))
      throw RingMismatch("relation over " + r.ring().name() + " in a presentation over " +
                         ring.name());
    for (const auto& v : r.variables()) {
      const bool is_constant = v.order == 0 && constant_names.count(v.base);
      if (!is_constant && !seen.count(v))
        throw DomainError("relation " + r.to_string() + " mentions undeclared " + v.name());
    }
  }
  if (tower) {
    tower->validate();
    for (const auto& g : tower->base_generators())
      if (!constant_names.count(g.base))
        throw DomainError("tower generator '" + g.base + "' is not a constant of the outer presentation");
  }
}

std::string Presentation::to_string() const {
  std::ostringstream os;
  os << "ring: " << ring.name() << "\n";
  if (!constants.empty()) {
    os << "constants:";
    for (const auto& c : constants) os << " " << c;
    os << "\n";
  }
  os << "generators:";
  for (const auto& g : generators) os << " " << g.name() << "[" << g.weight() << "]";
  os << "\nrelations:";
  if (relations.empty()) os << " (none)";
  os << "\n";
  for (const auto& r : relations) os << "  " << r << "\n";
  return os.str();
}

Presentation make_presentation(const CoefficientRing& ring, std::vector<std::string> variables,
                               const std::vector<std::string>& relations,
                               std::vector<std::string> constants) {
  Presentation p;
  p.ring = ring;
  p.constants = std::move(constants);
  for (auto& name : variables) p.generators.push_back(var(std::move(name)));
  for (const auto& text : relations) p.relations.push_back(p.parse(text));
  p.validate();
  return p;
}

}  // namespace jets
