#include "polydyn/dynamics.hpp"

#include <functional>
#include <sstream>
#include <unordered_set>

#include "polydyn/algebra.hpp"
#include "polydyn/error.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

MooreMachine MooreMachine::make(FinSet states, FinSet inputs, FinSet outputs, std::vector<std::size_t> readout,
                                const std::vector<std::vector<std::size_t>>& update_table, std::size_t initial) {
  const std::size_t ns = states.size();
  if (update_table.size() != inputs.size()) throw ShapeError("update table needs one row per input");
  std::vector<std::size_t> flat;
  for (const auto& row : update_table) {
    if (row.size() != ns) throw ShapeError("update table needs one entry per state");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  if (ns > 0 && initial >= ns) throw ShapeError("initial state out of range");
  SetFn r(states, outputs, std::move(readout));
  SetFn u(set_product(inputs, states), states, std::move(flat));
  return {std::move(states), std::move(inputs), std::move(outputs), std::move(r), std::move(u), initial};
}

bool operator==(const MooreMachine& a, const MooreMachine& b) {
  return a.states == b.states && a.inputs == b.inputs && a.outputs == b.outputs && a.readout == b.readout &&
         a.update == b.update && (a.states.empty() || a.states[a.initial] == b.states[b.initial]);
}

Lens moore_to_lens(const MooreMachine& m) {
  const std::size_t ns = m.states.size();
  std::vector<std::vector<std::size_t>> dirs(ns);
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t a = 0; a < m.inputs.size(); ++a) dirs[s].push_back(m.next(a, s));
  return Lens(monomial(m.states, m.states), monomial(m.outputs, m.inputs), m.readout.mapping(), std::move(dirs));
}

MooreMachine lens_to_moore(const Lens& f, std::optional<std::string> initial) {
  const FinPoly& dom = f.dom();
  const FinPoly& cod = f.cod();
  if (!is_monomial(cod)) throw ShapeError("lens_to_moore needs a monomial codomain");
  FinSet states = dom.positions();
  for (const auto& pos : dom)
    if (!(pos.dirs == states)) throw ShapeError("lens_to_moore needs a domain of the form S y^S");
  FinSet outputs = cod.positions();
  FinSet inputs = cod.empty() ? FinSet() : cod.dirs(0);
  std::vector<std::size_t> readout(f.on_pos());
  std::vector<std::vector<std::size_t>> update(inputs.size(), std::vector<std::size_t>(states.size()));
  for (std::size_t s = 0; s < states.size(); ++s) {
    const FinSet& here = cod.dirs(f.on_pos(s));
    for (std::size_t a = 0; a < inputs.size(); ++a)
      update[a][s] = states.index_of(dom.dirs(s)[f.on_dir(s, here.index_of(inputs[a]))]);
  }
  std::size_t init = initial ? states.index_of(*initial) : 0;
  return MooreMachine::make(states, inputs, outputs, std::move(readout), update, init);
}

// ---------------------------------------------------------------------------
// Traces

nlohmann::json trace_to_json(const Trace& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t k = 0; k < t.steps.size(); ++k)
    steps.push_back({{"step", k},
                     {"state", t.steps[k].state},
                     {"position", t.steps[k].position},
                     {"direction", t.steps[k].direction}});
  return {{"steps", steps},
          {"final", {{"state", t.final_state}, {"position", t.final_position}}},
          {"history", t.history}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string trace_to_csv(const Trace& t) {
  std::ostringstream out;
  out << "step,state,position,direction\n";
  for (std::size_t k = 0; k < t.steps.size(); ++k)
    out << k << ',' << csv_field(t.steps[k].state) << ',' << csv_field(t.steps[k].position) << ','
        << csv_field(t.steps[k].direction) << '\n';
  out << t.steps.size() << ',' << csv_field(t.final_state) << ',' << csv_field(t.final_position) << ",\n";
  return out.str();
}

Trace run_moore(const MooreMachine& m, const std::vector<std::string>& inputs) {
  Trace t;
  std::size_t s = m.initial;
  const std::size_t s0 = s;
  for (const auto& a : inputs) {
    auto ai = m.inputs.find(a);
    if (!ai) throw LabelError("unknown input " + a);
    t.steps.push_back({m.states[s], m.outputs[m.readout(s)], a});
    s = m.next(*ai, s);
  }
  t.final_state = m.states[s];
  t.final_position = m.outputs[m.readout(s)];
  t.history = m.states.size() == 1 ? m.states[s] : tuple_label({m.states[s0], m.states[s]});
  return t;
}

// ---------------------------------------------------------------------------
// Systems

MDDS::MDDS(Comonoid st, Lens dyn) : state(std::move(st)), interface(dyn.cod()), dynamics(std::move(dyn)) {
  if (!(dynamics.dom() == state.carrier)) throw ShapeError("dynamics must start at the state carrier");
  dynamics = relayout(dynamics, state.carrier, interface);
}

MDDS moore_system(const MooreMachine& m) { return MDDS(contractible(m.states), moore_to_lens(m)); }

namespace {

// Label of the morphism out of i picked by direction d, as comonoid_to_category names it.
std::string morphism_label(const Comonoid& c, std::size_t i, std::size_t d) {
  std::unordered_set<std::string> seen;
  bool unique = true;
  for (const auto& pos : c.carrier)
    for (const auto& e : pos.dirs)
      if (!seen.insert(e).second) {
        unique = false;
        break;
      }
  const std::string& dir = c.carrier.dirs(i)[d];
  return unique ? dir : tuple_label({c.carrier.label(i), dir});
}

std::size_t direction_at(const MDDS& sys, std::size_t i, std::string_view d) {
  std::size_t j = sys.dynamics.on_pos(i);
  auto k = sys.interface.dirs(j).find(d);
  if (!k)
    throw ShapeError("direction " + std::string(d) + " is not available at position " + sys.interface.label(j));
  return *k;
}

// Follows directions chosen by `pick` (given the current state index).
Trace run_with(const MDDS& sys, std::string_view s0, std::size_t steps,
               const std::function<std::string(std::size_t, std::size_t)>& pick) {
  const Comonoid& c = sys.state;
  std::size_t s = c.carrier.index_of(s0);
  const std::size_t start = s;
  std::size_t h = c.counit[s];
  Trace t;
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t j = sys.dynamics.on_pos(s);
    std::string d = pick(k, s);
    std::size_t m = sys.dynamics.on_dir(s, direction_at(sys, s, d));
    t.steps.push_back({c.carrier.label(s), sys.interface.label(j), d});
    h = c.back[start][h][m];
    s = c.next[s][m];
  }
  t.final_state = c.carrier.label(s);
  t.final_position = sys.interface.label(sys.dynamics.on_pos(s));
  t.history = morphism_label(c, start, h);
  return t;
}

}  // namespace

Step step(const MDDS& sys, std::string_view s, std::string_view d) {
  std::size_t i = sys.state.carrier.index_of(s);
  std::size_t m = sys.dynamics.on_dir(i, direction_at(sys, i, d));
  return {sys.interface.label(sys.dynamics.on_pos(i)), sys.state.carrier.label(sys.state.next[i][m])};
}

Trace run_closed(const MDDS& sys, std::string_view s0, std::size_t steps) {
  return run_with(sys, s0, steps, [&](std::size_t, std::size_t s) {
    const FinSet& dirs = sys.interface.dirs(sys.dynamics.on_pos(s));
    if (dirs.size() != 1)
      throw ShapeError("system is not closed: position " + sys.interface.label(sys.dynamics.on_pos(s)) + " has " +
                       std::to_string(dirs.size()) + " directions");
    return dirs[0];
  });
}

Trace run_open(const MDDS& sys, std::string_view s0, const std::vector<std::string>& inputs) {
  if (!is_monomial(sys.interface)) throw ShapeError("run_open needs a monomial interface");
  return run_with(sys, s0, inputs.size(), [&](std::size_t k, std::size_t) { return inputs[k]; });
}

std::string trace_history(const MDDS& sys, std::string_view s0, const std::vector<std::string>& directions) {
  return run_with(sys, s0, directions.size(), [&](std::size_t k, std::size_t) { return directions[k]; }).history;
}

bool trace_valid(const MDDS& sys, const Trace& t) {
  const FinPoly& carrier = sys.state.carrier;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    auto s = carrier.find(t.steps[k].state);
    if (!s) return false;
    std::size_t j = sys.dynamics.on_pos(*s);
    if (sys.interface.label(j) != t.steps[k].position) return false;
    auto d = sys.interface.dirs(j).find(t.steps[k].direction);
    if (!d) return false;
    const std::string& next = carrier.label(sys.state.next[*s][sys.dynamics.on_dir(*s, *d)]);
    const std::string& expected = k + 1 < t.steps.size() ? t.steps[k + 1].state : t.final_state;
    if (next != expected) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Strategies

std::string StrategyTree::label() const {
  if (depth == 0) return "*";
  if (depth == 1) return position;
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& [d, t] : branches) entries.emplace_back(d, t.label());
  return tuple_label({position, map_label(entries)});
}

nlohmann::json StrategyTree::to_json() const {
  nlohmann::json j{{"depth", depth}};
  if (depth == 0) return j;
  j["position"] = position;
  if (depth > 1) {
    nlohmann::json b = nlohmann::json::object();
    for (const auto& [d, t] : branches) b[d] = t.to_json();
    j["branches"] = b;
  }
  return j;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void dot_nodes(const StrategyTree& t, std::size_t& counter, std::ostringstream& out) {
  std::size_t me = counter++;
  out << "  n" << me << " [label=\"" << dot_escape(t.position) << "\"];\n";
  for (const auto& [d, child] : t.branches) {
    std::size_t id = counter;
    dot_nodes(child, counter, out);
    out << "  n" << me << " -> n" << id << " [label=\"" << dot_escape(d) << "\"];\n";
  }
}

}  // namespace

std::string StrategyTree::to_dot() const {
  std::ostringstream out;
  out << "digraph strategy {\n";
  if (depth > 0) {
    std::size_t counter = 0;
    dot_nodes(*this, counter, out);
  }
  out << "}\n";
  return out.str();
}

StrategyTree unroll(const MDDS& sys, std::string_view s, std::size_t depth) {
  StrategyTree t;
  t.depth = depth;
  if (depth == 0) return t;
  std::size_t i = sys.state.carrier.index_of(s);
  std::size_t j = sys.dynamics.on_pos(i);
  t.position = sys.interface.label(j);
  if (depth == 1) return t;
  const FinSet& dirs = sys.interface.dirs(j);
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    std::size_t next = sys.state.next[i][sys.dynamics.on_dir(i, d)];
    t.branches.emplace_back(dirs[d], unroll(sys, sys.state.carrier.label(next), depth - 1));
  }
  return t;
}

Lens overlay(const Lens& f, const Lens& g) { return pairing(f, g); }

MDDS juxtapose(const MDDS& a, const MDDS& b) { return juxtapose_all({a, b}); }

MDDS juxtapose_all(const std::vector<MDDS>& systems) {
  std::vector<Comonoid> states;
  std::vector<Lens> dyn;
  for (const auto& s : systems) {
    states.push_back(s.state);
    dyn.push_back(s.dynamics);
  }
  return MDDS(comonoid_tensor_all(states), tensor_all_lens(dyn));
}

MDDS apply_wiring(const Lens& wiring, const MDDS& sys) {
  if (!(wiring.dom() == sys.interface)) throw ShapeError("wiring does not start at the system interface");
  return MDDS(sys.state, lens_compose(wiring, sys.dynamics));
}

}  // namespace polydyn
