#pragma once

// Moore machines, mode-dependent dynamical systems (a state comonoid with a
// lens into an interface), simulation and strategy unrolling.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polydyn/comonoid.hpp"
#include "polydyn/finset.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/poly.hpp"

namespace polydyn {

struct MooreMachine {
  FinSet states;
  FinSet inputs;
  FinSet outputs;
  SetFn readout;  // states -> outputs
  SetFn update;   // inputs x states -> states, domain labeled (a,s)
  std::size_t initial = 0;

  /// update_table[a][s] is the index of the next state.
  static MooreMachine make(FinSet states, FinSet inputs, FinSet outputs, std::vector<std::size_t> readout,
                           const std::vector<std::vector<std::size_t>>& update_table, std::size_t initial = 0);

  std::size_t next(std::size_t a, std::size_t s) const { return update(a * states.size() + s); }
};

bool operator==(const MooreMachine& a, const MooreMachine& b);

/// S y^S -> B y^A: on positions the readout, at s the direction a goes to u(a,s).
Lens moore_to_lens(const MooreMachine& m);
/// Inverse of moore_to_lens; the initial state is given by label.
MooreMachine lens_to_moore(const Lens& f, std::optional<std::string> initial = std::nullopt);

struct TraceStep {
  std::string state;
  std::string position;
  std::string direction;
};

struct Trace {
  std::vector<TraceStep> steps;
  std::string final_state;
  std::string final_position;
  std::string history;  // morphism of the state category from the first to the final state
};

nlohmann::json trace_to_json(const Trace& t);
/// Columns step,state,position,direction; the last row holds the final state with an empty direction.
std::string trace_to_csv(const Trace& t);

Trace run_moore(const MooreMachine& m, const std::vector<std::string>& inputs);

/// A state comonoid with dynamics carrier -> interface.
struct MDDS {
  Comonoid state;
  FinPoly interface;
  Lens dynamics;

  MDDS(Comonoid state, Lens dynamics);
};

MDDS moore_system(const MooreMachine& m);

struct Step {
  std::string position;
  std::string next_state;
};

/// Emits the position at s and follows direction d; d must be available there.
Step step(const MDDS& sys, std::string_view s, std::string_view d);

/// Runs a system whose positions each carry exactly one direction.
Trace run_closed(const MDDS& sys, std::string_view s0, std::size_t steps);
/// Runs a system with a monomial interface on the given directions.
Trace run_open(const MDDS& sys, std::string_view s0, const std::vector<std::string>& inputs);

/// The morphism of the state category traced out by following the directions from s0.
std::string trace_history(const MDDS& sys, std::string_view s0, const std::vector<std::string>& directions);

/// Whether each consecutive pair of states follows the dynamics.
bool trace_valid(const MDDS& sys, const Trace& t);

/// An element of p^{o n}(1). Depth 0 is the empty tree, depth 1 a single
/// position, and deeper trees branch over the directions at the root.
struct StrategyTree {
  std::size_t depth = 0;
  std::string position;
  std::vector<std::pair<std::string, StrategyTree>> branches;

  /// The position label of p^{o depth} this tree denotes.
  std::string label() const;
  nlohmann::json to_json() const;
  std::string to_dot() const;
};

StrategyTree unroll(const MDDS& sys, std::string_view s, std::size_t depth);

/// The pairing C -> p x q.
Lens overlay(const Lens& f, const Lens& g);

/// Side-by-side systems: tensor of states, dynamics and interfaces.
MDDS juxtapose(const MDDS& a, const MDDS& b);
MDDS juxtapose_all(const std::vector<MDDS>& systems);

/// The system seen through a wiring lens from its interface.
MDDS apply_wiring(const Lens& wiring, const MDDS& sys);

}  // namespace polydyn
