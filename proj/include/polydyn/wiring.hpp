#pragma once

// A textual language for (mode-dependent) wiring diagrams and machine tables.
//
//   set W = {w1, w2}
//   box Company { in w : W; out mode : M; }
//   outer System { }
//   connect Supplier1.w -> Company.w
//   default Person.x = x0
//   modes from Company { mode 1 { connect ... } mode 2 { ... } }
//   machine Company { states = {s1, s2}; init = s1; readout s1 = (mode=1) update s1 (w=w1) = s2 }
//
// Identifiers are [A-Za-z0-9_]+; '#' starts a comment. A box has the
// interface B y^A where B is the product of its out-port sets and A the
// product of its in-port sets. Tuples of port values follow the port order:
// no ports give *, one port gives its value, several give (v1,v2,...).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polydyn/dynamics.hpp"
#include "polydyn/error.hpp"
#include "polydyn/lens.hpp"
#include "polydyn/report.hpp"

namespace polydyn {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace wd {

struct Span {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct SetDecl {
  std::string name;
  std::vector<std::string> elements;
  Span span;
};

struct PortDecl {
  bool input = false;
  std::string name;
  std::string set;
  Span span;
};

struct BoxDecl {
  std::string name;
  std::vector<PortDecl> ports;
  Span span;
};

struct PortRef {
  std::string box;
  std::string port;
  Span span;
};

struct Connection {
  PortRef source;
  PortRef target;
  Span span;
};

struct Default {
  PortRef port;
  std::string value;
  Span span;
};

struct ModeBlock {
  std::string mode;
  std::vector<Connection> connections;
  Span span;
};

struct ModesDecl {
  std::string box;
  std::vector<ModeBlock> blocks;
  Span span;
};

using Valuation = std::vector<std::pair<std::string, std::string>>;

struct Readout {
  std::string state;
  Valuation outputs;
  Span span;
};

struct Update {
  std::string state;
  Valuation inputs;
  std::string target;
  Span span;
};

struct MachineDecl {
  std::string box;
  std::vector<std::string> states;
  std::string init;
  std::vector<Readout> readouts;
  std::vector<Update> updates;
  Span span;
};

struct WiringSpec {
  std::vector<SetDecl> sets;
  std::vector<BoxDecl> boxes;
  std::optional<BoxDecl> outer;
  std::vector<Connection> connections;
  std::vector<Default> defaults;
  std::vector<ModesDecl> modes;
  std::vector<MachineDecl> machines;
};

/// Structural equality ignoring source spans.
bool same_ast(const WiringSpec& a, const WiringSpec& b);

/// Throws ParseError on syntax errors, duplicate declarations and references
/// to undeclared sets.
WiringSpec parse(std::string_view text);
/// Canonical text: sets, boxes, outer, connections, defaults, modes, machines.
std::string print(const WiringSpec& spec);

/// Reference, typing and driver checks for every combination of modes.
Report validate(const WiringSpec& spec);

/// The label of a tuple of port values.
std::string port_tuple(const std::vector<std::string>& values);

/// Interface of a declared box, or of the outer box (y when absent).
FinPoly box_interface(const WiringSpec& spec, const std::string& box);
FinPoly outer_interface(const WiringSpec& spec);

/// The wiring lens from the tensor of the box interfaces (in declaration
/// order) to the outer interface. Throws Error when validation fails.
Lens compile_wiring(const WiringSpec& spec);

struct BoundMachine {
  std::string box;
  MooreMachine machine;
};

/// One machine per machine table; throws Error listing every missing or
/// malformed entry.
std::vector<BoundMachine> compile_machines(const WiringSpec& spec);

/// The juxtaposed machines of every box seen through the wiring, with the
/// tuple of initial states. Throws Error when a box has no machine.
std::pair<MDDS, std::string> compile_system(const WiringSpec& spec);

/// Outer direction label for a valuation of the outer input ports.
std::string outer_direction(const WiringSpec& spec, const std::map<std::string, std::string>& values);

}  // namespace wd
}  // namespace polydyn
