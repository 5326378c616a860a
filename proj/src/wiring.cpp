#include "polydyn/wiring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "polydyn/algebra.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace wd {

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Token {
  enum class Kind { id, sym, end };
  Kind kind;
  std::string text;
  Span span;
};

bool id_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (id_char(c)) {
      Span at{line, col};
      std::size_t start = i;
      while (i < text.size() && id_char(text[i])) advance(1);
      out.push_back({Token::Kind::id, std::string(text.substr(start, i - start)), at});
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::Kind::sym, "->", {line, col}});
      advance(2);
    } else if (std::string_view("{}=,;.():").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::sym, std::string(1, c), {line, col}});
      advance(1);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Kind::end, "", {line, col}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  WiringSpec run() {
    while (peek().kind != Token::Kind::end) statement();
    check_set_references();
    return std::move(spec_);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  WiringSpec spec_;
  std::set<std::string> box_names_;

  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.span.line, t.span.column, msg);
  }

  static std::string describe(const Token& t) {
    return t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
  }

  bool at_sym(std::string_view s) const { return peek().kind == Token::Kind::sym && peek().text == s; }
  bool at_keyword(std::string_view s) const { return peek().kind == Token::Kind::id && peek().text == s; }

  const Token& expect_sym(std::string_view s) {
    if (!at_sym(s)) fail(peek(), "expected '" + std::string(s) + "', found " + describe(peek()));
    return toks_[pos_++];
  }
  const Token& expect_keyword(std::string_view s) {
    if (!at_keyword(s)) fail(peek(), "expected '" + std::string(s) + "', found " + describe(peek()));
    return toks_[pos_++];
  }
  const Token& expect_id() {
    if (peek().kind != Token::Kind::id) fail(peek(), "expected an identifier, found " + describe(peek()));
    return toks_[pos_++];
  }

  std::vector<std::string> id_list(const char* what) {
    expect_sym("{");
    std::vector<std::string> out;
    std::set<std::string> seen;
    if (!at_sym("}")) {
      while (true) {
        const Token& t = expect_id();
        if (!seen.insert(t.text).second) fail(t, std::string("duplicate ") + what + " " + t.text);
        out.push_back(t.text);
        if (!at_sym(",")) break;
        ++pos_;
      }
    }
    expect_sym("}");
    return out;
  }

  PortRef port_ref() {
    const Token& box = expect_id();
    expect_sym(".");
    const Token& port = expect_id();
    return {box.text, port.text, box.span};
  }

  Connection connection() {
    Span at = expect_keyword("connect").span;
    PortRef src = port_ref();
    expect_sym("->");
    PortRef dst = port_ref();
    return {src, dst, at};
  }

  Valuation valuation() {
    expect_sym("(");
    Valuation out;
    if (!at_sym(")")) {
      while (true) {
        const Token& port = expect_id();
        for (const auto& [p, v] : out)
          if (p == port.text) fail(port, "port " + port.text + " assigned twice");
        expect_sym("=");
        out.emplace_back(port.text, expect_id().text);
        if (!at_sym(",")) break;
        ++pos_;
      }
    }
    expect_sym(")");
    return out;
  }

  BoxDecl box_body(const Token& name) {
    BoxDecl box{name.text, {}, name.span};
    expect_sym("{");
    while (!at_sym("}")) {
      const Token& kind = expect_id();
      if (kind.text != "in" && kind.text != "out") fail(kind, "expected 'in' or 'out', found '" + kind.text + "'");
      const Token& port = expect_id();
      for (const auto& p : box.ports)
        if (p.name == port.text) fail(port, "duplicate port " + box.name + "." + port.text);
      expect_sym(":");
      const Token& set = expect_id();
      expect_sym(";");
      box.ports.push_back({kind.text == "in", port.text, set.text, kind.span});
    }
    expect_sym("}");
    return box;
  }

  void statement() {
    const Token& kw = expect_id();
    if (kw.text == "set") {
      const Token& name = expect_id();
      for (const auto& s : spec_.sets)
        if (s.name == name.text) fail(name, "duplicate set " + name.text);
      expect_sym("=");
      spec_.sets.push_back({name.text, id_list("element"), kw.span});
    } else if (kw.text == "box" || kw.text == "outer") {
      const Token& name = expect_id();
      if (kw.text == "outer" && spec_.outer) fail(kw, "duplicate outer declaration");
      if (!box_names_.insert(name.text).second) fail(name, "duplicate box " + name.text);
      BoxDecl box = box_body(name);
      box.span = kw.span;
      if (kw.text == "box")
        spec_.boxes.push_back(std::move(box));
      else
        spec_.outer = std::move(box);
    } else if (kw.text == "connect") {
      --pos_;
      spec_.connections.push_back(connection());
    } else if (kw.text == "default") {
      PortRef port = port_ref();
      expect_sym("=");
      spec_.defaults.push_back({port, expect_id().text, kw.span});
    } else if (kw.text == "modes") {
      expect_keyword("from");
      const Token& box = expect_id();
      for (const auto& m : spec_.modes)
        if (m.box == box.text) fail(box, "duplicate modes block for " + box.text);
      ModesDecl decl{box.text, {}, kw.span};
      expect_sym("{");
      while (!at_sym("}")) {
        Span at = expect_keyword("mode").span;
        const Token& label = expect_id();
        for (const auto& b : decl.blocks)
          if (b.mode == label.text) fail(label, "duplicate mode " + label.text);
        ModeBlock block{label.text, {}, at};
        expect_sym("{");
        while (!at_sym("}")) block.connections.push_back(connection());
        expect_sym("}");
        decl.blocks.push_back(std::move(block));
      }
      expect_sym("}");
      spec_.modes.push_back(std::move(decl));
    } else if (kw.text == "machine") {
      const Token& box = expect_id();
      for (const auto& m : spec_.machines)
        if (m.box == box.text) fail(box, "duplicate machine for " + box.text);
      MachineDecl m{box.text, {}, {}, {}, {}, kw.span};
      expect_sym("{");
      expect_keyword("states");
      expect_sym("=");
      m.states = id_list("state");
      expect_sym(";");
      expect_keyword("init");
      expect_sym("=");
      m.init = expect_id().text;
      expect_sym(";");
      while (!at_sym("}")) {
        const Token& row = expect_id();
        if (row.text == "readout") {
          std::string state = expect_id().text;
          expect_sym("=");
          m.readouts.push_back({state, valuation(), row.span});
        } else if (row.text == "update") {
          std::string state = expect_id().text;
          Valuation in = valuation();
          expect_sym("=");
          m.updates.push_back({state, in, expect_id().text, row.span});
        } else {
          fail(row, "expected 'readout' or 'update', found '" + row.text + "'");
        }
        if (at_sym(";")) ++pos_;
      }
      expect_sym("}");
      spec_.machines.push_back(std::move(m));
    } else {
      fail(kw, "expected a statement, found '" + kw.text + "'");
    }
  }

  void check_set_references() const {
    std::set<std::string> sets;
    for (const auto& s : spec_.sets) sets.insert(s.name);
    auto check = [&](const BoxDecl& b) {
      for (const auto& p : b.ports)
        if (!sets.count(p.set)) throw ParseError(p.span.line, p.span.column, "undeclared set " + p.set);
    };
    for (const auto& b : spec_.boxes) check(b);
    if (spec_.outer) check(*spec_.outer);
  }
};

}  // namespace

WiringSpec parse(std::string_view text) { return Parser(tokenize(text)).run(); }

// ---------------------------------------------------------------------------
// Printer and AST equality

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string print_valuation(const Valuation& v) {
  std::vector<std::string> parts;
  for (const auto& [p, x] : v) parts.push_back(p + "=" + x);
  return "(" + join(parts, ", ") + ")";
}

std::string print_connection(const Connection& c) {
  return "connect " + c.source.box + "." + c.source.port + " -> " + c.target.box + "." + c.target.port;
}

void print_box(std::ostringstream& out, const char* kw, const BoxDecl& b) {
  out << kw << ' ' << b.name << " {\n";
  for (const auto& p : b.ports) out << "  " << (p.input ? "in " : "out ") << p.name << " : " << p.set << ";\n";
  out << "}\n";
}

bool same_ref(const PortRef& a, const PortRef& b) { return a.box == b.box && a.port == b.port; }
bool same_conn(const Connection& a, const Connection& b) {
  return same_ref(a.source, b.source) && same_ref(a.target, b.target);
}
bool same_box(const BoxDecl& a, const BoxDecl& b) {
  return a.name == b.name && std::equal(a.ports.begin(), a.ports.end(), b.ports.begin(), b.ports.end(),
                                        [](const PortDecl& x, const PortDecl& y) {
                                          return x.input == y.input && x.name == y.name && x.set == y.set;
                                        });
}
template <class T, class Eq>
bool same_list(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), eq);
}

}  // namespace

std::string print(const WiringSpec& spec) {
  std::ostringstream out;
  bool first = true;
  auto section = [&]() {
    if (!first) out << '\n';
    first = false;
  };
  if (!spec.sets.empty()) {
    section();
    for (const auto& s : spec.sets) out << "set " << s.name << " = {" << join(s.elements, ", ") << "}\n";
  }
  for (const auto& b : spec.boxes) {
    section();
    print_box(out, "box", b);
  }
  if (spec.outer) {
    section();
    print_box(out, "outer", *spec.outer);
  }
  if (!spec.connections.empty()) {
    section();
    for (const auto& c : spec.connections) out << print_connection(c) << '\n';
  }
  if (!spec.defaults.empty()) {
    section();
    for (const auto& d : spec.defaults) out << "default " << d.port.box << '.' << d.port.port << " = " << d.value << '\n';
  }
  for (const auto& m : spec.modes) {
    section();
    out << "modes from " << m.box << " {\n";
    for (const auto& b : m.blocks) {
      out << "  mode " << b.mode << " {\n";
      for (const auto& c : b.connections) out << "    " << print_connection(c) << '\n';
      out << "  }\n";
    }
    out << "}\n";
  }
  for (const auto& m : spec.machines) {
    section();
    out << "machine " << m.box << " {\n";
    out << "  states = {" << join(m.states, ", ") << "};\n";
    out << "  init = " << m.init << ";\n";
    for (const auto& r : m.readouts) out << "  readout " << r.state << " = " << print_valuation(r.outputs) << '\n';
    for (const auto& u : m.updates)
      out << "  update " << u.state << ' ' << print_valuation(u.inputs) << " = " << u.target << '\n';
    out << "}\n";
  }
  return out.str();
}

bool same_ast(const WiringSpec& a, const WiringSpec& b) {
  if (!same_list(a.sets, b.sets, [](const SetDecl& x, const SetDecl& y) {
        return x.name == y.name && x.elements == y.elements;
      }))
    return false;
  if (!same_list(a.boxes, b.boxes, same_box)) return false;
  if (a.outer.has_value() != b.outer.has_value() || (a.outer && !same_box(*a.outer, *b.outer))) return false;
  if (!same_list(a.connections, b.connections, same_conn)) return false;
  if (!same_list(a.defaults, b.defaults, [](const Default& x, const Default& y) {
        return same_ref(x.port, y.port) && x.value == y.value;
      }))
    return false;
  if (!same_list(a.modes, b.modes, [](const ModesDecl& x, const ModesDecl& y) {
        return x.box == y.box && same_list(x.blocks, y.blocks, [](const ModeBlock& p, const ModeBlock& q) {
                 return p.mode == q.mode && same_list(p.connections, q.connections, same_conn);
               });
      }))
    return false;
  return same_list(a.machines, b.machines, [](const MachineDecl& x, const MachineDecl& y) {
    return x.box == y.box && x.states == y.states && x.init == y.init &&
           same_list(x.readouts, y.readouts,
                     [](const Readout& p, const Readout& q) { return p.state == q.state && p.outputs == q.outputs; }) &&
           same_list(x.updates, y.updates, [](const Update& p, const Update& q) {
             return p.state == q.state && p.inputs == q.inputs && p.target == q.target;
           });
  });
}

// ---------------------------------------------------------------------------
// Model shared by validation and compilation

namespace {

std::string at_line(const Span& s) { return "line " + std::to_string(s.line) + ": "; }

struct Model {
  const WiringSpec& spec;
  std::map<std::string, FinSet> sets;
  std::map<std::string, const BoxDecl*> boxes;  // inner and outer

  explicit Model(const WiringSpec& s) : spec(s) {
    for (const auto& d : s.sets) sets.emplace(d.name, FinSet(d.elements, d.name));
    for (const auto& b : s.boxes) boxes.emplace(b.name, &b);
    if (s.outer) boxes.emplace(s.outer->name, &*s.outer);
  }

  bool is_outer(const std::string& box) const { return spec.outer && spec.outer->name == box; }

  const PortDecl* port(const PortRef& r) const {
    auto it = boxes.find(r.box);
    if (it == boxes.end()) return nullptr;
    for (const auto& p : it->second->ports)
      if (p.name == r.port) return &p;
    return nullptr;
  }

  std::vector<FinSet> port_sets(const BoxDecl& b, bool input) const {
    std::vector<FinSet> out;
    for (const auto& p : b.ports)
      if (p.input == input) out.push_back(sets.at(p.set));
    return out;
  }
};

FinSet port_product(const std::vector<FinSet>& sets) {
  if (sets.empty()) return FinSet::singleton("*");
  if (sets.size() == 1) return FinSet(sets[0].elements());
  return set_product(sets);
}

std::vector<std::string> split_values(const std::string& label, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {label};
  Label l = parse_label(label);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(l[k].render());
  return out;
}

using Key = std::pair<std::string, std::string>;  // (box, port)

// Mode combinations: one chosen block label per modes declaration.
std::vector<std::vector<std::string>> mode_combinations(const Model& m) {
  std::vector<std::vector<std::string>> out{{}};
  for (const auto& decl : m.spec.modes) {
    std::vector<std::string> labels;
    auto it = m.boxes.find(decl.box);
    if (it != m.boxes.end() && !m.is_outer(decl.box)) {
      auto outs = m.port_sets(*it->second, false);
      if (outs.size() == 1) labels = outs[0].elements();
    }
    if (labels.empty()) labels.push_back("");
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : out)
      for (const auto& l : labels) {
        auto v = prefix;
        v.push_back(l);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<const Connection*> active_connections(const WiringSpec& spec, const std::vector<std::string>& modes) {
  std::vector<const Connection*> out;
  for (const auto& c : spec.connections) out.push_back(&c);
  for (std::size_t k = 0; k < spec.modes.size(); ++k)
    for (const auto& b : spec.modes[k].blocks)
      if (b.mode == modes[k])
        for (const auto& c : b.connections) out.push_back(&c);
  return out;
}

std::string mode_text(const WiringSpec& spec, const std::vector<std::string>& modes) {
  if (modes.empty()) return "";
  std::vector<std::string> parts;
  for (std::size_t k = 0; k < modes.size(); ++k) parts.push_back(spec.modes[k].box + "=" + modes[k]);
  return " in mode " + join(parts, ", ");
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation

Report validate(const WiringSpec& spec) {
  Model m(spec);
  Report r;
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto add = [&](const std::string& v) {
    if (seen.insert(v).second) out.push_back(v);
  };

  auto check_connection = [&](const Connection& c) {
    const PortDecl* src = m.port(c.source);
    const PortDecl* dst = m.port(c.target);
    std::string sname = c.source.box + "." + c.source.port;
    std::string tname = c.target.box + "." + c.target.port;
    if (!src) add(at_line(c.span) + "unknown port " + sname);
    if (!dst) add(at_line(c.span) + "unknown port " + tname);
    if (!src || !dst) return false;
    bool src_outer = m.is_outer(c.source.box), dst_outer = m.is_outer(c.target.box);
    bool ok = true;
    if (src->input != src_outer) {
      add(at_line(c.span) + sname + " cannot be a source");
      ok = false;
    }
    if (dst->input == dst_outer) {
      add(at_line(c.span) + tname + " cannot be a target");
      ok = false;
    }
    if (src_outer && dst_outer) {
      add(at_line(c.span) + "outer input " + sname + " wired directly to outer output " + tname);
      ok = false;
    }
    if (src->set != dst->set) {
      add(at_line(c.span) + "type mismatch: " + sname + " : " + src->set + " -> " + tname + " : " + dst->set);
      ok = false;
    }
    return ok;
  };
  for (const auto& c : spec.connections) check_connection(c);

  std::set<Key> defaults;
  for (const auto& d : spec.defaults) {
    const PortDecl* p = m.port(d.port);
    std::string name = d.port.box + "." + d.port.port;
    if (!p) {
      add(at_line(d.span) + "unknown port " + name);
      continue;
    }
    if (!p->input || m.is_outer(d.port.box)) add(at_line(d.span) + "default on " + name + ", which is not an inner input");
    if (!m.sets.at(p->set).contains(d.value)) add(at_line(d.span) + "default " + d.value + " is not in " + p->set);
    if (!defaults.insert({d.port.box, d.port.port}).second) add(at_line(d.span) + "second default for " + name);
  }

  for (const auto& decl : spec.modes) {
    auto it = m.boxes.find(decl.box);
    if (it == m.boxes.end() || m.is_outer(decl.box)) {
      add(at_line(decl.span) + "modes from unknown box " + decl.box);
      continue;
    }
    auto outs = m.port_sets(*it->second, false);
    if (outs.size() != 1) {
      add(at_line(decl.span) + "mode box " + decl.box + " must have exactly one out port");
      continue;
    }
    for (const auto& b : decl.blocks) {
      if (!outs[0].contains(b.mode)) add(at_line(b.span) + "mode " + b.mode + " is not a position of " + decl.box);
      for (const auto& c : b.connections) check_connection(c);
    }
  }

  for (const auto& modes : mode_combinations(m)) {
    std::map<Key, std::size_t> drivers;
    for (const Connection* c : active_connections(spec, modes))
      if (m.port(c->source) && m.port(c->target)) ++drivers[{c->target.box, c->target.port}];
    std::string where = mode_text(spec, modes);
    auto check_port = [&](const std::string& box, const PortDecl& p, bool may_default) {
      std::size_t n = drivers[{box, p.name}];
      std::string name = box + "." + p.name;
      if (n > 1) add("fan-in: " + name + " has " + std::to_string(n) + " drivers" + where);
      if (n == 0 && !(may_default && defaults.count({box, p.name}))) add("undriven port " + name + where);
    };
    for (const auto& b : spec.boxes)
      for (const auto& p : b.ports)
        if (p.input) check_port(b.name, p, true);
    if (spec.outer)
      for (const auto& p : spec.outer->ports)
        if (!p.input) check_port(spec.outer->name, p, false);
  }
  r.violations = std::move(out);
  return r;
}

// ---------------------------------------------------------------------------
// Compilation

std::string port_tuple(const std::vector<std::string>& values) {
  if (values.empty()) return "*";
  if (values.size() == 1) return values[0];
  return tuple_label(values);
}

FinPoly box_interface(const WiringSpec& spec, const std::string& box) {
  Model m(spec);
  auto it = m.boxes.find(box);
  if (it == m.boxes.end()) throw LabelError("unknown box " + box);
  return monomial(port_product(m.port_sets(*it->second, false)), port_product(m.port_sets(*it->second, true)));
}

FinPoly outer_interface(const WiringSpec& spec) {
  if (!spec.outer) return y();
  return box_interface(spec, spec.outer->name);
}

namespace {

void require_valid(const WiringSpec& spec) {
  Report r = validate(spec);
  if (!r.ok()) {
    std::string msg = "invalid wiring:";
    for (const auto& v : r.violations) msg += "\n  " + v;
    throw Error(msg);
  }
}

}  // namespace

Lens compile_wiring(const WiringSpec& spec) {
  require_valid(spec);
  Model m(spec);
  std::vector<FinPoly> ifaces;
  for (const auto& b : spec.boxes) ifaces.push_back(box_interface(spec, b.name));
  FinPoly dom = tensor_all(ifaces);
  FinPoly cod = outer_interface(spec);

  // Out-port values of every inner box at a position, and the wiring active there.
  struct State {
    std::map<Key, std::string> values;
    std::map<Key, Key> driver;
  };
  auto resolve = [&](std::size_t i) {
    State st;
    Label l = parse_label(dom.label(i));
    for (std::size_t k = 0; k < spec.boxes.size(); ++k) {
      const BoxDecl& b = spec.boxes[k];
      std::vector<const PortDecl*> outs;
      for (const auto& p : b.ports)
        if (!p.input) outs.push_back(&p);
      auto vals = split_values(l[k].render(), outs.size());
      for (std::size_t q = 0; q < outs.size(); ++q) st.values[{b.name, outs[q]->name}] = vals[q];
    }
    std::vector<std::string> modes;
    for (const auto& decl : spec.modes) {
      const BoxDecl& mb = *m.boxes.at(decl.box);
      for (const auto& p : mb.ports)
        if (!p.input) modes.push_back(st.values.at({decl.box, p.name}));
    }
    for (const Connection* c : active_connections(spec, modes))
      st.driver[{c->target.box, c->target.port}] = {c->source.box, c->source.port};
    return st;
  };

  std::vector<const PortDecl*> outer_in, outer_out;
  if (spec.outer)
    for (const auto& p : spec.outer->ports) (p.input ? outer_in : outer_out).push_back(&p);

  return Lens::from_rules(
      dom, cod,
      [&](std::size_t i) {
        State st = resolve(i);
        std::vector<std::string> vals;
        for (const PortDecl* p : outer_out) vals.push_back(st.values.at(st.driver.at({spec.outer->name, p->name})));
        return port_tuple(vals);
      },
      [&](std::size_t i, const std::string& e) {
        State st = resolve(i);
        auto in_vals = split_values(e, outer_in.size());
        for (std::size_t q = 0; q < outer_in.size(); ++q) st.values[{spec.outer->name, outer_in[q]->name}] = in_vals[q];
        std::vector<std::string> per_box;
        for (const auto& b : spec.boxes) {
          std::vector<std::string> vals;
          for (const auto& p : b.ports) {
            if (!p.input) continue;
            auto d = st.driver.find({b.name, p.name});
            if (d != st.driver.end()) {
              vals.push_back(st.values.at(d->second));
            } else {
              for (const auto& def : spec.defaults)
                if (def.port.box == b.name && def.port.port == p.name) vals.push_back(def.value);
            }
          }
          per_box.push_back(port_tuple(vals));
        }
        return tuple_label(per_box);
      });
}

std::vector<BoundMachine> compile_machines(const WiringSpec& spec) {
  Model m(spec);
  std::vector<BoundMachine> out;
  std::vector<std::string> errors;
  for (const auto& decl : spec.machines) {
    std::string who = "machine " + decl.box + ": ";
    auto it = m.boxes.find(decl.box);
    if (it == m.boxes.end() || m.is_outer(decl.box)) {
      errors.push_back(at_line(decl.span) + who + "no box named " + decl.box);
      continue;
    }
    const BoxDecl& box = *it->second;
    FinSet states(decl.states);
    std::size_t before = errors.size();
    auto init = states.find(decl.init);
    if (!init) errors.push_back(at_line(decl.span) + who + "initial state " + decl.init + " is not a state");

    // Reads a valuation of the in- or out-ports into the label of their tuple.
    auto read = [&](const Valuation& v, bool input, const Span& at) -> std::optional<std::string> {
      std::vector<std::string> vals;
      bool ok = true;
      for (const auto& p : box.ports) {
        if (p.input != input) continue;
        auto hit = std::find_if(v.begin(), v.end(), [&](const auto& kv) { return kv.first == p.name; });
        if (hit == v.end()) {
          errors.push_back(at_line(at) + who + "no value for port " + p.name);
          ok = false;
        } else if (!m.sets.at(p.set).contains(hit->second)) {
          errors.push_back(at_line(at) + who + hit->second + " is not in " + p.set);
          ok = false;
        } else {
          vals.push_back(hit->second);
        }
      }
      for (const auto& [port, value] : v) {
        bool known = std::any_of(box.ports.begin(), box.ports.end(),
                                 [&](const PortDecl& p) { return p.name == port && p.input == input; });
        if (!known) {
          errors.push_back(at_line(at) + who + "no " + (input ? "input" : "output") + " port " + port);
          ok = false;
        }
      }
      if (!ok) return std::nullopt;
      return port_tuple(vals);
    };

    FinSet outputs = port_product(m.port_sets(box, false));
    FinSet inputs = port_product(m.port_sets(box, true));
    std::vector<std::size_t> readout(states.size(), SIZE_MAX);
    for (const auto& r : decl.readouts) {
      auto s = states.find(r.state);
      if (!s) {
        errors.push_back(at_line(r.span) + who + "unknown state " + r.state);
        continue;
      }
      auto label = read(r.outputs, false, r.span);
      if (!label) continue;
      if (readout[*s] != SIZE_MAX) errors.push_back(at_line(r.span) + who + "second readout for " + r.state);
      readout[*s] = outputs.index_of(*label);
    }
    for (std::size_t s = 0; s < states.size(); ++s)
      if (readout[s] == SIZE_MAX) errors.push_back(who + "missing readout for state " + states[s]);

    std::vector<std::vector<std::size_t>> table(inputs.size(), std::vector<std::size_t>(states.size(), SIZE_MAX));
    for (const auto& u : decl.updates) {
      auto s = states.find(u.state);
      auto t = states.find(u.target);
      if (!s) errors.push_back(at_line(u.span) + who + "unknown state " + u.state);
      if (!t) errors.push_back(at_line(u.span) + who + "unknown state " + u.target);
      auto label = read(u.inputs, true, u.span);
      if (!s || !t || !label) continue;
      std::size_t a = inputs.index_of(*label);
      if (table[a][*s] != SIZE_MAX)
        errors.push_back(at_line(u.span) + who + "second update row " + tuple_label({u.state, *label}));
      table[a][*s] = *t;
    }
    for (std::size_t s = 0; s < states.size(); ++s)
      for (std::size_t a = 0; a < inputs.size(); ++a)
        if (table[a][s] == SIZE_MAX) errors.push_back(who + "missing update row " + tuple_label({states[s], inputs[a]}));

    if (errors.size() == before)
      out.push_back({decl.box, MooreMachine::make(states, inputs, outputs, readout, table, *init)});
  }
  if (!errors.empty()) {
    std::string msg = "invalid machines:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw Error(msg);
  }
  return out;
}

std::pair<MDDS, std::string> compile_system(const WiringSpec& spec) {
  Lens wiring = compile_wiring(spec);
  auto machines = compile_machines(spec);
  std::vector<MDDS> parts;
  std::vector<std::string> init;
  for (const auto& b : spec.boxes) {
    auto it = std::find_if(machines.begin(), machines.end(), [&](const BoundMachine& m) { return m.box == b.name; });
    if (it == machines.end()) throw Error("box " + b.name + " has no machine");
    parts.push_back(moore_system(it->machine));
    init.push_back(it->machine.states[it->machine.initial]);
  }
  return {apply_wiring(wiring, juxtapose_all(parts)), tuple_label(init)};
}

std::string outer_direction(const WiringSpec& spec, const std::map<std::string, std::string>& values) {
  Model m(spec);
  std::vector<std::string> vals;
  std::set<std::string> used;
  if (spec.outer)
    for (const auto& p : spec.outer->ports) {
      if (!p.input) continue;
      auto it = values.find(p.name);
      if (it == values.end()) throw Error("no value for input port " + p.name);
      if (!m.sets.at(p.set).contains(it->second)) throw Error(it->second + " is not in " + p.set);
      vals.push_back(it->second);
      used.insert(p.name);
    }
  for (const auto& [k, v] : values)
    if (!used.count(k)) throw Error("no input port " + k);
  return port_tuple(vals);
}

}  // namespace wd
}  // namespace polydyn
