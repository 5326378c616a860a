#include "polydyn/label.hpp"

#include <optional>

#include "polydyn/error.hpp"

namespace polydyn {

std::string tuple_label(std::span<const std::string> items) {
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  out += ')';
  return out;
}

std::string tuple_label(std::initializer_list<std::string> items) {
  return tuple_label(std::span<const std::string>(items.begin(), items.size()));
}

std::string map_label(std::span<const std::pair<std::string, std::string>> entries) {
  std::string out = "{";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ',';
    out += entries[i].first;
    out += ':';
    out += entries[i].second;
  }
  out += '}';
  return out;
}

std::string inj_label(std::size_t tag, std::string_view payload) {
  std::string out = "in" + std::to_string(tag) + "(";
  out += payload;
  out += ')';
  return out;
}

std::string Label::render() const {
  switch (kind) {
    case Kind::atom:
      return text;
    case Kind::tuple: {
      std::vector<std::string> parts;
      parts.reserve(items.size());
      for (const auto& it : items) parts.push_back(it.render());
      return tuple_label(parts);
    }
    case Kind::map: {
      std::vector<std::pair<std::string, std::string>> parts;
      for (std::size_t i = 0; i + 1 < items.size(); i += 2)
        parts.emplace_back(items[i].render(), items[i + 1].render());
      return map_label(parts);
    }
    case Kind::inj:
      return inj_label(tag, items.at(0).render());
  }
  return text;
}

std::size_t Label::size() const {
  return kind == Kind::map ? items.size() / 2 : items.size();
}

const Label& Label::operator[](std::size_t i) const {
  if (kind != Kind::tuple || i >= items.size())
    throw LabelError("label '" + render() + "' has no tuple component " + std::to_string(i));
  return items[i];
}

const Label& Label::key(std::size_t i) const {
  if (kind != Kind::map || 2 * i >= items.size())
    throw LabelError("label '" + render() + "' has no map entry " + std::to_string(i));
  return items[2 * i];
}

const Label& Label::value(std::size_t i) const {
  if (kind != Kind::map || 2 * i + 1 >= items.size())
    throw LabelError("label '" + render() + "' has no map entry " + std::to_string(i));
  return items[2 * i + 1];
}

const Label& Label::payload() const {
  if (kind != Kind::inj) throw LabelError("label '" + render() + "' is not an injection");
  return items[0];
}

const Label& Label::at(std::string_view k) const {
  if (kind == Kind::map) {
    for (std::size_t i = 0; i + 1 < items.size(); i += 2)
      if (items[i].render() == k) return items[i + 1];
  }
  throw LabelError("label '" + render() + "' has no key '" + std::string(k) + "'");
}

namespace {

bool is_special(char c) {
  return c == '(' || c == ')' || c == '{' || c == '}' || c == ',' || c == ':';
}

class LabelParser {
 public:
  explicit LabelParser(std::string_view s) : s_(s) {}

  std::optional<Label> parse_all() {
    auto l = parse();
    if (!l || pos_ != s_.size()) return std::nullopt;
    return l;
  }

 private:
  std::optional<Label> parse() {
    if (pos_ >= s_.size()) return std::nullopt;
    char c = s_[pos_];
    if (c == '(') return parse_seq(Label::Kind::tuple, ')');
    if (c == '{') return parse_seq(Label::Kind::map, '}');
    if (is_special(c)) return std::nullopt;
    std::size_t start = pos_;
    while (pos_ < s_.size() && !is_special(s_[pos_])) ++pos_;
    std::string_view word = s_.substr(start, pos_ - start);
    if (pos_ < s_.size() && s_[pos_] == '(' && word.size() > 2 && word.substr(0, 2) == "in") {
      std::string_view digits = word.substr(2);
      bool numeric = !digits.empty();
      for (char d : digits) numeric = numeric && d >= '0' && d <= '9';
      if (numeric) {
        ++pos_;
        auto inner = parse();
        if (!inner || pos_ >= s_.size() || s_[pos_] != ')') return std::nullopt;
        ++pos_;
        Label l;
        l.kind = Label::Kind::inj;
        l.tag = std::stoul(std::string(digits));
        l.items.push_back(std::move(*inner));
        return l;
      }
    }
    Label l;
    l.text = std::string(word);
    return l;
  }

  std::optional<Label> parse_seq(Label::Kind kind, char close) {
    ++pos_;
    Label l;
    l.kind = kind;
    if (pos_ < s_.size() && s_[pos_] == close) {
      ++pos_;
      return l;
    }
    while (true) {
      auto item = parse();
      if (!item) return std::nullopt;
      l.items.push_back(std::move(*item));
      if (kind == Label::Kind::map) {
        if (pos_ >= s_.size() || s_[pos_] != ':') return std::nullopt;
        ++pos_;
        auto v = parse();
        if (!v) return std::nullopt;
        l.items.push_back(std::move(*v));
      }
      if (pos_ >= s_.size()) return std::nullopt;
      if (s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (s_[pos_] == close) {
        ++pos_;
        return l;
      }
      return std::nullopt;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Label parse_label(std::string_view text) {
  if (auto l = LabelParser(text).parse_all()) return *l;
  Label atom;
  atom.text = std::string(text);
  return atom;
}

}  // namespace polydyn
