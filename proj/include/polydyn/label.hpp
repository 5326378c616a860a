#pragma once

// Structured labels for elements of composite constructions.
//
// Atoms are plain strings. Composite labels use a fixed bracket syntax:
//   tuple        (a,b,c)        also the empty tuple ()
//   function     {k1:v1,k2:v2}  also the empty function {}
//   injection    in3(x)         x placed in summand 3
// Atoms must avoid the characters ( ) { } , : for parsing to be exact.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polydyn {

std::string tuple_label(std::span<const std::string> items);
std::string tuple_label(std::initializer_list<std::string> items);
std::string map_label(std::span<const std::pair<std::string, std::string>> entries);
std::string inj_label(std::size_t tag, std::string_view payload);

struct Label {
  enum class Kind { atom, tuple, map, inj };

  Kind kind = Kind::atom;
  std::string text;          // atoms only
  std::size_t tag = 0;       // injections only
  std::vector<Label> items;  // tuple items, map keys and values interleaved, or the injected payload

  std::string render() const;

  std::size_t size() const;  // tuple arity / map entry count
  const Label& operator[](std::size_t i) const;  // tuple item
  const Label& key(std::size_t i) const;
  const Label& value(std::size_t i) const;
  const Label& payload() const;
  // Value of the map entry whose rendered key is `k`; throws LabelError if absent.
  const Label& at(std::string_view k) const;
};

/// Parses a label; anything that is not a well-formed composite is an atom.
Label parse_label(std::string_view text);

}  // namespace polydyn
