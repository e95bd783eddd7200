// Copyright 2026 The scenedesc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Rule-based scene-graph parsing over a closed traffic vocabulary and
// tuple-level F1 matching between a candidate and a reference set.

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "scenedesc/lexicon.hpp"
#include "scenedesc/text.hpp"

namespace scenedesc {

// Lexicon sections the segmenter understands. Other sections are ignored.
inline constexpr std::string_view kObjectsSection = "objects";
inline constexpr std::string_view kAttributesSection = "attributes";
inline constexpr std::string_view kCountsSection = "counts";
inline constexpr std::string_view kRelationsSection = "relations";
inline constexpr std::string_view kDeterminersSection = "determiners";
inline constexpr std::string_view kCopulasSection = "copulas";
inline constexpr std::string_view kConjunctionsSection = "conjunctions";

enum class ItemClass {
  kObject,
  kAttribute,
  kCount,
  kRelation,
  kDeterminer,
  kCopula,
  kConjunction,
  kComma,
  kPeriod,
  kSignName,
  kOther,
};

std::string_view item_class_name(ItemClass c);
std::optional<ItemClass> parse_item_class(std::string_view name);

struct LexicalItem {
  ItemClass cls = ItemClass::kOther;
  std::string value;    // canonical head, sign name, or numeral
  std::string surface;  // covered tokens joined by spaces
  std::size_t begin = 0;
  std::size_t end = 0;  // token span [begin, end)
};

// Longest-match segmentation of a token stream into lexical items.
std::vector<LexicalItem> segment(const TokenStream& stream, const Lexicon& lexicon);

class GrammarError : public std::runtime_error {
 public:
  GrammarError(std::size_t line, const std::string& what)
      : std::runtime_error("grammar line " + std::to_string(line) + ": " + what) {}
};

// Ordered `PATTERN => EMIT; EMIT` rules over lexical item classes.
//
// Pattern elements are separated by spaces:
//   OBJ            one item of a class (OBJ ATTR COUNT REL DET BE CONJ COMMA
//                  PERIOD SIGN WORD, or ANY)
//   OBJ:s          the same, bound to variable `s`
//   (ATTR|COUNT)   any of several classes
//   "there"        an item whose surface is exactly `there`
//   X? X* X+       optional / zero or more / one or more (variables allowed
//                  only on single or optional elements)
// Emits: obj(o), attr(o, a), rel(s, r, o). Arguments are variables or
// double-quoted literal values. An emit naming an unbound optional variable
// is skipped.
class Grammar {
 public:
  struct Element {
    std::vector<ItemClass> classes;  // empty = any
    std::string literal;             // non-empty = surface match
    std::string var;
    char quantifier = 0;  // 0, '?', '*', '+'
  };
  struct Emit {
    enum class Kind { kObject, kAttribute, kRelation } kind;
    std::vector<std::string> args;  // "$var" or literal value
  };
  struct Rule {
    std::vector<Element> pattern;
    std::vector<Emit> emits;
    std::size_t line = 0;
  };

  static Grammar parse(std::string_view text);
  static Grammar load(const std::string& path);

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

// Objects, (object, attribute) pairs and (object, relation, object) triples.
// Adding an attribute or relation also adds its objects.
class SceneGraph {
 public:
  void add_object(const std::string& o) { objects_.insert(o); }
  void add_attribute(const std::string& o, const std::string& a);
  void add_relation(const std::string& s, const std::string& r, const std::string& o);

  const std::set<std::string>& objects() const { return objects_; }
  const std::set<std::pair<std::string, std::string>>& attributes() const { return attributes_; }
  const std::set<std::tuple<std::string, std::string, std::string>>& relations() const {
    return relations_;
  }
  bool empty() const { return objects_.empty(); }

  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;

 private:
  std::set<std::string> objects_;
  std::set<std::pair<std::string, std::string>> attributes_;
  std::set<std::tuple<std::string, std::string, std::string>> relations_;
};

SceneGraph parse_scene_graph(const TokenStream& stream, const Lexicon& lexicon,
                             const Grammar& grammar);

struct SemanticTuple {
  std::vector<std::string> elements;  // arity 1, 2 or 3

  std::size_t arity() const { return elements.size(); }
  std::string to_string() const;  // "(car, parked-on, side)"
  auto operator<=>(const SemanticTuple&) const = default;
};

using TupleSet = std::set<SemanticTuple>;

TupleSet tuples(const SceneGraph& graph);

// Maps every element to its lexicon head.
TupleSet canonicalize(const TupleSet& set, const Lexicon& lexicon);

struct SpiceScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t matched = 0;
  std::size_t candidate_tuples = 0;
  std::size_t reference_tuples = 0;
  bool empty_reference = false;
};

// Synonym-aware tuple F1.
SpiceScore spice_match(const TupleSet& candidate, const TupleSet& reference,
                       const Lexicon& lexicon);

// Candidate graph against the tuple union of all reference graphs.
SpiceScore spice(const TokenStream& candidate, std::span<const TokenStream> references,
                 const Lexicon& lexicon, const Grammar& grammar);

}  // namespace scenedesc
