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

#include "scenedesc/scene_graph.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace scenedesc {
namespace {

struct ClassName {
  ItemClass cls;
  std::string_view name;
};

constexpr std::array<ClassName, 11> kClassNames = {{
    {ItemClass::kObject, "OBJ"},
    {ItemClass::kAttribute, "ATTR"},
    {ItemClass::kCount, "COUNT"},
    {ItemClass::kRelation, "REL"},
    {ItemClass::kDeterminer, "DET"},
    {ItemClass::kCopula, "BE"},
    {ItemClass::kConjunction, "CONJ"},
    {ItemClass::kComma, "COMMA"},
    {ItemClass::kPeriod, "PERIOD"},
    {ItemClass::kSignName, "SIGN"},
    {ItemClass::kOther, "WORD"},
}};

std::optional<ItemClass> section_class(std::string_view section) {
  if (section == kObjectsSection) return ItemClass::kObject;
  if (section == kAttributesSection) return ItemClass::kAttribute;
  if (section == kCountsSection) return ItemClass::kCount;
  if (section == kRelationsSection) return ItemClass::kRelation;
  if (section == kDeterminersSection) return ItemClass::kDeterminer;
  if (section == kCopulasSection) return ItemClass::kCopula;
  if (section == kConjunctionsSection) return ItemClass::kConjunction;
  return std::nullopt;
}

std::string join(const std::vector<std::string>& toks, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    if (i > b) out += ' ';
    out += toks[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_quoted(std::string_view s) {
  return s.size() >= 2 && s.front() == '"' && s.back() == '"';
}

Grammar::Element parse_element(std::string_view text, std::size_t line) {
  Grammar::Element el;
  if (text.empty()) throw GrammarError(line, "empty pattern element");
  if (const char q = text.back(); q == '?' || q == '*' || q == '+') {
    el.quantifier = q;
    text.remove_suffix(1);
  }
  if (const auto colon = text.rfind(':');
      colon != std::string_view::npos && !is_quoted(text)) {
    el.var = std::string(text.substr(colon + 1));
    text = text.substr(0, colon);
    if (el.var.empty()) throw GrammarError(line, "empty variable name");
    if (el.quantifier == '*' || el.quantifier == '+') {
      throw GrammarError(line, "repeated elements cannot bind a variable");
    }
  }
  if (is_quoted(text)) {
    el.literal = std::string(text.substr(1, text.size() - 2));
    if (el.literal.empty()) throw GrammarError(line, "empty literal");
    return el;
  }
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  while (!text.empty()) {
    const auto bar = text.find('|');
    const std::string_view name = trim(text.substr(0, bar));
    if (name != "ANY") {
      auto cls = parse_item_class(name);
      if (!cls) throw GrammarError(line, "unknown item class '" + std::string(name) + "'");
      el.classes.push_back(*cls);
    }
    text = bar == std::string_view::npos ? std::string_view{} : text.substr(bar + 1);
  }
  return el;
}

Grammar::Emit parse_emit(std::string_view text, std::size_t line,
                         const std::set<std::string>& vars) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw GrammarError(line, "malformed emit '" + std::string(text) + "'");
  }
  const std::string_view name = trim(text.substr(0, open));
  Grammar::Emit emit{};
  std::size_t arity = 0;
  if (name == "obj") {
    emit.kind = Grammar::Emit::Kind::kObject;
    arity = 1;
  } else if (name == "attr") {
    emit.kind = Grammar::Emit::Kind::kAttribute;
    arity = 2;
  } else if (name == "rel") {
    emit.kind = Grammar::Emit::Kind::kRelation;
    arity = 3;
  } else {
    throw GrammarError(line, "unknown emit '" + std::string(name) + "'");
  }
  std::string_view args = text.substr(open + 1, text.size() - open - 2);
  while (!args.empty()) {
    const auto comma = args.find(',');
    const std::string_view arg = trim(args.substr(0, comma));
    if (is_quoted(arg)) {
      emit.args.emplace_back(arg.substr(1, arg.size() - 2));
    } else {
      if (!vars.contains(std::string(arg))) {
        throw GrammarError(line, "unbound variable '" + std::string(arg) + "'");
      }
      emit.args.push_back("$" + std::string(arg));
    }
    args = comma == std::string_view::npos ? std::string_view{} : args.substr(comma + 1);
  }
  if (emit.args.size() != arity) {
    throw GrammarError(line, std::string(name) + " takes " + std::to_string(arity) + " arguments");
  }
  return emit;
}

// Splits on spaces outside double quotes.
std::vector<std::string_view> split_pattern(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    bool quoted = false;
    while (j < text.size() && (quoted || text[j] != ' ')) {
      if (text[j] == '"') quoted = !quoted;
      ++j;
    }
    out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

using Bindings = std::map<std::string, std::size_t, std::less<>>;

class Matcher {
 public:
  Matcher(const Grammar::Rule& rule, const std::vector<LexicalItem>& items)
      : rule_(rule), items_(items) {}

  bool match(std::size_t e, std::size_t pos, Bindings& b) const {
    if (e == rule_.pattern.size()) return true;
    const Grammar::Element& el = rule_.pattern[e];
    switch (el.quantifier) {
      case 0:
        return one(el, e, pos, b);
      case '?':
        return one(el, e, pos, b) || match(e + 1, pos, b);
      default: {
        std::size_t k = 0;
        while (pos + k < items_.size() && accepts(el, items_[pos + k])) ++k;
        const std::size_t min = el.quantifier == '+' ? 1 : 0;
        for (std::size_t take = k + 1; take-- > min;) {
          if (match(e + 1, pos + take, b)) return true;
        }
        return false;
      }
    }
  }

 private:
  bool one(const Grammar::Element& el, std::size_t e, std::size_t pos, Bindings& b) const {
    if (pos >= items_.size() || !accepts(el, items_[pos])) return false;
    if (!el.var.empty()) b[el.var] = pos;
    if (match(e + 1, pos + 1, b)) return true;
    if (!el.var.empty()) b.erase(el.var);
    return false;
  }

  static bool accepts(const Grammar::Element& el, const LexicalItem& item) {
    if (!el.literal.empty()) return item.surface == el.literal;
    if (el.classes.empty()) return true;
    return std::find(el.classes.begin(), el.classes.end(), item.cls) != el.classes.end();
  }

  const Grammar::Rule& rule_;
  const std::vector<LexicalItem>& items_;
};

}  // namespace

std::string_view item_class_name(ItemClass c) {
  for (const auto& cn : kClassNames) {
    if (cn.cls == c) return cn.name;
  }
  return "WORD";
}

std::optional<ItemClass> parse_item_class(std::string_view name) {
  for (const auto& cn : kClassNames) {
    if (cn.name == name) return cn.cls;
  }
  return std::nullopt;
}

std::vector<LexicalItem> segment(const TokenStream& stream, const Lexicon& lexicon) {
  const std::vector<std::string> toks = stream.surfaces();
  std::vector<LexicalItem> items;
  std::size_t i = 0;
  while (i < toks.size()) {
    LexicalItem item;
    item.begin = i;
    if (toks[i] == "[") {
      std::size_t close = i + 1;
      while (close < toks.size() && toks[close] != "]" && toks[close] != "[") ++close;
      if (close < toks.size() && toks[close] == "]" && close > i + 1) {
        item.cls = ItemClass::kSignName;
        item.value = join(toks, i + 1, close);
        item.end = close + 1;
        item.surface = join(toks, i, item.end);
        items.push_back(std::move(item));
        i = close + 1;
        continue;
      }
    }
    if (toks[i] == ",") {
      item.cls = ItemClass::kComma;
    } else if (toks[i] == ".") {
      item.cls = ItemClass::kPeriod;
    } else if (auto m = lexicon.longest_match(toks, i)) {
      if (auto cls = section_class(m->entry->section)) {
        item.cls = *cls;
        item.value = m->entry->head;
        item.end = i + m->length;
        item.surface = join(toks, i, item.end);
        items.push_back(std::move(item));
        i += m->length;
        continue;
      }
    } else if (stream[i].kind == TokenKind::kNumeral) {
      item.cls = ItemClass::kCount;
    }
    item.value = toks[i];
    item.surface = toks[i];
    item.end = i + 1;
    items.push_back(std::move(item));
    ++i;
  }
  return items;
}

Grammar Grammar::parse(std::string_view text) {
  Grammar g;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto arrow = line.find("=>");
    if (arrow == std::string_view::npos) throw GrammarError(line_no, "missing '=>'");
    Rule rule;
    rule.line = line_no;
    std::set<std::string> vars;
    for (std::string_view part : split_pattern(trim(line.substr(0, arrow)))) {
      Element el = parse_element(part, line_no);
      if (!el.var.empty() && !vars.insert(el.var).second) {
        throw GrammarError(line_no, "variable '" + el.var + "' bound twice");
      }
      rule.pattern.push_back(std::move(el));
    }
    if (rule.pattern.empty()) throw GrammarError(line_no, "empty pattern");
    std::string_view emits = trim(line.substr(arrow + 2));
    while (!emits.empty()) {
      const auto semi = emits.find(';');
      const std::string_view e = trim(emits.substr(0, semi));
      if (!e.empty()) rule.emits.push_back(parse_emit(e, line_no, vars));
      emits = semi == std::string_view::npos ? std::string_view{} : emits.substr(semi + 1);
    }
    if (rule.emits.empty()) throw GrammarError(line_no, "rule emits nothing");
    g.rules_.push_back(std::move(rule));
  }
  return g;
}

Grammar Grammar::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open grammar file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void SceneGraph::add_attribute(const std::string& o, const std::string& a) {
  objects_.insert(o);
  attributes_.emplace(o, a);
}

void SceneGraph::add_relation(const std::string& s, const std::string& r, const std::string& o) {
  objects_.insert(s);
  objects_.insert(o);
  relations_.emplace(s, r, o);
}

SceneGraph parse_scene_graph(const TokenStream& stream, const Lexicon& lexicon,
                             const Grammar& grammar) {
  const std::vector<LexicalItem> items = segment(stream, lexicon);
  SceneGraph graph;
  for (const auto& rule : grammar.rules()) {
    const Matcher matcher(rule, items);
    for (std::size_t start = 0; start < items.size(); ++start) {
      Bindings b;
      if (!matcher.match(0, start, b)) continue;
      for (const auto& emit : rule.emits) {
        std::vector<std::string> vals;
        for (const auto& arg : emit.args) {
          if (arg.starts_with('$')) {
            auto it = b.find(std::string_view(arg).substr(1));
            if (it == b.end()) break;
            vals.push_back(items[it->second].value);
          } else {
            vals.push_back(arg);
          }
        }
        if (vals.size() != emit.args.size()) continue;
        switch (emit.kind) {
          case Grammar::Emit::Kind::kObject:
            graph.add_object(vals[0]);
            break;
          case Grammar::Emit::Kind::kAttribute:
            graph.add_attribute(vals[0], vals[1]);
            break;
          case Grammar::Emit::Kind::kRelation:
            graph.add_relation(vals[0], vals[1], vals[2]);
            break;
        }
      }
    }
  }
  return graph;
}

std::string SemanticTuple::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += ", ";
    out += elements[i];
  }
  return out + ")";
}

TupleSet tuples(const SceneGraph& graph) {
  TupleSet out;
  for (const auto& o : graph.objects()) out.insert({{o}});
  for (const auto& [o, a] : graph.attributes()) out.insert({{o, a}});
  for (const auto& [s, r, o] : graph.relations()) out.insert({{s, r, o}});
  return out;
}

TupleSet canonicalize(const TupleSet& set, const Lexicon& lexicon) {
  TupleSet out;
  for (const auto& t : set) {
    SemanticTuple c;
    for (const auto& e : t.elements) c.elements.push_back(lexicon.canonical(e));
    out.insert(std::move(c));
  }
  return out;
}

SpiceScore spice_match(const TupleSet& candidate, const TupleSet& reference,
                       const Lexicon& lexicon) {
  const TupleSet cand = canonicalize(candidate, lexicon);
  const TupleSet ref = canonicalize(reference, lexicon);
  SpiceScore s;
  s.candidate_tuples = cand.size();
  s.reference_tuples = ref.size();
  s.empty_reference = ref.empty();
  for (const auto& t : cand) s.matched += ref.contains(t) ? 1 : 0;
  if (s.matched == 0) return s;
  const auto m = static_cast<double>(s.matched);
  s.precision = m / static_cast<double>(cand.size());
  s.recall = m / static_cast<double>(ref.size());
  s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

SpiceScore spice(const TokenStream& candidate, std::span<const TokenStream> references,
                 const Lexicon& lexicon, const Grammar& grammar) {
  if (references.empty()) throw std::invalid_argument("SPICE needs at least one reference");
  TupleSet ref;
  for (const auto& r : references) {
    TupleSet t = tuples(parse_scene_graph(r, lexicon, grammar));
    ref.insert(t.begin(), t.end());
  }
  return spice_match(tuples(parse_scene_graph(candidate, lexicon, grammar)), ref, lexicon);
}

}  // namespace scenedesc
