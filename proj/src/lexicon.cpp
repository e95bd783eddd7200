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

#include "scenedesc/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace scenedesc {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

constexpr std::string_view kVersionTag = "lexicon-version:";

}  // namespace

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  std::string section = "synonyms";
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::map<std::vector<std::string>, std::size_t> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      if (body.starts_with(kVersionTag)) {
        lex.version_ = std::string(trim(body.substr(kVersionTag.size())));
      }
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw LexiconError(line_no, "malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    LexiconEntry entry;
    entry.section = section;
    std::string_view head = line;
    std::string_view rest;
    if (const auto colon = line.find(':'); colon != std::string_view::npos) {
      head = trim(line.substr(0, colon));
      rest = trim(line.substr(colon + 1));
    }
    if (head.empty()) throw LexiconError(line_no, "empty head");
    const TokenStream head_tokens = tokenize(head);
    entry.head = head_tokens.joined();
    // Hyphenated heads keep their written form ("one-way", "parked-on").
    if (head.find(' ') == std::string_view::npos) {
      std::string lowered;
      for (const auto& t : head_tokens) lowered += t.surface;
      entry.head = lowered;
    }
    entry.phrases.push_back(head_tokens.surfaces());
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string_view item = trim(rest.substr(0, comma));
      if (item.empty()) throw LexiconError(line_no, "empty synonym");
      entry.phrases.push_back(tokenize(item).surfaces());
      rest = comma == std::string_view::npos ? std::string_view{}
                                             : rest.substr(comma + 1);
    }
    std::vector<std::vector<std::string>> unique;
    for (auto& phrase : entry.phrases) {
      if (phrase.empty()) throw LexiconError(line_no, "phrase has no tokens");
      if (std::find(unique.begin(), unique.end(), phrase) != unique.end()) continue;
      if (auto it = seen.find(phrase); it != seen.end()) {
        std::string joined;
        for (const auto& t : phrase) joined += (joined.empty() ? "" : " ") + t;
        throw LexiconError(line_no, "phrase '" + joined + "' already belongs to '" +
                                        lex.entries_[it->second].head + "'");
      }
      seen.emplace(phrase, lex.entries_.size());
      unique.push_back(std::move(phrase));
    }
    entry.phrases = std::move(unique);
    lex.entries_.push_back(std::move(entry));
  }
  lex.index();
  return lex;
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Lexicon::index() {
  phrase_index_.clear();
  head_index_.clear();
  max_phrase_length_ = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    head_index_.emplace(entries_[i].head, i);
    for (const auto& p : entries_[i].phrases) {
      phrase_index_.emplace(p, i);
      max_phrase_length_ = std::max(max_phrase_length_, p.size());
    }
  }
}

std::vector<const LexiconEntry*> Lexicon::section(std::string_view name) const {
  std::vector<const LexiconEntry*> out;
  for (const auto& e : entries_) {
    if (e.section == name) out.push_back(&e);
  }
  return out;
}

std::optional<LexiconMatch> Lexicon::longest_match(
    const std::vector<std::string>& tokens, std::size_t pos,
    std::string_view section) const {
  const std::size_t limit = std::min(max_phrase_length_, tokens.size() - std::min(pos, tokens.size()));
  for (std::size_t len = limit; len > 0; --len) {
    std::vector<std::string> key(tokens.begin() + static_cast<std::ptrdiff_t>(pos),
                                 tokens.begin() + static_cast<std::ptrdiff_t>(pos + len));
    auto it = phrase_index_.find(key);
    if (it == phrase_index_.end()) continue;
    const LexiconEntry& e = entries_[it->second];
    if (!section.empty() && e.section != section) continue;
    return LexiconMatch{&e, len};
  }
  return std::nullopt;
}

const LexiconEntry* Lexicon::find_word(std::string_view surface) const {
  auto it = phrase_index_.find(std::vector<std::string>{std::string(surface)});
  return it == phrase_index_.end() ? nullptr : &entries_[it->second];
}

const LexiconEntry* Lexicon::find_phrase(const std::vector<std::string>& phrase) const {
  auto it = phrase_index_.find(phrase);
  return it == phrase_index_.end() ? nullptr : &entries_[it->second];
}

std::string Lexicon::canonical(std::string_view element) const {
  if (is_head(element)) return std::string(element);
  if (const LexiconEntry* e = find_phrase(tokenize(element).surfaces())) return e->head;
  return std::string(element);
}

bool Lexicon::is_head(std::string_view element) const {
  return head_index_.find(element) != head_index_.end();
}

}  // namespace scenedesc
