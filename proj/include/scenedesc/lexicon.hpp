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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scenedesc/text.hpp"

namespace scenedesc {

class LexiconError : public std::runtime_error {
 public:
  LexiconError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// One `head: syn1, syn2, ...` line. Every phrase (the head included) is kept
// in tokenized form so multi-word and hyphenated entries match token streams.
struct LexiconEntry {
  std::string section;
  std::string head;
  std::vector<std::vector<std::string>> phrases;
};

struct LexiconMatch {
  const LexiconEntry* entry = nullptr;
  std::size_t length = 0;
};

// Synonym sets grouped by section. Sets are disjoint: a phrase belongs to at
// most one entry across the whole file.
//
// File format (UTF-8):
//   # comment
//   # lexicon-version: <string>
//   [section]
//   head: synonym, synonym, ...
//   head
// Entries before the first section header land in section "synonyms".
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon parse(std::string_view text);
  static Lexicon load(const std::string& path);

  const std::string& version() const { return version_; }
  const std::vector<LexiconEntry>& entries() const { return entries_; }
  std::vector<const LexiconEntry*> section(std::string_view name) const;

  // Longest phrase starting at `pos`, optionally restricted to one section.
  std::optional<LexiconMatch> longest_match(
      const std::vector<std::string>& tokens, std::size_t pos,
      std::string_view section = {}) const;

  // Canonical head for a single-token surface, if it is listed.
  const LexiconEntry* find_word(std::string_view surface) const;

  // Head of the entry whose phrase equals `phrase` exactly (tokenized).
  const LexiconEntry* find_phrase(const std::vector<std::string>& phrase) const;

  // Canonicalizes a tuple element: an exact phrase match maps to its head,
  // anything else is returned unchanged.
  std::string canonical(std::string_view element) const;

  bool is_head(std::string_view element) const;

  std::size_t max_phrase_length() const { return max_phrase_length_; }

 private:
  void index();

  std::string version_;
  std::vector<LexiconEntry> entries_;
  std::map<std::vector<std::string>, std::size_t> phrase_index_;
  std::map<std::string, std::size_t, std::less<>> head_index_;
  std::size_t max_phrase_length_ = 0;
};

}  // namespace scenedesc
