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
#include <string>
#include <string_view>
#include <vector>

namespace scenedesc {

enum class TokenKind { kWord, kNumeral, kPunctuation, kBracket };

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::kWord;

  friend bool operator==(const Token&, const Token&) = default;
};

// Normalized token sequence shared by every metric and lint rule.
class TokenStream {
 public:
  TokenStream() = default;
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const Token& operator[](std::size_t i) const { return tokens_[i]; }
  auto begin() const { return tokens_.begin(); }
  auto end() const { return tokens_.end(); }

  std::vector<std::string> surfaces() const;

  // Tokens re-joined with single spaces.
  std::string joined() const;

  friend bool operator==(const TokenStream&, const TokenStream&) = default;

 private:
  std::vector<Token> tokens_;
};

// NFC-normalizes and lowercases `text`, then splits it into words, numerals,
// punctuation and brackets. Hyphens, commas, periods, quotes and brackets are
// always separate tokens.
TokenStream tokenize(std::string_view text);

// Builds a stream from already tokenized surfaces (assigns kinds only).
TokenStream from_surfaces(const std::vector<std::string>& surfaces);

TokenKind classify_surface(std::string_view surface);

// An n-gram is the ordered list of its token surfaces.
using NGram = std::vector<std::string>;
using NGramCounts = std::map<NGram, std::size_t>;

// All contiguous windows of length `order`, with multiplicity.
// Throws std::invalid_argument when order is 0.
NGramCounts ngrams(const TokenStream& stream, std::size_t order);

}  // namespace scenedesc
