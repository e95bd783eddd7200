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

#include "scenedesc/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <stdexcept>

namespace scenedesc {
namespace {

bool is_split_char(UChar32 c) {
  switch (c) {
    case ',': case '.': case '\'': case '"': case '[': case ']':
    case '-': case ';': case ':': case '!': case '?': case '(':
    case ')': case '/': case '`':
    case 0x2018: case 0x2019: case 0x201C: case 0x201D: case 0x201E:
    case 0x2013: case 0x2014:
      return true;
    default:
      return false;
  }
}

std::string to_utf8(UChar32 c) {
  std::string out;
  icu::UnicodeString(c).toUTF8String(out);
  return out;
}

icu::UnicodeString normalize(std::string_view text) {
  icu::UnicodeString raw = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalizer unavailable");
  icu::UnicodeString out = nfc->normalize(raw, status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
  out.toLower(icu::Locale::getRoot());
  // Lowercasing can produce decomposed sequences (e.g. U+0130).
  out = nfc->normalize(out, status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
  return out;
}

}  // namespace

std::vector<std::string> TokenStream::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens_.size());
  for (const auto& t : tokens_) out.push_back(t.surface);
  return out;
}

std::string TokenStream::joined() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out += ' ';
    out += tokens_[i].surface;
  }
  return out;
}

TokenKind classify_surface(std::string_view surface) {
  if (surface == "[" || surface == "]") return TokenKind::kBracket;
  if (!surface.empty() &&
      std::all_of(surface.begin(), surface.end(),
                  [](char c) { return c >= '0' && c <= '9'; })) {
    return TokenKind::kNumeral;
  }
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(surface.data(), static_cast<int32_t>(surface.size())));
  if (u.countChar32() == 1 && is_split_char(u.char32At(0))) {
    return TokenKind::kPunctuation;
  }
  return TokenKind::kWord;
}

TokenStream tokenize(std::string_view text) {
  const icu::UnicodeString norm = normalize(text);
  std::vector<Token> tokens;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    tokens.push_back(Token{word, classify_surface(word)});
    word.clear();
  };
  for (int32_t i = 0; i < norm.length(); i = norm.moveIndex32(i, 1)) {
    const UChar32 c = norm.char32At(i);
    if (u_isUWhiteSpace(c) || u_iscntrl(c)) {
      flush();
    } else if (is_split_char(c)) {
      flush();
      std::string s = to_utf8(c);
      tokens.push_back(Token{s, classify_surface(s)});
    } else {
      word += to_utf8(c);
    }
  }
  flush();
  return TokenStream(std::move(tokens));
}

TokenStream from_surfaces(const std::vector<std::string>& surfaces) {
  std::vector<Token> tokens;
  tokens.reserve(surfaces.size());
  for (const auto& s : surfaces) tokens.push_back(Token{s, classify_surface(s)});
  return TokenStream(std::move(tokens));
}

NGramCounts ngrams(const TokenStream& stream, std::size_t order) {
  if (order == 0) throw std::invalid_argument("n-gram order must be >= 1");
  NGramCounts counts;
  const auto& toks = stream.tokens();
  if (toks.size() < order) return counts;
  for (std::size_t i = 0; i + order <= toks.size(); ++i) {
    NGram gram;
    gram.reserve(order);
    for (std::size_t k = 0; k < order; ++k) gram.push_back(toks[i + k].surface);
    ++counts[std::move(gram)];
  }
  return counts;
}

}  // namespace scenedesc
