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

#include "scenedesc/lint.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "scenedesc/defaults.hpp"
#include "scenedesc/text.hpp"

namespace scenedesc {
namespace {

using Words = std::set<std::string, std::less<>>;

std::vector<GuidelineRule> build_catalog() {
  using C = Checkability;
  using S = Severity;
  using R = RuleScope;
  return {
      {"G001", "Describe every safety-critical element of the scene", C::kManual, S::kWarning, R::kSet},
      {"G002", "Use \"there is\" and \"there are\" sparingly", C::kAutomatic, S::kWarning, R::kSet},
      {"G003", "Leave out details that do not matter for driving", C::kManual, S::kWarning, R::kSentence},
      {"G004", "Describe only what is visible in the image", C::kManual, S::kWarning, R::kSentence},
      {"G005", "Do not invent speech or thoughts of road users", C::kManual, S::kWarning, R::kSentence},
      {"G006", "No names and no assumed gender for people", C::kAdvisory, S::kWarning, R::kSentence},
      {"G007", "Ten descriptions per image, mixing short and long ones", C::kAutomatic, S::kError, R::kSet},
      {"G008", "State the weather and the lighting", C::kAutomatic, S::kError, R::kSet},
      {"G009", "Include one long sentence covering all critical elements", C::kAutomatic, S::kWarning, R::kSet},
      {"G010", "Short sentences cover one or two aspects", C::kAdvisory, S::kWarning, R::kSentence},
      {"G011", "Give positions relative to the ego vehicle", C::kAdvisory, S::kWarning, R::kSentence},
      {"G012", "Give counts for groups of road users", C::kAdvisory, S::kWarning, R::kSentence},
      {"G013", "No quotation marks", C::kAutomatic, S::kError, R::kSentence},
      {"G014", "No contractions", C::kAutomatic, S::kError, R::kSentence},
      {"G015", "Use the established traffic vocabulary", C::kManual, S::kWarning, R::kSentence},
      {"G016", "End every sentence with a period", C::kAutomatic, S::kError, R::kSentence},
      {"G017", "Use a serial comma in lists of three or more", C::kAutomatic, S::kWarning, R::kSentence},
      {"G018", "Exactly ten sentences per image", C::kAutomatic, S::kError, R::kSet},
      {"G019", "Put sign names in square brackets", C::kAutomatic, S::kWarning, R::kSentence},
      {"G020", "Write numbers as digits", C::kAutomatic, S::kWarning, R::kSentence},
      {"G021", "Descriptions are written by people, not generated", C::kManual, S::kWarning, R::kSet},
      {"G022", "Use American traffic terms", C::kAutomatic, S::kError, R::kSentence},
      {"G023", "Keep descriptions consistent across similar frames", C::kManual, S::kWarning, R::kSet},
      {"G024", "Describe the lane layout", C::kManual, S::kWarning, R::kSet},
      {"G025", "Describe road markings that matter", C::kManual, S::kWarning, R::kSentence},
      {"G026", "Describe what other road users are doing", C::kManual, S::kWarning, R::kSentence},
      {"G027", "Mention the road surface condition when relevant", C::kManual, S::kWarning, R::kSet},
      {"G028", "Mention obstructions and limited visibility", C::kManual, S::kWarning, R::kSentence},
      {"G029", "Mention emergency vehicles and unusual situations", C::kManual, S::kWarning, R::kSentence},
      {"G030", "Describe visible vehicle lights and signals", C::kManual, S::kWarning, R::kSentence},
      {"G031", "Point out risky pedestrian and cyclist behavior", C::kManual, S::kWarning, R::kSentence},
      {"G032", "Keep terminology and units consistent", C::kManual, S::kWarning, R::kSet},
      {"G033", "Say \"vehicle\" for mixed vehicle types", C::kAdvisory, S::kWarning, R::kSentence},
      {"G034", "Describe from the ego driver's point of view", C::kManual, S::kWarning, R::kSentence},
  };
}

// A word or a single punctuation code point, with byte offsets.
struct Lexeme {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string lower;
  bool word = false;
};

bool is_apostrophe(UChar32 c) { return c == 0x27 || c == 0x2019; }
bool is_word_char(UChar32 c) { return c >= 0 && u_isalnum(c); }

struct CodePoint {
  UChar32 c;
  std::size_t begin;
  std::size_t end;
};

std::vector<CodePoint> decode(std::string_view s) {
  std::vector<CodePoint> out;
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  int32_t len = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < len) {
    int32_t start = i;
    UChar32 c;
    U8_NEXT(p, i, len, c);
    out.push_back({c, static_cast<std::size_t>(start), static_cast<std::size_t>(i)});
  }
  return out;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

std::vector<Lexeme> lex(std::string_view text, const std::vector<CodePoint>& cps) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    UChar32 c = cps[i].c;
    if (is_word_char(c)) {
      std::size_t j = i + 1;
      while (j < cps.size()) {
        if (is_word_char(cps[j].c)) {
          ++j;
        } else if (is_apostrophe(cps[j].c) && j + 1 < cps.size() && is_word_char(cps[j + 1].c)) {
          j += 2;
        } else {
          break;
        }
      }
      Lexeme w{cps[i].begin, cps[j - 1].end, {}, true};
      for (std::size_t k = i; k < j; ++k) {
        if (is_apostrophe(cps[k].c)) {
          w.lower += '\'';
        } else {
          w.lower += ascii_lower(text.substr(cps[k].begin, cps[k].end - cps[k].begin));
        }
      }
      out.push_back(std::move(w));
      i = j;
    } else if (c >= 0 && (u_isUWhiteSpace(c) || u_iscntrl(c))) {
      ++i;
    } else {
      out.push_back({cps[i].begin, cps[i].end,
                     std::string(text.substr(cps[i].begin, cps[i].end - cps[i].begin)), false});
      ++i;
    }
  }
  return out;
}

bool contains(const Words& set, std::string_view w) { return set.find(w) != set.end(); }

const Words& number_words() {
  static const Words w{"zero",     "two",      "three",     "four",     "five",    "six",
                       "seven",    "eight",    "nine",      "ten",      "eleven",  "twelve",
                       "thirteen", "fourteen", "fifteen",   "sixteen",  "seventeen",
                       "eighteen", "nineteen", "twenty",    "thirty",   "forty",   "fifty",
                       "sixty",    "seventy",  "eighty",    "ninety",   "hundred", "thousand",
                       "dozen",    "dozens"};
  return w;
}

const Words& s_contraction_stems() {
  static const Words w{"it",   "that", "there", "here", "what", "who", "where",
                       "he",   "she",  "let",   "how",  "when", "why", "everyone",
                       "nobody", "someone", "something", "nothing", "everything"};
  return w;
}

const Words& gendered_words() {
  static const Words w{"man",  "men",   "woman", "women", "boy",  "boys",  "girl",
                       "girls", "guy",  "guys",  "lady",  "ladies", "gentleman",
                       "gentlemen", "he", "she", "him", "his", "her", "hers",
                       "himself", "herself", "mr", "mrs", "ms", "businessman",
                       "policeman", "policewoman"};
  return w;
}

const Words& entity_words() {
  static const Words w{"car",       "cars",       "vehicle",  "vehicles",  "truck",
                       "trucks",    "bus",        "buses",    "suv",       "suvs",
                       "taxi",      "taxis",      "van",      "vans",      "pedestrian",
                       "pedestrians", "person",   "people",   "cyclist",   "cyclists",
                       "motorcycle", "motorcycles", "bicycle", "bicycles"};
  return w;
}

const Words& plural_entity_words() {
  static const Words w{"cars",     "vehicles", "trucks",      "buses",     "suvs",
                       "taxis",    "vans",     "pedestrians", "people",    "cyclists",
                       "motorcycles", "bicycles"};
  return w;
}

const Words& position_words() {
  static const Words w{"left",     "right",     "front",     "rear",       "ahead",
                       "behind",   "near",      "nearby",    "far",        "opposite",
                       "leftmost", "rightmost", "side",      "sides",      "lane",
                       "lanes",    "sidewalk",  "sidewalks", "crosswalk",  "intersection",
                       "street",   "road",      "distance",  "next",       "beside",
                       "across",   "middle",    "center",    "corner",     "shoulder"};
  return w;
}

const Words& quantifier_words() {
  static const Words w{"many",  "several", "multiple", "some", "no",   "both", "few",
                       "all",   "other",   "one",      "a",    "an",   "two",  "three",
                       "four",  "five",    "six",      "seven", "eight", "nine", "ten",
                       "dozens", "numerous", "various", "lots", "group", "line", "row"};
  return w;
}

const Words& vague_vehicle_words() {
  static const Words w{"automobile", "automobiles", "motorbike", "motorbikes",
                       "motorcar",   "motorcars",   "auto",      "autos"};
  return w;
}

const Words& copulas() {
  static const Words w{"is", "are", "was", "were"};
  return w;
}

const Words& weather_words() {
  static const Words w{"clear", "rain", "rainy", "raining", "snow", "snowy", "snowing", "fog",
                       "foggy"};
  return w;
}

const Words& lighting_words() {
  static const Words w{"daytime", "nighttime"};
  return w;
}

const Words& meta_weather_terms(std::string_view weather) {
  static const Words clear{"clear"};
  static const Words rainy{"rain", "rainy", "raining"};
  static const Words snowy{"snow", "snowy", "snowing"};
  static const Words foggy{"fog", "foggy"};
  static const Words none;
  if (weather == "clear") return clear;
  if (weather == "rainy") return rainy;
  if (weather == "snowy") return snowy;
  if (weather == "foggy") return foggy;
  return none;
}

std::string expand_contraction(const std::string& w) {
  auto apos = w.find('\'');
  std::string stem = w.substr(0, apos);
  std::string suffix = w.substr(apos + 1);
  if (w == "can't") return "cannot";
  if (w == "won't") return "will not";
  if (w == "let's") return "let us";
  if (suffix == "t" && stem.size() > 1 && stem.back() == 'n') {
    return stem.substr(0, stem.size() - 1) + " not";
  }
  if (suffix == "s") return stem + " is";
  if (suffix == "re") return stem + " are";
  if (suffix == "ll") return stem + " will";
  if (suffix == "ve") return stem + " have";
  if (suffix == "m") return stem + " am";
  if (suffix == "d") return stem + " would";
  return stem;
}

bool is_contraction(const std::string& w) {
  auto apos = w.find('\'');
  if (apos == std::string::npos) return false;
  std::string stem = w.substr(0, apos);
  std::string suffix = w.substr(apos + 1);
  if (suffix == "t") return stem.size() > 1 && stem.back() == 'n';
  if (suffix == "re" || suffix == "ll" || suffix == "ve" || suffix == "m" || suffix == "d") {
    return true;
  }
  if (suffix == "s") return contains(s_contraction_stems(), stem);
  return false;
}

std::string q(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

std::string_view checkability_name(Checkability c) {
  switch (c) {
    case Checkability::kAutomatic: return "automatic";
    case Checkability::kAdvisory: return "advisory";
    case Checkability::kManual: return "manual";
  }
  return "manual";
}

std::string_view severity_name(Severity s) {
  return s == Severity::kError ? "error" : "warning";
}

std::optional<Severity> parse_severity(std::string_view s) {
  if (s == "error") return Severity::kError;
  if (s == "warning") return Severity::kWarning;
  return std::nullopt;
}

std::string_view scope_name(RuleScope s) {
  return s == RuleScope::kSet ? "set" : "sentence";
}

const std::vector<GuidelineRule>& rule_catalog() {
  static const std::vector<GuidelineRule> catalog = build_catalog();
  return catalog;
}

const GuidelineRule* find_rule(std::string_view id) {
  for (const auto& r : rule_catalog()) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

LintConfig LintConfig::defaults() {
  LintConfig cfg;
  cfg.american_terms = Lexicon::parse(default_american_terms_text());
  return cfg;
}

LintConfig LintConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lint config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("lint config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("lint config must be a JSON object");

  LintConfig cfg = defaults();
  auto size_field = [&](const char* key, std::size_t& dst) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_number_unsigned()) {
      throw std::invalid_argument(std::string("lint config: ") + key + " must be a non-negative integer");
    }
    dst = v.get<std::size_t>();
  };
  static const std::set<std::string> known{"descriptions_per_image", "long_sentence_tokens",
                                           "there_is_max", "short_sentence_max_copulas",
                                           "advisory", "american_terms", "severity"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("lint config: unknown key " + key);
  }
  size_field("descriptions_per_image", cfg.descriptions_per_image);
  size_field("long_sentence_tokens", cfg.long_sentence_tokens);
  size_field("there_is_max", cfg.there_is_max);
  size_field("short_sentence_max_copulas", cfg.short_sentence_max_copulas);
  if (j.contains("advisory")) {
    if (!j["advisory"].is_boolean()) throw std::invalid_argument("lint config: advisory must be boolean");
    cfg.advisory = j["advisory"].get<bool>();
  }
  if (j.contains("american_terms")) {
    std::filesystem::path p = j["american_terms"].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
    cfg.american_terms = Lexicon::load(p.string());
  }
  if (j.contains("severity")) {
    for (const auto& [rule, sev] : j["severity"].items()) {
      if (!find_rule(rule)) throw std::invalid_argument("lint config: unknown rule " + rule);
      auto s = sev.is_string() ? parse_severity(sev.get<std::string>()) : std::nullopt;
      if (!s) throw std::invalid_argument("lint config: bad severity for " + rule);
      cfg.severity_overrides[rule] = *s;
    }
  }
  return cfg;
}

Severity LintConfig::severity_of(std::string_view rule) const {
  if (auto it = severity_overrides.find(rule); it != severity_overrides.end()) return it->second;
  const auto* r = find_rule(rule);
  return r ? r->severity : Severity::kWarning;
}

void Linter::lint_sentence_into(std::string_view text, std::optional<std::size_t> index,
                                std::vector<Diagnostic>& out) const {
  const auto cps = decode(text);
  const auto lexemes = lex(text, cps);
  std::vector<Diagnostic> found;
  auto emit = [&](const char* rule, std::size_t b, std::size_t e, std::string msg) {
    found.push_back({rule, index, Span{b, e}, config_.severity_of(rule), std::move(msg)});
  };
  auto source = [&](std::size_t b, std::size_t e) { return text.substr(b, e - b); };

  // bracket depth per lexeme
  std::vector<bool> bracketed(lexemes.size(), false);
  {
    int depth = 0;
    for (std::size_t i = 0; i < lexemes.size(); ++i) {
      if (lexemes[i].lower == "[") ++depth;
      bracketed[i] = depth > 0;
      if (lexemes[i].lower == "]" && depth > 0) --depth;
    }
  }

  // G013
  for (std::size_t i = 0; i < cps.size(); ++i) {
    UChar32 c = cps[i].c;
    bool quote = c == '"' || c == '`' || c == 0x201C || c == 0x201D || c == 0x201E ||
                 c == 0x201F || c == 0x2018 || c == 0x201B || c == 0x00AB || c == 0x00BB;
    if (is_apostrophe(c)) {
      bool prev_word = i > 0 && is_word_char(cps[i - 1].c);
      bool next_word = i + 1 < cps.size() && is_word_char(cps[i + 1].c);
      bool plural_possessive = prev_word && !next_word && (cps[i - 1].c == 's' || cps[i - 1].c == 'S');
      quote = !(prev_word && next_word) && !plural_possessive;
    }
    if (quote) {
      emit("G013", cps[i].begin, cps[i].end,
           "quotation mark " + q(source(cps[i].begin, cps[i].end)));
    }
  }

  for (std::size_t i = 0; i < lexemes.size(); ++i) {
    const auto& lx = lexemes[i];
    if (!lx.word) continue;
    // G014
    if (is_contraction(lx.lower)) {
      emit("G014", lx.begin, lx.end,
           "contraction " + q(source(lx.begin, lx.end)) + "; write " +
               q(expand_contraction(lx.lower)));
    }
    // G019
    if ((lx.lower == "sign" || lx.lower == "signs") && !bracketed[i]) {
      bool named = i > 0 && lexemes[i - 1].lower == "]";
      if (!named) {
        emit("G019", lx.begin, lx.end,
             q(source(lx.begin, lx.end)) + " without a bracketed sign name before it");
      }
    }
    if (config_.advisory) {
      if (contains(gendered_words(), lx.lower)) {
        emit("G006", lx.begin, lx.end, "gendered word " + q(source(lx.begin, lx.end)));
      }
      if (contains(vague_vehicle_words(), lx.lower)) {
        emit("G033", lx.begin, lx.end,
             q(source(lx.begin, lx.end)) + "; prefer 'vehicle'");
      }
      if (contains(plural_entity_words(), lx.lower)) {
        bool counted = false;
        for (std::size_t back = 1, seen = 0; back <= i && seen < 3; ++back) {
          const auto& prev = lexemes[i - back];
          if (!prev.word) continue;
          ++seen;
          bool digits = std::all_of(prev.lower.begin(), prev.lower.end(),
                                    [](char ch) { return ch >= '0' && ch <= '9'; });
          if (digits || contains(quantifier_words(), prev.lower) ||
              contains(number_words(), prev.lower)) {
            counted = true;
            break;
          }
        }
        if (!counted) {
          emit("G012", lx.begin, lx.end, q(source(lx.begin, lx.end)) + " without a count");
        }
      }
    }
  }

  // G020: hyphen-joined groups of words; a group with a non-number word is a
  // compound modifier such as "two-way".
  for (std::size_t i = 0; i < lexemes.size();) {
    if (!lexemes[i].word) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j + 1 < lexemes.size() && lexemes[j].lower == "-" && lexemes[j + 1].word &&
           lexemes[j].begin == lexemes[j - 1].end && lexemes[j + 1].begin == lexemes[j].end) {
      j += 2;
    }
    bool all_numbers = true;
    for (std::size_t k = i; k < j; k += 2) {
      if (!contains(number_words(), lexemes[k].lower)) all_numbers = false;
    }
    if (all_numbers && !bracketed[i]) {
      emit("G020", lexemes[i].begin, lexemes[j - 1].end,
           "number " + q(source(lexemes[i].begin, lexemes[j - 1].end)) + " written as a word");
    }
    i = j;
  }

  // G022
  {
    std::vector<std::string> surfaces;
    surfaces.reserve(lexemes.size());
    for (const auto& lx : lexemes) surfaces.push_back(lx.lower);
    for (std::size_t i = 0; i < lexemes.size();) {
      if (bracketed[i]) {
        ++i;
        continue;
      }
      auto m = config_.american_terms.longest_match(surfaces, i);
      if (!m) {
        ++i;
        continue;
      }
      std::vector<std::string> matched(surfaces.begin() + i, surfaces.begin() + i + m->length);
      if (matched != m->entry->phrases.front()) {
        std::size_t b = lexemes[i].begin;
        std::size_t e = lexemes[i + m->length - 1].end;
        emit("G022", b, e,
             "British term " + q(source(b, e)) + "; use " + q(m->entry->head));
      }
      i += m->length;
    }
  }

  // G017: "x, y and z" with short items and no comma before the conjunction.
  {
    std::vector<std::vector<std::size_t>> segments(1);
    auto check_group = [&]() {
      for (std::size_t s = 1; s < segments.size(); ++s) {
        const auto& seg = segments[s];
        std::size_t prev_words = 0;
        for (auto k : segments[s - 1]) prev_words += lexemes[k].word;
        if (prev_words == 0 || prev_words > 3) continue;
        for (std::size_t p = 1; p < seg.size(); ++p) {
          const auto& conj = lexemes[seg[p]];
          if (conj.lower != "and" && conj.lower != "or") continue;
          std::size_t before = 0, after = 0;
          bool verb = false;
          for (std::size_t q = 0; q < p; ++q) {
            before += lexemes[seg[q]].word;
            verb = verb || contains(copulas(), lexemes[seg[q]].lower);
          }
          for (auto k : segments[s - 1]) verb = verb || contains(copulas(), lexemes[k].lower);
          for (std::size_t q = p + 1; q < seg.size(); ++q) after += lexemes[seg[q]].word;
          if (!verb && before >= 1 && before <= 3 && after >= 1) {
            emit("G017", conj.begin, conj.end,
                 "missing serial comma before " + q(source(conj.begin, conj.end)));
          }
          break;
        }
      }
      segments.assign(1, {});
    };
    for (std::size_t i = 0; i < lexemes.size(); ++i) {
      const auto& s = lexemes[i].lower;
      if (s == ",") {
        segments.emplace_back();
      } else if (s == "." || s == ";" || s == ":" || s == "!" || s == "?") {
        check_group();
      } else {
        segments.back().push_back(i);
      }
    }
    check_group();
  }

  // sentence-level advisory checks
  if (config_.advisory) {
    std::size_t token_count = tokenize(text).size();
    bool has_entity = false, has_position = false;
    std::size_t copula_count = 0;
    for (const auto& lx : lexemes) {
      if (!lx.word) continue;
      has_entity = has_entity || contains(entity_words(), lx.lower);
      has_position = has_position || contains(position_words(), lx.lower);
      copula_count += contains(copulas(), lx.lower);
    }
    if (!lexemes.empty()) {
      std::size_t b = lexemes.front().begin, e = lexemes.back().end;
      if (token_count < config_.long_sentence_tokens &&
          copula_count > config_.short_sentence_max_copulas) {
        emit("G010", b, e,
             "short sentence with " + std::to_string(copula_count) + " clauses");
      }
      if (has_entity && !has_position) {
        emit("G011", b, e, "road user mentioned without a position");
      }
    }
  }

  // G016
  {
    std::size_t last = cps.size();
    while (last > 0) {
      UChar32 c = cps[last - 1].c;
      if (c >= 0 && (u_isUWhiteSpace(c) || u_iscntrl(c))) {
        --last;
      } else {
        break;
      }
    }
    if (last == 0) {
      emit("G016", 0, text.size(), "empty sentence");
    } else if (cps[last - 1].c != '.') {
      emit("G016", cps[last - 1].begin, cps[last - 1].end, "sentence does not end with a period");
    }
  }

  std::stable_sort(found.begin(), found.end(), [](const Diagnostic& a, const Diagnostic& b) {
    if (a.span->begin != b.span->begin) return a.span->begin < b.span->begin;
    return a.rule < b.rule;
  });
  out.insert(out.end(), std::make_move_iterator(found.begin()),
             std::make_move_iterator(found.end()));
}

std::vector<Diagnostic> Linter::lint_sentence(std::string_view text) const {
  std::vector<Diagnostic> out;
  lint_sentence_into(text, std::nullopt, out);
  return out;
}

LintReport Linter::lint_set(const ImageRecord& record) const {
  LintReport report;
  report.record_id = record.id;
  auto& diags = report.diagnostics;
  auto emit = [&](const char* rule, std::string msg) {
    diags.push_back({rule, std::nullopt, std::nullopt, config_.severity_of(rule), std::move(msg)});
  };
  const auto& ds = record.descriptions;

  if (ds.size() != config_.descriptions_per_image) {
    std::string msg = "expected " + std::to_string(config_.descriptions_per_image) +
                      " descriptions, found " + std::to_string(ds.size());
    emit("G007", msg);
    emit("G018", msg);
  }

  std::vector<Words> sentence_words;
  for (const auto& d : ds) {
    Words w;
    for (auto& lx : lex(d, decode(d))) {
      if (lx.word) w.insert(std::move(lx.lower));
    }
    sentence_words.push_back(std::move(w));
  }
  auto mentions_any = [](const Words& words, const Words& terms) {
    return std::any_of(terms.begin(), terms.end(),
                       [&](const std::string& t) { return words.count(t) > 0; });
  };

  bool stated = std::any_of(sentence_words.begin(), sentence_words.end(), [&](const Words& w) {
    return mentions_any(w, weather_words()) && mentions_any(w, lighting_words());
  });
  if (!stated) emit("G008", "no sentence states both the weather and the lighting");

  if (!ds.empty()) {
    std::vector<std::string> mismatched;
    if (record.meta.weather && is_valid_weather(*record.meta.weather)) {
      const auto& terms = meta_weather_terms(*record.meta.weather);
      bool seen = std::any_of(sentence_words.begin(), sentence_words.end(),
                              [&](const Words& w) { return mentions_any(w, terms); });
      if (!seen) mismatched.push_back("weather '" + *record.meta.weather + "'");
    }
    if (record.meta.lighting && is_valid_lighting(*record.meta.lighting)) {
      bool seen = std::any_of(sentence_words.begin(), sentence_words.end(),
                              [&](const Words& w) { return w.count(*record.meta.lighting) > 0; });
      if (!seen) mismatched.push_back("lighting '" + *record.meta.lighting + "'");
    }
    for (const auto& m : mismatched) {
      diags.push_back({"G008", std::nullopt, std::nullopt, Severity::kWarning,
                       "metadata " + m + " is not mentioned in any description"});
    }
  }

  if (!ds.empty()) {
    std::size_t longest = 0;
    for (const auto& d : ds) longest = std::max(longest, tokenize(d).size());
    if (longest < config_.long_sentence_tokens) {
      emit("G009", "longest description has " + std::to_string(longest) + " tokens, expected at least " +
                       std::to_string(config_.long_sentence_tokens));
    }
  }

  std::size_t there_count = 0;
  for (const auto& d : ds) {
    auto lexemes = lex(d, decode(d));
    for (std::size_t i = 0; i < lexemes.size(); ++i) {
      const auto& w = lexemes[i].lower;
      if (w == "there's" ||
          (w == "there" && i + 1 < lexemes.size() &&
           (lexemes[i + 1].lower == "is" || lexemes[i + 1].lower == "are"))) {
        ++there_count;
        break;
      }
    }
  }
  if (there_count > config_.there_is_max) {
    emit("G002", "\"there is/are\" in " + std::to_string(there_count) + " descriptions, at most " +
                     std::to_string(config_.there_is_max) + " allowed");
  }

  for (std::size_t i = 0; i < ds.size(); ++i) lint_sentence_into(ds[i], i, diags);

  report.pass = std::none_of(diags.begin(), diags.end(),
                             [](const Diagnostic& d) { return d.severity == Severity::kError; });
  return report;
}

std::vector<Diagnostic> lint_sentence(std::string_view text) {
  static const Linter linter;
  return linter.lint_sentence(text);
}

LintReport lint_set(const ImageRecord& record) {
  static const Linter linter;
  return linter.lint_set(record);
}

nlohmann::ordered_json diagnostic_to_json(std::string_view record_id, const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["record_id"] = record_id;
  j["rule"] = d.rule;
  j["sentence"] = d.sentence ? nlohmann::ordered_json(*d.sentence) : nullptr;
  j["span"] = d.span ? nlohmann::ordered_json::array({d.span->begin, d.span->end}) : nullptr;
  j["severity"] = severity_name(d.severity);
  j["message"] = d.message;
  return j;
}

nlohmann::ordered_json lint_report_to_json(const LintReport& report) {
  nlohmann::ordered_json j;
  j["record_id"] = report.record_id;
  j["pass"] = report.pass;
  j["diagnostics"] = nlohmann::ordered_json::array();
  for (const auto& d : report.diagnostics) {
    j["diagnostics"].push_back(diagnostic_to_json(report.record_id, d));
  }
  return j;
}

nlohmann::ordered_json rule_to_json(const GuidelineRule& rule) {
  nlohmann::ordered_json j;
  j["id"] = rule.id;
  j["summary"] = rule.summary;
  j["checkability"] = checkability_name(rule.checkability);
  j["severity"] = severity_name(rule.severity);
  j["scope"] = scope_name(rule.scope);
  return j;
}

}  // namespace scenedesc
