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

// Built-in copies of the files under data/, compiled into the library.

#pragma once

#include <string_view>

#include "scenedesc/lexicon.hpp"
#include "scenedesc/scene_graph.hpp"

namespace scenedesc {

std::string_view default_lexicon_text();
std::string_view default_grammar_text();
std::string_view default_american_terms_text();

// Parsed once on first use.
const Lexicon& default_lexicon();
const Grammar& default_grammar();

}  // namespace scenedesc
