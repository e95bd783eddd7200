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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scenedesc {

enum class Category { kSeen, kUnseen, kOutOfDomain };

std::string_view category_name(Category c);
std::optional<Category> parse_category(std::string_view name);

inline constexpr std::size_t kDescriptionsPerImage = 10;

struct RecordMeta {
  std::optional<std::string> weather;   // clear | rainy | snowy | foggy
  std::optional<std::string> lighting;  // daytime | nighttime
  std::vector<std::string> scene_tags;

  friend bool operator==(const RecordMeta&, const RecordMeta&) = default;
};

bool is_valid_weather(std::string_view w);
bool is_valid_lighting(std::string_view l);

// One image with its reference descriptions. A seen record with no
// descriptions is awaiting annotation.
struct ImageRecord {
  std::string id;
  std::string image;
  std::vector<std::string> descriptions;
  RecordMeta meta;
  Category category = Category::kSeen;
  std::uint64_t version = 0;

  bool annotated() const { return !descriptions.empty(); }

  friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

}  // namespace scenedesc
