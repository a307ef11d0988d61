// Copyright 2026 The geosym Authors
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

// Helpers for the plain-text key-value configs and fixed-format CSV output.

#include <string>
#include <string_view>
#include <vector>

#include "geosym/types.hpp"

namespace geosym::text {

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Parses "key = value" lines. Blank lines and '#' comments are skipped;
/// anything else is an InvalidParameter.
std::vector<KeyValue> parse_key_values(std::string_view text);

double to_double(std::string_view text);
int to_int(std::string_view text);
/// Accepts "a", "a+bi", "a-bi", "bi".
Complex to_complex(std::string_view text);
std::vector<std::string> split_list(std::string_view text);

/// Fixed scientific notation used in every CSV data row.
std::string fixed(double v);
/// Round-trip precision (used in configs).
std::string exact(double v);
std::string exact(Complex z);

std::string trim(std::string_view text);

}  // namespace geosym::text
