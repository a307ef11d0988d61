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

#include "geosym/text_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "geosym/errors.hpp"

namespace geosym::text {

std::string trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw InvalidParameter("line " + std::to_string(number) +
                             ": expected 'key = value'");
    }
    KeyValue kv{trim(body.substr(0, eq)), trim(body.substr(eq + 1)), number};
    if (kv.key.empty()) {
      throw InvalidParameter("line " + std::to_string(number) + ": empty key");
    }
    out.push_back(std::move(kv));
  }
  return out;
}

double to_double(std::string_view text) {
  std::string s = trim(text);
  // strtod rather than from_chars: libstdc++ 11 lacks the floating overloads.
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw InvalidParameter("not a number: '" + s + "'");
  }
  return v;
}

int to_int(std::string_view text) {
  std::string s = trim(text);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidParameter("not an integer: '" + s + "'");
  }
  return v;
}

Complex to_complex(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw InvalidParameter("empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return {to_double(s), 0.0};
  std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
        body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return to_double(part);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {to_double(body.substr(0, split)), imag_of(body.substr(split))};
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item = trim(text.substr(start, comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = comma + 1;
  }
  return out;
}

std::string fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string exact(Complex z) {
  if (z.imag() == 0.0) return exact(z.real());
  std::string im = exact(z.imag());
  if (im.front() != '-') im = "+" + im;
  return exact(z.real()) + im + "i";
}

}  // namespace geosym::text
