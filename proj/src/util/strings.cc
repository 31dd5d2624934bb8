// Copyright 2026 The Moralscope Authors.
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

#include "moralscope/util/strings.h"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "moralscope/error.h"

namespace moralscope {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string_view> SplitWhitespace(std::string_view s) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !IsSpace(s[i])) ++i;
    if (i > start) fields.push_back(s.substr(start, i - start));
  }
  return fields;
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::optional<double> ParseDouble(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<std::int64_t> ParseInt(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string FormatDouble(double value) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string FormatFixed3(double value) {
  if (!std::isfinite(value)) return FormatDouble(value);
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(),
                                 std::abs(value), std::chars_format::scientific);
  std::string_view sci(buf.data(), ptr - buf.data());
  const std::size_t e_pos = sci.find('e');
  std::string digits;
  for (char c : sci.substr(0, e_pos)) {
    if (c != '.') digits.push_back(c);
  }
  std::string_view exp_text = sci.substr(e_pos + 1);
  if (exp_text.front() == '+') exp_text.remove_prefix(1);
  const int exponent = static_cast<int>(*ParseInt(exp_text));

  // |value| * 1000 == digits * 10^shift.
  const int shift = exponent - static_cast<int>(digits.size()) + 1 + 3;
  std::string scaled;
  if (shift >= 0) {
    scaled = digits + std::string(shift, '0');
  } else {
    const int keep = static_cast<int>(digits.size()) + shift;
    bool round_up = false;
    if (keep >= 0) {
      round_up = keep < static_cast<int>(digits.size()) && digits[keep] >= '5';
      scaled = digits.substr(0, keep);
    }
    if (scaled.empty()) scaled = "0";
    if (round_up) {
      int i = static_cast<int>(scaled.size()) - 1;
      while (i >= 0 && scaled[i] == '9') scaled[i--] = '0';
      if (i < 0) {
        scaled.insert(scaled.begin(), '1');
      } else {
        ++scaled[i];
      }
    }
  }
  while (scaled.size() > 1 && scaled.front() == '0') scaled.erase(0, 1);
  if (scaled.size() < 4) scaled.insert(0, 4 - scaled.size(), '0');

  std::string out;
  if (value < 0 && scaled.find_first_not_of('0') != std::string::npos) {
    out.push_back('-');
  }
  out += scaled.substr(0, scaled.size() - 3);
  out.push_back('.');
  out += scaled.substr(scaled.size() - 3);
  return out;
}

std::string Fnv1aHex(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kHex[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

std::string ReadFileOrThrow(const std::filesystem::path &path,
                            std::string_view module) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(module, ErrorCode::kFileUnreadable,
                "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw Error(module, ErrorCode::kFileUnreadable,
                "read failed for " + path.string());
  }
  return ss.str();
}

void WriteFileOrThrow(const std::filesystem::path &path,
                      std::string_view contents, std::string_view module) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw Error(module, ErrorCode::kIo, "cannot write " + path.string());
  }
}

}  // namespace moralscope
