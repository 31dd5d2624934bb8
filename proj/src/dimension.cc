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

#include "moralscope/dimension.h"

#include <string>

#include "moralscope/util/strings.h"

namespace moralscope {
namespace {

constexpr std::array<std::string_view, kNumDimensions> kDisplayNames = {
    "Care",    "Harm",     "Fairness",  "Cheating",   "Loyalty",
    "Betrayal", "Authority", "Subversion", "Purity",   "Degradation"};

constexpr std::array<std::string_view, kNumDimensions> kKeys = {
    "CareVirtue",      "CareVice",      "FairnessVirtue", "FairnessVice",
    "LoyaltyVirtue",   "LoyaltyVice",   "AuthorityVirtue", "AuthorityVice",
    "PurityVirtue",    "PurityVice"};

constexpr std::array<std::string_view, kNumFoundations> kFoundationNames = {
    "care", "fairness", "loyalty", "authority", "purity"};

}  // namespace

std::string_view Dimension::DisplayName() const { return kDisplayNames[index()]; }

std::string_view Dimension::Key() const { return kKeys[index()]; }

const std::array<Dimension, kNumDimensions> &AllDimensions() {
  static const std::array<Dimension, kNumDimensions> all = [] {
    std::array<Dimension, kNumDimensions> dims{
        Dimension::FromIndex(0), Dimension::FromIndex(1),
        Dimension::FromIndex(2), Dimension::FromIndex(3),
        Dimension::FromIndex(4), Dimension::FromIndex(5),
        Dimension::FromIndex(6), Dimension::FromIndex(7),
        Dimension::FromIndex(8), Dimension::FromIndex(9)};
    return dims;
  }();
  return all;
}

std::string_view FoundationName(Foundation foundation) {
  return kFoundationNames[static_cast<std::size_t>(foundation)];
}

std::string_view PolarityName(Polarity polarity) {
  return polarity == Polarity::kVirtue ? "virtue" : "vice";
}

std::optional<Foundation> ParseFoundation(std::string_view name) {
  const std::string lower = AsciiLower(Trim(name));
  if (lower == "care" || lower == "harm") return Foundation::kCare;
  if (lower == "fairness" || lower == "cheating") return Foundation::kFairness;
  if (lower == "loyalty" || lower == "ingroup" || lower == "betrayal") {
    return Foundation::kLoyalty;
  }
  if (lower == "authority" || lower == "subversion") {
    return Foundation::kAuthority;
  }
  if (lower == "purity" || lower == "sanctity" || lower == "degradation") {
    return Foundation::kPurity;
  }
  return std::nullopt;
}

std::optional<Polarity> ParsePolarity(std::string_view name) {
  const std::string lower = AsciiLower(Trim(name));
  if (lower == "virtue") return Polarity::kVirtue;
  if (lower == "vice") return Polarity::kVice;
  return std::nullopt;
}

std::optional<Dimension> ParseDimension(std::string_view name) {
  for (Dimension d : AllDimensions()) {
    if (name == d.DisplayName() || name == d.Key()) return d;
  }
  return std::nullopt;
}

}  // namespace moralscope
