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

// The ten moral-foundation dimensions: five foundations, each with a virtue
// and a vice pole. Canonical order is foundation-major, virtue first, which
// is also the column order of every emitted table.

#ifndef MORALSCOPE_DIMENSION_H_
#define MORALSCOPE_DIMENSION_H_

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string_view>

namespace moralscope {

enum class Foundation { kCare, kFairness, kLoyalty, kAuthority, kPurity };
enum class Polarity { kVirtue, kVice };

inline constexpr std::size_t kNumFoundations = 5;
inline constexpr std::size_t kNumDimensions = 10;

class Dimension {
 public:
  constexpr Dimension(Foundation foundation, Polarity polarity)
      : foundation_(foundation), polarity_(polarity) {}

  // Inverse of index().
  static constexpr Dimension FromIndex(std::size_t index) {
    return Dimension(static_cast<Foundation>(index / 2),
                     index % 2 == 0 ? Polarity::kVirtue : Polarity::kVice);
  }

  constexpr Foundation foundation() const { return foundation_; }
  constexpr Polarity polarity() const { return polarity_; }

  // Position in canonical order, 0..9.
  constexpr std::size_t index() const {
    return static_cast<std::size_t>(foundation_) * 2 +
           (polarity_ == Polarity::kVice ? 1 : 0);
  }

  // Column header: Care, Harm, Fairness, Cheating, ...
  std::string_view DisplayName() const;

  // Compact key such as "CareVirtue" or "PurityVice".
  std::string_view Key() const;

  friend constexpr bool operator==(Dimension a, Dimension b) {
    return a.index() == b.index();
  }
  friend constexpr std::strong_ordering operator<=>(Dimension a, Dimension b) {
    return a.index() <=> b.index();
  }

 private:
  Foundation foundation_;
  Polarity polarity_;
};

// All ten dimensions in canonical order.
const std::array<Dimension, kNumDimensions> &AllDimensions();

std::string_view FoundationName(Foundation foundation);  // "care", ...
std::string_view PolarityName(Polarity polarity);        // "virtue"/"vice"

// Accepts the five foundation names plus common aliases (harm, ingroup,
// sanctity, ...), case-insensitively.
std::optional<Foundation> ParseFoundation(std::string_view name);
std::optional<Polarity> ParsePolarity(std::string_view name);

// Resolves a display name ("Harm") or key ("CareVice").
std::optional<Dimension> ParseDimension(std::string_view name);

// A fixed-size value per dimension, indexed in canonical order.
template <typename T>
using PerDimension = std::array<T, kNumDimensions>;

}  // namespace moralscope

#endif  // MORALSCOPE_DIMENSION_H_
