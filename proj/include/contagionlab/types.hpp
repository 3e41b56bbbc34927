/*
Copyright 2026 The contagionlab Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace contagionlab {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Three-way emotion label. The numeric values double as the canonical
// component index (negative, neutral, positive) used by every proportions
// vector in the library.
enum class EmotionClass : std::uint8_t { Negative = 0, Neutral = 1, Positive = 2 };

inline constexpr std::array<EmotionClass, 3> kAllClasses = {
    EmotionClass::Negative, EmotionClass::Neutral, EmotionClass::Positive};

constexpr std::size_t index_of(EmotionClass c) { return static_cast<std::size_t>(c); }

constexpr std::string_view to_string(EmotionClass c) {
  switch (c) {
    case EmotionClass::Negative: return "negative";
    case EmotionClass::Neutral: return "neutral";
    case EmotionClass::Positive: return "positive";
  }
  return "?";
}

inline std::optional<EmotionClass> parse_emotion_class(std::string_view s) {
  if (s == "negative") return EmotionClass::Negative;
  if (s == "neutral") return EmotionClass::Neutral;
  if (s == "positive") return EmotionClass::Positive;
  return std::nullopt;
}

// Tally of emotion classes, indexed canonically.
struct ClassCounts {
  std::array<std::uint64_t, 3> n{0, 0, 0};

  std::uint64_t& operator[](EmotionClass c) { return n[index_of(c)]; }
  std::uint64_t operator[](EmotionClass c) const { return n[index_of(c)]; }
  std::uint64_t total() const { return n[0] + n[1] + n[2]; }

  ClassCounts& operator+=(const ClassCounts& o) {
    for (std::size_t i = 0; i < 3; ++i) n[i] += o.n[i];
    return *this;
  }
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

// (negative, neutral, positive) fractions summing to one.
struct SentimentProportions {
  double negative = 0.0;
  double neutral = 0.0;
  double positive = 0.0;

  static constexpr double kSumTolerance = 1e-9;

  static SentimentProportions from_counts(const ClassCounts& c) {
    const double t = static_cast<double>(c.total());
    if (t == 0.0) throw Error("proportions of an empty tally are undefined");
    return {static_cast<double>(c.n[0]) / t, static_cast<double>(c.n[1]) / t,
            static_cast<double>(c.n[2]) / t};
  }

  // Builds from percentages such as (21.63, 45.02, 33.35).
  static SentimentProportions from_percent(double neg, double neu, double pos) {
    return {neg / 100.0, neu / 100.0, pos / 100.0};
  }

  double operator[](EmotionClass c) const { return as_array()[index_of(c)]; }
  std::array<double, 3> as_array() const { return {negative, neutral, positive}; }

  bool is_valid(double tolerance = kSumTolerance) const {
    for (double v : as_array())
      if (!(v >= 0.0 && v <= 1.0)) return false;
    return std::abs(negative + neutral + positive - 1.0) <= tolerance;
  }

  friend bool operator==(const SentimentProportions&, const SentimentProportions&) = default;
};

}  // namespace contagionlab
