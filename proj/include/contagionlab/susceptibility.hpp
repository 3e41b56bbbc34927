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

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "contagionlab/corpus.hpp"
#include "contagionlab/null_model.hpp"
#include "contagionlab/types.hpp"

namespace contagionlab {

// Published profiles are rounded to 0.01 percentage points, so their sums
// can be off by up to 1.5e-4 (the positive one sums to 99.99%).
inline constexpr double kProfileSumTolerance = 2e-4;

// Stimulus profiles that typically precede a negative, neutral and positive
// post.

struct BaselineProfiles {
  SentimentProportions negative;
  SentimentProportions neutral;
  SentimentProportions positive;

  // Profiles measured on the original Twitter sample.
  static BaselineProfiles published() {
    return {SentimentProportions::from_percent(21.63, 45.02, 33.35),
            SentimentProportions::from_percent(16.49, 48.95, 34.56),
            SentimentProportions::from_percent(16.00, 45.05, 38.94)};
  }

  const SentimentProportions& operator[](EmotionClass c) const {
    switch (c) {
      case EmotionClass::Negative: return negative;
      case EmotionClass::Neutral: return neutral;
      case EmotionClass::Positive: break;
    }
    return positive;
  }

  void validate() const {
    for (auto c : kAllClasses)
      if (!(*this)[c].is_valid(kProfileSumTolerance))
        throw Error("baseline profile for " + std::string(to_string(c)) + " does not sum to 1");
    if (negative == neutral || negative == positive || neutral == positive)
      throw Error("baseline profiles must be pairwise distinct");
  }
};

inline double euclidean(const SentimentProportions& a, const SentimentProportions& b) {
  const auto x = a.as_array();
  const auto y = b.as_array();
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

struct NearestProfile {
  EmotionClass cls = EmotionClass::Neutral;
  bool tie = false;
};

inline constexpr double kProfileTieTolerance = 1e-12;

// Class whose profile is closest to `observed`. Distances within 1e-12 of
// the minimum tie; a tie involving Neutral resolves to Neutral, otherwise
// to Negative.
inline NearestProfile nearest_profile(const SentimentProportions& observed,
                                      const BaselineProfiles& profiles) {
  std::array<double, 3> d{};
  for (auto c : kAllClasses) d[index_of(c)] = euclidean(observed, profiles[c]);
  const double best = *std::min_element(d.begin(), d.end());
  std::array<bool, 3> near{};
  int hits = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    near[i] = d[i] - best <= kProfileTieTolerance;
    hits += near[i];
  }
  NearestProfile out;
  out.tie = hits > 1;
  if (near[index_of(EmotionClass::Neutral)])
    out.cls = EmotionClass::Neutral;
  else if (near[index_of(EmotionClass::Negative)])
    out.cls = EmotionClass::Negative;
  else
    out.cls = EmotionClass::Positive;
  return out;
}

struct ContagionLabel {
  PostIndex tweet = 0;
  EmotionClass expected = EmotionClass::Neutral;
  EmotionClass actual = EmotionClass::Neutral;
  bool susceptible = false;
  bool tie = false;
};

// A post counts as susceptible when its class matches the class whose
// profile is nearest to the stimuli seen before it. Histories without
// stimuli cannot be labelled and are skipped.
inline std::vector<ContagionLabel> label_tweets(const std::vector<ExposureHistory>& histories,
                                                ClassLookup class_of,
                                                const BaselineProfiles& profiles,
                                                unsigned threads = 1) {
  profiles.validate();
  std::vector<std::optional<ContagionLabel>> slots(histories.size());
  parallel_for(histories.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto& h = histories[i];
      if (h.stimuli.empty()) continue;
      const auto nearest =
          nearest_profile(SentimentProportions::from_counts(tally(h, class_of)), profiles);
      ContagionLabel l;
      l.tweet = h.target;
      l.expected = nearest.cls;
      l.actual = response_class(h, class_of);
      l.tie = nearest.tie;
      l.susceptible = l.expected == l.actual;
      slots[i] = l;
    }
  });
  std::vector<ContagionLabel> labels;
  labels.reserve(histories.size());
  for (auto& s : slots)
    if (s) labels.push_back(*s);
  return labels;
}

struct UserSusceptibility {
  std::string user;
  double fraction = 0.0;
  std::size_t num_tweets = 0;
  std::size_t num_susceptible = 0;
};

// Per-user share of susceptible posts, ordered by user id. Users without
// labelled posts do not appear.
template <typename AuthorOf>
std::vector<UserSusceptibility> user_fractions(std::span<const ContagionLabel> labels,
                                               AuthorOf&& author_of) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_user;
  for (const auto& l : labels) {
    auto& [n, s] = per_user[std::string(author_of(l.tweet))];
    ++n;
    s += l.susceptible;
  }
  std::vector<UserSusceptibility> out;
  out.reserve(per_user.size());
  for (const auto& [user, ns] : per_user)
    out.push_back({user, static_cast<double>(ns.second) / static_cast<double>(ns.first), ns.first,
                   ns.second});
  return out;
}

inline auto dataset_author_of(const Dataset& ds) {
  return [&ds](PostIndex i) -> const std::string& { return ds[i].author; };
}

struct FractionHistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double cumulative = 0.0;  // share of users with fraction below `upper` (inclusive for the last bin)
};

inline std::vector<FractionHistogramBin> fraction_histogram(
    std::span<const UserSusceptibility> users, std::size_t num_bins = 10) {
  if (num_bins == 0) throw Error("histogram needs at least one bin");
  std::vector<FractionHistogramBin> bins(num_bins);
  const double n = static_cast<double>(num_bins);
  for (std::size_t i = 0; i < num_bins; ++i) {
    bins[i].lower = static_cast<double>(i) / n;
    bins[i].upper = static_cast<double>(i + 1) / n;
  }
  for (const auto& u : users) {
    auto i = static_cast<std::size_t>(std::floor(u.fraction * n));
    ++bins[std::min(i, num_bins - 1)].count;
  }
  std::size_t running = 0;
  for (auto& b : bins) {
    running += b.count;
    b.cumulative = users.empty() ? 0.0 : static_cast<double>(running) / static_cast<double>(users.size());
  }
  return bins;
}

inline constexpr double kDefaultClassPct = 0.15;

struct SusceptibilityClasses {
  std::set<std::string> high;
  std::set<std::string> low;
  double threshold_pct = kDefaultClassPct;
};

// Bottom and top `threshold_pct` of users by fraction; equal fractions are
// ordered by user id.
inline SusceptibilityClasses classify_users(std::span<const UserSusceptibility> users,
                                            double threshold_pct = kDefaultClassPct) {
  if (!(threshold_pct > 0.0 && threshold_pct <= 0.5))
    throw Error("susceptibility class share must lie in (0, 0.5]");
  const double pop = static_cast<double>(users.size());
  if (pop < 2.0 / threshold_pct)
    throw Error("need at least " + std::to_string(static_cast<long>(std::ceil(2.0 / threshold_pct))) +
                " users to form susceptibility classes, got " + std::to_string(users.size()));
  std::vector<const UserSusceptibility*> order;
  order.reserve(users.size());
  for (const auto& u : users) order.push_back(&u);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    if (a->fraction != b->fraction) return a->fraction < b->fraction;
    return a->user < b->user;
  });
  const auto k = static_cast<std::size_t>(std::llround(threshold_pct * pop));
  SusceptibilityClasses out;
  out.threshold_pct = threshold_pct;
  for (std::size_t i = 0; i < k; ++i) {
    out.low.insert(order[i]->user);
    out.high.insert(order[order.size() - 1 - i]->user);
  }
  return out;
}

template <typename AuthorOf>
std::vector<ContagionLabel> labels_of_users(std::span<const ContagionLabel> labels,
                                            AuthorOf&& author_of,
                                            const std::set<std::string>& users) {
  std::vector<ContagionLabel> out;
  for (const auto& l : labels)
    if (users.contains(std::string(author_of(l.tweet)))) out.push_back(l);
  return out;
}

struct AdoptionRates {
  double pos_rate = 0.0;
  double neg_rate = 0.0;
  std::optional<double> ratio;  // absent when neg_rate is 0
  std::size_t num_users = 0;    // users with at least one susceptible post
};

// Among each user's susceptible posts, the shares that are positive and
// negative, averaged over users.
template <typename AuthorOf>
AdoptionRates adoption_rates(std::span<const ContagionLabel> labels, AuthorOf&& author_of) {
  std::map<std::string, ClassCounts> per_user;
  for (const auto& l : labels)
    if (l.susceptible) ++per_user[std::string(author_of(l.tweet))][l.actual];
  if (per_user.empty()) throw EmptyGroupError("user class has no susceptible posts");
  AdoptionRates r;
  for (const auto& [user, c] : per_user) {
    const double t = static_cast<double>(c.total());
    r.pos_rate += static_cast<double>(c[EmotionClass::Positive]) / t;
    r.neg_rate += static_cast<double>(c[EmotionClass::Negative]) / t;
  }
  r.num_users = per_user.size();
  r.pos_rate /= static_cast<double>(r.num_users);
  r.neg_rate /= static_cast<double>(r.num_users);
  if (r.neg_rate > 0.0) r.ratio = r.pos_rate / r.neg_rate;
  return r;
}

}  // namespace contagionlab
