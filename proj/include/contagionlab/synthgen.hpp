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
#include <cstdint>
#include <numeric>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "contagionlab/corpus.hpp"
#include "contagionlab/random.hpp"
#include "contagionlab/sentiment.hpp"
#include "contagionlab/types.hpp"

namespace contagionlab {

// Synthetic world with known contagion and homophily.
//
// Users post as independent Poisson processes. At each post the user, with
// probability beta, copies the emotion mix of what their followees posted
// in the preceding window (sampling one class from those proportions), and
// otherwise samples from their own disposition. Homophily acts only when
// links form: with probability eta a followee slot goes to the most
// disposition-similar of a few random candidates.
struct SimConfig {
  std::size_t n_users = 1000;
  double mean_followees = 30.0;
  double post_rate_per_hour = 1.0;
  SentimentProportions base_distribution{0.20, 0.45, 0.35};
  double contagion_strength = 0.0;  // beta
  double homophily_strength = 0.0;  // eta
  double duration_hours = 168.0;
  std::uint64_t seed = 1;

  // Per-user dispositions are base * (1 + spread * U(-1, 1)), renormalised.
  double disposition_spread = 0.5;
  std::size_t homophily_candidates = 16;
  std::int64_t start_time = 1'700'000'000;
  std::int64_t window_seconds = kDefaultWindowSeconds;
  // Per-user beta overriding contagion_strength when non-empty.
  std::vector<double> user_beta;
  // Posts in the first `seed_hours` draw their class from this distribution
  // instead of the author's disposition, and contagion does not apply.
  SentimentProportions seed_distribution{0.0, 0.0, 1.0};
  double seed_hours = 0.0;

  void validate() const {
    auto bad = [](const std::string& what) { throw Error("invalid simulation config: " + what); };
    if (n_users < 2) bad("n_users must be at least 2");
    if (!(mean_followees > 0.0)) bad("mean_followees must be positive");
    if (mean_followees >= static_cast<double>(n_users) ||
        mean_followees > static_cast<double>(n_users - 1))
      bad("mean_followees must not exceed n_users - 1");
    if (!(post_rate_per_hour > 0.0)) bad("post_rate_per_hour must be positive");
    if (!(duration_hours >= 0.0) || !std::isfinite(duration_hours)) bad("duration_hours must be >= 0");
    if (!(contagion_strength >= 0.0 && contagion_strength <= 1.0)) bad("contagion_strength must lie in [0, 1]");
    if (!(homophily_strength >= 0.0 && homophily_strength <= 1.0)) bad("homophily_strength must lie in [0, 1]");
    if (!base_distribution.is_valid()) bad("base_distribution must be proportions summing to 1");
    if (!(disposition_spread >= 0.0 && disposition_spread < 1.0)) bad("disposition_spread must lie in [0, 1)");
    if (homophily_candidates < 1) bad("homophily_candidates must be at least 1");
    if (window_seconds <= 0) bad("window_seconds must be positive");
    if (start_time < 0) bad("start_time must be >= 0");
    if (!(seed_hours >= 0.0) || !std::isfinite(seed_hours)) bad("seed_hours must be >= 0");
    if (seed_hours > 0.0 && !seed_distribution.is_valid())
      bad("seed_distribution must be proportions summing to 1");
    if (!user_beta.empty()) {
      if (user_beta.size() != n_users) bad("user_beta needs one entry per user");
      for (double b : user_beta)
        if (!(b >= 0.0 && b <= 1.0)) bad("user_beta entries must lie in [0, 1]");
    }
  }

  double beta_of(std::size_t user) const {
    return user_beta.empty() ? contagion_strength : user_beta[user];
  }
};

struct TweetTruth {
  std::string tweet_id;
  bool contagion_applied = false;
  EmotionClass sampled_class = EmotionClass::Neutral;
};

struct UserTruth {
  std::string user;
  double beta = 0.0;
  SentimentProportions disposition;
};

struct GroundTruth {
  std::vector<TweetTruth> tweets;  // in event-log order
  std::vector<UserTruth> users;    // in user-id order
};

struct SimulationOutput {
  Dataset events;
  FollowGraph graph;
  GroundTruth truth;
};

inline std::string user_name(std::size_t index, std::size_t n_users) {
  const std::size_t width = std::to_string(n_users - 1).size();
  std::string digits = std::to_string(index);
  return "u" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

inline std::vector<SentimentProportions> draw_dispositions(const SimConfig& cfg) {
  Engine eng(derive_seed(cfg.seed, "dispositions"));
  const auto base = cfg.base_distribution.as_array();
  std::vector<SentimentProportions> out(cfg.n_users);
  for (auto& d : out) {
    std::array<double, 3> w{};
    for (std::size_t c = 0; c < 3; ++c)
      w[c] = base[c] * (1.0 + cfg.disposition_spread * (2.0 * uniform01(eng) - 1.0));
    const double t = w[0] + w[1] + w[2];
    d = {w[0] / t, w[1] / t, 1.0 - w[0] / t - w[1] / t};
  }
  return out;
}

inline double disposition_similarity(const SentimentProportions& a, const SentimentProportions& b) {
  const auto x = a.as_array();
  const auto y = b.as_array();
  double tv = 0.0;
  for (std::size_t i = 0; i < 3; ++i) tv += std::abs(x[i] - y[i]);
  return 1.0 - tv / 2.0;
}

namespace detail {

// Followee lists as user indices. Each other user is a candidate with
// probability mean / (n - 1), giving a binomial out-degree; with homophily
// a slot is reassigned to the best of a few random candidates.
inline std::vector<std::vector<std::uint32_t>> draw_followees(
    const SimConfig& cfg, std::span<const SentimentProportions> dispositions, Engine& eng) {
  const std::size_t n = cfg.n_users;
  const double p = cfg.mean_followees / static_cast<double>(n - 1);
  const bool homophily = cfg.homophily_strength > 0.0;
  if (homophily && dispositions.size() != n)
    throw Error("homophily needs one disposition per user");

  std::vector<std::vector<std::uint32_t>> out(n);
  std::vector<char> taken(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto slot_to_user = [i](std::size_t s) { return static_cast<std::uint32_t>(s < i ? s : s + 1); };
    std::vector<std::uint32_t> uniform;
    if (p >= 1.0) {
      for (std::size_t s = 0; s + 1 < n; ++s) uniform.push_back(slot_to_user(s));
    } else {
      const double log_q = std::log1p(-p);
      double s = -1.0;
      while (true) {
        s += 1.0 + std::floor(std::log1p(-uniform01(eng)) / log_q);
        if (s >= static_cast<double>(n - 1)) break;
        uniform.push_back(slot_to_user(static_cast<std::size_t>(s)));
      }
    }
    if (!homophily) {
      out[i] = std::move(uniform);
      continue;
    }

    auto& mine = out[i];
    auto pick_similar = [&]() {
      std::uint32_t best = 0;
      double best_sim = -1.0;
      for (std::size_t c = 0; c < cfg.homophily_candidates; ++c) {
        const auto cand = slot_to_user(uniform_below(eng, n - 1));
        const double sim = disposition_similarity(dispositions[i], dispositions[cand]);
        if (sim > best_sim) best = cand, best_sim = sim;
      }
      return best;
    };
    for (auto u : uniform) {
      std::uint32_t chosen = u;
      if (bernoulli(eng, cfg.homophily_strength)) {
        for (int attempt = 0; attempt < 8; ++attempt) {
          const auto w = pick_similar();
          if (!taken[w]) {
            chosen = w;
            break;
          }
        }
      }
      // Walk to the next free user if the slot collides.
      while (taken[chosen] || chosen == i) chosen = static_cast<std::uint32_t>((chosen + 1) % n);
      taken[chosen] = 1;
      mine.push_back(chosen);
    }
    for (auto f : mine) taken[f] = 0;
    std::sort(mine.begin(), mine.end());
  }
  return out;
}

inline FollowGraph to_graph(const std::vector<std::vector<std::uint32_t>>& followees) {
  const std::size_t n = followees.size();
  FollowGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    const auto name = user_name(i, n);
    g.add_user(name);
    for (auto f : followees[i]) g.add_follow(name, user_name(f, n));
  }
  return g;
}

}  // namespace detail

inline FollowGraph generate_graph(const SimConfig& cfg,
                                  std::span<const SentimentProportions> dispositions, Engine& eng) {
  cfg.validate();
  return detail::to_graph(detail::draw_followees(cfg, dispositions, eng));
}

inline FollowGraph generate_graph(const SimConfig& cfg, Engine& eng) {
  const auto disp = draw_dispositions(cfg);
  return generate_graph(cfg, disp, eng);
}

// `split` of the users (chosen at random, rounded to the nearest count) get
// beta `high`, the rest `low`.
inline std::vector<double> heterogeneous_beta(const SimConfig& cfg, double low, double high,
                                              double split) {
  if (!(low >= 0.0 && low < high && high <= 1.0))
    throw Error("heterogeneous beta needs 0 <= low < high <= 1");
  if (!(split >= 0.0 && split <= 1.0)) throw Error("heterogeneous beta split must lie in [0, 1]");
  const std::size_t n = cfg.n_users;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Engine eng(derive_seed(cfg.seed, "beta"));
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_below(eng, i)]);
  const auto k = static_cast<std::size_t>(std::llround(split * static_cast<double>(n)));
  std::vector<double> beta(n, low);
  for (std::size_t i = 0; i < k; ++i) beta[order[i]] = high;
  return beta;
}

// Word pools for synthesised text: strength +3 and -3 lexicon terms plus
// fillers that match nothing in the lexicon.
struct TemplateVocabulary {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
  std::vector<std::string> filler;

  static const TemplateVocabulary& bundled() {
    static const TemplateVocabulary v = [] {
      TemplateVocabulary t;
      const auto& lex = default_lexicon();
      for (const auto& [term, s] : lex.sentiment_terms) {
        if (s == 3) t.positive.push_back(term);
        if (s == -3) t.negative.push_back(term);
      }
      std::sort(t.positive.begin(), t.positive.end());
      std::sort(t.negative.begin(), t.negative.end());
      t.filler = {"the",    "a",     "today", "morning", "coffee", "train",   "meeting",
                  "just",   "watch", "read",  "about",   "with",   "my",      "friends",
                  "weekend", "city", "news",  "game",    "going",  "to",      "after",
                  "work",   "lunch", "at",    "home",    "office", "again",   "this",
                  "that",   "new",   "music", "update",  "team",   "phone",   "walk",
                  "dinner", "tonight", "class", "project", "later", "bus",    "rain"};
      for (const auto& f : t.filler)
        if (lex.contains(f)) throw Error("filler word '" + f + "' collides with the lexicon");
      return t;
    }();
    return v;
  }

  std::string compose(EmotionClass cls, Engine& eng) const {
    std::vector<const std::string*> words;
    const std::size_t fillers = 3 + uniform_below(eng, 5);
    for (std::size_t i = 0; i < fillers; ++i) words.push_back(&filler[uniform_below(eng, filler.size())]);
    if (cls != EmotionClass::Neutral) {
      const auto& pool = cls == EmotionClass::Positive ? positive : negative;
      const std::size_t k = 1 + uniform_below(eng, 2);
      for (std::size_t i = 0; i < k; ++i) words.push_back(&pool[uniform_below(eng, pool.size())]);
    }
    for (std::size_t i = words.size(); i > 1; --i) std::swap(words[i - 1], words[uniform_below(eng, i)]);
    std::string text;
    for (const auto* w : words) {
      if (!text.empty()) text.push_back(' ');
      text += *w;
    }
    return text;
  }
};

inline EmotionClass sample_class(double u, const std::array<double, 3>& p) {
  if (u < p[0]) return EmotionClass::Negative;
  if (u < p[0] + p[1]) return EmotionClass::Neutral;
  return EmotionClass::Positive;
}

inline SimulationOutput simulate(const SimConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_users;
  const auto dispositions = draw_dispositions(cfg);
  Engine graph_eng(derive_seed(cfg.seed, "graph"));
  const auto followees = detail::draw_followees(cfg, dispositions, graph_eng);

  // Posting times: (timestamp, user, per-user sequence).
  std::vector<std::tuple<std::int64_t, std::uint32_t, std::uint32_t>> posts;
  {
    Engine eng(derive_seed(cfg.seed, "times"));
    const double horizon = cfg.duration_hours * 3600.0;
    const double rate = cfg.post_rate_per_hour / 3600.0;
    for (std::size_t u = 0; u < n; ++u) {
      double t = 0.0;
      std::uint32_t seq = 0;
      while (true) {
        t += exponential(eng, rate);
        if (t >= horizon) break;
        posts.emplace_back(cfg.start_time + static_cast<std::int64_t>(std::floor(t)),
                           static_cast<std::uint32_t>(u), seq++);
      }
    }
  }
  std::sort(posts.begin(), posts.end());

  struct Timeline {
    std::vector<std::int64_t> times;
    std::vector<std::array<std::uint32_t, 3>> prefix{{0, 0, 0}};  // counts before entry i
  };
  std::vector<Timeline> timelines(n);

  SimulationOutput out;
  out.graph = detail::to_graph(followees);
  out.truth.tweets.reserve(posts.size());
  Engine class_eng(derive_seed(cfg.seed, "classes"));
  Engine text_eng(derive_seed(cfg.seed, "text"));
  const auto& vocab = TemplateVocabulary::bundled();
  const double seed_end = static_cast<double>(cfg.start_time) + cfg.seed_hours * 3600.0;

  for (std::size_t k = 0; k < posts.size(); ++k) {
    const auto [ts, user, seq] = posts[k];
    // Both draws happen for every post so runs differing only in beta share
    // their random numbers.
    const double u_contagion = uniform01(class_eng);
    const double u_class = uniform01(class_eng);

    std::array<std::uint32_t, 3> window{0, 0, 0};
    for (auto f : followees[user]) {
      const auto& tl = timelines[f];
      const auto lo = std::lower_bound(tl.times.begin(), tl.times.end(), ts - cfg.window_seconds);
      const auto hi = std::lower_bound(lo, tl.times.end(), ts);
      const auto& a = tl.prefix[static_cast<std::size_t>(lo - tl.times.begin())];
      const auto& b = tl.prefix[static_cast<std::size_t>(hi - tl.times.begin())];
      for (std::size_t c = 0; c < 3; ++c) window[c] += b[c] - a[c];
    }
    const std::uint32_t seen = window[0] + window[1] + window[2];

    TweetTruth truth;
    truth.tweet_id = "t" + std::to_string(k + 1);
    if (static_cast<double>(ts) < seed_end) {
      truth.sampled_class = sample_class(u_class, cfg.seed_distribution.as_array());
    } else if (u_contagion < cfg.beta_of(user) && seen > 0) {
      const double s = static_cast<double>(seen);
      truth.sampled_class = sample_class(u_class, {window[0] / s, window[1] / s, window[2] / s});
      truth.contagion_applied = true;
    } else {
      truth.sampled_class = sample_class(u_class, dispositions[user].as_array());
    }

    auto& tl = timelines[user];
    auto next = tl.prefix.back();
    ++next[index_of(truth.sampled_class)];
    tl.times.push_back(ts);
    tl.prefix.push_back(next);

    TweetRecord rec;
    rec.tweet_id = truth.tweet_id;
    rec.author = user_name(user, n);
    rec.timestamp = ts;
    rec.lang = "en";
    rec.has_media_or_url = false;
    rec.text = vocab.compose(truth.sampled_class, text_eng);
    out.events.add(std::move(rec));
    out.truth.tweets.push_back(std::move(truth));
  }

  out.truth.users.reserve(n);
  for (std::size_t u = 0; u < n; ++u)
    out.truth.users.push_back({user_name(u, n), cfg.beta_of(u), dispositions[u]});
  return out;
}

}  // namespace contagionlab
