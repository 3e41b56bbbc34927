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

#include <sstream>

#include <gtest/gtest.h>

#include "contagionlab/synthgen.hpp"

using namespace contagionlab;

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.n_users = 200;
  cfg.mean_followees = 10;
  cfg.duration_hours = 24;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST(SimConfig, ValidationRejectsOutOfRange) {
  auto bad = [](auto mutate) {
    SimConfig cfg;
    mutate(cfg);
    return cfg;
  };
  EXPECT_NO_THROW(SimConfig{}.validate());
  EXPECT_THROW(bad([](SimConfig& c) { c.n_users = 1; }).validate(), Error);
  EXPECT_THROW(bad([](SimConfig& c) { c.mean_followees = 1000; }).validate(), Error);
  EXPECT_THROW(bad([](SimConfig& c) { c.mean_followees = 0; }).validate(), Error);
  EXPECT_THROW(bad([](SimConfig& c) { c.contagion_strength = 1.5; }).validate(), Error);
  EXPECT_THROW(bad([](SimConfig& c) { c.homophily_strength = -0.1; }).validate(), Error);
  EXPECT_THROW(bad([](SimConfig& c) { c.post_rate_per_hour = 0; }).validate(), Error);
  EXPECT_THROW(bad([](SimConfig& c) { c.duration_hours = -1; }).validate(), Error);
  EXPECT_THROW(bad([](SimConfig& c) { c.base_distribution = {0.5, 0.5, 0.5}; }).validate(), Error);
  EXPECT_THROW(bad([](SimConfig& c) { c.user_beta = {0.1}; }).validate(), Error);
  EXPECT_THROW(bad([](SimConfig& c) { c.seed_hours = -1; }).validate(), Error);
  EXPECT_THROW(bad([](SimConfig& c) {
                 c.seed_hours = 1;
                 c.seed_distribution = {0.2, 0.2, 0.2};
               }).validate(),
               Error);
}

TEST(UserName, ZeroPadded) {
  EXPECT_EQ(user_name(7, 1000), "u007");
  EXPECT_EQ(user_name(999, 1000), "u999");
  EXPECT_EQ(user_name(0, 2), "u0");
}

TEST(Graph, MeanOutDegreeWithoutHomophily) {
  SimConfig cfg;
  cfg.n_users = 10000;
  cfg.mean_followees = 30;
  Engine eng(derive_seed(cfg.seed, "graph"));
  const auto g = generate_graph(cfg, eng);
  EXPECT_EQ(g.num_users(), 10000u);
  const double mean = static_cast<double>(g.num_edges()) / 10000.0;
  EXPECT_NEAR(mean, 30.0, 1.5);
  for (const auto& [u, fs] : g.adjacency()) ASSERT_FALSE(fs.contains(u));
}

TEST(Graph, TwoUsersFollowEachOther) {
  SimConfig cfg;
  cfg.n_users = 2;
  cfg.mean_followees = 1;
  Engine eng(1);
  const auto g = generate_graph(cfg, eng);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_TRUE(g.follows("u0", "u1"));
  EXPECT_TRUE(g.follows("u1", "u0"));
}

TEST(Graph, HomophilyRaisesFolloweeSimilarity) {
  auto mean_similarity = [](double eta) {
    SimConfig cfg;
    cfg.n_users = 500;
    cfg.mean_followees = 20;
    cfg.homophily_strength = eta;
    const auto disp = draw_dispositions(cfg);
    Engine eng(derive_seed(cfg.seed, "graph"));
    const auto fs = detail::draw_followees(cfg, disp, eng);
    double s = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (auto f : fs[i]) s += disposition_similarity(disp[i], disp[f]), ++k;
    return s / static_cast<double>(k);
  };
  EXPECT_GT(mean_similarity(1.0), mean_similarity(0.0) + 0.02);
}

TEST(Dispositions, OnTheSimplexAndNearBase) {
  SimConfig cfg;
  cfg.n_users = 2000;
  const auto d = draw_dispositions(cfg);
  std::array<double, 3> mean{0, 0, 0};
  for (const auto& x : d) {
    ASSERT_TRUE(x.is_valid());
    for (std::size_t c = 0; c < 3; ++c) mean[c] += x.as_array()[c] / 2000.0;
  }
  EXPECT_NEAR(mean[0], 0.20, 0.02);
  EXPECT_NEAR(mean[1], 0.45, 0.02);
  EXPECT_NEAR(mean[2], 0.35, 0.02);
}

TEST(Simulate, DeterministicPerSeed) {
  const auto cfg = small_config();
  const auto a = simulate(cfg);
  const auto b = simulate(cfg);
  EXPECT_EQ(a.events.records(), b.events.records());
  EXPECT_EQ(a.graph.adjacency(), b.graph.adjacency());
  auto other = cfg;
  other.seed = 6;
  EXPECT_NE(simulate(other).events.records(), a.events.records());
}

TEST(Simulate, ZeroDurationHasNoPosts) {
  auto cfg = small_config();
  cfg.duration_hours = 0;
  const auto out = simulate(cfg);
  EXPECT_TRUE(out.events.empty());
  EXPECT_EQ(out.graph.num_users(), cfg.n_users);
  EXPECT_EQ(out.truth.users.size(), cfg.n_users);
}

TEST(Simulate, PostVolumeMatchesRate) {
  const auto cfg = small_config();
  const auto out = simulate(cfg);
  // 200 users * 24 h * 1/h = 4800 expected, sd about 69.
  EXPECT_NEAR(static_cast<double>(out.events.size()), 4800.0, 350.0);
  for (std::size_t i = 1; i < out.events.size(); ++i)
    ASSERT_LE(out.events[static_cast<PostIndex>(i - 1)].timestamp,
              out.events[static_cast<PostIndex>(i)].timestamp);
}

TEST(Simulate, ZeroBetaNeverAppliesContagion) {
  const auto out = simulate(small_config());
  for (const auto& t : out.truth.tweets) ASSERT_FALSE(t.contagion_applied);
}

TEST(Simulate, ContagionCopiesAClassSeenInTheWindow) {
  auto cfg = small_config();
  cfg.contagion_strength = 1.0;
  const auto out = simulate(cfg);
  std::vector<EmotionClass> classes;
  for (const auto& t : out.truth.tweets) classes.push_back(t.sampled_class);
  std::size_t applied = 0;
  for (const auto& h : qualifying_histories(out.events, out.graph, 0, cfg.window_seconds)) {
    const auto& t = out.truth.tweets[h.target];
    // Every user has beta 1, so contagion applies exactly when something was seen.
    ASSERT_EQ(t.contagion_applied, !h.stimuli.empty());
    if (!t.contagion_applied) continue;
    ++applied;
    std::array<std::size_t, 3> seen{0, 0, 0};
    for (auto i : h.stimuli) ++seen[index_of(classes[i])];
    ASSERT_GT(seen[index_of(t.sampled_class)], 0u);
  }
  EXPECT_GT(applied, out.truth.tweets.size() / 2);
}

TEST(Simulate, PositiveSeedSpreadsUnderFullContagion) {
  auto cfg = small_config();
  cfg.contagion_strength = 1.0;
  cfg.seed_hours = 1.0;
  cfg.seed_distribution = {0.0, 0.0, 1.0};
  const auto out = simulate(cfg);
  std::size_t positive = 0, seeded = 0;
  for (std::size_t i = 0; i < out.events.size(); ++i) {
    const auto& t = out.truth.tweets[i];
    positive += t.sampled_class == EmotionClass::Positive;
    if (out.events[static_cast<PostIndex>(i)].timestamp < cfg.start_time + 3600) {
      ++seeded;
      ASSERT_EQ(t.sampled_class, EmotionClass::Positive);
      ASSERT_FALSE(t.contagion_applied);
    }
  }
  EXPECT_GT(seeded, 0u);
  EXPECT_GT(static_cast<double>(positive) / static_cast<double>(out.events.size()),
            cfg.base_distribution.positive);
}

TEST(Simulate, TextsClassifyToTheirSampledClass) {
  const auto out = simulate(small_config());
  ASSERT_EQ(out.events.size(), out.truth.tweets.size());
  const auto& lex = default_lexicon();
  for (std::size_t i = 0; i < out.events.size(); ++i) {
    const auto& rec = out.events[static_cast<PostIndex>(i)];
    ASSERT_EQ(rec.tweet_id, out.truth.tweets[i].tweet_id);
    ASSERT_EQ(classify_text(lex, rec.text), out.truth.tweets[i].sampled_class) << rec.text;
  }
}

TEST(Simulate, EventLogRoundTrips) {
  const auto out = simulate(small_config());
  std::ostringstream ev, gr;
  write_events(ev, out.events);
  write_graph(gr, out.graph);
  std::istringstream evin(ev.str()), grin(gr.str());
  EXPECT_EQ(load_events(evin, true).records(), out.events.records());
  EXPECT_EQ(load_graph(grin, true).adjacency(), out.graph.adjacency());
}

TEST(HeterogeneousBeta, SplitAndDeterminism) {
  SimConfig cfg;
  cfg.n_users = 1000;
  const auto beta = heterogeneous_beta(cfg, 0.1, 0.9, 0.5);
  std::size_t high = 0;
  for (double b : beta) {
    ASSERT_TRUE(b == 0.1 || b == 0.9);
    high += b == 0.9;
  }
  EXPECT_EQ(high, 500u);
  EXPECT_EQ(heterogeneous_beta(cfg, 0.1, 0.9, 0.5), beta);
  for (double b : heterogeneous_beta(cfg, 0.1, 0.9, 0.0)) ASSERT_EQ(b, 0.1);
  EXPECT_THROW(heterogeneous_beta(cfg, 0.9, 0.1, 0.5), Error);
  EXPECT_THROW(heterogeneous_beta(cfg, 0.1, 0.9, 1.5), Error);
}

TEST(Vocabulary, FillersAreNeutralAndPoolsNonEmpty) {
  const auto& v = TemplateVocabulary::bundled();
  EXPECT_FALSE(v.positive.empty());
  EXPECT_FALSE(v.negative.empty());
  const auto& lex = default_lexicon();
  for (const auto& f : v.filler) EXPECT_FALSE(lex.contains(f)) << f;
}
