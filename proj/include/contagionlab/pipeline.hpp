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
#include <optional>
#include <string>
#include <vector>

#include "contagionlab/corpus.hpp"
#include "contagionlab/null_model.hpp"
#include "contagionlab/random.hpp"
#include "contagionlab/sentiment.hpp"
#include "contagionlab/susceptibility.hpp"
#include "contagionlab/valence.hpp"

namespace contagionlab {

class NoQualifyingHistoriesError : public Error {
 public:
  using Error::Error;
};

enum class ProfileSource {
  Published,  // the fixed profiles from the original Twitter study
  Data,       // this corpus' own conditional distributions
};

struct AnalysisOptions {
  std::int64_t window_seconds = kDefaultWindowSeconds;
  std::size_t min_stimuli = kDefaultMinStimuli;
  std::size_t num_bins = kDefaultValenceBins;
  double threshold_pct = kDefaultClassPct;
  std::uint64_t seed = 1;
  bool with_replacement = true;
  std::size_t replicates = 1;
  unsigned threads = 1;
  ProfileSource profiles = ProfileSource::Published;
  FitWeighting weighting = FitWeighting::Unweighted;
};

struct GroupReport {
  EmotionClass response = EmotionClass::Neutral;
  std::optional<ConditionalDistribution> distribution;
  std::optional<std::array<double, 3>> overexposure;  // percentage points
  std::optional<MannWhitneyResult> test;
};

struct AnalysisReport {
  std::size_t num_events = 0;
  std::size_t num_eligible = 0;
  std::size_t num_candidate_targets = 0;  // eligible posts of tracked users
  std::size_t max_history_size = 0;

  std::vector<EmotionClass> classes;  // per record
  std::vector<ExposureHistory> histories;
  StimulusBucket bucket;
  BaselineResult baseline;
  std::array<GroupReport, 3> groups;

  std::size_t pairs_without_valence = 0;
  std::vector<StimulusResponseBin> bins;
  std::optional<LinearFit> fit;

  BaselineProfiles profiles;
  std::vector<ContagionLabel> labels;
  std::vector<UserSusceptibility> users;
  std::vector<FractionHistogramBin> histogram;
  std::optional<SusceptibilityClasses> classes_by_susceptibility;
  std::optional<AdoptionRates> low_rates;
  std::optional<AdoptionRates> high_rates;

  std::vector<std::string> warnings;
};

inline std::vector<EmotionClass> classify_records(const Dataset& ds, const Lexicon& lex,
                                                  unsigned threads = 1) {
  std::vector<EmotionClass> out(ds.size());
  parallel_for(ds.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      out[i] = classify_text(lex, ds[static_cast<PostIndex>(i)].text);
  });
  return out;
}

// Runs every stage. Randomness comes from derive_seed(opt.seed, "baseline").
inline AnalysisReport analyze(const Dataset& ds, const FollowGraph& graph, const Lexicon& lex,
                              const AnalysisOptions& opt) {
  AnalysisReport r;
  r.num_events = ds.size();
  for (const auto& rec : ds.records()) r.num_eligible += is_eligible(rec);
  r.classes = classify_records(ds, lex, opt.threads);
  const ClassLookup class_of(r.classes);

  auto all = qualifying_histories(ds, graph, 0, opt.window_seconds, opt.threads);
  r.num_candidate_targets = all.size();
  for (auto& h : all) {
    r.max_history_size = std::max(r.max_history_size, h.size());
    if (h.size() >= opt.min_stimuli && !h.stimuli.empty()) r.histories.push_back(std::move(h));
  }
  all.clear();
  if (r.histories.empty())
    throw NoQualifyingHistoriesError(
        "no qualifying histories: " + std::to_string(r.num_candidate_targets) +
        " eligible posts by tracked users, none with at least " + std::to_string(opt.min_stimuli) +
        " stimuli (largest history: " + std::to_string(r.max_history_size) + ")");

  r.bucket = pool_bucket(r.histories, class_of);
  const auto sizes = history_sizes(r.histories);
  BaselineOptions bopt;
  bopt.with_replacement = opt.with_replacement;
  bopt.replicates = opt.replicates;
  bopt.threads = opt.threads;
  r.baseline = sample_baseline(r.bucket, sizes, derive_seed(opt.seed, "baseline"), bopt);

  for (auto c : kAllClasses) {
    auto& g = r.groups[index_of(c)];
    g.response = c;
    try {
      g.distribution = conditional_distribution(r.histories, class_of, c);
      g.overexposure = overexposure(g.distribution->mean, r.baseline.mean);
      g.test = contagion_test(r.histories, class_of, c, r.baseline);
    } catch (const EmptyGroupError& e) {
      r.warnings.emplace_back(e.what());
    }
  }

  const auto pairs = stimulus_response_pairs(r.histories, class_of, &r.pairs_without_valence);
  r.bins = bin_stimuli(pairs, opt.num_bins);
  try {
    r.fit = fit_linear(r.bins, opt.weighting);
  } catch (const Error& e) {
    r.warnings.emplace_back(e.what());
  }

  if (opt.profiles == ProfileSource::Data) {
    for (const auto& g : r.groups)
      if (!g.distribution)
        throw Error("cannot derive profiles from the data: no " +
                    std::string(to_string(g.response)) + " responses");
    r.profiles = {r.groups[0].distribution->mean, r.groups[1].distribution->mean,
                  r.groups[2].distribution->mean};
  } else {
    r.profiles = BaselineProfiles::published();
  }
  r.labels = label_tweets(r.histories, class_of, r.profiles, opt.threads);
  const auto author_of = dataset_author_of(ds);
  r.users = user_fractions(r.labels, author_of);
  r.histogram = fraction_histogram(r.users);
  try {
    r.classes_by_susceptibility = classify_users(r.users, opt.threshold_pct);
    auto rates = [&](const std::set<std::string>& members) -> std::optional<AdoptionRates> {
      try {
        return adoption_rates(labels_of_users(r.labels, author_of, members), author_of);
      } catch (const EmptyGroupError& e) {
        r.warnings.emplace_back(e.what());
        return std::nullopt;
      }
    };
    r.low_rates = rates(r.classes_by_susceptibility->low);
    r.high_rates = rates(r.classes_by_susceptibility->high);
  } catch (const Error& e) {
    r.warnings.emplace_back(e.what());
  }
  return r;
}

}  // namespace contagionlab
