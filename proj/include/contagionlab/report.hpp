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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "contagionlab/pipeline.hpp"
#include "contagionlab/synthgen.hpp"

namespace contagionlab {

// Fixed-format reals so reports are byte-stable.
inline std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

inline std::string fmt_real(const std::optional<double>& v) { return v ? fmt_real(*v) : "NA"; }

// Writes to `path` through a temporary file renamed into place on success.
template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& fill) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    fill(out);
    out.flush();
    if (!out) throw Error("failed while writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

inline std::string group_name(EmotionClass c) { return "pre_" + std::string(to_string(c)); }

inline void write_distributions_csv(std::ostream& out, const AnalysisReport& r) {
  out << "group,neg,neu,pos,neg_se,neu_se,pos_se\n";
  auto row = [&](const std::string& name, const SentimentProportions& m, const StdErr& se) {
    out << name << ',' << fmt_real(m.negative) << ',' << fmt_real(m.neutral) << ','
        << fmt_real(m.positive) << ',' << fmt_real(se[0]) << ',' << fmt_real(se[1]) << ','
        << fmt_real(se[2]) << '\n';
  };
  row("baseline", r.baseline.mean, r.baseline.std_err);
  for (const auto& g : r.groups) {
    if (g.distribution)
      row(group_name(g.response), g.distribution->mean, g.distribution->std_err);
    else
      out << group_name(g.response) << ",NA,NA,NA,NA,NA,NA\n";
  }
}

inline void write_overexposure_csv(std::ostream& out, const AnalysisReport& r) {
  out << "group,delta_neg,delta_neu,delta_pos,test_class,n_observed,n_baseline,mw_u,mw_p\n";
  for (const auto& g : r.groups) {
    out << group_name(g.response) << ',';
    if (g.overexposure && g.test) {
      const auto& d = *g.overexposure;
      out << fmt_real(d[0]) << ',' << fmt_real(d[1]) << ',' << fmt_real(d[2]) << ','
          << to_string(g.response) << ',' << g.distribution->num_histories << ','
          << r.baseline.num_samples << ',' << fmt_real(g.test->u) << ',' << fmt_real(g.test->p)
          << '\n';
    } else {
      out << "NA,NA,NA," << to_string(g.response) << ",0," << r.baseline.num_samples << ",NA,NA\n";
    }
  }
}

inline void write_valence_bins_csv(std::ostream& out, const AnalysisReport& r) {
  out << "bin_mid,response_valence,count\n";
  for (const auto& b : r.bins)
    out << fmt_real(b.midpoint()) << ',' << fmt_real(b.response_valence) << ',' << b.count << '\n';
}

inline void write_valence_fit_csv(std::ostream& out, const AnalysisReport& r) {
  out << "slope,intercept,r2,n\n";
  if (r.fit)
    out << fmt_real(r.fit->slope) << ',' << fmt_real(r.fit->intercept) << ','
        << fmt_real(r.fit->r_squared) << ',' << r.fit->num_points << '\n';
  else
    out << "NA,NA,NA,0\n";
}

inline void write_user_susceptibility_csv(std::ostream& out, const AnalysisReport& r) {
  out << "user,fraction,num_tweets\n";
  for (const auto& u : r.users) out << u.user << ',' << fmt_real(u.fraction) << ',' << u.num_tweets << '\n';
}

inline void write_histogram_csv(std::ostream& out, const AnalysisReport& r) {
  out << "bin_lower,bin_upper,count,cumulative\n";
  for (const auto& b : r.histogram)
    out << fmt_real(b.lower) << ',' << fmt_real(b.upper) << ',' << b.count << ','
        << fmt_real(b.cumulative) << '\n';
}

inline void write_classes_csv(std::ostream& out, const AnalysisReport& r) {
  out << "class,pos_rate,neg_rate,ratio,n_users\n";
  if (!r.classes_by_susceptibility) return;
  auto row = [&](const char* name, const std::optional<AdoptionRates>& a, std::size_t members) {
    out << name << ',';
    if (a)
      out << fmt_real(a->pos_rate) << ',' << fmt_real(a->neg_rate) << ',' << fmt_real(a->ratio);
    else
      out << "NA,NA,NA";
    out << ',' << members << '\n';
  };
  row("low", r.low_rates, r.classes_by_susceptibility->low.size());
  row("high", r.high_rates, r.classes_by_susceptibility->high.size());
}

inline void write_profiles_csv(std::ostream& out, const AnalysisReport& r) {
  out << "profile,neg,neu,pos\n";
  for (auto c : kAllClasses) {
    const auto& p = r.profiles[c];
    out << to_string(c) << ',' << fmt_real(p.negative) << ',' << fmt_real(p.neutral) << ','
        << fmt_real(p.positive) << '\n';
  }
}

// Every CSV written by `analyze`, relative to the output directory.
inline const std::vector<std::string>& analysis_outputs() {
  static const std::vector<std::string> names = {
      "distributions.csv",        "overexposure.csv",           "valence_bins.csv",
      "valence_fit.csv",          "profiles.csv",               "user_susceptibility.csv",
      "susceptibility_histogram.csv", "susceptibility_classes.csv"};
  return names;
}

inline void write_analysis(const std::filesystem::path& dir, const AnalysisReport& r) {
  std::filesystem::create_directories(dir);
  write_file(dir / "distributions.csv", [&](auto& o) { write_distributions_csv(o, r); });
  write_file(dir / "overexposure.csv", [&](auto& o) { write_overexposure_csv(o, r); });
  write_file(dir / "valence_bins.csv", [&](auto& o) { write_valence_bins_csv(o, r); });
  write_file(dir / "valence_fit.csv", [&](auto& o) { write_valence_fit_csv(o, r); });
  write_file(dir / "profiles.csv", [&](auto& o) { write_profiles_csv(o, r); });
  write_file(dir / "user_susceptibility.csv", [&](auto& o) { write_user_susceptibility_csv(o, r); });
  write_file(dir / "susceptibility_histogram.csv", [&](auto& o) { write_histogram_csv(o, r); });
  write_file(dir / "susceptibility_classes.csv", [&](auto& o) { write_classes_csv(o, r); });
}

inline void write_ground_truth_csv(std::ostream& out, const GroundTruth& t) {
  out << "tweet_id,contagion_applied,sampled_class\n";
  for (const auto& x : t.tweets)
    out << x.tweet_id << ',' << (x.contagion_applied ? 1 : 0) << ',' << to_string(x.sampled_class) << '\n';
}

inline void write_users_truth_csv(std::ostream& out, const GroundTruth& t) {
  out << "user,beta,disp_neg,disp_neu,disp_pos\n";
  for (const auto& u : t.users)
    out << u.user << ',' << fmt_real(u.beta) << ',' << fmt_real(u.disposition.negative) << ','
        << fmt_real(u.disposition.neutral) << ',' << fmt_real(u.disposition.positive) << '\n';
}

inline void write_simulation(const std::filesystem::path& dir, const SimulationOutput& sim) {
  std::filesystem::create_directories(dir);
  write_file(dir / "events.jsonl", [&](auto& o) { write_events(o, sim.events); });
  write_file(dir / "graph.csv", [&](auto& o) { write_graph(o, sim.graph); });
  write_file(dir / "ground_truth.csv", [&](auto& o) { write_ground_truth_csv(o, sim.truth); });
  write_file(dir / "users_truth.csv", [&](auto& o) { write_users_truth_csv(o, sim.truth); });
}

}  // namespace contagionlab
