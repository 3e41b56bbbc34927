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
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contagionlab/corpus.hpp"
#include "contagionlab/pipeline.hpp"
#include "contagionlab/random.hpp"
#include "contagionlab/report.hpp"
#include "contagionlab/sentiment.hpp"
#include "contagionlab/synthgen.hpp"

// Command-line front end: `score`, `analyze` and `simulate`.
//
// Every subcommand accepts `--config FILE` with flat `key=value` lines
// (`#` comments). Keys are long flag names with `_` for `-`. Flags on the
// command line override the file. Keys containing a dot and the key
// `command` are reserved for manifests and are not turned into flags. The
// seed falls back to the CONTAGIONLAB_SEED environment variable, then 1.
//
// Exit status: 0 on success, 1 on an error, 2 when no history qualifies,
// and CLI11's codes for usage errors.
namespace contagionlab::cli {

inline constexpr const char* kSeedEnv = "CONTAGIONLAB_SEED";
inline constexpr int kExitError = 1;
inline constexpr int kExitNoHistories = 2;

using KeyValues = std::map<std::string, std::string>;

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(path + ":" + std::to_string(line_no) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline bool is_reserved_key(const std::string& key) {
  return key == "command" || key.find('.') != std::string::npos;
}

inline std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "' for digest");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

struct ExpandedArgs {
  std::vector<std::string> args;  // without the program name
  KeyValues reserved;             // manifest-only keys from the config file
};

// Splices `--config FILE` entries in front of the explicit flags and adds the
// seed fallback.
inline ExpandedArgs expand_args(const std::vector<std::string>& raw) {
  ExpandedArgs out;
  if (raw.empty()) return out;
  std::vector<std::string> from_config, explicit_args;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    std::string path;
    if (raw[i] == "--config" && i + 1 < raw.size()) {
      path = raw[++i];
    } else if (raw[i].rfind("--config=", 0) == 0) {
      path = raw[i].substr(9);
    } else {
      explicit_args.push_back(raw[i]);
      continue;
    }
    for (const auto& [k, v] : read_key_values(path)) {
      if (is_reserved_key(k)) {
        out.reserved[k] = v;
        continue;
      }
      std::string flag = k;
      std::replace(flag.begin(), flag.end(), '_', '-');
      from_config.push_back("--" + flag + "=" + v);
    }
  }
  // Config flags belong to the subcommand, so they go right after its name.
  const auto sub = std::find_if(explicit_args.begin(), explicit_args.end(),
                                [](const std::string& a) { return a.rfind('-', 0) != 0; });
  const std::string command = sub == explicit_args.end() ? std::string() : *sub;
  const auto split = sub == explicit_args.end() ? explicit_args.begin() : std::next(sub);
  out.args.push_back(raw[0]);
  out.args.insert(out.args.end(), explicit_args.begin(), split);
  out.args.insert(out.args.end(), from_config.begin(), from_config.end());
  out.args.insert(out.args.end(), split, explicit_args.end());
  if (command != "analyze" && command != "simulate") return out;

  const bool has_seed = std::any_of(out.args.begin(), out.args.end(), [](const std::string& a) {
    return a == "--seed" || a.rfind("--seed=", 0) == 0;
  });
  if (!has_seed) {
    if (const char* env = std::getenv(kSeedEnv); env && *env)
      out.args.push_back(std::string("--seed=") + env);
  }
  return out;
}

struct ScoreArgs {
  std::string events;
  std::string lexicon;  // empty: bundled lexicon
  std::string out;      // empty: standard output
  bool strict = false;
};

struct AnalyzeArgs {
  std::string events;
  std::string graph;
  std::string lexicon;
  std::string out;
  std::int64_t window_seconds = kDefaultWindowSeconds;
  std::size_t min_stimuli = kDefaultMinStimuli;
  std::size_t bins = kDefaultValenceBins;
  double pct = kDefaultClassPct;
  std::uint64_t seed = 1;
  bool strict = false;
  bool without_replacement = false;
  std::size_t replicates = 1;
  unsigned threads = 1;
  std::string profiles = "published";
  bool weighted_fit = false;
};

struct SimulateArgs {
  std::string out;
  SimConfig config;
  std::string base = "0.2,0.45,0.35";
  double beta_low = -1.0;
  double beta_high = -1.0;
  double beta_split = -1.0;
};

inline Lexicon lexicon_from(const std::string& path) {
  return path.empty() ? default_lexicon() : load_lexicon(path);
}

inline void report_load(std::ostream& err, const char* what, const LoadStats& s) {
  if (s.skipped == 0) return;
  err << what << ": loaded " << s.loaded << ", skipped " << s.skipped << " malformed line(s)\n";
  for (const auto& d : s.diagnostics) err << "  " << d << '\n';
}

inline int cmd_score(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
  const Lexicon lex = lexicon_from(a.lexicon);
  LoadStats stats;
  const Dataset ds = load_events_file(a.events, a.strict, &stats);
  report_load(err, "events", stats);
  auto emit = [&](std::ostream& o) {
    o << "tweet_id,s_pos,s_neg,polarity,class\n";
    for (const auto& r : ds.records()) {
      const auto s = score(lex, r.text);
      const auto p = polarity(s);
      o << r.tweet_id << ',' << s.positive << ',' << s.negative << ',' << p.value << ','
        << to_string(classify(p)) << '\n';
    }
  };
  if (a.out.empty()) {
    emit(out);
  } else {
    const auto parent = std::filesystem::path(a.out).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    write_file(a.out, emit);
  }
  return 0;
}

inline void write_analyze_manifest(const std::filesystem::path& dir, const AnalyzeArgs& a,
                                   const AnalysisReport& r) {
  write_file(dir / "manifest.txt", [&](std::ostream& o) {
    o << "# contagionlab run manifest\n";
    o << "command=analyze\n";
    o << "events=" << a.events << '\n';
    o << "graph=" << a.graph << '\n';
    if (!a.lexicon.empty()) o << "lexicon=" << a.lexicon << '\n';
    o << "out=" << a.out << '\n';
    o << "window_seconds=" << a.window_seconds << '\n';
    o << "min_stimuli=" << a.min_stimuli << '\n';
    o << "bins=" << a.bins << '\n';
    o << "pct=" << fmt_real(a.pct) << '\n';
    o << "seed=" << a.seed << '\n';
    o << "strict=" << (a.strict ? "true" : "false") << '\n';
    o << "without_replacement=" << (a.without_replacement ? "true" : "false") << '\n';
    o << "replicates=" << a.replicates << '\n';
    o << "profiles=" << a.profiles << '\n';
    o << "weighted_fit=" << (a.weighted_fit ? "true" : "false") << '\n';
    o << "digest.events=" << file_digest(a.events) << '\n';
    o << "digest.graph=" << file_digest(a.graph) << '\n';
    o << "digest.lexicon=" << (a.lexicon.empty() ? std::string("bundled") : file_digest(a.lexicon))
      << '\n';
    o << "seed.baseline=" << derive_seed(a.seed, "baseline") << '\n';
    o << "rows.events=" << r.num_events << '\n';
    o << "rows.histories=" << r.histories.size() << '\n';
    o << "rows.users=" << r.users.size() << '\n';
    for (const auto& w : r.warnings) o << "# warning: " << w << '\n';
  });
}

inline void check_digests(const KeyValues& reserved, const AnalyzeArgs& a, std::ostream& err) {
  auto check = [&](const char* key, const std::string& path) {
    auto it = reserved.find(key);
    if (it == reserved.end() || path.empty()) return;
    if (it->second != file_digest(path))
      err << "warning: " << path << " differs from the manifest (" << key << ")\n";
  };
  check("digest.events", a.events);
  check("digest.graph", a.graph);
  check("digest.lexicon", a.lexicon);
}

inline int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err,
                       const KeyValues& reserved = {}) {
  check_digests(reserved, a, err);
  const Lexicon lex = lexicon_from(a.lexicon);
  LoadStats es, gs;
  const Dataset ds = load_events_file(a.events, a.strict, &es);
  report_load(err, "events", es);
  const FollowGraph graph = load_graph_file(a.graph, a.strict, &gs);
  report_load(err, "graph", gs);

  AnalysisOptions opt;
  opt.window_seconds = a.window_seconds;
  opt.min_stimuli = a.min_stimuli;
  opt.num_bins = a.bins;
  opt.threshold_pct = a.pct;
  opt.seed = a.seed;
  opt.with_replacement = !a.without_replacement;
  opt.replicates = a.replicates;
  opt.threads = a.threads;
  opt.profiles = a.profiles == "data" ? ProfileSource::Data : ProfileSource::Published;
  opt.weighting = a.weighted_fit ? FitWeighting::ByCount : FitWeighting::Unweighted;

  const AnalysisReport r = analyze(ds, graph, lex, opt);
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  write_analysis(a.out, r);
  write_analyze_manifest(a.out, a, r);
  out << "analyzed " << r.histories.size() << " histories from " << r.num_events << " events; "
      << "outputs in " << a.out << '\n';
  return 0;
}

inline std::vector<double> parse_triplet(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(trim(part), &used));
      if (used != trim(part).size()) throw Error("bad number");
    } catch (const std::exception&) {
      throw Error("cannot parse '" + s + "' as three comma-separated numbers");
    }
  }
  if (v.size() != 3) throw Error("expected three comma-separated numbers, got '" + s + "'");
  return v;
}

inline int cmd_simulate(SimulateArgs a, std::ostream& out, std::ostream&) {
  const auto base = parse_triplet(a.base);
  a.config.base_distribution = {base[0], base[1], base[2]};
  const bool heterogeneous = a.beta_split >= 0.0 || a.beta_low >= 0.0 || a.beta_high >= 0.0;
  if (heterogeneous) {
    if (a.beta_split < 0.0 || a.beta_low < 0.0 || a.beta_high < 0.0)
      throw Error("--beta-low, --beta-high and --beta-split must be given together");
    a.config.user_beta = heterogeneous_beta(a.config, a.beta_low, a.beta_high, a.beta_split);
  }
  const auto sim = simulate(a.config);
  write_simulation(a.out, sim);
  const auto& c = a.config;
  write_file(std::filesystem::path(a.out) / "manifest.txt", [&](std::ostream& o) {
    o << "# contagionlab run manifest\n";
    o << "command=simulate\n";
    o << "out=" << a.out << '\n';
    o << "seed=" << c.seed << '\n';
    o << "users=" << c.n_users << '\n';
    o << "followees=" << fmt_real(c.mean_followees) << '\n';
    o << "rate=" << fmt_real(c.post_rate_per_hour) << '\n';
    o << "hours=" << fmt_real(c.duration_hours) << '\n';
    o << "beta=" << fmt_real(c.contagion_strength) << '\n';
    o << "homophily=" << fmt_real(c.homophily_strength) << '\n';
    o << "base=" << a.base << '\n';
    o << "spread=" << fmt_real(c.disposition_spread) << '\n';
    o << "candidates=" << c.homophily_candidates << '\n';
    o << "window_seconds=" << c.window_seconds << '\n';
    o << "start_time=" << c.start_time << '\n';
    if (heterogeneous) {
      o << "beta_low=" << fmt_real(a.beta_low) << '\n';
      o << "beta_high=" << fmt_real(a.beta_high) << '\n';
      o << "beta_split=" << fmt_real(a.beta_split) << '\n';
    }
    o << "rows.events=" << sim.events.size() << '\n';
    o << "rows.graph_edges=" << sim.graph.num_edges() << '\n';
    o << "rows.users=" << sim.truth.users.size() << '\n';
    o << "rows.ground_truth=" << sim.truth.tweets.size() << '\n';
  });
  out << "simulated " << sim.events.size() << " posts by " << c.n_users << " users into " << a.out
      << '\n';
  return 0;
}

inline int run(const std::vector<std::string>& raw, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  ExpandedArgs expanded;
  try {
    expanded = expand_args(raw);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  CLI::App app{"Emotional contagion analysis for timestamped social posts"};
  app.name(raw.empty() ? "contagionlab" : raw[0]);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  ScoreArgs score_args;
  auto* score_cmd = app.add_subcommand("score", "Score every post's sentiment");
  score_cmd->add_option("--events", score_args.events, "Event log (JSON Lines)")->required();
  score_cmd->add_option("--lexicon", score_args.lexicon, "Lexicon TSV (default: bundled)");
  score_cmd->add_option("--out", score_args.out, "Output CSV (default: standard output)");
  score_cmd->add_flag("--strict", score_args.strict, "Fail on malformed input");

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the contagion analysis");
  analyze_cmd->add_option("--events", an.events, "Event log (JSON Lines)")->required();
  analyze_cmd->add_option("--graph", an.graph, "Follow graph CSV")->required();
  analyze_cmd->add_option("--lexicon", an.lexicon, "Lexicon TSV (default: bundled)");
  analyze_cmd->add_option("--out", an.out, "Output directory")->required();
  analyze_cmd->add_option("--window-seconds", an.window_seconds, "Exposure window")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--min-stimuli", an.min_stimuli, "Minimum history size");
  analyze_cmd->add_option("--bins", an.bins, "Stimulus valence bins over [-1, 1]")
      ->check(CLI::Range(2, 100000));
  analyze_cmd->add_option("--pct", an.pct, "Share of users in each susceptibility class")
      ->check(CLI::Range(0.0, 0.5));
  analyze_cmd->add_option("--seed", an.seed, "Root seed");
  analyze_cmd->add_flag("--strict", an.strict, "Fail on malformed input or duplicate ids");
  analyze_cmd->add_flag("--without-replacement", an.without_replacement,
                        "Baseline draws without replacement");
  analyze_cmd->add_option("--replicates", an.replicates, "Baseline passes over the histories")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--threads", an.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--profiles", an.profiles, "Susceptibility profiles")
      ->check(CLI::IsMember({"published", "data"}));
  analyze_cmd->add_flag("--weighted-fit", an.weighted_fit, "Weight the valence fit by bin counts");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic corpus");
  simulate_cmd->add_option("--out", sim.out, "Output directory")->required();
  simulate_cmd->add_option("--seed", sim.config.seed, "Root seed");
  simulate_cmd->add_option("--users", sim.config.n_users, "Number of users");
  simulate_cmd->add_option("--followees", sim.config.mean_followees, "Mean followees per user");
  simulate_cmd->add_option("--rate", sim.config.post_rate_per_hour, "Posts per user per hour");
  simulate_cmd->add_option("--hours", sim.config.duration_hours, "Simulated duration");
  simulate_cmd->add_option("--beta", sim.config.contagion_strength, "Contagion strength");
  simulate_cmd->add_option("--homophily", sim.config.homophily_strength, "Homophily strength");
  simulate_cmd->add_option("--base", sim.base, "Base distribution neg,neu,pos");
  simulate_cmd->add_option("--spread", sim.config.disposition_spread, "Disposition spread");
  simulate_cmd->add_option("--candidates", sim.config.homophily_candidates,
                           "Candidates per homophilous link");
  simulate_cmd->add_option("--window-seconds", sim.config.window_seconds, "Contagion window");
  simulate_cmd->add_option("--start-time", sim.config.start_time, "Epoch of the first second");
  simulate_cmd->add_option("--beta-low", sim.beta_low, "Heterogeneous mode: low beta");
  simulate_cmd->add_option("--beta-high", sim.beta_high, "Heterogeneous mode: high beta");
  simulate_cmd->add_option("--beta-split", sim.beta_split, "Heterogeneous mode: share at high beta");

  std::vector<std::string> reversed(expanded.args.rbegin(), expanded.args.rend());
  reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*score_cmd) return cmd_score(score_args, out, err);
    if (*analyze_cmd) return cmd_analyze(an, out, err, expanded.reserved);
    if (*simulate_cmd) return cmd_simulate(sim, out, err);
  } catch (const NoQualifyingHistoriesError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoHistories;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

inline int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc));
}

}  // namespace contagionlab::cli
