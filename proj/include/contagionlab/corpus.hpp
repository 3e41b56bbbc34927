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
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "contagionlab/parallel.hpp"
#include "contagionlab/types.hpp"

namespace contagionlab {

class CorpusError : public Error {
 public:
  using Error::Error;
};

class UnknownUserError : public CorpusError {
 public:
  explicit UnknownUserError(const std::string& user)
      : CorpusError("unknown user '" + user + "' (not present in the follow graph)") {}
};

inline constexpr std::int64_t kDefaultWindowSeconds = 3600;
inline constexpr std::size_t kDefaultMinStimuli = 20;

struct TweetRecord {
  std::string tweet_id;
  std::string author;
  std::int64_t timestamp = 0;  // epoch seconds
  std::string text;
  std::string lang;
  bool has_media_or_url = false;

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

// English and free of URLs/media.
inline bool is_eligible(const TweetRecord& t) { return t.lang == "en" && !t.has_media_or_url; }

// Position of a record inside its Dataset.
using PostIndex = std::uint32_t;

// Records in input order with a unique-id index.
class Dataset {
 public:
  // Returns false (and stores nothing) when the id is already present.
  bool add(TweetRecord record) {
    if (records_.size() >= UINT32_MAX) throw CorpusError("dataset too large");
    auto [it, inserted] =
        by_id_.emplace(record.tweet_id, static_cast<PostIndex>(records_.size()));
    if (!inserted) return false;
    records_.push_back(std::move(record));
    return true;
  }

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const TweetRecord& operator[](PostIndex i) const { return records_[i]; }
  const std::vector<TweetRecord>& records() const { return records_; }

  std::optional<PostIndex> find(const std::string& tweet_id) const {
    auto it = by_id_.find(tweet_id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<TweetRecord> records_;
  std::unordered_map<std::string, PostIndex> by_id_;
};

struct LoadStats {
  std::size_t loaded = 0;
  std::size_t skipped = 0;
  // Up to the first few problems, as "line N: reason".
  std::vector<std::string> diagnostics;
};

namespace detail {

inline constexpr std::size_t kMaxDiagnostics = 10;

inline void note_skip(LoadStats& stats, std::size_t line_no, const std::string& why, bool strict,
                      const char* what) {
  const std::string msg = "line " + std::to_string(line_no) + ": " + why;
  if (strict) throw CorpusError(std::string(what) + " " + msg);
  ++stats.skipped;
  if (stats.diagnostics.size() < kMaxDiagnostics) stats.diagnostics.push_back(msg);
}

inline std::string json_id(const nlohmann::json& v, const char* field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw CorpusError(std::string("field '") + field + "' must be a string or integer");
}

}  // namespace detail

// Event log: JSON Lines, one object per line with fields tweet_id, author,
// timestamp, lang, has_media_or_url, text. The text uses JSON string
// escaping. Blank lines are ignored. Malformed lines and duplicate ids are
// skipped and counted, or fatal in strict mode.
inline Dataset load_events(std::istream& in, bool strict, LoadStats* stats_out = nullptr) {
  Dataset ds;
  LoadStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    TweetRecord rec;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.is_object()) throw CorpusError("record is not a JSON object");
      rec.tweet_id = detail::json_id(j.at("tweet_id"), "tweet_id");
      rec.author = detail::json_id(j.at("author"), "author");
      const auto& ts = j.at("timestamp");
      if (!ts.is_number_integer()) throw CorpusError("timestamp must be an integer");
      rec.timestamp = ts.get<std::int64_t>();
      rec.lang = j.at("lang").get<std::string>();
      rec.has_media_or_url = j.at("has_media_or_url").get<bool>();
      rec.text = j.at("text").get<std::string>();
    } catch (const std::exception& e) {
      detail::note_skip(stats, line_no, e.what(), strict, "malformed event");
      continue;
    }
    if (rec.timestamp < 0) {
      detail::note_skip(stats, line_no, "negative timestamp", strict, "malformed event");
      continue;
    }
    if (rec.tweet_id.empty() || rec.author.empty()) {
      detail::note_skip(stats, line_no, "empty tweet_id or author", strict, "malformed event");
      continue;
    }
    const std::string id = rec.tweet_id;
    if (!ds.add(std::move(rec))) {
      detail::note_skip(stats, line_no, "duplicate tweet_id '" + id + "'", strict, "malformed event");
      continue;
    }
    ++stats.loaded;
  }
  if (in.bad()) throw CorpusError("error while reading event stream");
  if (stats_out) *stats_out = std::move(stats);
  return ds;
}

inline Dataset load_events_file(const std::string& path, bool strict, LoadStats* stats = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open event log '" + path + "'");
  return load_events(in, strict, stats);
}

inline void write_event(std::ostream& out, const TweetRecord& r) {
  nlohmann::ordered_json j;
  j["tweet_id"] = r.tweet_id;
  j["author"] = r.author;
  j["timestamp"] = r.timestamp;
  j["lang"] = r.lang;
  j["has_media_or_url"] = r.has_media_or_url;
  j["text"] = r.text;
  out << j.dump() << '\n';
}

inline void write_events(std::ostream& out, const Dataset& ds) {
  for (const auto& r : ds.records()) write_event(out, r);
}

// Who follows whom. Users are tracked once they appear as a follower, even
// with no followees.
class FollowGraph {
 public:
  void add_user(const std::string& user) { adjacency_.try_emplace(user); }

  void add_follow(const std::string& follower, const std::string& followee) {
    if (follower == followee) throw CorpusError("self-loop on user '" + follower + "'");
    adjacency_[follower].insert(followee);
  }

  bool contains(const std::string& user) const { return adjacency_.contains(user); }

  const std::set<std::string>& followees(const std::string& user) const {
    auto it = adjacency_.find(user);
    if (it == adjacency_.end()) throw UnknownUserError(user);
    return it->second;
  }

  bool follows(const std::string& follower, const std::string& followee) const {
    auto it = adjacency_.find(follower);
    return it != adjacency_.end() && it->second.contains(followee);
  }

  const std::map<std::string, std::set<std::string>>& adjacency() const { return adjacency_; }
  std::size_t num_users() const { return adjacency_.size(); }
  std::size_t num_edges() const {
    std::size_t n = 0;
    for (const auto& [u, f] : adjacency_) n += f.size();
    return n;
  }

 private:
  std::map<std::string, std::set<std::string>> adjacency_;
};

// Follow graph CSV: header `follower,followee`, then one edge per line. A row
// with an empty followee (`alice,`) declares a tracked user without
// followees. Fields are not quoted, so ids may not contain commas.
inline FollowGraph load_graph(std::istream& in, bool strict, LoadStats* stats_out = nullptr) {
  FollowGraph g;
  LoadStats stats;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "follower,followee")
        throw CorpusError("follow graph must start with header 'follower,followee'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      detail::note_skip(stats, line_no, "expected follower,followee", strict, "malformed graph row");
      continue;
    }
    const std::string follower = line.substr(0, comma);
    const std::string followee = line.substr(comma + 1);
    if (follower.empty()) {
      detail::note_skip(stats, line_no, "empty follower", strict, "malformed graph row");
      continue;
    }
    if (followee.empty()) {
      g.add_user(follower);
    } else if (follower == followee) {
      detail::note_skip(stats, line_no, "self-loop", strict, "malformed graph row");
      continue;
    } else {
      g.add_follow(follower, followee);
    }
    ++stats.loaded;
  }
  if (in.bad()) throw CorpusError("error while reading follow graph");
  if (stats_out) *stats_out = std::move(stats);
  return g;
}

inline FollowGraph load_graph_file(const std::string& path, bool strict, LoadStats* stats = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open follow graph '" + path + "'");
  return load_graph(in, strict, stats);
}

inline void write_graph(std::ostream& out, const FollowGraph& g) {
  out << "follower,followee\n";
  for (const auto& [user, followees] : g.adjacency()) {
    if (followees.empty()) out << user << ",\n";
    for (const auto& f : followees) out << user << ',' << f << '\n';
  }
}

// The posts a user could have seen before posting `target`: eligible posts
// by their followees in [target.timestamp - window, target.timestamp),
// ordered by (timestamp, dataset position).
struct ExposureHistory {
  PostIndex target = 0;
  std::vector<PostIndex> stimuli;
  std::int64_t window_seconds = kDefaultWindowSeconds;

  std::size_t size() const { return stimuli.size(); }
};

// Per-user timelines of eligible posts, built once and queried per target.
class ExposureIndex {
 public:
  ExposureIndex(const Dataset& dataset, const FollowGraph& graph) : dataset_(&dataset) {
    auto intern = [this](const std::string& u) {
      auto [it, inserted] = user_ids_.emplace(u, static_cast<std::uint32_t>(timelines_.size()));
      if (inserted) {
        timelines_.emplace_back();
        followees_.emplace_back();
        tracked_.push_back(false);
      }
      return it->second;
    };
    for (const auto& [user, fs] : graph.adjacency()) {
      const auto uid = intern(user);
      std::vector<std::uint32_t> ids;
      ids.reserve(fs.size());
      for (const auto& f : fs) ids.push_back(intern(f));
      followees_[uid] = std::move(ids);
      tracked_[uid] = true;
    }
    for (PostIndex i = 0; i < dataset.size(); ++i) {
      const auto& r = dataset[i];
      if (!is_eligible(r)) continue;
      auto it = user_ids_.find(r.author);
      if (it == user_ids_.end()) continue;  // nobody follows them
      timelines_[it->second].push_back({r.timestamp, i});
    }
    for (auto& tl : timelines_) std::sort(tl.begin(), tl.end());
  }

  bool tracks(const std::string& user) const {
    auto it = user_ids_.find(user);
    return it != user_ids_.end() && tracked_[it->second];
  }

  ExposureHistory history_for(PostIndex target, std::int64_t window_seconds) const {
    const auto& rec = (*dataset_)[target];
    auto it = user_ids_.find(rec.author);
    if (it == user_ids_.end() || !tracked_[it->second]) throw UnknownUserError(rec.author);

    ExposureHistory h;
    h.target = target;
    h.window_seconds = window_seconds;
    const Entry lo{rec.timestamp - window_seconds, 0};
    const Entry hi{rec.timestamp, 0};
    std::vector<Entry> hits;
    for (auto f : followees_[it->second]) {
      const auto& tl = timelines_[f];
      auto b = std::lower_bound(tl.begin(), tl.end(), lo);
      auto e = std::lower_bound(b, tl.end(), hi);
      hits.insert(hits.end(), b, e);
    }
    std::sort(hits.begin(), hits.end());
    h.stimuli.reserve(hits.size());
    for (const auto& [ts, idx] : hits) h.stimuli.push_back(idx);
    return h;
  }

 private:
  using Entry = std::pair<std::int64_t, PostIndex>;

  const Dataset* dataset_;
  std::unordered_map<std::string, std::uint32_t> user_ids_;
  std::vector<std::vector<Entry>> timelines_;
  std::vector<std::vector<std::uint32_t>> followees_;
  std::vector<bool> tracked_;
};

inline ExposureHistory build_history(const Dataset& dataset, const FollowGraph& graph,
                                     const TweetRecord& target,
                                     std::int64_t window_seconds = kDefaultWindowSeconds) {
  if (!graph.contains(target.author)) throw UnknownUserError(target.author);
  const auto idx = dataset.find(target.tweet_id);
  if (!idx) throw CorpusError("target tweet '" + target.tweet_id + "' is not in the dataset");
  return ExposureIndex(dataset, graph).history_for(*idx, window_seconds);
}

// One history per eligible post of a tracked user with at least
// `min_stimuli` stimuli, ordered by (target timestamp, target tweet_id).
inline std::vector<ExposureHistory> qualifying_histories(
    const Dataset& dataset, const FollowGraph& graph, std::size_t min_stimuli = kDefaultMinStimuli,
    std::int64_t window_seconds = kDefaultWindowSeconds, unsigned threads = 1) {
  const ExposureIndex index(dataset, graph);
  std::vector<PostIndex> targets;
  for (PostIndex i = 0; i < dataset.size(); ++i)
    if (is_eligible(dataset[i]) && index.tracks(dataset[i].author)) targets.push_back(i);
  std::sort(targets.begin(), targets.end(), [&](PostIndex a, PostIndex b) {
    const auto& ra = dataset[a];
    const auto& rb = dataset[b];
    return std::tie(ra.timestamp, ra.tweet_id) < std::tie(rb.timestamp, rb.tweet_id);
  });

  std::vector<ExposureHistory> all(targets.size());
  parallel_for(targets.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) all[i] = index.history_for(targets[i], window_seconds);
  });
  std::vector<ExposureHistory> out;
  for (auto& h : all)
    if (h.size() >= min_stimuli) out.push_back(std::move(h));
  return out;
}

inline std::vector<std::string> stimulus_ids(const Dataset& dataset, const ExposureHistory& h) {
  std::vector<std::string> ids;
  ids.reserve(h.stimuli.size());
  for (auto i : h.stimuli) ids.push_back(dataset[i].tweet_id);
  return ids;
}

}  // namespace contagionlab
