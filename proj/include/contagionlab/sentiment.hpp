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
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "contagionlab/default_lexicon.hpp"
#include "contagionlab/types.hpp"

namespace contagionlab {

class LexiconError : public Error {
 public:
  using Error::Error;
};

// Rule-based scorer for short informal text.
//
// Each post gets two scores on 1..5: the strongest positive and the
// strongest negative term found. Term strengths come from the lexicon and
// are adjusted, in order, by
//   1. elongation ("loooove"): one step further from zero,
//   2. a booster in the immediately preceding token ("very good"),
//   3. a negation term among the two preceding tokens ("not good"): the
//      term stops counting for its own side and feeds min(|base|, 3) to the
//      opposite side,
//   4. clamping the magnitude into [2, 5].
// Emoticons take the elongation bonus but are never boosted or negated.
// A side with no contributing token keeps the neutral score 1.

struct Lexicon {
  std::unordered_map<std::string, int> sentiment_terms;
  std::unordered_map<std::string, int> booster_terms;
  std::unordered_set<std::string> negation_terms;
  std::unordered_map<std::string, int> emoticons;

  std::size_t size() const {
    return sentiment_terms.size() + booster_terms.size() + negation_terms.size() + emoticons.size();
  }

  bool contains(const std::string& term) const {
    return sentiment_terms.contains(term) || booster_terms.contains(term) ||
           negation_terms.contains(term) || emoticons.contains(term);
  }

  // Throws LexiconError describing the first violated invariant.
  void validate() const {
    auto check_strength = [](const std::string& term, int s) {
      if (std::abs(s) < 2 || std::abs(s) > 5)
        throw LexiconError("strength of '" + term + "' must satisfy 2 <= |s| <= 5");
    };
    auto check_key = [](const std::string& term) {
      if (term.empty()) throw LexiconError("empty lexicon term");
      for (unsigned char ch : term)
        if (std::isupper(ch)) throw LexiconError("lexicon term '" + term + "' is not lowercase");
    };
    std::unordered_set<std::string> seen;
    auto unique = [&](const std::string& term) {
      check_key(term);
      if (!seen.insert(term).second) throw LexiconError("duplicate lexicon term '" + term + "'");
    };
    for (const auto& [t, s] : sentiment_terms) unique(t), check_strength(t, s);
    for (const auto& [t, s] : emoticons) unique(t), check_strength(t, s);
    for (const auto& [t, b] : booster_terms) {
      unique(t);
      if (b < -2 || b > 2) throw LexiconError("booster shift of '" + t + "' must lie in [-2, 2]");
    }
    for (const auto& t : negation_terms) unique(t);
  }
};

// Parses `term<TAB>kind<TAB>value` lines; `#` starts a comment line.
inline Lexicon parse_lexicon(std::istream& in) {
  Lexicon lex;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& what) {
      throw LexiconError("lexicon line " + std::to_string(line_no) + ": " + what);
    };
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos)
      fail("expected term<TAB>kind<TAB>value");
    std::string term = line.substr(0, t1);
    const std::string kind = line.substr(t1 + 1, t2 - t1 - 1);
    const std::string value_text = line.substr(t2 + 1);
    std::transform(term.begin(), term.end(), term.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (term.empty()) fail("empty term");
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (ec != std::errc() || ptr != value_text.data() + value_text.size())
      fail("value '" + value_text + "' is not an integer");
    if (!seen.insert(term).second) fail("duplicate term '" + term + "'");

    if (kind == "sent") {
      if (std::abs(value) < 2 || std::abs(value) > 5) fail("sentiment strength out of range");
      lex.sentiment_terms.emplace(term, value);
    } else if (kind == "emo") {
      if (std::abs(value) < 2 || std::abs(value) > 5) fail("emoticon strength out of range");
      lex.emoticons.emplace(term, value);
    } else if (kind == "boost") {
      if (value < -2 || value > 2) fail("booster shift out of range");
      lex.booster_terms.emplace(term, value);
    } else if (kind == "neg") {
      if (value != 0) fail("negation lines carry value 0");
      lex.negation_terms.insert(term);
    } else {
      fail("unknown kind '" + kind + "'");
    }
  }
  return lex;
}

inline Lexicon parse_lexicon(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_lexicon(in);
}

inline Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open lexicon file '" + path + "'");
  return parse_lexicon(in);
}

inline const Lexicon& default_lexicon() {
  static const Lexicon lex = parse_lexicon(kDefaultLexiconTsv);
  return lex;
}

// `text` has runs of 3+ identical characters collapsed to one; `doubled`
// (set only for elongated tokens) collapses them to two, so both "loooove"
// and "goood" can reach their lexicon entries.
struct Token {
  std::string text;
  bool elongated = false;
  std::string doubled;

  friend bool operator==(const Token& a, const Token& b) {
    return a.text == b.text && a.elongated == b.elongated;
  }
};

namespace detail {

inline bool is_face_char(char c) {
  return c == ':' || c == ';' || c == '=' || c == '<' || c == '>' || c == '^' || c == '_';
}

// Emoticon heuristic: at least two characters, at most one letter which must
// sit at either end (":D", "D:"), and at least one face character.
inline bool looks_like_glyph(std::string_view chunk) {
  if (chunk.size() < 2) return false;
  std::size_t letters = 0, letter_pos = 0;
  bool face = false;
  for (std::size_t i = 0; i < chunk.size(); ++i) {
    const auto c = static_cast<unsigned char>(chunk[i]);
    if (std::isalpha(c)) ++letters, letter_pos = i;
    if (is_face_char(chunk[i])) face = true;
  }
  if (!face || letters > 1) return false;
  return letters == 0 || letter_pos == 0 || letter_pos + 1 == chunk.size();
}

// Collapses runs of >= 3 identical characters to `keep` characters; returns
// whether any run was collapsed.
inline bool collapse_elongation(std::string& s, std::size_t keep = 1) {
  bool elongated = false;
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    if (j - i >= 3) {
      elongated = true;
      out.append(keep, s[i]);
    } else {
      out.append(s, i, j - i);
    }
    i = j;
  }
  s = std::move(out);
  return elongated;
}

inline bool is_word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace detail

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;

    std::string chunk(text.substr(start, i - start));
    std::transform(chunk.begin(), chunk.end(), chunk.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (!detail::looks_like_glyph(chunk)) {
      std::size_t b = 0, e = chunk.size();
      while (b < e && !detail::is_word_char(static_cast<unsigned char>(chunk[b]))) ++b;
      while (e > b && !detail::is_word_char(static_cast<unsigned char>(chunk[e - 1]))) --e;
      chunk = chunk.substr(b, e - b);
      if (chunk.empty()) continue;
    }
    Token tok;
    std::string doubled = chunk;
    tok.elongated = detail::collapse_elongation(chunk);
    if (tok.elongated) {
      detail::collapse_elongation(doubled, 2);
      tok.doubled = std::move(doubled);
    }
    tok.text = std::move(chunk);
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

struct SentimentScore {
  int positive = 1;
  int negative = 1;

  friend bool operator==(const SentimentScore&, const SentimentScore&) = default;
};

struct Polarity {
  int value = 0;

  friend bool operator==(const Polarity&, const Polarity&) = default;
};

inline constexpr int kNegationWindow = 2;
inline constexpr int kNegatedOppositeCap = 3;

namespace detail {

// Entry for the single-collapsed form, falling back to the double-collapsed one.
template <typename Map>
auto find_token(const Map& m, const Token& tok) {
  auto it = m.find(tok.text);
  if (it == m.end() && tok.elongated) it = m.find(tok.doubled);
  return it;
}

}  // namespace detail

inline SentimentScore score(const Lexicon& lexicon, const std::vector<Token>& tokens) {
  SentimentScore out;
  auto contribute = [&](bool to_positive, int magnitude) {
    magnitude = std::clamp(magnitude, 2, 5);
    int& side = to_positive ? out.positive : out.negative;
    side = std::max(side, magnitude);
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    if (auto emo = detail::find_token(lexicon.emoticons, tok); emo != lexicon.emoticons.end()) {
      contribute(emo->second > 0, std::abs(emo->second) + (tok.elongated ? 1 : 0));
      continue;
    }
    auto hit = detail::find_token(lexicon.sentiment_terms, tok);
    if (hit == lexicon.sentiment_terms.end()) continue;

    const int base = hit->second;
    const bool positive = base > 0;
    int magnitude = std::abs(base);
    if (tok.elongated) magnitude += 1;
    if (i >= 1) {
      if (auto b = detail::find_token(lexicon.booster_terms, tokens[i - 1]); b != lexicon.booster_terms.end())
        magnitude += b->second;
    }
    bool negated = false;
    for (int back = 1; back <= kNegationWindow && static_cast<std::size_t>(back) <= i; ++back)
      if (detail::find_token(lexicon.negation_terms, tokens[i - back]) != lexicon.negation_terms.end())
        negated = true;

    if (negated) {
      // The own side receives strength 1, which never beats the default.
      contribute(!positive, std::min(std::abs(base), kNegatedOppositeCap));
    } else {
      contribute(positive, magnitude);
    }
  }
  return out;
}

inline SentimentScore score(const Lexicon& lexicon, std::string_view text) {
  return score(lexicon, tokenize(text));
}

constexpr Polarity polarity(SentimentScore s) { return {s.positive - s.negative}; }

constexpr EmotionClass classify(Polarity p) {
  if (p.value <= -1) return EmotionClass::Negative;
  if (p.value >= 1) return EmotionClass::Positive;
  return EmotionClass::Neutral;
}

inline EmotionClass classify_text(const Lexicon& lexicon, std::string_view text) {
  return classify(polarity(score(lexicon, text)));
}

}  // namespace contagionlab
