#pragma once

// Test-only oracle: expands the command grammar directly from its production
// rules, independent of the library's enumeration path.
//
//   ROOT -> VP
//   VP   -> VP RB | VV_i 'to' DP | VV_t DP
//   DP   -> det NP
//   NP   -> JJ NP | NN
//
// The RB recursion is applied at most once and the JJ recursion at most
// twice; expansions whose adjectives repeat a category (two sizes or two
// colors) are filtered out, mirroring the sentences the artifact emits.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace cfg_oracle {

struct Terminals {
  std::vector<std::string> intransitive_verbs{"walk"};
  std::vector<std::string> transitive_verbs{"push", "pull"};
  std::vector<std::vector<std::string>> adverbs{
      {"while", "spinning"}, {"while", "zigzagging"}, {"hesitantly"}, {"cautiously"}};
  std::vector<std::string> nouns{"circle", "square", "cylinder"};
  std::vector<std::string> size_adjectives{"small", "big"};
  std::vector<std::string> color_adjectives{"red", "green", "blue", "yellow"};
  std::string determiner = "the";
};

using Sentence = std::vector<std::string>;

inline std::set<Sentence> expand(const Terminals& t, int max_adjectives = 2,
                                 int max_adverbs = 1) {
  // NP: 0..max_adjectives adjectives followed by a noun.
  std::vector<Sentence> noun_phrases;
  std::vector<Sentence> prefixes{{}};
  for (int depth = 0; depth <= max_adjectives; ++depth) {
    std::vector<Sentence> next;
    for (const Sentence& prefix : prefixes) {
      for (const std::string& noun : t.nouns) {
        Sentence np = prefix;
        np.push_back(noun);
        noun_phrases.push_back(np);
      }
      if (depth == max_adjectives) continue;
      for (const std::string& adj : t.size_adjectives) {
        Sentence ext = prefix;
        ext.push_back(adj);
        next.push_back(ext);
      }
      for (const std::string& adj : t.color_adjectives) {
        Sentence ext = prefix;
        ext.push_back(adj);
        next.push_back(ext);
      }
    }
    prefixes = std::move(next);
  }

  auto category_count = [&](const Sentence& np, const std::vector<std::string>& category) {
    int n = 0;
    for (const std::string& token : np)
      if (std::find(category.begin(), category.end(), token) != category.end()) ++n;
    return n;
  };

  std::vector<Sentence> determiner_phrases;
  for (const Sentence& np : noun_phrases) {
    if (category_count(np, t.size_adjectives) > 1) continue;
    if (category_count(np, t.color_adjectives) > 1) continue;
    Sentence dp{t.determiner};
    dp.insert(dp.end(), np.begin(), np.end());
    determiner_phrases.push_back(dp);
  }

  std::vector<Sentence> verb_phrases;
  for (const Sentence& dp : determiner_phrases) {
    for (const std::string& verb : t.intransitive_verbs) {
      Sentence vp{verb, "to"};
      vp.insert(vp.end(), dp.begin(), dp.end());
      verb_phrases.push_back(vp);
    }
    for (const std::string& verb : t.transitive_verbs) {
      Sentence vp{verb};
      vp.insert(vp.end(), dp.begin(), dp.end());
      verb_phrases.push_back(vp);
    }
  }

  std::set<Sentence> sentences;
  for (const Sentence& vp : verb_phrases) {
    sentences.insert(vp);
    if (max_adverbs < 1) continue;
    for (const Sentence& rb : t.adverbs) {
      Sentence extended = vp;
      extended.insert(extended.end(), rb.begin(), rb.end());
      sentences.insert(extended);
    }
  }
  return sentences;
}

}  // namespace cfg_oracle
