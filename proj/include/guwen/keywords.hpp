// Copyright 2026 The Guwen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Term statistics and TF-IDF keyword ranking.
//
//   tf(t, d)  = count(t, d) / |d|
//   idf(t)    = ln(N / (df(t) + 1))
//   tfidf     = tf * idf
//
// The +1 sits in the denominator only, so a term present in every
// document gets a negative idf. That value is kept as-is.

#ifndef GUWEN_KEYWORDS_HPP_
#define GUWEN_KEYWORDS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "guwen/error.hpp"
#include "guwen/textio.hpp"
#include "guwen/utf8.hpp"

namespace guwen::keywords {

struct DocumentStats {
  std::string id;
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
};

struct CorpusStats {
  std::vector<std::string> ids;
  std::map<std::string, std::size_t> df;
  std::size_t documents = 0;
};

/// Counts every non-punctuation word of the document's sentences.
inline DocumentStats count_terms(
    std::string id, std::span<const std::vector<std::string>> sentences) {
  DocumentStats doc;
  doc.id = std::move(id);
  for (const auto& words : sentences) {
    for (const auto& w : words) {
      if (w.empty() || utf8::is_punctuation_token(w)) continue;
      ++doc.counts[w];
      ++doc.total;
    }
  }
  return doc;
}

inline CorpusStats corpus_stats(std::span<const DocumentStats> docs) {
  CorpusStats corpus;
  corpus.documents = docs.size();
  for (const auto& d : docs) {
    corpus.ids.push_back(d.id);
    for (const auto& [term, count] : d.counts) {
      if (count > 0) ++corpus.df[term];
    }
  }
  return corpus;
}

inline double term_frequency(const std::string& term, const DocumentStats& doc) {
  if (doc.total == 0) {
    throw DataError("document '" + doc.id + "' has no terms");
  }
  const auto it = doc.counts.find(term);
  const std::size_t count = it == doc.counts.end() ? 0 : it->second;
  return static_cast<double>(count) / static_cast<double>(doc.total);
}

inline double inverse_document_frequency(const std::string& term,
                                         const CorpusStats& corpus) {
  if (corpus.documents == 0) throw DataError("empty corpus");
  const auto it = corpus.df.find(term);
  const std::size_t df = it == corpus.df.end() ? 0 : it->second;
  return std::log(static_cast<double>(corpus.documents) /
                  (static_cast<double>(df) + 1.0));
}

inline double tfidf(const std::string& term, const DocumentStats& doc,
                    const CorpusStats& corpus) {
  return term_frequency(term, doc) * inverse_document_frequency(term, corpus);
}

struct KeywordRow {
  std::string term;
  std::size_t frequency = 0;
  double importance = 0.0;

  friend bool operator==(const KeywordRow&, const KeywordRow&) = default;
};

enum class SortBy { kFrequency, kImportance };

/// Top-k rows of `doc` sorted descending by the chosen column; ties go to
/// the term with the smaller codepoint sequence. k larger than the
/// vocabulary returns every term.
inline std::vector<KeywordRow> keyword_table(const DocumentStats& doc,
                                             const CorpusStats& corpus,
                                             std::size_t k, SortBy by) {
  if (k == 0) throw DataError("top-k must be at least 1");
  if (std::find(corpus.ids.begin(), corpus.ids.end(), doc.id) ==
      corpus.ids.end()) {
    throw DataError("document '" + doc.id + "' is not part of the corpus");
  }
  std::vector<KeywordRow> rows;
  rows.reserve(doc.counts.size());
  for (const auto& [term, count] : doc.counts) {
    rows.push_back({term, count, tfidf(term, doc, corpus)});
  }
  const auto before = [by](const KeywordRow& a, const KeywordRow& b) {
    if (by == SortBy::kFrequency) {
      if (a.frequency != b.frequency) return a.frequency > b.frequency;
    } else if (a.importance != b.importance) {
      return a.importance > b.importance;
    }
    return a.term < b.term;
  };
  const std::size_t keep = std::min(k, rows.size());
  std::partial_sort(rows.begin(), rows.begin() + keep, rows.end(), before);
  rows.resize(keep);
  return rows;
}

inline std::vector<std::pair<std::string, std::size_t>> word_frequency_table(
    const DocumentStats& doc, std::size_t k) {
  const CorpusStats self = corpus_stats(std::span(&doc, 1));
  std::vector<std::pair<std::string, std::size_t>> out;
  for (auto& row : keyword_table(doc, self, k, SortBy::kFrequency)) {
    out.emplace_back(std::move(row.term), row.frequency);
  }
  return out;
}

inline std::vector<std::pair<std::string, double>> top_k_keywords(
    const DocumentStats& doc, const CorpusStats& corpus, std::size_t k) {
  std::vector<std::pair<std::string, double>> out;
  for (auto& row : keyword_table(doc, corpus, k, SortBy::kImportance)) {
    out.emplace_back(std::move(row.term), row.importance);
  }
  return out;
}

/// Importances carry 9 significant digits.
inline std::string format_importance(double v) {
  return textio::format_g(v, 9);
}

/// TSV with header `term\tfrequency\timportance`.
inline std::string to_tsv(std::span<const KeywordRow> rows) {
  std::string out = "term\tfrequency\timportance\n";
  for (const auto& r : rows) {
    out += r.term;
    out += '\t';
    out += std::to_string(r.frequency);
    out += '\t';
    out += format_importance(r.importance);
    out += '\n';
  }
  return out;
}

}  // namespace guwen::keywords

#endif  // GUWEN_KEYWORDS_HPP_
