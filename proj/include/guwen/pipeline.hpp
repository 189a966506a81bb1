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

// End-to-end document processing: segmentation, entity tagging, keyword
// tables, dependency parsing, and the files each stage writes.
//
// Every stage reads and writes one file per document inside a directory
// named after the document id, so running the stages one by one produces
// the same bytes as running the whole pipeline:
//
//   <id>/normalized.txt  title line, then the normalized body
//   <id>/segmented.txt   words, one sentence per line
//   <id>/entities.txt    word/TAG tokens, one sentence per line
//   <id>/frequency.tsv   top-k by word frequency
//   <id>/importance.tsv  top-k by tf-idf
//   <id>/wordcloud.json  cloud weights from the importance table
//   <id>/trees.conllu    one dependency tree per sentence
//   <id>/trees.dot       the same trees as DOT digraphs
//   <id>/summary.txt     counts, including corpus items

#ifndef GUWEN_PIPELINE_HPP_
#define GUWEN_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "guwen/corpus.hpp"
#include "guwen/depparse/conllu.hpp"
#include "guwen/depparse/parser.hpp"
#include "guwen/emit.hpp"
#include "guwen/error.hpp"
#include "guwen/keywords.hpp"
#include "guwen/seqlabel/model_io.hpp"
#include "guwen/tagging/formats.hpp"
#include "guwen/tagging/segmenter.hpp"
#include "guwen/textio.hpp"

namespace guwen::pipeline {

inline constexpr std::string_view kNormalizedFile = "normalized.txt";
inline constexpr std::string_view kSegmentedFile = "segmented.txt";
inline constexpr std::string_view kEntitiesFile = "entities.txt";
inline constexpr std::string_view kFrequencyFile = "frequency.tsv";
inline constexpr std::string_view kImportanceFile = "importance.tsv";
inline constexpr std::string_view kWordCloudFile = "wordcloud.json";
inline constexpr std::string_view kConlluFile = "trees.conllu";
inline constexpr std::string_view kDotFile = "trees.dot";
inline constexpr std::string_view kSummaryFile = "summary.txt";

/// Default table length: the twenty rows of a frequency/importance table.
inline constexpr std::size_t kDefaultTopK = 20;

using Segmented = std::vector<std::vector<std::string>>;

// ---------------------------------------------------------------------------
// Model loading

inline seqlabel::ChainModel load_chain_model_file(
    const std::filesystem::path& path, std::string_view role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ModelError("missing " + std::string(role) + " model: " +
                     path.string());
  }
  try {
    return seqlabel::load_chain_model(in);
  } catch (const Error& e) {
    throw ModelError(std::string(role) + " model " + path.string() + ": " +
                     e.what());
  }
}

inline seqlabel::LinearChainModel load_ner_model(
    const std::filesystem::path& path) {
  auto model = load_chain_model_file(path, "entity");
  auto* linear = std::get_if<seqlabel::LinearChainModel>(&model);
  if (linear == nullptr) {
    throw ModelError("entity model " + path.string() +
                     " must be a linear-chain model");
  }
  tagging::iob_categories(linear->tags());
  return std::move(*linear);
}

inline depparse::ParserModel load_parser_file(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("missing parser model: " + path.string());
  try {
    return depparse::load_parser(in);
  } catch (const Error& e) {
    throw ModelError("parser model " + path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Stages

inline Segmented segment_document(const seqlabel::ChainModel& model,
                                  const Document& doc) {
  Segmented out;
  for (const Sentence& s : doc.sentences) {
    out.push_back(tagging::segment(model, s));
  }
  return out;
}

inline std::vector<tagging::TaggedWords> tag_document(
    const seqlabel::LinearChainModel& model, const Segmented& sentences) {
  std::vector<tagging::TaggedWords> out;
  for (const auto& words : sentences) {
    out.push_back({words, tagging::tag_entities(model, words)});
  }
  return out;
}

/// Corpus items of a document: the number of entity spans found in it.
inline std::size_t corpus_items(std::span<const tagging::TaggedWords> tagged) {
  std::size_t n = 0;
  for (const auto& s : tagged) {
    n += tagging::iob_to_spans(s.words, s.tags).spans.size();
  }
  return n;
}

/// Parser tags come from the entity categories; O becomes OTHER.
inline depparse::TaggedSentence parser_input(const tagging::TaggedWords& s) {
  depparse::TaggedSentence out;
  out.words = s.words;
  for (const auto& t : s.tags) {
    out.pos.push_back(t.kind == tagging::IobTag::Kind::kO ? "OTHER"
                                                          : t.category);
  }
  return out;
}

struct ParsedSentence {
  depparse::TaggedSentence sentence;
  depparse::DependencyTree tree;
};

inline std::vector<ParsedSentence> parse_document(
    const depparse::ParserModel& model,
    std::span<const tagging::TaggedWords> tagged) {
  std::vector<ParsedSentence> out;
  for (const auto& s : tagged) {
    if (s.words.empty()) continue;
    auto input = parser_input(s);
    auto tree = depparse::greedy_parse(model, input);
    out.push_back({std::move(input), std::move(tree)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Renderers

inline std::string render_normalized(const Document& doc) {
  std::string out = doc.title + "\n" + doc.body();
  if (!doc.sentences.empty()) out += '\n';
  return out;
}

inline std::string render_segmented(const Segmented& sentences) {
  std::string out;
  for (const auto& words : sentences) {
    out += tagging::format_segmented(words);
    out += '\n';
  }
  return out;
}

inline std::string render_entities(
    std::span<const tagging::TaggedWords> tagged) {
  std::string out;
  for (const auto& s : tagged) {
    out += tagging::format_tagged(s.words, s.tags);
    out += '\n';
  }
  return out;
}

inline std::string render_conllu(std::span<const ParsedSentence> parsed) {
  std::string out;
  for (const auto& p : parsed) out += depparse::to_conllu(p.tree, p.sentence);
  return out;
}

inline std::string render_dot(std::span<const ParsedSentence> parsed) {
  std::string out;
  for (std::size_t k = 0; k < parsed.size(); ++k) {
    out += emit::tree_to_dot(parsed[k].tree, parsed[k].sentence.words,
                             "s" + std::to_string(k + 1));
  }
  return out;
}

inline std::string render_ascii(std::span<const ParsedSentence> parsed) {
  std::string out;
  for (const auto& p : parsed) {
    out += emit::tree_to_ascii(p.tree, p.sentence.words);
    out += "\n\n";
  }
  return out;
}

struct KeywordFiles {
  std::string frequency;
  std::string importance;
  std::string wordcloud;
};

/// Frequency and importance tables plus cloud weights for every document
/// of a corpus, in input order.
inline std::vector<KeywordFiles> render_keywords(
    std::span<const keywords::DocumentStats> docs, std::size_t top_k) {
  const keywords::CorpusStats corpus = keywords::corpus_stats(docs);
  std::vector<KeywordFiles> out;
  for (const auto& doc : docs) {
    KeywordFiles files;
    if (doc.total == 0) {
      files.frequency = files.importance = keywords::to_tsv({});
      files.wordcloud = emit::wordcloud_json({}) + "\n";
      out.push_back(std::move(files));
      continue;
    }
    const auto by_freq =
        keywords::keyword_table(doc, corpus, top_k, keywords::SortBy::kFrequency);
    const auto by_imp = keywords::keyword_table(doc, corpus, top_k,
                                                keywords::SortBy::kImportance);
    files.frequency = keywords::to_tsv(by_freq);
    files.importance = keywords::to_tsv(by_imp);
    files.wordcloud = emit::wordcloud_json(emit::wordcloud_data(by_imp)) + "\n";
    out.push_back(std::move(files));
  }
  return out;
}

struct Summary {
  std::string id;
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t corpus_items = 0;
};

inline std::string render_summary(const Summary& s) {
  return "id\t" + s.id + "\nsentences\t" + std::to_string(s.sentences) +
         "\nwords\t" + std::to_string(s.words) + "\ncorpus_items\t" +
         std::to_string(s.corpus_items) + "\n";
}

// ---------------------------------------------------------------------------
// Stage file readers

/// Document id of a stage file: the directory name for the canonical file
/// names above, the file stem otherwise.
inline std::string document_id(const std::filesystem::path& path) {
  const std::string name = path.filename().string();
  if (name == kNormalizedFile || name == kSegmentedFile ||
      name == kEntitiesFile) {
    const auto parent = path.parent_path().filename().string();
    if (!parent.empty() && parent != "." && parent != "..") return parent;
  }
  return path.stem().string();
}

inline Segmented read_segmented_file(const std::filesystem::path& path) {
  std::istringstream in(textio::read_file(path));
  try {
    return tagging::read_segmented(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

inline std::vector<tagging::TaggedWords> read_entities_file(
    const std::filesystem::path& path) {
  std::istringstream in(textio::read_file(path));
  try {
    return tagging::read_tagged(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace guwen::pipeline

#endif  // GUWEN_PIPELINE_HPP_
