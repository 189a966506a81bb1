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

// guwen: command-line front end for the text-mining pipeline.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "guwen/corpus.hpp"
#include "guwen/depparse/conllu.hpp"
#include "guwen/depparse/parser.hpp"
#include "guwen/error.hpp"
#include "guwen/keywords.hpp"
#include "guwen/pipeline.hpp"
#include "guwen/seqlabel/generative.hpp"
#include "guwen/seqlabel/linear.hpp"
#include "guwen/seqlabel/model_io.hpp"
#include "guwen/tagging/features.hpp"
#include "guwen/tagging/formats.hpp"
#include "guwen/textio.hpp"

namespace {

namespace fs = std::filesystem;
namespace pl = guwen::pipeline;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitModel = 3;

constexpr const char* kCorpusItemsNote =
    "Corpus items: the number of entity spans (B-... tag plus its I-... "
    "continuation) tagged in a document.";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string config;
  std::vector<std::string> inputs;
  std::string out;
  std::size_t top_k = pl::kDefaultTopK;
  std::uint64_t seed = 1;
  std::string model_seg;
  std::string model_ner;
  std::string model_parser;
  std::string format = "conllu";
};

struct TrainSettings {
  std::string data;
  std::string out;
  std::string model_type = "generative";
  double smoothing = 0.1;
  int epochs = -1;
  double learning_rate = -1.0;
  double l2 = -1.0;
  std::uint64_t seed = 1;
  double dropout = 0.5;
  std::size_t batch_size = 32;
  std::size_t embedding_dim = 50;
  std::size_t hidden = 200;
  double target_uas = 0.0;
};

// ---------------------------------------------------------------------------
// Config

/// Fills unset settings from a JSON config. Relative paths are resolved
/// against the config file's directory.
void apply_config(Settings& s, const CLI::App& cmd) {
  if (s.config.empty()) return;
  std::ifstream in(s.config, std::ios::binary);
  if (!in) throw UsageError("cannot read config " + s.config);
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + s.config + ": " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  const fs::path base = fs::path(s.config).parent_path();
  const auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return (path.is_absolute() ? path : base / path).lexically_normal().string();
  };
  const auto unset = [&](const char* flag) {
    const CLI::Option* opt = cmd.get_option_no_throw(flag);
    return opt == nullptr || opt->count() == 0;
  };
  try {
    for (const auto& [key, value] : cfg.items()) {
      if (key == "corpus") {
        if (s.inputs.empty()) {
          for (const auto& p : value) s.inputs.push_back(resolve(p.get<std::string>()));
        }
      } else if (key == "out") {
        if (unset("--out")) s.out = resolve(value.get<std::string>());
      } else if (key == "top_k") {
        if (unset("--top-k")) {
          const auto k = value.get<long long>();
          if (k < 1) throw UsageError("top_k must be >= 1");
          s.top_k = static_cast<std::size_t>(k);
        }
      } else if (key == "seed") {
        if (unset("--seed")) s.seed = value.get<std::uint64_t>();
      } else if (key == "model_seg") {
        if (unset("--model-seg")) s.model_seg = resolve(value.get<std::string>());
      } else if (key == "model_ner") {
        if (unset("--model-ner")) s.model_ner = resolve(value.get<std::string>());
      } else if (key == "model_parser") {
        if (unset("--model-parser")) {
          s.model_parser = resolve(value.get<std::string>());
        }
      } else {
        throw UsageError("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + s.config + ": " + e.what());
  }
}

void require_inputs(const Settings& s) {
  if (s.inputs.empty()) throw UsageError("no input files");
}

std::string require_model(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing ") + flag);
  return path;
}

// ---------------------------------------------------------------------------
// Output

class Sink {
 public:
  explicit Sink(std::string out) : out_(std::move(out)) {}

  bool to_stdout() const { return out_.empty(); }

  void write(const std::string& id, std::string_view file,
             const std::string& contents) {
    if (to_stdout()) {
      std::cout << contents;
      return;
    }
    guwen::textio::write_file(fs::path(out_) / id / file, contents);
  }

 private:
  std::string out_;
};

std::vector<guwen::Document> load_documents(const Settings& s) {
  std::vector<fs::path> paths(s.inputs.begin(), s.inputs.end());
  return guwen::load_corpus(paths);
}

template <typename T, typename Read>
std::vector<std::pair<std::string, T>> load_stage_files(const Settings& s,
                                                        Read read) {
  std::vector<std::pair<std::string, T>> out;
  std::set<std::string> seen;
  for (const auto& input : s.inputs) {
    const fs::path path(input);
    const std::string id = pl::document_id(path);
    if (!seen.insert(id).second) {
      throw guwen::DataError("conflict: duplicate document id '" + id +
                             "' from " + input);
    }
    out.emplace_back(id, read(path));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_normalize(const Settings& s) {
  require_inputs(s);
  Sink sink(s.out);
  for (const auto& doc : load_documents(s)) {
    sink.write(doc.id, pl::kNormalizedFile, pl::render_normalized(doc));
  }
}

void cmd_segment(const Settings& s) {
  require_inputs(s);
  const auto model =
      pl::load_chain_model_file(require_model(s.model_seg, "--model-seg"),
                                "segmentation");
  Sink sink(s.out);
  for (const auto& doc : load_documents(s)) {
    sink.write(doc.id, pl::kSegmentedFile,
               pl::render_segmented(pl::segment_document(model, doc)));
  }
}

void cmd_ner(const Settings& s) {
  require_inputs(s);
  const auto model = pl::load_ner_model(require_model(s.model_ner, "--model-ner"));
  Sink sink(s.out);
  const auto docs =
      load_stage_files<pl::Segmented>(s, pl::read_segmented_file);
  for (const auto& [id, sentences] : docs) {
    sink.write(id, pl::kEntitiesFile,
               pl::render_entities(pl::tag_document(model, sentences)));
  }
}

void write_keywords(Sink& sink, std::span<const guwen::keywords::DocumentStats> stats,
                    std::size_t top_k) {
  const auto files = pl::render_keywords(stats, top_k);
  for (std::size_t k = 0; k < stats.size(); ++k) {
    if (sink.to_stdout()) {
      std::cout << "# " << stats[k].id << " frequency\n" << files[k].frequency;
      std::cout << "# " << stats[k].id << " importance\n" << files[k].importance;
      continue;
    }
    sink.write(stats[k].id, pl::kFrequencyFile, files[k].frequency);
    sink.write(stats[k].id, pl::kImportanceFile, files[k].importance);
    sink.write(stats[k].id, pl::kWordCloudFile, files[k].wordcloud);
  }
}

void cmd_keywords(const Settings& s) {
  require_inputs(s);
  if (s.top_k < 1) throw UsageError("--top-k must be >= 1");
  std::vector<guwen::keywords::DocumentStats> stats;
  for (auto& [id, sentences] :
       load_stage_files<pl::Segmented>(s, pl::read_segmented_file)) {
    stats.push_back(guwen::keywords::count_terms(id, sentences));
  }
  Sink sink(s.out);
  write_keywords(sink, stats, s.top_k);
}

void cmd_parse(const Settings& s) {
  require_inputs(s);
  const auto model =
      pl::load_parser_file(require_model(s.model_parser, "--model-parser"));
  Sink sink(s.out);
  const auto docs = load_stage_files<std::vector<guwen::tagging::TaggedWords>>(
      s, pl::read_entities_file);
  for (const auto& [id, tagged] : docs) {
    const auto parsed = pl::parse_document(model, tagged);
    if (sink.to_stdout()) {
      if (s.format == "dot") {
        std::cout << pl::render_dot(parsed);
      } else if (s.format == "ascii") {
        std::cout << pl::render_ascii(parsed);
      } else {
        std::cout << pl::render_conllu(parsed);
      }
      continue;
    }
    sink.write(id, pl::kConlluFile, pl::render_conllu(parsed));
    sink.write(id, pl::kDotFile, pl::render_dot(parsed));
  }
}

void cmd_pipeline(const Settings& s) {
  require_inputs(s);
  if (s.out.empty()) throw UsageError("pipeline needs --out");
  if (s.top_k < 1) throw UsageError("--top-k must be >= 1");
  const auto seg = pl::load_chain_model_file(
      require_model(s.model_seg, "--model-seg"), "segmentation");
  const auto ner = pl::load_ner_model(require_model(s.model_ner, "--model-ner"));
  const auto parser =
      pl::load_parser_file(require_model(s.model_parser, "--model-parser"));
  const auto docs = load_documents(s);

  Sink sink(s.out);
  std::vector<guwen::keywords::DocumentStats> stats;
  std::vector<pl::Summary> summaries;
  for (const auto& doc : docs) {
    const pl::Segmented words = pl::segment_document(seg, doc);
    const auto tagged = pl::tag_document(ner, words);
    const auto parsed = pl::parse_document(parser, tagged);
    sink.write(doc.id, pl::kSegmentedFile, pl::render_segmented(words));
    sink.write(doc.id, pl::kEntitiesFile, pl::render_entities(tagged));
    sink.write(doc.id, pl::kConlluFile, pl::render_conllu(parsed));
    sink.write(doc.id, pl::kDotFile, pl::render_dot(parsed));
    stats.push_back(guwen::keywords::count_terms(doc.id, words));

    pl::Summary summary;
    summary.id = doc.id;
    summary.sentences = words.size();
    for (const auto& w : words) summary.words += w.size();
    summary.corpus_items = pl::corpus_items(tagged);
    summaries.push_back(summary);
  }
  write_keywords(sink, stats, s.top_k);
  for (const auto& summary : summaries) {
    sink.write(summary.id, pl::kSummaryFile, pl::render_summary(summary));
    std::cout << "doc " << summary.id << ": " << summary.corpus_items
              << " corpus items\n";
  }
}

// ---------------------------------------------------------------------------
// Training

void save_chain(const std::string& path, const guwen::seqlabel::ChainModel& m) {
  guwen::textio::write_file(path, guwen::seqlabel::to_string(m));
}

double final_linear_loss(const guwen::seqlabel::LinearChainModel& model,
                         const guwen::seqlabel::FeatureTemplateSet& templates,
                         std::span<const guwen::seqlabel::LabeledSequence> data,
                         const guwen::seqlabel::TrainReport& report, double l2) {
  if (!report.epoch_loss.empty()) return report.epoch_loss.back();
  return guwen::seqlabel::nll_and_gradient(model, templates, data, l2).loss;
}

guwen::seqlabel::LinearTrainOptions linear_options(const TrainSettings& t) {
  guwen::seqlabel::LinearTrainOptions o;
  if (t.epochs >= 0) o.epochs = t.epochs;
  if (t.learning_rate >= 0.0) o.learning_rate = t.learning_rate;
  if (t.l2 >= 0.0) o.l2 = t.l2;
  o.seed = t.seed;
  return o;
}

void print_loss(double loss) {
  std::cout << "final loss " << guwen::textio::format_g(loss, 9) << '\n';
}

void train_seg(const TrainSettings& t) {
  std::istringstream in(guwen::textio::read_file(t.data));
  std::vector<guwen::seqlabel::LabeledSequence> data;
  for (const auto& words : guwen::tagging::read_segmented(in)) {
    data.push_back(guwen::tagging::to_bmes_sequence(words));
  }
  const auto tags = guwen::tagging::bmes_tagset();
  if (t.model_type == "generative") {
    const auto model = guwen::seqlabel::train_generative(tags, data, t.smoothing);
    double nll = 0.0;
    for (const auto& seq : data) {
      const auto ids = tags.ids(seq.labels);
      nll -= model.lattice(seq.observations).score(ids);
    }
    save_chain(t.out, model);
    std::cout << "trained generative segmenter on " << data.size()
              << " sentences\n";
    print_loss(nll / static_cast<double>(data.size()));
    return;
  }
  if (t.model_type != "linear") {
    throw UsageError("--model-type must be generative or linear");
  }
  const auto templates = guwen::tagging::window_templates();
  const auto options = linear_options(t);
  guwen::seqlabel::TrainReport report;
  const auto model =
      guwen::seqlabel::train_linear(tags, templates, data, options, &report);
  save_chain(t.out, model);
  std::cout << "trained linear-chain segmenter on " << data.size()
            << " sentences\n";
  print_loss(final_linear_loss(model, templates, data, report, options.l2));
}

void train_ner(const TrainSettings& t) {
  std::istringstream in(guwen::textio::read_file(t.data));
  const auto tagged = guwen::tagging::read_tagged(in);
  std::vector<guwen::seqlabel::LabeledSequence> data;
  for (const auto& s : tagged) data.push_back(guwen::tagging::to_iob_sequence(s));
  const auto tags =
      guwen::tagging::iob_tagset(guwen::tagging::categories_of(tagged));
  const auto templates = guwen::tagging::window_templates();
  const auto options = linear_options(t);
  guwen::seqlabel::TrainReport report;
  const auto model =
      guwen::seqlabel::train_linear(tags, templates, data, options, &report);
  save_chain(t.out, model);
  std::cout << "trained entity tagger on " << data.size() << " sentences\n";
  print_loss(final_linear_loss(model, templates, data, report, options.l2));
}

void train_parser_cmd(const TrainSettings& t) {
  std::istringstream in(guwen::textio::read_file(t.data));
  const auto treebank = guwen::depparse::read_conllu(in);
  guwen::depparse::ParserTrainOptions o;
  if (t.epochs >= 0) o.epochs = t.epochs;
  if (t.learning_rate >= 0.0) o.learning_rate = t.learning_rate;
  if (t.l2 >= 0.0) o.l2 = t.l2;
  o.dropout = t.dropout;
  o.batch_size = t.batch_size;
  o.embedding_dim = t.embedding_dim;
  o.hidden = t.hidden;
  o.seed = t.seed;
  guwen::depparse::EpochCallback stop;
  if (t.target_uas > 0.0) {
    stop = [&](int, const guwen::depparse::ParserModel& m) {
      return guwen::depparse::evaluate(m, treebank).uas < t.target_uas;
    };
  }
  guwen::depparse::ParserTrainReport report;
  const auto model = guwen::depparse::train_parser(treebank, o, &report, stop);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  guwen::textio::write_file(t.out, guwen::depparse::to_string(model));
  const auto scores = guwen::depparse::evaluate(model, treebank);
  std::cout << "trained parser on " << treebank.size() - report.skipped
            << " trees, " << report.epochs_run << " epochs\n";
  if (report.epoch_loss.empty()) {
    std::cout << "final loss n/a\n";
  } else {
    print_loss(report.epoch_loss.back());
  }
  std::cout << "training UAS " << guwen::textio::format_g(scores.uas, 9)
            << "\ntraining LAS " << guwen::textio::format_g(scores.las, 9)
            << '\n';
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* cmd, Settings& s, bool inputs_required) {
  cmd->add_option("--config", s.config, "JSON config; flags override it");
  auto* in = cmd->add_option("inputs", s.inputs, "Input files");
  if (inputs_required) in->required();
  cmd->add_option("--out,-o", s.out,
                  "Output directory (one subdirectory per document); "
                  "stdout when omitted");
  cmd->add_option("--seed", s.seed, "Random seed");
}

int run(int argc, char** argv) {
  CLI::App app{"guwen: classical-Chinese text mining (segmentation, entity "
               "tagging, keywords, dependency parsing)"};
  app.require_subcommand(1);
  app.footer(kCorpusItemsNote);

  Settings s;
  TrainSettings t;

  auto* normalize = app.add_subcommand(
      "normalize", "Remove spaces and blank lines; writes normalized.txt");
  add_common(normalize, s, true);

  auto* segment = app.add_subcommand(
      "segment", "Segment corpus files into words; writes segmented.txt");
  add_common(segment, s, true);
  segment->add_option("--model-seg", s.model_seg, "Segmentation model");

  auto* ner = app.add_subcommand(
      "ner", "Tag entities in segmented.txt files; writes entities.txt");
  add_common(ner, s, true);
  ner->add_option("--model-ner", s.model_ner, "Entity model");

  auto* kw = app.add_subcommand(
      "keywords",
      "Frequency and tf-idf tables from segmented.txt files; writes "
      "frequency.tsv, importance.tsv, wordcloud.json");
  add_common(kw, s, true);
  kw->add_option("--top-k", s.top_k, "Rows per table (default 20)");

  auto* parse = app.add_subcommand(
      "parse", "Parse entities.txt files; writes trees.conllu and trees.dot");
  add_common(parse, s, true);
  parse->add_option("--model-parser", s.model_parser, "Parser model");
  parse->add_option("--format", s.format, "Stdout format")
      ->check(CLI::IsMember({"conllu", "dot", "ascii"}));

  auto* pipeline = app.add_subcommand(
      "pipeline",
      "Run every stage on corpus files and write all outputs plus "
      "summary.txt; prints 'doc <id>: <n> corpus items'");
  pipeline->footer(kCorpusItemsNote);
  add_common(pipeline, s, false);
  pipeline->add_option("--top-k", s.top_k, "Rows per table (default 20)");
  pipeline->add_option("--model-seg", s.model_seg, "Segmentation model");
  pipeline->add_option("--model-ner", s.model_ner, "Entity model");
  pipeline->add_option("--model-parser", s.model_parser, "Parser model");

  auto* train = app.add_subcommand("train", "Train a model");
  train->require_subcommand(1);
  const auto add_train = [&](const char* name, const char* help) {
    auto* cmd = train->add_subcommand(name, help);
    cmd->add_option("--data", t.data, "Training data")->required();
    cmd->add_option("--out,-o", t.out, "Model file to write")->required();
    cmd->add_option("--seed", t.seed, "Random seed");
    cmd->add_option("--epochs", t.epochs, "Training epochs");
    cmd->add_option("--learning-rate", t.learning_rate, "Initial step size");
    cmd->add_option("--l2", t.l2, "L2 penalty");
    return cmd;
  };
  auto* train_seg_cmd =
      add_train("seg", "Segmenter from space-separated words per line");
  train_seg_cmd->add_option("--model-type", t.model_type,
                            "generative (default) or linear")
      ->check(CLI::IsMember({"generative", "linear"}));
  train_seg_cmd->add_option("--smoothing", t.smoothing,
                            "Add-alpha smoothing (generative)");
  auto* train_ner_cmd = add_train("ner", "Entity tagger from word/TAG lines");
  auto* train_parser_sub = add_train("parser", "Parser from CoNLL-U trees");
  train_parser_sub->add_option("--dropout", t.dropout, "Hidden dropout rate");
  train_parser_sub->add_option("--batch-size", t.batch_size, "Minibatch size");
  train_parser_sub->add_option("--embedding-dim", t.embedding_dim,
                               "Embedding size");
  train_parser_sub->add_option("--hidden", t.hidden, "Hidden units");
  train_parser_sub->add_option("--target-uas", t.target_uas,
                               "Stop once training UAS reaches this value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (auto* cmd : {normalize, segment, ner, kw, parse, pipeline}) {
      if (cmd->parsed()) apply_config(s, *cmd);
    }
    if (normalize->parsed()) cmd_normalize(s);
    if (segment->parsed()) cmd_segment(s);
    if (ner->parsed()) cmd_ner(s);
    if (kw->parsed()) cmd_keywords(s);
    if (parse->parsed()) cmd_parse(s);
    if (pipeline->parsed()) cmd_pipeline(s);
    if (train_seg_cmd->parsed()) train_seg(t);
    if (train_ner_cmd->parsed()) train_ner(t);
    if (train_parser_sub->parsed()) train_parser_cmd(t);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const guwen::ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kExitModel;
  } catch (const guwen::Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
  std::cout.flush();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
