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

// Text persistence for chain models.
//
//   guwen-linear-chain 1          guwen-generative-chain 1
//   templates <id>                tags <T>
//   tags <T>                      <tag>...
//   <tag>...                      symbols <V>
//   features <M>                  <symbol>...
//   <weight>\t<name>...           initial / transition rows / emission rows
//
// Names and symbols are backslash-escaped; numbers use 17 significant
// digits so a reloaded model decodes identically.

#ifndef GUWEN_SEQLABEL_MODEL_IO_HPP_
#define GUWEN_SEQLABEL_MODEL_IO_HPP_

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "guwen/error.hpp"
#include "guwen/seqlabel/generative.hpp"
#include "guwen/seqlabel/linear.hpp"
#include "guwen/textio.hpp"

namespace guwen::seqlabel {

inline constexpr std::string_view kLinearMagic = "guwen-linear-chain";
inline constexpr std::string_view kGenerativeMagic = "guwen-generative-chain";
inline constexpr int kChainFormatVersion = 1;

using ChainModel = std::variant<GenerativeChainModel, LinearChainModel>;

namespace detail {

inline void write_tags(std::ostream& out, const TagSet& tags) {
  out << "tags " << tags.size() << '\n';
  for (const auto& name : tags.names()) out << textio::escape(name) << '\n';
}

inline TagSet read_tags(textio::LineReader& in) {
  const std::size_t n = in.count("tags");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) {
    names.push_back(textio::unescape(in.next()));
  }
  try {
    return TagSet(std::move(names));
  } catch (const DataError& e) {
    throw ModelError(e.what());
  }
}

}  // namespace detail

inline void save(std::ostream& out, const LinearChainModel& model) {
  out << kLinearMagic << ' ' << kChainFormatVersion << '\n';
  out << "templates " << model.templates_id() << '\n';
  detail::write_tags(out, model.tags());
  out << "features " << model.num_features() << '\n';
  for (std::size_t k = 0; k < model.num_features(); ++k) {
    out << textio::format_exact(model.weights()[k]) << '\t'
        << textio::escape(model.feature_names()[k]) << '\n';
  }
}

inline void save(std::ostream& out, const GenerativeChainModel& model) {
  const std::size_t t = model.tags().size();
  const std::size_t width = model.symbols().size() + 1;
  out << kGenerativeMagic << ' ' << kChainFormatVersion << '\n';
  detail::write_tags(out, model.tags());
  out << "symbols " << model.symbols().size() << '\n';
  for (const auto& s : model.symbols()) out << textio::escape(s) << '\n';
  out << "initial\n"
      << textio::join_numbers(model.initial_table().data(), t) << '\n';
  out << "transition\n";
  for (std::size_t p = 0; p < t; ++p) {
    out << textio::join_numbers(model.transition_table().data() + p * t, t)
        << '\n';
  }
  out << "emission\n";
  for (std::size_t p = 0; p < t; ++p) {
    out << textio::join_numbers(model.emission_table().data() + p * width,
                                width)
        << '\n';
  }
}

inline void save(std::ostream& out, const ChainModel& model) {
  std::visit([&](const auto& m) { save(out, m); }, model);
}

inline LinearChainModel read_linear_body(textio::LineReader& in) {
  std::string templates = in.field("templates");
  TagSet tags = detail::read_tags(in);
  const std::size_t m = in.count("features");
  std::vector<std::string> names;
  std::vector<double> weights;
  names.reserve(m);
  weights.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::string line = in.next();
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ModelError("malformed feature line " +
                       std::to_string(in.line_no()));
    }
    weights.push_back(textio::parse_double(line.substr(0, tab)));
    names.push_back(textio::unescape(line.substr(tab + 1)));
  }
  return LinearChainModel(std::move(tags), std::move(templates),
                          std::move(names), std::move(weights));
}

inline GenerativeChainModel read_generative_body(textio::LineReader& in) {
  TagSet tags = detail::read_tags(in);
  const std::size_t v = in.count("symbols");
  std::vector<std::string> symbols;
  for (std::size_t k = 0; k < v; ++k) {
    symbols.push_back(textio::unescape(in.next()));
  }
  const std::size_t t = tags.size();
  const auto expect = [&](std::string_view key) {
    if (in.next() != key) {
      throw ModelError("expected '" + std::string(key) + "' at line " +
                       std::to_string(in.line_no()));
    }
  };
  expect("initial");
  std::vector<double> initial = in.numbers(t);
  expect("transition");
  std::vector<double> transition;
  for (std::size_t p = 0; p < t; ++p) {
    const auto row = in.numbers(t);
    transition.insert(transition.end(), row.begin(), row.end());
  }
  expect("emission");
  std::vector<double> emission;
  for (std::size_t p = 0; p < t; ++p) {
    const auto row = in.numbers(v + 1);
    emission.insert(emission.end(), row.begin(), row.end());
  }
  return GenerativeChainModel(std::move(tags), std::move(symbols),
                              std::move(initial), std::move(transition),
                              std::move(emission));
}

/// Reads either kind of chain model, dispatching on the header line.
inline ChainModel load_chain_model(std::istream& in) {
  textio::LineReader reader(in);
  const std::string header = reader.next();
  const auto version = " " + std::to_string(kChainFormatVersion);
  if (header == std::string(kLinearMagic) + version) {
    return read_linear_body(reader);
  }
  if (header == std::string(kGenerativeMagic) + version) {
    return read_generative_body(reader);
  }
  throw ModelError("not a chain model (header '" + header + "')");
}

inline std::string to_string(const ChainModel& model) {
  std::ostringstream out;
  save(out, model);
  return out.str();
}

}  // namespace guwen::seqlabel

#endif  // GUWEN_SEQLABEL_MODEL_IO_HPP_
