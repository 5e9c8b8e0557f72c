#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "atdist/error.hpp"
#include "atdist/similarity.hpp"

namespace atdist {

/// Label -> vector lookup. Keys are trimmed and lowercased; every vector has
/// the same dimension and a non-zero norm.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw ConfigError("embedding dimension must be positive");
  }

  void add(std::string_view label, std::vector<double> v) {
    const std::string key = normalize_label(label);
    if (key.empty()) throw ConfigError("embedding with empty label");
    if (v.size() != dimension_) {
      throw ConfigError("embedding for \"" + key + "\" has dimension " + std::to_string(v.size()) +
                        ", expected " + std::to_string(dimension_));
    }
    double norm2 = 0.0;
    for (double x : v) {
      if (!std::isfinite(x)) throw ConfigError("embedding for \"" + key + "\" has a non-finite entry");
      norm2 += x * x;
    }
    if (norm2 == 0.0) throw ConfigError("embedding for \"" + key + "\" is the zero vector");
    vectors_[key] = Entry{std::move(v), std::sqrt(norm2)};
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  bool contains(std::string_view label) const { return vectors_.count(normalize_label(label)) != 0; }

  const std::vector<double>* find(std::string_view label) const {
    auto it = vectors_.find(normalize_label(label));
    return it == vectors_.end() ? nullptr : &it->second.v;
  }

  /// Cosine similarity clamped to [0,1], or -1 when either label is missing.
  double cosine(std::string_view a, std::string_view b) const {
    auto ia = vectors_.find(normalize_label(a));
    auto ib = vectors_.find(normalize_label(b));
    if (ia == vectors_.end() || ib == vectors_.end()) return -1.0;
    double dot = 0.0;
    for (std::size_t k = 0; k < dimension_; ++k) dot += ia->second.v[k] * ib->second.v[k];
    return std::clamp(dot / (ia->second.norm * ib->second.norm), 0.0, 1.0);
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : vectors_) out.push_back(k);
    return out;
  }

 private:
  struct Entry {
    std::vector<double> v;
    double norm = 0.0;
  };
  std::size_t dimension_ = 0;
  std::map<std::string, Entry, std::less<>> vectors_;
};

/// {"dimension": d, "embeddings": {"label": [f1, ..., fd], ...}}
inline EmbeddingTable parse_embeddings_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("embedding file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("embeddings") ||
      !doc["dimension"].is_number_unsigned() || !doc["embeddings"].is_object()) {
    throw ConfigError("embedding file: expected {\"dimension\": d, \"embeddings\": {...}}");
  }
  EmbeddingTable table(doc["dimension"].get<std::size_t>());
  for (const auto& [label, vec] : doc["embeddings"].items()) {
    if (!vec.is_array()) throw ConfigError("embedding for \"" + label + "\" is not an array");
    std::vector<double> v;
    for (const auto& x : vec) {
      if (!x.is_number()) throw ConfigError("embedding for \"" + label + "\" has a non-numeric entry");
      v.push_back(x.get<double>());
    }
    table.add(label, std::move(v));
  }
  return table;
}

/// One line per label: label TAB f1 TAB ... TAB fd.
inline EmbeddingTable parse_embeddings_tsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<EmbeddingTable> table;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1) {
      fields.push_back(line.substr(start, tab - start));
    }
    fields.push_back(line.substr(start));
    if (fields.size() < 2) throw ConfigError("embedding TSV line " + std::to_string(lineno) + ": no vector");
    std::vector<double> v;
    for (std::size_t k = 1; k < fields.size(); ++k) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(fields[k], &used));
        if (trim(std::string_view(fields[k]).substr(used)).size() != 0) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ConfigError("embedding TSV line " + std::to_string(lineno) + ": bad number \"" +
                          fields[k] + "\"");
      }
    }
    if (!table) table.emplace(v.size());
    table->add(fields[0], std::move(v));
  }
  if (!table) throw ConfigError("embedding TSV file is empty");
  return std::move(*table);
}

inline EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open embedding file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_embeddings_json(text);
  return parse_embeddings_tsv(text);
}

enum class MissingEmbedding { Error, Zero };

/// Cosine similarity of label embeddings. With MissingEmbedding::Zero an
/// unknown label is 1-similar to itself and 0-similar to everything else.
struct EmbeddingSimilarity {
  std::shared_ptr<const EmbeddingTable> table;
  MissingEmbedding on_missing = MissingEmbedding::Error;
  bool lowercase = true;

  double similarity(std::string_view a, std::string_view b) const {
    if (normalize_label(a, lowercase) == normalize_label(b, lowercase)) return 1.0;
    const double c = table->cosine(a, b);
    if (c >= 0.0) return c;
    if (on_missing == MissingEmbedding::Zero) return 0.0;
    std::vector<std::string> missing;
    if (!table->contains(a)) missing.push_back(normalize_label(a));
    if (!table->contains(b)) missing.push_back(normalize_label(b));
    throw MissingEmbeddingError(std::move(missing));
  }
  std::string name() const { return "embedding"; }
};

/// Labels (normalized) that have no vector in the table, sorted and unique.
inline std::vector<std::string> missing_labels(const EmbeddingTable& table,
                                               const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) {
    if (!table.contains(l)) out.push_back(normalize_label(l));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace atdist
