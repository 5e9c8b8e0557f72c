#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "atdist/adtool_xml.hpp"
#include "atdist/counterexample_harness.hpp"
#include "atdist/embedding.hpp"
#include "atdist/error.hpp"
#include "atdist/output.hpp"
#include "atdist/report.hpp"
#include "atdist/similarity.hpp"

namespace atdist::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kParse = 2, kEmbeddings = 3, kConfig = 4 };

struct Options {
  double epsilon = 0.7;
  std::string provider = "exact";
  std::string missing_embedding = "error";
  double gamma_delta = 0.5;
  std::string alpha = "0.5,0.25,0.25,0";
  std::string reorder = "min";
  std::string output;  // empty: per-command default
  bool lowercase = true;
  std::string emit_mapping, emit_script, emit_radicals;
  double step = 0.01;
  std::string measure = "wsd";
};

inline Alpha parse_alpha(const std::string& text) {
  std::vector<double> w;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const std::string t(trim(item));
      w.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::logic_error&) {
      throw ConfigError("--alpha: \"" + item + "\" is not a number");
    }
  }
  if (w.size() != 4) throw ConfigError("--alpha needs exactly four comma-separated weights");
  return Alpha(w[0], w[1], w[2], w[3]);
}

inline ReorderMode parse_reorder(const std::string& s) {
  if (s == "off") return ReorderMode::Off;
  if (s == "on") return ReorderMode::On;
  if (s == "min") return ReorderMode::Min;
  throw ConfigError("--reorder must be off, on or min");
}

inline CompareConfig make_config(const Options& o) {
  CompareConfig cfg;
  cfg.epsilon = Epsilon(o.epsilon);
  cfg.costs = CostConfig().with_gamma(o.gamma_delta);
  cfg.alpha = parse_alpha(o.alpha);
  cfg.reorder = parse_reorder(o.reorder);
  return cfg;
}

/// Embedding file unreadable or malformed.
class EmbeddingFileError : public Error {
 public:
  using Error::Error;
};

struct ProviderChoice {
  AnyProvider provider;
  std::shared_ptr<const EmbeddingTable> table;  // set for the embedding provider
};

/// Builds the provider named by --provider. For "embedding" without a path
/// the ATDIST_EMBEDDINGS environment variable is used.
inline ProviderChoice make_provider(const Options& o) {
  if (o.provider == "exact") return {ExactSimilarity{o.lowercase}, nullptr};
  if (o.provider == "levenshtein") return {LevenshteinSimilarity{o.lowercase}, nullptr};
  if (o.provider == "embedding" || o.provider.rfind("embedding:", 0) == 0) {
    std::string path = o.provider.size() > 10 ? o.provider.substr(10) : std::string{};
    if (path.empty()) {
      const char* env = std::getenv("ATDIST_EMBEDDINGS");
      if (env == nullptr || *env == '\0') {
        throw ConfigError("embedding provider needs a path (embedding:<path> or ATDIST_EMBEDDINGS)");
      }
      path = env;
    }
    MissingEmbedding policy;
    if (o.missing_embedding == "error") {
      policy = MissingEmbedding::Error;
    } else if (o.missing_embedding == "zero") {
      policy = MissingEmbedding::Zero;
    } else {
      throw ConfigError("--missing-embedding must be error or zero");
    }
    std::shared_ptr<const EmbeddingTable> table;
    try {
      table = std::make_shared<const EmbeddingTable>(load_embeddings(path));
    } catch (const Error& e) {
      throw EmbeddingFileError(path + ": " + e.what());
    }
    return {EmbeddingSimilarity{table, policy, o.lowercase}, table};
  }
  throw ConfigError("unknown provider \"" + o.provider + "\" (exact, levenshtein, embedding:<path>)");
}

inline std::string output_format(const Options& o, const std::string& fallback) {
  const std::string f = o.output.empty() ? fallback : o.output;
  if (f != "text" && f != "json" && f != "csv") throw ConfigError("--output must be text, json or csv");
  return f;
}

inline ordered_json options_json(const Options& o, const CompareConfig& cfg) {
  ordered_json alpha = ordered_json::array();
  for (double w : cfg.alpha.weights()) alpha.push_back(w);
  return ordered_json{{"epsilon", cfg.epsilon.value()},
                      {"provider", o.provider},
                      {"missing_embedding", o.missing_embedding},
                      {"gamma_delta", cfg.costs.gamma_delta()},
                      {"c_remove", cfg.costs.c_remove()},
                      {"c_add", cfg.costs.c_add()},
                      {"c_label_change", cfg.costs.c_label_change()},
                      {"alpha", alpha},
                      {"reorder", std::string(to_string(cfg.reorder))},
                      {"lowercase", o.lowercase}};
}

/// Every label of the trees must have a vector before anything runs, so
/// the error lists all of them at once.
inline void check_embeddings(const ProviderChoice& p, const Options& o, const std::vector<AttackTree>& trees) {
  if (!p.table || o.missing_embedding != "error") return;
  std::vector<std::string> labels;
  for (const AttackTree& t : trees) {
    for (auto& l : t.labels()) labels.push_back(std::move(l));
  }
  auto missing = missing_labels(*p.table, labels);
  if (!missing.empty()) throw MissingEmbeddingError(std::move(missing));
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << content;
}

inline int cmd_compare(const Options& o, const std::string& a, const std::string& b, std::ostream& out) {
  const CompareConfig cfg = make_config(o);
  const std::string fmt = output_format(o, "text");
  const AttackTree t1 = load_adtool_xml(a), t2 = load_adtool_xml(b);
  const ProviderChoice p = make_provider(o);
  check_embeddings(p, o, {t1, t2});
  const DistanceReport r = compare_all(p.provider, cfg, t1, t2);

  if (fmt == "json") {
    ordered_json j = to_json(r);
    j["config"] = options_json(o, cfg);
    out << j.dump(2) << '\n';
  } else if (fmt == "csv") {
    write_report_csv(out, r);
  } else {
    write_report_text(out, r);
  }
  if (!o.emit_mapping.empty()) write_file(o.emit_mapping, to_json(r.ld_mapping).dump(2) + "\n");
  if (!o.emit_script.empty()) {
    std::ostringstream s;
    write_script_jsonl(s, r.ted_result.script);
    write_file(o.emit_script, s.str());
  }
  if (!o.emit_radicals.empty()) {
    ordered_json pairs = ordered_json::array();
    for (const RadicalPair& rp : r.radical_pairs) {
      pairs.push_back(ordered_json{{"source_id", rp.source == kLambda ? ordered_json(nullptr) : ordered_json(rp.source)},
                                   {"target_id", rp.target == kLambda ? ordered_json(nullptr) : ordered_json(rp.target)},
                                   {"cost", rp.cost}});
    }
    const ordered_json j{{"source", to_json(decompose(t1))}, {"target", to_json(decompose(t2))}, {"pairs", pairs}};
    write_file(o.emit_radicals, j.dump(2) + "\n");
  }
  return kOk;
}

inline int cmd_sweep(const Options& o, const std::string& a, const std::string& b, std::ostream& out) {
  const CompareConfig cfg = make_config(o);
  const std::string fmt = output_format(o, "csv");
  EpsilonGrid grid;
  grid.step = o.step;
  (void)grid.points();  // validates the step before any I/O
  const AttackTree t1 = load_adtool_xml(a), t2 = load_adtool_xml(b);
  const ProviderChoice p = make_provider(o);
  check_embeddings(p, o, {t1, t2});
  const auto rows = epsilon_sweep(p.provider, cfg, t1, t2, grid);
  if (fmt == "json") {
    const ordered_json j{{"source", t1.source_name()},
                         {"target", t2.source_name()},
                         {"config", options_json(o, cfg)},
                         {"step", o.step},
                         {"rows", to_json(rows)}};
    out << j.dump(2) << '\n';
  } else {
    write_sweep_csv(out, rows);
  }
  return kOk;
}

inline std::vector<std::string> xml_files(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw ParseError("not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".xml") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

inline int cmd_matrix(const Options& o, const std::string& dir, std::ostream& out) {
  const CompareConfig cfg = make_config(o);
  const std::string fmt = output_format(o, "csv");
  const Measure measure = parse_measure(o.measure);
  std::vector<AttackTree> trees;
  std::vector<std::string> names;
  for (const auto& f : xml_files(dir)) {
    trees.push_back(load_adtool_xml(f));
    names.push_back(trees.back().source_name());
  }
  if (trees.size() < 2) throw ConfigError("matrix needs at least two .xml files in " + dir);
  const ProviderChoice p = make_provider(o);
  check_embeddings(p, o, trees);
  const DistanceMatrix m = pairwise_matrix(p.provider, cfg, trees, measure);
  if (fmt == "json") {
    const ordered_json j{{"measure", std::string(to_string(measure))},
                         {"trees", names},
                         {"config", options_json(o, cfg)},
                         {"matrix", m}};
    out << j.dump(2) << '\n';
  } else if (fmt == "csv") {
    write_matrix_csv(out, names, m);
  } else {
    out << to_string(measure) << " (normalized)\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
      out << names[i] << ':';
      for (double v : m[i]) out << ' ' << format_number(v);
      out << '\n';
    }
  }
  return kOk;
}

inline int cmd_counterexamples(const Options& o, std::ostream& out) {
  const std::string fmt = output_format(o, "text");
  const CounterexampleRun run = run_counterexamples();
  if (fmt == "json") {
    out << to_json(run).dump(2) << '\n';
  } else if (fmt == "csv") {
    write_counterexamples_csv(out, run);
  } else {
    write_counterexamples_text(out, run);
  }
  return run.passed() ? kOk : kMismatch;
}

inline int cmd_validate(const std::string& file, std::ostream& out) {
  const AttackTree t = load_adtool_xml(file);
  const auto problems = validate(t);
  for (const auto& p : problems) out << file << ": " << p << '\n';
  if (!problems.empty()) return kParse;
  out << file << ": ok (" << t.size() << " nodes, " << t.internal_count() << " internal)\n";
  return kOk;
}

inline void add_common(CLI::App* app, Options& o) {
  app->add_option("--epsilon", o.epsilon, "similarity limit in [0,1]")->capture_default_str();
  app->add_option("--provider", o.provider, "exact | levenshtein | embedding[:path]")->capture_default_str();
  app->add_option("--missing-embedding", o.missing_embedding, "error | zero")->capture_default_str();
  app->add_option("--gamma-delta", o.gamma_delta, "refinement change cost")->capture_default_str();
  app->add_option("--alpha", o.alpha, "WSD weights for LD,TED,RD,MSD")->capture_default_str();
  app->add_option("--reorder", o.reorder, "off | on | min")->capture_default_str();
  app->add_option("--output", o.output, "text | json | csv");
  app->add_flag("--lowercase,!--no-lowercase", o.lowercase, "lowercase labels before comparing");
}

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distances between attack trees", "atdist"};
  app.require_subcommand(1);
  Options o;
  std::string file_a, file_b, dir;

  auto* compare = app.add_subcommand("compare", "compare two ADTool XML trees");
  compare->add_option("a", file_a)->required();
  compare->add_option("b", file_b)->required();
  add_common(compare, o);
  compare->add_option("--emit-mapping", o.emit_mapping, "write the label mapping as JSON");
  compare->add_option("--emit-script", o.emit_script, "write the TED edit script as JSON lines");
  compare->add_option("--emit-radicals", o.emit_radicals, "write radical dictionaries as JSON");

  auto* sweep = app.add_subcommand("sweep", "normalized distances over an epsilon grid");
  sweep->add_option("a", file_a)->required();
  sweep->add_option("b", file_b)->required();
  add_common(sweep, o);
  sweep->add_option("--step", o.step, "grid step")->capture_default_str();

  auto* matrix = app.add_subcommand("matrix", "pairwise distances of all .xml files in a directory");
  matrix->add_option("dir", dir)->required();
  add_common(matrix, o);
  matrix->add_option("--measure", o.measure, "ld | ted | rd | msd | wsd")->capture_default_str();

  auto* counter = app.add_subcommand("counterexamples", "check the built-in counterexample table");
  add_common(counter, o);

  auto* validate_cmd = app.add_subcommand("validate", "parse and check a tree file");
  validate_cmd->add_option("file", file_a)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "atdist: " << e.what() << '\n';
    return kConfig;
  }

  try {
    if (*compare) return cmd_compare(o, file_a, file_b, out);
    if (*sweep) return cmd_sweep(o, file_a, file_b, out);
    if (*matrix) return cmd_matrix(o, dir, out);
    if (*counter) return cmd_counterexamples(o, out);
    return cmd_validate(file_a, out);
  } catch (const ParseError& e) {
    err << "atdist: " << e.what() << '\n';
    return kParse;
  } catch (const MissingEmbeddingError& e) {
    err << "atdist: missing embeddings for:";
    for (const auto& l : e.labels()) err << "\n  " << l;
    err << '\n';
    return kEmbeddings;
  } catch (const EmbeddingFileError& e) {
    err << "atdist: " << e.what() << '\n';
    return kEmbeddings;
  } catch (const ConfigError& e) {
    err << "atdist: " << e.what() << '\n';
    return kConfig;
  } catch (const Error& e) {
    err << "atdist: " << e.what() << '\n';
    return kConfig;
  }
}

}  // namespace atdist::cli
