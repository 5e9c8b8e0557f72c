#pragma once

#include <array>
#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "atdist/counterexample_harness.hpp"
#include "atdist/mapping.hpp"
#include "atdist/multiset_distance.hpp"
#include "atdist/radical_distance.hpp"
#include "atdist/report.hpp"
#include "atdist/ted.hpp"

namespace atdist {

// JSON / CSV / text renderings. All output is deterministic: fixed key
// order, shortest round-trip number formatting.

/// Shortest decimal that round-trips, e.g. 0.25, 1.75, 7.
inline std::string format_number(double x) {
  if (x == 0.0) return "0";  // avoids "-0"
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return ec == std::errc{} ? std::string(buf.data(), end) : std::to_string(x);
}

using nlohmann::ordered_json;

inline ordered_json to_json(const OpCounts& c) {
  return ordered_json{{"remove", c.remove}, {"add", c.add}, {"change", c.change}, {"match", c.match}};
}

inline ordered_json to_json(const MeasureReport& m) {
  return ordered_json{{"absolute", m.absolute}, {"normalized", m.normalized}, {"ops", to_json(m.ops)}};
}

inline ordered_json config_json(const DistanceReport& r) {
  const auto& c = r.config;
  ordered_json alpha = ordered_json::array();
  for (double w : c.alpha.weights()) alpha.push_back(w);
  return ordered_json{{"epsilon", c.epsilon.value()},
                      {"gamma_delta", c.costs.gamma_delta()},
                      {"c_remove", c.costs.c_remove()},
                      {"c_add", c.costs.c_add()},
                      {"c_label_change", c.costs.c_label_change()},
                      {"alpha", alpha},
                      {"provider", r.provider},
                      {"reorder", std::string(to_string(c.reorder))}};
}

inline ordered_json to_json(const DistanceReport& r) {
  ordered_json j;
  j["source"] = r.source_name;
  j["target"] = r.target_name;
  j["source_size"] = r.source_size;
  j["target_size"] = r.target_size;
  j["measures"] = ordered_json{{"ld", to_json(r.ld)}, {"ted", to_json(r.ted)}, {"rd", to_json(r.rd)},
                               {"msd", to_json(r.msd)}};
  j["wsd"] = r.wsd;
  j["wsd_normalized"] = r.wsd_normalized;
  j["ted_reordered"] = r.ted_reordered;
  j["config"] = config_json(r);
  return j;
}

/// [{source_id, target_id, similarity}], Λ written as null.
inline ordered_json to_json(const NodeMapping& m) {
  ordered_json out = ordered_json::array();
  for (const MappedPair& p : m.pairs) {
    ordered_json e;
    e["source_id"] = p.source == kLambda ? ordered_json(nullptr) : ordered_json(p.source);
    e["target_id"] = p.target == kLambda ? ordered_json(nullptr) : ordered_json(p.target);
    e["similarity"] = p.similarity;
    out.push_back(std::move(e));
  }
  return out;
}

inline ordered_json to_json(const EditOp& op) {
  ordered_json e;
  e["kind"] = std::string(to_string(op.kind));
  e["source_id"] = op.source == kLambda ? ordered_json(nullptr) : ordered_json(op.source);
  e["target_id"] = op.target == kLambda ? ordered_json(nullptr) : ordered_json(op.target);
  e["label_changed"] = op.label_changed;
  e["refinement_changed"] = op.refinement_changed;
  e["cost"] = op.cost;
  return e;
}

/// One JSON object per line.
inline void write_script_jsonl(std::ostream& out, const std::vector<EditOp>& script) {
  for (const EditOp& op : script) out << to_json(op).dump() << '\n';
}

inline ordered_json to_json(const RadicalDict& d) {
  ordered_json out = ordered_json::array();
  for (const Radical& r : d.radicals) {
    out.push_back(ordered_json{{"root_id", r.root},
                               {"root_label", r.root_label},
                               {"refinement", std::string(to_string(r.refinement))},
                               {"children", r.child_labels}});
  }
  return out;
}

inline ordered_json to_json(const SuiteSet& s) {
  ordered_json out = ordered_json::array();
  for (const AttackSuite& suite : s) out.push_back(suite);
  return out;
}

inline void write_report_text(std::ostream& out, const DistanceReport& r) {
  out << "source: " << r.source_name << " (" << r.source_size << " nodes)\n";
  out << "target: " << r.target_name << " (" << r.target_size << " nodes)\n";
  out << "provider: " << r.provider << "  epsilon: " << format_number(r.config.epsilon.value())
      << "  gamma_delta: " << format_number(r.config.costs.gamma_delta())
      << "  reorder: " << to_string(r.config.reorder) << "\n\n";
  out << "measure  absolute  normalized  remove  add  change  match\n";
  const auto row = [&](std::string_view name, const MeasureReport& m) {
    std::string line = std::string(name);
    line.resize(9, ' ');
    auto col = [&line](const std::string& s, std::size_t width) {
      std::string c = s;
      if (c.size() < width) c.resize(width, ' ');
      line += c;
    };
    col(format_number(m.absolute), 10);
    col(format_number(m.normalized), 12);
    col(std::to_string(m.ops.remove), 8);
    col(std::to_string(m.ops.add), 5);
    col(std::to_string(m.ops.change), 8);
    line += std::to_string(m.ops.match);
    out << line << '\n';
  };
  row("LD", r.ld);
  row("TED", r.ted);
  row("RD", r.rd);
  row("MSD", r.msd);
  out << "WSD      " << format_number(r.wsd) << " (normalized " << format_number(r.wsd_normalized) << ")\n";
  if (r.ted_reordered) out << "TED used the sibling-reordered source\n";
}

inline void write_report_csv(std::ostream& out, const DistanceReport& r) {
  out << "measure,absolute,normalized,remove,add,change,match\n";
  const auto row = [&](std::string_view name, const MeasureReport& m) {
    out << name << ',' << format_number(m.absolute) << ',' << format_number(m.normalized) << ',' << m.ops.remove
        << ',' << m.ops.add << ',' << m.ops.change << ',' << m.ops.match << '\n';
  };
  row("ld", r.ld);
  row("ted", r.ted);
  row("rd", r.rd);
  row("msd", r.msd);
  out << "wsd," << format_number(r.wsd) << ',' << format_number(r.wsd_normalized) << ",,,,\n";
}

/// Edit script as text: structural edits first, refinement changes applied
/// afterwards.
inline void write_script_text(std::ostream& out, const std::vector<EditOp>& script) {
  for (const EditOp& op : script) {
    switch (op.kind) {
      case OpKind::Remove:
        out << "remove  #" << op.source << " \"" << op.source_label << "\"\n";
        break;
      case OpKind::Add:
        out << "add     #" << op.target << " \"" << op.target_label << "\"\n";
        break;
      case OpKind::Match:
        out << "match   #" << op.source << " \"" << op.source_label << "\" = #" << op.target << "\n";
        break;
      case OpKind::Change:
        if (op.label_changed) {
          out << "change  #" << op.source << " \"" << op.source_label << "\" -> #" << op.target << " \""
              << op.target_label << "\"\n";
        } else {
          out << "match   #" << op.source << " \"" << op.source_label << "\" = #" << op.target << "\n";
        }
        break;
    }
  }
  bool header = false;
  for (const EditOp& op : script) {
    if (!op.refinement_changed) continue;
    if (!header) out << "then apply refinement changes:\n";
    header = true;
    out << "refine  #" << op.source << " \"" << op.source_label << "\" (to match #" << op.target << ")\n";
  }
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "epsilon,ld,ted,rd,msd,wsd";
  for (std::string_view m : {"ld", "ted", "rd", "msd"}) {
    for (std::string_view k : {"remove", "add", "change", "match"}) out << ',' << m << '_' << k << "_pct";
  }
  out << '\n';
  for (const SweepRow& r : rows) {
    out << format_number(r.epsilon);
    for (double v : r.normalized) out << ',' << format_number(v);
    for (const auto& pct : r.op_pct) {
      for (double v : pct) out << ',' << format_number(v);
    }
    out << '\n';
  }
}

inline ordered_json to_json(const std::vector<SweepRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const SweepRow& r : rows) {
    ordered_json j;
    j["epsilon"] = r.epsilon;
    j["normalized"] = ordered_json{{"ld", r.normalized[0]}, {"ted", r.normalized[1]}, {"rd", r.normalized[2]},
                                   {"msd", r.normalized[3]}, {"wsd", r.normalized[4]}};
    ordered_json pct;
    const std::array<std::string, 4> names = {"ld", "ted", "rd", "msd"};
    for (std::size_t m = 0; m < 4; ++m) {
      pct[names[m]] = ordered_json{{"remove", r.op_pct[m][0]},
                                   {"add", r.op_pct[m][1]},
                                   {"change", r.op_pct[m][2]},
                                   {"match", r.op_pct[m][3]}};
    }
    j["op_percentages"] = pct;
    out.push_back(std::move(j));
  }
  return out;
}

inline void write_matrix_csv(std::ostream& out, const std::vector<std::string>& names, const DistanceMatrix& m) {
  out << "tree";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << names[i];
    for (double v : m[i]) out << ',' << format_number(v);
    out << '\n';
  }
}

inline ordered_json to_json(const CounterexampleRun& run) {
  ordered_json rows = ordered_json::array();
  for (const CounterexampleRow& r : run.rows) {
    ordered_json j;
    j["counterexample"] = std::string(r.expected->display);
    j["id"] = std::string(r.expected->name);
    j["ld"] = to_json(r.report.ld);
    j["ted"] = to_json(r.report.ted);
    j["rd"] = to_json(r.report.rd);
    j["msd"] = to_json(r.report.msd);
    j["wsd"] = r.report.wsd;
    j["passed"] = r.passed();
    j["failures"] = r.hard_failures;
    j["advisories"] = r.advisories;
    rows.push_back(std::move(j));
  }
  return ordered_json{{"passed", run.passed()}, {"rows", rows}};
}

inline void write_counterexamples_csv(std::ostream& out, const CounterexampleRun& run) {
  out << "counterexample,ld,ted,rd,msd,wsd";
  for (std::string_view m : {"ld", "ted", "rd", "msd"}) {
    for (std::string_view k : {"remove", "add", "change", "match"}) out << ',' << m << '_' << k;
  }
  out << ",status\n";
  for (const CounterexampleRow& r : run.rows) {
    out << r.expected->display;
    for (const MeasureReport* m : {&r.report.ld, &r.report.ted, &r.report.rd, &r.report.msd}) {
      out << ',' << format_number(m->absolute);
    }
    out << ',' << format_number(r.report.wsd);
    for (const MeasureReport* m : {&r.report.ld, &r.report.ted, &r.report.rd, &r.report.msd}) {
      out << ',' << m->ops.remove << ',' << m->ops.add << ',' << m->ops.change << ',' << m->ops.match;
    }
    out << ',' << (r.passed() ? "pass" : "FAIL") << '\n';
  }
}

inline void write_counterexamples_text(std::ostream& out, const CounterexampleRun& run) {
  out << "counterexample         LD    TED   RD    MSD   WSD    status\n";
  for (const CounterexampleRow& r : run.rows) {
    std::string line(r.expected->display);
    line.resize(23, ' ');
    for (double v : {r.report.ld.absolute, r.report.ted.absolute, r.report.rd.absolute, r.report.msd.absolute,
                     r.report.wsd}) {
      std::string c = format_number(v);
      c.resize(6, ' ');
      line += c;
    }
    line += r.passed() ? " pass" : " FAIL";
    out << line << '\n';
    for (const auto& f : r.hard_failures) out << "    mismatch: " << f << '\n';
    for (const auto& a : r.advisories) out << "    advisory: " << a << '\n';
  }
  out << (run.passed() ? "all hard checks passed\n" : "hard check failures present\n");
}

}  // namespace atdist
