#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "atdist/error.hpp"
#include "atdist/tree.hpp"

namespace atdist {

// Reader/writer for the attack-only subset of the ADTool XML schema:
//
//   <adtree>
//     <node refinement="disjunctive|conjunctive">
//       <label>text</label>
//       <node ...> ... </node>*
//     </node>
//   </adtree>
//
// Defense constructs (switchRole, parameter) are rejected.

namespace detail {

namespace pt = boost::property_tree;

inline Refinement parse_refinement(const pt::ptree& elem, const std::string& where) {
  const auto attr = elem.get_optional<std::string>("<xmlattr>.refinement");
  if (!attr) return Refinement::Or;
  const std::string_view v = trim(*attr);
  if (v == "disjunctive") return Refinement::Or;
  if (v == "conjunctive") return Refinement::And;
  throw ParseError(where + ": unsupported refinement \"" + *attr + "\"");
}

inline AtNode read_node(const pt::ptree& elem, const std::string& where) {
  if (elem.get_optional<std::string>("<xmlattr>.switchRole")) {
    throw ParseError(where + ": defense node (switchRole) not supported");
  }
  AtNode out;
  out.refinement = parse_refinement(elem, where);
  bool have_label = false;
  std::size_t child_index = 0;
  for (const auto& [tag, child] : elem) {
    if (tag == "<xmlattr>" || tag == "<xmlcomment>") continue;
    if (tag == "label") {
      if (have_label) throw ParseError(where + ": more than one <label>");
      if (child_index != 0) throw ParseError(where + ": <label> must precede child nodes");
      out.label = std::string(trim(child.data()));
      if (out.label.empty()) throw ParseError(where + ": empty label");
      have_label = true;
    } else if (tag == "node") {
      const std::string sub = where + "/node[" + std::to_string(child_index++) + "]";
      out.children.push_back(read_node(child, have_label ? sub + " under \"" + out.label + "\"" : sub));
    } else if (tag == "switchRole" || tag == "parameter") {
      throw ParseError(where + (have_label ? " (\"" + out.label + "\")" : std::string{}) +
                       ": defense element <" + tag + "> not supported");
    } else {
      throw ParseError(where + ": unexpected element <" + tag + ">");
    }
  }
  if (!have_label) throw ParseError(where + ": missing <label>");
  return out;
}

}  // namespace detail

/// Parses an ADTool XML document. Child order is kept as written.
inline AttackTree parse_adtool_xml(std::string_view bytes, std::string source_name = {}) {
  namespace pt = boost::property_tree;
  pt::ptree doc;
  try {
    std::istringstream in{std::string(bytes)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed XML: " + e.message(), e.line());
  }
  const auto adtree = doc.get_child_optional("adtree");
  if (!adtree) throw ParseError("root element must be <adtree>");
  const pt::ptree* root_elem = nullptr;
  for (const auto& [tag, child] : *adtree) {
    if (tag == "<xmlattr>" || tag == "<xmlcomment>") continue;
    if (tag != "node") {
      throw ParseError("adtree: unexpected element <" + tag + ">");
    }
    if (root_elem) throw ParseError("adtree: more than one root <node>");
    root_elem = &child;
  }
  if (!root_elem) throw ParseError("adtree: no root <node>");
  return AttackTree(detail::read_node(*root_elem, "adtree/node"), std::move(source_name));
}

inline AttackTree load_adtool_xml(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
  try {
    return parse_adtool_xml(buf.str(), stem);
  } catch (const ParseError& e) {
    const std::string where = e.line() ? path + ":" + std::to_string(e.line()) : path;
    throw ParseError(where + ": " + e.what(), e.line());
  }
}

namespace detail {

inline void xml_escape(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
}

inline void write_node(std::string& out, const AtNode& n, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  out += pad;
  out += "<node refinement=\"";
  out += n.refinement == Refinement::And ? "conjunctive" : "disjunctive";
  out += "\">\n";
  out += pad;
  out += "  <label>";
  xml_escape(out, n.label);
  out += "</label>\n";
  for (const AtNode& c : n.children) write_node(out, c, depth + 1);
  out += pad;
  out += "</node>\n";
}

}  // namespace detail

/// Canonical serialization: fixed indentation, refinement always written.
inline std::string serialize_adtool_xml(const AttackTree& tree) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<adtree>\n";
  detail::write_node(out, tree.root(), 1);
  out += "</adtree>\n";
  return out;
}

}  // namespace atdist
