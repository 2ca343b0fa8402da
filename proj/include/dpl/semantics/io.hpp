#ifndef DPL_SEMANTICS_IO_HPP_
#define DPL_SEMANTICS_IO_HPP_

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dpl/errors.hpp"
#include "dpl/semantics/structure.hpp"

namespace dpl {

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

inline void require_unique(const std::vector<std::string>& names, const char* what) {
  std::map<std::string, int> seen;
  for (const auto& n : names)
    if (++seen[n] > 1) throw PreconditionError(std::string("duplicate ") + what + " name '" + n + "'");
}

inline std::size_t lookup(const std::map<std::string, std::size_t>& index, const std::string& name, const char* what) {
  auto it = index.find(name);
  if (it == index.end()) throw ParseError(std::string("unknown ") + what + " '" + name + "'", 0);
  return it->second;
}

}  // namespace detail

// Worlds and events are written by name, so names must be unique.
inline nlohmann::json to_json(const VStructure& m) {
  detail::require_unique(m.worlds, "world");
  detail::require_unique(m.events, "event");
  nlohmann::json j;
  j["worlds"] = m.worlds;
  j["events"] = m.events;
  j["transitions"] = nlohmann::json::array();
  for (const auto& t : m.transitions)
    j["transitions"].push_back({{"from", m.worlds.at(t.from)}, {"event", m.events.at(t.event)}, {"to", m.worlds.at(t.to)}});
  j["permitted"] = nlohmann::json::array();
  for (const auto& [w, e] : m.permitted) j["permitted"].push_back({{"world", m.worlds.at(w)}, {"event", m.events.at(e)}});
  j["actions"] = nlohmann::json::object();
  for (const auto& [a, es] : m.interp_actions) {
    auto& list = j["actions"][a] = nlohmann::json::array();
    for (std::size_t e : es) list.push_back(m.events.at(e));
  }
  j["propositions"] = nlohmann::json::object();
  for (const auto& [p, ws] : m.interp_props) {
    auto& list = j["propositions"][p] = nlohmann::json::array();
    for (std::size_t w : ws) list.push_back(m.worlds.at(w));
  }
  return j;
}

inline VStructure structure_from_json(const nlohmann::json& j) {
  try {
    VStructure m;
    m.worlds = j.at("worlds").get<std::vector<std::string>>();
    m.events = j.at("events").get<std::vector<std::string>>();
    detail::require_unique(m.worlds, "world");
    detail::require_unique(m.events, "event");
    std::map<std::string, std::size_t> wi, ei;
    for (std::size_t i = 0; i < m.worlds.size(); ++i) wi[m.worlds[i]] = i;
    for (std::size_t i = 0; i < m.events.size(); ++i) ei[m.events[i]] = i;
    for (const auto& t : j.at("transitions"))
      m.transitions.insert({detail::lookup(wi, t.at("from").get<std::string>(), "world"),
                            detail::lookup(ei, t.at("event").get<std::string>(), "event"),
                            detail::lookup(wi, t.at("to").get<std::string>(), "world")});
    for (const auto& p : j.at("permitted"))
      m.permitted.insert({detail::lookup(wi, p.at("world").get<std::string>(), "world"),
                          detail::lookup(ei, p.at("event").get<std::string>(), "event")});
    for (const auto& [a, es] : j.at("actions").items()) {
      auto& dst = m.interp_actions[a];
      for (const auto& e : es) dst.insert(detail::lookup(ei, e.get<std::string>(), "event"));
    }
    for (const auto& [p, ws] : j.at("propositions").items()) {
      auto& dst = m.interp_props[p];
      for (const auto& w : ws) dst.insert(detail::lookup(wi, w.get<std::string>(), "world"));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed model document: ") + e.what(), 0);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0);
  }
}

// ---------------------------------------------------------------------------
// DOT
// ---------------------------------------------------------------------------

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\\\"";
    else out += c;
  }
  return out + "\"";
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

inline void check_dot_name(const std::string& s) {
  if (s.find_first_of("\";\\") != std::string::npos)
    throw PreconditionError("name '" + s + "' cannot be written to DOT");
}

}  // namespace detail

// One node per world labelled with its true propositions and permitted
// events, one edge per transition labelled with its event. The graph and
// node attributes `events`, `propositions`, `action_<name>`, `world`, `props` and
// `permitted` carry enough to rebuild the structure.
inline std::string to_dot(const VStructure& m) {
  detail::require_unique(m.worlds, "world");
  detail::require_unique(m.events, "event");
  for (const auto& n : m.worlds) detail::check_dot_name(n);
  for (const auto& n : m.events) detail::check_dot_name(n);

  std::vector<std::vector<std::string>> props(m.worlds.size()), perms(m.worlds.size());
  for (const auto& [p, ws] : m.interp_props)
    for (std::size_t w : ws) props.at(w).push_back(p);
  for (const auto& [w, e] : m.permitted) perms.at(w).push_back(m.events.at(e));

  std::ostringstream out;
  out << "digraph model {\n";
  out << "  graph [events=" << detail::dot_quote(detail::join(m.events, ";")) << "];\n";
  for (const auto& [a, es] : m.interp_actions) {
    std::vector<std::string> names;
    for (std::size_t e : es) names.push_back(m.events.at(e));
    out << "  graph [" << detail::dot_quote("action_" + a) << "=" << detail::dot_quote(detail::join(names, ";")) << "];\n";
  }
  std::vector<std::string> prop_names;
  for (const auto& kv : m.interp_props) prop_names.push_back(kv.first);
  out << "  graph [propositions=" << detail::dot_quote(detail::join(prop_names, ";")) << "];\n";
  out << "  node [shape=box];\n";
  for (std::size_t w = 0; w < m.worlds.size(); ++w) {
    std::string label = m.worlds[w];
    if (!props[w].empty()) label += "\\n" + detail::join(props[w], ", ");
    if (!perms[w].empty()) label += "\\npermitted: " + detail::join(perms[w], ", ");
    out << "  n" << w << " [label=" << detail::dot_quote(label) << ", world=" << detail::dot_quote(m.worlds[w])
        << ", props=" << detail::dot_quote(detail::join(props[w], ";"))
        << ", permitted=" << detail::dot_quote(detail::join(perms[w], ";")) << "];\n";
  }
  for (const auto& t : m.transitions)
    out << "  n" << t.from << " -> n" << t.to << " [label=" << detail::dot_quote(m.events.at(t.event)) << "];\n";
  out << "}\n";
  return out.str();
}

struct DotGraph {
  bool directed = true;
  std::string name;
  std::map<std::string, std::string> graph_attrs;
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> nodes;  // in first-mention order
  struct Edge {
    std::string from, to;
    std::map<std::string, std::string> attrs;
  };
  std::vector<Edge> edges;
};

namespace detail {

// Reader for the DOT language without subgraphs or ports.
class DotReader {
 public:
  explicit DotReader(std::string text) : s_(std::move(text)) {}

  DotGraph read() {
    DotGraph g;
    std::string kw = lower(expect_id());
    if (kw == "strict") kw = lower(expect_id());
    if (kw != "graph" && kw != "digraph") fail("expected 'graph' or 'digraph'");
    g.directed = kw == "digraph";
    if (!peek_punct("{")) g.name = expect_id();
    expect_punct("{");
    while (!peek_punct("}")) {
      statement(g);
      if (peek_punct(";")) expect_punct(";");
    }
    expect_punct("}");
    skip_space();
    if (pos_ != s_.size()) fail("trailing input after graph");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("DOT: " + msg, pos_); }

  static std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  void skip_space() {
    for (;;) {
      while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (s_.compare(pos_, 2, "//") == 0 || (pos_ < s_.size() && s_[pos_] == '#')) {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (s_.compare(pos_, 2, "/*") == 0) {
        auto end = s_.find("*/", pos_ + 2);
        if (end == std::string::npos) fail("unterminated comment");
        pos_ = end + 2;
      } else {
        return;
      }
    }
  }

  bool peek_punct(const char* p) {
    skip_space();
    return s_.compare(pos_, std::char_traits<char>::length(p), p) == 0;
  }

  void expect_punct(const char* p) {
    if (!peek_punct(p)) fail(std::string("expected '") + p + "'");
    pos_ += std::char_traits<char>::length(p);
  }

  bool peek_id() {
    skip_space();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '"' || c == '_' || c == '.' || c == '-' || std::isalnum(static_cast<unsigned char>(c));
  }

  std::string expect_id() {
    if (!peek_id()) fail("expected an identifier");
    std::string out;
    if (s_[pos_] == '"') {
      ++pos_;
      for (;;) {
        if (pos_ >= s_.size()) fail("unterminated string");
        char c = s_[pos_++];
        if (c == '"') break;
        if (c == '\\' && pos_ < s_.size() && s_[pos_] == '"') {
          out += '"';
          ++pos_;
        } else {
          out += c;
        }
      }
      return out;
    }
    if (s_[pos_] == '-' && s_.compare(pos_, 2, "->") == 0) fail("expected an identifier");
    if (s_[pos_] == '-' || s_[pos_] == '.' || std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      if (s_[pos_] == '-') ++pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      out = s_.substr(start, pos_ - start);
      if (out == "-" || out == ".") fail("malformed numeral");
      return out;
    }
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) out += s_[pos_++];
    return out;
  }

  std::map<std::string, std::string> attr_lists() {
    std::map<std::string, std::string> attrs;
    while (peek_punct("[")) {
      expect_punct("[");
      while (!peek_punct("]")) {
        std::string key = expect_id();
        expect_punct("=");
        attrs[key] = expect_id();
        if (peek_punct(";")) expect_punct(";");
        else if (peek_punct(",")) expect_punct(",");
      }
      expect_punct("]");
    }
    return attrs;
  }

  void mention(DotGraph& g, const std::string& id, const std::map<std::string, std::string>& attrs) {
    for (auto& [name, a] : g.nodes)
      if (name == id) {
        for (const auto& kv : attrs) a[kv.first] = kv.second;
        return;
      }
    g.nodes.emplace_back(id, attrs);
  }

  void statement(DotGraph& g) {
    if (peek_punct("{") || (peek_id() && lower(peek_word()) == "subgraph")) fail("subgraphs are not supported");
    std::string id = expect_id();
    std::string kw = lower(id);
    if ((kw == "graph" || kw == "node" || kw == "edge") && peek_punct("[")) {
      auto attrs = attr_lists();
      if (kw == "graph")
        for (const auto& kv : attrs) g.graph_attrs[kv.first] = kv.second;
      return;
    }
    if (peek_punct("=")) {
      expect_punct("=");
      g.graph_attrs[id] = expect_id();
      return;
    }
    const char* op = g.directed ? "->" : "--";
    if (!peek_punct(op)) {
      mention(g, id, attr_lists());
      return;
    }
    std::vector<std::string> chain{id};
    while (peek_punct(op)) {
      expect_punct(op);
      chain.push_back(expect_id());
    }
    auto attrs = attr_lists();
    for (const auto& n : chain) mention(g, n, {});
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) g.edges.push_back({chain[i], chain[i + 1], attrs});
  }

  std::string peek_word() {
    std::size_t save = pos_;
    std::string w = s_[pos_] == '"' ? std::string() : expect_id();
    pos_ = save;
    return w;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    auto end = s.find(sep, start);
    out.push_back(s.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) return out;
    start = end + 1;
  }
}

}  // namespace detail

inline DotGraph parse_dot(const std::string& text) { return detail::DotReader(text).read(); }

// Rebuilds a structure from a graph written by to_dot.
inline VStructure structure_from_dot(const DotGraph& g) {
  VStructure m;
  auto events = g.graph_attrs.find("events");
  if (events == g.graph_attrs.end()) throw ParseError("DOT: graph has no 'events' attribute", 0);
  m.events = detail::split(events->second, ';');
  std::map<std::string, std::size_t> ei, node_index;
  for (std::size_t i = 0; i < m.events.size(); ++i) ei[m.events[i]] = i;
  if (auto p = g.graph_attrs.find("propositions"); p != g.graph_attrs.end())
    for (const auto& prop : detail::split(p->second, ';')) m.interp_props[prop];
  for (const auto& [key, value] : g.graph_attrs) {
    if (key.rfind("action_", 0) != 0) continue;
    auto& dst = m.interp_actions[key.substr(7)];
    for (const auto& e : detail::split(value, ';')) dst.insert(detail::lookup(ei, e, "event"));
  }
  for (const auto& [id, attrs] : g.nodes) {
    std::size_t w = m.worlds.size();
    node_index[id] = w;
    auto name = attrs.find("world");
    m.worlds.push_back(name == attrs.end() ? id : name->second);
    if (auto p = attrs.find("props"); p != attrs.end())
      for (const auto& prop : detail::split(p->second, ';')) m.interp_props[prop].insert(w);
    if (auto p = attrs.find("permitted"); p != attrs.end())
      for (const auto& e : detail::split(p->second, ';')) m.permitted.insert({w, detail::lookup(ei, e, "event")});
  }
  for (const auto& e : g.edges) {
    auto label = e.attrs.find("label");
    if (label == e.attrs.end()) throw ParseError("DOT: edge without an event label", 0);
    m.transitions.insert({node_index.at(e.from), detail::lookup(ei, label->second, "event"), node_index.at(e.to)});
  }
  return m;
}

inline VStructure structure_from_dot(const std::string& text) { return structure_from_dot(parse_dot(text)); }

}  // namespace dpl

#endif  // DPL_SEMANTICS_IO_HPP_
