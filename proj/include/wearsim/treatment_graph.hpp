#pragma once

// Treatment-path knowledge graphs: data model, JSON interchange, validation
// and the successor query used by the navigation session.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wearsim/comparator.hpp"
#include "wearsim/error.hpp"
#include "wearsim/text_util.hpp"

namespace wearsim::graph {

/// Node identifier, restricted to `[a-z0-9_-]{1,64}`.
class NodeId {
 public:
  explicit NodeId(std::string value) : value_(std::move(value)) {
    if (!is_valid(value_)) throw ParseError("invalid node id '" + value_ + "'");
  }

  static bool is_valid(std::string_view s) {
    if (s.empty() || s.size() > 64) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
  }

  const std::string& str() const noexcept { return value_; }

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;

 private:
  std::string value_;
};

enum class NodeKind { Start, Action, Decision, Jump, Info, End };

constexpr std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Start: return "Start";
    case NodeKind::Action: return "Action";
    case NodeKind::Decision: return "Decision";
    case NodeKind::Jump: return "Jump";
    case NodeKind::Info: return "Info";
    case NodeKind::End: return "End";
  }
  return "?";
}

inline std::optional<NodeKind> parse_node_kind(std::string_view s) {
  for (auto k : {NodeKind::Start, NodeKind::Action, NodeKind::Decision, NodeKind::Jump,
                 NodeKind::Info, NodeKind::End}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

enum class Relation { Next, Yes, No, Option, Info, Jump };

constexpr std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Next: return "NEXT";
    case Relation::Yes: return "YES";
    case Relation::No: return "NO";
    case Relation::Option: return "OPTION";
    case Relation::Info: return "INFO";
    case Relation::Jump: return "JUMP";
  }
  return "?";
}

inline std::optional<Relation> parse_relation(std::string_view s) {
  for (auto r : {Relation::Next, Relation::Yes, Relation::No, Relation::Option, Relation::Info,
                 Relation::Jump}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

constexpr bool is_branch(Relation r) {
  return r == Relation::Yes || r == Relation::No || r == Relation::Option;
}
constexpr bool is_flow(Relation r) { return r != Relation::Info; }

struct DecisionSpec {
  std::string question;
  std::optional<std::string> auto_fact;
  std::optional<Comparator> comparator;
  std::optional<double> threshold;
  std::vector<std::string> branch_labels;

  friend bool operator==(const DecisionSpec&, const DecisionSpec&) = default;
};

struct TreatmentNode {
  NodeId id;
  NodeKind kind = NodeKind::Action;
  std::string text;
  std::optional<std::string> info_text;
  std::optional<long long> timer_seconds;
  std::optional<std::string> warning_text;
  std::optional<DecisionSpec> decision;

  friend bool operator==(const TreatmentNode&, const TreatmentNode&) = default;
};

struct Edge {
  NodeId from;
  NodeId to;
  Relation relation = Relation::Next;
  /// Required for OPTION; optional override for YES/NO.
  std::optional<std::string> label;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One rule violation. `rule` is a stable identifier, `locator` names the
/// node (`node:<id>`) or edge (`edge:<from>-><to>`) at fault.
struct Violation {
  std::string rule;
  std::string locator;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error("ValidationError", describe(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string describe(const std::vector<Violation>& vs) {
    std::string out = std::to_string(vs.size()) + " violation(s)";
    for (const auto& v : vs) out += "; " + v.rule + " at " + v.locator + ": " + v.message;
    return out;
  }

  std::vector<Violation> violations_;
};

/// Immutable property graph of one treatment path. Construction does not
/// validate; `load_graph` does, and `validate` is total over any instance.
class TreatmentGraph {
 public:
  TreatmentGraph(std::string path_id, std::string title, std::vector<TreatmentNode> nodes,
                 std::vector<Edge> edges)
      : path_id_(std::move(path_id)),
        title_(std::move(title)),
        nodes_(std::move(nodes)),
        edges_(std::move(edges)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_.try_emplace(nodes_[i].id.str(), i);
    out_.resize(nodes_.size());
    in_.resize(nodes_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (auto it = index_.find(edges_[e].from.str()); it != index_.end()) out_[it->second].push_back(e);
      if (auto it = index_.find(edges_[e].to.str()); it != index_.end()) in_[it->second].push_back(e);
    }
  }

  const std::string& path_id() const noexcept { return path_id_; }
  const std::string& title() const noexcept { return title_; }
  const std::vector<TreatmentNode>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const TreatmentNode* find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &nodes_[it->second];
  }

  const TreatmentNode& node(std::string_view id) const {
    if (const auto* n = find(id)) return *n;
    throw UnknownNode("no node '" + std::string(id) + "' in graph " + path_id_);
  }
  const TreatmentNode& node(const NodeId& id) const { return node(id.str()); }

  /// Edges leaving `id`, in document order.
  std::vector<const Edge*> out_edges(std::string_view id) const {
    std::vector<const Edge*> out;
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return out;
    for (auto e : out_[it->second]) out.push_back(&edges_[e]);
    return out;
  }

  std::vector<const Edge*> in_edges(std::string_view id) const {
    std::vector<const Edge*> out;
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return out;
    for (auto e : in_[it->second]) out.push_back(&edges_[e]);
    return out;
  }

  /// The Start node; throws UnknownNode when the graph has none.
  const TreatmentNode& start() const {
    for (const auto& n : nodes_) {
      if (n.kind == NodeKind::Start) return n;
    }
    throw UnknownNode("graph " + path_id_ + " has no Start node");
  }

 private:
  std::string path_id_;
  std::string title_;
  std::vector<TreatmentNode> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Branch label carried by a decision edge. YES/NO edges without an explicit
/// label stand for the first and second declared label respectively.
inline std::optional<std::string> branch_label(const Edge& e, const DecisionSpec& spec) {
  if (e.label) return e.label;
  if (e.relation == Relation::Yes && !spec.branch_labels.empty()) return spec.branch_labels[0];
  if (e.relation == Relation::No && spec.branch_labels.size() >= 2) return spec.branch_labels[1];
  return std::nullopt;
}

/// An Info node whose only incoming edges are INFO edges and which has no
/// flow edges of its own: side content rather than a treatment step.
inline bool is_attachment(const TreatmentGraph& g, const TreatmentNode& n) {
  if (n.kind != NodeKind::Info) return false;
  const auto in = g.in_edges(n.id.str());
  const auto out = g.out_edges(n.id.str());
  return !in.empty() &&
         std::all_of(in.begin(), in.end(), [](const Edge* e) { return e->relation == Relation::Info; }) &&
         std::none_of(out.begin(), out.end(), [](const Edge* e) { return is_flow(e->relation); });
}

namespace detail {

inline std::string node_loc(const std::string& id) { return "node:" + id; }
inline std::string edge_loc(const Edge& e) { return "edge:" + e.from.str() + "->" + e.to.str(); }

inline const char* relation_for_index(std::size_t index, std::size_t count) {
  if (count == 2) return index == 0 ? "YES" : "NO";
  return "OPTION";
}

}  // namespace detail

/// Checks every structural invariant. Returns an empty list iff the graph is
/// valid; violations are ordered by rule family, then document order.
inline std::vector<Violation> validate(const TreatmentGraph& g) {
  using detail::edge_loc;
  using detail::node_loc;
  std::vector<Violation> out;

  // Identity and Start uniqueness.
  std::set<std::string> seen;
  std::vector<std::string> starts;
  for (const auto& n : g.nodes()) {
    if (!seen.insert(n.id.str()).second) {
      out.push_back({"DuplicateNode", node_loc(n.id.str()), "node id declared more than once"});
    }
    if (n.kind == NodeKind::Start) starts.push_back(n.id.str());
  }
  if (starts.empty()) {
    out.push_back({"NoStart", "graph:" + g.path_id(), "graph has no Start node"});
  } else if (starts.size() > 1) {
    std::string ids;
    for (const auto& s : starts) ids += (ids.empty() ? "" : ", ") + s;
    out.push_back({"MultipleStart", "graph:" + g.path_id(), "more than one Start node: " + ids});
  }

  // Edge endpoints.
  for (const auto& e : g.edges()) {
    if (!g.find(e.from.str())) out.push_back({"DanglingEdge", edge_loc(e), "unknown source " + e.from.str()});
    if (!g.find(e.to.str())) out.push_back({"DanglingEdge", edge_loc(e), "unknown target " + e.to.str()});
    if (e.relation == Relation::Option && (!e.label || e.label->empty())) {
      out.push_back({"MissingEdgeLabel", edge_loc(e), "OPTION edge without label"});
    }
  }

  // Per-node rules.
  for (const auto& n : g.nodes()) {
    const auto loc = node_loc(n.id.str());
    const auto edges = g.out_edges(n.id.str());
    if (n.timer_seconds && *n.timer_seconds <= 0) {
      out.push_back({"NonPositiveTimer", loc, "timer_seconds must be > 0"});
    }

    if (n.kind == NodeKind::Decision) {
      if (!n.decision) {
        out.push_back({"MissingDecisionSpec", loc, "Decision node without decision spec"});
        continue;
      }
      const auto& spec = *n.decision;
      if (spec.branch_labels.empty() || spec.branch_labels.size() > 4) {
        out.push_back({"BranchLabelCount", loc,
                       "branch_labels must hold 1..4 labels, has " + std::to_string(spec.branch_labels.size())});
      }
      std::set<std::string> unique_labels(spec.branch_labels.begin(), spec.branch_labels.end());
      if (unique_labels.size() != spec.branch_labels.size()) {
        out.push_back({"DuplicateBranchLabel", loc, "branch_labels contains duplicates"});
      }
      if (spec.auto_fact && (!spec.comparator || !spec.threshold)) {
        out.push_back({"AutoFactIncomplete", loc, "auto_fact requires comparator and threshold"});
      }
      if (spec.auto_fact && spec.branch_labels.size() != 2) {
        out.push_back({"AutoFactNeedsTwoLabels", loc, "auto-resolved decisions need exactly two branch labels"});
      }
      std::map<std::string, int> covered;
      for (const Edge* e : edges) {
        if (e->relation == Relation::Next || e->relation == Relation::Jump) {
          out.push_back({"UnexpectedEdge", edge_loc(*e),
                         std::string(to_string(e->relation)) + " edge leaving a Decision node"});
          continue;
        }
        if (!is_branch(e->relation)) continue;
        const auto label = branch_label(*e, spec);
        if (!label || !unique_labels.count(*label)) {
          out.push_back({"UnexpectedBranchEdge", edge_loc(*e),
                         std::string(to_string(e->relation)) + " edge label '" + label.value_or("") +
                             "' is not a declared branch label"});
          continue;
        }
        if (++covered[*label] == 2) {
          out.push_back({"DuplicateBranchEdge", edge_loc(*e), "more than one edge for branch '" + *label + "'"});
        }
      }
      for (std::size_t i = 0; i < spec.branch_labels.size(); ++i) {
        const auto& label = spec.branch_labels[i];
        if (!covered.count(label)) {
          out.push_back({"MissingBranchEdge", loc,
                         "decision " + n.id.str() + " has no " +
                             detail::relation_for_index(i, spec.branch_labels.size()) + " edge for branch '" +
                             label + "'"});
        }
      }
      continue;
    }

    if (n.decision) {
      out.push_back({"UnexpectedDecisionSpec", loc, "decision spec on a non-Decision node"});
    }
    std::size_t flow = 0;
    for (const Edge* e : edges) {
      if (is_branch(e->relation)) {
        out.push_back({n.kind == NodeKind::End ? "EndNotTerminal" : "UnexpectedBranchEdge", edge_loc(*e),
                       std::string(to_string(e->relation)) + " edge leaving a non-Decision node"});
      } else if (is_flow(e->relation)) {
        ++flow;
        if (n.kind == NodeKind::End) {
          out.push_back({"EndNotTerminal", loc, "End node has outgoing " + std::string(to_string(e->relation))});
        }
      }
    }
    if (n.kind != NodeKind::End && flow != 1 && !(flow == 0 && is_attachment(g, n))) {
      out.push_back({"SuccessorCount", loc,
                     "expected exactly one outgoing NEXT or JUMP, found " + std::to_string(flow)});
    }
  }

  // Reachability from Start over every edge kind.
  if (starts.size() == 1) {
    std::set<std::string> reached{starts.front()};
    std::deque<std::string> queue{starts.front()};
    while (!queue.empty()) {
      const auto cur = queue.front();
      queue.pop_front();
      for (const Edge* e : g.out_edges(cur)) {
        if (g.find(e->to.str()) && reached.insert(e->to.str()).second) queue.push_back(e->to.str());
      }
    }
    for (const auto& n : g.nodes()) {
      if (!reached.count(n.id.str())) {
        out.push_back({"Unreachable", node_loc(n.id.str()), "not reachable from " + starts.front()});
      }
    }
  }

  // NEXT cycles that never pass a Decision node. JUMP edges may close loops.
  {
    enum class Mark { White, Grey, Black };
    std::map<std::string, Mark> mark;
    std::vector<std::string> stack;
    std::set<std::string> reported;
    auto next_target = [&](const std::string& id) -> std::optional<std::string> {
      for (const Edge* e : g.out_edges(id)) {
        if (e->relation != Relation::Next) continue;
        const auto* t = g.find(e->to.str());
        if (t && t->kind != NodeKind::Decision) return t->id.str();
      }
      return std::nullopt;
    };
    for (const auto& n : g.nodes()) {
      if (n.kind == NodeKind::Decision || mark[n.id.str()] != Mark::White) continue;
      // Each non-Decision node has at most one NEXT in a valid graph, so a
      // simple chain walk finds every cycle.
      std::string cur = n.id.str();
      stack.clear();
      while (true) {
        auto& m = mark[cur];
        if (m == Mark::Black) break;
        if (m == Mark::Grey) {
          auto pos = std::find(stack.begin(), stack.end(), cur);
          std::string cycle;
          for (auto it = pos; it != stack.end(); ++it) cycle += *it + "->";
          cycle += cur;
          if (reported.insert(cur).second) {
            out.push_back({"FlowCycle", node_loc(cur), "NEXT cycle without a Decision node: " + cycle});
          }
          break;
        }
        m = Mark::Grey;
        stack.push_back(cur);
        auto nxt = next_target(cur);
        if (!nxt) break;
        cur = *nxt;
      }
      for (const auto& s : stack) mark[s] = Mark::Black;
    }
  }

  return out;
}

/// Successor query: the unique flow target of a non-Decision node, the target
/// of the chosen branch of a Decision node, nothing for End.
inline std::vector<const TreatmentNode*> successors(const TreatmentGraph& g, std::string_view node,
                                                    const std::optional<std::string>& answer = std::nullopt) {
  const auto& n = g.node(node);
  std::vector<const TreatmentNode*> out;
  if (n.kind == NodeKind::Decision) {
    if (!answer) throw MissingAnswer("decision " + n.id.str() + " needs an answer");
    for (const Edge* e : g.out_edges(node)) {
      if (!is_branch(e->relation)) continue;
      if (branch_label(*e, *n.decision) == answer) {
        out.push_back(&g.node(e->to));
        return out;
      }
    }
    throw UnknownBranchLabel("'" + *answer + "' is not a branch of " + n.id.str());
  }
  if (answer) throw UnknownBranchLabel(n.id.str() + " is not a Decision node");
  if (n.kind == NodeKind::End) return out;
  for (const Edge* e : g.out_edges(node)) {
    if (e->relation == Relation::Next || e->relation == Relation::Jump) {
      out.push_back(&g.node(e->to));
      break;
    }
  }
  return out;
}

/// Long-form text for the information screen: the node's own info_text, else
/// the text of the node reached through its INFO edge.
inline std::optional<std::string> attached_info(const TreatmentGraph& g, std::string_view node) {
  const auto& n = g.node(node);
  if (n.info_text) return n.info_text;
  for (const Edge* e : g.out_edges(node)) {
    if (e->relation == Relation::Info) {
      return g.node(e->to).text;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON interchange

namespace detail {

using nlohmann::json;

inline const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::string require_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline std::optional<std::string> optional_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace detail

/// Parses the JSON interchange document and validates the result. Throws
/// ParseError for malformed documents and ValidationError listing every
/// violated invariant.
inline TreatmentGraph load_graph(std::string_view document) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("graph document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("graph document must be a JSON object");

  const auto path_id = detail::require_string(doc, "path_id", "graph");
  const auto title = detail::require_string(doc, "title", "graph");
  const auto& jnodes = detail::require(doc, "nodes", "graph");
  const auto& jedges = detail::require(doc, "edges", "graph");
  if (!jnodes.is_array()) throw ParseError("graph: 'nodes' must be an array");
  if (!jedges.is_array()) throw ParseError("graph: 'edges' must be an array");

  std::vector<Violation> id_violations;
  auto checked_id = [&](const std::string& raw, const std::string& where) -> std::optional<NodeId> {
    if (!NodeId::is_valid(raw)) {
      id_violations.push_back({"InvalidNodeId", where, "'" + raw + "' does not match [a-z0-9_-]{1,64}"});
      return std::nullopt;
    }
    return NodeId(raw);
  };

  std::vector<TreatmentNode> nodes;
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const auto& jn = jnodes[i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!jn.is_object()) throw ParseError(where + " must be an object");
    const auto raw_id = detail::require_string(jn, "id", where);
    const auto kind_s = detail::require_string(jn, "kind", where);
    const auto kind = parse_node_kind(kind_s);
    if (!kind) throw ParseError(where + ": unknown kind '" + kind_s + "'");
    auto text = detail::require_string(jn, "text", where);
    text::decode_utf8(text);

    TreatmentNode node{NodeId("x"), *kind, std::move(text), {}, {}, {}, {}};
    node.info_text = detail::optional_string(jn, "info_text", where);
    node.warning_text = detail::optional_string(jn, "warning_text", where);
    if (auto it = jn.find("timer_seconds"); it != jn.end() && !it->is_null()) {
      if (!it->is_number_integer()) throw ParseError(where + ": timer_seconds must be an integer");
      node.timer_seconds = it->get<long long>();
    }
    if (auto it = jn.find("decision"); it != jn.end() && !it->is_null()) {
      const auto& jd = *it;
      const std::string dwhere = where + ".decision";
      if (!jd.is_object()) throw ParseError(dwhere + " must be an object");
      DecisionSpec spec;
      spec.question = detail::require_string(jd, "question", dwhere);
      spec.auto_fact = detail::optional_string(jd, "auto_fact", dwhere);
      if (auto c = detail::optional_string(jd, "comparator", dwhere)) {
        spec.comparator = parse_comparator(*c);
        if (!spec.comparator) throw ParseError(dwhere + ": unknown comparator '" + *c + "'");
      }
      if (auto t = jd.find("threshold"); t != jd.end() && !t->is_null()) {
        if (!t->is_number()) throw ParseError(dwhere + ": threshold must be a number");
        spec.threshold = t->get<double>();
      }
      const auto& labels = detail::require(jd, "branch_labels", dwhere);
      if (!labels.is_array()) throw ParseError(dwhere + ": branch_labels must be an array");
      for (const auto& l : labels) {
        if (!l.is_string()) throw ParseError(dwhere + ": branch labels must be strings");
        spec.branch_labels.push_back(l.get<std::string>());
      }
      node.decision = std::move(spec);
    }
    if (auto id = checked_id(raw_id, detail::node_loc(raw_id))) {
      node.id = std::move(*id);
      nodes.push_back(std::move(node));
    }
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const auto& je = jedges[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!je.is_object()) throw ParseError(where + " must be an object");
    const auto from = detail::require_string(je, "from", where);
    const auto to = detail::require_string(je, "to", where);
    const auto rel_s = detail::require_string(je, "relation", where);
    const auto rel = parse_relation(rel_s);
    if (!rel) throw ParseError(where + ": unknown relation '" + rel_s + "'");
    auto label = detail::optional_string(je, "label", where);
    auto f = checked_id(from, "edge:" + from + "->" + to);
    auto t = checked_id(to, "edge:" + from + "->" + to);
    if (f && t) edges.push_back({std::move(*f), std::move(*t), *rel, std::move(label)});
  }

  if (!id_violations.empty()) throw ValidationError(std::move(id_violations));

  TreatmentGraph g(path_id, title, std::move(nodes), std::move(edges));
  if (auto violations = validate(g); !violations.empty()) throw ValidationError(std::move(violations));
  return g;
}

inline nlohmann::json to_json(const TreatmentGraph& g) {
  using detail::json;
  json nodes = json::array();
  for (const auto& n : g.nodes()) {
    json jn = {{"id", n.id.str()}, {"kind", to_string(n.kind)}, {"text", n.text}};
    if (n.info_text) jn["info_text"] = *n.info_text;
    if (n.timer_seconds) jn["timer_seconds"] = *n.timer_seconds;
    if (n.warning_text) jn["warning_text"] = *n.warning_text;
    if (n.decision) {
      json jd = {{"question", n.decision->question}, {"branch_labels", n.decision->branch_labels}};
      if (n.decision->auto_fact) jd["auto_fact"] = *n.decision->auto_fact;
      if (n.decision->comparator) jd["comparator"] = to_string(*n.decision->comparator);
      if (n.decision->threshold) jd["threshold"] = *n.decision->threshold;
      jn["decision"] = std::move(jd);
    }
    nodes.push_back(std::move(jn));
  }
  json edges = json::array();
  for (const auto& e : g.edges()) {
    json je = {{"from", e.from.str()}, {"to", e.to.str()}, {"relation", to_string(e.relation)}};
    if (e.label) je["label"] = *e.label;
    edges.push_back(std::move(je));
  }
  return json{{"path_id", g.path_id()}, {"title", g.title()}, {"nodes", nodes}, {"edges", edges}};
}

inline std::string serialize(const TreatmentGraph& g) { return to_json(g).dump(2); }

}  // namespace wearsim::graph
