#pragma once

// Random valid treatment graphs for property tests.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "wearsim/treatment_graph.hpp"

namespace wearsim::testing {

inline graph::TreatmentGraph random_graph(std::mt19937& rng, int flow_nodes) {
  using namespace graph;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto id = [](int i) { return NodeId("n" + std::to_string(i)); };

  const int n = std::max(flow_nodes, 3);
  std::vector<TreatmentNode> nodes;
  std::vector<Edge> edges;
  std::set<int> targeted;  // nodes already entered by an edge from an earlier node
  std::vector<int> decisions;
  int info_count = 0;

  for (int i = 0; i < n; ++i) {
    TreatmentNode node{id(i), NodeKind::Action, "Schritt " + std::to_string(i), {}, {}, {}, {}};
    if (i == 0) {
      node.kind = NodeKind::Start;
    } else if (i == n - 1) {
      node.kind = NodeKind::End;
    } else {
      const int roll = pick(0, 9);
      if (roll < 4 && i + 2 < n) {
        node.kind = NodeKind::Decision;
      } else if (roll < 5 && !decisions.empty() && targeted.count(i + 1)) {
        node.kind = NodeKind::Jump;
      } else if (roll < 6) {
        node.kind = NodeKind::Info;
      }
    }
    if (pick(0, 4) == 0) node.timer_seconds = pick(1, 300);
    if (pick(0, 5) == 0) node.info_text = "Hinweis " + std::to_string(i);

    switch (node.kind) {
      case NodeKind::Decision: {
        const int fan = pick(2, 4);
        DecisionSpec spec;
        spec.question = "Frage " + std::to_string(i) + "?";
        for (int k = 0; k < fan; ++k) spec.branch_labels.push_back("Option " + std::to_string(k));
        const bool yes_no = fan == 2 && pick(0, 1) == 0;
        if (fan == 2 && pick(0, 2) == 0) {
          spec.auto_fact = "age_years";
          spec.comparator = static_cast<Comparator>(pick(0, 4));
          spec.threshold = pick(0, 80);
        }
        for (int k = 0; k < fan; ++k) {
          const int target = k == 0 ? i + 1 : pick(i + 1, n - 1);
          targeted.insert(target);
          if (yes_no) {
            edges.push_back({id(i), id(target), k == 0 ? Relation::Yes : Relation::No, std::nullopt});
          } else {
            edges.push_back({id(i), id(target), Relation::Option, spec.branch_labels[k]});
          }
        }
        node.decision = spec;
        decisions.push_back(i);
        break;
      }
      case NodeKind::Jump: {
        const int back = decisions[static_cast<std::size_t>(pick(0, static_cast<int>(decisions.size()) - 1))];
        edges.push_back({id(i), id(back), Relation::Jump, std::nullopt});
        break;
      }
      case NodeKind::End:
        break;
      default:
        edges.push_back({id(i), id(i + 1), Relation::Next, std::nullopt});
        targeted.insert(i + 1);
        break;
    }
    if (node.kind != NodeKind::Jump && pick(0, 6) == 0) {
      const auto info_id = NodeId("info" + std::to_string(info_count++));
      nodes.push_back({info_id, NodeKind::Info, "Zusatzinformation zu " + std::to_string(i), {}, {}, {}, {}});
      edges.push_back({id(i), info_id, Relation::Info, std::nullopt});
    }
    nodes.push_back(std::move(node));
  }
  return TreatmentGraph("random", "Zufallspfad", std::move(nodes), std::move(edges));
}

}  // namespace wearsim::testing
