#pragma once

// Navigation session over a treatment graph.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wearsim/error.hpp"
#include "wearsim/patient_facts.hpp"
#include "wearsim/sim_clock.hpp"
#include "wearsim/treatment_graph.hpp"
#include "wearsim/warning_event.hpp"

namespace wearsim::engine {

using graph::NodeKind;
using graph::TreatmentGraph;
using graph::TreatmentNode;

enum class PendingKind { Prompt, Approval };

/// Input the session waits for at a Decision node. An Approval carries the
/// branch chosen from patient facts and the facts used.
struct PendingInteraction {
  PendingKind kind = PendingKind::Prompt;
  std::string question;
  std::vector<std::string> options;
  std::optional<std::string> auto_choice;
  std::optional<std::string> evidence;

  friend bool operator==(const PendingInteraction&, const PendingInteraction&) = default;
};

struct HistoryEntry {
  std::string node;
  /// Branch label that led to this node; empty for Start and non-Decision steps.
  std::optional<std::string> label;

  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// Previous (red), current (black) and next (green) steps plus the path title.
struct TreatmentView {
  std::string path_title;
  std::optional<std::string> previous;
  std::string current;
  std::optional<std::string> next;
  std::optional<PendingInteraction> pending;

  friend bool operator==(const TreatmentView&, const TreatmentView&) = default;
};

struct SessionEvent {
  SimTime t;
  std::string op;
  std::string cursor;
  std::optional<std::string> label;

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

/// `{"t":<ms>,"op":...,"cursor":...,"label":...}`, label omitted when absent.
inline std::string to_json_line(const SessionEvent& e) {
  nlohmann::ordered_json j;
  j["t"] = millis(e.t);
  j["op"] = e.op;
  j["cursor"] = e.cursor;
  if (e.label) j["label"] = *e.label;
  return j.dump();
}

/// Evaluates an auto-resolvable decision. Returns nothing when the decision
/// has no auto_fact or the fact is not a known number.
inline std::optional<std::pair<std::string, std::string>> resolve_decision(const graph::DecisionSpec& spec,
                                                                           const PatientFacts& facts) {
  if (!spec.auto_fact || !spec.comparator || !spec.threshold || spec.branch_labels.size() != 2) return std::nullopt;
  const auto value = facts.number(*spec.auto_fact);
  if (!value) return std::nullopt;
  const bool holds = compare(*value, *spec.comparator, *spec.threshold);
  const auto& choice = spec.branch_labels[holds ? 0 : 1];
  std::string evidence = *spec.auto_fact + "=" + format_fact(*value) + " " + std::string(symbol(*spec.comparator)) +
                         " " + format_fact(*spec.threshold) + (holds ? " ja" : " nein") + " => " + choice;
  if (*value == *spec.threshold) evidence += " (Grenzwert: " + *spec.auto_fact + " = Schwelle)";
  return std::make_pair(choice, evidence);
}

/// Single-writer navigation state: cursor, full history, pending decision
/// input, patient facts and the step timer.
class Session {
 public:
  static Session start(std::shared_ptr<const TreatmentGraph> graph, PatientFacts facts, SimTime now) {
    if (!graph) throw InconsistentInput("session needs a graph");
    if (auto age = facts.find("age_years")) {
      const auto* n = std::get_if<double>(age);
      if (!n || *n < 0) throw FactError("age_years must be a number >= 0");
    }
    Session s(std::move(graph), std::move(facts));
    const auto& start = s.graph_->start();
    s.history_.push_back({start.id.str(), std::nullopt});
    s.enter(start, now);
    s.log(now, "start", std::nullopt);
    return s;
  }

  const TreatmentGraph& graph() const { return *graph_; }
  std::shared_ptr<const TreatmentGraph> graph_ptr() const { return graph_; }
  const std::string& cursor() const { return history_.back().node; }
  const TreatmentNode& cursor_node() const { return graph_->node(cursor()); }
  const std::vector<HistoryEntry>& history() const { return history_; }
  const std::optional<PendingInteraction>& pending() const { return pending_; }
  const PatientFacts& facts() const { return facts_; }
  const std::optional<SimTime>& timer_deadline() const { return timer_deadline_; }
  const std::vector<SessionEvent>& events() const { return events_; }
  const std::optional<HistoryEntry>& redo() const { return redo_; }

  /// Moves past a non-Decision step; at a Decision, (re)computes and returns
  /// the interaction the step needs.
  std::optional<PendingInteraction> advance(SimTime now) {
    const auto& node = cursor_node();
    if (node.kind == NodeKind::End) throw AtEnd("treatment path already finished at " + node.id.str());
    if (node.kind == NodeKind::Decision) {
      refresh_pending();
      log(now, pending_->kind == PendingKind::Approval ? "approval" : "prompt", std::nullopt);
      return pending_;
    }
    const auto next = graph::successors(*graph_, node.id.str());
    if (next.empty()) throw AtEnd("no successor after " + node.id.str());
    move_to(*next.front(), std::nullopt, now);
    log(now, "advance", std::nullopt);
    return pending_;
  }

  /// Resolves the pending decision with `label`.
  void answer(std::string label, SimTime now) {
    if (!pending_) throw NoPending("no decision is waiting for input at " + cursor());
    const auto& opts = pending_->options;
    if (std::find(opts.begin(), opts.end(), label) == opts.end()) {
      throw UnknownBranchLabel("'" + label + "' is not an option of " + cursor());
    }
    const auto next = graph::successors(*graph_, cursor(), label);
    move_to(*next.front(), label, now);
    log(now, "answer", label);
  }

  /// Turns a pending Approval into a plain Prompt so the clinician picks the
  /// branch manually.
  void override_approval(SimTime now) {
    if (!pending_ || pending_->kind != PendingKind::Approval) throw NoPending("no approval is pending");
    pending_->kind = PendingKind::Prompt;
    pending_->auto_choice.reset();
    pending_->evidence.reset();
    log(now, "override", std::nullopt);
  }

  void step_back(SimTime now) {
    if (history_.size() <= 1) throw AtStart("already at the start of the treatment path");
    redo_ = history_.back();
    history_.pop_back();
    pending_.reset();
    if (cursor_node().kind == NodeKind::Decision) refresh_pending();
    log(now, "back", std::nullopt);
  }

  void set_fact(const std::string& key, FactValue value, SimTime now) {
    facts_.set(key, std::move(value));
    if (cursor_node().kind == NodeKind::Decision) refresh_pending();
    log(now, "fact", key);
  }

  TreatmentView view() const {
    TreatmentView v;
    v.path_title = graph_->title();
    if (history_.size() >= 2) v.previous = graph_->node(history_[history_.size() - 2].node).text;
    const auto& node = cursor_node();
    v.current = node.text;
    v.pending = pending_;
    if (node.kind == NodeKind::Decision) {
      std::optional<std::string> label;
      if (pending_ && pending_->kind == PendingKind::Approval) {
        label = pending_->auto_choice;
      } else if (redo_ && redo_->label) {
        label = redo_->label;
      }
      if (label) v.next = graph::successors(*graph_, node.id.str(), label).front()->text;
    } else if (node.kind != NodeKind::End) {
      const auto next = graph::successors(*graph_, node.id.str());
      if (!next.empty()) v.next = next.front()->text;
    }
    return v;
  }

  /// Fires once when the step timer has expired, then disarms it.
  std::optional<WarningEvent> poll_timer(SimTime now) {
    if (!timer_deadline_ || now < *timer_deadline_) return std::nullopt;
    timer_deadline_.reset();
    const auto& node = graph_->node(*timer_node_);
    log(now, "timer", std::nullopt);
    return WarningEvent{kTimerOverdueCode, "Zeit abgelaufen: " + node.text, node.id.str()};
  }

  /// Hint text of the node most recently entered, handed out once.
  std::optional<WarningEvent> take_node_notice() { return std::exchange(notice_, std::nullopt); }

  /// True when re-executing the recorded labels from Start reaches the cursor.
  bool replays() const {
    if (history_.empty() || history_.front().node != graph_->start().id.str()) return false;
    for (std::size_t i = 1; i < history_.size(); ++i) {
      const auto& prev = graph_->node(history_[i - 1].node);
      const auto label = prev.kind == NodeKind::Decision ? history_[i].label : std::nullopt;
      if (prev.kind == NodeKind::Decision && !label) return false;
      if (prev.kind != NodeKind::Decision && history_[i].label) return false;
      const auto next = graph::successors(*graph_, prev.id.str(), label);
      if (next.empty() || next.front()->id.str() != history_[i].node) return false;
    }
    return true;
  }

 private:
  Session(std::shared_ptr<const TreatmentGraph> graph, PatientFacts facts)
      : graph_(std::move(graph)), facts_(std::move(facts)) {}

  void move_to(const TreatmentNode& node, std::optional<std::string> label, SimTime now) {
    history_.push_back({node.id.str(), std::move(label)});
    redo_.reset();
    enter(node, now);
  }

  void enter(const TreatmentNode& node, SimTime now) {
    pending_.reset();
    if (node.timer_seconds) {
      timer_deadline_ = now + std::chrono::seconds(*node.timer_seconds);
      timer_node_ = node.id.str();
    }
    if (node.warning_text) notice_ = WarningEvent{kNodeHintCode, *node.warning_text, node.id.str()};
    if (node.kind == NodeKind::Decision) refresh_pending();
  }

  void refresh_pending() {
    const auto& node = cursor_node();
    const auto& spec = *node.decision;
    PendingInteraction p;
    p.question = spec.question;
    p.options = spec.branch_labels;
    if (auto resolved = resolve_decision(spec, facts_)) {
      p.kind = PendingKind::Approval;
      p.auto_choice = resolved->first;
      p.evidence = resolved->second;
    }
    pending_ = std::move(p);
  }

  void log(SimTime now, std::string op, std::optional<std::string> label) {
    events_.push_back({now, std::move(op), cursor(), std::move(label)});
  }

  std::shared_ptr<const TreatmentGraph> graph_;
  PatientFacts facts_;
  std::vector<HistoryEntry> history_;
  std::optional<PendingInteraction> pending_;
  std::optional<HistoryEntry> redo_;
  std::optional<SimTime> timer_deadline_;
  std::optional<std::string> timer_node_;
  std::optional<WarningEvent> notice_;
  std::vector<SessionEvent> events_;
};

}  // namespace wearsim::engine
