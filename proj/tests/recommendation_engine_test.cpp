#include "wearsim/recommendation_engine.hpp"

#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "graph_gen.hpp"
#include "test_support.hpp"

using namespace wearsim;
using namespace wearsim::engine;
using wearsim::testing::read_data;

namespace {

std::shared_ptr<const TreatmentGraph> fixture(const std::string& name) {
  return std::make_shared<const TreatmentGraph>(graph::load_graph(read_data("graphs/" + name + ".json")));
}

const SimTime t0 = at_seconds(0);

}  // namespace

TEST(Session, StartsAtStartNode) {
  auto s = Session::start(fixture("bpr-demo"), PatientFacts{{"age_years", 40.0}}, t0);
  EXPECT_EQ(s.cursor(), "start");
  ASSERT_EQ(s.history().size(), 1u);
  EXPECT_EQ(s.history()[0], (HistoryEntry{"start", std::nullopt}));
  EXPECT_FALSE(s.pending());
  EXPECT_FALSE(s.timer_deadline());
}

TEST(Session, StartArmsTimer) {
  auto s = Session::start(fixture("bpr-reanimation"), {}, at_seconds(5));
  ASSERT_TRUE(s.timer_deadline());
  EXPECT_EQ(*s.timer_deadline(), at_seconds(125));
}

TEST(Session, NegativeAgeIsRejected) {
  EXPECT_THROW((PatientFacts{{"age_years", -1.0}}), FactError);
  EXPECT_THROW((PatientFacts{{"sex", std::string("Q")}}), FactError);
}

TEST(Session, AdvanceMovesToSuccessor) {
  auto s = Session::start(fixture("bpr-demo"), {}, t0);
  s.advance(t0);
  EXPECT_EQ(s.cursor(), "a1");
  auto pending = s.advance(t0);
  EXPECT_EQ(s.cursor(), "d1");
  ASSERT_TRUE(pending);
  EXPECT_EQ(pending->kind, PendingKind::Prompt);
  EXPECT_EQ(pending->options, (std::vector<std::string>{"Ja", "Nein"}));
}

TEST(Session, AutoFactProducesApproval) {
  auto s = Session::start(fixture("bpr-analgesie"), PatientFacts{{"age_years", 40.0}}, t0);
  s.advance(t0);
  s.advance(t0);
  ASSERT_EQ(s.cursor(), "d1");
  auto p = s.advance(t0);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->kind, PendingKind::Approval);
  EXPECT_EQ(p->auto_choice, "Erwachsener");
  ASSERT_TRUE(p->evidence);
  EXPECT_NE(p->evidence->find("age_years=40"), std::string::npos);
}

TEST(Session, MissingFactProducesPrompt) {
  auto s = Session::start(fixture("bpr-analgesie"), {}, t0);
  s.advance(t0);
  s.advance(t0);
  auto p = s.advance(t0);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->kind, PendingKind::Prompt);
  EXPECT_EQ(p->options, (std::vector<std::string>{"Erwachsener", "Kind"}));
  EXPECT_FALSE(p->auto_choice);
}

TEST(Session, BoundaryAgeIsChildAndFlagged) {
  auto s = Session::start(fixture("bpr-analgesie"), PatientFacts{{"age_years", 13.0}}, t0);
  s.advance(t0);
  s.advance(t0);
  const auto& p = s.pending();
  ASSERT_TRUE(p);
  EXPECT_EQ(p->auto_choice, "Kind");
  EXPECT_NE(p->evidence->find("Grenzwert"), std::string::npos);
}

// Frozen truth table for comparator evaluation at threshold 13 with the
// boundary values 12, 13, 14. true selects the first branch label.
TEST(Session, ComparatorTruthTable) {
  struct Row {
    Comparator cmp;
    bool at12, at13, at14;
  };
  const Row table[] = {
      {Comparator::GT, false, false, true}, {Comparator::GE, false, true, true},
      {Comparator::LT, true, false, false}, {Comparator::LE, true, true, false},
      {Comparator::EQ, false, true, false},
  };
  for (const auto& row : table) {
    graph::DecisionSpec spec{"q", "age_years", row.cmp, 13.0, {"A", "B"}};
    const bool expected[] = {row.at12, row.at13, row.at14};
    for (int i = 0; i < 3; ++i) {
      const auto r = resolve_decision(spec, PatientFacts{{"age_years", 12.0 + i}});
      ASSERT_TRUE(r);
      EXPECT_EQ(r->first, expected[i] ? "A" : "B") << to_string(row.cmp) << " at " << 12 + i;
    }
  }
  graph::DecisionSpec spec{"q", "age_years", Comparator::GT, 13.0, {"A", "B"}};
  EXPECT_FALSE(resolve_decision(spec, PatientFacts{{"weight", 3.0}}));
}

TEST(Session, AnswerPromptAndErrors) {
  auto s = Session::start(fixture("bpr-demo"), {}, t0);
  EXPECT_THROW(s.answer("Ja", t0), NoPending);
  s.advance(t0);
  s.advance(t0);
  EXPECT_THROW(s.answer("Vielleicht", t0), UnknownBranchLabel);
  s.answer("Ja", t0);
  EXPECT_EQ(s.cursor(), "a2");
  EXPECT_FALSE(s.pending());
  EXPECT_EQ(s.history().back(), (HistoryEntry{"a2", std::string("Ja")}));
}

TEST(Session, ApprovingAutoChoiceConfirmsIt) {
  auto s = Session::start(fixture("bpr-analgesie"), PatientFacts{{"age_years", 8.0}}, t0);
  s.advance(t0);
  s.advance(t0);
  s.answer(*s.pending()->auto_choice, t0);
  EXPECT_EQ(s.cursor(), "a3");
  auto notice = s.take_node_notice();
  ASSERT_TRUE(notice);
  EXPECT_EQ(notice->code, kNodeHintCode);
  EXPECT_FALSE(s.take_node_notice());
}

TEST(Session, OverrideTurnsApprovalIntoPrompt) {
  auto s = Session::start(fixture("bpr-analgesie"), PatientFacts{{"age_years", 40.0}}, t0);
  s.advance(t0);
  s.advance(t0);
  s.override_approval(t0);
  EXPECT_EQ(s.pending()->kind, PendingKind::Prompt);
  s.answer("Kind", t0);
  EXPECT_EQ(s.cursor(), "a3");
  EXPECT_THROW(s.override_approval(t0), NoPending);
}

TEST(Session, StepBack) {
  auto s = Session::start(fixture("bpr-demo"), {}, t0);
  EXPECT_THROW(s.step_back(t0), AtStart);
  s.advance(t0);
  s.advance(t0);
  s.step_back(t0);
  EXPECT_EQ(s.cursor(), "a1");
  EXPECT_FALSE(s.pending());
  s.advance(t0);
  EXPECT_EQ(s.cursor(), "d1");
  EXPECT_TRUE(s.replays());
}

TEST(Session, StepBackOntoDecisionPreviewsRedo) {
  auto s = Session::start(fixture("bpr-demo"), {}, t0);
  s.advance(t0);
  s.advance(t0);
  s.answer("Nein", t0);
  s.step_back(t0);
  EXPECT_EQ(s.cursor(), "d1");
  EXPECT_EQ(s.view().next, "Atemwege freimachen");
  ASSERT_TRUE(s.pending());
  EXPECT_EQ(s.pending()->kind, PendingKind::Prompt);
}

TEST(Session, View) {
  auto s = Session::start(fixture("bpr-demo"), {}, t0);
  s.advance(t0);
  auto v = s.view();
  EXPECT_EQ(v.path_title, "Demo-Behandlungspfad");
  EXPECT_EQ(v.previous, "Einsatzbeginn");
  EXPECT_EQ(v.current, "Eigenschutz, Patient lagern");
  EXPECT_EQ(v.next, "Patient ansprechbar?");

  s.advance(t0);
  v = s.view();
  EXPECT_FALSE(v.next);
  ASSERT_TRUE(v.pending);
  EXPECT_EQ(v.pending->kind, PendingKind::Prompt);

  s.answer("Ja", t0);
  s.advance(t0);
  s.advance(t0);
  EXPECT_EQ(s.cursor(), "end");
  EXPECT_FALSE(s.view().next);
  EXPECT_THROW(s.advance(t0), AtEnd);
}

TEST(Session, ApprovalViewShowsAutoTarget) {
  auto s = Session::start(fixture("bpr-analgesie"), PatientFacts{{"age_years", 40.0}}, t0);
  s.advance(t0);
  s.advance(t0);
  EXPECT_EQ(s.view().next, "Analgesie Erwachsene nach SOP");
}

TEST(Session, TimerIsEdgeTriggered) {
  auto s = Session::start(fixture("bpr-reanimation"), {}, t0);
  EXPECT_FALSE(s.poll_timer(at_seconds(119)));
  auto w = s.poll_timer(at_seconds(130));  // deadline 10 s ago
  ASSERT_TRUE(w);
  EXPECT_EQ(w->code, kTimerOverdueCode);
  EXPECT_EQ(w->node, "start");
  EXPECT_FALSE(s.poll_timer(at_seconds(131)));

  auto quiet = Session::start(fixture("bpr-demo"), {}, t0);
  EXPECT_FALSE(quiet.poll_timer(at_seconds(1000)));
}

TEST(Session, EventLogLines) {
  auto s = Session::start(fixture("bpr-demo"), {}, t0);
  s.advance(at_seconds(1.5));
  s.advance(at_seconds(2));
  s.answer("Ja", at_seconds(3));
  ASSERT_EQ(s.events().size(), 4u);
  EXPECT_EQ(to_json_line(s.events()[0]), R"({"t":0,"op":"start","cursor":"start"})");
  EXPECT_EQ(to_json_line(s.events()[1]), R"({"t":1500,"op":"advance","cursor":"a1"})");
  EXPECT_EQ(to_json_line(s.events()[3]), R"({"t":3000,"op":"answer","cursor":"a2","label":"Ja"})");
}

namespace {

// Shadow model of navigation computed from the raw edge list only.
struct Shadow {
  const TreatmentGraph* g;
  std::vector<std::string> path;

  std::string next_of(const std::string& id) const {
    for (const auto& e : g->edges()) {
      if (e.from.str() == id && (e.relation == graph::Relation::Next || e.relation == graph::Relation::Jump)) {
        return e.to.str();
      }
    }
    return {};
  }

  std::string branch_of(const std::string& id, const std::string& label) const {
    const auto& labels = g->node(id).decision->branch_labels;
    for (const auto& e : g->edges()) {
      if (e.from.str() != id) continue;
      std::string l;
      if (e.label) {
        l = *e.label;
      } else if (e.relation == graph::Relation::Yes) {
        l = labels[0];
      } else if (e.relation == graph::Relation::No) {
        l = labels[1];
      } else {
        continue;
      }
      if (l == label) return e.to.str();
    }
    return {};
  }
};

void random_walks(const std::shared_ptr<const TreatmentGraph>& g, std::mt19937& rng, int walks) {
  for (int w = 0; w < walks; ++w) {
    PatientFacts facts;
    if (rng() % 2) facts.set("age_years", static_cast<double>(rng() % 90));
    auto s = Session::start(g, facts, t0);
    Shadow shadow{g.get(), {g->start().id.str()}};
    for (int step = 0; step < 40; ++step) {
      const auto& node = s.cursor_node();
      const int op = static_cast<int>(rng() % 10);
      if (op < 2 && s.history().size() > 1) {
        s.step_back(t0);
        shadow.path.pop_back();
      } else if (node.kind == NodeKind::Decision) {
        const auto& p = s.pending();
        ASSERT_TRUE(p);
        std::string label = p->options[rng() % p->options.size()];
        if (p->kind == PendingKind::Approval && rng() % 2) label = *p->auto_choice;
        const auto before = s.view();
        s.answer(label, t0);
        shadow.path.push_back(shadow.branch_of(shadow.path.back(), label));
        if (before.next && before.pending && before.pending->kind == PendingKind::Approval &&
            label == *before.pending->auto_choice) {
          EXPECT_EQ(*before.next, s.cursor_node().text);
        }
      } else if (node.kind == NodeKind::End) {
        EXPECT_THROW(s.advance(t0), AtEnd);
      } else {
        const auto before = s.view();
        const auto from = s.cursor();
        s.advance(t0);
        shadow.path.push_back(shadow.next_of(shadow.path.back()));
        ASSERT_TRUE(before.next);
        EXPECT_EQ(*before.next, s.cursor_node().text);
        // advance then step_back is the identity on the cursor for plain steps.
        s.step_back(t0);
        EXPECT_EQ(s.cursor(), from);
        s.advance(t0);
      }
      ASSERT_TRUE(s.replays());
      ASSERT_EQ(s.cursor(), shadow.path.back());
      ASSERT_EQ(s.history().size(), shadow.path.size());
      EXPECT_EQ(s.pending().has_value(), s.cursor_node().kind == NodeKind::Decision);
    }
  }
}

}  // namespace

TEST(SessionProperty, RandomWalksOnFixtures) {
  std::mt19937 rng(7);
  for (const char* name : {"bpr-demo", "bpr-analgesie", "bpr-reanimation"}) {
    SCOPED_TRACE(name);
    random_walks(fixture(name), rng, 100);
  }
}

TEST(SessionProperty, RandomWalksOnRandomGraphs) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto g = std::make_shared<const TreatmentGraph>(wearsim::testing::random_graph(rng, 4 + i % 20));
    random_walks(g, rng, 3);
  }
}
