#include "wearsim/display_controller.hpp"

#include <gtest/gtest.h>

#include <queue>
#include <random>

#include "ui_fixtures.hpp"
#include "wearsim/geometry_audit.hpp"

using namespace wearsim;
using namespace wearsim::ui;
using wearsim::testing::load_fixture;

namespace {

const Element* element(const FrameState& f, std::string_view id) { return f.find_element(id); }

std::string text_of(const FrameState& f, std::string_view id) {
  const auto* e = element(f, id);
  if (!e || !e->label) return "<missing " + std::string(id) + ">";
  std::string s;
  for (const auto& l : e->label->lines) s += (s.empty() ? "" : " ") + l;
  return s;
}

std::set<std::string> button_ids(const FrameState& f) {
  std::set<std::string> ids;
  for (const auto* b : f.active_buttons()) ids.insert(b->id);
  return ids;
}

struct Rig {
  bus::BusRegion bus{defaults::default_memory_map()};
  DisplayController ctl;

  explicit Rig(PatientFacts facts = wearsim::testing::sample_facts())
      : ctl(bus, config(), std::move(facts)) {}

  static ControllerConfig config() {
    ControllerConfig c;
    for (const auto& n : wearsim::testing::fixture_names()) c.graphs.push_back(load_fixture(n));
    return c;
  }
};

TouchEvent up_at(const Rect& r) { return TouchEvent{r.cx(), r.cy(), TouchAction::Up, 0}; }

}  // namespace

// ---------------------------------------------------------------------------
// Transition table

TEST(TransitionTable, Examples) {
  const auto& t = TransitionTable::standard();
  EXPECT_EQ(t.transition(ScreenId::Treatment, "menu"), ScreenId::MainMenu);
  EXPECT_EQ(t.transition(ScreenId::SituationSelect, "accept"), ScreenId::Treatment);
  for (auto s : kAllScreens) {
    EXPECT_EQ(t.transition(s, "warning"), ScreenId::Warning) << to_string(s);
    EXPECT_EQ(t.transition(ScreenId::Warning, "dismiss", s), s);
  }
  EXPECT_THROW(t.transition(ScreenId::MainMenu, "next"), InvalidTransition);
  EXPECT_THROW(t.transition(ScreenId::Warning, "dismiss"), InvalidTransition);
  EXPECT_FALSE(t.allows(ScreenId::Warning, "menu"));
  EXPECT_TRUE(t.allows(ScreenId::Alarms, "menu"));
}

TEST(TransitionTable, MainMenuReachableFromEveryScreen) {
  const auto& t = TransitionTable::standard();
  const auto good = t.screens_reaching(ScreenId::MainMenu);
  for (auto s : kAllScreens) EXPECT_TRUE(good.count(s)) << to_string(s);

  // Independent check: BFS over button events, treating dismiss as a
  // return to any screen a warning can preempt.
  for (auto from : kAllScreens) {
    std::set<ScreenId> seen{from};
    std::queue<ScreenId> q;
    q.push(from);
    while (!q.empty()) {
      const auto s = q.front();
      q.pop();
      for (const auto& ev : t.events(s)) {
        if (is_system_event(ev)) continue;
        std::vector<ScreenId> targets;
        const auto* rule = t.lookup(s, ev);
        if (rule->to == "@return") {
          for (auto p : kAllScreens) {
            if (!t.returns(p)) targets.push_back(p);
          }
        } else {
          targets.push_back(t.transition(s, ev));
        }
        for (auto n : targets) {
          if (seen.insert(n).second) q.push(n);
        }
      }
    }
    EXPECT_TRUE(seen.count(ScreenId::MainMenu)) << to_string(from);
  }
}

TEST(TransitionTable, ParseErrors) {
  EXPECT_THROW(TransitionTable::parse("Nowhere next MainMenu\n"), ParseError);
  EXPECT_THROW(TransitionTable::parse("MainMenu x Treatment\nMainMenu x Alarms\n"), ParseError);
  EXPECT_THROW(TransitionTable::parse("MainMenu x\n"), ParseError);
  const auto t = TransitionTable::parse("~ menu MainMenu\nMainMenu menu Alarms\n");
  EXPECT_EQ(t.transition(ScreenId::MainMenu, "menu"), ScreenId::Alarms);
  EXPECT_EQ(t.transition(ScreenId::Settings, "menu"), ScreenId::MainMenu);
  EXPECT_FALSE(t.allows(ScreenId::Warning, "menu"));
}

// ---------------------------------------------------------------------------
// compose

TEST(Compose, TreatmentShowsPreviousCurrentNext) {
  auto s = engine::Session::start(load_fixture("bpr-demo"), {}, SimTime{});
  s.advance(SimTime{});
  ComposeInput in;
  in.screen = ScreenId::Treatment;
  in.session = &s;
  const auto f = compose(in);
  EXPECT_EQ(text_of(f, "previous"), "Einsatzbeginn");
  EXPECT_EQ(element(f, "previous")->color, colors::red);
  EXPECT_EQ(text_of(f, "current"), "Eigenschutz, Patient lagern");
  EXPECT_EQ(element(f, "current")->color, colors::black);
  EXPECT_EQ(text_of(f, "next"), "Patient ansprechbar?");
  EXPECT_EQ(element(f, "next")->color, colors::green);
  EXPECT_EQ(element(f, "title")->label->lines, (std::vector<std::string>{"Demo-", "Behandlungspfad"}));
  EXPECT_EQ(button_ids(f), (std::set<std::string>{"back", "next", "info", "monitor", "menu"}));
  EXPECT_EQ(f.find_button("info")->rect, side_button(Corner::BottomLeft));
  EXPECT_EQ(f.find_button("monitor")->rect, side_button(Corner::BottomRight));
  ASSERT_TRUE(f.header);
}

TEST(Compose, PromptOptionsTakeSideButtons) {
  auto s = engine::Session::start(load_fixture("bpr-reanimation"), {}, SimTime{});
  s.advance(SimTime{});
  s.advance(SimTime{});
  ASSERT_EQ(s.cursor(), "d1");
  ComposeInput in;
  in.screen = ScreenId::Treatment;
  in.session = &s;
  const auto f = compose(in);
  EXPECT_EQ(f.find_button("option:0")->rect, side_button(Corner::TopRight));
  EXPECT_EQ(f.find_button("option:1")->rect, side_button(Corner::BottomRight));
  EXPECT_EQ(f.find_button("option:2")->rect, side_button(Corner::BottomLeft));
  EXPECT_EQ(f.find_button("back")->rect, side_button(Corner::TopLeft));
  EXPECT_FALSE(f.find_button("next"));
  EXPECT_EQ(f.find_button("option:0")->label->lines, std::vector<std::string>{"VF/pVT"});
}

TEST(Compose, PatientMonitorFields) {
  ComposeInput in;
  in.screen = ScreenId::PatientMonitor;
  in.vitals = {{"spo2", 97}, {"pulse", 72}};
  in.facts = PatientFacts{{"name", std::string("Max Muster")}, {"sex", std::string("M")}, {"age_years", 40.0}};
  const auto f = compose(in);
  EXPECT_EQ(element(f, "vital:spo2")->value, "97");
  EXPECT_EQ(element(f, "vital:pulse")->value, "72");
  EXPECT_EQ(element(f, "fact:name")->value, "Max Muster");
  EXPECT_EQ(element(f, "fact:sex")->value, "M");
  EXPECT_EQ(element(f, "fact:age")->value, "40");
  EXPECT_EQ(element(f, "vital:bp")->value, "--/--");
  EXPECT_EQ(element(f, "vital:spo2")->kind, ElementKind::Vitals);
}

TEST(Compose, MassiveInfoSmallestFontOneButtonNoHeader) {
  auto s = engine::Session::start(load_fixture("bpr-reanimation"), {}, SimTime{});
  s.advance(SimTime{});
  ComposeInput in;
  in.screen = ScreenId::MassiveInfo;
  in.session = &s;
  const auto f = compose(in);
  EXPECT_FALSE(f.header);
  ASSERT_EQ(f.active_buttons().size(), 1u);
  EXPECT_EQ(f.active_buttons()[0]->id, "back");
  const auto* e = element(f, "info");
  ASSERT_TRUE(e && e->label);
  EXPECT_EQ(e->label->size, 10);
  EXPECT_EQ(text_of(f, "info"), "Druckpunkt Brustbeinmitte, Frequenz 100 bis 120 pro Minute");
}

TEST(Compose, SituationSelectHasGreenAccept) {
  ComposeInput in;
  in.screen = ScreenId::SituationSelect;
  in.detection = situation::top_k(
      situation::mock_detect(VitalsSample{0.0, 80, 120, 125, 80, 14}, defaults::default_detection_rules()), 5);
  const auto f = compose(in);
  EXPECT_EQ(f.find_button("accept")->role, ColorRole::Green);
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(element(f, "row:" + std::to_string(i))) << i;
  EXPECT_EQ(element(f, "row:0")->value, "sda");
  EXPECT_EQ(text_of(f, "row:0"), "1. Erkr. der Atemwege 31%");
}

TEST(Compose, InconsistentInputs) {
  ComposeInput in;
  in.screen = ScreenId::Treatment;
  EXPECT_THROW(compose(in), InconsistentInput);
  in.screen = ScreenId::MassiveInfo;
  EXPECT_THROW(compose(in), InconsistentInput);
  in.screen = ScreenId::Warning;
  in.base = ScreenId::MainMenu;
  EXPECT_THROW(compose(in), InconsistentInput);
  auto s = engine::Session::start(load_fixture("bpr-demo"), {}, SimTime{});
  in.session = &s;
  in.screen = ScreenId::Approval;
  EXPECT_THROW(compose(in), InconsistentInput);
}

TEST(Compose, PureFunctionOfInputs) {
  auto s = engine::Session::start(load_fixture("bpr-analgesie"), wearsim::testing::sample_facts(), SimTime{});
  for (const auto& in : wearsim::testing::inputs_for(s)) {
    EXPECT_EQ(compose(in), compose(in));
    EXPECT_EQ(digest(compose(in)), digest(compose(in)));
  }
}

TEST(Compose, WarningModalOverBase) {
  ComposeInput in;
  in.screen = ScreenId::Warning;
  in.base = ScreenId::MainMenu;
  in.warning = WarningEvent{1, "SpO2 niedrig", std::nullopt};
  const auto f = compose(in);
  ASSERT_TRUE(f.modal);
  EXPECT_EQ(f.base, ScreenId::MainMenu);
  EXPECT_EQ(f.modal->code, 1);
  EXPECT_EQ(button_ids(f), std::set<std::string>{"dismiss"});
  EXPECT_EQ(f.tiles.size(), 7u);
}

// ---------------------------------------------------------------------------
// hit testing

TEST(HitTest, CentreOutsideAndShadowing) {
  auto s = engine::Session::start(load_fixture("bpr-demo"), {}, SimTime{});
  s.advance(SimTime{});
  ComposeInput in;
  in.screen = ScreenId::Treatment;
  in.session = &s;
  const auto f = compose(in);
  const auto tr = side_button(Corner::TopRight);
  EXPECT_EQ(hit_test(f, up_at(tr)), "next");
  EXPECT_EQ(hit_test(f, TouchEvent{tr.x, tr.y, TouchAction::Up, 0}), "next");
  EXPECT_FALSE(hit_test(f, TouchEvent{tr.x - 1, tr.cy(), TouchAction::Up, 0}));
  EXPECT_FALSE(hit_test(f, TouchEvent{160, 130, TouchAction::Up, 0}));
  EXPECT_FALSE(hit_test(f, TouchEvent{tr.cx(), tr.cy(), TouchAction::Down, 0}));

  in.screen = ScreenId::Warning;
  in.base = ScreenId::Treatment;
  in.warning = WarningEvent{2, "Bradykardie", std::nullopt};
  const auto m = compose(in);
  EXPECT_FALSE(hit_test(m, up_at(tr)));
  EXPECT_FALSE(hit_test(m, up_at(kMenuButton)));
  EXPECT_EQ(hit_test(m, up_at(side_button(Corner::BottomRight))), "dismiss");
}

TEST(HitTest, EveryButtonCentreHitsItself) {
  for (const auto& name : wearsim::testing::fixture_names()) {
    for (const auto& s : wearsim::testing::explore_sessions(load_fixture(name), wearsim::testing::sample_facts(), 15)) {
      for (const auto& in : wearsim::testing::inputs_for(s)) {
        const auto f = compose(in);
        for (const auto* b : f.active_buttons()) EXPECT_EQ(hit_test(f, up_at(b->rect)), b->id);
      }
    }
  }
}

TEST(TouchTrackerTest, PrimaryReleaseOnly) {
  TouchTracker t;
  EXPECT_FALSE(t.feed({10, 10, TouchAction::Down, 0}));
  EXPECT_FALSE(t.feed({20, 20, TouchAction::Down, 1}));
  EXPECT_FALSE(t.feed({20, 20, TouchAction::Up, 1}));
  EXPECT_TRUE(t.feed({10, 10, TouchAction::Up, 0}));
  for (int p = 0; p < 7; ++p) t.feed({1, 1, TouchAction::Down, p});
  EXPECT_EQ(t.active(), 5u);
}

// ---------------------------------------------------------------------------
// geometry

TEST(Geometry, EveryScreenEveryFixture) {
  std::size_t frames = 0;
  for (const auto& name : wearsim::testing::fixture_names()) {
    for (const auto& facts : {wearsim::testing::sample_facts(), PatientFacts{}}) {
      for (const auto& s : wearsim::testing::explore_sessions(load_fixture(name), facts)) {
        for (const auto& in : wearsim::testing::inputs_for(s)) {
          const auto f = compose(in);
          const auto v = audit(f);
          EXPECT_TRUE(v.empty()) << name << " " << to_string(in.screen) << " at " << s.cursor() << ": " << v.front();
          ++frames;
        }
      }
    }
  }
  EXPECT_GT(frames, 200u);
}

TEST(Geometry, AuditCatchesViolations) {
  ComposeInput in;
  in.screen = ScreenId::Alarms;
  auto f = compose(in);
  EXPECT_TRUE(audit(f).empty());
  auto bad = f;
  bad.side_buttons[0].rect.w = 104;
  EXPECT_FALSE(audit(bad).empty());
  bad = f;
  bad.side_buttons.push_back(bad.side_buttons[0]);
  bad.side_buttons.back().id = "dup";
  EXPECT_FALSE(audit(bad).empty());
  bad = f;
  bad.header.reset();
  EXPECT_FALSE(audit(bad).empty());
  bad = f;
  bad.central[0].label->text = "Alarmprotokoll der letzten Stunde";
  EXPECT_FALSE(audit(bad).empty());
}

// ---------------------------------------------------------------------------
// controller

TEST(Controller, StartsOnMainMenuAndNavigates) {
  Rig r;
  EXPECT_EQ(r.ctl.screen(), ScreenId::MainMenu);
  r.ctl.press("tile:Treatment", SimTime{});
  EXPECT_EQ(r.ctl.screen(), ScreenId::AllTreatments);
  r.ctl.press("down", SimTime{});
  r.ctl.press("accept", SimTime{});
  EXPECT_EQ(r.ctl.screen(), ScreenId::Treatment);
  EXPECT_EQ(r.ctl.session()->graph().title(), "Analgesie");
  r.ctl.press("menu", SimTime{});
  EXPECT_EQ(r.ctl.screen(), ScreenId::MainMenu);
  EXPECT_THROW(r.ctl.press("next", SimTime{}), InvalidTransition);
}

TEST(Controller, AnswerJaReachesA2) {
  Rig r;
  r.ctl.start_session(0, SimTime{});
  r.ctl.press("tile:Treatment", SimTime{});
  r.ctl.press("next", at_seconds(1));
  r.ctl.press("next", at_seconds(2));
  ASSERT_EQ(r.ctl.session()->cursor(), "d1");
  EXPECT_EQ(r.ctl.frame().find_button("option:0")->label->lines[0], "Ja");
  r.ctl.touch({0, 0, TouchAction::Down, 0}, at_seconds(3));
  r.ctl.touch(up_at(side_button(Corner::TopRight)), at_seconds(3));
  EXPECT_EQ(r.ctl.session()->cursor(), "a2");
}

TEST(Controller, ApprovalFlow) {
  Rig r;
  r.ctl.start_session(1, SimTime{});
  r.ctl.press("tile:Treatment", SimTime{});
  r.ctl.press("next", SimTime{});
  r.ctl.press("next", SimTime{});
  EXPECT_EQ(r.ctl.screen(), ScreenId::Approval);
  EXPECT_EQ(r.ctl.frame().base, ScreenId::Treatment);
  EXPECT_EQ(button_ids(r.ctl.frame()), (std::set<std::string>{"approve", "override"}));
  r.ctl.press("approve", SimTime{});
  EXPECT_EQ(r.ctl.screen(), ScreenId::Treatment);
  EXPECT_EQ(r.ctl.session()->cursor(), "a2");
  EXPECT_EQ(r.ctl.session()->history().back().label, "Erwachsener");

  r.ctl.press("back", SimTime{});
  EXPECT_EQ(r.ctl.frame().find_button("next")->label->lines[0], "Prüfen");
  r.ctl.press("next", SimTime{});
  EXPECT_EQ(r.ctl.screen(), ScreenId::Approval);
  r.ctl.press("override", SimTime{});
  EXPECT_EQ(r.ctl.screen(), ScreenId::Treatment);
  EXPECT_TRUE(r.ctl.frame().find_button("option:1"));
}

TEST(Controller, WarningRaisedExactlyOnceAndReturns) {
  Rig r;
  r.ctl.press("tile:Alarms", SimTime{});
  r.bus.publish("warning_code", 3);
  r.ctl.tick(at_seconds(1));
  EXPECT_EQ(r.ctl.screen(), ScreenId::Warning);
  EXPECT_EQ(r.ctl.frame().base, ScreenId::Alarms);
  EXPECT_EQ(r.ctl.frame().modal->code, 3);
  EXPECT_FALSE(r.bus.is_valid("warning_code"));
  const auto d = digest(r.ctl.frame());
  r.ctl.tick(at_seconds(1));
  EXPECT_EQ(digest(r.ctl.frame()), d);
  r.ctl.press("dismiss", at_seconds(2));
  EXPECT_EQ(r.ctl.screen(), ScreenId::Alarms);
  r.ctl.tick(at_seconds(3));
  EXPECT_EQ(r.ctl.screen(), ScreenId::Alarms);
  EXPECT_NE(text_of(r.ctl.frame(), "row:0").find("Tachykardie"), std::string::npos);
  int warnings = 0;
  for (const auto& e : r.ctl.log()) warnings += e["kind"] == "warning";
  EXPECT_EQ(warnings, 1);
}

TEST(Controller, QueuedWarningsShowInOrder) {
  Rig r;
  r.bus.publish("warning_code", 1);
  r.ctl.tick(at_seconds(1));
  r.bus.publish("warning_code", 2);
  r.ctl.tick(at_seconds(2));
  EXPECT_EQ(r.ctl.frame().modal->code, 1);
  EXPECT_EQ(r.ctl.pending_warnings(), 1u);
  r.ctl.press("dismiss", at_seconds(3));
  EXPECT_EQ(r.ctl.screen(), ScreenId::Warning);
  EXPECT_EQ(r.ctl.frame().modal->code, 2);
  r.ctl.press("dismiss", at_seconds(4));
  EXPECT_EQ(r.ctl.screen(), ScreenId::MainMenu);
}

TEST(Controller, VitalsDrainedIntoMonitor) {
  Rig r;
  r.ctl.press("tile:PatientMonitor", SimTime{});
  const auto before = r.ctl.frame();
  r.ctl.tick(SimTime{});
  EXPECT_EQ(r.ctl.frame(), before);
  r.bus.publish("pulse", 88);
  r.ctl.tick(SimTime{});
  EXPECT_EQ(r.ctl.frame().find_element("vital:pulse")->value, "88");
  EXPECT_FALSE(r.bus.is_valid("pulse"));
  r.ctl.tick(SimTime{});
  EXPECT_EQ(r.ctl.frame().find_element("vital:pulse")->value, "88");
}

TEST(Controller, SituationAcceptRecordsGroup) {
  Rig r;
  for (auto [slot, v] : std::vector<std::pair<const char*, int>>{
           {"spo2", 80}, {"pulse", 120}, {"bp_sys", 125}, {"bp_dia", 80}, {"resp_rate", 14}}) {
    r.bus.publish(slot, v);
  }
  r.bus.publish("situation", situation::encode_id_word(situation::ConventionId("sda")));
  r.ctl.tick(SimTime{});
  ASSERT_EQ(r.ctl.detection().size(), 5u);
  r.ctl.press("tile:SituationSelect", SimTime{});
  r.ctl.press("down", SimTime{});
  r.ctl.press("up", SimTime{});
  r.ctl.press("accept", SimTime{});
  EXPECT_EQ(r.ctl.screen(), ScreenId::Treatment);
  EXPECT_EQ(r.ctl.selected_group(), situation::IllnessGroup::Atemwege);
  ASSERT_TRUE(r.ctl.session());
}

TEST(Controller, TimerNotificationAndGuard) {
  Rig r;
  r.ctl.press("tile:Treatment", SimTime{});
  EXPECT_EQ(r.ctl.screen(), ScreenId::AllTreatments);
  r.ctl.press("down", SimTime{});
  r.ctl.press("down", SimTime{});
  r.ctl.press("down", SimTime{});
  r.ctl.press("accept", SimTime{});
  EXPECT_EQ(r.ctl.session()->graph().title(), "Reanimation Erwachsene");
  r.ctl.tick(at_seconds(119));
  EXPECT_EQ(r.ctl.screen(), ScreenId::Treatment);
  r.ctl.tick(at_seconds(120));
  EXPECT_EQ(r.ctl.screen(), ScreenId::Notification);
  EXPECT_EQ(r.ctl.frame().modal->code, kTimerOverdueCode);
  r.ctl.press("dismiss", at_seconds(121));
  EXPECT_EQ(r.ctl.screen(), ScreenId::Treatment);
}

TEST(Controller, RandomPressesKeepFramesValid) {
  std::mt19937 rng(41);
  for (int run = 0; run < 20; ++run) {
    Rig r;
    for (int step = 0; step < 150; ++step) {
      const auto now = at_seconds(step);
      if (rng() % 10 == 0) r.bus.publish("warning_code", 1 + static_cast<int>(rng() % 15));
      r.ctl.tick(now);
      const auto buttons = r.ctl.frame().active_buttons();
      ASSERT_FALSE(buttons.empty());
      const auto id = buttons[rng() % buttons.size()]->id;
      ASSERT_NO_THROW(r.ctl.press(id, now)) << id << " on " << to_string(r.ctl.screen());
      const auto v = audit(r.ctl.frame());
      ASSERT_TRUE(v.empty()) << v.front();
      if (r.ctl.session()) ASSERT_TRUE(r.ctl.session()->replays());
    }
  }
}
