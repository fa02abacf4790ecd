#include "wearsim/situation_detection.hpp"

#include <gtest/gtest.h>

#include <random>

#include "wearsim/defaults.hpp"

using namespace wearsim;
using namespace wearsim::situation;

namespace {

struct TableRow {
  const char* name;
  const char* code;
};

// Group names and codes exactly as published.
const TableRow kPublished[] = {
    {"ZNS-Krankheiten", "sdz"},
    {"Herz-Kreislauf-Erkr.", "sdh"},
    {"Erkr. der Atemwege", "sda"},
    {"Erkr. des Bauchraums", "sdb"},
    {"Psychiatrische Erk.", "sdp"},
    {"Stoffwechselkrankheiten", "sds"},
    {"Gyn.-geburtshilf. Notfaelle", "sdg"},
    {"Andere Krankheiten", "sdak"},
    {"Infektionen", "sdi"},
    {"Reanimation", "sdr"},
};

VitalsSample nominal() { return VitalsSample{0.0, 97, 75, 125, 80, 14}; }

}  // namespace

TEST(ConventionIds, MatchPublishedTable) {
  ASSERT_EQ(std::size(kPublished), kGroupCount);
  for (std::size_t i = 0; i < kGroupCount; ++i) {
    const auto g = kAllGroups[i];
    EXPECT_EQ(display_name(g), kPublished[i].name);
    EXPECT_EQ(group_to_id(g).code(), kPublished[i].code);
    EXPECT_EQ(id_to_group(kPublished[i].code), g);
  }
}

TEST(ConventionIds, RoundTripThroughGroups) {
  for (auto g : kAllGroups) EXPECT_EQ(id_to_group(group_to_id(g).code()), g);
  for (const auto& row : kPublished) EXPECT_EQ(group_to_id(id_to_group(row.code)).code(), row.code);
}

TEST(ConventionIds, UnknownAndCaseSensitive) {
  EXPECT_THROW(id_to_group("sdx"), UnknownCode);
  EXPECT_THROW(id_to_group("SDR"), UnknownCode);
  EXPECT_THROW(id_to_group(""), UnknownCode);
  EXPECT_THROW(ConventionId("sdakk"), UnknownCode);
}

TEST(IdWordCodec, LittleEndianAsciiBytes) {
  using Bytes = std::array<std::uint8_t, 4>;
  EXPECT_EQ(encode_id_word(ConventionId("sdr")).bytes(), (Bytes{0x73, 0x64, 0x72, 0x00}));
  EXPECT_EQ(encode_id_word(ConventionId("sdak")).bytes(), (Bytes{0x73, 0x64, 0x61, 0x6b}));
  EXPECT_EQ(encode_id_word(ConventionId("sdr")).bits, 0x00726473u);
}

TEST(IdWordCodec, RoundTripAllCodes) {
  for (const auto& row : kPublished) {
    const ConventionId id(row.code);
    EXPECT_EQ(decode_id_word(encode_id_word(id)), id);
  }
  EXPECT_THROW(decode_id_word(IdWord{0}), UnknownCode);
  EXPECT_THROW(decode_id_word(IdWord{0x00786473}), UnknownCode);
}

TEST(DetectionVector, RejectsBadVectors) {
  std::array<double, kGroupCount> p{};
  EXPECT_THROW(DetectionVector{p}, ParseError);
  p.fill(0.1);
  EXPECT_NO_THROW(DetectionVector{p});
  p[0] = 0.2;
  EXPECT_THROW(DetectionVector{p}, ParseError);
  p[0] = -0.1;
  p[1] = 0.3;
  EXPECT_THROW(DetectionVector{p}, ParseError);
}

TEST(TopK, OrdersAndBreaksTiesByTableOrder) {
  std::array<double, kGroupCount> s{};
  s.fill(1.0);
  s[index_of(IllnessGroup::Reanimation)] = 5.0;
  s[index_of(IllnessGroup::Atemwege)] = 3.0;
  const auto v = DetectionVector::from_scores(s);
  const auto top = top_k(v, 4);
  ASSERT_EQ(top.size(), 4u);
  EXPECT_EQ(top[0].group, IllnessGroup::Reanimation);
  EXPECT_EQ(top[1].group, IllnessGroup::Atemwege);
  EXPECT_EQ(top[2].group, IllnessGroup::ZnsKrankheiten);
  EXPECT_EQ(top[3].group, IllnessGroup::HerzKreislauf);
  EXPECT_DOUBLE_EQ(top[0].probability, 5.0 / 16.0);
  EXPECT_THROW(top_k(v, 0), BadK);
  EXPECT_THROW(top_k(v, 11), BadK);
  EXPECT_EQ(top_k(v, 10).size(), 10u);
}

TEST(TopKProperty, RandomVectors) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coarse(0, 4);  // coarse scores force ties
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<double, kGroupCount> s{};
    for (auto& x : s) x = coarse(rng);
    s[rng() % kGroupCount] += 1;
    const auto v = DetectionVector::from_scores(s);
    const int k = 1 + static_cast<int>(rng() % kGroupCount);
    const auto top = top_k(v, k);
    ASSERT_EQ(static_cast<int>(top.size()), k);
    // Oracle: for each selected group, count how many groups must precede it.
    for (int i = 0; i < k; ++i) {
      const auto gi = index_of(top[i].group);
      int ahead = 0;
      for (std::size_t j = 0; j < kGroupCount; ++j) {
        if (v.values()[j] > v.values()[gi] || (v.values()[j] == v.values()[gi] && j < gi)) ++ahead;
      }
      EXPECT_EQ(ahead, i);
      EXPECT_EQ(top[i].probability, v.values()[gi]);
    }
  }
}

TEST(MockDetect, NominalIsUniform) {
  const auto v = mock_detect(nominal(), defaults::default_detection_rules());
  for (double p : v.values()) EXPECT_DOUBLE_EQ(p, 0.1);
}

TEST(MockDetect, HypoxicTachycardia) {
  auto s = nominal();
  s.spo2 = 80;
  s.pulse = 120;
  const auto v = mock_detect(s, defaults::default_detection_rules());
  // base 1 each; sda +4 (spo2 < 85); sdh +2 (pulse > 110); total 16
  EXPECT_NEAR(v[IllnessGroup::Atemwege], 5.0 / 16.0, 1e-12);
  EXPECT_NEAR(v[IllnessGroup::HerzKreislauf], 3.0 / 16.0, 1e-12);
  EXPECT_NEAR(v[IllnessGroup::Bauchraum], 1.0 / 16.0, 1e-12);
  EXPECT_EQ(top_k(v, 1).front().group, IllnessGroup::Atemwege);
}

TEST(MockDetect, ArrestLeadsWithReanimation) {
  VitalsSample s{0.0, 40, 0, 0, 0, 0};
  const auto v = mock_detect(s, defaults::default_detection_rules());
  EXPECT_EQ(top_k(v, 1).front().group, IllnessGroup::Reanimation);
}

TEST(DetectionRules, ParseErrors) {
  EXPECT_THROW(parse_detection_rules("sdx spo2 LT 90 1\n"), ParseError);
  EXPECT_THROW(parse_detection_rules("sda oxygen LT 90 1\n"), ParseError);
  EXPECT_THROW(parse_detection_rules("sda spo2 ~ 90 1\n"), ParseError);
  EXPECT_THROW(parse_detection_rules("base 0\n"), ParseError);
  EXPECT_THROW(parse_detection_rules("sda spo2 LT 90\n"), ParseError);
  const auto r = parse_detection_rules("# c\nbase 2\nsda spo2 < 90 1.5 # trailing\n");
  EXPECT_EQ(r.base, 2.0);
  ASSERT_EQ(r.rules.size(), 1u);
  EXPECT_EQ(r.rules[0].comparator, Comparator::LT);
}

TEST(MockDetectProperty, AlwaysAValidVector) {
  std::mt19937 rng(9);
  const auto detect = rule_detector(defaults::default_detection_rules());
  for (int i = 0; i < 2000; ++i) {
    VitalsSample s{0.0, int(rng() % 101), int(rng() % 251), int(rng() % 301), int(rng() % 201), int(rng() % 81)};
    const auto v = detect(s);
    double sum = 0;
    for (double p : v.values()) {
      ASSERT_GE(p, 0.0);
      ASSERT_LE(p, 1.0);
      sum += p;
    }
    ASSERT_NEAR(sum, 1.0, 1e-9);
  }
}
