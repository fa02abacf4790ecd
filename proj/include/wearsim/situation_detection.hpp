#pragma once

// Illness-group convention ids, detection vectors and the rule-based stand-in
// detector.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wearsim/comparator.hpp"
#include "wearsim/error.hpp"
#include "wearsim/id_word.hpp"
#include "wearsim/text_util.hpp"
#include "wearsim/vitals_sample.hpp"

namespace wearsim::situation {

/// Situation-detection groups in table order; the order is also the
/// tie-break order for ranking.
enum class IllnessGroup {
  ZnsKrankheiten,
  HerzKreislauf,
  Atemwege,
  Bauchraum,
  Psychiatrisch,
  Stoffwechsel,
  GynGeburtshilflich,
  AndereKrankheiten,
  Infektionen,
  Reanimation,
};

inline constexpr std::size_t kGroupCount = 10;

inline constexpr std::array<IllnessGroup, kGroupCount> kAllGroups{
    IllnessGroup::ZnsKrankheiten, IllnessGroup::HerzKreislauf,      IllnessGroup::Atemwege,
    IllnessGroup::Bauchraum,      IllnessGroup::Psychiatrisch,      IllnessGroup::Stoffwechsel,
    IllnessGroup::GynGeburtshilflich, IllnessGroup::AndereKrankheiten, IllnessGroup::Infektionen,
    IllnessGroup::Reanimation,
};

inline constexpr std::array<std::string_view, kGroupCount> kCodes{
    "sdz", "sdh", "sda", "sdb", "sdp", "sds", "sdg", "sdak", "sdi", "sdr"};

inline constexpr std::array<std::string_view, kGroupCount> kDisplayNames{
    "ZNS-Krankheiten",       "Herz-Kreislauf-Erkr.",        "Erkr. der Atemwege",
    "Erkr. des Bauchraums",  "Psychiatrische Erk.",         "Stoffwechselkrankheiten",
    "Gyn.-geburtshilf. Notfaelle", "Andere Krankheiten",     "Infektionen",
    "Reanimation",
};

constexpr std::size_t index_of(IllnessGroup g) { return static_cast<std::size_t>(g); }

inline std::string_view display_name(IllnessGroup g) { return kDisplayNames[index_of(g)]; }

/// Short code naming an illness group; only the ten table codes are
/// constructible. Case-sensitive.
class ConventionId {
 public:
  explicit ConventionId(std::string_view code) {
    const auto it = std::find(kCodes.begin(), kCodes.end(), code);
    if (it == kCodes.end()) throw UnknownCode("'" + std::string(code) + "' is not a convention id");
    index_ = static_cast<std::size_t>(it - kCodes.begin());
  }

  std::string_view code() const { return kCodes[index_]; }
  IllnessGroup group() const { return kAllGroups[index_]; }

  friend bool operator==(const ConventionId&, const ConventionId&) = default;

 private:
  std::size_t index_ = 0;
};

inline ConventionId group_to_id(IllnessGroup g) { return ConventionId(kCodes[index_of(g)]); }

inline IllnessGroup id_to_group(std::string_view code) { return ConventionId(code).group(); }

/// Packs the code's ASCII bytes into a bus word, first character in the low
/// byte, unused bytes zero.
inline IdWord encode_id_word(const ConventionId& id) {
  std::uint32_t bits = 0;
  const auto code = id.code();
  for (std::size_t i = 0; i < code.size(); ++i) {
    bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(code[i])) << (8 * i);
  }
  return IdWord{bits};
}

/// Inverse of encode_id_word; UnknownCode if the word holds no table code.
inline ConventionId decode_id_word(IdWord word) {
  std::string code;
  for (auto b : word.bytes()) {
    if (b == 0) break;
    code.push_back(static_cast<char>(b));
  }
  return ConventionId(code);
}

/// Probabilities over all ten groups, indexed in table order.
class DetectionVector {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit DetectionVector(std::array<double, kGroupCount> probabilities) : p_(probabilities) {
    double sum = 0.0;
    for (double v : p_) {
      if (!(v >= 0.0 && v <= 1.0)) throw ParseError("detection probability outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw ParseError("detection probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
  }

  /// Normalises non-negative scores into a vector.
  static DetectionVector from_scores(std::array<double, kGroupCount> scores) {
    const double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
    if (!(sum > 0.0)) throw ParseError("detection scores must have a positive sum");
    for (auto& s : scores) s /= sum;
    return DetectionVector(scores);
  }

  double operator[](IllnessGroup g) const { return p_[index_of(g)]; }
  const std::array<double, kGroupCount>& values() const { return p_; }

  friend bool operator==(const DetectionVector&, const DetectionVector&) = default;

 private:
  std::array<double, kGroupCount> p_;
};

struct RankedGroup {
  IllnessGroup group;
  double probability;

  friend bool operator==(const RankedGroup&, const RankedGroup&) = default;
};

/// The k most probable groups, probability descending, ties in table order.
inline std::vector<RankedGroup> top_k(const DetectionVector& v, int k) {
  if (k < 1 || k > static_cast<int>(kGroupCount)) throw BadK("k must be in 1..10, got " + std::to_string(k));
  std::vector<RankedGroup> all;
  for (auto g : kAllGroups) all.push_back({g, v[g]});
  std::stable_sort(all.begin(), all.end(),
                   [](const RankedGroup& a, const RankedGroup& b) { return a.probability > b.probability; });
  all.resize(static_cast<std::size_t>(k));
  return all;
}

/// Single-function detector boundary; a learned model can replace the rule
/// table behind it.
using Detector = std::function<DetectionVector(const VitalsSample&)>;

struct DetectionRule {
  IllnessGroup group;
  std::string field;
  Comparator comparator;
  double bound;
  double weight;
};

struct DetectionRules {
  double base = 1.0;
  std::vector<DetectionRule> rules;
};

inline DetectionRules parse_detection_rules(std::string_view doc) {
  DetectionRules out;
  int lineno = 0;
  for (auto raw : text::lines(doc)) {
    ++lineno;
    auto line = text::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto where = "detection rules line " + std::to_string(lineno);
    const auto cols = text::split_ws(line);
    if (cols.size() == 2 && cols[0] == "base") {
      auto b = text::parse_number<double>(cols[1]);
      if (!b || *b <= 0) throw ParseError(where + ": base must be a positive number");
      out.base = *b;
      continue;
    }
    if (cols.size() != 5) throw ParseError(where + ": expected '<id> <field> <cmp> <bound> <weight>'");
    IllnessGroup group;
    try {
      group = id_to_group(cols[0]);
    } catch (const UnknownCode& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!is_vitals_field(cols[1])) throw ParseError(where + ": unknown field '" + std::string(cols[1]) + "'");
    auto cmp = parse_comparator(cols[2]);
    auto bound = text::parse_number<double>(cols[3]);
    auto weight = text::parse_number<double>(cols[4]);
    if (!cmp || !bound || !weight || *weight < 0) throw ParseError(where + ": malformed rule");
    out.rules.push_back({group, std::string(cols[1]), *cmp, *bound, *weight});
  }
  return out;
}

/// Deterministic stand-in for the situation classifier: base score per group
/// plus the weight of every satisfied rule, normalised.
inline DetectionVector mock_detect(const VitalsSample& vitals, const DetectionRules& rules) {
  std::array<double, kGroupCount> scores;
  scores.fill(rules.base);
  for (const auto& r : rules.rules) {
    const auto value = vitals_field(vitals, r.field);
    if (value && compare(*value, r.comparator, r.bound)) scores[index_of(r.group)] += r.weight;
  }
  return DetectionVector::from_scores(scores);
}

inline Detector rule_detector(DetectionRules rules) {
  return [rules = std::move(rules)](const VitalsSample& v) { return mock_detect(v, rules); };
}

}  // namespace wearsim::situation
