#pragma once

// Parsed forms of the data files shipped under data/ (embedded at build time).

#include "wearsim/default_data.hpp"
#include "wearsim/shared_memory_bus.hpp"
#include "wearsim/situation_detection.hpp"
#include "wearsim/vitals_feed.hpp"

namespace wearsim::defaults {

inline const bus::MemoryMap& default_memory_map() {
  static const bus::MemoryMap map = bus::parse_memory_map(memory_map);
  return map;
}

inline const situation::DetectionRules& default_detection_rules() {
  static const situation::DetectionRules rules = situation::parse_detection_rules(detection_rules);
  return rules;
}

inline const std::vector<feed::ThresholdRule>& default_threshold_rules() {
  static const std::vector<feed::ThresholdRule> rules = feed::parse_threshold_rules(threshold_rules);
  return rules;
}

}  // namespace wearsim::defaults
