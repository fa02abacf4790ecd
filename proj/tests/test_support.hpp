#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wearsim::testing {

inline std::string data_path(const std::string& rel) { return std::string(WEARSIM_DATA_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string read_data(const std::string& rel) { return read_file(data_path(rel)); }

}  // namespace wearsim::testing
