#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "mlgraph/mlgraph.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline mlgraph::io::ModelFile load_fixture(const std::string& name) { return mlgraph::io::parse(read_fixture(name)); }

inline mlgraph::LabeledGraph load_graph(const std::string& name) { return load_fixture(name).labeled_graph(); }

inline mlgraph::OpenGraph load_open(const std::string& name) { return *load_fixture(name).open_graph; }

}  // namespace testsupport
