#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "empath/domain_language.hpp"

namespace empath::testing {

inline std::string fixture_path(const std::string& file) {
  return std::string(EMPATH_SCENARIO_DIR) + "/" + file;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline CompiledProblem load_fixture(const std::string& stem) {
  return compile(parse_problem(read_text(fixture_path(stem + ".eplan"))));
}

inline ActorGroundTruth load_actor(const std::string& stem) {
  return compile(parse_problem(read_text(fixture_path(stem + ".actor.eplan")))).ground_truth();
}

inline const char* const kFixtures[] = {"bus", "grandmother", "safe_route", "wrong_bus"};

}  // namespace empath::testing
