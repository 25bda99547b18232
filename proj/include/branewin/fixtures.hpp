#pragma once

#include <string>
#include <utility>
#include <vector>

#include "branewin/brane.hpp"
#include "branewin/model.hpp"

namespace branewin {

// Bundled models with companion branes, used by the CLI and the test
// suites. "orbifold-N" is accepted for N in [2, 6].
struct Fixture {
  ModelPtr model;
  std::vector<std::pair<std::string, Brane>> branes;
};

std::vector<std::string> fixture_names();
Fixture load_fixture(const std::string& name);

}  // namespace branewin
