#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "accomplice/profile.hpp"

namespace accomplice::testing {

inline std::string read_data(const std::string& name) {
    std::ifstream in(std::string(ACCOMPLICE_TEST_DATA) + "/" + name);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline PreferenceProfile load(const std::string& name) { return parse_profile(read_data(name)); }

// 1-based partner indices of m1, m2, ... e.g. {3, 1, 4, 2}.
inline Matching matching_of(std::vector<Agent> women) {
    for (auto& w : women) --w;
    return Matching(std::move(women));
}

// 1-based list, e.g. {4, 1, 3, 2, 5} for "w4 w1 w3 w2 w5".
inline PreferenceList list_of(std::vector<Agent> agents) {
    for (auto& a : agents) --a;
    return agents;
}

}  // namespace accomplice::testing
