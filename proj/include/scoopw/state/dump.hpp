#pragma once

#include <string>

#include "scoopw/state/configuration.hpp"

namespace scoopw {

// Line-oriented text rendering, one handler per block, queues front to back.
// Stable across runs; used by golden tests.
std::string dump(const Configuration& cfg);

}  // namespace scoopw
