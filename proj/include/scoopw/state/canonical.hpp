#pragma once

#include <string>

#include "scoopw/state/configuration.hpp"

namespace scoopw {

// Compact, deterministic binary encoding of every semantic field of a
// configuration. Handler, object and block ids follow creation order, so
// equal keys mean equal configurations.
std::string canonical_key(const Configuration& cfg);

}  // namespace scoopw
