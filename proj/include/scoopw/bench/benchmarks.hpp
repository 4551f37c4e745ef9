#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scoopw::bench {

struct Benchmark {
  std::string id;
  std::string description;
  std::string source;
};

// Every built-in benchmark, in listing order.
const std::vector<Benchmark>& all();
std::vector<std::string> ids();
const Benchmark* find(std::string_view id);

// Replaces every `{{KEY}}` by its value. Throws std::invalid_argument on a
// placeholder without a value.
std::string instantiate(std::string_view text, const std::vector<std::pair<std::string, std::string>>& values);

namespace detail {

struct EmbeddedSource {
  std::string name;
  std::string source;
};

// Generated at build time from benchmarks/*.scoop.
const std::vector<EmbeddedSource>& embedded_sources();

}  // namespace detail

}  // namespace scoopw::bench
