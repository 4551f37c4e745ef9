#include "scoopw/bench/benchmarks.hpp"

#include <stdexcept>

namespace scoopw::bench {

namespace {

// Times each philosopher eats. Small enough for exhaustive exploration of
// the three-philosopher variants.
constexpr int kRounds = 1;

const std::string& embedded(std::string_view name) {
  for (const auto& s : detail::embedded_sources()) {
    if (s.name == name) return s.source;
  }
  throw std::logic_error("benchmark source '" + std::string(name) + "' was not embedded");
}

Benchmark philosophers(bool lazy, bool commands, int n) {
  std::string id = std::string("dp_") + (lazy ? "lazy" : "eager") + (commands ? "" : "_nocmd") + "_" + std::to_string(n);
  std::string desc = std::to_string(n) + " philosophers picking up forks " +
                     (lazy ? "one after the other" : "together") + (commands ? "" : ", no commands while eating");
  std::string src = instantiate(embedded("dining_philosophers"),
                                {{"N", std::to_string(n)},
                                 {"ROUNDS", std::to_string(kRounds)},
                                 {"EAT_CALL", lazy ? "bad_eat" : "eat (left_fork, right_fork)"},
                                 {"USES", commands ? "left.use\n      right.use" : ""}});
  return {std::move(id), std::move(desc), std::move(src)};
}

std::vector<Benchmark> build() {
  std::vector<Benchmark> out;
  out.push_back({"colours", "two blocks colouring the same pair of objects", embedded("colours")});
  out.push_back({"stack", "pushes 1..7 in one block, 8 and a top query in another", embedded("stack")});
  for (int n : {2, 3}) {
    out.push_back(philosophers(false, true, n));
    out.push_back(philosophers(true, true, n));
    out.push_back(philosophers(false, false, n));
    out.push_back(philosophers(true, false, n));
  }
  for (int k : {5, 20}) {
    out.push_back({"producer_consumer_" + std::to_string(k),
                   "single-element buffer, " + std::to_string(k) + " items through wait conditions",
                   instantiate(embedded("producer_consumer"), {{"K", std::to_string(k)}})});
  }
  out.push_back({"barbershop", "one barber, one waiting chair, two customers", embedded("barbershop")});
  out.push_back({"dining_savages", "two savages, one cook, a pot of two servings", embedded("dining_savages")});
  out.push_back({"bank_transfer", "two opposite transfers between two accounts", embedded("bank_transfer")});
  return out;
}

}  // namespace

std::string instantiate(std::string_view text, const std::vector<std::pair<std::string, std::string>>& values) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    std::size_t open = text.find("{{", pos);
    if (open == std::string_view::npos) break;
    std::size_t close = text.find("}}", open);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated placeholder");
    out.append(text.substr(pos, open - pos));
    std::string_view key = text.substr(open + 2, close - open - 2);
    bool found = false;
    for (const auto& [k, v] : values) {
      if (k == key) {
        out += v;
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("no value for placeholder {{" + std::string(key) + "}}");
    pos = close + 2;
  }
  out.append(text.substr(pos));
  return out;
}

const std::vector<Benchmark>& all() {
  static const std::vector<Benchmark> list = build();
  return list;
}

std::vector<std::string> ids() {
  std::vector<std::string> out;
  for (const Benchmark& b : all()) out.push_back(b.id);
  return out;
}

const Benchmark* find(std::string_view id) {
  for (const Benchmark& b : all()) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

}  // namespace scoopw::bench
