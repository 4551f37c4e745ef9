#pragma once

#include <doctest.h>

#include <memory>
#include <string>
#include <string_view>

#include "scoopw/bench/benchmarks.hpp"
#include "scoopw/engine/engine.hpp"
#include "scoopw/frontend/compiler.hpp"
#include "scoopw/models/models.hpp"

namespace testing {

inline std::shared_ptr<const scoopw::CompiledProgram> compile_ok(std::string_view source) {
  scoopw::frontend::BuildResult r = scoopw::frontend::build(source);
  for (const auto& e : r.errors) FAIL_CHECK(scoopw::frontend::format(e));
  REQUIRE(r.ok());
  return r.program;
}

inline std::shared_ptr<const scoopw::CompiledProgram> bench_program(std::string_view id) {
  const scoopw::bench::Benchmark* b = scoopw::bench::find(id);
  REQUIRE(b != nullptr);
  return compile_ok(b->source);
}

inline scoopw::Engine make_engine(std::shared_ptr<const scoopw::CompiledProgram> p, std::string_view model,
                                  scoopw::ModelOptions mo = {}, scoopw::EngineOptions eo = {}) {
  return scoopw::Engine(std::move(p), scoopw::make_model(model, mo), eo);
}

inline scoopw::Engine bench_engine(std::string_view id, std::string_view model, scoopw::ModelOptions mo = {},
                                   scoopw::EngineOptions eo = {}) {
  return make_engine(bench_program(id), model, mo, eo);
}

}  // namespace testing
