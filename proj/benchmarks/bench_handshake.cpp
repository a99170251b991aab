/*
 * Copyright 2026 the speke-lab authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "speke/presets.hpp"
#include "speke/simnet.hpp"

using namespace speke;

static void BM_HonestRun(benchmark::State& state, Variant v, const char* group)
{
  HonestConfig cfg;
  cfg.variant = v;
  cfg.confirm = preset_confirmation(v);
  cfg.params = group_preset(group);
  cfg.password_a = to_bytes("benchmark password");
  std::uint64_t seed = 1;
  for (auto _ : state) {
    cfg.seed = seed++;
    RunResult run = run_honest_exchange(cfg);
    benchmark::DoNotOptimize(run.sessions.data());
  }
}
BENCHMARK_CAPTURE(BM_HonestRun, jablon96_toy23, Variant::Jablon96, "toy23");
BENCHMARK_CAPTURE(BM_HonestRun, pspeke_toy23, Variant::PSpeke2017, "toy23");
BENCHMARK_CAPTURE(BM_HonestRun, pspeke_modp2048, Variant::PSpeke2017, "modp2048");
BENCHMARK_CAPTURE(BM_HonestRun, iso_modp2048, Variant::Iso11770_4_2006, "modp2048");

static void BM_SessionKeyDerivation(benchmark::State& state, Variant v)
{
  const auto params = group_preset("modp2048");
  Mt19937Source rng(3);
  const GroupElement g = derive_generator_hashed(to_bytes("benchmark password"), params);
  const Scalar x = sample_scalar(rng, *params);
  const Scalar y = sample_scalar(rng, *params);
  const GroupElement gx = exp(g, x);
  const GroupElement gy = exp(g, y);
  const GroupElement shared = exp(gx, y);
  const Identity a{"A", std::nullopt};
  const Identity b{"B", std::nullopt};
  for (auto _ : state) {
    SessionKey k = derive_session_key(v, a, b, gx, gy, shared, Role::Initiator);
    benchmark::DoNotOptimize(k.bytes.data());
  }
}
BENCHMARK_CAPTURE(BM_SessionKeyDerivation, legacy, Variant::Jablon96);
BENCHMARK_CAPTURE(BM_SessionKeyDerivation, patch2014, Variant::Patch2014);
BENCHMARK_CAPTURE(BM_SessionKeyDerivation, pspeke, Variant::PSpeke2017);
