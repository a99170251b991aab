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

#include "speke/codec.hpp"
#include "speke/presets.hpp"

using namespace speke;

static void BM_Exp(benchmark::State& state, const char* group)
{
  const auto params = group_preset(group);
  Mt19937Source rng(1);
  const GroupElement base =
      derive_generator_hashed(to_bytes("benchmark password"), params);
  const Scalar e = sample_scalar(rng, *params);
  for (auto _ : state) {
    GroupElement r = exp(base, e);
    benchmark::DoNotOptimize(r.value.get_mpz_t());
  }
}
BENCHMARK_CAPTURE(BM_Exp, toy23, "toy23");
BENCHMARK_CAPTURE(BM_Exp, modp2048, "modp2048");

static void BM_DeriveGeneratorHashed(benchmark::State& state)
{
  const auto params = group_preset("modp2048");
  const ByteString pw = to_bytes("benchmark password");
  for (auto _ : state) {
    GroupElement g = derive_generator_hashed(pw, params);
    benchmark::DoNotOptimize(g.value.get_mpz_t());
  }
}
BENCHMARK(BM_DeriveGeneratorHashed);

static void BM_SampleScalar(benchmark::State& state)
{
  const auto params = group_preset("modp2048");
  Mt19937Source rng(1);
  for (auto _ : state) {
    Scalar s = sample_scalar(rng, *params);
    benchmark::DoNotOptimize(s.value.get_mpz_t());
  }
}
BENCHMARK(BM_SampleScalar);

static void BM_Hash(benchmark::State& state)
{
  const ByteString data(state.range(0), 0xA5);
  for (auto _ : state) {
    Digest d = hash(data);
    benchmark::DoNotOptimize(d.data());
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Hash)->Arg(64)->Arg(1024);
