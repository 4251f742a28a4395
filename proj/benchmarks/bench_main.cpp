/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/classifier.hpp"
#include "cbcode/crc8.hpp"
#include "cbcode/harness.hpp"
#include "cbcode/locator.hpp"
#include "cbcode/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace cbcode;

namespace {

void BM_Crc8(benchmark::State& state)
{
	const auto packed = Pack(PayloadToSymbols(1234567890));
	for (auto _ : state)
		benchmark::DoNotOptimize(Crc8(packed));
}
BENCHMARK(BM_Crc8);

void BM_Encode(benchmark::State& state)
{
	const RenderSpec spec{static_cast<int>(state.range(0)), 0, White};
	Payload p = 0;
	for (auto _ : state)
		benchmark::DoNotOptimize(Encode(p++ % PayloadLimit, spec));
}
BENCHMARK(BM_Encode)->Arg(1)->Arg(65);

void BM_Locate(benchmark::State& state)
{
	const RasterImage img = Encode(987654321);
	for (auto _ : state)
		benchmark::DoNotOptimize(FindCodeRegion(img));
}
BENCHMARK(BM_Locate)->Unit(benchmark::kMillisecond);

void BM_Decode(benchmark::State& state)
{
	const double factor = state.range(0) / 1000.0;
	const RasterImage img = ScaleImage(Encode(987654321), factor, ScaleMethod::Bilinear);
	DecodeOptions o;
	o.sample_points = static_cast<int>(state.range(1));
	for (auto _ : state)
		benchmark::DoNotOptimize(Decode(img, o));
}
BENCHMARK(BM_Decode)
	->ArgsProduct({{1000, 500, 125}, {5, 10, 20}})
	->ArgNames({"factor_x1000", "samples"})
	->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State& state)
{
	std::mt19937_64 rng(1);
	std::uniform_real_distribution<double> u(0, 255);
	std::vector<RgbF> samples(static_cast<size_t>(state.range(0)));
	for (auto& s : samples)
		s = {u(rng), u(rng), u(rng)};
	const auto presets = GrayPresets();
	for (auto _ : state)
		benchmark::DoNotOptimize(KMeansPreset(samples, presets));
}
BENCHMARK(BM_KMeans)->Arg(60)->Arg(240);

} // namespace

BENCHMARK_MAIN();
