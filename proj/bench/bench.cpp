/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include <benchmark/benchmark.h>

#include <vector>

#include "polar/channel.hpp"
#include "polar/decoder.hpp"
#include "polar/reference.hpp"

using namespace polar;

namespace {

Campaign campaign(std::size_t N, unsigned L)
{
	Campaign c;
	c.spec = construct_code(N, N / 2, Construction::bhattacharyya, 0.5);
	c.profile = DecoderProfile::flexible();
	c.list_size = L;
	c.channel.frames = 256;
	c.channel.max_errors = 1u << 30; // fixed frame count
	c.channel.seed = 7;
	c.channel.domain = LlrDomain::quantized;
	c.esn0_db = {2.0};
	c.chunk = 256;
	return c;
}

void fer_campaign(benchmark::State &state, bool parallel)
{
	auto c = campaign(std::size_t(state.range(0)), unsigned(state.range(1)));
	for (auto _ : state)
		benchmark::DoNotOptimize(run_fer(c, parallel));
	state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(c.channel.frames));
}

void BM_FerSerial(benchmark::State &state) { fer_campaign(state, false); }
void BM_FerOpenMP(benchmark::State &state) { fer_campaign(state, true); }

std::vector<std::vector<float>> frames(const CodeSpec &spec, std::size_t count)
{
	std::vector<std::vector<float>> out;
	for (std::size_t f = 0; f < count; ++f) {
		auto rng = SplitMix64::for_frame(3, 0, f);
		BitVec payload(spec.payload_size());
		for (auto &b : payload)
			b = rng.bit();
		auto llr = transmit(encode(payload, spec), 2.0, rng);
		out.emplace_back(llr.begin(), llr.end());
	}
	return out;
}

void BM_ListDecoder(benchmark::State &state)
{
	auto spec = construct_code(std::size_t(state.range(0)), std::size_t(state.range(0)) / 2,
	                           Construction::bhattacharyya, 0.5);
	FloatDecoder dec(spec, DecoderProfile::flexible(), unsigned(state.range(1)));
	auto in = frames(spec, 32);
	std::size_t i = 0;
	for (auto _ : state)
		benchmark::DoNotOptimize(dec.decode(in[i++ % in.size()]));
	state.SetItemsProcessed(std::int64_t(state.iterations()));
}

void BM_NaiveDecoder(benchmark::State &state)
{
	auto spec = construct_code(std::size_t(state.range(0)), std::size_t(state.range(0)) / 2,
	                           Construction::bhattacharyya, 0.5);
	NaiveDecoder<FloatDomain> dec(spec, unsigned(state.range(1)), Selection::best_pm);
	auto in = frames(spec, 32);
	std::size_t i = 0;
	for (auto _ : state)
		benchmark::DoNotOptimize(dec.decode(in[i++ % in.size()]));
	state.SetItemsProcessed(std::int64_t(state.iterations()));
}

} // namespace

BENCHMARK(BM_FerSerial)->Args({256, 4})->Args({1024, 8})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FerOpenMP)->Args({256, 4})->Args({1024, 8})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ListDecoder)->Args({256, 4})->Args({1024, 8})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NaiveDecoder)->Args({256, 4})->Args({1024, 8})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
