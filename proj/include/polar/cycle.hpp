/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "polar/profile.hpp"
#include "polar/trace.hpp"

namespace polar {

struct ArchParams {
	unsigned pe_count_serial = 64;
	unsigned parallel_threshold = 16;
	unsigned cycles_per_pe_pass = 1;
	std::map<unsigned, unsigned> sort_latency{{1, 0}, {2, 2}, {4, 3}, {8, 16}, {16, 8}, {32, 12}};
	unsigned parallel_unit_latency = 2;
	unsigned semi_parallel_groups = 1; ///< paths per pass at the semi-parallel stages
	unsigned semi_parallel_lo = 3;
	unsigned semi_parallel_hi = 4;
	unsigned num_cores = 1;
	double f_clk = 1e9;

	static ArchParams for_kind(DecoderKind k);

	/// Sorter cycles for a 2L -> L selection.
	unsigned sort_cycles(unsigned list_size) const;
	void validate() const;
	bool operator==(const ArchParams &) const = default;
};

enum class Unit : std::uint8_t { serial, parallel, semi_parallel, decision, sorter };
constexpr std::size_t unit_count = 5;
const char *to_string(Unit u);

struct CycleReport {
	std::uint64_t total_cycles = 0;
	std::uint64_t by_unit[unit_count] = {};
	std::uint64_t pe_cycles = 0;     ///< cycles the PE side is busy
	std::uint64_t sort_cycles = 0;   ///< cycles the sorter is busy
	std::uint64_t idle_pe_cycles = 0;
	std::uint64_t serial_waves = 0;
	std::uint64_t recompute_cycles = 0;
	double throughput_bps = 0.0;
	/// double_package only
	std::uint64_t package_latency[2] = {};
	double ratio = 0.0;
};

/// One resource occupation of a trace event.
struct Segment {
	bool sorter = false;
	std::uint64_t cycles = 0;
	Unit unit = Unit::serial;
	bool recompute = false;
};

/// Expands a trace into the PE / sorter occupations it implies.
std::vector<Segment> schedule_segments(const DecodeTrace &trace, const ArchParams &arch,
                                       const DecoderProfile &profile);

CycleReport latency(const DecodeTrace &trace, const ArchParams &arch, const DecoderProfile &profile,
                    std::size_t info_bits = 0);

/// Two packages on one core sharing the PE side and the sorter.
CycleReport double_package(const DecodeTrace &a, const DecodeTrace &b, const ArchParams &arch,
                           const DecoderProfile &profile, std::size_t info_bits = 0);

/// k * f_clk / T * cores, in bit/s.
double throughput(std::size_t info_bits, double f_clk, std::uint64_t cycles, unsigned num_cores);

} // namespace polar
