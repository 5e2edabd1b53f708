/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polar/cycle.hpp"

#include <algorithm>

#include "polar/bits.hpp"
#include "polar/error.hpp"

namespace polar {

ArchParams ArchParams::for_kind(DecoderKind k)
{
	ArchParams a;
	switch (k) {
	case DecoderKind::sc:
		a.num_cores = 1;
		break;
	case DecoderKind::flexible:
		a.num_cores = 5;
		break;
	case DecoderKind::ultra:
		a.num_cores = 1;
		a.semi_parallel_groups = 4;
		break;
	}
	return a;
}

unsigned ArchParams::sort_cycles(unsigned list_size) const
{
	auto it = sort_latency.find(list_size);
	if (it == sort_latency.end())
		throw InvalidParameter("no sort latency configured for L=" + std::to_string(list_size));
	return it->second;
}

void ArchParams::validate() const
{
	if (pe_count_serial < 1 || parallel_threshold < 1 || cycles_per_pe_pass < 1 || parallel_unit_latency < 1 ||
	    semi_parallel_groups < 1 || num_cores < 1)
		throw InvalidParameter("architecture counts must be at least 1");
	if (semi_parallel_lo > semi_parallel_hi)
		throw InvalidParameter("semi-parallel stage range is empty");
	if (!(f_clk > 0))
		throw InvalidParameter("clock frequency must be positive");
}

const char *to_string(Unit u)
{
	switch (u) {
	case Unit::serial: return "serial";
	case Unit::parallel: return "parallel";
	case Unit::semi_parallel: return "semi_parallel";
	case Unit::decision: return "decision";
	case Unit::sorter: return "sorter";
	}
	return "?";
}

static std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b)
{
	return (a + b - 1) / b;
}

std::vector<Segment> schedule_segments(const DecodeTrace &trace, const ArchParams &arch,
                                       const DecoderProfile &profile)
{
	arch.validate();
	const bool semi = profile.kind == DecoderKind::ultra && arch.semi_parallel_groups > 1;
	std::vector<Segment> out;
	out.reserve(trace.events.size() + trace.events.size() / 4);
	for (const auto &e : trace.events) {
		switch (e.kind) {
		case TraceKind::llr_op: {
			const std::uint64_t width = std::uint64_t{1} << e.stage;
			Segment s;
			s.recompute = e.recompute;
			if (width > arch.parallel_threshold) {
				s.unit = Unit::serial;
				s.cycles = e.paths * ceil_div(width, arch.pe_count_serial) * arch.cycles_per_pe_pass;
			} else if (semi && e.stage >= arch.semi_parallel_lo && e.stage <= arch.semi_parallel_hi) {
				s.unit = Unit::semi_parallel;
				s.cycles = ceil_div(e.paths, arch.semi_parallel_groups) * arch.parallel_unit_latency;
			} else {
				s.unit = Unit::parallel;
				s.cycles = std::uint64_t{e.paths} * arch.parallel_unit_latency;
			}
			out.push_back(s);
			break;
		}
		case TraceKind::leaf:
			out.push_back({false, std::uint64_t{e.paths} * arch.parallel_unit_latency, Unit::decision, false});
			if (e.sorted && trace.list_size > 1) {
				// One 2L -> L pass per decided free bit.
				std::uint64_t rounds = 0;
				while ((std::uint64_t{e.paths} << (rounds + 1)) <= e.candidates)
					++rounds;
				out.push_back({true, std::max<std::uint64_t>(rounds, 1) * arch.sort_cycles(trace.list_size),
				               Unit::sorter, false});
			}
			break;
		case TraceKind::special:
			out.push_back({false, std::uint64_t{e.paths} * arch.parallel_unit_latency, Unit::decision, false});
			break;
		case TraceKind::skip:
			break;
		}
	}
	return out;
}

double throughput(std::size_t info_bits, double f_clk, std::uint64_t cycles, unsigned num_cores)
{
	if (cycles == 0)
		throw InvalidParameter("throughput: cycle count must be positive");
	if (num_cores == 0)
		throw InvalidParameter("throughput: core count must be positive");
	return double(info_bits) * f_clk / double(cycles) * double(num_cores);
}

static void account(CycleReport &r, const Segment &s)
{
	r.by_unit[std::size_t(s.unit)] += s.cycles;
	if (s.sorter)
		r.sort_cycles += s.cycles;
	else
		r.pe_cycles += s.cycles;
	if (s.unit == Unit::serial)
		r.serial_waves += s.cycles;
	if (s.recompute)
		r.recompute_cycles += s.cycles;
}

CycleReport latency(const DecodeTrace &trace, const ArchParams &arch, const DecoderProfile &profile,
                    std::size_t info_bits)
{
	CycleReport r;
	for (const auto &s : schedule_segments(trace, arch, profile))
		account(r, s);
	r.serial_waves /= arch.cycles_per_pe_pass;
	r.total_cycles = r.pe_cycles + r.sort_cycles;
	r.idle_pe_cycles = r.sort_cycles;
	r.package_latency[0] = r.total_cycles;
	r.ratio = 1.0;
	if (info_bits && r.total_cycles)
		r.throughput_bps = throughput(info_bits, arch.f_clk, r.total_cycles, arch.num_cores);
	return r;
}

CycleReport double_package(const DecodeTrace &a, const DecodeTrace &b, const ArchParams &arch,
                           const DecoderProfile &profile, std::size_t info_bits)
{
	if (!profile.double_package)
		throw InvalidParameter("double-package scheduling needs a profile with double_package enabled");
	// The PE side can switch packages between passes, so serial-unit work is
	// scheduled one pass at a time.
	auto passes = [&](const DecodeTrace &t) {
		std::vector<Segment> out;
		for (const auto &g : schedule_segments(t, arch, profile)) {
			const std::uint64_t unit =
				g.unit == Unit::serial ? arch.cycles_per_pe_pass : arch.parallel_unit_latency;
			if (g.sorter || unit == 0 || g.cycles <= unit) {
				out.push_back(g);
				continue;
			}
			Segment piece = g;
			piece.cycles = unit;
			for (std::uint64_t c = 0; c < g.cycles; c += unit)
				out.push_back(piece);
		}
		return out;
	};
	const std::vector<Segment> seg[2] = {passes(a), passes(b)};
	// PE work left before each position's next sort
	std::vector<std::uint64_t> to_sort[2];
	for (int s = 0; s < 2; ++s) {
		to_sort[s].assign(seg[s].size() + 1, 0);
		for (std::size_t i = seg[s].size(); i-- > 0;)
			to_sort[s][i] = seg[s][i].sorter ? 0 : to_sort[s][i + 1] + seg[s][i].cycles;
	}

	CycleReport r;
	std::size_t next[2] = {0, 0};
	std::uint64_t ready[2] = {0, 0};
	std::uint64_t pe_free = 0, sorter_free = 0;
	for (;;) {
		int pick = -1;
		std::uint64_t best = 0;
		for (int s = 0; s < 2; ++s) {
			if (next[s] == seg[s].size())
				continue;
			const Segment &g = seg[s][next[s]];
			std::uint64_t start = std::max(ready[s], g.sorter ? sorter_free : pe_free);
			// on a PE tie the package nearer to its sort goes first
			const bool closer = pick >= 0 && start == best && !g.sorter && !seg[pick][next[pick]].sorter &&
			                    to_sort[s][next[s]] < to_sort[pick][next[pick]];
			if (pick < 0 || start < best || closer) {
				pick = s;
				best = start;
			}
		}
		if (pick < 0)
			break;
		const Segment &g = seg[pick][next[pick]++];
		const std::uint64_t end = best + g.cycles;
		(g.sorter ? sorter_free : pe_free) = end;
		ready[pick] = end;
		account(r, g);
	}
	r.serial_waves /= arch.cycles_per_pe_pass;
	r.package_latency[0] = ready[0];
	r.package_latency[1] = ready[1];
	r.total_cycles = std::max(ready[0], ready[1]);
	r.idle_pe_cycles = r.total_cycles - r.pe_cycles;

	std::uint64_t single[2] = {0, 0};
	for (int s = 0; s < 2; ++s)
		for (const auto &g : seg[s])
			single[s] += g.cycles;
	const std::uint64_t longest = std::max(single[0], single[1]);
	r.ratio = longest ? double(r.total_cycles) / double(longest) : 0.0;
	const std::size_t packages = (single[0] > 0) + (single[1] > 0);
	if (info_bits && r.total_cycles)
		r.throughput_bps = throughput(info_bits * packages, arch.f_clk, r.total_cycles, arch.num_cores);
	return r;
}

} // namespace polar
