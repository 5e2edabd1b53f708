/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <vector>

namespace polar {

enum class TraceKind : std::uint8_t {
	llr_op,   ///< 2^stage f or g functions for each active path
	leaf,     ///< bit / multi-bit decision block
	special,  ///< rate-0 or rate-1 node decided in one step
	skip,     ///< leading all-frozen subtree (costs nothing)
};

struct TraceEvent {
	TraceKind kind;
	std::uint8_t stage;
	bool g_op = false;      ///< llr_op: g instead of f
	bool recompute = false; ///< llr_op: value of an unstored stage
	bool sorted = false;    ///< leaf: a 2L -> L selection happened
	std::uint16_t paths = 1;
	std::uint32_t candidates = 0;
};

/// Node visits of one decode, in SC order.
struct DecodeTrace {
	std::vector<TraceEvent> events;
	unsigned list_size = 1;
	bool empty() const { return events.empty(); }
};

} // namespace polar
