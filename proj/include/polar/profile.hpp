/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <string>

#include "polar/quant.hpp"

namespace polar {

enum class DecoderKind { sc, flexible, ultra };
enum class Selection { best_pm, crc_aided, parity_check };

std::string to_string(DecoderKind k);
std::string to_string(Selection s);
DecoderKind decoder_kind_from_string(const std::string &s);
Selection selection_from_string(const std::string &s);

/// Configuration bundle of one of the three decoders. Every shortcut can be
/// switched off on its own so engines can be compared against each other.
struct DecoderProfile {
	DecoderKind kind = DecoderKind::flexible;
	unsigned max_list = 8;
	unsigned max_log2_length = 14;
	QuantProfile quant;
	unsigned storage_stride = 3;
	unsigned leaf_width = 4;
	unsigned max_special_node = 32;
	bool double_package = true;
	Selection selection = Selection::best_pm;

	bool special_nodes = true;
	bool good_bits = true;
	bool skip_frozen_prefix = true;
	bool multi_bit = true;

	static DecoderProfile sc();
	static DecoderProfile flexible();
	static DecoderProfile ultra();
	static DecoderProfile for_kind(DecoderKind k);

	/// Same profile with every shortcut off and full LLR storage.
	DecoderProfile plain() const;

	/// Checks the profile itself and the (N, L) it is asked to run.
	void validate() const;
	void validate_run(std::size_t N, unsigned list_size) const;

	bool operator==(const DecoderProfile &) const = default;
};

} // namespace polar
