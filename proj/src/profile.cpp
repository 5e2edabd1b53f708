/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polar/profile.hpp"

#include "polar/bits.hpp"
#include "polar/error.hpp"

namespace polar {

std::string to_string(DecoderKind k)
{
	switch (k) {
	case DecoderKind::sc: return "sc";
	case DecoderKind::flexible: return "flexible";
	case DecoderKind::ultra: return "ultra";
	}
	return "?";
}

std::string to_string(Selection s)
{
	switch (s) {
	case Selection::best_pm: return "best_pm";
	case Selection::crc_aided: return "crc_aided";
	case Selection::parity_check: return "parity_check";
	}
	return "?";
}

DecoderKind decoder_kind_from_string(const std::string &s)
{
	if (s == "sc")
		return DecoderKind::sc;
	if (s == "flexible")
		return DecoderKind::flexible;
	if (s == "ultra")
		return DecoderKind::ultra;
	throw InvalidParameter("unknown decoder kind '" + s + "'");
}

Selection selection_from_string(const std::string &s)
{
	if (s == "best_pm")
		return Selection::best_pm;
	if (s == "crc_aided")
		return Selection::crc_aided;
	if (s == "parity_check")
		return Selection::parity_check;
	throw InvalidParameter("unknown selection mode '" + s + "'");
}

DecoderProfile DecoderProfile::sc()
{
	DecoderProfile p;
	p.kind = DecoderKind::sc;
	p.max_list = 1;
	p.max_log2_length = 15;
	p.quant.internal_width = 7;
	p.quant.internal_width_stage0 = 7;
	p.storage_stride = 1;
	p.leaf_width = 1;
	p.max_special_node = 32;
	p.double_package = false;
	p.multi_bit = false;
	return p;
}

DecoderProfile DecoderProfile::flexible()
{
	return DecoderProfile{};
}

DecoderProfile DecoderProfile::ultra()
{
	DecoderProfile p;
	p.kind = DecoderKind::ultra;
	p.max_list = 32;
	p.max_log2_length = 11;
	p.quant.internal_width = 6;
	p.quant.internal_width_stage0 = 7;
	p.storage_stride = 4;
	p.leaf_width = 2;
	p.max_special_node = 4;
	p.double_package = false;
	return p;
}

DecoderProfile DecoderProfile::for_kind(DecoderKind k)
{
	switch (k) {
	case DecoderKind::sc: return sc();
	case DecoderKind::flexible: return flexible();
	case DecoderKind::ultra: return ultra();
	}
	return flexible();
}

DecoderProfile DecoderProfile::plain() const
{
	DecoderProfile p = *this;
	p.storage_stride = 1;
	p.special_nodes = false;
	p.good_bits = false;
	p.skip_frozen_prefix = false;
	p.multi_bit = false;
	return p;
}

void DecoderProfile::validate() const
{
	quant.validate();
	if (max_list < 1 || !is_power_of_two(max_list))
		throw InvalidParameter("L_max must be a power of two");
	if (max_log2_length < 1 || max_log2_length > 15)
		throw InvalidParameter("N_max must be in [2, 2^15]");
	if (storage_stride != 1 && storage_stride != 3 && storage_stride != 4)
		throw InvalidParameter("storage stride must be 1, 3 or 4");
	if (leaf_width != 1 && leaf_width != 2 && leaf_width != 4)
		throw InvalidParameter("leaf width must be 1, 2 or 4");
	if (!is_power_of_two(max_special_node) || max_special_node > 32)
		throw InvalidParameter("special node width must be a power of two up to 32");
	if (double_package && kind != DecoderKind::flexible)
		throw InvalidParameter("double-package mode is only available on the flexible decoder");
}

void DecoderProfile::validate_run(std::size_t N, unsigned list_size) const
{
	validate();
	if (!is_power_of_two(N) || log2_exact(N) > max_log2_length)
		throw InvalidParameter("code length " + std::to_string(N) + " exceeds the " + to_string(kind) +
		                       " decoder's N_max");
	if (list_size < 1 || !is_power_of_two(list_size) || list_size > max_list)
		throw InvalidParameter("list size " + std::to_string(list_size) + " must be a power of two <= " +
		                       std::to_string(max_list));
}

} // namespace polar
