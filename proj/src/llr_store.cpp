/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polar/llr_store.hpp"

namespace polar {

StorageLayout StorageLayout::make(unsigned n, unsigned stride, unsigned replica_count, unsigned replicated_stage)
{
	if (stride == 0)
		throw InvalidParameter("storage stride must be positive");
	StorageLayout l;
	l.n = n;
	l.stride = stride;
	for (unsigned t = 0; t < n; t += stride)
		l.stored_stages.push_back(t);
	if (replica_count && replicated_stage < n) {
		l.replica_count = replica_count;
		l.replicated_stage = replicated_stage;
	}
	return l;
}

std::size_t StorageLayout::entries_per_path() const
{
	std::size_t e = 0;
	for (unsigned t : stored_stages)
		e += std::size_t{1} << t;
	return e;
}

std::size_t StorageLayout::shared_entries() const
{
	return replica_count * (std::size_t{1} << replicated_stage);
}

std::size_t StorageLayout::total_entries(unsigned list_size) const
{
	return list_size * entries_per_path() + shared_entries();
}

double StorageLayout::stored_fraction(unsigned list_size) const
{
	std::size_t full = list_size * ((std::size_t{1} << n) - 1);
	return full ? double(total_entries(list_size)) / double(full) : 0.0;
}

} // namespace polar
