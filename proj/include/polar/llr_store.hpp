/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polar/error.hpp"

namespace polar {

using BankId = std::uint32_t;

struct CopyStats {
	std::size_t clone_events = 0;     ///< path duplications
	std::size_t fresh_banks = 0;      ///< banks re-addressed before a full overwrite
	std::size_t banks_copied = 0;     ///< banks duplicated for a partial write
	std::size_t elements_copied = 0;  ///< elements moved by those duplications
};

/// Fixed set of equally sized physical banks shared by list paths through
/// reference counts. Paths hold bank ids (their address map); cloning a path
/// copies ids, never contents.
template <class T>
class BankPool {
public:
	BankPool() = default;
	BankPool(std::size_t bank_size, std::size_t capacity, CopyStats *stats)
		: bank_size_(bank_size), data_(bank_size * capacity), refs_(capacity, 0), stats_(stats)
	{
		free_.reserve(capacity);
		for (std::size_t i = capacity; i-- > 0;)
			free_.push_back(BankId(i));
	}

	std::size_t bank_size() const { return bank_size_; }
	std::size_t capacity() const { return refs_.size(); }
	std::size_t in_use() const { return refs_.size() - free_.size(); }

	BankId acquire()
	{
		if (free_.empty())
			throw ContractViolation("bank pool exhausted");
		BankId id = free_.back();
		free_.pop_back();
		refs_[id] = 1;
		return id;
	}
	void retain(BankId id) { ++refs_[id]; }
	void release(BankId id)
	{
		if (--refs_[id] == 0)
			free_.push_back(id);
	}
	std::uint32_t refs(BankId id) const { return refs_[id]; }

	std::span<T> span(BankId id) { return {data_.data() + std::size_t(id) * bank_size_, bank_size_}; }
	std::span<const T> span(BankId id) const
	{
		return {data_.data() + std::size_t(id) * bank_size_, bank_size_};
	}

	/// Make `id` exclusively owned before the caller overwrites it entirely.
	/// A shared bank is swapped for a fresh address; nothing is copied.
	BankId own_for_overwrite(BankId id)
	{
		if (refs_[id] == 1)
			return id;
		release(id);
		if (stats_)
			++stats_->fresh_banks;
		return acquire();
	}

	/// Make `id` exclusively owned before a partial write (contents kept).
	BankId own_for_update(BankId id)
	{
		if (refs_[id] == 1)
			return id;
		BankId fresh = acquire();
		auto src = span(id);
		std::copy(src.begin(), src.end(), span(fresh).begin());
		release(id);
		if (stats_) {
			++stats_->banks_copied;
			stats_->elements_copied += bank_size_;
		}
		return fresh;
	}

	void reset()
	{
		std::fill(refs_.begin(), refs_.end(), 0);
		free_.clear();
		for (std::size_t i = refs_.size(); i-- > 0;)
			free_.push_back(BankId(i));
	}

private:
	std::size_t bank_size_ = 0;
	std::vector<T> data_;
	std::vector<std::uint32_t> refs_;
	std::vector<BankId> free_;
	CopyStats *stats_ = nullptr;
};

/// Which stages keep internal LLRs and how many entries that costs.
struct StorageLayout {
	unsigned n = 0;
	unsigned stride = 1;
	std::vector<unsigned> stored_stages;   ///< t < n with t % stride == 0
	unsigned replicated_stage = 0;         ///< ultra: extra copies of this stage
	unsigned replica_count = 0;

	static StorageLayout make(unsigned n, unsigned stride, unsigned replica_count = 0,
	                          unsigned replicated_stage = 5);

	bool stored(unsigned t) const { return t < n && t % stride == 0; }
	/// Sum over stored stages of 2^t: internal LLR entries per path.
	std::size_t entries_per_path() const;
	/// Entries shared by the whole list (replicated stage copies).
	std::size_t shared_entries() const;
	/// Entries for L paths, replicas included.
	std::size_t total_entries(unsigned list_size) const;
	/// total_entries / (L * (N - 1)).
	double stored_fraction(unsigned list_size) const;
};

} // namespace polar
