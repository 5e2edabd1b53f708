/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <span>
#include <vector>

#include "polar/decoder.hpp"

namespace polar {

/// Bit-serial SCL decoder that keeps a private copy of every LLR stage and
/// of u for each path and duplicates all of it on a split. Slow on purpose:
/// it is the reference the serial-list engine is checked and timed against.
template <class D>
class NaiveDecoder {
public:
	using Llr = typename D::Llr;
	using Metric = typename D::Metric;

	/// Uses the good-bit mask only when `use_good_bits` is set.
	NaiveDecoder(const CodeSpec &spec, unsigned list_size, Selection selection, D domain = D{},
	             bool use_good_bits = false);

	DecodeResult decode(std::span<const Llr> channel);

	/// Elements copied by path duplication during the last decode.
	std::size_t elements_copied() const { return copied_; }
	std::size_t path_count() const { return paths_.size(); }
	const BitVec &path_u(std::size_t i) const { return paths_[i].u; }
	double path_metric(std::size_t i) const { return D::to_double(paths_[i].pm); }

private:
	struct Path {
		Metric pm{};
		std::vector<std::vector<Llr>> alpha; // stage 0..n
		BitVec u;
	};

	void update_llrs(Path &p, std::size_t leaf);

	CodeSpec spec_;
	unsigned list_size_;
	Selection selection_;
	D dom_;
	LeafMap leaves_;
	unsigned n_;
	std::size_t N_;
	std::vector<Path> paths_;
	BitVec ps_;
	std::size_t copied_ = 0;
};

extern template class NaiveDecoder<FloatDomain>;
extern template class NaiveDecoder<FixedDomain>;

} // namespace polar
