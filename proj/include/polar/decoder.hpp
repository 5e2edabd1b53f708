/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "polar/bits.hpp"
#include "polar/code.hpp"
#include "polar/llr_store.hpp"
#include "polar/profile.hpp"
#include "polar/quant.hpp"
#include "polar/trace.hpp"

namespace polar {

enum class LeafKind : std::uint8_t { frozen, free, good, parity };

/// Per-position decision rule of a code under a profile.
struct LeafMap {
	std::vector<LeafKind> kind;
	std::vector<std::int32_t> constraint;              ///< parity leaf -> constraint id
	std::vector<std::vector<std::size_t>> sources;     ///< per constraint, ascending
	std::vector<std::vector<std::uint32_t>> feeds;     ///< position -> constraints it feeds
	std::vector<std::uint32_t> frozen_prefix;          ///< frozen count in [0, i)
	std::vector<std::uint32_t> good_prefix;

	/// `single_path`: free leaves follow the hard decision like good bits.
	static LeafMap build(const CodeSpec &spec, bool use_good_bits, bool single_path = false);

	std::size_t size() const { return kind.size(); }
	std::size_t constraint_count() const { return sources.size(); }
	bool all_frozen(std::size_t begin, std::size_t width) const
	{
		return frozen_prefix[begin + width] - frozen_prefix[begin] == width;
	}
	bool all_good(std::size_t begin, std::size_t width) const
	{
		return good_prefix[begin + width] - good_prefix[begin] == width;
	}
	unsigned free_count(std::size_t begin, std::size_t width) const;
	/// No frozen or parity leaf after a free leaf: every prefix of the block
	/// has a zero-penalty completion, so one joint decision matches bit-serial.
	bool joint_decision_ok(std::size_t begin, std::size_t width) const;
};

/// Decides the leaves of one subtree sequentially: frozen bits are 0, good
/// bits follow the hard decision, parity bits follow their constraint and
/// free bits take the next bit of `assignment` (first free bit = MSB).
template <class D>
class BlockEvaluator {
public:
	using Llr = typename D::Llr;
	using Metric = typename D::Metric;

	explicit BlockEvaluator(unsigned max_stage = 5);

	/// Returns the path metric after the block; the leaf decisions land in
	/// `u_out` (2^stage bits).
	Metric run(const D &dom, unsigned stage, std::span<const Llr> llrs, const LeafMap &leaves,
	           std::size_t begin, std::span<const std::uint8_t> parity_acc, std::uint32_t assignment,
	           unsigned free_bits, Metric pm, std::span<std::uint8_t> u_out);

private:
	void rec(unsigned s, const Llr *a, std::size_t off, std::uint8_t *ps_out);

	std::vector<std::vector<Llr>> llr_;
	std::vector<std::vector<std::uint8_t>> left_, right_;
	std::vector<std::uint8_t> top_;

	const D *dom_ = nullptr;
	const LeafMap *leaves_ = nullptr;
	std::size_t begin_ = 0;
	std::span<const std::uint8_t> acc_;
	std::uint32_t assignment_ = 0;
	unsigned free_bits_ = 0, next_free_ = 0;
	Metric pm_{};
	std::uint8_t *u_ = nullptr;
};

template <class D>
struct SplitPath {
	std::span<const typename D::Llr> llrs; ///< block LLRs at the block's stage
	typename D::Metric pm{};
	std::span<const std::uint8_t> parity_acc;
};

template <class Metric>
struct Survivor {
	Metric pm{};
	std::uint32_t parent = 0;
	std::uint32_t pattern = 0; ///< block bits, first leaf = MSB
	bool operator==(const Survivor &) const = default;
};

template <class Metric>
struct SplitResult {
	std::vector<Survivor<Metric>> survivors; ///< ordered by (parent, pattern)
	bool sorted = false;                     ///< a selection took place
	std::size_t candidates = 0;
};

/// Enumerate every admissible pattern of a block of at most 32 leaves on
/// every path and keep the `list_size` best by (pm, parent, pattern).
template <class D>
SplitResult<typename D::Metric> split_and_select(const D &dom, const LeafMap &leaves, std::size_t begin,
                                                 unsigned stage, std::span<const SplitPath<D>> paths,
                                                 unsigned list_size, BlockEvaluator<D> &eval);

struct SelectionOutcome {
	std::size_t index = 0;
	std::optional<bool> crc_pass;
};

/// `crc_ok` may be empty unless mode is crc_aided.
SelectionOutcome select_output(std::span<const double> pms, std::span<const std::uint8_t> crc_ok,
                               Selection mode);

/// Rebuild u from the final partial sums: stage t holds the 2^t sums of the
/// last left child at that stage, u_{N-1} is the tail bit.
BitVec recover_u(std::span<const BitVec> ps_by_stage, std::uint8_t tail);

struct SkipInfo {
	bool any = false;          ///< a leading all-frozen subtree exists
	unsigned stage = 0;        ///< its stage
	std::size_t start_leaf = 0;
};
SkipInfo first_nonfrozen_skip(const CodeSpec &spec);

struct DecodeResult {
	BitVec u_hat;
	BitVec info_hat;
	std::size_t selected_path = 0;
	double pm = 0.0;
	std::optional<bool> crc_pass;
	std::size_t final_paths = 0;
	DecodeTrace trace;
};

struct SessionOptions {
	bool trace = false;
	bool track_u = false; ///< keep a shadow copy of u per path (testing)
};

/// SC / SCL decoder with serial list processing. Paths address their LLR,
/// partial-sum and parity banks through reference-counted ids; only stages
/// t with t % stride == 0 keep internal LLRs, the rest are recomputed from
/// the nearest stored stage above when needed.
template <class D>
class ListDecoder {
public:
	using Llr = typename D::Llr;
	using Metric = typename D::Metric;
	using NodeObserver =
		std::function<void(unsigned stage, std::size_t node, std::size_t path, std::span<const Llr>)>;

	ListDecoder(const CodeSpec &spec, const DecoderProfile &profile, unsigned list_size, D domain = D{},
	            SessionOptions options = {});

	DecodeResult decode(std::span<const Llr> channel);

	/// Called with every visited node's LLRs, per path, in SC order.
	void set_node_observer(NodeObserver obs) { observer_ = std::move(obs); }

	std::size_t path_count() const { return paths_.size(); }
	BitVec recovered_u(std::size_t path) const;
	BitVec tracked_u(std::size_t path) const;
	double path_metric(std::size_t path) const { return D::to_double(paths_[path].pm); }

	const CopyStats &copy_stats() const { return stats_; }
	const StorageLayout &layout() const { return layout_; }
	const LeafMap &leaves() const { return leaves_; }
	const CodeSpec &spec() const { return spec_; }
	const DecoderProfile &profile() const { return profile_; }
	unsigned list_size() const { return list_size_; }
	const D &domain() const { return dom_; }

private:
	static constexpr unsigned max_stages = 16;
	struct Path {
		Metric pm{};
		std::array<BankId, max_stages> llr{};
		std::array<BankId, max_stages> ps{};
		BankId parity = 0;
		BankId u = 0;
		std::uint8_t tail = 0;
	};
	enum class NodeKind { inner, leaf, rate0, rate1, skip };

	NodeKind classify(unsigned s, std::size_t j) const;
	void visit(unsigned s, std::size_t j);
	void enter_stored(unsigned s, std::size_t j);
	std::span<const Llr> node_llrs(std::size_t path, unsigned t, std::size_t node, bool emit);
	void compute_child(std::size_t path, unsigned t, std::size_t node, std::span<const Llr> parent,
	                   std::span<Llr> out);
	void terminal(unsigned s, std::size_t j, NodeKind kind);
	void apply_bits(Path &p, unsigned s, std::size_t j, std::span<const std::uint8_t> u_seg);
	void retain(const Path &p);
	void release(const Path &p);
	Path fresh_path();
	void emit(const TraceEvent &e);

	CodeSpec spec_;
	DecoderProfile profile_;
	unsigned list_size_;
	D dom_;
	SessionOptions opts_;
	unsigned n_;
	std::size_t N_;
	StorageLayout layout_;
	LeafMap leaves_;
	CopyStats stats_;

	std::vector<BankPool<Llr>> llr_pools_;        // indexed by stage (unused if unstored)
	std::vector<BankPool<std::uint8_t>> ps_pools_; // stage 0..n-1
	BankPool<std::uint8_t> parity_pool_;
	BankPool<std::uint8_t> u_pool_;

	std::vector<Path> paths_;
	std::vector<Path> next_paths_;
	std::vector<std::vector<Llr>> scratch_;
	std::vector<std::uint8_t> ps_scratch_;
	std::vector<Llr> block_llrs_;
	std::vector<std::uint8_t> block_bits_;
	std::vector<SplitPath<D>> split_in_;
	BlockEvaluator<D> eval_;

	std::span<const Llr> channel_;
	DecodeTrace trace_;
	bool tracing_ = false;
	NodeObserver observer_;
};

extern template class BlockEvaluator<FloatDomain>;
extern template class BlockEvaluator<FixedDomain>;
extern template class ListDecoder<FloatDomain>;
extern template class ListDecoder<FixedDomain>;

using FloatDecoder = ListDecoder<FloatDomain>;
using FixedDecoder = ListDecoder<FixedDomain>;

} // namespace polar
