/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polar/decoder.hpp"

#include <algorithm>
#include <numeric>

#include "polar/error.hpp"

namespace polar {

LeafMap LeafMap::build(const CodeSpec &spec, bool use_good_bits, bool single_path)
{
	LeafMap m;
	const std::size_t N = spec.N;
	m.kind.assign(N, LeafKind::free);
	m.constraint.assign(N, -1);
	m.feeds.assign(N, {});
	for (std::size_t i = 0; i < N; ++i) {
		if (spec.frozen_mask[i])
			m.kind[i] = LeafKind::frozen;
		else if (single_path || (use_good_bits && spec.good_mask[i]))
			m.kind[i] = LeafKind::good;
	}
	if (spec.pc) {
		for (const auto &c : spec.pc->constraints) {
			auto id = std::int32_t(m.sources.size());
			auto src = c.sources;
			std::sort(src.begin(), src.end());
			src.erase(std::unique(src.begin(), src.end()), src.end());
			for (auto s : src)
				m.feeds[s].push_back(std::uint32_t(id));
			m.sources.push_back(std::move(src));
			m.kind[c.parity_position] = LeafKind::parity;
			m.constraint[c.parity_position] = id;
		}
	}
	m.frozen_prefix.assign(N + 1, 0);
	m.good_prefix.assign(N + 1, 0);
	for (std::size_t i = 0; i < N; ++i) {
		m.frozen_prefix[i + 1] = m.frozen_prefix[i] + (m.kind[i] == LeafKind::frozen);
		m.good_prefix[i + 1] = m.good_prefix[i] + (m.kind[i] == LeafKind::good);
	}
	return m;
}

unsigned LeafMap::free_count(std::size_t begin, std::size_t width) const
{
	unsigned c = 0;
	for (std::size_t i = begin; i < begin + width; ++i)
		c += kind[i] == LeafKind::free;
	return c;
}

bool LeafMap::joint_decision_ok(std::size_t begin, std::size_t width) const
{
	bool seen_free = false;
	for (std::size_t i = begin; i < begin + width; ++i) {
		if (kind[i] == LeafKind::free)
			seen_free = true;
		else if (seen_free && (kind[i] == LeafKind::frozen || kind[i] == LeafKind::parity))
			return false;
	}
	return true;
}

template <class D>
BlockEvaluator<D>::BlockEvaluator(unsigned max_stage)
{
	llr_.resize(max_stage + 1);
	left_.resize(max_stage + 1);
	right_.resize(max_stage + 1);
	for (unsigned s = 0; s <= max_stage; ++s) {
		llr_[s].resize(std::size_t{1} << s);
		left_[s].resize(std::size_t{1} << s);
		right_[s].resize(std::size_t{1} << s);
	}
	top_.resize(std::size_t{1} << max_stage);
}

template <class D>
typename D::Metric BlockEvaluator<D>::run(const D &dom, unsigned stage, std::span<const Llr> llrs,
                                          const LeafMap &leaves, std::size_t begin,
                                          std::span<const std::uint8_t> parity_acc,
                                          std::uint32_t assignment, unsigned free_bits, Metric pm,
                                          std::span<std::uint8_t> u_out)
{
	if (stage >= llr_.size())
		*this = BlockEvaluator(stage);
	dom_ = &dom;
	leaves_ = &leaves;
	begin_ = begin;
	acc_ = parity_acc;
	assignment_ = assignment;
	free_bits_ = free_bits;
	next_free_ = 0;
	pm_ = pm;
	u_ = u_out.data();
	rec(stage, llrs.data(), 0, top_.data());
	return pm_;
}

template <class D>
void BlockEvaluator<D>::rec(unsigned s, const Llr *a, std::size_t off, std::uint8_t *ps_out)
{
	if (s == 0) {
		const std::size_t pos = begin_ + off;
		const Llr llr = a[0];
		const std::uint8_t hard = D::hard(llr);
		std::uint8_t bit = 0;
		switch (leaves_->kind[pos]) {
		case LeafKind::frozen:
			bit = 0;
			break;
		case LeafKind::good:
			bit = hard;
			break;
		case LeafKind::parity: {
			auto c = std::size_t(leaves_->constraint[pos]);
			bit = acc_[c];
			for (auto src : leaves_->sources[c])
				if (src >= begin_)
					bit ^= u_[src - begin_];
			break;
		}
		case LeafKind::free:
			bit = (assignment_ >> (free_bits_ - 1 - next_free_)) & 1;
			++next_free_;
			break;
		}
		if (bit != hard)
			pm_ = dom_->penalize(pm_, llr);
		u_[off] = bit;
		ps_out[0] = bit;
		return;
	}
	const std::size_t h = std::size_t{1} << (s - 1);
	Llr *c = llr_[s - 1].data();
	for (std::size_t k = 0; k < h; ++k)
		c[k] = dom_->f(a[k], a[k + h], s - 1);
	std::uint8_t *pl = left_[s - 1].data();
	rec(s - 1, c, off, pl);
	for (std::size_t k = 0; k < h; ++k)
		c[k] = dom_->g(a[k + h], a[k], pl[k], s - 1);
	std::uint8_t *pr = right_[s - 1].data();
	rec(s - 1, c, off + h, pr);
	for (std::size_t k = 0; k < h; ++k) {
		ps_out[k] = pl[k] ^ pr[k];
		ps_out[k + h] = pr[k];
	}
}

template <class D>
SplitResult<typename D::Metric> split_and_select(const D &dom, const LeafMap &leaves, std::size_t begin,
                                                 unsigned stage, std::span<const SplitPath<D>> paths,
                                                 unsigned list_size, BlockEvaluator<D> &eval)
{
	using Metric = typename D::Metric;
	const std::size_t width = std::size_t{1} << stage;
	if (width > 32)
		throw ContractViolation("split_and_select: block wider than 32 leaves");
	const unsigned free_bits = leaves.free_count(begin, width);
	const std::uint32_t options = 1u << free_bits;

	SplitResult<Metric> out;
	out.candidates = paths.size() * options;
	out.survivors.reserve(out.candidates);
	std::uint8_t u[32];
	for (std::size_t p = 0; p < paths.size(); ++p) {
		for (std::uint32_t a = 0; a < options; ++a) {
			Metric pm = eval.run(dom, stage, paths[p].llrs, leaves, begin, paths[p].parity_acc, a, free_bits,
			                     paths[p].pm, std::span<std::uint8_t>(u, width));
			std::uint32_t pattern = 0;
			for (std::size_t i = 0; i < width; ++i)
				pattern = (pattern << 1) | u[i];
			out.survivors.push_back({pm, std::uint32_t(p), pattern});
		}
	}
	if (free_bits == 0)
		return out;
	out.sorted = true;
	auto by_metric = [](const Survivor<Metric> &x, const Survivor<Metric> &y) {
		if (x.pm != y.pm)
			return x.pm < y.pm;
		if (x.parent != y.parent)
			return x.parent < y.parent;
		return x.pattern < y.pattern;
	};
	if (out.survivors.size() > list_size) {
		std::partial_sort(out.survivors.begin(), out.survivors.begin() + list_size, out.survivors.end(),
		                  by_metric);
		out.survivors.resize(list_size);
	}
	std::sort(out.survivors.begin(), out.survivors.end(), [](const auto &x, const auto &y) {
		return x.parent != y.parent ? x.parent < y.parent : x.pattern < y.pattern;
	});
	return out;
}

SelectionOutcome select_output(std::span<const double> pms, std::span<const std::uint8_t> crc_ok,
                               Selection mode)
{
	if (pms.empty())
		throw ContractViolation("select_output: no paths");
	auto argmin = [&](auto &&admit) {
		std::optional<std::size_t> best;
		for (std::size_t i = 0; i < pms.size(); ++i)
			if (admit(i) && (!best || pms[i] < pms[*best]))
				best = i;
		return best;
	};
	SelectionOutcome out;
	if (mode == Selection::crc_aided) {
		if (crc_ok.size() != pms.size())
			throw ContractViolation("select_output: CRC flags missing");
		if (auto best = argmin([&](std::size_t i) { return crc_ok[i] != 0; })) {
			out.index = *best;
			out.crc_pass = true;
			return out;
		}
		out.crc_pass = false;
	}
	out.index = *argmin([](std::size_t) { return true; });
	return out;
}

BitVec recover_u(std::span<const BitVec> ps_by_stage, std::uint8_t tail)
{
	const unsigned n = unsigned(ps_by_stage.size());
	const std::size_t N = std::size_t{1} << n;
	BitVec u(N, 0);
	for (unsigned t = 0; t < n; ++t) {
		const std::size_t w = std::size_t{1} << t;
		if (ps_by_stage[t].size() != w)
			throw ContractViolation("recover_u: stage " + std::to_string(t) + " has wrong size");
		std::copy(ps_by_stage[t].begin(), ps_by_stage[t].end(), u.begin() + std::ptrdiff_t(N - 2 * w));
		polar_transform_inplace(std::span(u).subspan(N - 2 * w, w));
	}
	u[N - 1] = tail;
	return u;
}

SkipInfo first_nonfrozen_skip(const CodeSpec &spec)
{
	SkipInfo info;
	for (int s = int(spec.n); s >= 0; --s) {
		std::size_t w = std::size_t{1} << s;
		if (std::all_of(spec.frozen_mask.begin(), spec.frozen_mask.begin() + std::ptrdiff_t(w),
		                [](std::uint8_t f) { return f != 0; })) {
			info.any = true;
			info.stage = unsigned(s);
			info.start_leaf = w;
			return info;
		}
	}
	return info;
}

// ---------------------------------------------------------------------------

template <class D>
ListDecoder<D>::ListDecoder(const CodeSpec &spec, const DecoderProfile &profile, unsigned list_size,
                            D domain, SessionOptions options)
	: spec_(spec), profile_(profile), list_size_(list_size), dom_(std::move(domain)), opts_(options),
	  n_(spec.n), N_(spec.N), eval_(std::max(5u, spec.n))
{
	spec_.validate();
	profile_.validate_run(N_, list_size_);
	layout_ = StorageLayout::make(n_, profile_.storage_stride,
	                              profile_.kind == DecoderKind::ultra ? 4u : 0u);
	leaves_ = LeafMap::build(spec_, profile_.good_bits, list_size_ == 1);

	const std::size_t cap = list_size_;
	llr_pools_.resize(n_);
	ps_pools_.resize(n_);
	scratch_.resize(n_);
	for (unsigned t = 0; t < n_; ++t) {
		if (layout_.stored(t))
			llr_pools_[t] = BankPool<Llr>(std::size_t{1} << t, cap, &stats_);
		ps_pools_[t] = BankPool<std::uint8_t>(std::size_t{1} << t, cap, &stats_);
		scratch_[t].resize(std::size_t{1} << t);
	}
	if (leaves_.constraint_count())
		parity_pool_ = BankPool<std::uint8_t>(leaves_.constraint_count(), cap, &stats_);
	if (opts_.track_u)
		u_pool_ = BankPool<std::uint8_t>(N_, cap, nullptr);
	ps_scratch_.resize(N_);
	paths_.reserve(cap);
	next_paths_.reserve(cap);
}

template <class D>
typename ListDecoder<D>::Path ListDecoder<D>::fresh_path()
{
	Path p;
	for (unsigned t = 0; t < n_; ++t) {
		if (layout_.stored(t))
			p.llr[t] = llr_pools_[t].acquire();
		p.ps[t] = ps_pools_[t].acquire();
		auto s = ps_pools_[t].span(p.ps[t]);
		std::fill(s.begin(), s.end(), 0);
	}
	if (leaves_.constraint_count()) {
		p.parity = parity_pool_.acquire();
		auto s = parity_pool_.span(p.parity);
		std::fill(s.begin(), s.end(), 0);
	}
	if (opts_.track_u) {
		p.u = u_pool_.acquire();
		auto s = u_pool_.span(p.u);
		std::fill(s.begin(), s.end(), 0);
	}
	return p;
}

template <class D>
void ListDecoder<D>::retain(const Path &p)
{
	for (unsigned t = 0; t < n_; ++t) {
		if (layout_.stored(t))
			llr_pools_[t].retain(p.llr[t]);
		ps_pools_[t].retain(p.ps[t]);
	}
	if (leaves_.constraint_count())
		parity_pool_.retain(p.parity);
	if (opts_.track_u)
		u_pool_.retain(p.u);
}

template <class D>
void ListDecoder<D>::release(const Path &p)
{
	for (unsigned t = 0; t < n_; ++t) {
		if (layout_.stored(t))
			llr_pools_[t].release(p.llr[t]);
		ps_pools_[t].release(p.ps[t]);
	}
	if (leaves_.constraint_count())
		parity_pool_.release(p.parity);
	if (opts_.track_u)
		u_pool_.release(p.u);
}

template <class D>
void ListDecoder<D>::emit(const TraceEvent &e)
{
	if (tracing_)
		trace_.events.push_back(e);
}

template <class D>
DecodeResult ListDecoder<D>::decode(std::span<const Llr> channel)
{
	if (channel.size() != N_)
		throw InvalidParameter("channel LLR vector has length " + std::to_string(channel.size()) +
		                       ", expected " + std::to_string(N_));
	channel_ = channel;
	stats_ = {};
	trace_ = {};
	trace_.list_size = list_size_;
	tracing_ = opts_.trace;
	for (auto &pool : llr_pools_)
		pool.reset();
	for (auto &pool : ps_pools_)
		pool.reset();
	parity_pool_.reset();
	u_pool_.reset();
	paths_.clear();
	paths_.push_back(fresh_path());

	visit(n_, 0);

	DecodeResult res;
	res.final_paths = paths_.size();
	std::vector<double> pms(paths_.size());
	std::vector<BitVec> us(paths_.size());
	std::vector<std::uint8_t> crc_ok;
	const bool use_crc = profile_.selection == Selection::crc_aided && spec_.crc;
	for (std::size_t i = 0; i < paths_.size(); ++i) {
		pms[i] = D::to_double(paths_[i].pm);
		us[i] = recovered_u(i);
		if (use_crc)
			crc_ok.push_back(crc_check(extract_data(us[i], spec_), *spec_.crc));
	}
	auto sel = select_output(pms, crc_ok, use_crc ? Selection::crc_aided : Selection::best_pm);
	res.selected_path = sel.index;
	res.crc_pass = sel.crc_pass;
	if (spec_.crc && !use_crc)
		res.crc_pass = crc_check(extract_data(us[sel.index], spec_), *spec_.crc);
	res.pm = pms[sel.index];
	res.u_hat = std::move(us[sel.index]);
	res.info_hat = extract_info(res.u_hat, spec_);
	if (opts_.trace)
		res.trace = std::move(trace_);
	return res;
}

template <class D>
BitVec ListDecoder<D>::recovered_u(std::size_t path) const
{
	std::vector<BitVec> ps(n_);
	for (unsigned t = 0; t < n_; ++t) {
		auto s = ps_pools_[t].span(paths_[path].ps[t]);
		ps[t].assign(s.begin(), s.end());
	}
	return recover_u(ps, paths_[path].tail);
}

template <class D>
BitVec ListDecoder<D>::tracked_u(std::size_t path) const
{
	if (!opts_.track_u)
		throw ContractViolation("tracked_u: session was not created with track_u");
	auto s = u_pool_.span(paths_[path].u);
	return {s.begin(), s.end()};
}

template <class D>
typename ListDecoder<D>::NodeKind ListDecoder<D>::classify(unsigned s, std::size_t j) const
{
	const std::size_t w = std::size_t{1} << s;
	const std::size_t b = j << s;
	if (profile_.skip_frozen_prefix && j == 0 && leaves_.all_frozen(b, w))
		return NodeKind::skip;
	if (profile_.special_nodes && s >= 1 && w <= profile_.max_special_node) {
		if (leaves_.all_frozen(b, w))
			return NodeKind::rate0;
		if (leaves_.all_good(b, w))
			return NodeKind::rate1;
	}
	if (s == 0)
		return NodeKind::leaf;
	if (profile_.multi_bit && w <= profile_.leaf_width && leaves_.joint_decision_ok(b, w))
		return NodeKind::leaf;
	return NodeKind::inner;
}

template <class D>
void ListDecoder<D>::compute_child(std::size_t path, unsigned t, std::size_t node,
                                   std::span<const Llr> parent, std::span<Llr> out)
{
	const std::size_t h = std::size_t{1} << t;
	if ((node & 1) == 0) {
		for (std::size_t k = 0; k < h; ++k)
			out[k] = dom_.f(parent[k], parent[k + h], t);
	} else {
		auto ps = ps_pools_[t].span(paths_[path].ps[t]);
		for (std::size_t k = 0; k < h; ++k)
			out[k] = dom_.g(parent[k + h], parent[k], ps[k], t);
	}
}

template <class D>
std::span<const typename D::Llr> ListDecoder<D>::node_llrs(std::size_t path, unsigned t, std::size_t node,
                                                           bool emit_events)
{
	if (t == n_)
		return channel_;
	if (layout_.stored(t))
		return llr_pools_[t].span(paths_[path].llr[t]);
	auto parent = node_llrs(path, t + 1, node >> 1, emit_events);
	compute_child(path, t, node, parent, scratch_[t]);
	if (emit_events)
		emit({TraceKind::llr_op, std::uint8_t(t), (node & 1) != 0, true, false,
		      std::uint16_t(paths_.size()), 0});
	return scratch_[t];
}

template <class D>
void ListDecoder<D>::enter_stored(unsigned s, std::size_t j)
{
	auto &pool = llr_pools_[s];
	for (std::size_t i = 0; i < paths_.size(); ++i) {
		auto parent = node_llrs(i, s + 1, j >> 1, i == 0);
		BankId id = pool.own_for_overwrite(paths_[i].llr[s]);
		paths_[i].llr[s] = id;
		compute_child(i, s, j, parent, pool.span(id));
	}
	emit({TraceKind::llr_op, std::uint8_t(s), (j & 1) != 0, false, false, std::uint16_t(paths_.size()), 0});
}

template <class D>
void ListDecoder<D>::visit(unsigned s, std::size_t j)
{
	const NodeKind kind = classify(s, j);
	const bool was_tracing = tracing_;
	if (kind == NodeKind::skip)
		tracing_ = false;
	if (s < n_ && layout_.stored(s))
		enter_stored(s, j);
	tracing_ = was_tracing;

	if (observer_ && s < n_) {
		const bool t = tracing_;
		tracing_ = false;
		for (std::size_t i = 0; i < paths_.size(); ++i)
			observer_(s, j, i, node_llrs(i, s, j, false));
		tracing_ = t;
	}

	if (kind == NodeKind::inner) {
		visit(s - 1, 2 * j);
		visit(s - 1, 2 * j + 1);
		return;
	}
	terminal(s, j, kind);
}

template <class D>
void ListDecoder<D>::terminal(unsigned s, std::size_t j, NodeKind kind)
{
	const std::size_t w = std::size_t{1} << s;
	const std::size_t b = j << s;
	const std::size_t P = paths_.size();

	const bool was_tracing = tracing_;
	if (kind == NodeKind::skip)
		tracing_ = false;
	block_llrs_.resize(P * w);
	for (std::size_t i = 0; i < P; ++i) {
		auto v = node_llrs(i, s, j, i == 0);
		std::copy(v.begin(), v.end(), block_llrs_.begin() + std::ptrdiff_t(i * w));
	}
	tracing_ = was_tracing;

	auto parity_of = [&](const Path &p) -> std::span<const std::uint8_t> {
		if (!leaves_.constraint_count())
			return {};
		return parity_pool_.span(p.parity);
	};

	if (kind != NodeKind::leaf) {
		// Forced decisions only: no split, paths stay in place.
		block_bits_.resize(w);
		for (std::size_t i = 0; i < P; ++i) {
			Path &p = paths_[i];
			p.pm = eval_.run(dom_, s, std::span<const Llr>(block_llrs_).subspan(i * w, w), leaves_, b,
			                 parity_of(p), 0, 0, p.pm, block_bits_);
			apply_bits(p, s, j, block_bits_);
		}
		TraceEvent e{kind == NodeKind::skip ? TraceKind::skip : TraceKind::special, std::uint8_t(s)};
		e.paths = std::uint16_t(P);
		emit(e);
		return;
	}

	split_in_.resize(P);
	for (std::size_t i = 0; i < P; ++i)
		split_in_[i] = {std::span<const Llr>(block_llrs_).subspan(i * w, w), paths_[i].pm, parity_of(paths_[i])};
	auto split = split_and_select<D>(dom_, leaves_, b, s, split_in_, list_size_, eval_);

	next_paths_.clear();
	std::uint32_t last_parent = ~0u;
	for (const auto &sv : split.survivors) {
		Path np = paths_[sv.parent];
		retain(np);
		np.pm = sv.pm;
		if (sv.parent == last_parent)
			++stats_.clone_events;
		last_parent = sv.parent;
		next_paths_.push_back(np);
	}
	for (const auto &p : paths_)
		release(p);
	std::swap(paths_, next_paths_);

	if (split.sorted) {
		std::vector<Metric> pms(paths_.size());
		for (std::size_t i = 0; i < paths_.size(); ++i)
			pms[i] = paths_[i].pm;
		dom_.normalize(pms);
		for (std::size_t i = 0; i < paths_.size(); ++i)
			paths_[i].pm = pms[i];
	}

	block_bits_.resize(w);
	for (std::size_t i = 0; i < paths_.size(); ++i) {
		std::uint32_t pattern = split.survivors[i].pattern;
		for (std::size_t k = 0; k < w; ++k)
			block_bits_[k] = (pattern >> (w - 1 - k)) & 1;
		apply_bits(paths_[i], s, j, block_bits_);
	}

	TraceEvent e{TraceKind::leaf, std::uint8_t(s)};
	e.sorted = split.sorted;
	e.paths = std::uint16_t(P);
	e.candidates = std::uint32_t(split.candidates);
	emit(e);
}

template <class D>
void ListDecoder<D>::apply_bits(Path &p, unsigned s, std::size_t j, std::span<const std::uint8_t> u_seg)
{
	const std::size_t w = std::size_t{1} << s;
	const std::size_t b = j << s;

	if (leaves_.constraint_count()) {
		bool touched = false;
		for (std::size_t k = 0; k < w; ++k) {
			if (!u_seg[k] || leaves_.feeds[b + k].empty())
				continue;
			if (!touched) {
				p.parity = parity_pool_.own_for_update(p.parity);
				touched = true;
			}
			auto acc = parity_pool_.span(p.parity);
			for (auto c : leaves_.feeds[b + k])
				acc[c] ^= 1;
		}
	}
	if (opts_.track_u) {
		p.u = u_pool_.own_for_update(p.u);
		std::copy(u_seg.begin(), u_seg.end(), u_pool_.span(p.u).begin() + std::ptrdiff_t(b));
	}
	if (b + w == N_)
		p.tail = u_seg[w - 1];

	// Partial sums of the last left child at each stage inside the block.
	for (unsigned t = 0; t < s; ++t) {
		const std::size_t tw = std::size_t{1} << t;
		p.ps[t] = ps_pools_[t].own_for_overwrite(p.ps[t]);
		auto dst = ps_pools_[t].span(p.ps[t]);
		std::copy_n(u_seg.begin() + std::ptrdiff_t(w - 2 * tw), tw, dst.begin());
		polar_transform_inplace(dst);
	}

	// Partial sums of the block itself, merged upward through right children.
	std::copy(u_seg.begin(), u_seg.end(), ps_scratch_.begin());
	polar_transform_inplace(std::span(ps_scratch_).first(w));
	unsigned stage = s;
	std::size_t node = j;
	while (stage < n_) {
		const std::size_t sw = std::size_t{1} << stage;
		if ((node & 1) == 0) {
			p.ps[stage] = ps_pools_[stage].own_for_overwrite(p.ps[stage]);
			std::copy_n(ps_scratch_.begin(), sw, ps_pools_[stage].span(p.ps[stage]).begin());
			break;
		}
		auto left = ps_pools_[stage].span(p.ps[stage]);
		std::copy_backward(ps_scratch_.begin(), ps_scratch_.begin() + std::ptrdiff_t(sw),
		                   ps_scratch_.begin() + std::ptrdiff_t(2 * sw));
		for (std::size_t k = 0; k < sw; ++k)
			ps_scratch_[k] = left[k] ^ ps_scratch_[k + sw];
		++stage;
		node >>= 1;
	}
}

template class BlockEvaluator<FloatDomain>;
template class BlockEvaluator<FixedDomain>;
template class ListDecoder<FloatDomain>;
template class ListDecoder<FixedDomain>;

template SplitResult<FloatDomain::Metric> split_and_select<FloatDomain>(
	const FloatDomain &, const LeafMap &, std::size_t, unsigned, std::span<const SplitPath<FloatDomain>>,
	unsigned, BlockEvaluator<FloatDomain> &);
template SplitResult<FixedDomain::Metric> split_and_select<FixedDomain>(
	const FixedDomain &, const LeafMap &, std::size_t, unsigned, std::span<const SplitPath<FixedDomain>>,
	unsigned, BlockEvaluator<FixedDomain> &);

} // namespace polar
