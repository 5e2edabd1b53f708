/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polar/reference.hpp"

#include <algorithm>
#include <tuple>

#include "polar/error.hpp"

namespace polar {

template <class D>
NaiveDecoder<D>::NaiveDecoder(const CodeSpec &spec, unsigned list_size, Selection selection, D domain,
                              bool use_good_bits)
	: spec_(spec), list_size_(list_size), selection_(selection), dom_(std::move(domain)),
	  leaves_(LeafMap::build(spec, use_good_bits, list_size == 1)), n_(spec.n), N_(spec.N)
{
	spec_.validate();
	if (list_size_ < 1 || !is_power_of_two(list_size_))
		throw InvalidParameter("list size must be a power of two");
	ps_.resize(N_);
}

template <class D>
void NaiveDecoder<D>::update_llrs(Path &p, std::size_t leaf)
{
	for (unsigned t = n_; t-- > 0;) {
		const std::size_t w = std::size_t{1} << t;
		if (leaf % w)
			continue;
		const std::size_t node = leaf >> t;
		const auto &parent = p.alpha[t + 1];
		auto &out = p.alpha[t];
		if ((node & 1) == 0) {
			for (std::size_t k = 0; k < w; ++k)
				out[k] = dom_.f(parent[k], parent[k + w], t);
		} else {
			std::copy_n(p.u.begin() + std::ptrdiff_t(leaf - w), w, ps_.begin());
			polar_transform_inplace(std::span(ps_).first(w));
			for (std::size_t k = 0; k < w; ++k)
				out[k] = dom_.g(parent[k + w], parent[k], ps_[k], t);
		}
	}
}

template <class D>
DecodeResult NaiveDecoder<D>::decode(std::span<const Llr> channel)
{
	if (channel.size() != N_)
		throw InvalidParameter("channel LLR vector has the wrong length");
	copied_ = 0;
	paths_.assign(1, {});
	Path &root = paths_[0];
	root.alpha.resize(n_ + 1);
	for (unsigned t = 0; t < n_; ++t)
		root.alpha[t].resize(std::size_t{1} << t);
	root.alpha[n_].assign(channel.begin(), channel.end());
	root.u.assign(N_, 0);

	struct Cand {
		Metric pm;
		std::size_t parent;
		std::uint8_t bit;
	};
	std::vector<Cand> cands;
	for (std::size_t i = 0; i < N_; ++i) {
		for (auto &p : paths_)
			update_llrs(p, i);
		const LeafKind kind = leaves_.kind[i];
		if (kind != LeafKind::free) {
			for (auto &p : paths_) {
				const Llr llr = p.alpha[0][0];
				std::uint8_t bit = 0;
				if (kind == LeafKind::good) {
					bit = D::hard(llr);
				} else if (kind == LeafKind::parity) {
					for (auto src : leaves_.sources[std::size_t(leaves_.constraint[i])])
						bit ^= p.u[src];
				}
				if (bit != D::hard(llr))
					p.pm = dom_.penalize(p.pm, llr);
				p.u[i] = bit;
			}
			continue;
		}
		cands.clear();
		for (std::size_t j = 0; j < paths_.size(); ++j) {
			const Llr llr = paths_[j].alpha[0][0];
			for (std::uint8_t b = 0; b < 2; ++b) {
				Metric pm = paths_[j].pm;
				if (b != D::hard(llr))
					pm = dom_.penalize(pm, llr);
				cands.push_back({pm, j, b});
			}
		}
		auto key = [](const Cand &c) { return std::tie(c.pm, c.parent, c.bit); };
		if (cands.size() > list_size_) {
			std::sort(cands.begin(), cands.end(), [&](const Cand &a, const Cand &b) { return key(a) < key(b); });
			cands.resize(list_size_);
			std::sort(cands.begin(), cands.end(), [](const Cand &a, const Cand &b) {
				return std::tie(a.parent, a.bit) < std::tie(b.parent, b.bit);
			});
		}
		std::vector<Path> next;
		next.reserve(cands.size());
		std::vector<bool> used(paths_.size(), false);
		for (const auto &c : cands) {
			if (used[c.parent]) {
				next.push_back(paths_[c.parent]);
				for (const auto &a : paths_[c.parent].alpha)
					copied_ += a.size();
				copied_ += N_;
			} else {
				next.push_back(paths_[c.parent]);
				used[c.parent] = true;
			}
			next.back().pm = c.pm;
			next.back().u[i] = c.bit;
		}
		paths_ = std::move(next);
		std::vector<Metric> pms(paths_.size());
		for (std::size_t j = 0; j < paths_.size(); ++j)
			pms[j] = paths_[j].pm;
		dom_.normalize(pms);
		for (std::size_t j = 0; j < paths_.size(); ++j)
			paths_[j].pm = pms[j];
	}

	DecodeResult res;
	res.final_paths = paths_.size();
	std::vector<double> pms(paths_.size());
	std::vector<std::uint8_t> crc_ok;
	const bool use_crc = selection_ == Selection::crc_aided && spec_.crc;
	for (std::size_t j = 0; j < paths_.size(); ++j) {
		pms[j] = D::to_double(paths_[j].pm);
		if (use_crc)
			crc_ok.push_back(crc_check(extract_data(paths_[j].u, spec_), *spec_.crc));
	}
	auto sel = select_output(pms, crc_ok, use_crc ? Selection::crc_aided : Selection::best_pm);
	res.selected_path = sel.index;
	res.crc_pass = sel.crc_pass;
	res.pm = pms[sel.index];
	res.u_hat = paths_[sel.index].u;
	if (spec_.crc && !use_crc)
		res.crc_pass = crc_check(extract_data(res.u_hat, spec_), *spec_.crc);
	res.info_hat = extract_info(res.u_hat, spec_);
	return res;
}

template class NaiveDecoder<FloatDomain>;
template class NaiveDecoder<FixedDomain>;

} // namespace polar
