/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <random>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "polar/channel.hpp"
#include "polar/code.hpp"
#include "polar/decoder.hpp"

namespace testing {

using namespace polar;

/// Code with a random frozen set (not from a construction).
inline CodeSpec random_spec(std::mt19937_64 &rng, std::size_t N, std::size_t k)
{
	CodeSpec s;
	s.N = N;
	s.n = log2_exact(N);
	s.k = k;
	s.frozen_mask.assign(N, 1);
	s.good_mask.assign(N, 0);
	std::vector<std::size_t> idx(N);
	for (std::size_t i = 0; i < N; ++i)
		idx[i] = i;
	std::shuffle(idx.begin(), idx.end(), rng);
	for (std::size_t i = 0; i < k; ++i)
		s.frozen_mask[idx[i]] = 0;
	s.method = Construction::external_sequence;
	return s;
}

/// Constructed (realistic) code, or a random one, picked at random.
inline CodeSpec mixed_spec(std::mt19937_64 &rng, std::size_t N)
{
	std::size_t k = 1 + rng() % N;
	if (rng() % 2)
		return random_spec(rng, N, k);
	return construct_code(N, k, Construction::bhattacharyya, 0.5);
}

/// Adds a few random parity constraints over earlier information bits.
inline void add_parity(std::mt19937_64 &rng, CodeSpec &s, std::size_t count)
{
	auto info = s.info_positions();
	ParityCheckSpec pc;
	std::vector<bool> used(s.N, false);
	for (std::size_t c = 0; c < count && info.size() > 2; ++c) {
		std::size_t j = 1 + rng() % (info.size() - 1);
		std::size_t pos = info[j];
		if (used[pos])
			continue;
		used[pos] = true;
		ParityConstraint pcn{pos, {}};
		for (std::size_t i = 0; i < j; ++i)
			if (rng() % 3 == 0)
				pcn.sources.push_back(info[i]);
		pc.constraints.push_back(pcn);
	}
	if (s.crc) {
		for (auto p : s.crc_positions())
			if (used[p])
				return;
	}
	if (pc.constraints.size() < s.k)
		s.pc = pc;
}

/// Noisy channel LLRs of a random codeword.
inline std::vector<double> noisy_llrs(std::mt19937_64 &rng, const CodeSpec &s, double esn0_db, BitVec *u = nullptr)
{
	BitVec payload = oracle::random_bits(rng, s.payload_size());
	BitVec src = build_source(payload, s);
	if (u)
		*u = src;
	SplitMix64 g(rng());
	return transmit(polar_transform(src), esn0_db, g);
}

inline std::vector<float> to_float(const std::vector<double> &v)
{
	return {v.begin(), v.end()};
}

inline std::vector<std::int16_t> to_fixed(const std::vector<double> &v, const QuantProfile &q)
{
	std::vector<std::int16_t> out(v.size());
	for (std::size_t i = 0; i < v.size(); ++i)
		out[i] = std::int16_t(quantize_channel_llr(v[i], q).value());
	return out;
}

template <class D>
auto channel_for(const std::vector<double> &v, const D &dom)
{
	if constexpr (D::quantized)
		return to_fixed(v, dom.profile());
	else
		return to_float(v);
}

} // namespace testing

namespace testing {

/// LLR of leaf `i` of a block given the decisions on leaves before it.
template <class D>
typename D::Llr block_leaf_llr(const D &dom, std::vector<typename D::Llr> a, const BitVec &u, std::size_t i,
                               unsigned stage)
{
	std::size_t off = 0;
	while (stage > 0) {
		const std::size_t h = std::size_t{1} << (stage - 1);
		std::vector<typename D::Llr> c(h);
		if (i - off < h) {
			for (std::size_t k = 0; k < h; ++k)
				c[k] = dom.f(a[k], a[k + h], stage - 1);
		} else {
			BitVec left(u.begin() + std::ptrdiff_t(off), u.begin() + std::ptrdiff_t(off + h));
			left = oracle::matrix_transform(left);
			for (std::size_t k = 0; k < h; ++k)
				c[k] = dom.g(a[k + h], a[k], left[k], stage - 1);
			off += h;
		}
		a = c;
		--stage;
	}
	return a[0];
}

template <class Metric>
struct LeafSurvivor {
	Metric pm;
	std::uint32_t parent;
	std::uint32_t pattern;
	bool operator==(const LeafSurvivor &) const = default;
};

/// Bit-serial splitting of one block: after every free leaf, keep the best
/// `L` by (pm, parent, decided prefix). No normalization between leaves.
template <class D>
std::vector<LeafSurvivor<typename D::Metric>> bit_serial_block(const D &dom, const LeafMap &leaves,
                                                               std::size_t begin, unsigned stage,
                                                               std::span<const SplitPath<D>> paths, unsigned L)
{
	using Metric = typename D::Metric;
	struct Partial {
		Metric pm;
		std::uint32_t parent;
		BitVec u;
	};
	const std::size_t w = std::size_t{1} << stage;
	std::vector<Partial> cur;
	for (std::uint32_t p = 0; p < paths.size(); ++p)
		cur.push_back({paths[p].pm, p, {}});
	for (std::size_t i = 0; i < w; ++i) {
		const std::size_t pos = begin + i;
		std::vector<Partial> next;
		for (const auto &c : cur) {
			std::vector<typename D::Llr> a(paths[c.parent].llrs.begin(), paths[c.parent].llrs.end());
			BitVec padded = c.u;
			padded.resize(w, 0);
			auto llr = block_leaf_llr(dom, a, padded, i, stage);
			auto hard = D::hard(llr);
			std::vector<std::uint8_t> options;
			switch (leaves.kind[pos]) {
			case LeafKind::frozen: options = {0}; break;
			case LeafKind::good: options = {hard}; break;
			case LeafKind::free: options = {0, 1}; break;
			case LeafKind::parity: {
				auto id = std::size_t(leaves.constraint[pos]);
				std::uint8_t b = paths[c.parent].parity_acc[id];
				for (auto s : leaves.sources[id])
					if (s >= begin)
						b ^= c.u[s - begin];
				options = {b};
				break;
			}
			}
			for (auto b : options) {
				Partial n = c;
				n.u.push_back(b);
				if (b != hard)
					n.pm = dom.penalize(n.pm, llr);
				next.push_back(n);
			}
		}
		if (leaves.kind[pos] == LeafKind::free && next.size() > L) {
			std::sort(next.begin(), next.end(), [](const Partial &x, const Partial &y) {
				return std::tie(x.pm, x.parent, x.u) < std::tie(y.pm, y.parent, y.u);
			});
			next.resize(L);
		}
		cur = next;
	}
	std::vector<LeafSurvivor<Metric>> out;
	for (const auto &c : cur) {
		std::uint32_t pat = 0;
		for (auto b : c.u)
			pat = (pat << 1) | b;
		out.push_back({c.pm, c.parent, pat});
	}
	std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) {
		return std::tie(x.parent, x.pattern) < std::tie(y.parent, y.pattern);
	});
	return out;
}

/// A random leaf-decision instance at N=16: code, block, and 1..L paths.
template <class D>
struct LeafInstance {
	CodeSpec spec;
	LeafMap leaves;
	std::size_t begin = 0;
	unsigned stage = 0;
	unsigned L = 1;
	std::vector<std::vector<typename D::Llr>> llrs;
	std::vector<BitVec> acc;
	std::vector<SplitPath<D>> paths;
};

template <class D>
LeafInstance<D> random_leaf_instance(std::mt19937_64 &rng, const D &dom, unsigned width)
{
	LeafInstance<D> inst;
	for (;;) {
		inst.spec = mixed_spec(rng, 16);
		if (rng() % 3 == 0)
			inst.spec.good_mask = [&] {
				BitVec g(16, 0);
				for (std::size_t i = 0; i < 16; ++i)
					g[i] = !inst.spec.frozen_mask[i] && rng() % 4 == 0;
				return g;
			}();
		if (rng() % 3 == 0)
			add_parity(rng, inst.spec, 3);
		inst.leaves = LeafMap::build(inst.spec, true);
		inst.stage = log2_exact(width);
		inst.begin = (rng() % (16 / width)) * width;
		if (inst.leaves.joint_decision_ok(inst.begin, width))
			break;
	}
	inst.L = 1u << (rng() % 4);
	const std::size_t P = 1 + rng() % inst.L;
	const std::size_t nc = inst.leaves.constraint_count();
	for (std::size_t p = 0; p < P; ++p) {
		std::vector<typename D::Llr> v(width);
		for (auto &x : v) {
			int r = int(rng() % 41) - 20;
			if constexpr (D::quantized)
				x = typename D::Llr(r);
			else
				x = typename D::Llr(r) / 4;
		}
		inst.llrs.push_back(v);
		inst.acc.push_back(oracle::random_bits(rng, nc));
	}
	for (std::size_t p = 0; p < P; ++p) {
		typename D::Metric pm = typename D::Metric(rng() % 12);
		inst.paths.push_back({inst.llrs[p], pm, inst.acc[p]});
	}
	return inst;
}

template <class D>
bool leaf_instance_agrees(const D &dom, LeafInstance<D> &inst)
{
	BlockEvaluator<D> ev;
	auto joint = split_and_select<D>(dom, inst.leaves, inst.begin, inst.stage, inst.paths, inst.L, ev);
	auto serial = bit_serial_block<D>(dom, inst.leaves, inst.begin, inst.stage, inst.paths, inst.L);
	if (joint.survivors.size() != serial.size())
		return false;
	for (std::size_t i = 0; i < serial.size(); ++i) {
		const auto &a = joint.survivors[i];
		if (a.pm != serial[i].pm || a.parent != serial[i].parent || a.pattern != serial[i].pattern)
			return false;
	}
	return true;
}

} // namespace testing
