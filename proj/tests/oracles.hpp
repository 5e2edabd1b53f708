/*
 * SPDX-License-Identifier: Apache-2.0
 */

// Independent reference computations shared by the test binaries. None of
// these call into the library's algorithms they are used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "polar/code.hpp"

namespace oracle {

using polar::BitVec;

/// u * F^{(x)n} by explicit generator-matrix product.
inline BitVec matrix_transform(const BitVec &u)
{
	const std::size_t N = u.size();
	// G[i][j] = 1 iff (j & i) == j, for F = [[1,0],[1,1]] in natural order.
	BitVec c(N, 0);
	for (std::size_t i = 0; i < N; ++i)
		if (u[i])
			for (std::size_t j = 0; j < N; ++j)
				if ((j & i) == j)
					c[j] ^= 1;
	return c;
}

/// Remainder of payload * x^width mod (x^width + poly), register preset by
/// XORing `init` into the first `width` message bits; textbook long division.
inline BitVec long_division_crc(const BitVec &payload, unsigned width, std::uint32_t poly, std::uint32_t init)
{
	BitVec msg = payload;
	msg.resize(payload.size() + width, 0);
	for (unsigned i = 0; i < width && i < payload.size(); ++i)
		msg[i] ^= (init >> (width - 1 - i)) & 1;
	BitVec gen(width + 1);
	gen[0] = 1;
	for (unsigned i = 0; i < width; ++i)
		gen[i + 1] = (poly >> (width - 1 - i)) & 1;
	for (std::size_t i = 0; i < payload.size(); ++i)
		if (msg[i])
			for (unsigned j = 0; j <= width; ++j)
				msg[i + j] ^= gen[j];
	return BitVec(msg.end() - width, msg.end());
}

/// Bhattacharyya parameters of all N synthetic channels in linear domain.
inline std::vector<double> bhattacharyya_linear(std::size_t N, double eps)
{
	std::vector<double> z{eps};
	while (z.size() < N) {
		std::vector<double> next;
		for (double v : z) {
			next.push_back(2 * v - v * v);
			next.push_back(v * v);
		}
		z = next;
	}
	return z;
}

inline int clamp_int(long v, long m)
{
	return int(std::max(-m, std::min(m, v)));
}

inline BitVec random_bits(std::mt19937_64 &rng, std::size_t n)
{
	BitVec b(n);
	for (auto &x : b)
		x = std::uint8_t(rng() & 1);
	return b;
}

} // namespace oracle

namespace oracle {

/// Textbook recursive SC decoder over min-sum LLRs. `stage_limit(t)` is the
/// saturation bound of stage t (0 = unbounded). Returns u.
template <class T>
struct TextbookSC {
	const polar::BitVec &frozen;
	std::function<long(unsigned)> stage_limit;
	BitVec u;

	T sat(T v, unsigned t) const
	{
		long m = stage_limit ? stage_limit(t) : 0;
		if (!m)
			return v;
		return T(std::max<long>(-m, std::min<long>(m, long(v))));
	}

	// Returns the re-encoded bits of the subtree rooted at `begin`.
	BitVec run(const std::vector<T> &llr, std::size_t begin)
	{
		const std::size_t w = llr.size();
		if (w == 1) {
			std::uint8_t b = frozen[begin] ? 0 : (llr[0] < 0);
			u[begin] = b;
			return {b};
		}
		const std::size_t h = w / 2;
		const unsigned t = unsigned(std::log2(double(h)));
		std::vector<T> a(h);
		for (std::size_t i = 0; i < h; ++i) {
			T x = llr[i], y = llr[i + h];
			T m = std::min(x < 0 ? -x : x, y < 0 ? -y : y);
			a[i] = ((x < 0) != (y < 0)) ? -m : m;
		}
		BitVec left = run(a, begin);
		for (std::size_t i = 0; i < h; ++i)
			a[i] = sat(left[i] ? T(llr[i + h] - llr[i]) : T(llr[i + h] + llr[i]), t);
		BitVec right = run(a, begin + h);
		BitVec out(w);
		for (std::size_t i = 0; i < h; ++i) {
			out[i] = left[i] ^ right[i];
			out[i + h] = right[i];
		}
		return out;
	}

	BitVec decode(const std::vector<T> &llr)
	{
		u.assign(llr.size(), 0);
		run(llr, 0);
		return u;
	}
};

/// Penalty path metric of a complete source vector u: walk the SC tree with
/// the decisions fixed to u and add |LLR| at every leaf that disagrees with
/// its hard decision. Float min-sum, no normalization.
inline double path_penalty(const std::vector<double> &llr, const BitVec &u)
{
	double pm = 0;
	std::function<BitVec(const std::vector<double> &, std::size_t)> rec =
		[&](const std::vector<double> &a, std::size_t begin) -> BitVec {
		if (a.size() == 1) {
			std::uint8_t hard = a[0] < 0;
			if (u[begin] != hard)
				pm += std::fabs(a[0]);
			return {u[begin]};
		}
		const std::size_t h = a.size() / 2;
		std::vector<double> c(h);
		for (std::size_t i = 0; i < h; ++i) {
			double m = std::min(std::fabs(a[i]), std::fabs(a[i + h]));
			c[i] = ((a[i] < 0) != (a[i + h] < 0)) ? -m : m;
		}
		BitVec l = rec(c, begin);
		for (std::size_t i = 0; i < h; ++i)
			c[i] = l[i] ? a[i + h] - a[i] : a[i + h] + a[i];
		BitVec r = rec(c, begin + h);
		BitVec out(a.size());
		for (std::size_t i = 0; i < h; ++i) {
			out[i] = l[i] ^ r[i];
			out[i + h] = r[i];
		}
		return out;
	};
	rec(llr, 0);
	return pm;
}

} // namespace oracle
