/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polar/code.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "polar/error.hpp"

namespace polar {

std::string to_string(std::span<const std::uint8_t> bits)
{
	std::string s(bits.size(), '0');
	for (std::size_t i = 0; i < bits.size(); ++i)
		s[i] = bits[i] ? '1' : '0';
	return s;
}

BitVec bits_from_string(std::string_view s)
{
	BitVec bits;
	bits.reserve(s.size());
	for (char c : s) {
		if (c == '0' || c == '1')
			bits.push_back(std::uint8_t(c - '0'));
		else
			throw InvalidParameter(std::string("bit string contains '") + c + "'");
	}
	return bits;
}

void CrcSpec::validate() const
{
	if (width < 1 || width > 32)
		throw InvalidParameter("CRC width must be in [1, 32]");
	if (width < 32 && (polynomial >> width) != 0)
		throw InvalidParameter("CRC polynomial has terms above x^width");
	if (width < 32 && (initial >> width) != 0)
		throw InvalidParameter("CRC initial value wider than the register");
}

std::string to_string(Construction c)
{
	switch (c) {
	case Construction::bhattacharyya: return "bhattacharyya";
	case Construction::gaussian_approx: return "gaussian_approx";
	case Construction::external_sequence: return "external_sequence";
	}
	return "?";
}

Construction construction_from_string(const std::string &s)
{
	if (s == "bhattacharyya")
		return Construction::bhattacharyya;
	if (s == "gaussian_approx" || s == "ga")
		return Construction::gaussian_approx;
	if (s == "external_sequence" || s == "sequence")
		return Construction::external_sequence;
	throw InvalidParameter("unknown construction method '" + s + "'");
}

std::vector<std::size_t> CodeSpec::info_positions() const
{
	std::vector<std::size_t> pos;
	pos.reserve(k);
	for (std::size_t i = 0; i < N; ++i)
		if (!frozen_mask[i])
			pos.push_back(i);
	return pos;
}

std::vector<std::size_t> CodeSpec::data_positions() const
{
	std::set<std::size_t> parity;
	if (pc)
		for (const auto &c : pc->constraints)
			parity.insert(c.parity_position);
	std::vector<std::size_t> pos;
	pos.reserve(k);
	for (std::size_t i = 0; i < N; ++i)
		if (!frozen_mask[i] && !parity.count(i))
			pos.push_back(i);
	return pos;
}

std::vector<std::size_t> CodeSpec::payload_positions() const
{
	auto pos = data_positions();
	pos.resize(pos.size() - (crc ? crc->width : 0));
	return pos;
}

std::vector<std::size_t> CodeSpec::crc_positions() const
{
	auto pos = data_positions();
	if (!crc)
		return {};
	return {pos.end() - crc->width, pos.end()};
}

std::size_t CodeSpec::payload_size() const
{
	std::size_t overhead = (crc ? crc->width : 0) + (pc ? pc->constraints.size() : 0);
	return k - overhead;
}

void CodeSpec::validate() const
{
	if (!is_power_of_two(N) || N < 2 || N > (std::size_t{1} << 15))
		throw InvalidParameter("N must be a power of two in [2, 2^15]");
	if (n != log2_exact(N))
		throw InvalidParameter("n must equal log2(N)");
	if (k < 1 || k > N)
		throw InvalidParameter("k must be in [1, N]");
	if (frozen_mask.size() != N || good_mask.size() != N)
		throw InvalidParameter("frozen/good masks must have length N");
	if (std::size_t(std::count(frozen_mask.begin(), frozen_mask.end(), 1)) != N - k)
		throw InvalidParameter("frozen count must equal N - k");
	for (std::size_t i = 0; i < N; ++i)
		if (good_mask[i] && frozen_mask[i])
			throw InvalidParameter("good bit " + std::to_string(i) + " is frozen");
	if (!reliability.empty()) {
		if (reliability.size() != N)
			throw InvalidParameter("reliability must have length N");
		double worst_info = INFINITY, best_frozen = -INFINITY;
		for (std::size_t i = 0; i < N; ++i) {
			if (frozen_mask[i])
				best_frozen = std::max(best_frozen, reliability[i]);
			else
				worst_info = std::min(worst_info, reliability[i]);
		}
		if (best_frozen > worst_info)
			throw InvalidParameter("a frozen position is more reliable than an information position");
	}
	std::size_t parity_count = 0;
	if (pc) {
		std::set<std::size_t> seen;
		for (const auto &c : pc->constraints) {
			if (c.parity_position >= N || frozen_mask[c.parity_position])
				throw InvalidParameter("parity position must be a non-frozen position");
			if (!seen.insert(c.parity_position).second)
				throw InvalidParameter("parity positions must be distinct");
			if (good_mask[c.parity_position])
				throw InvalidParameter("parity position cannot be a good bit");
			for (auto s : c.sources)
				if (s >= c.parity_position)
					throw InvalidParameter("parity source must precede its parity position");
		}
		parity_count = seen.size();
	}
	if (crc) {
		crc->validate();
		if (crc->width + parity_count > k)
			throw InvalidParameter("CRC and parity bits exceed k");
		for (auto p : crc_positions())
			if (pc)
				for (const auto &c : pc->constraints)
					if (c.parity_position == p)
						throw InvalidParameter("parity and CRC positions overlap");
	}
	if (parity_count > k)
		throw InvalidParameter("more parity bits than information bits");
}

namespace {

// ln(2z - z^2) given lz = ln z, accurate at both ends of (0, 1].
double log_bhattacharyya_minus(double lz)
{
	if (lz < -0.5)
		return lz + std::log(2.0 - std::exp(lz));
	double w = -std::expm1(lz); // 1 - z
	return std::log1p(-w * w);
}

// ln phi(x) for the Gaussian-approximation phi function (Chung's fit).
double log_phi(double x)
{
	if (x <= 0)
		return 0.0;
	if (x < 10.0)
		return -0.4527 * std::pow(x, 0.86) + 0.0218;
	return 0.5 * std::log(std::numbers::pi / x) - x / 4.0 + std::log1p(-10.0 / (7.0 * x));
}

double ga_minus(double m)
{
	double lp = log_phi(m);
	double p = std::exp(lp);
	// ln(1 - (1 - phi)^2) = ln(phi) + ln(2 - phi)
	double target = lp + std::log(2.0 - p);
	double lo = 0.0, hi = std::max(m, 1e-12);
	for (int it = 0; it < 200; ++it) {
		double mid = 0.5 * (lo + hi);
		if (log_phi(mid) > target)
			lo = mid;
		else
			hi = mid;
	}
	return 0.5 * (lo + hi);
}

void check_length(std::size_t N)
{
	if (!is_power_of_two(N) || N < 2 || N > (std::size_t{1} << 15))
		throw InvalidParameter("N must be a power of two in [2, 2^15]");
}

} // namespace

std::vector<double> bhattacharyya_reliability(std::size_t N, double erasure_prob)
{
	check_length(N);
	if (!(erasure_prob > 0.0 && erasure_prob < 1.0))
		throw InvalidParameter("erasure probability must be in (0, 1)");
	unsigned n = log2_exact(N);
	std::vector<double> rel(N);
	for (std::size_t i = 0; i < N; ++i) {
		double lz = std::log(erasure_prob);
		for (int b = int(n) - 1; b >= 0; --b)
			lz = ((i >> b) & 1) ? 2.0 * lz : log_bhattacharyya_minus(lz);
		rel[i] = -lz;
	}
	return rel;
}

std::vector<double> gaussian_approx_reliability(std::size_t N, double design_snr_db)
{
	check_length(N);
	if (!std::isfinite(design_snr_db))
		throw InvalidParameter("design SNR must be finite");
	unsigned n = log2_exact(N);
	// Mean LLR of a QPSK dimension at the given Es/N0.
	double m0 = 2.0 * std::pow(10.0, design_snr_db / 10.0);
	std::vector<double> rel(N);
	for (std::size_t i = 0; i < N; ++i) {
		double m = m0;
		for (int b = int(n) - 1; b >= 0; --b)
			m = ((i >> b) & 1) ? 2.0 * m : ga_minus(m);
		rel[i] = m;
	}
	return rel;
}

std::vector<double> sequence_reliability(std::size_t N, std::span<const std::size_t> sequence)
{
	check_length(N);
	if (sequence.size() != N)
		throw InvalidParameter("reliability sequence must list all N positions");
	std::vector<double> rel(N, -1.0);
	for (std::size_t r = 0; r < N; ++r) {
		if (sequence[r] >= N || rel[sequence[r]] >= 0)
			throw InvalidParameter("reliability sequence must be a permutation of 0..N-1");
		rel[sequence[r]] = double(r);
	}
	return rel;
}

CodeSpec construct_from_reliability(std::size_t N, std::size_t k, std::vector<double> reliability,
                                    Construction method, double design_param)
{
	check_length(N);
	if (k < 1 || k > N)
		throw InvalidParameter("k must be in [1, N]");
	if (reliability.size() != N)
		throw InvalidParameter("reliability must have length N");
	std::vector<std::size_t> order(N);
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(),
	                 [&](std::size_t a, std::size_t b) { return reliability[a] < reliability[b]; });
	CodeSpec spec;
	spec.N = N;
	spec.n = log2_exact(N);
	spec.k = k;
	spec.frozen_mask.assign(N, 0);
	spec.good_mask.assign(N, 0);
	for (std::size_t r = 0; r < N - k; ++r)
		spec.frozen_mask[order[r]] = 1;
	spec.reliability = std::move(reliability);
	spec.method = method;
	spec.design_param = design_param;
	return spec;
}

CodeSpec construct_code(std::size_t N, std::size_t k, Construction method, double design_param)
{
	check_length(N);
	if (k < 1 || k > N)
		throw InvalidParameter("k must be in [1, N]");
	switch (method) {
	case Construction::bhattacharyya:
		return construct_from_reliability(N, k, bhattacharyya_reliability(N, design_param), method,
		                                  design_param);
	case Construction::gaussian_approx:
		return construct_from_reliability(N, k, gaussian_approx_reliability(N, design_param), method,
		                                  design_param);
	case Construction::external_sequence:
		break;
	}
	throw InvalidParameter("external_sequence construction needs a sequence; use construct_from_reliability");
}

BitVec good_bit_set(const CodeSpec &spec, double threshold)
{
	if (!(threshold >= 0.0 && threshold <= 1.0))
		throw InvalidParameter("good-bit threshold must be in [0, 1]");
	BitVec good(spec.N, 0);
	auto data = spec.data_positions();
	auto count = std::size_t(std::floor(threshold * double(data.size()) + 0.5));
	if (count == 0)
		return good;
	std::stable_sort(data.begin(), data.end(), [&](std::size_t a, std::size_t b) {
		return spec.reliability[a] > spec.reliability[b];
	});
	for (std::size_t i = 0; i < count; ++i)
		good[data[i]] = 1;
	return good;
}

BitVec polar_transform(std::span<const std::uint8_t> bits)
{
	if (!is_power_of_two(bits.size()))
		throw InvalidParameter("polar transform length must be a power of two");
	BitVec out(bits.begin(), bits.end());
	polar_transform_inplace(out);
	return out;
}

BitVec build_source(std::span<const std::uint8_t> payload, const CodeSpec &spec)
{
	if (payload.size() != spec.payload_size())
		throw InvalidParameter("payload length " + std::to_string(payload.size()) + " != " +
		                       std::to_string(spec.payload_size()));
	BitVec u(spec.N, 0);
	auto pay = spec.payload_positions();
	for (std::size_t i = 0; i < pay.size(); ++i)
		u[pay[i]] = payload[i] & 1;
	if (spec.crc) {
		auto rem = crc_remainder(payload, *spec.crc);
		auto pos = spec.crc_positions();
		for (std::size_t i = 0; i < pos.size(); ++i)
			u[pos[i]] = rem[i];
	}
	if (spec.pc) {
		auto cons = spec.pc->constraints;
		std::sort(cons.begin(), cons.end(),
		          [](const auto &a, const auto &b) { return a.parity_position < b.parity_position; });
		for (const auto &c : cons) {
			std::uint8_t v = 0;
			for (auto s : c.sources)
				v ^= u[s];
			u[c.parity_position] = v;
		}
	}
	return u;
}

BitVec encode(std::span<const std::uint8_t> payload, const CodeSpec &spec)
{
	auto u = build_source(payload, spec);
	polar_transform_inplace(u);
	return u;
}

BitVec extract_info(std::span<const std::uint8_t> u, const CodeSpec &spec)
{
	if (u.size() != spec.N)
		throw InvalidParameter("source vector length must equal N");
	BitVec out;
	for (auto p : spec.payload_positions())
		out.push_back(u[p]);
	return out;
}

BitVec extract_data(std::span<const std::uint8_t> u, const CodeSpec &spec)
{
	BitVec out;
	for (auto p : spec.data_positions())
		out.push_back(u[p]);
	return out;
}

namespace {

std::uint32_t crc_register(std::span<const std::uint8_t> bits, const CrcSpec &crc)
{
	const std::uint32_t mask = crc.width == 32 ? 0xFFFFFFFFu : ((1u << crc.width) - 1);
	const std::uint32_t top = 1u << (crc.width - 1);
	std::uint32_t reg = crc.initial & mask;
	for (auto b : bits) {
		bool feedback = ((reg & top) != 0) != (b != 0);
		reg = (reg << 1) & mask;
		if (feedback)
			reg ^= crc.polynomial;
	}
	return reg;
}

} // namespace

BitVec crc_remainder(std::span<const std::uint8_t> bits, const CrcSpec &crc)
{
	crc.validate();
	auto reg = crc_register(bits, crc);
	BitVec out(crc.width);
	for (unsigned i = 0; i < crc.width; ++i)
		out[i] = (reg >> (crc.width - 1 - i)) & 1;
	return out;
}

BitVec crc_attach(std::span<const std::uint8_t> payload, const CrcSpec &crc)
{
	BitVec out(payload.begin(), payload.end());
	auto rem = crc_remainder(payload, crc);
	out.insert(out.end(), rem.begin(), rem.end());
	return out;
}

bool crc_check(std::span<const std::uint8_t> bits, const CrcSpec &crc)
{
	crc.validate();
	return crc_register(bits, crc) == 0;
}

} // namespace polar
