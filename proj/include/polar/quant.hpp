/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <vector>

#include "polar/error.hpp"

namespace polar {

/// Sign-magnitude quantized LLR of total width Q (sign bit included).
/// Stored as a signed integer in [-(2^(Q-1)-1), 2^(Q-1)-1]; -0 does not exist.
class QLLR {
public:
	QLLR() = default;
	QLLR(int value, unsigned width) : value_(std::int16_t(value)), width_(std::uint8_t(width))
	{
		if (width < 2 || width > 15)
			throw InvalidParameter("QLLR width must be in [2, 15]");
		if (std::abs(value) > max_magnitude(width))
			throw InvalidParameter("QLLR magnitude exceeds its width");
	}
	static QLLR from_sign_magnitude(bool negative, unsigned magnitude, unsigned width)
	{
		return QLLR(negative ? -int(magnitude) : int(magnitude), width);
	}
	static QLLR saturated(long value, unsigned width)
	{
		long m = max_magnitude(width);
		return QLLR(int(std::clamp(value, -m, m)), width);
	}
	static constexpr int max_magnitude(unsigned width) { return (1 << (width - 1)) - 1; }

	bool negative() const { return value_ < 0; }
	unsigned magnitude() const { return unsigned(std::abs(value_)); }
	int value() const { return value_; }
	unsigned width() const { return width_; }
	/// Hard decision: 1 iff negative; zero decides 0.
	std::uint8_t hard() const { return value_ < 0; }

	/// Re-encode at another width: widening keeps the value, narrowing saturates.
	QLLR resized(unsigned width) const { return saturated(value_, width); }

	bool operator==(const QLLR &) const = default;

private:
	std::int16_t value_ = 0;
	std::uint8_t width_ = 6;
};

/// Path metric: saturates at 2^Q_sort - 1 while sorting, stored in Q_PM bits.
struct PathMetric {
	std::uint32_t value = 0;
	unsigned sort_width = 7;
	unsigned store_width = 6;

	std::uint32_t sort_max() const { return (1u << sort_width) - 1; }
	std::uint32_t store_max() const { return (1u << store_width) - 1; }
	bool operator==(const PathMetric &) const = default;
};

/// Quantizer widths of one decoder; stage t LLRs use internal_width(t).
struct QuantProfile {
	unsigned channel_width = 6;            // Q_c
	unsigned internal_width = 6;           // Q_i at every stage but 0
	unsigned internal_width_stage0 = 6;    // Q_i at stage 0
	unsigned sort_width = 7;               // Q_sort
	unsigned pm_width = 6;                 // Q_PM
	double channel_scale = 0.5;            // LLR units per quantization step

	unsigned width_at_stage(unsigned t) const { return t == 0 ? internal_width_stage0 : internal_width; }
	void validate() const;
	bool operator==(const QuantProfile &) const = default;
};

QLLR f_min_sum(QLLR a, QLLR b);
/// a + (-1)^s * b, saturated to the common width.
QLLR g_combine(QLLR a, QLLR b, std::uint8_t s);
PathMetric pm_update(PathMetric pm, QLLR llr, std::uint8_t decision);
/// Subtract the minimum, then saturate to Q_PM.
std::vector<PathMetric> normalize_pms(std::span<const PathMetric> pms);
QLLR quantize_channel_llr(double x, const QuantProfile &profile);

/// Floating-point arithmetic domain of the decoder (the reference).
struct FloatDomain {
	using Llr = float;
	using Metric = double;

	static constexpr bool quantized = false;

	Llr f(Llr a, Llr b, unsigned) const
	{
		Llr m = std::min(std::fabs(a), std::fabs(b));
		return (a < 0) != (b < 0) ? -m : m;
	}
	/// a + (-1)^s * b
	Llr g(Llr a, Llr b, std::uint8_t s, unsigned) const { return s ? a - b : a + b; }
	static std::uint8_t hard(Llr x) { return x < 0; }
	Metric penalize(Metric pm, Llr x) const { return pm + std::fabs(double(x)); }
	void normalize(std::span<Metric>) const {}
	static double to_double(Metric m) { return m; }
};

/// Sign-magnitude fixed-point domain; widths per stage from a QuantProfile.
class FixedDomain {
public:
	using Llr = std::int16_t;
	using Metric = std::int32_t;

	static constexpr bool quantized = true;

	FixedDomain() : FixedDomain(QuantProfile{}) {}
	explicit FixedDomain(const QuantProfile &q) : profile_(q)
	{
		q.validate();
		for (unsigned t = 0; t < limits_.size(); ++t)
			limits_[t] = std::int16_t(QLLR::max_magnitude(q.width_at_stage(t)));
		sort_max_ = Metric((1u << q.sort_width) - 1);
		pm_max_ = Metric((1u << q.pm_width) - 1);
	}

	/// Output of f never exceeds its inputs, so no saturation is needed.
	Llr f(Llr a, Llr b, unsigned) const
	{
		Llr m = std::min<Llr>(Llr(std::abs(a)), Llr(std::abs(b)));
		return (a < 0) != (b < 0) ? Llr(-m) : m;
	}
	Llr g(Llr a, Llr b, std::uint8_t s, unsigned stage) const
	{
		int v = s ? int(a) - int(b) : int(a) + int(b);
		int m = limits_[stage];
		return Llr(std::clamp(v, -m, m));
	}
	static std::uint8_t hard(Llr x) { return x < 0; }
	Metric penalize(Metric pm, Llr x) const { return std::min(pm + Metric(std::abs(x)), sort_max_); }
	void normalize(std::span<Metric> pms) const
	{
		if (pms.empty())
			return;
		Metric lo = *std::min_element(pms.begin(), pms.end());
		for (auto &p : pms)
			p = std::min(p - lo, pm_max_);
	}
	static double to_double(Metric m) { return double(m); }

	const QuantProfile &profile() const { return profile_; }
	int limit(unsigned stage) const { return limits_[stage]; }
	Llr quantize(double x) const { return Llr(quantize_channel_llr(x, profile_).value()); }

private:
	QuantProfile profile_;
	std::array<std::int16_t, 16> limits_{};
	Metric sort_max_ = 127;
	Metric pm_max_ = 63;
};

} // namespace polar
