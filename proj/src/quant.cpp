/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polar/quant.hpp"

#include <cmath>

namespace polar {

void QuantProfile::validate() const
{
	for (unsigned w : {channel_width, internal_width, internal_width_stage0})
		if (w < 2 || w > 15)
			throw InvalidParameter("LLR widths must be in [2, 15]");
	if (sort_width < 2 || pm_width < 2 || sort_width > 30)
		throw InvalidParameter("PM widths must be in [2, 30]");
	if (sort_width < pm_width)
		throw InvalidParameter("Q_sort must be at least Q_PM");
	if (!(channel_scale > 0.0) || !std::isfinite(channel_scale))
		throw InvalidParameter("channel scale must be positive and finite");
}

QLLR f_min_sum(QLLR a, QLLR b)
{
	if (a.width() != b.width())
		throw ContractViolation("f_min_sum: width mismatch");
	unsigned m = std::min(a.magnitude(), b.magnitude());
	return QLLR::from_sign_magnitude(a.negative() != b.negative() && m != 0, m, a.width());
}

QLLR g_combine(QLLR a, QLLR b, std::uint8_t s)
{
	if (a.width() != b.width())
		throw ContractViolation("g_combine: width mismatch");
	long v = s ? long(a.value()) - long(b.value()) : long(a.value()) + long(b.value());
	return QLLR::saturated(v, a.width());
}

PathMetric pm_update(PathMetric pm, QLLR llr, std::uint8_t decision)
{
	if (decision == llr.hard())
		return pm;
	pm.value = std::min(pm.value + llr.magnitude(), pm.sort_max());
	return pm;
}

std::vector<PathMetric> normalize_pms(std::span<const PathMetric> pms)
{
	if (pms.empty())
		throw InvalidParameter("normalize_pms: empty list");
	std::uint32_t lo = pms[0].value;
	for (const auto &p : pms)
		lo = std::min(lo, p.value);
	std::vector<PathMetric> out(pms.begin(), pms.end());
	for (auto &p : out)
		p.value = std::min(p.value - lo, p.store_max());
	return out;
}

QLLR quantize_channel_llr(double x, const QuantProfile &profile)
{
	if (!std::isfinite(x))
		throw InvalidParameter("channel LLR must be finite");
	// std::round rounds halves away from zero.
	double q = std::round(x / profile.channel_scale);
	return QLLR::saturated(long(std::clamp(q, -1e6, 1e6)), profile.channel_width);
}

} // namespace polar
