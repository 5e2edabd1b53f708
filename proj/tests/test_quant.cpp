/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include "oracles.hpp"
#include "polar/quant.hpp"

using namespace polar;

namespace {

struct SM {
	bool neg;
	unsigned mag;
	long value() const { return neg ? -long(mag) : long(mag); }
};

std::vector<SM> all_sign_magnitude(unsigned q)
{
	std::vector<SM> v;
	for (unsigned m = 0; m <= (1u << (q - 1)) - 1; ++m) {
		v.push_back({false, m});
		v.push_back({true, m});
	}
	return v;
}

} // namespace

TEST_CASE("f and g examples")
{
	CHECK(f_min_sum(QLLR(2, 6), QLLR(-3, 6)).value() == -2);
	CHECK(f_min_sum(QLLR(-4, 6), QLLR(-4, 6)).value() == 4);
	for (int x = -31; x <= 31; ++x)
		CHECK(f_min_sum(QLLR(0, 6), QLLR(x, 6)).magnitude() == 0);
	CHECK(g_combine(QLLR(4, 6), QLLR(3, 6), 0).value() == 7);
	CHECK(g_combine(QLLR(4, 6), QLLR(3, 6), 1).value() == 1);
	CHECK(g_combine(QLLR(30, 6), QLLR(5, 6), 0).value() == 31);
	CHECK_THROWS_AS(f_min_sum(QLLR(1, 6), QLLR(1, 7)), ContractViolation);
	CHECK_THROWS_AS(g_combine(QLLR(1, 6), QLLR(1, 7), 0), ContractViolation);
}

TEST_CASE("negative zero does not exist")
{
	auto z = QLLR::from_sign_magnitude(true, 0, 6);
	CHECK(z == QLLR(0, 6));
	CHECK_FALSE(z.negative());
	CHECK(z.hard() == 0);
	CHECK_THROWS_AS(QLLR(32, 6), InvalidParameter);
}

TEST_CASE("kernels against the exact clamp oracle, exhaustive")
{
	for (unsigned q : {6u, 7u}) {
		const long m = (1l << (q - 1)) - 1;
		FixedDomain dom(QuantProfile{6, q, q, 7, 6, 1.0});
		std::size_t cases = 0;
		for (auto a : all_sign_magnitude(q)) {
			for (auto b : all_sign_magnitude(q)) {
				auto qa = QLLR::from_sign_magnitude(a.neg, a.mag, q);
				auto qb = QLLR::from_sign_magnitude(b.neg, b.mag, q);
				long fmag = std::min(a.mag, b.mag);
				long fexp = (a.neg != b.neg) ? -fmag : fmag;
				REQUIRE(f_min_sum(qa, qb).value() == fexp);
				REQUIRE(dom.f(std::int16_t(qa.value()), std::int16_t(qb.value()), 1) == fexp);
				REQUIRE(f_min_sum(qa, qb) == f_min_sum(qb, qa));
				for (std::uint8_t s = 0; s < 2; ++s) {
					long exact = s ? a.value() - b.value() : a.value() + b.value();
					REQUIRE(g_combine(qa, qb, s).value() == oracle::clamp_int(exact, m));
					REQUIRE(dom.g(std::int16_t(qa.value()), std::int16_t(qb.value()), s, 1) ==
					        oracle::clamp_int(exact, m));
				}
				++cases;
			}
		}
		CHECK(cases == std::size_t(4 * (m + 1) * (m + 1)));
	}
}

TEST_CASE("pm_update exhaustive")
{
	CHECK(pm_update({5}, QLLR(-3, 6), 1).value == 5);
	CHECK(pm_update({5}, QLLR(-3, 6), 0).value == 8);
	CHECK(pm_update({126}, QLLR(31, 6), 1).value == 127);
	for (unsigned q : {6u, 7u}) {
		FixedDomain dom(QuantProfile{6, q, q, 7, 6, 1.0});
		for (std::uint32_t pm = 0; pm <= 127; ++pm) {
			for (auto a : all_sign_magnitude(q)) {
				auto llr = QLLR::from_sign_magnitude(a.neg, a.mag, q);
				for (std::uint8_t d = 0; d < 2; ++d) {
					std::uint8_t hard = a.neg && a.mag > 0;
					std::uint32_t exp = d == hard ? pm : std::min<std::uint32_t>(pm + a.mag, 127);
					REQUIRE(pm_update({pm}, llr, d).value == exp);
					if (d != hard)
						REQUIRE(dom.penalize(std::int32_t(pm), std::int16_t(llr.value())) == std::int32_t(exp));
					if (pm > 0)
						REQUIRE(pm_update({pm - 1}, llr, d).value <= pm_update({pm}, llr, d).value);
				}
			}
		}
	}
}

TEST_CASE("normalize_pms")
{
	auto values = [](std::vector<PathMetric> v) {
		std::vector<std::uint32_t> out;
		for (auto p : v)
			out.push_back(p.value);
		return out;
	};
	CHECK(values(normalize_pms(std::vector<PathMetric>{{7}, {3}, {9}, {3}})) ==
	      std::vector<std::uint32_t>{4, 0, 6, 0});
	CHECK(values(normalize_pms(std::vector<PathMetric>{{0}, {0}})) == std::vector<std::uint32_t>{0, 0});
	CHECK(values(normalize_pms(std::vector<PathMetric>{{70}, {3}})) == std::vector<std::uint32_t>{63, 0});
	CHECK_THROWS_AS(normalize_pms(std::vector<PathMetric>{}), InvalidParameter);

	// Every ordered pair of sort-range values.
	FixedDomain dom;
	for (std::uint32_t a = 0; a <= 127; ++a) {
		for (std::uint32_t b = 0; b <= 127; ++b) {
			auto lo = std::min(a, b);
			auto r = normalize_pms(std::vector<PathMetric>{{a}, {b}});
			REQUIRE(r[0].value == std::min<std::uint32_t>(a - lo, 63));
			REQUIRE(r[1].value == std::min<std::uint32_t>(b - lo, 63));
			std::int32_t d[2] = {std::int32_t(a), std::int32_t(b)};
			dom.normalize(d);
			REQUIRE(d[0] == std::int32_t(r[0].value));
			REQUIRE(d[1] == std::int32_t(r[1].value));
			REQUIRE((a == lo) == (r[0].value == 0));
		}
	}
}

TEST_CASE("channel quantizer")
{
	QuantProfile q;
	q.channel_scale = 1.0;
	CHECK(quantize_channel_llr(0.0, q).value() == 0);
	CHECK(quantize_channel_llr(-100.0, q).value() == -31);
	CHECK(quantize_channel_llr(2.49, q).value() == 2);
	CHECK(quantize_channel_llr(2.5, q).value() == 3);
	CHECK(quantize_channel_llr(-2.5, q).value() == -3);
	for (double x = -40; x <= 40; x += 0.125)
		REQUIRE(quantize_channel_llr(-x, q).value() == -quantize_channel_llr(x, q).value());
	QuantProfile half = q;
	half.channel_scale = 0.5;
	CHECK(quantize_channel_llr(2.3, half).value() == 5);
	CHECK(QuantProfile{}.channel_scale == 0.5);
	CHECK_THROWS_AS(quantize_channel_llr(INFINITY, q), InvalidParameter);
}

TEST_CASE("stage widths of the profiles")
{
	QuantProfile ultra{6, 6, 7, 7, 6, 1.0};
	FixedDomain d(ultra);
	CHECK(d.limit(0) == 63);
	CHECK(d.limit(1) == 31);
	CHECK(d.g(31, 31, 0, 0) == 62);
	CHECK(d.g(31, 31, 0, 1) == 31);
	CHECK(QLLR(20, 6).resized(7).value() == 20);
	CHECK(QLLR(50, 7).resized(6).value() == 31);
	CHECK_THROWS_AS(QuantProfile({6, 6, 6, 5, 6, 1.0}).validate(), InvalidParameter);
}
