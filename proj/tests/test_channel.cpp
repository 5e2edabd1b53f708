/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "polar/channel.hpp"

using namespace polar;

namespace {

Campaign small_campaign(double esn0, std::size_t frames, std::size_t max_errors)
{
	Campaign c;
	c.spec = construct_code(128, 64, Construction::bhattacharyya, 0.5);
	c.profile = DecoderProfile::flexible();
	c.list_size = 4;
	c.channel.frames = frames;
	c.channel.max_errors = max_errors;
	c.channel.seed = 99;
	c.esn0_db = {esn0};
	c.chunk = 64;
	return c;
}

} // namespace

TEST_CASE("channel: splitmix reference values")
{
	// first outputs for state 0 (published SplitMix64 test vector)
	SplitMix64 r(0);
	CHECK(r.next() == 0xE220A8397B1DCDAFull);
	CHECK(r.next() == 0x6E789E6AA1B965F4ull);
	CHECK(r.next() == 0x06C45D188009454Full);
}

TEST_CASE("channel: frame streams")
{
	auto a = SplitMix64::for_frame(1, 0, 7);
	auto b = SplitMix64::for_frame(1, 0, 7);
	for (int i = 0; i < 10; ++i)
		CHECK(a.next() == b.next());
	auto c = SplitMix64::for_frame(1, 0, 8);
	auto d = SplitMix64::for_frame(1, 1, 7);
	auto e = SplitMix64::for_frame(2, 0, 7);
	auto x = SplitMix64::for_frame(1, 0, 7).next();
	CHECK(c.next() != x);
	CHECK(d.next() != x);
	CHECK(e.next() != x);

	SplitMix64 u(5);
	for (int i = 0; i < 1000; ++i) {
		double v = u.uniform();
		CHECK(v >= 0.0);
		CHECK(v < 1.0);
	}
}

TEST_CASE("channel: conversions")
{
	CHECK(noise_variance(0.0) == doctest::Approx(1.0));
	CHECK(noise_variance(10.0) == doctest::Approx(0.1));
	CHECK(ebn0_from_esn0(3.0, 0.5) == doctest::Approx(3.0));
	CHECK(ebn0_from_esn0(3.0, 0.25) == doctest::Approx(3.0 + 10 * std::log10(2.0)));
}

TEST_CASE("channel: noiseless signs")
{
	std::mt19937_64 g(1);
	auto bits = oracle::random_bits(g, 512);
	SplitMix64 rng(3);
	auto llr = transmit(bits, 200.0, rng);
	for (std::size_t i = 0; i < bits.size(); ++i)
		CHECK((llr[i] < 0) == bool(bits[i]));
	BitVec odd(3, 0);
	CHECK_THROWS_AS(transmit(odd, 1.0, rng), InvalidParameter);
}

TEST_CASE("channel: sign error rate matches Q(sqrt(Es/N0))")
{
	for (double snr : {0.0, 3.0}) {
		SplitMix64 rng(17);
		const std::size_t n = 100000;
		BitVec zeros(n, 0);
		auto llr = transmit(zeros, snr, rng);
		std::size_t wrong = 0;
		for (double v : llr)
			wrong += v < 0;
		const double p = 0.5 * std::erfc(std::sqrt(std::pow(10.0, snr / 10.0)) / std::sqrt(2.0));
		const double se = std::sqrt(p * (1 - p) / double(n));
		CHECK(std::abs(double(wrong) / double(n) - p) <= 3 * se);
	}
}

TEST_CASE("channel: llr scale")
{
	// mean LLR of a zero bit is 2 / sigma^2
	SplitMix64 rng(23);
	BitVec zeros(200000, 0);
	auto llr = transmit(zeros, 2.0, rng);
	double m = 0;
	for (double v : llr)
		m += v;
	m /= double(llr.size());
	CHECK(m == doctest::Approx(2.0 / noise_variance(2.0)).epsilon(0.01));
}

TEST_CASE("channel: no errors at high SNR")
{
	auto c = small_campaign(60.0, 300, 10);
	auto pts = run_fer(c, true);
	REQUIRE(pts.size() == 1);
	CHECK(pts[0].frames == 300);
	CHECK(pts[0].frame_errors == 0);
	CHECK(pts[0].fer == 0.0);
	CHECK(pts[0].ci95 == 0.0);
}

TEST_CASE("channel: serial and parallel campaigns agree")
{
	auto c = small_campaign(1.0, 1500, 40);
	c.esn0_db = {0.0, 1.0, 2.0};
	auto s = run_fer(c, false);
	auto p = run_fer(c, true);
	CHECK(s == p);
	c.channel.domain = LlrDomain::quantized;
	CHECK(run_fer(c, false) == run_fer(c, true));
	// chunk size only moves the early-stop check
	auto one = small_campaign(2.0, 200, 1000);
	auto big = one;
	big.chunk = 1000;
	CHECK(run_fer(one, true) == run_fer(big, true));
}

TEST_CASE("channel: early stop")
{
	auto c = small_campaign(-2.0, 5000, 25);
	auto pts = run_fer(c, true);
	CHECK(pts[0].frame_errors == 25);
	CHECK(pts[0].frames < 5000);
	// the stop frame is the 25th error in frame order
	std::size_t errors = 0, f = 0;
	while (errors < 25)
		errors += simulate_frame(c, 0, f++).frame_error;
	CHECK(pts[0].frames == f);
}

TEST_CASE("channel: confidence interval vs bootstrap")
{
	auto c = small_campaign(1.0, 2000, 2000);
	auto pt = run_fer(c, true)[0];
	REQUIRE(pt.frame_errors >= 20);
	std::mt19937_64 g(2);
	const std::size_t n = pt.frames;
	std::binomial_distribution<std::size_t> draw(n, pt.fer);
	std::vector<double> est(2000);
	for (auto &e : est)
		e = double(draw(g)) / double(n);
	std::sort(est.begin(), est.end());
	const double half = (est[1949] - est[49]) / 2;
	CHECK(std::abs(pt.ci95 - half) <= 0.2 * half);
}

TEST_CASE("channel: campaign validation")
{
	auto c = small_campaign(1.0, 10, 10);
	auto bad = c;
	bad.esn0_db.clear();
	CHECK_THROWS_AS(run_fer(bad), InvalidParameter);
	bad = c;
	bad.chunk = 0;
	CHECK_THROWS_AS(run_fer(bad), InvalidParameter);
	bad = c;
	bad.list_size = 16;
	CHECK_THROWS_AS(run_fer(bad), InvalidParameter);
	bad = c;
	bad.channel.frames = 0;
	CHECK_THROWS_AS(run_fer(bad), InvalidParameter);
}

TEST_CASE("channel: curve comparison")
{
	std::vector<FERPoint> a;
	for (int i = 0; i < 5; ++i) {
		FERPoint p;
		p.esn0_db = i;
		p.fer = std::pow(10.0, -i);
		a.push_back(p);
	}
	CHECK(compare_curves(a, a, 1e-2) == doctest::Approx(0.0));
	CHECK(crossing_snr(a, 1e-2) == doctest::Approx(2.0));
	CHECK(crossing_snr(a, 10.0 * 0.005) == doctest::Approx(1.0 + std::log10(2.0)));

	auto b = a;
	for (auto &p : b)
		p.esn0_db += 0.5;
	CHECK(compare_curves(a, b, 1e-2) == doctest::Approx(-0.5));
	CHECK(compare_curves(b, a, 3e-3) == doctest::Approx(0.5));

	CHECK_THROWS_AS(crossing_snr(a, 1e-6), NotBracketed);
	auto zero = a;
	zero[3].fer = 0;
	CHECK_THROWS_AS(crossing_snr(zero, 5e-3), NotBracketed);
	CHECK_THROWS_AS(crossing_snr(a, 0.0), InvalidParameter);
}

TEST_CASE("channel: ci95 formula")
{
	CHECK(ci95_half_width(0, 100) == 0.0);
	CHECK(ci95_half_width(50, 100) == doctest::Approx(1.96 * 0.05));
	CHECK(ci95_half_width(0, 0) == 0.0);
}
