/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polar/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <variant>

#include <omp.h>

#include "polar/decoder.hpp"
#include "polar/error.hpp"

namespace polar {

SplitMix64 SplitMix64::for_frame(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t frame)
{
	SplitMix64 a(seed);
	SplitMix64 b(a.next() ^ (snr_index * 0xD1B54A32D192ED03ull));
	SplitMix64 c(b.next() ^ (frame * 0x8CB92BA72F3D8DD7ull));
	return SplitMix64(c.next());
}

void SplitMix64::normal_pair(double &a, double &b)
{
	const double u1 = 1.0 - uniform(); // (0, 1]
	const double u2 = uniform();
	const double r = std::sqrt(-2.0 * std::log(u1));
	const double th = 2.0 * M_PI * u2;
	a = r * std::cos(th);
	b = r * std::sin(th);
}

void ChannelConfig::validate() const
{
	if (!std::isfinite(esn0_db))
		throw InvalidParameter("Es/N0 must be finite");
	if (frames < 1)
		throw InvalidParameter("frame count must be at least 1");
	if (max_errors < 1)
		throw InvalidParameter("max_errors must be at least 1");
}

double noise_variance(double esn0_db)
{
	return 1.0 / std::pow(10.0, esn0_db / 10.0);
}

double ebn0_from_esn0(double esn0_db, double rate)
{
	return esn0_db - 10.0 * std::log10(2.0 * rate);
}

std::vector<double> transmit(std::span<const std::uint8_t> codeword, double esn0_db, SplitMix64 &rng)
{
	if (codeword.size() % 2)
		throw InvalidParameter("QPSK needs an even codeword length");
	const double sigma2 = noise_variance(esn0_db);
	const double sigma = std::sqrt(sigma2);
	std::vector<double> llr(codeword.size());
	for (std::size_t i = 0; i < codeword.size(); i += 2) {
		double ni, nq;
		rng.normal_pair(ni, nq);
		const double yi = (1.0 - 2.0 * codeword[i]) + sigma * ni;
		const double yq = (1.0 - 2.0 * codeword[i + 1]) + sigma * nq;
		llr[i] = 2.0 * yi / sigma2;
		llr[i + 1] = 2.0 * yq / sigma2;
	}
	return llr;
}

double ci95_half_width(std::size_t errors, std::size_t trials)
{
	if (trials == 0)
		return 0.0;
	const double p = double(errors) / double(trials);
	return 1.96 * std::sqrt(p * (1.0 - p) / double(trials));
}

namespace {

class FrameRunner {
public:
	explicit FrameRunner(const Campaign &c) : c_(c)
	{
		if (c.channel.domain == LlrDomain::quantized)
			dec_.emplace<FixedDecoder>(c.spec, c.profile, c.list_size, FixedDomain(c.profile.quant));
		else
			dec_.emplace<FloatDecoder>(c.spec, c.profile, c.list_size);
	}

	FrameOutcome run(std::size_t snr_index, std::size_t frame)
	{
		auto rng = SplitMix64::for_frame(c_.channel.seed, snr_index, frame);
		const std::size_t K = c_.spec.payload_size();
		payload_.resize(K);
		for (auto &b : payload_)
			b = rng.bit();
		const BitVec x = encode(payload_, c_.spec);
		const std::vector<double> llr = transmit(x, c_.esn0_db[snr_index], rng);

		DecodeResult res;
		if (auto *fx = std::get_if<FixedDecoder>(&dec_)) {
			qllr_.resize(llr.size());
			for (std::size_t i = 0; i < llr.size(); ++i)
				qllr_[i] = fx->domain().quantize(llr[i]);
			res = fx->decode(qllr_);
		} else {
			fllr_.assign(llr.begin(), llr.end());
			res = std::get<FloatDecoder>(dec_).decode(fllr_);
		}
		FrameOutcome out;
		for (std::size_t i = 0; i < K; ++i)
			out.bit_errors += res.info_hat[i] != payload_[i];
		out.frame_error = out.bit_errors > 0;
		return out;
	}

private:
	const Campaign &c_;
	std::variant<std::monostate, FloatDecoder, FixedDecoder> dec_;
	BitVec payload_;
	std::vector<float> fllr_;
	std::vector<std::int16_t> qllr_;
};

void validate_campaign(const Campaign &c)
{
	c.spec.validate();
	c.profile.validate_run(c.spec.N, c.list_size);
	c.channel.validate();
	if (c.esn0_db.empty())
		throw InvalidParameter("campaign needs at least one SNR point");
	for (double s : c.esn0_db)
		if (!std::isfinite(s))
			throw InvalidParameter("SNR points must be finite");
	if (c.chunk < 1)
		throw InvalidParameter("campaign chunk must be at least 1");
}

} // namespace

FrameOutcome simulate_frame(const Campaign &c, std::size_t snr_index, std::size_t frame)
{
	validate_campaign(c);
	FrameRunner r(c);
	return r.run(snr_index, frame);
}

std::vector<FERPoint> run_fer(const Campaign &c, bool parallel)
{
	validate_campaign(c);
	const double rate = c.spec.payload_rate();
	std::vector<FERPoint> points;
	std::vector<FrameOutcome> chunk(c.chunk);

	int threads = parallel ? omp_get_max_threads() : 1;
	std::vector<std::unique_ptr<FrameRunner>> runners(std::size_t(std::max(threads, 1)));

	for (std::size_t si = 0; si < c.esn0_db.size(); ++si) {
		FERPoint pt;
		pt.esn0_db = c.esn0_db[si];
		pt.ebn0_db = ebn0_from_esn0(pt.esn0_db, rate);
		std::size_t start = 0;
		bool done = false;
		while (!done && start < c.channel.frames) {
			const std::size_t count = std::min(c.chunk, c.channel.frames - start);
#pragma omp parallel num_threads(threads) if (threads > 1)
			{
				auto &runner = runners[std::size_t(omp_get_thread_num())];
#pragma omp critical
				if (!runner)
					runner = std::make_unique<FrameRunner>(c);
#pragma omp for schedule(dynamic, 4)
				for (std::size_t i = 0; i < count; ++i)
					chunk[i] = runner->run(si, start + i);
			}
			for (std::size_t i = 0; i < count; ++i) {
				++pt.frames;
				pt.bit_errors += chunk[i].bit_errors;
				if (chunk[i].frame_error && ++pt.frame_errors >= c.channel.max_errors) {
					done = true;
					break;
				}
			}
			start += count;
		}
		const std::size_t K = c.spec.payload_size();
		pt.fer = double(pt.frame_errors) / double(pt.frames);
		pt.ber = K ? double(pt.bit_errors) / double(pt.frames * K) : 0.0;
		pt.ci95 = ci95_half_width(pt.frame_errors, pt.frames);
		points.push_back(pt);
	}
	return points;
}

double crossing_snr(std::span<const FERPoint> curve, double target_fer)
{
	if (!(target_fer > 0 && target_fer < 1))
		throw InvalidParameter("target FER must lie in (0, 1)");
	for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
		const auto &a = curve[i];
		const auto &b = curve[i + 1];
		if (a.fer == target_fer)
			return a.esn0_db;
		if (a.fer > target_fer && b.fer <= target_fer) {
			if (b.fer == target_fer)
				return b.esn0_db;
			if (b.fer <= 0)
				throw NotBracketed("FER curve drops to zero at " + std::to_string(b.esn0_db) +
				                   " dB; no log-linear crossing");
			const double la = std::log10(a.fer), lb = std::log10(b.fer), lt = std::log10(target_fer);
			return a.esn0_db + (lt - la) / (lb - la) * (b.esn0_db - a.esn0_db);
		}
	}
	if (!curve.empty() && curve.back().fer == target_fer)
		return curve.back().esn0_db;
	throw NotBracketed("FER curve does not cross " + std::to_string(target_fer));
}

double compare_curves(std::span<const FERPoint> a, std::span<const FERPoint> b, double target_fer)
{
	return crossing_snr(a, target_fer) - crossing_snr(b, target_fer);
}

} // namespace polar
