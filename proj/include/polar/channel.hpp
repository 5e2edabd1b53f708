/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polar/code.hpp"
#include "polar/profile.hpp"

namespace polar {

/// SplitMix64. Frames draw from their own stream, keyed by
/// (master seed, SNR index, frame index), so results never depend on the
/// order frames are processed in.
class SplitMix64 {
public:
	explicit SplitMix64(std::uint64_t state) : state_(state) {}
	static SplitMix64 for_frame(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t frame);

	std::uint64_t next()
	{
		std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
		z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
		z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
		return z ^ (z >> 31);
	}
	/// Uniform in [0, 1) with 53 random bits.
	double uniform() { return double(next() >> 11) * 0x1.0p-53; }
	std::uint8_t bit() { return std::uint8_t(next() >> 63); }
	/// Two independent standard normals (Box-Muller).
	void normal_pair(double &a, double &b);

private:
	std::uint64_t state_;
};

enum class LlrDomain { floating, quantized };

struct ChannelConfig {
	double esn0_db = 0.0;
	std::uint64_t seed = 1;
	std::size_t frames = 10000;
	std::size_t max_errors = 100;
	LlrDomain domain = LlrDomain::floating;

	void validate() const;
};

/// Per-dimension noise variance of unit-amplitude QPSK at the given Es/N0.
double noise_variance(double esn0_db);
/// Eb/N0 of a code of the given rate carried on QPSK.
double ebn0_from_esn0(double esn0_db, double rate);

/// Gray QPSK: bit pairs (c_2i, c_2i+1) on the I and Q dimensions, amplitude
/// 1 - 2c. Returns LLR = 2y / sigma^2 per bit.
std::vector<double> transmit(std::span<const std::uint8_t> codeword, double esn0_db, SplitMix64 &rng);

struct FERPoint {
	double esn0_db = 0.0;
	double ebn0_db = 0.0;
	std::size_t frames = 0;
	std::size_t frame_errors = 0;
	std::size_t bit_errors = 0;
	double fer = 0.0;
	double ber = 0.0;
	double ci95 = 0.0;
	bool operator==(const FERPoint &) const = default;
};

/// Normal-approximation 95% half-width of a proportion.
double ci95_half_width(std::size_t errors, std::size_t trials);

struct FrameOutcome {
	bool frame_error = false;
	std::size_t bit_errors = 0;
};

struct Campaign {
	CodeSpec spec;
	DecoderProfile profile;
	unsigned list_size = 1;
	ChannelConfig channel;
	std::vector<double> esn0_db;
	std::size_t chunk = 256; ///< frames decoded between early-stop checks
};

/// One frame of a campaign, exactly as run_fer would decode it.
FrameOutcome simulate_frame(const Campaign &c, std::size_t snr_index, std::size_t frame);

/// FER per SNR point; `parallel` decodes the frames of a chunk with OpenMP.
/// Serial and parallel runs return identical points.
std::vector<FERPoint> run_fer(const Campaign &c, bool parallel = true);

/// SNR at which each curve crosses `target_fer` (log-linear interpolation);
/// returns SNR(a) - SNR(b). Throws NotBracketed when a curve never crosses.
double crossing_snr(std::span<const FERPoint> curve, double target_fer);
double compare_curves(std::span<const FERPoint> a, std::span<const FERPoint> b, double target_fer);

} // namespace polar
