/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polar/bits.hpp"

namespace polar {

/// CRC in normal form: `polynomial` holds the `width` low-order coefficients
/// (x^width is implicit), MSB first. The register starts at `initial`.
struct CrcSpec {
	unsigned width = 24;
	std::uint32_t polynomial = 0x864CFB;
	std::uint32_t initial = 0;

	static CrcSpec crc24a() { return {}; }
	static CrcSpec crc16() { return {16, 0x1021, 0}; }
	static CrcSpec crc11() { return {11, 0x621, 0}; }
	static CrcSpec crc8() { return {8, 0x9B, 0}; }

	void validate() const;
	bool operator==(const CrcSpec &) const = default;
};

struct ParityConstraint {
	std::size_t parity_position;
	std::vector<std::size_t> sources; ///< all < parity_position
	bool operator==(const ParityConstraint &) const = default;
};

struct ParityCheckSpec {
	std::vector<ParityConstraint> constraints;
	bool operator==(const ParityCheckSpec &) const = default;
};

enum class Construction { bhattacharyya, gaussian_approx, external_sequence };

std::string to_string(Construction c);
Construction construction_from_string(const std::string &s);

struct CodeSpec {
	std::size_t N = 0;
	unsigned n = 0;
	std::size_t k = 0;
	BitVec frozen_mask;  ///< 1 = frozen
	BitVec good_mask;    ///< 1 = good bit (never frozen)
	std::optional<CrcSpec> crc;
	std::optional<ParityCheckSpec> pc;
	std::vector<double> reliability; ///< larger is more reliable
	Construction method = Construction::bhattacharyya;
	double design_param = 0.5;

	/// Non-frozen positions in increasing order.
	std::vector<std::size_t> info_positions() const;
	/// Non-frozen, non-parity positions: payload followed by CRC bits.
	std::vector<std::size_t> data_positions() const;
	std::vector<std::size_t> payload_positions() const;
	std::vector<std::size_t> crc_positions() const;
	std::size_t payload_size() const;

	double channel_rate() const { return double(k) / double(N); }
	double payload_rate() const { return double(payload_size()) / double(N); }

	/// Throws InvalidParameter on any broken invariant.
	void validate() const;

	bool operator==(const CodeSpec &) const = default;
};

/// Reliability of each synthetic channel; larger is better.
std::vector<double> bhattacharyya_reliability(std::size_t N, double erasure_prob);
std::vector<double> gaussian_approx_reliability(std::size_t N, double design_snr_db);
/// `sequence` lists positions from least to most reliable.
std::vector<double> sequence_reliability(std::size_t N, std::span<const std::size_t> sequence);

CodeSpec construct_code(std::size_t N, std::size_t k, Construction method, double design_param);
CodeSpec construct_from_reliability(std::size_t N, std::size_t k, std::vector<double> reliability,
                                    Construction method, double design_param);

/// Marks the round(threshold * k') most reliable data positions as good,
/// with k' the count of non-frozen non-parity positions. Halves round up.
BitVec good_bit_set(const CodeSpec &spec, double threshold);

BitVec polar_transform(std::span<const std::uint8_t> bits);

/// Places payload, CRC and parity into u; returns u and the codeword.
BitVec build_source(std::span<const std::uint8_t> payload, const CodeSpec &spec);
BitVec encode(std::span<const std::uint8_t> payload, const CodeSpec &spec);
BitVec extract_info(std::span<const std::uint8_t> u, const CodeSpec &spec);
/// All data bits (payload then CRC) for a CRC check.
BitVec extract_data(std::span<const std::uint8_t> u, const CodeSpec &spec);

BitVec crc_remainder(std::span<const std::uint8_t> bits, const CrcSpec &crc);
BitVec crc_attach(std::span<const std::uint8_t> payload, const CrcSpec &crc);
bool crc_check(std::span<const std::uint8_t> bits, const CrcSpec &crc);

} // namespace polar
