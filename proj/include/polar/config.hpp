/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "polar/channel.hpp"
#include "polar/code.hpp"
#include "polar/cycle.hpp"
#include "polar/profile.hpp"

namespace polar {

/// Flat "section.key" -> value text, in effect order (later assignments win).
class ConfigMap {
public:
	static ConfigMap from_ini(std::istream &in, const std::string &origin = "config");
	static ConfigMap from_file(const std::string &path);

	/// Accepts "section.key=value".
	void set(const std::string &assignment);
	void set(const std::string &section, const std::string &key, const std::string &value);
	void merge(const ConfigMap &other);

	std::optional<std::string> get(const std::string &section, const std::string &key) const;
	const std::map<std::string, std::string> &entries() const { return entries_; }

private:
	std::map<std::string, std::string> entries_;
};

struct CodeOptions {
	std::size_t N = 1024;
	std::size_t k = 512;
	Construction method = Construction::bhattacharyya;
	std::optional<double> design_param; ///< eps, or design SNR in dB
	std::string sequence_file;
	std::string spec_file;              ///< load a constructed spec instead
	std::optional<CrcSpec> crc;
	double good_threshold = 0.0;

	CodeSpec build() const;
};

struct CampaignOptions {
	std::vector<double> esn0_db{1.0, 1.5, 2.0, 2.5};
	std::size_t chunk = 256;
	bool parallel = true;
};

struct OutputOptions {
	std::string path = "-";
	bool json = false;
};

struct RunConfig {
	CodeOptions code;
	DecoderProfile profile = DecoderProfile::flexible();
	unsigned list_size = 8;
	ArchParams arch = ArchParams::for_kind(DecoderKind::flexible);
	ChannelConfig channel;
	CampaignOptions campaign;
	OutputOptions output;

	/// Typed view of a ConfigMap; throws ConfigError naming section and key
	/// for unknown keys and invalid values.
	static RunConfig parse(const ConfigMap &map);

	/// Canonical text of the effective configuration.
	std::string canonical() const;
	/// FNV-1a 64 of canonical().
	std::uint64_t hash() const;
};

std::uint64_t fnv1a64(const std::string &s);

/// Parses "a,b,c" or "start:step:stop".
std::vector<double> parse_snr_list(const std::string &text);

/// Constructed code spec file.
void write_spec(std::ostream &out, const CodeSpec &spec);
CodeSpec read_spec(std::istream &in);
CodeSpec read_spec_file(const std::string &path);

} // namespace polar
