/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include <cstdio>
#include <functional>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "checks.hpp"
#include "polar/channel.hpp"
#include "polar/config.hpp"
#include "polar/cycle.hpp"
#include "polar/decoder.hpp"
#include "polar/error.hpp"

using namespace polar;

namespace {

/// Exit code 2: the configuration or the command line is wrong.
struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct Common {
	std::string config;
	std::vector<std::string> sets;
	std::vector<std::pair<std::string, std::string>> flags; // (section.key, value) in flag order
	std::string input = "-";
};

void add_flag(CLI::App *app, Common &c, const std::string &name, const std::string &key, const std::string &help)
{
	app->add_option_function<std::string>(
		name, [&c, key](const std::string &v) { c.flags.emplace_back(key, v); }, help + " (" + key + ")");
}

void add_common(CLI::App *app, Common &c, bool io)
{
	app->add_option("-c,--config", c.config, "INI config file");
	app->add_option("--set", c.sets, "override, section.key=value (repeatable, last wins)");
	add_flag(app, c, "--N", "code.N", "code length");
	add_flag(app, c, "--k", "code.k", "non-frozen positions");
	add_flag(app, c, "--method", "code.method", "bhattacharyya | ga | external_sequence");
	add_flag(app, c, "--eps,--design", "code.design", "erasure probability or design SNR");
	add_flag(app, c, "--crc", "code.crc", "none | crc8 | crc11 | crc16 | crc24a");
	add_flag(app, c, "--spec", "code.spec_file", "constructed code spec file");
	add_flag(app, c, "--profile", "decoder.kind", "sc | flexible | ultra");
	add_flag(app, c, "--L", "decoder.L", "list size");
	add_flag(app, c, "--selection", "decoder.selection", "best_pm | crc_aided | parity_check");
	add_flag(app, c, "--domain", "channel.domain", "float | quantized");
	add_flag(app, c, "--snr", "campaign.snr", "Es/N0 list, a,b,c or start:step:stop");
	add_flag(app, c, "--frames", "channel.frames", "frames per SNR point");
	add_flag(app, c, "--max-errors", "channel.max_errors", "frame errors before a point stops");
	add_flag(app, c, "--seed", "channel.seed", "master seed");
	add_flag(app, c, "-o,--output", "output.path", "output file, - for stdout");
	if (io)
		app->add_option("-i,--input", c.input, "input file, - for stdin");
}

RunConfig load(const Common &c)
{
	ConfigMap m;
	if (!c.config.empty())
		m = ConfigMap::from_file(c.config);
	for (const auto &[key, value] : c.flags)
		m.set(key + "=" + value);
	for (const auto &s : c.sets)
		m.set(s);
	return RunConfig::parse(m);
}

CodeSpec build_code(const RunConfig &rc)
{
	try {
		return rc.code.build();
	} catch (const ConfigError &) {
		throw;
	} catch (const std::exception &e) {
		throw ConfigError("code", rc.code.spec_file.empty() ? "k" : "spec_file", e.what());
	}
}

class Output {
public:
	explicit Output(const std::string &path)
	{
		if (path != "-") {
			file_ = std::make_unique<std::ofstream>(path);
			if (!*file_)
				throw std::runtime_error("cannot open '" + path + "' for writing");
		}
	}
	std::ostream &get() { return file_ ? *file_ : std::cout; }

private:
	std::unique_ptr<std::ofstream> file_;
};

class Input {
public:
	explicit Input(const std::string &path)
	{
		if (path != "-") {
			file_ = std::make_unique<std::ifstream>(path);
			if (!*file_)
				throw std::runtime_error("cannot open '" + path + "'");
		}
	}
	std::istream &get() { return file_ ? *file_ : std::cin; }

private:
	std::unique_ptr<std::ifstream> file_;
};

std::string hash_hex(const RunConfig &rc)
{
	std::ostringstream o;
	o << "0x" << std::hex << std::setw(16) << std::setfill('0') << rc.hash();
	return o.str();
}

bool blank(const std::string &line)
{
	return line.find_first_not_of(" \t\r") == std::string::npos;
}

// ---------------------------------------------------------------------------

int cmd_construct(const Common &c)
{
	auto rc = load(c);
	auto spec = build_code(rc);
	Output out(rc.output.path);
	write_spec(out.get(), spec);
	return 0;
}

int cmd_encode(const Common &c)
{
	auto rc = load(c);
	auto spec = build_code(rc);
	Input in(c.input);
	Output out(rc.output.path);
	std::string line;
	for (std::size_t no = 1; std::getline(in.get(), line); ++no) {
		if (blank(line))
			continue;
		std::istringstream s(line);
		std::string word;
		s >> word;
		BitVec payload;
		try {
			payload = bits_from_string(word);
		} catch (const std::exception &e) {
			throw std::runtime_error("line " + std::to_string(no) + ": " + e.what());
		}
		if (payload.size() != spec.payload_size())
			throw std::runtime_error("line " + std::to_string(no) + ": expected " +
			                         std::to_string(spec.payload_size()) + " payload bits, got " +
			                         std::to_string(payload.size()));
		out.get() << to_string(encode(payload, spec)) << "\n";
	}
	return 0;
}

template <class Dec>
void decode_stream(Dec &dec, const CodeSpec &spec, std::istream &in, std::ostream &out,
                   const std::function<typename Dec::Llr(double)> &convert)
{
	std::string line;
	std::vector<typename Dec::Llr> llr;
	for (std::size_t no = 1; std::getline(in, line); ++no) {
		if (blank(line))
			continue;
		std::istringstream s(line);
		llr.clear();
		for (double x; s >> x;)
			llr.push_back(convert(x));
		if (!s.eof())
			throw std::runtime_error("line " + std::to_string(no) + ": not a list of decimal LLRs");
		if (llr.size() != spec.N)
			throw std::runtime_error("line " + std::to_string(no) + ": expected " + std::to_string(spec.N) +
			                         " LLRs, got " + std::to_string(llr.size()));
		auto r = dec.decode(llr);
		out << "u_hat=" << to_string(r.u_hat) << " info_hat=" << to_string(r.info_hat) << " pm=" << r.pm
		    << " crc_pass=" << (r.crc_pass ? (*r.crc_pass ? "1" : "0") : "na") << "\n";
	}
}

int cmd_decode(const Common &c)
{
	auto rc = load(c);
	auto spec = build_code(rc);
	rc.profile.validate_run(spec.N, rc.list_size);
	Input in(c.input);
	Output out(rc.output.path);
	if (rc.channel.domain == LlrDomain::quantized) {
		FixedDomain dom(rc.profile.quant);
		FixedDecoder dec(spec, rc.profile, rc.list_size, dom);
		decode_stream<FixedDecoder>(dec, spec, in.get(), out.get(), [&](double x) { return dom.quantize(x); });
	} else {
		FloatDecoder dec(spec, rc.profile, rc.list_size);
		decode_stream<FloatDecoder>(dec, spec, in.get(), out.get(), [](double x) { return float(x); });
	}
	return 0;
}

int cmd_fer(const Common &c)
{
	auto rc = load(c);
	Campaign cp;
	cp.spec = build_code(rc);
	cp.profile = rc.profile;
	cp.list_size = rc.list_size;
	cp.channel = rc.channel;
	cp.esn0_db = rc.campaign.esn0_db;
	cp.chunk = rc.campaign.chunk;
	try {
		cp.profile.validate_run(cp.spec.N, cp.list_size);
	} catch (const InvalidParameter &e) {
		throw ConfigError("decoder", "L", e.what());
	}
	auto points = run_fer(cp, rc.campaign.parallel);

	Output out(rc.output.path);
	auto &o = out.get();
	if (rc.output.json) {
		nlohmann::ordered_json j;
		j["config_hash"] = hash_hex(rc);
		j["config"] = rc.canonical();
		auto &arr = j["points"] = nlohmann::json::array();
		for (const auto &p : points)
			arr.push_back({{"EsN0_dB", p.esn0_db},
			               {"EbN0_dB", p.ebn0_db},
			               {"frames", p.frames},
			               {"frame_errors", p.frame_errors},
			               {"bit_errors", p.bit_errors},
			               {"FER", p.fer},
			               {"BER", p.ber},
			               {"ci95", p.ci95}});
		o << j.dump(2) << "\n";
		return 0;
	}
	o << "# polarsim fer config_hash=" << hash_hex(rc) << "\n";
	std::istringstream canon(rc.canonical());
	for (std::string line; std::getline(canon, line);)
		o << "# " << line << "\n";
	o << "EsN0_dB,EbN0_dB,frames,frame_errors,FER,BER,ci95\n";
	o << std::setprecision(10);
	for (const auto &p : points)
		o << p.esn0_db << "," << p.ebn0_db << "," << p.frames << "," << p.frame_errors << "," << p.fer << ","
		  << p.ber << "," << p.ci95 << "\n";
	return 0;
}

void print_report(std::ostream &o, const CycleReport &r, bool pair, bool csv)
{
	std::vector<std::pair<std::string, std::string>> rows;
	auto add = [&](const std::string &k, auto v) {
		std::ostringstream s;
		s << std::setprecision(10) << v;
		rows.emplace_back(k, s.str());
	};
	add("total_cycles", r.total_cycles);
	add("pe_cycles", r.pe_cycles);
	add("sort_cycles", r.sort_cycles);
	add("idle_pe_cycles", r.idle_pe_cycles);
	add("serial_waves", r.serial_waves);
	add("recompute_cycles", r.recompute_cycles);
	for (std::size_t u = 0; u < unit_count; ++u)
		add(std::string("unit_") + to_string(Unit(u)), r.by_unit[u]);
	add("throughput_bps", r.throughput_bps);
	if (pair) {
		add("package_a_cycles", r.package_latency[0]);
		add("package_b_cycles", r.package_latency[1]);
		add("ratio", r.ratio);
	}
	if (csv) {
		for (std::size_t i = 0; i < rows.size(); ++i)
			o << (i ? "," : "") << rows[i].first;
		o << "\n";
		for (std::size_t i = 0; i < rows.size(); ++i)
			o << (i ? "," : "") << rows[i].second;
		o << "\n";
	} else {
		for (const auto &[k, v] : rows)
			o << k << " = " << v << "\n";
	}
}

int cmd_latency(const Common &c, bool csv, bool pair)
{
	auto rc = load(c);
	Campaign cp;
	cp.spec = build_code(rc);
	cp.profile = rc.profile;
	cp.list_size = rc.list_size;
	cp.channel = rc.channel;
	cp.esn0_db = rc.campaign.esn0_db;
	cp.profile.validate_run(cp.spec.N, cp.list_size);
	if (pair && !cp.profile.double_package)
		throw ConfigError("decoder", "double_package", "--pair needs a profile with double_package enabled");

	auto trace_of = [&](std::size_t frame) {
		auto rng = SplitMix64::for_frame(cp.channel.seed, 0, frame);
		BitVec payload(cp.spec.payload_size());
		for (auto &b : payload)
			b = rng.bit();
		auto llr = transmit(encode(payload, cp.spec), cp.esn0_db.front(), rng);
		SessionOptions so;
		so.trace = true;
		if (cp.channel.domain == LlrDomain::quantized) {
			FixedDomain dom(cp.profile.quant);
			FixedDecoder dec(cp.spec, cp.profile, cp.list_size, dom, so);
			std::vector<std::int16_t> q(llr.size());
			for (std::size_t i = 0; i < llr.size(); ++i)
				q[i] = dom.quantize(llr[i]);
			return dec.decode(q).trace;
		}
		FloatDecoder dec(cp.spec, cp.profile, cp.list_size, {}, so);
		std::vector<float> f(llr.begin(), llr.end());
		return dec.decode(f).trace;
	};

	Output out(rc.output.path);
	const auto a = trace_of(0);
	const std::size_t k = cp.spec.payload_size();
	if (!csv)
		out.get() << "# polarsim latency config_hash=" << hash_hex(rc) << "\n";
	if (pair)
		print_report(out.get(), double_package(a, trace_of(1), rc.arch, cp.profile, k), true, csv);
	else
		print_report(out.get(), latency(a, rc.arch, cp.profile, k), false, csv);
	return 0;
}

int cmd_selftest(bool full, bool verbose)
{
	checks::Options o;
	o.effort = full ? 1.0 : 0.05;
	o.fer = full;
	if (verbose)
		o.log = &std::cout;
	return checks::run(o, std::cout) ? 1 : 0;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Bit-accurate polar code decoder models: construction, decoding, FER and latency"};
	app.require_subcommand(1);

	Common common;
	auto *construct = app.add_subcommand("construct", "write a code spec file");
	add_common(construct, common, false);
	auto *enc = app.add_subcommand("encode", "encode payload bit strings, one frame per line");
	add_common(enc, common, true);
	auto *dec = app.add_subcommand("decode", "decode LLR frames, one frame per line");
	add_common(dec, common, true);
	auto *fer = app.add_subcommand("fer", "run a FER campaign and write CSV");
	add_common(fer, common, false);
	auto *lat = app.add_subcommand("latency", "decode one frame and report its cycle count");
	add_common(lat, common, false);
	bool csv = false, pair = false;
	lat->add_flag("--csv", csv, "CSV instead of key = value lines");
	lat->add_flag("--pair", pair, "schedule two frames as a double package");
	auto *self = app.add_subcommand("selftest", "run the oracle equivalence checks");
	bool full = false, verbose = false;
	self->add_flag("--full", full, "full trial counts and the Monte Carlo checks");
	self->add_flag("-v,--verbose", verbose, "print details");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		return app.exit(e) == 0 ? 0 : 2;
	}

	try {
		if (construct->parsed())
			return cmd_construct(common);
		if (enc->parsed())
			return cmd_encode(common);
		if (dec->parsed())
			return cmd_decode(common);
		if (fer->parsed())
			return cmd_fer(common);
		if (lat->parsed())
			return cmd_latency(common, csv, pair);
		if (self->parsed())
			return cmd_selftest(full, verbose);
	} catch (const ConfigError &e) {
		std::cerr << "polarsim: config error: " << e.what() << "\n";
		return 2;
	} catch (const UsageError &e) {
		std::cerr << "polarsim: " << e.what() << "\n";
		return 2;
	} catch (const std::exception &e) {
		std::cerr << "polarsim: " << e.what() << "\n";
		return 1;
	}
	return 0;
}
