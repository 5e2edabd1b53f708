/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polar/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "polar/error.hpp"

namespace polar {

namespace {

std::string trim(std::string s)
{
	boost::algorithm::trim(s);
	return s;
}

} // namespace

ConfigMap ConfigMap::from_ini(std::istream &in, const std::string &origin)
{
	boost::property_tree::ptree tree;
	try {
		boost::property_tree::ini_parser::read_ini(in, tree);
	} catch (const boost::property_tree::ini_parser_error &e) {
		throw ConfigError("file", origin, e.message() + " (line " + std::to_string(e.line()) + ")");
	}
	ConfigMap m;
	for (const auto &[section, body] : tree) {
		if (body.empty() && !body.data().empty())
			throw ConfigError("file", section, "key outside of any section");
		for (const auto &[key, value] : body)
			m.set(section, key, value.data());
	}
	return m;
}

ConfigMap ConfigMap::from_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw ConfigError("file", path, "cannot open");
	return from_ini(in, path);
}

void ConfigMap::set(const std::string &assignment)
{
	auto eq = assignment.find('=');
	auto dot = assignment.find('.');
	if (eq == std::string::npos || dot == std::string::npos || dot > eq)
		throw ConfigError("override", assignment, "expected section.key=value");
	set(trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)),
	    trim(assignment.substr(eq + 1)));
}

void ConfigMap::set(const std::string &section, const std::string &key, const std::string &value)
{
	entries_[section + "." + key] = trim(value);
}

void ConfigMap::merge(const ConfigMap &other)
{
	for (const auto &[k, v] : other.entries_)
		entries_[k] = v;
}

std::optional<std::string> ConfigMap::get(const std::string &section, const std::string &key) const
{
	auto it = entries_.find(section + "." + key);
	if (it == entries_.end())
		return std::nullopt;
	return it->second;
}

// ---------------------------------------------------------------------------

namespace {

struct Reader {
	Reader(const ConfigMap &m, std::string s) : map(m), section(std::move(s)) {}

	const ConfigMap &map;
	std::string section;
	std::set<std::string> used;

	std::optional<std::string> raw(const std::string &key)
	{
		used.insert(section + "." + key);
		return map.get(section, key);
	}
	[[noreturn]] void fail(const std::string &key, const std::string &what) const
	{
		throw ConfigError(section, key, what);
	}

	template <class T>
	void uint(const std::string &key, T &out)
	{
		auto v = raw(key);
		if (!v)
			return;
		unsigned long long x = 0;
		int base = 10;
		std::string_view s = *v;
		if (s.starts_with("0x") || s.starts_with("0X")) {
			s.remove_prefix(2);
			base = 16;
		}
		auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x, base);
		if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
			fail(key, "expected a non-negative integer, got '" + *v + "'");
		out = T(x);
	}
	void real(const std::string &key, double &out)
	{
		auto v = raw(key);
		if (!v)
			return;
		try {
			std::size_t pos = 0;
			double x = std::stod(*v, &pos);
			if (pos != v->size() || !std::isfinite(x))
				throw std::invalid_argument("");
			out = x;
		} catch (const std::exception &) {
			fail(key, "expected a number, got '" + *v + "'");
		}
	}
	void boolean(const std::string &key, bool &out)
	{
		auto v = raw(key);
		if (!v)
			return;
		auto s = boost::algorithm::to_lower_copy(*v);
		if (s == "true" || s == "1" || s == "yes" || s == "on")
			out = true;
		else if (s == "false" || s == "0" || s == "no" || s == "off")
			out = false;
		else
			fail(key, "expected true/false, got '" + *v + "'");
	}
	void text(const std::string &key, std::string &out)
	{
		if (auto v = raw(key))
			out = *v;
	}
	template <class F>
	void with(const std::string &key, F &&apply)
	{
		auto v = raw(key);
		if (!v)
			return;
		try {
			apply(*v);
		} catch (const ConfigError &) {
			throw;
		} catch (const std::exception &e) {
			fail(key, e.what());
		}
	}
	template <class F>
	void check(const std::string &key, F &&validate)
	{
		try {
			validate();
		} catch (const std::exception &e) {
			fail(key, e.what());
		}
	}
};

std::optional<CrcSpec> parse_crc_name(const std::string &s)
{
	if (s == "none")
		return std::nullopt;
	if (s == "crc24a" || s == "crc24")
		return CrcSpec::crc24a();
	if (s == "crc16")
		return CrcSpec::crc16();
	if (s == "crc11")
		return CrcSpec::crc11();
	if (s == "crc8")
		return CrcSpec::crc8();
	throw InvalidParameter("unknown CRC '" + s + "' (none, crc24a, crc16, crc11, crc8)");
}

std::map<unsigned, unsigned> parse_sort_table(const std::string &s)
{
	std::map<unsigned, unsigned> table;
	std::vector<std::string> items;
	boost::algorithm::split(items, s, boost::is_any_of(","));
	for (auto item : items) {
		item = trim(item);
		auto colon = item.find(':');
		if (colon == std::string::npos)
			throw InvalidParameter("expected L:cycles pairs, got '" + item + "'");
		table[unsigned(std::stoul(item.substr(0, colon)))] = unsigned(std::stoul(item.substr(colon + 1)));
	}
	return table;
}

std::string hex(std::uint32_t v)
{
	std::ostringstream o;
	o << "0x" << std::uppercase << std::hex << v;
	return o.str();
}

} // namespace

std::vector<double> parse_snr_list(const std::string &text)
{
	std::vector<double> out;
	auto num = [](std::string s) {
		s = trim(s);
		std::size_t pos = 0;
		double x = std::stod(s, &pos);
		if (pos != s.size() || !std::isfinite(x))
			throw InvalidParameter("bad SNR value '" + s + "'");
		return x;
	};
	if (text.find(':') != std::string::npos) {
		std::vector<std::string> p;
		boost::algorithm::split(p, text, boost::is_any_of(":"));
		if (p.size() != 3)
			throw InvalidParameter("SNR range must be start:step:stop");
		double a = num(p[0]), step = num(p[1]), b = num(p[2]);
		if (!(step > 0) || b < a)
			throw InvalidParameter("SNR range needs step > 0 and stop >= start");
		for (std::size_t i = 0;; ++i) {
			double x = a + double(i) * step;
			if (x > b + 1e-9)
				break;
			out.push_back(std::round(x * 1e9) / 1e9);
		}
		return out;
	}
	std::vector<std::string> items;
	boost::algorithm::split(items, text, boost::is_any_of(","));
	for (const auto &s : items)
		out.push_back(num(s));
	if (out.empty())
		throw InvalidParameter("empty SNR list");
	return out;
}

CodeSpec CodeOptions::build() const
{
	CodeSpec spec;
	if (!spec_file.empty()) {
		spec = read_spec_file(spec_file);
	} else if (method == Construction::external_sequence) {
		if (sequence_file.empty())
			throw InvalidParameter("external_sequence construction needs a sequence file");
		std::ifstream in(sequence_file);
		if (!in)
			throw InvalidParameter("cannot open sequence file '" + sequence_file + "'");
		std::vector<std::size_t> seq;
		for (std::size_t x; in >> x;)
			seq.push_back(x);
		if (!in.eof())
			throw InvalidParameter("sequence file must hold whitespace-separated indices");
		// Longer sequences (a mother sequence) are filtered down to N.
		std::vector<std::size_t> filtered;
		for (auto x : seq)
			if (x < N)
				filtered.push_back(x);
		spec = construct_from_reliability(N, k, sequence_reliability(N, filtered), method, 0.0);
	} else {
		double param = design_param.value_or(method == Construction::bhattacharyya ? 0.5 : 0.0);
		spec = construct_code(N, k, method, param);
	}
	if (crc)
		spec.crc = crc;
	if (good_threshold > 0)
		spec.good_mask = good_bit_set(spec, good_threshold);
	spec.validate();
	return spec;
}

RunConfig RunConfig::parse(const ConfigMap &map)
{
	RunConfig rc;
	std::set<std::string> used;
	auto finish = [&](Reader &r) { used.insert(r.used.begin(), r.used.end()); };

	{
		Reader r{map, "code"};
		r.uint("N", rc.code.N);
		r.uint("k", rc.code.k);
		r.with("method", [&](const std::string &v) { rc.code.method = construction_from_string(v); });
		r.with("design", [&](const std::string &v) {
			std::size_t pos = 0;
			double x = std::stod(v, &pos);
			if (pos != v.size())
				throw InvalidParameter("expected a number");
			rc.code.design_param = x;
		});
		r.text("sequence_file", rc.code.sequence_file);
		r.text("spec_file", rc.code.spec_file);
		r.with("crc", [&](const std::string &v) { rc.code.crc = parse_crc_name(v); });
		if (auto w = map.get("code", "crc_width")) {
			CrcSpec c = rc.code.crc.value_or(CrcSpec{});
			r.uint("crc_width", c.width);
			r.uint("crc_poly", c.polynomial);
			r.uint("crc_init", c.initial);
			rc.code.crc = c;
		} else if (map.get("code", "crc_poly") || map.get("code", "crc_init")) {
			if (!rc.code.crc)
				r.fail("crc_poly", "custom polynomial needs crc_width or a named crc");
			r.uint("crc_poly", rc.code.crc->polynomial);
			r.uint("crc_init", rc.code.crc->initial);
		}
		r.real("good_threshold", rc.code.good_threshold);
		if (rc.code.crc)
			r.check("crc", [&] { rc.code.crc->validate(); });
		r.check("good_threshold", [&] {
			if (rc.code.good_threshold < 0 || rc.code.good_threshold > 1)
				throw InvalidParameter("must be in [0, 1]");
		});
		r.check(rc.code.spec_file.empty() ? "N" : "spec_file", [&] {
			if (rc.code.spec_file.empty() && (!is_power_of_two(rc.code.N) || rc.code.N < 2 ||
			                                  rc.code.N > (std::size_t{1} << 15)))
				throw InvalidParameter("N must be a power of two in [2, 2^15]");
			if (rc.code.spec_file.empty() && (rc.code.k < 1 || rc.code.k > rc.code.N))
				throw InvalidParameter("k must be in [1, N]");
		});
		finish(r);
	}
	{
		Reader r{map, "decoder"};
		r.with("kind", [&](const std::string &v) {
			rc.profile = DecoderProfile::for_kind(decoder_kind_from_string(v));
			rc.arch = ArchParams::for_kind(rc.profile.kind);
			rc.list_size = rc.profile.max_list;
		});
		r.uint("L", rc.list_size);
		r.uint("leaf_width", rc.profile.leaf_width);
		r.uint("storage_stride", rc.profile.storage_stride);
		r.uint("max_special_node", rc.profile.max_special_node);
		r.boolean("double_package", rc.profile.double_package);
		r.with("selection", [&](const std::string &v) { rc.profile.selection = selection_from_string(v); });
		r.boolean("special_nodes", rc.profile.special_nodes);
		r.boolean("good_bits", rc.profile.good_bits);
		r.boolean("skip_frozen_prefix", rc.profile.skip_frozen_prefix);
		r.boolean("multi_bit", rc.profile.multi_bit);
		finish(r);
	}
	{
		Reader r{map, "quant"};
		auto &q = rc.profile.quant;
		r.uint("channel_width", q.channel_width);
		bool stage0_set = map.get("quant", "internal_width_stage0").has_value();
		r.uint("internal_width", q.internal_width);
		if (!stage0_set && map.get("quant", "internal_width") && rc.profile.kind != DecoderKind::ultra)
			q.internal_width_stage0 = q.internal_width;
		r.uint("internal_width_stage0", q.internal_width_stage0);
		r.uint("sort_width", q.sort_width);
		r.uint("pm_width", q.pm_width);
		r.real("channel_scale", q.channel_scale);
		r.check("channel_width", [&] { q.validate(); });
		finish(r);
	}
	{
		Reader r{map, "decoder"};
		r.check("kind", [&] { rc.profile.validate(); });
		r.check("L", [&] {
			if (rc.list_size < 1 || !is_power_of_two(rc.list_size) || rc.list_size > rc.profile.max_list)
				throw InvalidParameter("L must be a power of two <= " + std::to_string(rc.profile.max_list));
		});
	}
	{
		Reader r{map, "arch"};
		auto &a = rc.arch;
		r.uint("pe_count_serial", a.pe_count_serial);
		r.uint("parallel_threshold", a.parallel_threshold);
		r.uint("cycles_per_pe_pass", a.cycles_per_pe_pass);
		r.with("sort_latency", [&](const std::string &v) {
			for (const auto &[l, c] : parse_sort_table(v))
				a.sort_latency[l] = c;
		});
		r.uint("parallel_unit_latency", a.parallel_unit_latency);
		r.uint("semi_parallel_groups", a.semi_parallel_groups);
		r.uint("num_cores", a.num_cores);
		r.real("f_clk", a.f_clk);
		r.check("pe_count_serial", [&] { a.validate(); });
		finish(r);
	}
	{
		Reader r{map, "channel"};
		auto &c = rc.channel;
		r.with("domain", [&](const std::string &v) {
			if (v == "float")
				c.domain = LlrDomain::floating;
			else if (v == "quantized")
				c.domain = LlrDomain::quantized;
			else
				throw InvalidParameter("expected float or quantized");
		});
		r.uint("seed", c.seed);
		r.uint("frames", c.frames);
		r.uint("max_errors", c.max_errors);
		r.check("frames", [&] {
			if (c.frames < 1)
				throw InvalidParameter("must be at least 1");
		});
		r.check("max_errors", [&] {
			if (c.max_errors < 1)
				throw InvalidParameter("must be at least 1");
		});
		finish(r);
	}
	{
		Reader r{map, "campaign"};
		r.with("snr", [&](const std::string &v) { rc.campaign.esn0_db = parse_snr_list(v); });
		r.uint("chunk", rc.campaign.chunk);
		r.boolean("parallel", rc.campaign.parallel);
		r.check("chunk", [&] {
			if (rc.campaign.chunk < 1)
				throw InvalidParameter("must be at least 1");
		});
		finish(r);
	}
	{
		Reader r{map, "output"};
		r.text("path", rc.output.path);
		r.boolean("json", rc.output.json);
		finish(r);
	}

	for (const auto &[key, value] : map.entries()) {
		if (!used.count(key)) {
			auto dot = key.find('.');
			throw ConfigError(key.substr(0, dot), key.substr(dot + 1), "unknown key");
		}
	}
	return rc;
}

std::string RunConfig::canonical() const
{
	std::ostringstream o;
	o << std::setprecision(17);
	o << "code.N=" << code.N << "\n";
	o << "code.k=" << code.k << "\n";
	o << "code.method=" << to_string(code.method) << "\n";
	if (code.design_param)
		o << "code.design=" << *code.design_param << "\n";
	if (!code.sequence_file.empty())
		o << "code.sequence_file=" << code.sequence_file << "\n";
	if (!code.spec_file.empty())
		o << "code.spec_file=" << code.spec_file << "\n";
	if (code.crc)
		o << "code.crc_width=" << code.crc->width << "\ncode.crc_poly=" << hex(code.crc->polynomial)
		  << "\ncode.crc_init=" << hex(code.crc->initial) << "\n";
	else
		o << "code.crc=none\n";
	o << "code.good_threshold=" << code.good_threshold << "\n";
	const auto &q = profile.quant;
	o << "quant.channel_width=" << q.channel_width << "\nquant.internal_width=" << q.internal_width
	  << "\nquant.internal_width_stage0=" << q.internal_width_stage0 << "\nquant.sort_width=" << q.sort_width
	  << "\nquant.pm_width=" << q.pm_width << "\nquant.channel_scale=" << q.channel_scale << "\n";
	o << "decoder.kind=" << to_string(profile.kind) << "\ndecoder.L=" << list_size
	  << "\ndecoder.leaf_width=" << profile.leaf_width << "\ndecoder.storage_stride=" << profile.storage_stride
	  << "\ndecoder.max_special_node=" << profile.max_special_node
	  << "\ndecoder.double_package=" << profile.double_package
	  << "\ndecoder.selection=" << to_string(profile.selection)
	  << "\ndecoder.special_nodes=" << profile.special_nodes << "\ndecoder.good_bits=" << profile.good_bits
	  << "\ndecoder.skip_frozen_prefix=" << profile.skip_frozen_prefix
	  << "\ndecoder.multi_bit=" << profile.multi_bit << "\n";
	o << "arch.pe_count_serial=" << arch.pe_count_serial << "\narch.parallel_threshold=" << arch.parallel_threshold
	  << "\narch.cycles_per_pe_pass=" << arch.cycles_per_pe_pass << "\narch.sort_latency=";
	bool first = true;
	for (const auto &[l, c] : arch.sort_latency) {
		o << (first ? "" : ",") << l << ":" << c;
		first = false;
	}
	o << "\narch.parallel_unit_latency=" << arch.parallel_unit_latency
	  << "\narch.semi_parallel_groups=" << arch.semi_parallel_groups << "\narch.num_cores=" << arch.num_cores
	  << "\narch.f_clk=" << arch.f_clk << "\n";
	o << "channel.domain=" << (channel.domain == LlrDomain::quantized ? "quantized" : "float")
	  << "\nchannel.seed=" << channel.seed << "\nchannel.frames=" << channel.frames
	  << "\nchannel.max_errors=" << channel.max_errors << "\n";
	o << "campaign.snr=";
	for (std::size_t i = 0; i < campaign.esn0_db.size(); ++i)
		o << (i ? "," : "") << campaign.esn0_db[i];
	o << "\ncampaign.chunk=" << campaign.chunk << "\n";
	return o.str();
}

std::uint64_t fnv1a64(const std::string &s)
{
	std::uint64_t h = 0xCBF29CE484222325ull;
	for (unsigned char c : s) {
		h ^= c;
		h *= 0x100000001B3ull;
	}
	return h;
}

std::uint64_t RunConfig::hash() const
{
	return fnv1a64(canonical());
}

// ---------------------------------------------------------------------------

void write_spec(std::ostream &out, const CodeSpec &spec)
{
	out << "[spec]\n";
	out << "N = " << spec.N << "\n";
	out << "k = " << spec.k << "\n";
	out << "method = " << to_string(spec.method) << "\n";
	out << "design = " << std::setprecision(17) << spec.design_param << "\n";
	if (spec.crc)
		out << "crc_width = " << spec.crc->width << "\ncrc_poly = " << hex(spec.crc->polynomial)
		    << "\ncrc_init = " << hex(spec.crc->initial) << "\n";
	out << "frozen = " << to_string(spec.frozen_mask) << "\n";
	if (std::count(spec.good_mask.begin(), spec.good_mask.end(), 1))
		out << "good = " << to_string(spec.good_mask) << "\n";
	if (spec.pc) {
		out << "parity = ";
		for (std::size_t i = 0; i < spec.pc->constraints.size(); ++i) {
			const auto &c = spec.pc->constraints[i];
			out << (i ? ";" : "") << c.parity_position << ":";
			for (std::size_t j = 0; j < c.sources.size(); ++j)
				out << (j ? "," : "") << c.sources[j];
		}
		out << "\n";
	}
	if (!spec.reliability.empty()) {
		out << "reliability =";
		out << std::setprecision(17);
		for (double r : spec.reliability)
			out << " " << r;
		out << "\n";
	}
}

CodeSpec read_spec(std::istream &in)
{
	ConfigMap m = ConfigMap::from_ini(in, "spec");
	Reader r{m, "spec"};
	CodeSpec spec;
	r.uint("N", spec.N);
	r.uint("k", spec.k);
	spec.n = log2_exact(spec.N);
	r.with("method", [&](const std::string &v) { spec.method = construction_from_string(v); });
	r.real("design", spec.design_param);
	if (m.get("spec", "crc_width")) {
		CrcSpec c;
		r.uint("crc_width", c.width);
		r.uint("crc_poly", c.polynomial);
		r.uint("crc_init", c.initial);
		spec.crc = c;
	}
	r.with("frozen", [&](const std::string &v) { spec.frozen_mask = bits_from_string(v); });
	spec.good_mask.assign(spec.N, 0);
	r.with("good", [&](const std::string &v) { spec.good_mask = bits_from_string(v); });
	r.with("parity", [&](const std::string &v) {
		ParityCheckSpec pc;
		std::vector<std::string> items;
		boost::algorithm::split(items, v, boost::is_any_of(";"));
		for (const auto &item : items) {
			auto colon = item.find(':');
			if (colon == std::string::npos)
				throw InvalidParameter("parity entries are position:source,source,...");
			ParityConstraint c{std::stoul(item.substr(0, colon)), {}};
			std::vector<std::string> src;
			auto rest = trim(item.substr(colon + 1));
			if (!rest.empty()) {
				boost::algorithm::split(src, rest, boost::is_any_of(","));
				for (const auto &s : src)
					c.sources.push_back(std::stoul(s));
			}
			pc.constraints.push_back(std::move(c));
		}
		spec.pc = std::move(pc);
	});
	r.with("reliability", [&](const std::string &v) {
		std::istringstream is(v);
		for (double x; is >> x;)
			spec.reliability.push_back(x);
	});
	for (const auto &[key, value] : m.entries())
		if (!r.used.count(key))
			throw ConfigError("spec", key.substr(key.find('.') + 1), "unknown key");
	r.check("N", [&] { spec.validate(); });
	return spec;
}

CodeSpec read_spec_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw ConfigError("code", "spec_file", "cannot open '" + path + "'");
	return read_spec(in);
}

} // namespace polar
