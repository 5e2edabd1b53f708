/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "polar/config.hpp"

using namespace polar;

namespace {

ConfigMap ini(const std::string &text)
{
	std::istringstream in(text);
	return ConfigMap::from_ini(in);
}

std::pair<std::string, std::string> config_error(const ConfigMap &m)
{
	try {
		RunConfig::parse(m);
	} catch (const ConfigError &e) {
		return {e.section(), e.key()};
	}
	return {};
}

} // namespace

TEST_CASE("config: defaults")
{
	auto rc = RunConfig::parse(ConfigMap{});
	CHECK(rc.profile == DecoderProfile::flexible());
	CHECK(rc.list_size == 8);
	CHECK(rc.arch == ArchParams::for_kind(DecoderKind::flexible));
	CHECK(rc.code.build().N == 1024);
}

TEST_CASE("config: full file")
{
	auto m = ini("[code]\nN = 256\nk = 100\nmethod = ga\ndesign = 2.5\ncrc = crc8\n"
	             "[decoder]\nkind = ultra\nL = 16\nselection = crc_aided\nmulti_bit = false\n"
	             "[quant]\nchannel_scale = 0.5\n"
	             "[arch]\nsort_latency = 16:9, 32:20\nnum_cores = 2\n"
	             "[channel]\nseed = 0x10\nframes = 500\nmax_errors = 20\ndomain = quantized\n"
	             "[campaign]\nsnr = 1:0.5:2\nchunk = 32\nparallel = off\n"
	             "[output]\npath = out.csv\njson = yes\n");
	auto rc = RunConfig::parse(m);
	CHECK(rc.code.N == 256);
	CHECK(rc.code.k == 100);
	CHECK(rc.code.method == Construction::gaussian_approx);
	CHECK(*rc.code.design_param == 2.5);
	CHECK(rc.code.crc->width == 8);
	CHECK(rc.profile.kind == DecoderKind::ultra);
	CHECK(rc.profile.leaf_width == 2);
	CHECK(rc.list_size == 16);
	CHECK(rc.profile.selection == Selection::crc_aided);
	CHECK_FALSE(rc.profile.multi_bit);
	CHECK(rc.profile.quant.channel_scale == 0.5);
	CHECK(rc.arch.sort_latency.at(16) == 9);
	CHECK(rc.arch.sort_latency.at(32) == 20);
	CHECK(rc.arch.semi_parallel_groups == 4);
	CHECK(rc.arch.num_cores == 2);
	CHECK(rc.channel.seed == 16);
	CHECK(rc.channel.frames == 500);
	CHECK(rc.channel.domain == LlrDomain::quantized);
	CHECK(rc.campaign.esn0_db == std::vector<double>{1.0, 1.5, 2.0});
	CHECK(rc.campaign.chunk == 32);
	CHECK_FALSE(rc.campaign.parallel);
	CHECK(rc.output.path == "out.csv");
	CHECK(rc.output.json);
	auto spec = rc.code.build();
	CHECK(spec.k == 100);
	CHECK(spec.payload_size() == 92);
}

TEST_CASE("config: errors name section and key")
{
	CHECK(config_error(ini("[code]\nNN = 4\n")) == std::pair<std::string, std::string>{"code", "NN"});
	CHECK(config_error(ini("[decoder]\nL = 3\n")) == std::pair<std::string, std::string>{"decoder", "L"});
	CHECK(config_error(ini("[decoder]\nkind = fast\n")) ==
	      std::pair<std::string, std::string>{"decoder", "kind"});
	CHECK(config_error(ini("[code]\nN = 1000\n")) == std::pair<std::string, std::string>{"code", "N"});
	CHECK(config_error(ini("[code]\nk = many\n")) == std::pair<std::string, std::string>{"code", "k"});
	CHECK(config_error(ini("[channel]\nframes = 0\n")) ==
	      std::pair<std::string, std::string>{"channel", "frames"});
	CHECK(config_error(ini("[arch]\nnum_cores = 0\n")) ==
	      std::pair<std::string, std::string>{"arch", "pe_count_serial"});
	CHECK(config_error(ini("[mystery]\nx = 1\n")) == std::pair<std::string, std::string>{"mystery", "x"});
	CHECK(config_error(ini("[decoder]\nkind = sc\ndouble_package = true\n")).first == "decoder");
	CHECK_THROWS_AS(ini("[code\nN=4\n"), ConfigError);
}

TEST_CASE("config: overrides")
{
	auto m = ini("[code]\nN = 256\nk = 128\n[decoder]\nL = 4\n");
	m.set("decoder.L=2");
	m.set("code.k = 64");
	m.set("decoder.L=1");
	auto rc = RunConfig::parse(m);
	CHECK(rc.list_size == 1);
	CHECK(rc.code.k == 64);
	CHECK_THROWS_AS(m.set("nodot=1"), ConfigError);
	CHECK_THROWS_AS(m.set("a.b"), ConfigError);

	ConfigMap base = ini("[decoder]\nL = 4\n");
	ConfigMap over = ini("[decoder]\nL = 2\n");
	base.merge(over);
	CHECK(RunConfig::parse(base).list_size == 2);
}

TEST_CASE("config: snr lists")
{
	CHECK(parse_snr_list("1,2.5, 3") == std::vector<double>{1.0, 2.5, 3.0});
	CHECK(parse_snr_list("0:0.25:1") == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});
	CHECK(parse_snr_list("-1:1:1") == std::vector<double>{-1, 0, 1});
	CHECK_THROWS_AS(parse_snr_list("1:0:2"), InvalidParameter);
	CHECK_THROWS_AS(parse_snr_list("1:2"), InvalidParameter);
	CHECK_THROWS(parse_snr_list("x"));
}

TEST_CASE("config: hash follows the effective configuration")
{
	auto a = RunConfig::parse(ini("[decoder]\nL = 4\n"));
	auto b = RunConfig::parse(ini("[decoder]\nL=4\n[campaign]\nparallel = false\n"));
	auto c = RunConfig::parse(ini("[decoder]\nL = 2\n"));
	CHECK(a.hash() == b.hash());
	CHECK(a.hash() != c.hash());
	CHECK(fnv1a64("") == 0xCBF29CE484222325ull);
	CHECK(fnv1a64("a") == 0xAF63DC4C8601EC8Cull);
}

TEST_CASE("config: spec file round trip")
{
	std::mt19937_64 rng(4);
	for (int trial = 0; trial < 20; ++trial) {
		auto spec = construct_code(64, 20 + rng() % 30, Construction::bhattacharyya, 0.5);
		if (trial % 2)
			spec.crc = CrcSpec::crc8();
		if (trial % 3 == 0)
			testing::add_parity(rng, spec, 3);
		if (trial % 4 == 1)
			spec.good_mask = good_bit_set(spec, 0.01);
		std::ostringstream out;
		write_spec(out, spec);
		std::istringstream in(out.str());
		auto back = read_spec(in);
		CHECK(back == spec);
	}
	std::istringstream bad("[spec]\nN = 8\nk = 2\nfrozen = 1111\n");
	CHECK_THROWS(read_spec(bad));
}
