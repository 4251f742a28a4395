/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/color.hpp"
#include "cbcode/error.hpp"
#include "cbcode/harness.hpp"
#include "cbcode/pipeline.hpp"
#include "cbcode/png_io.hpp"
#include "cbcode/report_json.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

using namespace cbcode;

namespace {

void CheckInvariants(const DecodeReport& r)
{
	CHECK((!r.crc_ok || r.found));
	CHECK((!r.crc_exact || r.crc_ok));
	CHECK(r.payload.has_value() == r.crc_ok);
	CHECK((r.status == DecodeStatus::Ok) == r.crc_ok);
	CHECK(r.attempts >= 1);
}

uint64_t Fnv(const RasterImage& img)
{
	uint64_t h = 1469598103934665603ULL;
	for (Rgb p : img.pixels())
		for (uint8_t c : {p.r, p.g, p.b})
			h = (h ^ c) * 1099511628211ULL;
	return h;
}

} // namespace

TEST_CASE("clean round trip")
{
	DecodeReport r = Decode(Encode(42));
	CheckInvariants(r);
	CHECK(r.status == DecodeStatus::Ok);
	CHECK(r.payload == 42u);
	CHECK(r.crc_exact);
	CHECK(r.attempts == 1);
	CHECK(r.confidences.size() == 12);
	CHECK(r.elapsed_ms >= 0);
}

TEST_CASE("round trip across block sizes")
{
	std::mt19937_64 rng(3);
	for (int block : {1, 8, 65})
		for (int i = 0; i < 30; ++i) {
			Payload p = RandomPayload(rng);
			RasterImage img = Encode(p, {block, 0, White});
			if (block == 1)
				img = ScaleImage(img, 64, ScaleMethod::Nearest);
			DecodeReport r = Decode(img);
			CheckInvariants(r);
			CHECK(r.payload == p);
			CHECK(r.crc_exact);
		}
}

TEST_CASE("encode")
{
	RasterImage zero = Encode(0);
	CHECK(zero.width() == 260);
	CHECK(zero.at(227, 32) == Rgb{0, 0, 0});
	CHECK(Encode(0, {1, 0, White}).width() == 4);
	CHECK_THROWS_AS(Encode(PayloadLimit), Error);

	std::mt19937_64 rng(8);
	std::set<uint64_t> hashes;
	std::set<Payload> payloads;
	while (payloads.size() < 100)
		payloads.insert(RandomPayload(rng));
	for (Payload p : payloads)
		hashes.insert(Fnv(Encode(p, {4, 0, White})));
	CHECK(hashes.size() == 100);
}

TEST_CASE("downscaled and degraded inputs")
{
	std::mt19937_64 rng(4);
	for (int i = 0; i < 10; ++i) {
		Payload p = RandomPayload(rng);
		DecodeReport r = Decode(ScaleImage(Encode(p), 0.25, ScaleMethod::Bilinear));
		CheckInvariants(r);
		CHECK(r.crc_ok);
		CHECK(r.payload == p);
	}
	Payload p = RandomPayload(rng);
	DecodeReport noisy = Decode(AddNoise(Encode(p), {NoiseKind::Gaussian, 8, 0, 0, 0, 77}));
	CHECK(noisy.payload == p);
	CHECK(noisy.crc_exact);

	DecodeOptions raw;
	raw.enable_prefilter = false;
	CHECK(Decode(Encode(p), raw).crc_exact);
}

TEST_CASE("not found")
{
	DecodeOptions o;
	o.timeout_ms = 2000;
	RasterImage noise = AddNoise(RasterImage(200, 200, Rgb{128, 128, 128}), {NoiseKind::Gaussian, 70, 0, 0, 0, 1});
	DecodeReport r = Decode(noise, o);
	CheckInvariants(r);
	CHECK(r.status == DecodeStatus::NotFound);
	CHECK_FALSE(r.found);
	CHECK_FALSE(r.symbols.has_value());
	CHECK(r.elapsed_ms <= o.timeout_ms);

	DecodeReport white = Decode(RasterImage(64, 64));
	CHECK(white.status == DecodeStatus::NotFound);
}

TEST_CASE("occlusion outcomes")
{
	const auto& layout = CodeLayout::Default();
	std::mt19937_64 rng(6);
	for (int cell : {2, 7, 15}) {
		Payload p = RandomPayload(rng);
		DecodeReport ok = Decode(Occlude(Encode(p), cell, 0.4, DefaultInterferenceColor));
		CheckInvariants(ok);
		CHECK(ok.payload == p);

		DecodeReport bad = Decode(Occlude(Encode(p), cell, 1.0, DefaultInterferenceColor));
		CheckInvariants(bad);
		CHECK(bad.status == DecodeStatus::CrcFailure);
		CHECK(bad.found);
		CHECK(bad.attempts == 4);
		CHECK(bad.confidences[layout.dataSlot(cell)] < 0.5);
	}
}

TEST_CASE("strict CRC mode")
{
	// A V gray drifted by 3 levels passes the default window only.
	Payload p = 55555;
	const CodeMatrix m = BuildMatrix(PayloadToSymbols(p));
	const uint8_t drift = static_cast<uint8_t>(m.crc >= 128 ? m.crc - 3 : m.crc + 3);
	RasterImage img = Occlude(Encode(p), 4, 1.0, Rgb{drift, drift, drift});

	DecodeReport loose = Decode(img);
	CheckInvariants(loose);
	CHECK(loose.crc_ok);
	CHECK_FALSE(loose.crc_exact);
	CHECK(loose.crc_read == drift);

	DecodeOptions strict;
	strict.v_tolerance = 0;
	DecodeReport s = Decode(img, strict);
	CheckInvariants(s);
	CHECK(s.status == DecodeStatus::CrcFailure);
	CHECK(s.crc_read != s.crc_computed);
	CHECK(Decode(Encode(p), strict).crc_ok);
}

TEST_CASE("strict mode agrees with exact equality on confident reads")
{
	DecodeOptions strict;
	strict.v_tolerance = 0;
	std::mt19937_64 rng(10);
	for (int i = 0; i < 30; ++i) {
		Payload p = RandomPayload(rng);
		RasterImage img = Encode(p);
		if (i % 2) {
			uint8_t v = static_cast<uint8_t>(rng());
			img = Occlude(img, 4, 1.0, Rgb{v, v, v});
		}
		DecodeReport r = Decode(img, strict);
		REQUIRE(r.crc_read.has_value());
		CHECK(r.crc_ok == (*r.crc_read == *r.crc_computed));
	}
}

TEST_CASE("timeout budget")
{
	DecodeOptions o;
	o.timeout_ms = 1;
	RasterImage big = Occlude(Encode(9, {200, 0, White}), 6, 1.0, DefaultInterferenceColor, {200, 0, White});
	DecodeReport r = Decode(big, o);
	CheckInvariants(r);
	CHECK(r.status == DecodeStatus::Timeout);
	CHECK(r.attempts < 4);
}

TEST_CASE("option validation")
{
	DecodeOptions o;
	o.timeout_ms = 0;
	CHECK_THROWS_AS(Decode(Encode(1), o), Error);
	o = {};
	o.v_tolerance = 0x80;
	CHECK_THROWS_AS(Decode(Encode(1), o), Error);
	o = {};
	o.sample_points = 6;
	CHECK_THROWS_AS(Decode(Encode(1), o), Error);
}

TEST_CASE("region hint on an embedded 4x4 code")
{
	std::mt19937_64 rng(14);
	for (int i = 0; i < 20; ++i) {
		Payload p = RandomPayload(rng);
		RasterImage host = AddNoise(RasterImage(28, 28, Rgb{0x90, 0x80, 0x70}), {NoiseKind::Gaussian, 20, 0, 0, 0, 9});
		int x = 20, y = 2;
		RasterImage img = Embed(host, Encode(p, {1, 0, White}), x, y);
		DecodeOptions o;
		o.region_hint = Quad{{{20, 2}, {24, 2}, {24, 6}, {20, 6}}};
		DecodeReport r = Decode(img, o);
		CheckInvariants(r);
		CHECK(r.payload == p);
	}
}

TEST_CASE("color correction helps a warm cast")
{
	const Payload p = 1'111'111'111;
	RasterImage img = Encode(p, {65, 16, White});
	const double gain[3] = {1.0, 0.8, 0.55};
	for (Rgb& px : img.pixels()) {
		LinearRgb l = Linearize(px);
		px = Delinearize({l.r * gain[0], l.g * gain[1], l.b * gain[2]});
	}
	DecodeOptions o;
	o.enable_color_correction = true;
	DecodeReport r = Decode(img, o);
	CheckInvariants(r);
	CHECK(r.payload == p);
}

TEST_CASE("decode from file")
{
	auto dir = std::filesystem::temp_directory_path() / "cbcode_pipeline_files";
	std::filesystem::create_directories(dir);
	std::mt19937_64 rng(15);
	int exact = 0;
	for (int i = 0; i < 100; ++i) {
		Payload p = RandomPayload(rng);
		auto path = dir / ("code" + std::to_string(i) + ".png");
		WritePng(path, Encode(p, {65, (i % 3) * 4, White}));
		DecodeReport r = DecodeFile(path);
		exact += r.crc_exact && r.payload == p;
	}
	CHECK(exact == 100);

	auto truncated = dir / "truncated.png";
	auto bytes = EncodePng(Encode(1));
	std::ofstream(truncated, std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()), 40);
	try {
		DecodeFile(truncated);
		FAIL("expected IoError");
	} catch (const Error& e) {
		CHECK(e.code() == ErrorCode::IoError);
	}
	std::filesystem::remove_all(dir);
}

TEST_CASE("report json")
{
	DecodeReport ok = Decode(Encode(42));
	auto j = nlohmann::ordered_json::parse(ToJson(ok));
	const std::vector<std::string> keys = {"found",  "corners",      "rotation", "mirrored",  "symbols",
										   "payload", "crc_read",    "crc_computed", "crc_ok", "crc_exact",
										   "confidences", "attempts", "elapsed_ms"};
	std::vector<std::string> got;
	for (auto it = j.begin(); it != j.end(); ++it)
		got.push_back(it.key());
	CHECK(got == keys);
	CHECK(j["payload"] == 42);
	CHECK(j["symbols"] == "000000000330");
	CHECK(j["corners"].size() == 4);

	DecodeReport none = Decode(RasterImage(30, 30));
	auto n = nlohmann::ordered_json::parse(ToJson(none, "1.2.3"));
	CHECK(n["found"] == false);
	CHECK(n["payload"].is_null());
	CHECK(n["corners"].is_null());
	CHECK(n["version"] == "1.2.3");
	CHECK(ToJson(none).find("version") == std::string::npos);
}
