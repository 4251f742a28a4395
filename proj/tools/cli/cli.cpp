/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include "cbcode/error.hpp"
#include "cbcode/harness.hpp"
#include "cbcode/png_io.hpp"
#include "cbcode/raster.hpp"
#include "cbcode/report_json.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace cbcode::cli {

namespace {

std::vector<std::string_view> Split(std::string_view text, char sep)
{
	std::vector<std::string_view> parts;
	size_t start = 0;
	while (true) {
		size_t end = text.find(sep, start);
		parts.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
		if (end == std::string_view::npos)
			return parts;
		start = end + 1;
	}
}

template <typename T>
std::optional<T> ParseNumber(std::string_view text) noexcept
{
	T value{};
	const char* end = text.data() + text.size();
	auto [ptr, ec] = std::from_chars(text.data(), end, value);
	if (ec != std::errc() || ptr != end || text.empty())
		return std::nullopt;
	return value;
}

/// "key=value,key=value"; a bare leading token is stored under "".
std::optional<std::map<std::string, std::string>> ParseKeyValues(std::string_view text)
{
	std::map<std::string, std::string> kv;
	bool first = true;
	for (std::string_view part : Split(text, ',')) {
		size_t eq = part.find('=');
		if (eq == std::string_view::npos) {
			if (!first || part.empty())
				return std::nullopt;
			kv[""] = std::string(part);
		} else {
			if (!kv.emplace(std::string(part.substr(0, eq)), std::string(part.substr(eq + 1))).second)
				return std::nullopt;
		}
		first = false;
	}
	return kv;
}

std::string Hex2(unsigned v)
{
	char buf[3];
	std::snprintf(buf, sizeof buf, "%02X", v & 0xFF);
	return buf;
}

class UsageError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

template <typename T>
T Require(std::optional<T> value, const std::string& what)
{
	if (!value)
		throw UsageError(what);
	return *value;
}

std::optional<int> TimeoutFromEnv()
{
	const char* env = std::getenv("CBCODE_TIMEOUT_MS");
	if (!env || !*env)
		return std::nullopt;
	auto v = ParseNumber<int>(env);
	if (!v || *v < 1)
		throw UsageError("CBCODE_TIMEOUT_MS must be a positive integer");
	return v;
}

struct EncodeArgs
{
	std::string data;
	int block_px = 65;
	int border_px = 0;
	std::string border_color = "FFFFFF";
	std::string out;
};

int DoEncode(const EncodeArgs& a, std::ostream& out)
{
	Payload p = Require(ParseData(a.data), "--data must be an integer below 6^12 or 12 symbols over 0,3,6,9,C,F");
	RenderSpec spec{a.block_px, a.border_px, Require(ParseHexColor(a.border_color), "--border-color must be RRGGBB")};
	const CodeMatrix m = BuildMatrix(PayloadToSymbols(p));
	RasterImage img = Render(m, spec);
	WritePng(a.out, img);
	out << "symbols=" << ToString(m.data) << " payload=" << p << " crc=" << Hex2(m.crc) << " size=" << img.width()
		<< "x" << img.height() << "\n";
	return ExitOk;
}

struct DecodeArgs
{
	std::string image;
	int samples = 5;
	int timeout_ms = DefaultTimeoutMs;
	bool strict = false;
	std::string region;
	bool json = false;
	bool color_correct = false;
	bool no_prefilter = false;
};

void PrintReport(const DecodeReport& r, std::ostream& out)
{
	out << "status: " << ToString(r.status) << "\n";
	if (r.payload)
		out << "payload: " << *r.payload << "\n";
	if (r.symbols)
		out << "symbols: " << ToString(*r.symbols) << "\n";
	if (r.crc_read && r.crc_computed)
		out << "crc: read=" << Hex2(*r.crc_read) << " computed=" << Hex2(*r.crc_computed)
			<< " exact=" << (r.crc_exact ? "yes" : "no") << "\n";
	if (r.rotation)
		out << "rotation: " << *r.rotation << (r.mirrored.value_or(false) ? " mirrored" : "") << "\n";
	out << "attempts: " << r.attempts << "\n";
	out << "elapsed_ms: " << std::fixed << std::setprecision(2) << r.elapsed_ms << "\n";
}

int DoDecode(const DecodeArgs& a, bool timeout_given, std::ostream& out)
{
	DecodeOptions o;
	o.sample_points = a.samples;
	o.timeout_ms = timeout_given ? a.timeout_ms : TimeoutFromEnv().value_or(DefaultTimeoutMs);
	if (a.strict)
		o.v_tolerance = 0;
	if (!a.region.empty())
		o.region_hint = Require(ParseRegion(a.region), "--region expects 8 comma-separated numbers");
	o.enable_color_correction = a.color_correct;
	o.enable_prefilter = !a.no_prefilter;

	DecodeReport r = DecodeFile(a.image, o);
	if (a.json)
		out << ToJson(r, CBCODE_VERSION_STRING) << "\n";
	else
		PrintReport(r, out);
	return ExitCodeFor(r.status);
}

struct EmbedArgs
{
	std::string code;
	std::string host;
	std::string canvas;
	std::string fill = "808080";
	std::string at;
	std::string out;
};

int DoEmbed(const EmbedArgs& a, std::ostream& out)
{
	RasterImage code = ReadPng(a.code);
	RasterImage host{1, 1};
	if (!a.host.empty()) {
		host = ReadPng(a.host);
	} else {
		auto dims = Split(a.canvas, 'x');
		if (dims.size() != 2)
			throw UsageError("--canvas expects WxH");
		int w = Require(ParseNumber<int>(dims[0]), "bad canvas width");
		int h = Require(ParseNumber<int>(dims[1]), "bad canvas height");
		if (w < 1 || h < 1)
			throw UsageError("--canvas dimensions must be positive");
		host = RasterImage(w, h, Require(ParseHexColor(a.fill), "--fill must be RRGGBB"));
	}
	auto xy = Split(a.at, ',');
	if (xy.size() != 2)
		throw UsageError("--at expects X,Y");
	int x = Require(ParseNumber<int>(xy[0]), "bad x offset");
	int y = Require(ParseNumber<int>(xy[1]), "bad y offset");
	RasterImage img = Embed(host, code, x, y);
	WritePng(a.out, img);
	out << "size=" << img.width() << "x" << img.height() << " region=" << x << "," << y << "," << x + code.width()
		<< "," << y << "," << x + code.width() << "," << y + code.height() << "," << x << "," << y + code.height()
		<< "\n";
	return ExitOk;
}

struct DegradeArgs
{
	std::string image;
	double scale = 1;
	std::string method = "bilinear";
	std::string occlude;
	double rotate = 0;
	std::string noise;
	int block_px = 0;
	int border_px = 0;
	std::string out;
};

DegradationSpec ParseOcclusion(const std::string& text)
{
	auto kv = Require(ParseKeyValues(text), "--occlude expects key=value pairs");
	OccludeDegradation d;
	if (auto it = kv.find("color"); it != kv.end())
		d.color = Require(ParseHexColor(it->second), "occlude color must be RRGGBB");
	if (kv.count("cell")) {
		d.cell = Require(ParseNumber<int>(kv["cell"]), "bad occlude cell");
		d.coverage = kv.count("cov") ? Require(ParseNumber<double>(kv["cov"]), "bad occlude coverage") : 1.0;
	} else if (kv.count("x") && kv.count("y") && kv.count("w") && kv.count("h")) {
		d.rect = PixelRect{Require(ParseNumber<int>(kv["x"]), "bad x"), Require(ParseNumber<int>(kv["y"]), "bad y"),
						   Require(ParseNumber<int>(kv["w"]), "bad w"), Require(ParseNumber<int>(kv["h"]), "bad h")};
	} else {
		throw UsageError("--occlude needs cell=K[,cov=C] or x=,y=,w=,h=");
	}
	for (const auto& [k, v] : kv)
		if (k != "cell" && k != "cov" && k != "color" && k != "x" && k != "y" && k != "w" && k != "h")
			throw UsageError("unknown occlude key '" + k + "'");
	return d;
}

DegradationSpec ParseNoise(const std::string& text)
{
	auto kv = Require(ParseKeyValues(text), "--noise expects KIND[,key=value...]");
	NoiseSpec n;
	const std::string kind = kv[""];
	if (kind == "gaussian")
		n.kind = NoiseKind::Gaussian;
	else if (kind == "shot")
		n.kind = NoiseKind::Shot;
	else if (kind == "periodic")
		n.kind = NoiseKind::Periodic;
	else
		throw UsageError("noise kind must be gaussian, shot or periodic");
	for (const auto& [k, v] : kv) {
		if (k.empty())
			continue;
		if (k == "seed") {
			n.seed = Require(ParseNumber<uint64_t>(v), "bad noise seed");
			continue;
		}
		double x = Require(ParseNumber<double>(v), "bad noise parameter '" + k + "'");
		if (k == "sigma")
			n.sigma = x;
		else if (k == "density")
			n.density = x;
		else if (k == "amplitude")
			n.amplitude = x;
		else if (k == "frequency")
			n.frequency = x;
		else
			throw UsageError("unknown noise key '" + k + "'");
	}
	if (n.sigma < 0 || n.density < 0 || n.density > 1)
		throw UsageError("noise sigma must be >= 0 and density in [0, 1]");
	return n;
}

int DoDegrade(const DegradeArgs& a, int chosen, bool scale, bool occlude, bool rotate, std::ostream& out)
{
	if (chosen != 1)
		throw UsageError("exactly one of --scale, --occlude, --rotate, --noise is required");
	RasterImage img = ReadPng(a.image);
	DegradationSpec d;
	if (scale) {
		if (a.scale <= 0)
			throw UsageError("--scale must be > 0");
		d = ScaleDegradation{a.scale, Require(ParseScaleMethod(a.method), "--method must be nearest, bilinear or bicubic")};
	} else if (occlude) {
		d = ParseOcclusion(a.occlude);
	} else if (rotate) {
		d = RotateDegradation{a.rotate};
	} else {
		d = ParseNoise(a.noise);
	}
	RenderSpec spec;
	spec.border_px = a.border_px;
	spec.block_px = a.block_px > 0 ? a.block_px : std::max(1, (img.width() - 2 * a.border_px) / 4);
	RasterImage result = Apply(img, d, spec);
	WritePng(a.out, result);
	out << "size=" << result.width() << "x" << result.height() << "\n";
	return ExitOk;
}

struct BenchArgs
{
	std::string runner;
	int trials = 100;
	uint64_t seed = 1;
	std::string csv;
	std::vector<double> factors;
	std::string method = "bilinear";
	std::vector<int> samples = {5, 10, 20};
	double coverage_max = 0.5;
	bool exact_coverage = false;
	int timeout_ms = DefaultTimeoutMs;
};

std::string Fixed(double v, int digits)
{
	std::ostringstream s;
	s << std::fixed << std::setprecision(digits) << v;
	return s.str();
}

int DoBench(BenchArgs a, bool timeout_given, std::ostream& out)
{
	if (a.trials < 1)
		throw UsageError("--trials must be >= 1");
	SweepOptions o;
	o.seed = a.seed;
	o.trials = a.trials;
	o.decode.timeout_ms = timeout_given ? a.timeout_ms : TimeoutFromEnv().value_or(DefaultTimeoutMs);

	std::string csv;
	std::ostringstream table;
	if (a.runner == "scale-sweep") {
		if (a.factors.empty())
			a.factors = {0.125, 0.25, 0.5};
		auto method = Require(ParseScaleMethod(a.method), "--method must be nearest, bilinear or bicubic");
		auto rows = RunScaleSweep(a.factors, method, o);
		csv = ToCsv(rows, a.seed);
		table << std::left << std::setw(10) << "factor" << std::setw(10) << "method" << std::setw(10) << "success"
			  << "mean_ms\n";
		for (const auto& r : rows)
			table << std::setw(10) << r.factor << std::setw(10) << ToString(r.method) << std::setw(10)
				  << Fixed(r.success_rate, 3) << Fixed(r.mean_ms, 2) << "\n";
	} else if (a.runner == "sampling-sweep") {
		if (a.factors.empty())
			a.factors = {0.5, 0.25, 0.125};
		auto rows = RunSamplingSweep(a.factors, a.samples, o);
		csv = ToCsv(rows, a.seed);
		table << std::left << std::setw(10) << "factor" << std::setw(10) << "samples" << std::setw(10) << "success"
			  << "mean_ms\n";
		for (const auto& r : rows)
			table << std::setw(10) << r.factor << std::setw(10) << r.samples << std::setw(10)
				  << Fixed(r.success_rate, 3) << Fixed(r.mean_ms, 2) << "\n";
	} else {
		OcclusionOptions occ;
		occ.sweep = o;
		occ.exact_coverage = a.exact_coverage;
		if (a.coverage_max < 0 || a.coverage_max > 1)
			throw UsageError("--coverage-max must be in [0, 1]");
		OcclusionSummary s = RunOcclusionMc(a.trials, a.coverage_max, occ);
		csv = ToCsv(s, a.seed);
		table << "rounds " << s.rounds << ", coverage_max " << s.coverage_max << ": success " << s.successes << " ("
			  << Fixed(s.success_rate, 3) << "), not_found " << s.not_found << ", crc_failure " << s.crc_failure
			  << ", timeout " << s.timeout << ", wrong_payload " << s.wrong_payload << ", mean_ms "
			  << Fixed(s.mean_ms, 2) << "\n";
	}

	if (a.csv.empty()) {
		out << csv;
		return ExitOk;
	}
	std::ofstream file(a.csv, std::ios::binary);
	file << csv;
	file.close();
	if (!file)
		throw Error(ErrorCode::IoError, "cannot write " + a.csv);
	out << table.str();
	return ExitOk;
}

} // namespace

ExitCode ExitCodeFor(DecodeStatus status) noexcept
{
	switch (status) {
	case DecodeStatus::Ok:
		return ExitOk;
	case DecodeStatus::NotFound:
		return ExitNotFound;
	case DecodeStatus::CrcFailure:
		return ExitCrcFailure;
	case DecodeStatus::Timeout:
		return ExitTimeout;
	}
	return ExitUsage;
}

std::optional<Payload> ParseData(std::string_view text) noexcept
{
	if (text.size() == DataCellCount)
		if (auto seq = ParseSymbols(text))
			return SymbolsToPayload(*seq);
	auto v = ParseNumber<uint64_t>(text);
	if (!v || *v >= PayloadLimit)
		return std::nullopt;
	return v;
}

std::optional<Quad> ParseRegion(std::string_view text) noexcept
{
	auto parts = Split(text, ',');
	if (parts.size() != 8)
		return std::nullopt;
	Quad q;
	for (int i = 0; i < 4; ++i) {
		auto x = ParseNumber<double>(parts[2 * i]);
		auto y = ParseNumber<double>(parts[2 * i + 1]);
		if (!x || !y)
			return std::nullopt;
		q[i] = {*x, *y};
	}
	return q;
}

std::optional<Rgb> ParseHexColor(std::string_view text) noexcept
{
	if (!text.empty() && text[0] == '#')
		text.remove_prefix(1);
	if (text.size() != 6)
		return std::nullopt;
	uint32_t v = 0;
	const char* end = text.data() + text.size();
	auto [ptr, ec] = std::from_chars(text.data(), end, v, 16);
	if (ec != std::errc() || ptr != end)
		return std::nullopt;
	return Rgb{static_cast<uint8_t>(v >> 16), static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v)};
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Color block code encoder, decoder and experiment harness", "cbcode"};
	app.require_subcommand(1, 1);
	app.set_version_flag("--version", CBCODE_VERSION_STRING);

	EncodeArgs enc;
	auto* encode = app.add_subcommand("encode", "Render a payload as a PNG");
	encode->add_option("--data", enc.data, "Integer below 6^12 or 12 symbols over 0,3,6,9,C,F")->required();
	encode->add_option("--block-px", enc.block_px, "Block side in pixels")->check(CLI::PositiveNumber);
	encode->add_option("--border-px", enc.border_px, "Solid frame width")->check(CLI::NonNegativeNumber);
	encode->add_option("--border-color", enc.border_color, "Frame color RRGGBB");
	encode->add_option("--out", enc.out, "Output PNG")->required();

	DecodeArgs dec;
	auto* decode = app.add_subcommand("decode", "Decode a PNG");
	decode->add_option("image", dec.image, "Input PNG")->required();
	decode->add_option("--samples", dec.samples, "Sample points per cell")->check(CLI::IsMember({5, 10, 20}));
	auto* dec_timeout =
		decode->add_option("--timeout-ms", dec.timeout_ms, "Decode budget (default $CBCODE_TIMEOUT_MS or 6000)")
			->check(CLI::PositiveNumber);
	decode->add_flag("--strict-crc", dec.strict, "Require exact V equality");
	decode->add_option("--region", dec.region, "Code corners x1,y1,...,x4,y4 (red, V, blue, green)");
	decode->add_flag("--json", dec.json, "Print the report as JSON");
	decode->add_flag("--color-correct", dec.color_correct, "Start with chromatic adaptation enabled");
	decode->add_flag("--no-prefilter", dec.no_prefilter, "Start with the Gaussian prefilter disabled");

	EmbedArgs emb;
	auto* embed = app.add_subcommand("embed", "Paste a code image into a host image");
	embed->add_option("code", emb.code, "Code PNG")->required();
	auto* host_opt = embed->add_option("--host", emb.host, "Host PNG");
	auto* canvas_opt = embed->add_option("--canvas", emb.canvas, "Flat host WxH");
	host_opt->excludes(canvas_opt);
	embed->add_option("--fill", emb.fill, "Canvas color RRGGBB");
	embed->add_option("--at", emb.at, "Offset X,Y")->required();
	embed->add_option("--out", emb.out, "Output PNG")->required();

	DegradeArgs deg;
	auto* degrade = app.add_subcommand("degrade", "Apply one degradation to a PNG");
	degrade->add_option("image", deg.image, "Input PNG")->required();
	auto* scale_opt = degrade->add_option("--scale", deg.scale, "Scale factor");
	degrade->add_option("--method", deg.method, "nearest, bilinear or bicubic");
	auto* occ_opt = degrade->add_option("--occlude", deg.occlude, "cell=K,cov=C,color=RRGGBB or x=,y=,w=,h=");
	auto* rot_opt = degrade->add_option("--rotate", deg.rotate, "Degrees counterclockwise");
	auto* noise_opt = degrade->add_option("--noise", deg.noise, "gaussian|shot|periodic[,key=value...]");
	degrade->add_option("--block-px", deg.block_px, "Block side for cell occlusion (default width / 4)");
	degrade->add_option("--border-px", deg.border_px, "Frame width for cell occlusion");
	degrade->add_option("--out", deg.out, "Output PNG")->required();

	BenchArgs bench;
	auto* bench_cmd = app.add_subcommand("bench", "Run an experiment and write CSV");
	bench_cmd->add_option("runner", bench.runner, "scale-sweep, sampling-sweep or occlusion-mc")
		->required()
		->check(CLI::IsMember({"scale-sweep", "sampling-sweep", "occlusion-mc"}));
	bench_cmd->add_option("--trials", bench.trials, "Trials per row, or rounds for occlusion-mc");
	bench_cmd->add_option("--seed", bench.seed, "Experiment seed");
	bench_cmd->add_option("--csv", bench.csv, "CSV output path (default: stdout)");
	bench_cmd->add_option("--factors", bench.factors, "Scale factors")->delimiter(',');
	bench_cmd->add_option("--method", bench.method, "Scale method for scale-sweep");
	bench_cmd->add_option("--samples", bench.samples, "Sample counts for sampling-sweep")
		->delimiter(',')
		->check(CLI::IsMember({5, 10, 20}));
	bench_cmd->add_option("--coverage-max", bench.coverage_max, "Upper coverage bound for occlusion-mc");
	bench_cmd->add_flag("--exact-coverage", bench.exact_coverage, "Every round uses coverage-max itself");
	auto* bench_timeout = bench_cmd->add_option("--timeout-ms", bench.timeout_ms, "Per-decode budget")
							  ->check(CLI::PositiveNumber);

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (const CLI::ParseError& e) {
		return app.exit(e, out, err) == 0 ? ExitOk : ExitUsage;
	}

	try {
		if (encode->parsed())
			return DoEncode(enc, out);
		if (decode->parsed())
			return DoDecode(dec, dec_timeout->count() > 0, out);
		if (embed->parsed()) {
			if (emb.host.empty() == emb.canvas.empty())
				throw UsageError("exactly one of --host or --canvas is required");
			return DoEmbed(emb, out);
		}
		if (degrade->parsed()) {
			bool s = scale_opt->count() > 0, o = occ_opt->count() > 0, r = rot_opt->count() > 0;
			int chosen = s + o + r + (noise_opt->count() > 0);
			return DoDegrade(deg, chosen, s, o, r, out);
		}
		return DoBench(bench, bench_timeout->count() > 0, out);
	} catch (const UsageError& e) {
		err << "error: " << e.what() << "\n";
		return ExitUsage;
	} catch (const Error& e) {
		err << "error: " << ToString(e.code()) << ": " << e.what() << "\n";
		return e.code() == ErrorCode::IoError ? ExitIo : ExitUsage;
	} catch (const std::exception& e) {
		err << "error: " << e.what() << "\n";
		return ExitUsage;
	}
}

int RunMain(int argc, char** argv)
{
	std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
	return Run(args, std::cout, std::cerr);
}

} // namespace cbcode::cli
