/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/harness.hpp"
#include "cbcode/classifier.hpp"
#include "cbcode/color.hpp"
#include "cbcode/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace cbcode {

namespace {

uint8_t Clamp8(double v) noexcept
{
	return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

Rgb ToRgb(const RgbF& c) noexcept
{
	return {Clamp8(c.r), Clamp8(c.g), Clamp8(c.b)};
}

int ScaledDim(int dim, double factor) noexcept
{
	return std::max(1, static_cast<int>(std::floor(factor * dim + 0.5)));
}

double Keys(double t) noexcept
{
	constexpr double a = -0.5;
	t = std::abs(t);
	if (t <= 1)
		return ((a + 2) * t - (a + 3)) * t * t + 1;
	if (t < 2)
		return ((a * t - 5 * a) * t + 8 * a) * t - 4 * a;
	return 0;
}

// Separable 1-D resampling weights for one output coordinate.
struct Taps
{
	int first = 0;
	std::array<double, 4> w{};
	int count = 0;
};

Taps MakeTaps(int i, int in, int out, ScaleMethod method)
{
	const double src = (i + 0.5) * in / out - 0.5;
	Taps t;
	switch (method) {
	case ScaleMethod::Nearest:
		t.first = std::clamp(static_cast<int>(std::floor((i + 0.5) * in / out)), 0, in - 1);
		t.w[0] = 1;
		t.count = 1;
		break;
	case ScaleMethod::Bilinear: {
		int x0 = static_cast<int>(std::floor(src));
		double a = src - x0;
		t.first = x0;
		t.w = {1 - a, a, 0, 0};
		t.count = 2;
		break;
	}
	case ScaleMethod::Bicubic: {
		int x0 = static_cast<int>(std::floor(src));
		double a = src - x0;
		t.first = x0 - 1;
		t.w = {Keys(1 + a), Keys(a), Keys(1 - a), Keys(2 - a)};
		t.count = 4;
		break;
	}
	}
	return t;
}

std::string FormatDouble(double v, const char* fmt)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, fmt, v);
	return buf;
}

struct Timer
{
	double total = 0;
	int n = 0;
	void add(double ms) { total += ms, ++n; }
	double mean() const { return n ? total / n : 0; }
};

TrialRecord RunTrial(Payload truth, const RasterImage& image, const DecodeOptions& options)
{
	DecodeReport r = Decode(image, options);
	return {truth, r.payload, r.status, r.crc_ok, r.elapsed_ms};
}

void RequireTrials(int trials)
{
	if (trials < 1)
		throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
}

} // namespace

std::string_view ToString(ScaleMethod method) noexcept
{
	switch (method) {
	case ScaleMethod::Nearest: return "nearest";
	case ScaleMethod::Bilinear: return "bilinear";
	case ScaleMethod::Bicubic: return "bicubic";
	}
	return "unknown";
}

std::optional<ScaleMethod> ParseScaleMethod(std::string_view name) noexcept
{
	for (ScaleMethod m : {ScaleMethod::Nearest, ScaleMethod::Bilinear, ScaleMethod::Bicubic})
		if (ToString(m) == name)
			return m;
	return std::nullopt;
}

RasterImage ScaleImage(const RasterImage& image, double factor, ScaleMethod method)
{
	if (!(factor > 0) || !std::isfinite(factor))
		throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
	const int w = image.width(), h = image.height();
	const int ow = ScaledDim(w, factor), oh = ScaledDim(h, factor);

	std::vector<Taps> tx(ow), ty(oh);
	for (int x = 0; x < ow; ++x)
		tx[x] = MakeTaps(x, w, ow, method);
	for (int y = 0; y < oh; ++y)
		ty[y] = MakeTaps(y, h, oh, method);

	// Horizontal pass into floats, then vertical.
	std::vector<RgbF> mid(static_cast<size_t>(ow) * h);
	for (int y = 0; y < h; ++y)
		for (int x = 0; x < ow; ++x) {
			RgbF acc;
			for (int k = 0; k < tx[x].count; ++k) {
				Rgb p = image.clamped(tx[x].first + k, y);
				double wk = tx[x].w[k];
				acc.r += wk * p.r;
				acc.g += wk * p.g;
				acc.b += wk * p.b;
			}
			mid[static_cast<size_t>(y) * ow + x] = acc;
		}

	RasterImage out(ow, oh);
	for (int y = 0; y < oh; ++y)
		for (int x = 0; x < ow; ++x) {
			RgbF acc;
			for (int k = 0; k < ty[y].count; ++k) {
				int sy = std::clamp(ty[y].first + k, 0, h - 1);
				const RgbF& p = mid[static_cast<size_t>(sy) * ow + x];
				double wk = ty[y].w[k];
				acc.r += wk * p.r;
				acc.g += wk * p.g;
				acc.b += wk * p.b;
			}
			out.at(x, y) = ToRgb(acc);
		}
	return out;
}

PixelRect OcclusionRect(int cell, double coverage, const RenderSpec& spec)
{
	if (cell < 1 || cell > CellCount)
		throw Error(ErrorCode::BadCell, "cell index must be in 1..16");
	if (!(coverage >= 0 && coverage <= 1))
		throw Error(ErrorCode::InvalidArgument, "coverage must be in [0, 1]");
	const int block = spec.block_px;
	const int side = static_cast<int>(std::lround(std::sqrt(coverage) * block));
	const int x0 = spec.border_px + ((cell - 1) % 4) * block + (block - side) / 2;
	const int y0 = spec.border_px + ((cell - 1) / 4) * block + (block - side) / 2;
	return {x0, y0, side, side};
}

RasterImage Occlude(const RasterImage& image, const PixelRect& rect, Rgb color)
{
	RasterImage out = image;
	const int x0 = std::max(0, rect.x), y0 = std::max(0, rect.y);
	const int x1 = std::min(image.width(), rect.x + rect.width);
	const int y1 = std::min(image.height(), rect.y + rect.height);
	for (int y = y0; y < y1; ++y)
		for (int x = x0; x < x1; ++x)
			out.at(x, y) = color;
	return out;
}

RasterImage Occlude(const RasterImage& image, int cell, double coverage, Rgb color, const RenderSpec& spec)
{
	return Occlude(image, OcclusionRect(cell, coverage, spec), color);
}

RasterImage WarpImage(const RasterImage& image, const Homography& output_to_source, int width, int height, Rgb fill)
{
	RasterImage out(width, height, fill);
	const double w = image.width(), h = image.height();
	for (int y = 0; y < height; ++y)
		for (int x = 0; x < width; ++x) {
			PointF s = output_to_source.map(x + 0.5, y + 0.5);
			if (s.x < 0 || s.y < 0 || s.x > w || s.y > h)
				continue;
			out.at(x, y) = ToRgb(SampleBilinear(image, s.x, s.y));
		}
	return out;
}

RasterImage RotateImage(const RasterImage& image, double degrees)
{
	const int w = image.width(), h = image.height();
	double turns = degrees / 90;
	if (turns == std::round(turns)) {
		int q = ((static_cast<int>(std::round(turns)) % 4) + 4) % 4;
		if (q == 0)
			return image;
		if (q == 2 || w == h) {
			RasterImage out(w, h);
			for (int y = 0; y < h; ++y)
				for (int x = 0; x < w; ++x) {
					// Counterclockwise on screen: a quarter turn sends (x, y) to (y, w-1-x).
					int sx = x, sy = y;
					switch (q) {
					case 1: sx = w - 1 - y, sy = x; break;
					case 2: sx = w - 1 - x, sy = h - 1 - y; break;
					case 3: sx = y, sy = h - 1 - x; break;
					}
					out.at(x, y) = image.at(sx, sy);
				}
			return out;
		}
	}

	const double t = degrees * std::numbers::pi / 180;
	const double c = std::cos(t), s = std::sin(t);
	const double cx = w / 2.0, cy = h / 2.0;
	// output -> source is the clockwise rotation about the center.
	Homography inv({c, -s, cx - c * cx + s * cy, s, c, cy - s * cx - c * cy, 0, 0, 1});
	return WarpImage(image, inv, w, h, White);
}

RasterImage AddNoise(const RasterImage& image, const NoiseSpec& spec)
{
	RasterImage out = image;
	std::mt19937_64 rng(spec.seed);
	switch (spec.kind) {
	case NoiseKind::Gaussian: {
		std::normal_distribution<double> n(0, spec.sigma);
		for (Rgb& p : out.pixels())
			p = {Clamp8(p.r + n(rng)), Clamp8(p.g + n(rng)), Clamp8(p.b + n(rng))};
		break;
	}
	case NoiseKind::Shot: {
		std::uniform_real_distribution<double> u(0, 1);
		for (Rgb& p : out.pixels())
			if (u(rng) < spec.density)
				p = u(rng) < 0.5 ? Black : White;
		break;
	}
	case NoiseKind::Periodic:
		for (int y = 0; y < out.height(); ++y)
			for (int x = 0; x < out.width(); ++x) {
				double d = spec.amplitude * std::sin(2 * std::numbers::pi * spec.frequency * (x + y));
				Rgb& p = out.at(x, y);
				p = {Clamp8(p.r + d), Clamp8(p.g + d), Clamp8(p.b + d)};
			}
		break;
	}
	return out;
}

RasterImage Apply(const RasterImage& image, const DegradationSpec& degradation, const RenderSpec& spec)
{
	struct Visitor
	{
		const RasterImage& image;
		const RenderSpec& spec;
		RasterImage operator()(const ScaleDegradation& d) const { return ScaleImage(image, d.factor, d.method); }
		RasterImage operator()(const OccludeDegradation& d) const
		{
			return d.rect ? Occlude(image, *d.rect, d.color) : Occlude(image, d.cell, d.coverage, d.color, spec);
		}
		RasterImage operator()(const RotateDegradation& d) const { return RotateImage(image, d.degrees); }
		RasterImage operator()(const NoiseSpec& d) const { return AddNoise(image, d); }
		RasterImage operator()(const EmbedDegradation& d) const { return Embed(d.host, image, d.x, d.y); }
	};
	return std::visit(Visitor{image, spec}, degradation);
}

uint64_t TrialSeed(uint64_t seed, uint64_t index) noexcept
{
	// splitmix64 over the combined key
	uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
	z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
	z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
	return z ^ (z >> 31);
}

Payload RandomPayload(std::mt19937_64& rng)
{
	return std::uniform_int_distribution<Payload>(0, PayloadLimit - 1)(rng);
}

Rgb RandomInterferenceColor(std::mt19937_64& rng)
{
	std::uniform_real_distribution<double> hueU(0, 360), satU(0.6, 1.0), valU(0.6, 1.0);
	double hue;
	for (;;) {
		hue = hueU(rng);
		double d = std::fmod(hue, 120.0);
		if (std::min(d, 120 - d) >= 25)
			break;
	}
	const double s = satU(rng), v = valU(rng);
	const double c = v * s;
	const double hp = hue / 60;
	const double x = c * (1 - std::abs(std::fmod(hp, 2.0) - 1));
	double r = 0, g = 0, b = 0;
	switch (static_cast<int>(hp)) {
	case 0: r = c, g = x; break;
	case 1: r = x, g = c; break;
	case 2: g = c, b = x; break;
	case 3: g = x, b = c; break;
	case 4: r = x, b = c; break;
	default: r = c, b = x; break;
	}
	const double m = v - c;
	return {Clamp8(255 * (r + m)), Clamp8(255 * (g + m)), Clamp8(255 * (b + m))};
}

std::vector<ScaleRow> RunScaleSweep(std::span<const double> factors, ScaleMethod method, const SweepOptions& options)
{
	RequireTrials(options.trials);
	std::vector<ScaleRow> rows;
	for (size_t f = 0; f < factors.size(); ++f) {
		ScaleRow row{factors[f], method, options.trials};
		Timer timer;
		for (int i = 0; i < options.trials; ++i) {
			std::mt19937_64 rng(TrialSeed(options.seed, f * 1'000'003ULL + i));
			Payload p = RandomPayload(rng);
			RasterImage img = ScaleImage(Encode(p, options.render), factors[f], method);
			TrialRecord rec = RunTrial(p, img, options.decode);
			row.successes += rec.success();
			timer.add(rec.elapsed_ms);
		}
		row.success_rate = double(row.successes) / row.trials;
		row.mean_ms = timer.mean();
		rows.push_back(row);
	}
	return rows;
}

std::vector<SamplingRow> RunSamplingSweep(std::span<const double> factors, std::span<const int> sample_counts,
										  const SweepOptions& options)
{
	RequireTrials(options.trials);
	for (int n : sample_counts)
		SamplePattern::ForCount(n);
	std::vector<SamplingRow> rows;
	for (size_t f = 0; f < factors.size(); ++f) {
		std::vector<Payload> payloads;
		std::vector<RasterImage> images;
		for (int i = 0; i < options.trials; ++i) {
			std::mt19937_64 rng(TrialSeed(options.seed, f * 1'000'003ULL + i));
			payloads.push_back(RandomPayload(rng));
			images.push_back(ScaleImage(Encode(payloads.back(), options.render), factors[f], ScaleMethod::Bilinear));
		}
		for (int n : sample_counts) {
			DecodeOptions decode = options.decode;
			decode.sample_points = n;
			SamplingRow row{factors[f], n, options.trials};
			Timer timer;
			for (int i = 0; i < options.trials; ++i) {
				TrialRecord rec = RunTrial(payloads[i], images[i], decode);
				row.successes += rec.success();
				timer.add(rec.elapsed_ms);
			}
			row.success_rate = double(row.successes) / row.trials;
			row.mean_ms = timer.mean();
			rows.push_back(row);
		}
	}
	return rows;
}

OcclusionSummary RunOcclusionMc(int rounds, double coverage_max, const OcclusionOptions& options)
{
	RequireTrials(rounds);
	if (!(coverage_max >= 0 && coverage_max <= 1))
		throw Error(ErrorCode::InvalidArgument, "coverage_max must be in [0, 1]");
	const auto& layout = CodeLayout::Default();
	OcclusionSummary s{rounds, coverage_max};
	Timer timer;
	for (int i = 0; i < rounds; ++i) {
		std::mt19937_64 rng(TrialSeed(options.sweep.seed, i));
		Payload p = RandomPayload(rng);
		int cell = layout.data_order[std::uniform_int_distribution<int>(0, DataCellCount - 1)(rng)];
		double coverage = options.exact_coverage || coverage_max == 0
							  ? coverage_max
							  : std::uniform_real_distribution<double>(0, coverage_max)(rng);
		Rgb color = options.color ? *options.color : RandomInterferenceColor(rng);
		RasterImage img = Occlude(Encode(p, options.sweep.render), cell, coverage, color, options.sweep.render);
		TrialRecord rec = RunTrial(p, img, options.sweep.decode);
		timer.add(rec.elapsed_ms);
		if (rec.success())
			++s.successes;
		else if (rec.status == DecodeStatus::NotFound)
			++s.not_found;
		else if (rec.status == DecodeStatus::Timeout)
			++s.timeout;
		else if (rec.status == DecodeStatus::CrcFailure)
			++s.crc_failure;
		else
			++s.wrong_payload;
	}
	s.success_rate = double(s.successes) / rounds;
	s.mean_ms = timer.mean();
	return s;
}

std::string ToCsv(std::span<const ScaleRow> rows, uint64_t seed)
{
	std::ostringstream os;
	os << "# seed=" << seed << "\n";
	os << "factor,method,trials,successes,success_rate,mean_ms\n";
	for (const auto& r : rows)
		os << FormatDouble(r.factor, "%g") << ',' << ToString(r.method) << ',' << r.trials << ',' << r.successes << ','
		   << FormatDouble(r.success_rate, "%.4f") << ',' << FormatDouble(r.mean_ms, "%.3f") << "\n";
	return os.str();
}

std::string ToCsv(std::span<const SamplingRow> rows, uint64_t seed)
{
	std::ostringstream os;
	os << "# seed=" << seed << "\n";
	os << "factor,samples,trials,successes,success_rate,mean_ms\n";
	for (const auto& r : rows)
		os << FormatDouble(r.factor, "%g") << ',' << r.samples << ',' << r.trials << ',' << r.successes << ','
		   << FormatDouble(r.success_rate, "%.4f") << ',' << FormatDouble(r.mean_ms, "%.3f") << "\n";
	return os.str();
}

std::string ToCsv(const OcclusionSummary& s, uint64_t seed)
{
	std::ostringstream os;
	os << "# seed=" << seed << "\n";
	os << "rounds,coverage_max,successes,success_rate,not_found,crc_failure,timeout,wrong_payload,mean_ms\n";
	os << s.rounds << ',' << FormatDouble(s.coverage_max, "%g") << ',' << s.successes << ','
	   << FormatDouble(s.success_rate, "%.4f") << ',' << s.not_found << ',' << s.crc_failure << ',' << s.timeout << ','
	   << s.wrong_payload << ',' << FormatDouble(s.mean_ms, "%.3f") << "\n";
	return os.str();
}

} // namespace cbcode
