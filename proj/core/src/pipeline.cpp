/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/pipeline.hpp"
#include "cbcode/classifier.hpp"
#include "cbcode/color.hpp"
#include "cbcode/crc8.hpp"
#include "cbcode/error.hpp"
#include "cbcode/locator.hpp"
#include "cbcode/png_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace cbcode {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double PrefilterSigma = 0.8;
constexpr double PrefilterMinSide = 32; // px; smaller codes are not blurred
constexpr double RingWhiteMinLuma = 100;

struct AttemptConfig
{
	bool prefilter;
	int sample_points;
	bool color_correction;

	friend bool operator==(const AttemptConfig&, const AttemptConfig&) = default;
};

std::vector<AttemptConfig> Ladder(const DecodeOptions& o)
{
	const AttemptConfig base{o.enable_prefilter, o.sample_points, o.enable_color_correction};
	std::vector<AttemptConfig> steps{base};
	auto add = [&](AttemptConfig c) {
		if (std::find(steps.begin(), steps.end(), c) == steps.end())
			steps.push_back(c);
	};
	add({!base.prefilter, base.sample_points, base.color_correction});
	add({base.prefilter, SamplePattern::Densest().count(), base.color_correction});
	add({base.prefilter, base.sample_points, true});
	return steps;
}

XyzColor MeanXyz(const std::vector<Rgb>& pixels)
{
	LinearRgb sum;
	for (Rgb p : pixels) {
		LinearRgb l = Linearize(p);
		sum.r += l.r;
		sum.g += l.g;
		sum.b += l.b;
	}
	const double n = static_cast<double>(pixels.size());
	return RgbToXyz({sum.r / n, sum.g / n, sum.b / n});
}

// Brightest 2% of the image by luma.
XyzColor GlobalWhite(const RasterImage& image)
{
	std::vector<Rgb> px(image.pixels().begin(), image.pixels().end());
	const size_t keep = std::max<size_t>(1, px.size() / 50);
	std::nth_element(px.begin(), px.begin() + (keep - 1), px.end(),
					 [](Rgb a, Rgb b) { return Luma(a) > Luma(b); });
	px.resize(keep);
	return MeanXyz(px);
}

// White from a ring just outside the code; falls back to the chromaticity of
// the brightest data cell when the surround is dark.
XyzColor RegionWhite(const RasterImage& image, const CodeRegion& region)
{
	std::vector<Rgb> ring;
	const Homography& h = region.cell_to_image;
	for (int i = 0; i < 64; ++i) {
		double t = 4.0 * (i + 0.5) / 64;
		for (PointF c : {PointF{t, -0.35}, PointF{t, 4.35}, PointF{-0.35, t}, PointF{4.35, t}}) {
			PointF p = h.map(c.x, c.y);
			int x = static_cast<int>(std::floor(p.x)), y = static_cast<int>(std::floor(p.y));
			if (image.contains(x, y))
				ring.push_back(image.at(x, y));
		}
	}
	if (!ring.empty()) {
		std::sort(ring.begin(), ring.end(), [](Rgb a, Rgb b) { return Luma(a) > Luma(b); });
		ring.resize((ring.size() + 1) / 2);
		double luma = 0;
		for (Rgb p : ring)
			luma += Luma(p);
		if (luma / ring.size() >= RingWhiteMinLuma)
			return MeanXyz(ring);
	}

	const auto& layout = CodeLayout::Default();
	Rgb best = Black;
	for (int cell : layout.data_order) {
		PointF p = h.map((cell - 1) % 4 + 0.5, (cell - 1) / 4 + 0.5);
		Rgb c = image.clamped(static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y)));
		if (Luma(c) > Luma(best))
			best = c;
	}
	return NormalizeY(RgbToXyz(Linearize(best)));
}

double ShorterSide(const Quad& q)
{
	double side = Distance(q[3], q[0]);
	for (int i = 0; i < 3; ++i)
		side = std::min(side, Distance(q[i], q[i + 1]));
	return side;
}

struct Attempt
{
	ClassifyResult classify;
	uint8_t computed = 0;
	int gap = 0;
	bool ok = false;

	double minConfidence() const
	{
		return *std::min_element(classify.confidences.begin(), classify.confidences.end());
	}
};

bool Better(const Attempt& a, const Attempt& b)
{
	if (a.minConfidence() != b.minConfidence())
		return a.minConfidence() > b.minConfidence();
	return a.gap < b.gap;
}

void FillRegion(DecodeReport& report, const CodeRegion& region)
{
	report.found = true;
	report.corners = region.corners;
	report.rotation = region.rotation_deg;
	report.mirrored = region.mirrored;
}

void FillAttempt(DecodeReport& report, const Attempt& a)
{
	report.symbols = a.classify.symbols;
	report.crc_read = a.classify.v_byte;
	report.crc_computed = a.computed;
	report.confidences.assign(a.classify.confidences.begin(), a.classify.confidences.end());
	report.crc_ok = a.ok;
	report.crc_exact = a.ok && a.gap == 0;
	report.payload = a.ok ? std::optional<Payload>(SymbolsToPayload(a.classify.symbols)) : std::nullopt;
}

} // namespace

void DecodeOptions::validate() const
{
	if (timeout_ms <= 0)
		throw Error(ErrorCode::InvalidArgument, "timeout_ms must be positive");
	if (v_tolerance < 0 || v_tolerance > 0x7F)
		throw Error(ErrorCode::InvalidArgument, "v_tolerance must be in [0, 0x7F]");
	if (!(confidence_threshold > 0 && confidence_threshold <= 1))
		throw Error(ErrorCode::InvalidArgument, "confidence threshold must be in (0, 1]");
	SamplePattern::ForCount(sample_points);
}

std::string_view ToString(DecodeStatus status) noexcept
{
	switch (status) {
	case DecodeStatus::Ok: return "ok";
	case DecodeStatus::NotFound: return "not_found";
	case DecodeStatus::CrcFailure: return "crc_failure";
	case DecodeStatus::Timeout: return "timeout";
	}
	return "unknown";
}

DecodeReport Decode(const RasterImage& image, const DecodeOptions& options)
{
	options.validate();
	const auto start = Clock::now();
	auto elapsed = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); };

	DecodeReport report;
	auto finish = [&](DecodeStatus status) {
		report.status = status;
		report.elapsed_ms = elapsed();
		return report;
	};

	auto locate = [&](const RasterImage& img) -> std::optional<CodeRegion> {
		try {
			return options.region_hint ? RegionFromHint(img, *options.region_hint, options.locator)
									   : FindCodeRegion(img, options.locator);
		} catch (const Error& e) {
			if (e.code() == ErrorCode::NotFound || e.code() == ErrorCode::Ambiguous)
				return std::nullopt;
			throw;
		}
	};

	std::optional<CodeRegion> rawRegion = locate(image);
	std::optional<Attempt> best;
	std::optional<CodeRegion> bestRegion;
	bool timedOut = false;

	for (const AttemptConfig& cfg : Ladder(options)) {
		if (report.attempts > 0 && elapsed() >= options.timeout_ms) {
			timedOut = true;
			break;
		}
		++report.attempts;

		RasterImage work = image;
		std::optional<CodeRegion> region = rawRegion;
		if (cfg.color_correction) {
			try {
				work = CorrectImage(image, rawRegion ? RegionWhite(image, *rawRegion) : GlobalWhite(image));
			} catch (const Error& e) {
				if (e.code() != ErrorCode::DegenerateWhite)
					throw;
			}
			if (!region)
				region = locate(work);
		}
		if (!region)
			continue;
		if (cfg.prefilter && ShorterSide(region->corners) > PrefilterMinSide)
			work = GaussianPrefilter(work, PrefilterSigma);

		ClassifyOptions co;
		co.sample_points = cfg.sample_points;
		co.confidence.threshold = options.confidence_threshold;

		Attempt a;
		a.classify = ClassifyCells(work, *region, co);
		a.computed = Crc8(Pack(a.classify.symbols));
		a.gap = std::abs(int(a.classify.v_byte) - int(a.computed));
		a.ok = a.classify.status == ClassifyStatus::Ok && a.gap <= options.v_tolerance;

		if (a.ok) {
			FillRegion(report, *region);
			FillAttempt(report, a);
			return finish(DecodeStatus::Ok);
		}
		if (!best || Better(a, *best)) {
			best = a;
			bestRegion = region;
		}
	}

	if (best) {
		FillRegion(report, *bestRegion);
		FillAttempt(report, *best);
		return finish(timedOut ? DecodeStatus::Timeout : DecodeStatus::CrcFailure);
	}
	return finish(timedOut ? DecodeStatus::Timeout : DecodeStatus::NotFound);
}

DecodeReport DecodeFile(const std::filesystem::path& path, const DecodeOptions& options)
{
	return Decode(ReadPng(path), options);
}

RasterImage Encode(Payload payload, const RenderSpec& spec)
{
	return Render(BuildMatrix(PayloadToSymbols(payload)), spec);
}

} // namespace cbcode
