/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/classifier.hpp"
#include "cbcode/color.hpp"
#include "cbcode/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cbcode {

namespace {

double Dist2(const RgbF& a, const RgbF& b) noexcept
{
	double dr = a.r - b.r, dg = a.g - b.g, db = a.b - b.b;
	return dr * dr + dg * dg + db * db;
}

RgbF ToF(Rgb c) noexcept
{
	return {double(c.r), double(c.g), double(c.b)};
}

Rgb Round(const RgbF& c) noexcept
{
	auto q = [](double v) { return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L)); };
	return {q(c.r), q(c.g), q(c.b)};
}

int Spread(Rgb c) noexcept
{
	return std::max({c.r, c.g, c.b}) - std::min({c.r, c.g, c.b});
}

} // namespace

const SamplePattern& SamplePattern::ForCount(int n)
{
	static const SamplePattern five({{0, 0}, {-0.25, -0.25}, {0.25, -0.25}, {-0.25, 0.25}, {0.25, 0.25}});
	static const SamplePattern ten({{0, 0}, {-0.25, -0.25}, {0.25, -0.25}, {-0.25, 0.25}, {0.25, 0.25},
									{0, 0}, {0, -0.25}, {0.25, 0}, {0, 0.25}, {-0.25, 0}});
	static const SamplePattern twenty = [] {
		std::vector<PointF> pts;
		for (int row = 0; row < 5; ++row)
			for (int col = 0; col < 4; ++col)
				pts.push_back({-0.25 + 0.5 * (col + 0.5) / 4, -0.25 + 0.5 * (row + 0.5) / 5});
		return SamplePattern(std::move(pts));
	}();
	switch (n) {
	case 5: return five;
	case 10: return ten;
	case 20: return twenty;
	default: throw Error(ErrorCode::InvalidArgument, "sample count must be 5, 10 or 20");
	}
}

double SamplePattern::maxOffset() const noexcept
{
	double m = 0;
	for (auto o : _offsets)
		m = std::max({m, std::abs(o.x), std::abs(o.y)});
	return m;
}

CellSample SampleCell(const RasterImage& image, const CodeRegion& region, int cell_index, const SamplePattern& pattern,
					  const SampleOptions& options)
{
	if (cell_index < 1 || cell_index > CellCount)
		throw Error(ErrorCode::BadCell, "cell index must be in 1..16");
	const double u = (cell_index - 1) % 4 + 0.5;
	const double v = (cell_index - 1) / 4 + 0.5;

	const double pitch = region.pitch_px;
	const double requested = pattern.maxOffset() * options.window * pitch;
	const double allowed = std::max(0.0, pitch / 2 - 0.5);
	const double shrink = requested > 0 ? std::min(1.0, allowed / requested) : 1.0;

	CellSample out;
	out.cell_index = cell_index;
	out.points.reserve(pattern.count());
	for (PointF o : pattern.offsets()) {
		PointF off = (options.window * shrink) * o;
		PointF pos = region.cell_to_image.map(u + off.x, v + off.y);
		if (pos.x < 0 || pos.y < 0 || pos.x > image.width() || pos.y > image.height())
			out.clamped = true;
		Rgb color = Round(SampleBilinear(image, pos.x, pos.y));
		if (options.snap)
			color = SnapToStandard(color);
		out.points.push_back({options.window * o, pos, color});
	}
	return out;
}

int NearestCentroid(const RgbF& x, std::span<const RgbF> centroids) noexcept
{
	int best = 0;
	double bestD = std::numeric_limits<double>::infinity();
	for (size_t i = 0; i < centroids.size(); ++i) {
		double d = Dist2(x, centroids[i]);
		if (d < bestD) {
			bestD = d;
			best = static_cast<int>(i);
		}
	}
	return best;
}

double ClusterEnergy(std::span<const RgbF> samples, std::span<const RgbF> centroids, std::span<const int> assignments)
{
	double e = 0;
	for (size_t i = 0; i < samples.size(); ++i)
		e += Dist2(samples[i], centroids[assignments[i]]);
	return e;
}

ClusterModel KMeansPreset(std::span<const RgbF> samples, std::span<const RgbF> presets, int max_iter, double tol)
{
	ClusterModel model;
	model.k = static_cast<int>(presets.size());
	model.centroids.assign(presets.begin(), presets.end());
	model.assignments.assign(samples.size(), 0);

	for (int it = 0; it < max_iter; ++it) {
		for (size_t i = 0; i < samples.size(); ++i)
			model.assignments[i] = NearestCentroid(samples[i], model.centroids);

		std::vector<RgbF> sum(model.k);
		std::vector<int> count(model.k, 0);
		for (size_t i = 0; i < samples.size(); ++i) {
			auto& s = sum[model.assignments[i]];
			s.r += samples[i].r;
			s.g += samples[i].g;
			s.b += samples[i].b;
			++count[model.assignments[i]];
		}
		double shift = 0;
		for (int c = 0; c < model.k; ++c) {
			RgbF next = count[c] ? RgbF{sum[c].r / count[c], sum[c].g / count[c], sum[c].b / count[c]} : presets[c];
			shift = std::max(shift, std::sqrt(Dist2(next, model.centroids[c])));
			model.centroids[c] = next;
		}
		model.energy.push_back(ClusterEnergy(samples, model.centroids, model.assignments));
		model.iterations = it + 1;
		if (shift < tol)
			break;
	}
	return model;
}

std::vector<RgbF> GrayPresets()
{
	std::vector<RgbF> presets;
	for (int i = 0; i < DataSymbol::AlphabetSize; ++i) {
		double g = DataSymbol::FromIndex(i).gray();
		presets.push_back({g, g, g});
	}
	return presets;
}

void ConfidenceParams::validate() const
{
	if (!(delta > 0) || !(h_w > 0) || !(n >= 1) || !(threshold > 0 && threshold <= 1) || !(reference_size > 0))
		throw Error(ErrorCode::InvalidArgument, "confidence parameters out of range");
}

double Confidence(const DomainFeatures& t, const DomainFeatures& d, const ConfidenceParams& p)
{
	p.validate();
	const double ref = p.reference_size;
	const double sum = std::abs(t.area - p.delta * d.area) / (ref * ref)
					   + std::abs(t.area_ratio - p.delta * d.area_ratio)
					   + std::abs(t.lwr - p.delta * d.lwr)
					   + std::abs(t.length - p.delta * d.length) / ref
					   + std::abs(t.width - p.delta * d.width) / ref
					   + Distance(t.center, d.center) / (2 * p.h_w * p.n);
	return std::exp(-sum);
}

namespace {

struct CellVerdict
{
	int symbol = 0;
	double confidence = 0;
};

CellVerdict EvaluateCell(const CellSample& s, const CodeRegion& region, const ClusterModel& model,
						 const ClassifyOptions& options)
{
	const int k = model.k;
	std::vector<int> count(k, 0);
	std::vector<double> dist(k, 0.0);
	std::vector<int> cluster(s.points.size(), -1);
	for (size_t i = 0; i < s.points.size(); ++i) {
		Rgb c = s.points[i].color;
		if (Spread(c) >= options.gray_spread_max)
			continue;
		RgbF x = ToF(c);
		int id = NearestCentroid(x, model.centroids);
		cluster[i] = id;
		++count[id];
		dist[id] += std::sqrt(Dist2(x, model.centroids[id]));
	}

	int best = -1;
	for (int c = 0; c < k; ++c) {
		if (count[c] == 0)
			continue;
		if (best < 0 || count[c] > count[best]
			|| (count[c] == count[best] && dist[c] / count[c] < dist[best] / count[best]))
			best = c;
	}

	const double pitch = region.pitch_px;
	const int cell = s.cell_index;
	const PointF center = region.cell_to_image.map((cell - 1) % 4 + 0.5, (cell - 1) / 4 + 0.5);
	const DomainFeatures target{pitch * pitch, 1.0, pitch, pitch, 1.0, center};

	ConfidenceParams params = options.confidence;
	params.h_w = pitch;
	params.reference_size = pitch;

	CellVerdict verdict;
	if (best < 0) {
		// Nothing matched a gray cluster: fall back to the nearest centroid of
		// the raw mean so the cell still carries a symbol.
		RgbF mean{};
		for (const auto& p : s.points) {
			mean.r += p.color.r;
			mean.g += p.color.g;
			mean.b += p.color.b;
		}
		double n = static_cast<double>(s.points.size());
		mean = {mean.r / n, mean.g / n, mean.b / n};
		verdict.symbol = NearestCentroid(mean, model.centroids);
		DomainFeatures empty{0, 0, 0, 0, 0, center};
		verdict.confidence = Confidence(target, empty, params);
		return verdict;
	}

	double minX = 1e300, maxX = -1e300, minY = 1e300, maxY = -1e300;
	double allMinX = 1e300, allMaxX = -1e300, allMinY = 1e300, allMaxY = -1e300;
	PointF sumPos{};
	int matched = 0;
	for (size_t i = 0; i < s.points.size(); ++i) {
		const auto& p = s.points[i];
		allMinX = std::min(allMinX, p.offset.x);
		allMaxX = std::max(allMaxX, p.offset.x);
		allMinY = std::min(allMinY, p.offset.y);
		allMaxY = std::max(allMaxY, p.offset.y);
		if (cluster[i] != best)
			continue;
		++matched;
		sumPos = sumPos + p.position;
		minX = std::min(minX, p.offset.x);
		maxX = std::max(maxX, p.offset.x);
		minY = std::min(minY, p.offset.y);
		maxY = std::max(maxY, p.offset.y);
	}
	auto frac = [](double lo, double hi, double alo, double ahi) {
		double full = ahi - alo;
		return full < 1e-12 ? 1.0 : (hi - lo) / full;
	};
	const double f = double(matched) / s.points.size();
	DomainFeatures observed;
	observed.area = f * pitch * pitch;
	observed.area_ratio = f;
	observed.length = frac(minX, maxX, allMinX, allMaxX) * pitch;
	observed.width = frac(minY, maxY, allMinY, allMaxY) * pitch;
	observed.lwr = observed.width > 0 ? observed.length / observed.width : 0;
	observed.center = (1.0 / matched) * sumPos;

	verdict.symbol = best;
	verdict.confidence = Confidence(target, observed, params);
	return verdict;
}

} // namespace

ClassifyResult ClassifyCells(const RasterImage& image, const CodeRegion& region, const ClassifyOptions& options,
							 const CodeLayout& layout)
{
	options.confidence.validate();
	const SamplePattern& pattern = SamplePattern::ForCount(options.sample_points);

	ClassifyResult result;
	std::array<CellSample, DataCellCount> samples;
	std::vector<RgbF> pooled;
	for (int k = 0; k < DataCellCount; ++k) {
		samples[k] = SampleCell(image, region, layout.data_order[k], pattern);
		result.clamped |= samples[k].clamped;
		for (const auto& p : samples[k].points)
			if (Spread(p.color) < options.gray_spread_max)
				pooled.push_back(ToF(p.color));
	}

	const auto presets = GrayPresets();
	result.model = KMeansPreset(pooled, presets, options.max_iter, options.tol);

	const double threshold = options.confidence.threshold;
	for (int k = 0; k < DataCellCount; ++k) {
		CellVerdict v = EvaluateCell(samples[k], region, result.model, options);
		if (v.confidence < threshold) {
			CellSample dense = SampleCell(image, region, layout.data_order[k], SamplePattern::Densest(),
										  {options.redetect_window, true});
			result.clamped |= dense.clamped;
			CellVerdict retry = EvaluateCell(dense, region, result.model, options);
			if (retry.confidence > v.confidence)
				v = retry;
		}
		result.symbols[k] = DataSymbol::FromIndex(v.symbol);
		result.confidences[k] = v.confidence;
		if (v.confidence < threshold)
			result.low_confidence_cells.push_back(layout.data_order[k]);
	}

	CellSample vs = SampleCell(image, region, layout.verify_cell, pattern, {1.0, false});
	result.clamped |= vs.clamped;
	double mr = 0, mg = 0, mb = 0;
	for (const auto& p : vs.points) {
		mr += p.color.r;
		mg += p.color.g;
		mb += p.color.b;
	}
	const double n = static_cast<double>(vs.points.size());
	mr /= n;
	mg /= n;
	mb /= n;
	result.v_byte = static_cast<uint8_t>(std::clamp(std::lround((mr + mg + mb) / 3), 0L, 255L));

	if (std::max({mr, mg, mb}) - std::min({mr, mg, mb}) > options.v_channel_tolerance)
		result.status = ClassifyStatus::VChannelMismatch;
	else if (!result.low_confidence_cells.empty())
		result.status = ClassifyStatus::LowConfidence;
	return result;
}

} // namespace cbcode
