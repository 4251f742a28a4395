/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/locator.hpp"
#include "cbcode/color.hpp"
#include "cbcode/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cbcode {

const char* ToString(HueClass c) noexcept
{
	switch (c) {
	case HueClass::Red: return "R";
	case HueClass::Green: return "G";
	case HueClass::Blue: return "B";
	case HueClass::Gray: return "gray";
	case HueClass::Other: return "other";
	}
	return "?";
}

HueClass ClassifyHue(const RgbF& color, const LocatorOptions& options) noexcept
{
	Hsv hsv = ToHsv(color);
	if (hsv.s >= options.min_saturation && hsv.v >= options.min_value) {
		auto near = [&](double target) {
			double d = std::abs(hsv.h - target);
			return std::min(d, 360 - d) <= options.hue_window_deg;
		};
		if (near(0))
			return HueClass::Red;
		if (near(120))
			return HueClass::Green;
		if (near(240))
			return HueClass::Blue;
	}
	if (hsv.s < options.gray_saturation)
		return HueClass::Gray;
	// Saturation is unstable near black; a small absolute spread is gray too.
	const double spread = std::max({color.r, color.g, color.b}) - std::min({color.r, color.g, color.b});
	if (spread < options.gray_spread_max)
		return HueClass::Gray;
	return HueClass::Other;
}

namespace {

constexpr double ToDeg = 180 / std::numbers::pi;

using Mask = std::vector<uint8_t>;

Mask Erode(const Mask& m, int w, int h)
{
	Mask out(m.size(), 0);
	for (int y = 0; y < h; ++y)
		for (int x = 0; x < w; ++x) {
			uint8_t v = 1;
			for (int dy = -1; dy <= 1 && v; ++dy)
				for (int dx = -1; dx <= 1 && v; ++dx) {
					int xx = std::clamp(x + dx, 0, w - 1), yy = std::clamp(y + dy, 0, h - 1);
					v = m[static_cast<size_t>(yy) * w + xx];
				}
			out[static_cast<size_t>(y) * w + x] = v;
		}
	return out;
}

Mask Dilate(const Mask& m, int w, int h)
{
	Mask out(m.size(), 0);
	for (int y = 0; y < h; ++y)
		for (int x = 0; x < w; ++x) {
			uint8_t v = 0;
			for (int dy = -1; dy <= 1 && !v; ++dy)
				for (int dx = -1; dx <= 1 && !v; ++dx) {
					int xx = std::clamp(x + dx, 0, w - 1), yy = std::clamp(y + dy, 0, h - 1);
					v = m[static_cast<size_t>(yy) * w + xx];
				}
			out[static_cast<size_t>(y) * w + x] = v;
		}
	return out;
}

void CollectBlobs(const Mask& mask, int w, int h, HueClass color, std::vector<Blob>& out)
{
	std::vector<int> label(mask.size(), 0);
	std::vector<int> stack;
	for (int start = 0; start < w * h; ++start) {
		if (!mask[start] || label[start])
			continue;
		label[start] = 1;
		stack.assign(1, start);
		double n = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
		int bx0 = w, by0 = h, bx1 = -1, by1 = -1;
		while (!stack.empty()) {
			int i = stack.back();
			stack.pop_back();
			int x = i % w, y = i / w;
			double cx = x + 0.5, cy = y + 0.5;
			n += 1;
			sx += cx;
			sy += cy;
			sxx += cx * cx;
			syy += cy * cy;
			sxy += cx * cy;
			bx0 = std::min(bx0, x);
			by0 = std::min(by0, y);
			bx1 = std::max(bx1, x);
			by1 = std::max(by1, y);
			for (int dy = -1; dy <= 1; ++dy)
				for (int dx = -1; dx <= 1; ++dx) {
					int xx = x + dx, yy = y + dy;
					if (xx < 0 || yy < 0 || xx >= w || yy >= h)
						continue;
					int j = yy * w + xx;
					if (mask[j] && !label[j]) {
						label[j] = 1;
						stack.push_back(j);
					}
				}
		}
		double mx = sx / n, my = sy / n;
		// Pixel squares contribute 1/12 of variance each way.
		double vxx = sxx / n - mx * mx + 1.0 / 12, vyy = syy / n - my * my + 1.0 / 12, vxy = sxy / n - mx * my;
		double tr = vxx + vyy, det = vxx * vyy - vxy * vxy;
		double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
		double l1 = tr / 2 + disc, l2 = std::max(1e-12, tr / 2 - disc);
		double elongation = std::sqrt(l1 / l2);
		double bboxArea = double(bx1 - bx0 + 1) * (by1 - by0 + 1);
		double fill = n / bboxArea;
		if (fill < 0.3 || elongation > 2.5)
			continue;
		out.push_back({color, n, {mx, my}, {double(bx0), double(by0), double(bx1 + 1), double(by1 + 1)}});
	}
}

double SampleRadius(double cell) noexcept
{
	return std::min(0.3 * cell, std::max(0.0, cell / 2 - 0.5));
}

HueClass HueDensity(const RasterImage& image, PointF p, double cell, const LocatorOptions& options)
{
	const double r = SampleRadius(cell);
	std::array<int, 5> votes{};
	int total = 0;
	const int steps = r > 0 ? 5 : 1;
	for (int j = 0; j < steps; ++j)
		for (int i = 0; i < steps; ++i) {
			double ox = steps > 1 ? -r + 2 * r * i / (steps - 1) : 0;
			double oy = steps > 1 ? -r + 2 * r * j / (steps - 1) : 0;
			auto c = SampleBilinear(image, p.x + ox, p.y + oy);
			++votes[static_cast<int>(ClassifyHue(c, options))];
			++total;
		}
	auto best = std::max_element(votes.begin(), votes.end());
	if (*best * 2 < total)
		return HueClass::Other;
	return static_cast<HueClass>(best - votes.begin());
}

bool IsPresetGray(const RgbF& c) noexcept
{
	double mx = std::max({c.r, c.g, c.b}), mn = std::min({c.r, c.g, c.b});
	if (mx - mn >= 0x20)
		return false;
	for (int i = 0; i < DataSymbol::AlphabetSize; ++i) {
		double g = DataSymbol::FromIndex(i).gray();
		if (std::abs(c.r - g) < 0x26 && std::abs(c.g - g) < 0x26 && std::abs(c.b - g) < 0x26)
			return true;
	}
	return false;
}

double AngleAt(PointF vertex, PointF a, PointF b) noexcept
{
	PointF u = a - vertex, v = b - vertex;
	double c = Dot(u, v) / (Length(u) * Length(v));
	return std::acos(std::clamp(c, -1.0, 1.0)) * ToDeg;
}

std::vector<Candidate> TriangleSearch(const std::vector<Blob>& blobs)
{
	std::vector<Candidate> out;
	const int n = static_cast<int>(blobs.size());
	for (int i = 0; i < n; ++i)
		for (int j = i + 1; j < n; ++j)
			for (int k = j + 1; k < n; ++k) {
				const std::array<int, 3> ids = {i, j, k};
				double amax = 0, amin = 1e300, asum = 0;
				for (int id : ids) {
					amax = std::max(amax, blobs[id].area);
					amin = std::min(amin, blobs[id].area);
					asum += blobs[id].area;
				}
				if (amax > 3.5 * amin)
					continue;
				// Apex is opposite the longest side.
				std::array<double, 3> opp;
				for (int t = 0; t < 3; ++t)
					opp[t] = Distance(blobs[ids[(t + 1) % 3]].centroid, blobs[ids[(t + 2) % 3]].centroid);
				int apex = static_cast<int>(std::max_element(opp.begin(), opp.end()) - opp.begin());
				const Blob& A = blobs[ids[apex]];
				const Blob& E1 = blobs[ids[(apex + 1) % 3]];
				const Blob& E2 = blobs[ids[(apex + 2) % 3]];
				double l1 = Distance(A.centroid, E1.centroid), l2 = Distance(A.centroid, E2.centroid);
				double hyp = opp[apex];
				double legs = (l1 + l2) / 2;
				if (legs <= 0)
					continue;
				double cell = std::sqrt(asum / 3);
				double legDiff = std::abs(l1 - l2) / std::max(l1, l2);
				double diag = hyp / legs;
				double span = legs / cell;
				if (legDiff > 0.2 || diag < 1.25 || diag > 1.6 || span < 2.2 || span > 4.2)
					continue;
				Candidate c;
				c.end_a = E1.centroid;
				c.apex = A.centroid;
				c.end_b = E2.centroid;
				c.cell_size = legs / 3;
				c.score = legDiff + std::abs(diag - std::numbers::sqrt2) + std::abs(span - 3) / 3;
				c.blob_ids = {ids[(apex + 1) % 3], ids[apex], ids[(apex + 2) % 3]};
				out.push_back(c);
			}
	std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.score < b.score; });
	return out;
}

void FillRegion(CodeRegion& region)
{
	const Homography& h = region.cell_to_image;
	region.corners = {h.map(0, 0), h.map(4, 0), h.map(4, 4), h.map(0, 4)};
	for (int cell = 0; cell < CellCount; ++cell)
		region.cell_centers[cell] = h.map(cell % 4 + 0.5, cell / 4 + 0.5);
	const auto& q = region.corners;
	PointF ex = 0.125 * ((q[1] - q[0]) + (q[2] - q[3]));
	PointF ey = 0.125 * ((q[3] - q[0]) + (q[2] - q[1]));
	region.pitch_px = (Length(ex) + Length(ey)) / 2;
	region.mirrored = Cross(ex, ey) < 0;
	double rot = std::atan2(-ex.y, ex.x) * ToDeg;
	if (rot < 0)
		rot += 360;
	region.rotation_deg = rot;
	region.quarter_turns = static_cast<int>(std::lround(rot / 90)) % 4;
	double residual = rot - 90 * std::lround(rot / 90);
	region.residual_deg = residual <= -45 ? residual + 90 : residual;
}

CodeRegion RegionFromPrimaries(PointF red, PointF green, PointF blue)
{
	PointF ex = (1.0 / 3) * (blue - green);
	PointF ey = (1.0 / 3) * (green - red);
	PointF origin = red - 0.5 * ex - 0.5 * ey;
	CodeRegion region;
	region.cell_to_image = Homography::Affine(origin, ex, ey);
	FillRegion(region);
	return region;
}

void RefineWithHough(const RasterImage& image, CodeRegion& region)
{
	BoundingBox box = BoundingBox::Of(region.corners);
	double margin = 0.5 * region.pitch_px;
	int x0 = std::max(0, static_cast<int>(std::floor(box.x0 - margin)));
	int y0 = std::max(0, static_cast<int>(std::floor(box.y0 - margin)));
	int x1 = std::min(image.width(), static_cast<int>(std::ceil(box.x1 + margin)));
	int y1 = std::min(image.height(), static_cast<int>(std::ceil(box.y1 + margin)));
	if (x1 - x0 < 8 || y1 - y0 < 8)
		return;
	RasterImage crop = Crop(image, x0, y0, x1 - x0, y1 - y0);
	BoundingBox hint{box.x0 - x0, box.y0 - y0, box.x1 - x0, box.y1 - y0};
	try {
		GridLines grid = HoughGrid(SobelEdges(crop), hint);
		// Column lines (constant u) have their normal along the row axis.
		double target = std::fmod(region.rotation_deg, 180.0);
		for (const auto* fam : {&grid.first, &grid.second}) {
			double d = std::fmod(fam->angle_deg - target + 540.0, 180.0);
			if (d > 90)
				d -= 180;
			if (std::abs(d) <= 3.0) {
				double refined = region.rotation_deg + d;
				if (refined < 0)
					refined += 360;
				if (refined >= 360)
					refined -= 360;
				region.hough_angle_deg = refined;
				region.rotation_deg = refined;
				region.quarter_turns = static_cast<int>(std::lround(refined / 90)) % 4;
				double residual = refined - 90 * std::lround(refined / 90);
				region.residual_deg = residual <= -45 ? residual + 90 : residual;
				return;
			}
		}
	} catch (const Error&) {
		// No usable grid; the blob geometry stands.
	}
}

bool Overlaps(const Candidate& a, const Candidate& b) noexcept
{
	for (int i : a.blob_ids)
		for (int j : b.blob_ids)
			if (i == j)
				return true;
	PointF ca = (1.0 / 2) * (a.end_a + a.end_b), cb = (1.0 / 2) * (b.end_a + b.end_b);
	return Distance(ca, cb) < 2.0 * std::max(a.cell_size, b.cell_size);
}

} // namespace

std::vector<Blob> FindPrimaryBlobs(const RasterImage& image, bool morphology, const LocatorOptions& options)
{
	const int w = image.width(), h = image.height();
	std::array<Mask, 3> masks;
	for (auto& m : masks)
		m.assign(static_cast<size_t>(w) * h, 0);
	for (int y = 0; y < h; ++y)
		for (int x = 0; x < w; ++x) {
			Rgb p = image.at(x, y);
			HueClass c = ClassifyHue(RgbF{double(p.r), double(p.g), double(p.b)}, options);
			if (c == HueClass::Red || c == HueClass::Green || c == HueClass::Blue)
				masks[static_cast<int>(c)][static_cast<size_t>(y) * w + x] = 1;
		}

	std::vector<Blob> blobs;
	for (int c = 0; c < 3; ++c) {
		Mask m = masks[c];
		if (morphology) {
			m = Dilate(Erode(m, w, h), w, h);
			m = Erode(Dilate(m, w, h), w, h);
		}
		CollectBlobs(m, w, h, static_cast<HueClass>(c), blobs);
	}
	std::sort(blobs.begin(), blobs.end(), [](const Blob& a, const Blob& b) { return a.area > b.area; });
	if (static_cast<int>(blobs.size()) > options.max_blobs)
		blobs.resize(options.max_blobs);
	return blobs;
}

std::vector<Candidate> SegmentCandidates(const RasterImage& image, const LocatorOptions& options)
{
	auto candidates = TriangleSearch(FindPrimaryBlobs(image, true, options));
	if (candidates.empty())
		candidates = TriangleSearch(FindPrimaryBlobs(image, false, options));
	return candidates;
}

CornerVerdict VerifyCorners(const RasterImage& image, const Candidate& cand, const LocatorOptions& options)
{
	CornerVerdict v;
	const double cell = cand.cell_size;
	v.classes[0] = HueDensity(image, cand.end_a, cell, options);
	v.classes[1] = HueDensity(image, cand.apex, cell, options);
	v.classes[2] = HueDensity(image, cand.end_b, cell, options);

	bool aRed = v.classes[0] == HueClass::Red;
	v.red = aRed ? cand.end_a : cand.end_b;
	v.blue = aRed ? cand.end_b : cand.end_a;
	v.green = cand.apex;
	v.verify = v.red + v.blue - v.green;
	v.classes[3] = HueDensity(image, v.verify, cell, options);

	double rg = Distance(v.red, v.green), gb = Distance(v.green, v.blue);
	v.equidistance_ratio = std::abs(rg - gb) / std::max(rg, gb);
	v.diagonal_ratio = Distance(v.red, v.blue) / ((rg + gb) / 2);
	v.green_angle_deg = AngleAt(v.green, v.red, v.blue);

	int gray = 0, total = 0;
	for (auto [from, to] : {std::pair{v.red, v.blue}, std::pair{v.verify, v.green}})
		for (int i = 0; i <= 12; ++i) {
			double t = 0.2 + 0.6 * i / 12;
			PointF p = from + t * (to - from);
			gray += IsPresetGray(SampleBilinear(image, p.x, p.y));
			++total;
		}
	v.diagonal_gray_fraction = double(gray) / total;

	bool colorsOk = v.classes[1] == HueClass::Green
					&& ((v.classes[0] == HueClass::Red && v.classes[2] == HueClass::Blue)
						|| (v.classes[0] == HueClass::Blue && v.classes[2] == HueClass::Red))
					&& v.classes[3] == HueClass::Gray;
	v.passed = colorsOk && v.equidistance_ratio < options.equidistance_tolerance
			   && v.diagonal_ratio >= options.diagonal_ratio_min && v.diagonal_ratio <= options.diagonal_ratio_max
			   && v.diagonal_gray_fraction >= options.diagonal_gray_fraction;
	return v;
}

CodeRegion FindCodeRegion(const RasterImage& image, const LocatorOptions& options)
{
	auto search = [&](bool morphology) {
		std::vector<std::pair<Candidate, CornerVerdict>> passing;
		for (const auto& cand : TriangleSearch(FindPrimaryBlobs(image, morphology, options))) {
			CornerVerdict v = VerifyCorners(image, cand, options);
			if (!v.passed)
				continue;
			bool dup = std::any_of(passing.begin(), passing.end(),
								   [&](const auto& p) { return Overlaps(p.first, cand); });
			if (!dup)
				passing.emplace_back(cand, v);
		}
		return passing;
	};

	auto passing = search(true);
	if (passing.empty())
		passing = search(false);
	if (passing.empty())
		throw Error(ErrorCode::NotFound, "no candidate passed corner verification");
	if (passing.size() > 1)
		throw Error(ErrorCode::Ambiguous, "multiple codes found; supply a region hint");

	const CornerVerdict& v = passing.front().second;
	CodeRegion region = RegionFromPrimaries(v.red, v.green, v.blue);
	if (options.hough_refinement && region.pitch_px >= options.hough_min_pitch)
		RefineWithHough(image, region);
	return region;
}

CodeRegion RegionFromHint(const RasterImage& image, const Quad& quad, const LocatorOptions& options)
{
	if (!IsConvexQuad(quad) || QuadArea(quad) < 1.0)
		throw Error(ErrorCode::BadHint, "region hint must be a convex, non-degenerate quadrilateral");

	const Quad square = {{{0, 0}, {4, 0}, {4, 4}, {0, 4}}};
	Homography h;
	if (!Homography::FromQuads(square, quad, h))
		throw Error(ErrorCode::BadHint, "region hint is degenerate");

	const std::array<PointF, 4> cornerCells = {{{0.5, 0.5}, {3.5, 0.5}, {3.5, 3.5}, {0.5, 3.5}}};
	const double cell = std::sqrt(QuadArea(quad)) / 4;
	std::array<HueClass, 4> cls;
	for (int i = 0; i < 4; ++i)
		cls[i] = HueDensity(image, h.map(cornerCells[i]), cell, options);

	auto find = [&](HueClass c) {
		int idx = -1;
		for (int i = 0; i < 4; ++i)
			if (cls[i] == c) {
				if (idx >= 0)
					return -2;
				idx = i;
			}
		return idx;
	};
	int iR = find(HueClass::Red), iG = find(HueClass::Green), iB = find(HueClass::Blue);
	if (iR < 0 || iG < 0 || iB < 0 || (iR + 2) % 4 != iB)
		throw Error(ErrorCode::NotFound, "hinted region does not show the R/G/B corner layout");
	int iV = 6 - iR - iG - iB;

	const Quad oriented = {quad[iR], quad[iV], quad[iB], quad[iG]};
	CodeRegion region;
	if (!Homography::FromQuads(square, oriented, region.cell_to_image))
		throw Error(ErrorCode::BadHint, "region hint is degenerate");
	region.from_hint = true;
	FillRegion(region);
	return region;
}

} // namespace cbcode
