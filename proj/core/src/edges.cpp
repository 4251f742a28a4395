/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/edges.hpp"
#include "cbcode/color.hpp"
#include "cbcode/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace cbcode {

GradientMap SobelEdges(const RasterImage& image)
{
	const int w = image.width(), h = image.height();
	std::vector<float> luma(static_cast<size_t>(w) * h);
	for (int y = 0; y < h; ++y)
		for (int x = 0; x < w; ++x)
			luma[static_cast<size_t>(y) * w + x] = static_cast<float>(Luma(image.at(x, y)));
	auto at = [&](int x, int y) {
		return luma[static_cast<size_t>(std::clamp(y, 0, h - 1)) * w + std::clamp(x, 0, w - 1)];
	};

	GradientMap g{w, h, std::vector<float>(luma.size()), std::vector<float>(luma.size())};
	for (int y = 0; y < h; ++y)
		for (int x = 0; x < w; ++x) {
			float gx = (at(x + 1, y - 1) + 2 * at(x + 1, y) + at(x + 1, y + 1))
					   - (at(x - 1, y - 1) + 2 * at(x - 1, y) + at(x - 1, y + 1));
			float gy = (at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1))
					   - (at(x - 1, y - 1) + 2 * at(x, y - 1) + at(x + 1, y - 1));
			size_t i = static_cast<size_t>(y) * w + x;
			g.magnitude[i] = std::sqrt(gx * gx + gy * gy);
			g.orientation[i] = std::atan2(gy, gx);
		}
	return g;
}

namespace {

constexpr double AngleStep = 0.5;
constexpr int AngleBins = static_cast<int>(180 / AngleStep);
constexpr int VoteSpread = 4; // +-2 degrees around the gradient direction

struct Accumulator
{
	int radius = 0;
	int rho_bins = 0;
	std::vector<float> votes;

	float& at(int a, int r) { return votes[static_cast<size_t>(a) * rho_bins + r]; }
	float at(int a, int r) const { return votes[static_cast<size_t>(a) * rho_bins + r]; }
};

int WrapAngle(int a) noexcept
{
	return ((a % AngleBins) + AngleBins) % AngleBins;
}

double Score(const Accumulator& acc, int a)
{
	a = WrapAngle(a);
	double s = 0;
	for (int r = 0; r < acc.rho_bins; ++r) {
		double v = acc.at(a, r);
		s += v * v;
	}
	return s;
}

// Column of a family: votes summed over the neighbouring angle bins. Lines at
// angles near 0/180 wrap with a sign flip of the offset.
std::vector<double> Column(const Accumulator& acc, int a)
{
	std::vector<double> col(acc.rho_bins, 0.0);
	for (int da = -1; da <= 1; ++da) {
		int raw = a + da;
		int wrapped = WrapAngle(raw);
		bool flipped = raw != wrapped && ((raw - wrapped) / AngleBins) % 2 != 0;
		for (int r = 0; r < acc.rho_bins; ++r) {
			int src = flipped ? acc.rho_bins - 1 - r : r;
			col[r] += acc.at(wrapped, src);
		}
	}
	return col;
}

struct Peak
{
	double offset;
	double weight;
};

std::vector<Peak> FindPeaks(const std::vector<double>& col, int radius)
{
	const double top = *std::max_element(col.begin(), col.end());
	std::vector<Peak> peaks;
	if (top <= 0)
		return peaks;
	const int n = static_cast<int>(col.size());
	for (int r = 0; r < n; ++r) {
		if (col[r] < 0.15 * top)
			continue;
		bool isMax = true;
		for (int d = -3; d <= 3 && isMax; ++d) {
			int q = r + d;
			if (d == 0 || q < 0 || q >= n)
				continue;
			if (col[q] > col[r] || (col[q] == col[r] && q < r))
				isMax = false;
		}
		if (!isMax)
			continue;
		double sw = 0, sx = 0;
		for (int d = -2; d <= 2; ++d) {
			int q = r + d;
			if (q < 0 || q >= n)
				continue;
			sw += col[q];
			sx += col[q] * (q - radius);
		}
		peaks.push_back({sx / sw, col[r]});
	}
	return peaks;
}

LineFamily FitLattice(const std::vector<Peak>& peaks, double angle_deg, const BoundingBox& hint)
{
	const double a = angle_deg * std::numbers::pi / 180;
	const double nx = std::cos(a), ny = -std::sin(a);
	const std::array<PointF, 4> corners = {
		{{hint.x0, hint.y0}, {hint.x1, hint.y0}, {hint.x1, hint.y1}, {hint.x0, hint.y1}}};
	double emin = 1e300, emax = -1e300;
	for (auto c : corners) {
		double e = c.x * nx + c.y * ny;
		emin = std::min(emin, e);
		emax = std::max(emax, e);
	}
	const double extent = emax - emin;

	std::vector<double> pos;
	for (const auto& p : peaks)
		pos.push_back(p.offset);
	std::sort(pos.begin(), pos.end());

	double dmin = 1e300;
	for (size_t i = 1; i < pos.size(); ++i)
		dmin = std::min(dmin, pos[i] - pos[i - 1]);

	double pitch = dmin;
	for (int k = 1; k <= 6; ++k) {
		double p = dmin / k;
		if (p < 3)
			break;
		if (p > 1.05 * extent / 4)
			continue;
		bool fits = std::all_of(pos.begin(), pos.end(), [&](double x) {
			double idx = (x - pos[0]) / p;
			return std::abs(idx - std::round(idx)) <= 0.15;
		});
		if (fits) {
			pitch = p;
			break;
		}
	}

	// Least squares on (lattice index, offset).
	std::vector<double> idx;
	for (double x : pos)
		idx.push_back(std::round((x - pos[0]) / pitch));
	const double n = static_cast<double>(pos.size());
	double si = std::accumulate(idx.begin(), idx.end(), 0.0);
	double sx = std::accumulate(pos.begin(), pos.end(), 0.0);
	double sii = 0, six = 0;
	for (size_t i = 0; i < pos.size(); ++i) {
		sii += idx[i] * idx[i];
		six += idx[i] * pos[i];
	}
	double denom = n * sii - si * si;
	double origin = pos[0];
	if (denom > 1e-12) {
		pitch = (n * six - si * sx) / denom;
		origin = (sx - pitch * si) / n;
	}

	std::vector<double> lines;
	int kmin = static_cast<int>(std::ceil((emin - 0.25 * pitch - origin) / pitch));
	int kmax = static_cast<int>(std::floor((emax + 0.25 * pitch - origin) / pitch));
	for (int k = kmin; k <= kmax; ++k)
		lines.push_back(origin + k * pitch);

	if (lines.size() > 5) {
		// Keep the five consecutive lattice lines with the most peak support.
		size_t best = 0;
		double bestSupport = -1;
		for (size_t s = 0; s + 5 <= lines.size(); ++s) {
			double support = 0;
			for (const auto& p : peaks)
				if (p.offset >= lines[s] - 0.25 * pitch && p.offset <= lines[s + 4] + 0.25 * pitch)
					support += p.weight;
			if (support > bestSupport) {
				bestSupport = support;
				best = s;
			}
		}
		lines = std::vector<double>(lines.begin() + best, lines.begin() + best + 5);
	}
	return {angle_deg, lines, pitch};
}

} // namespace

GridLines HoughGrid(const GradientMap& edges, const BoundingBox& region_hint)
{
	const int x0 = std::max(0, static_cast<int>(std::floor(region_hint.x0)));
	const int y0 = std::max(0, static_cast<int>(std::floor(region_hint.y0)));
	const int x1 = std::min(edges.width, static_cast<int>(std::ceil(region_hint.x1)));
	const int y1 = std::min(edges.height, static_cast<int>(std::ceil(region_hint.y1)));
	if (x1 <= x0 || y1 <= y0)
		throw Error(ErrorCode::NoGrid, "empty Hough region");

	float top = 0;
	for (int y = y0; y < y1; ++y)
		for (int x = x0; x < x1; ++x)
			top = std::max(top, edges.mag(x, y));
	const float threshold = std::max(20.0f, 0.15f * top);

	Accumulator acc;
	acc.radius = static_cast<int>(std::ceil(std::hypot(edges.width, edges.height))) + 2;
	acc.rho_bins = 2 * acc.radius + 1;
	acc.votes.assign(static_cast<size_t>(AngleBins) * acc.rho_bins, 0.0f);

	std::array<double, AngleBins> cosT, sinT;
	for (int a = 0; a < AngleBins; ++a) {
		double t = a * AngleStep * std::numbers::pi / 180;
		cosT[a] = std::cos(t);
		sinT[a] = std::sin(t);
	}

	bool any = false;
	for (int y = y0; y < y1; ++y)
		for (int x = x0; x < x1; ++x) {
			float m = edges.mag(x, y);
			if (m < threshold)
				continue;
			any = true;
			float dir = edges.dir(x, y);
			// Screen-space normal angle: flip the y component of the gradient.
			double screen = std::atan2(-std::sin(dir), std::cos(dir)) * 180 / std::numbers::pi;
			screen = std::fmod(screen + 360.0, 180.0);
			int center = static_cast<int>(std::lround(screen / AngleStep));
			double px = x + 0.5, py = y + 0.5;
			for (int d = -VoteSpread; d <= VoteSpread; ++d) {
				int a = WrapAngle(center + d);
				double rho = px * cosT[a] - py * sinT[a];
				double fr = rho + acc.radius;
				int r0 = static_cast<int>(std::floor(fr));
				double t = fr - r0;
				if (r0 >= 0 && r0 + 1 < acc.rho_bins) {
					acc.at(a, r0) += static_cast<float>(m * (1 - t));
					acc.at(a, r0 + 1) += static_cast<float>(m * t);
				}
			}
		}
	if (!any)
		throw Error(ErrorCode::NoGrid, "no edges inside the Hough region");

	std::array<double, AngleBins> score;
	for (int a = 0; a < AngleBins; ++a)
		score[a] = Score(acc, a);

	int bestA = 0;
	double bestT = -1;
	for (int a = 0; a < AngleBins / 2; ++a) {
		double t = score[a] + score[a + AngleBins / 2];
		if (t > bestT) {
			bestT = t;
			bestA = a;
		}
	}

	auto refine = [&](int nominal) {
		int best = nominal;
		for (int d = -4; d <= 4; ++d)
			if (score[WrapAngle(nominal + d)] > score[WrapAngle(best)])
				best = nominal + d;
		return best;
	};

	auto family = [&](int nominal) {
		int a = refine(nominal);
		auto peaks = FindPeaks(Column(acc, a), acc.radius);
		if (peaks.size() < 2)
			throw Error(ErrorCode::NoGrid, "fewer than two lines in a grid family");
		// Column offsets are relative to the wrapped bin; unwrap for the angle.
		int wrapped = WrapAngle(a);
		double angle = wrapped * AngleStep;
		if (wrapped != a && ((a - wrapped) / AngleBins) % 2 != 0)
			for (auto& p : peaks)
				p.offset = -p.offset;
		return FitLattice(peaks, angle, region_hint);
	};

	GridLines grid;
	grid.first = family(bestA);
	grid.second = family(bestA + AngleBins / 2);
	if (grid.first.angle_deg > grid.second.angle_deg)
		std::swap(grid.first, grid.second);
	return grid;
}

} // namespace cbcode
