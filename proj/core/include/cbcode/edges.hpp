#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/geometry.hpp"
#include "cbcode/image.hpp"

#include <vector>

namespace cbcode {

struct GradientMap
{
	int width = 0;
	int height = 0;
	std::vector<float> magnitude;
	std::vector<float> orientation; // atan2(gy, gx), image axes (y down)

	float mag(int x, int y) const { return magnitude[static_cast<size_t>(y) * width + x]; }
	float dir(int x, int y) const { return orientation[static_cast<size_t>(y) * width + x]; }
};

/// 3x3 Sobel on luma with clamped borders.
GradientMap SobelEdges(const RasterImage& image);

/// Lines are n . p = offset with unit normal n = (cos a, -sin a), i.e. the
/// normal angle a is measured counterclockwise as seen on screen.
struct LineFamily
{
	double angle_deg = 0;        // [0, 180)
	std::vector<double> offsets; // ascending, at most 5
	double pitch = 0;
};

struct GridLines
{
	LineFamily first;  // angle in [0, 90)
	LineFamily second; // first.angle + 90 (approximately)
};

/// Orientation-constrained Hough voting inside `region_hint`, peaks fitted to
/// a regular lattice. Throws NoGrid when either family has fewer than 2 peaks.
GridLines HoughGrid(const GradientMap& edges, const BoundingBox& region_hint);

} // namespace cbcode
