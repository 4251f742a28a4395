#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/codec.hpp"
#include "cbcode/edges.hpp"
#include "cbcode/geometry.hpp"
#include "cbcode/image.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cbcode {

struct LocatorOptions
{
	double hue_window_deg = 20;
	double min_saturation = 0.5;
	double min_value = 0.25;
	double gray_saturation = 0.25;
	double gray_spread_max = 0x20; // absolute channel spread, for dark pixels
	double equidistance_tolerance = 0.10;
	double diagonal_ratio_min = 1.35;
	double diagonal_ratio_max = 1.48;
	double diagonal_gray_fraction = 0.60;
	int max_blobs = 64;
	bool hough_refinement = true;
	double hough_min_pitch = 12; // px; smaller codes skip Sobel/Hough
};

enum class HueClass : uint8_t { Red, Green, Blue, Gray, Other };

const char* ToString(HueClass c) noexcept;

/// Per-pixel class of a saturated primary, gray (low saturation or a small
/// absolute channel spread), or anything else.
HueClass ClassifyHue(const RgbF& color, const LocatorOptions& options = {}) noexcept;

struct Blob
{
	HueClass color = HueClass::Other;
	double area = 0;
	PointF centroid;
	BoundingBox bbox;
};

/// Three primary blobs whose centroids approximate an isosceles right
/// triangle. `apex` is the right-angle vertex; ends are the other two.
struct Candidate
{
	PointF end_a;
	PointF apex;
	PointF end_b;
	double cell_size = 0; // px, estimated from blob areas
	double score = 0;     // lower is better
	std::array<int, 3> blob_ids{-1, -1, -1};
};

struct CornerVerdict
{
	// Classes of end_a, apex, end_b and the inferred fourth corner.
	std::array<HueClass, 4> classes{HueClass::Other, HueClass::Other, HueClass::Other, HueClass::Other};
	PointF red, green, blue, verify;
	double equidistance_ratio = 1;
	double diagonal_ratio = 0;
	double green_angle_deg = 0;
	double diagonal_gray_fraction = 0;
	bool passed = false;
};

struct CodeRegion
{
	Quad corners;                          // red, V, blue, green outer corners
	std::array<PointF, CellCount> cell_centers;
	Homography cell_to_image;              // cell space [0,4]^2 -> image
	double rotation_deg = 0;               // [0, 360), counterclockwise on screen
	int quarter_turns = 0;
	double residual_deg = 0;               // (-45, 45]
	bool mirrored = false;
	double pitch_px = 0;                   // mean cell edge length
	bool from_hint = false;
	std::optional<double> hough_angle_deg; // grid family aligned with the rows
};

std::vector<Blob> FindPrimaryBlobs(const RasterImage& image, bool morphology, const LocatorOptions& options = {});

/// Hue masks, 3x3 open+close, connected components, triangle search.
std::vector<Candidate> SegmentCandidates(const RasterImage& image, const LocatorOptions& options = {});

CornerVerdict VerifyCorners(const RasterImage& image, const Candidate& candidate, const LocatorOptions& options = {});

/// Throws NotFound or Ambiguous.
CodeRegion FindCodeRegion(const RasterImage& image, const LocatorOptions& options = {});

/// Builds geometry from a user quad (any winding or starting corner), then
/// orients it by the corner colors. Throws BadHint for degenerate quads and
/// NotFound when the corners do not show R, G, B in opposite-V layout.
CodeRegion RegionFromHint(const RasterImage& image, const Quad& quad, const LocatorOptions& options = {});

} // namespace cbcode
