#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/codec.hpp"
#include "cbcode/geometry.hpp"
#include "cbcode/image.hpp"
#include "cbcode/locator.hpp"

#include <array>
#include <span>
#include <vector>

namespace cbcode {

/// Fixed sub-cell offsets in cell units relative to the cell center, all
/// inside the central half (|offset| <= 0.25).
///   5:  center + diagonal quincunx at +-0.25
///   10: the 5-point quincunx + its 45-degree rotation (axial points at
///       +-0.25, center counted in both)
///   20: 4 x 5 grid over the central half
class SamplePattern
{
public:
	/// Throws InvalidArgument unless n is 5, 10 or 20.
	static const SamplePattern& ForCount(int n);
	static const SamplePattern& Densest() { return ForCount(20); }

	int count() const noexcept { return static_cast<int>(_offsets.size()); }
	std::span<const PointF> offsets() const noexcept { return _offsets; }
	double maxOffset() const noexcept;

private:
	explicit SamplePattern(std::vector<PointF> offsets) : _offsets(std::move(offsets)) {}
	std::vector<PointF> _offsets;
};

struct SamplePoint
{
	PointF offset;   // pattern offset (cell units, after window scaling)
	PointF position; // image position
	Rgb color;
};

struct CellSample
{
	int cell_index = 0;
	std::vector<SamplePoint> points;
	bool clamped = false; // some point fell outside the image
};

struct SampleOptions
{
	double window = 1.0; // scales the pattern offsets
	bool snap = true;
};

/// Maps each offset through the region geometry, reads bilinearly and snaps.
/// Offsets shrink on tiny cells so both bilinear taps stay inside the cell.
CellSample SampleCell(const RasterImage& image, const CodeRegion& region, int cell_index, const SamplePattern& pattern,
					  const SampleOptions& options = {});

struct ClusterModel
{
	int k = 0;
	std::vector<RgbF> centroids;
	std::vector<int> assignments;
	std::vector<double> energy; // squared error after each iteration
	int iterations = 0;
};

/// Lloyd iterations seeded at `presets`; empty clusters fall back to their
/// preset. Stops when the largest centroid shift is below tol.
ClusterModel KMeansPreset(std::span<const RgbF> samples, std::span<const RgbF> presets, int max_iter = 50,
						  double tol = 1e-6);

/// Squared error of an assignment against a centroid set.
double ClusterEnergy(std::span<const RgbF> samples, std::span<const RgbF> centroids, std::span<const int> assignments);

int NearestCentroid(const RgbF& x, std::span<const RgbF> centroids) noexcept;

std::vector<RgbF> GrayPresets();

struct DomainFeatures
{
	double area = 0;       // px^2
	double area_ratio = 0; // domain / block
	double length = 0;     // px
	double width = 0;      // px
	double lwr = 0;        // length / width
	PointF center;
};

struct ConfidenceParams
{
	double delta = 1.0;
	double h_w = 1.0;          // longest edge of the collected block, px
	double n = 1.0;            // pixels discarded after a failed match
	double threshold = 0.5;
	double reference_size = 1.0; // canonical block edge used to normalize A, L, W

	void validate() const;
};

/// exp(-(|A_t - dA_d| + |AR_t - dAR_d| + |LWR_t - dLWR_d| + |L_t - dL_d|
///       + |W_t - dW_d| + |C_c - C_d| / (2 h_w n))), A scaled by 1/ref^2 and
/// L, W by 1/ref.
double Confidence(const DomainFeatures& target, const DomainFeatures& observed, const ConfidenceParams& params);

enum class ClassifyStatus { Ok, LowConfidence, VChannelMismatch };

struct ClassifyOptions
{
	int sample_points = 5;
	ConfidenceParams confidence;
	double redetect_window = 1.8; // densest pattern re-run over 90% of the cell
	int gray_spread_max = 0x30;   // wider channel spread counts as a failed match
	int v_channel_tolerance = 0x10;
	int max_iter = 50;
	double tol = 1e-3;
};

struct ClassifyResult
{
	SymbolSequence symbols{};
	uint8_t v_byte = 0;
	std::array<double, DataCellCount> confidences{};
	ClassifyStatus status = ClassifyStatus::Ok;
	std::vector<int> low_confidence_cells; // 1-based cell indices
	ClusterModel model;
	bool clamped = false;
};

/// Pools data-cell samples, clusters them against the six gray presets and
/// assigns each cell its majority cluster. Cells under the confidence
/// threshold are re-sampled once with the densest pattern. The V cell is read
/// as a continuous gray.
ClassifyResult ClassifyCells(const RasterImage& image, const CodeRegion& region, const ClassifyOptions& options = {},
							 const CodeLayout& layout = CodeLayout::Default());

} // namespace cbcode
