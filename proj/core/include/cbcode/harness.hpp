#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/codec.hpp"
#include "cbcode/geometry.hpp"
#include "cbcode/image.hpp"
#include "cbcode/pipeline.hpp"
#include "cbcode/raster.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cbcode {

enum class ScaleMethod { Nearest, Bilinear, Bicubic };

std::string_view ToString(ScaleMethod method) noexcept;
std::optional<ScaleMethod> ParseScaleMethod(std::string_view name) noexcept;

/// Output dims are max(1, round-half-up(factor * dim)). Source coordinates use
/// pixel-center alignment; bicubic is Keys with a = -0.5. Throws
/// InvalidArgument for factor <= 0.
RasterImage ScaleImage(const RasterImage& image, double factor, ScaleMethod method);

struct PixelRect
{
	int x = 0, y = 0, width = 0, height = 0;
};

/// Centered square of area ~coverage x block area inside `cell` of an image
/// laid out by `spec`. Throws BadCell or InvalidArgument (coverage outside
/// [0, 1]).
PixelRect OcclusionRect(int cell, double coverage, const RenderSpec& spec = {});

RasterImage Occlude(const RasterImage& image, int cell, double coverage, Rgb color, const RenderSpec& spec = {});
/// Paints `rect` clipped to the image.
RasterImage Occlude(const RasterImage& image, const PixelRect& rect, Rgb color);

inline constexpr Rgb DefaultInterferenceColor{0xFF, 0x88, 0x00};

/// Bilinear rotation about the image center, counterclockwise on screen for
/// positive angles, same dimensions, white fill. Multiples of 90 degrees on
/// square images (and 180 on any image) are exact permutations.
RasterImage RotateImage(const RasterImage& image, double degrees);

/// Inverse-maps every output pixel through `output_to_source`, bilinear,
/// filling with `fill` outside the source.
RasterImage WarpImage(const RasterImage& image, const Homography& output_to_source, int width, int height,
					  Rgb fill = White);

enum class NoiseKind { Gaussian, Shot, Periodic };

struct NoiseSpec
{
	NoiseKind kind = NoiseKind::Gaussian;
	double sigma = 8;        // gaussian, per channel
	double density = 0.01;   // shot: fraction of pixels forced to black or white
	double amplitude = 16;   // periodic
	double frequency = 0.25; // periodic, cycles per pixel along x + y
	uint64_t seed = 0;
};

RasterImage AddNoise(const RasterImage& image, const NoiseSpec& spec);

struct ScaleDegradation
{
	double factor = 1;
	ScaleMethod method = ScaleMethod::Bilinear;
};

struct OccludeDegradation
{
	int cell = 0;
	double coverage = 0;
	Rgb color = DefaultInterferenceColor;
	std::optional<PixelRect> rect; // overrides cell + coverage
};

struct RotateDegradation
{
	double degrees = 0;
};

struct EmbedDegradation
{
	RasterImage host{1, 1};
	int x = 0, y = 0;
};

using DegradationSpec =
	std::variant<ScaleDegradation, OccludeDegradation, RotateDegradation, NoiseSpec, EmbedDegradation>;

/// `spec` describes the layout of `image` for cell-based occlusion.
RasterImage Apply(const RasterImage& image, const DegradationSpec& degradation, const RenderSpec& spec = {});

/// Independent per-trial stream derived from (seed, index).
uint64_t TrialSeed(uint64_t seed, uint64_t index) noexcept;

Payload RandomPayload(std::mt19937_64& rng);

/// Saturated color whose hue is at least 25 degrees from every primary.
Rgb RandomInterferenceColor(std::mt19937_64& rng);

struct TrialRecord
{
	Payload truth = 0;
	std::optional<Payload> decoded;
	DecodeStatus status = DecodeStatus::NotFound;
	bool crc_ok = false;
	double elapsed_ms = 0;

	bool success() const noexcept { return crc_ok && decoded == truth; }
};

struct SweepOptions
{
	uint64_t seed = 1;
	int trials = 100;
	DecodeOptions decode;
	RenderSpec render; // 260 x 260 by default
};

struct ScaleRow
{
	double factor = 0;
	ScaleMethod method = ScaleMethod::Bilinear;
	int trials = 0;
	int successes = 0;
	double success_rate = 0;
	double mean_ms = 0;
};

/// Throws InvalidArgument for trials < 1.
std::vector<ScaleRow> RunScaleSweep(std::span<const double> factors, ScaleMethod method, const SweepOptions& options);

struct SamplingRow
{
	double factor = 0;
	int samples = 0;
	int trials = 0;
	int successes = 0;
	double success_rate = 0;
	double mean_ms = 0;
};

/// Factor-major cross product; each factor reuses the same payloads for every
/// sample count.
std::vector<SamplingRow> RunSamplingSweep(std::span<const double> factors, std::span<const int> sample_counts,
										  const SweepOptions& options);

struct OcclusionOptions
{
	SweepOptions sweep;
	bool exact_coverage = false; // every round uses coverage_max itself
	std::optional<Rgb> color;    // default: random interference color
};

struct OcclusionSummary
{
	int rounds = 0;
	double coverage_max = 0;
	int successes = 0;
	double success_rate = 0;
	int not_found = 0;
	int crc_failure = 0;
	int timeout = 0;
	int wrong_payload = 0;
	double mean_ms = 0;
};

/// Rounds use options.sweep.seed; options.sweep.trials is ignored.
OcclusionSummary RunOcclusionMc(int rounds, double coverage_max, const OcclusionOptions& options);

std::string ToCsv(std::span<const ScaleRow> rows, uint64_t seed);
std::string ToCsv(std::span<const SamplingRow> rows, uint64_t seed);
std::string ToCsv(const OcclusionSummary& summary, uint64_t seed);

} // namespace cbcode
