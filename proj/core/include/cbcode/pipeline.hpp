#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/codec.hpp"
#include "cbcode/geometry.hpp"
#include "cbcode/image.hpp"
#include "cbcode/locator.hpp"
#include "cbcode/raster.hpp"

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

namespace cbcode {

inline constexpr int DefaultTimeoutMs = 6000;
inline constexpr int DefaultVTolerance = 0x14;

struct DecodeOptions
{
	int sample_points = 5;
	int timeout_ms = DefaultTimeoutMs;
	int v_tolerance = DefaultVTolerance; // 0 = strict CRC equality
	bool enable_color_correction = false;
	bool enable_prefilter = true;
	double confidence_threshold = 0.5;
	std::optional<Quad> region_hint;
	LocatorOptions locator;

	/// Throws InvalidArgument.
	void validate() const;
};

enum class DecodeStatus { Ok, NotFound, CrcFailure, Timeout };

std::string_view ToString(DecodeStatus status) noexcept;

/// crc_ok implies found, crc_exact implies crc_ok, payload is set iff crc_ok.
struct DecodeReport
{
	DecodeStatus status = DecodeStatus::NotFound;
	bool found = false;
	std::optional<Quad> corners; // red, V, blue, green
	std::optional<double> rotation;
	std::optional<bool> mirrored;
	std::optional<SymbolSequence> symbols;
	std::optional<Payload> payload;
	std::optional<uint8_t> crc_read;
	std::optional<uint8_t> crc_computed;
	bool crc_ok = false;
	bool crc_exact = false;
	std::vector<double> confidences;
	int attempts = 0;
	double elapsed_ms = 0;
};

/// Runs the attempt ladder until verification passes or the budget runs out:
///   1. options as given
///   2. prefilter toggled
///   3. densest sampling pattern
///   4. color correction toward D65
/// Ladder steps identical to an earlier one are skipped. Throws
/// InvalidArgument for bad options and BadHint for a degenerate hint.
DecodeReport Decode(const RasterImage& image, const DecodeOptions& options = {});

/// Throws IoError when the file cannot be read as PNG.
DecodeReport DecodeFile(const std::filesystem::path& path, const DecodeOptions& options = {});

/// Throws OutOfRange for payloads >= PayloadLimit.
RasterImage Encode(Payload payload, const RenderSpec& spec = {});

} // namespace cbcode
