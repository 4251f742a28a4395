#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <span>
#include <vector>

namespace cbcode {

struct Rgb
{
	uint8_t r = 0, g = 0, b = 0;
	friend constexpr bool operator==(Rgb, Rgb) = default;
};

inline constexpr Rgb White{255, 255, 255};
inline constexpr Rgb Black{0, 0, 0};

/// Row-major 8-bit RGB image. Pixel (x, y) covers [x, x+1) x [y, y+1), so its
/// center sits at (x + 0.5, y + 0.5) in continuous image coordinates.
class RasterImage
{
public:
	RasterImage() = default;
	/// Throws InvalidArgument for a zero dimension.
	RasterImage(int width, int height, Rgb fill = White);

	int width() const noexcept { return _width; }
	int height() const noexcept { return _height; }
	bool empty() const noexcept { return _pixels.empty(); }

	Rgb& at(int x, int y) { return _pixels[static_cast<size_t>(y) * _width + x]; }
	Rgb at(int x, int y) const { return _pixels[static_cast<size_t>(y) * _width + x]; }
	/// Edge-clamped read.
	Rgb clamped(int x, int y) const noexcept;

	std::span<Rgb> pixels() noexcept { return _pixels; }
	std::span<const Rgb> pixels() const noexcept { return _pixels; }

	bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < _width && y < _height; }

	friend bool operator==(const RasterImage&, const RasterImage&) = default;

private:
	int _width = 0;
	int _height = 0;
	std::vector<Rgb> _pixels;
};

struct RgbF
{
	double r = 0, g = 0, b = 0;
};

/// Bilinear read at continuous coordinates (pixel centers at +0.5). Positions
/// outside the image are clamped to the border.
RgbF SampleBilinear(const RasterImage& image, double x, double y) noexcept;

} // namespace cbcode
