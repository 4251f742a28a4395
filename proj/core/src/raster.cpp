/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/raster.hpp"

#include <algorithm>
#include <cmath>

namespace cbcode {

RasterImage::RasterImage(int width, int height, Rgb fill) : _width(width), _height(height)
{
	if (width < 1 || height < 1)
		throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
	_pixels.assign(static_cast<size_t>(width) * height, fill);
}

Rgb RasterImage::clamped(int x, int y) const noexcept
{
	x = std::clamp(x, 0, _width - 1);
	y = std::clamp(y, 0, _height - 1);
	return _pixels[static_cast<size_t>(y) * _width + x];
}

RgbF SampleBilinear(const RasterImage& image, double x, double y) noexcept
{
	double fx = x - 0.5, fy = y - 0.5;
	int x0 = static_cast<int>(std::floor(fx));
	int y0 = static_cast<int>(std::floor(fy));
	double ax = fx - x0, ay = fy - y0;
	Rgb p00 = image.clamped(x0, y0), p10 = image.clamped(x0 + 1, y0);
	Rgb p01 = image.clamped(x0, y0 + 1), p11 = image.clamped(x0 + 1, y0 + 1);
	auto mix = [&](uint8_t a, uint8_t b, uint8_t c, uint8_t d) {
		return (1 - ay) * ((1 - ax) * a + ax * b) + ay * ((1 - ax) * c + ax * d);
	};
	return {mix(p00.r, p10.r, p01.r, p11.r), mix(p00.g, p10.g, p01.g, p11.g), mix(p00.b, p10.b, p01.b, p11.b)};
}

RasterImage Render(const CodeMatrix& matrix, const RenderSpec& spec)
{
	if (spec.block_px < 1 || spec.border_px < 0)
		throw Error(ErrorCode::InvalidArgument, "block_px must be >= 1 and border_px >= 0");
	const int side = spec.sidePx();
	RasterImage image(side, side, spec.border_color);
	for (int cell = 1; cell <= CellCount; ++cell) {
		Rgb color = matrix.cellColor(cell);
		int x0 = spec.border_px + ((cell - 1) % 4) * spec.block_px;
		int y0 = spec.border_px + ((cell - 1) / 4) * spec.block_px;
		for (int y = y0; y < y0 + spec.block_px; ++y)
			for (int x = x0; x < x0 + spec.block_px; ++x)
				image.at(x, y) = color;
	}
	return image;
}

RasterImage Embed(const RasterImage& host, const RasterImage& code, int x, int y)
{
	if (x < 0 || y < 0 || x + code.width() > host.width() || y + code.height() > host.height())
		throw Error(ErrorCode::OutOfBounds, "code does not fit inside host at the given offset");
	RasterImage out = host;
	for (int j = 0; j < code.height(); ++j)
		for (int i = 0; i < code.width(); ++i)
			out.at(x + i, y + j) = code.at(i, j);
	return out;
}

RasterImage Crop(const RasterImage& image, int x, int y, int width, int height)
{
	if (width < 1 || height < 1 || x < 0 || y < 0 || x + width > image.width() || y + height > image.height())
		throw Error(ErrorCode::OutOfBounds, "crop rectangle leaves the image");
	RasterImage out(width, height);
	for (int j = 0; j < height; ++j)
		for (int i = 0; i < width; ++i)
			out.at(i, j) = image.at(x + i, y + j);
	return out;
}

std::array<Rgb, CellCount> ReadCellColors(const RasterImage& image, const RenderSpec& spec)
{
	if (image.width() != spec.sidePx() || image.height() != spec.sidePx())
		throw Error(ErrorCode::DimensionMismatch, "image size does not match the render spec");
	std::array<Rgb, CellCount> colors;
	for (int cell = 0; cell < CellCount; ++cell) {
		int x = spec.border_px + (cell % 4) * spec.block_px + spec.block_px / 2;
		int y = spec.border_px + (cell / 4) * spec.block_px + spec.block_px / 2;
		colors[cell] = image.at(x, y);
	}
	return colors;
}

} // namespace cbcode
