#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/codec.hpp"
#include "cbcode/image.hpp"

#include <array>

namespace cbcode {

struct RenderSpec
{
	int block_px = 65;
	int border_px = 0;
	Rgb border_color = White;

	int sidePx() const noexcept { return 4 * block_px + 2 * border_px; }
};

/// Hard-edged flat blocks, optional solid frame. Throws InvalidArgument for
/// block_px < 1 or border_px < 0.
RasterImage Render(const CodeMatrix& matrix, const RenderSpec& spec = {});

/// Opaque copy of `code` into `host` at (x, y). Throws OutOfBounds.
RasterImage Embed(const RasterImage& host, const RasterImage& code, int x, int y);

/// Throws OutOfBounds if the rectangle leaves the image.
RasterImage Crop(const RasterImage& image, int x, int y, int width, int height);

/// Center pixel of each of the 16 cells, row-major. Throws DimensionMismatch.
std::array<Rgb, CellCount> ReadCellColors(const RasterImage& image, const RenderSpec& spec);

} // namespace cbcode
