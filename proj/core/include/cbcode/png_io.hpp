#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/image.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace cbcode {

// PNG is the only image format. Palette, gray and 16-bit inputs are expanded
// to 8-bit RGB; alpha is dropped. All failures throw Error(IoError).

RasterImage DecodePng(std::span<const uint8_t> bytes);
std::vector<uint8_t> EncodePng(const RasterImage& image);

RasterImage ReadPng(const std::filesystem::path& path);
void WritePng(const std::filesystem::path& path, const RasterImage& image);

} // namespace cbcode
