/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/png_io.hpp"
#include "cbcode/error.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>

namespace cbcode {

namespace {

struct PngImage
{
	png_image image;
	PngImage()
	{
		std::memset(&image, 0, sizeof(image));
		image.version = PNG_IMAGE_VERSION;
	}
	~PngImage() { png_image_free(&image); }
	PngImage(const PngImage&) = delete;
	PngImage& operator=(const PngImage&) = delete;
};

[[noreturn]] void Fail(const std::string& what, const png_image& image)
{
	throw Error(ErrorCode::IoError, what + ": " + image.message);
}

} // namespace

RasterImage DecodePng(std::span<const uint8_t> bytes)
{
	if (bytes.empty())
		throw Error(ErrorCode::IoError, "empty PNG buffer");
	PngImage png;
	if (!png_image_begin_read_from_memory(&png.image, bytes.data(), bytes.size()))
		Fail("cannot parse PNG header", png.image);
	png.image.format = PNG_FORMAT_RGB;
	if (png.image.width == 0 || png.image.height == 0 || png.image.width > 1u << 15 || png.image.height > 1u << 15)
		throw Error(ErrorCode::IoError, "unsupported PNG dimensions");

	RasterImage out(static_cast<int>(png.image.width), static_cast<int>(png.image.height));
	png_color background{255, 255, 255};
	auto* buffer = reinterpret_cast<uint8_t*>(out.pixels().data());
	static_assert(sizeof(Rgb) == 3);
	if (!png_image_finish_read(&png.image, &background, buffer, 0, nullptr))
		Fail("cannot decode PNG data", png.image);
	return out;
}

std::vector<uint8_t> EncodePng(const RasterImage& image)
{
	PngImage png;
	png.image.width = static_cast<png_uint_32>(image.width());
	png.image.height = static_cast<png_uint_32>(image.height());
	png.image.format = PNG_FORMAT_RGB;
	const auto* buffer = reinterpret_cast<const uint8_t*>(image.pixels().data());

	png_alloc_size_t size = 0;
	if (!png_image_write_to_memory(&png.image, nullptr, &size, 0, buffer, 0, nullptr))
		Fail("cannot size PNG output", png.image);
	std::vector<uint8_t> out(size);
	if (!png_image_write_to_memory(&png.image, out.data(), &size, 0, buffer, 0, nullptr))
		Fail("cannot encode PNG", png.image);
	out.resize(size);
	return out;
}

RasterImage ReadPng(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error(ErrorCode::IoError, "cannot open " + path.string());
	std::vector<uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
	return DecodePng(bytes);
}

void WritePng(const std::filesystem::path& path, const RasterImage& image)
{
	auto bytes = EncodePng(image);
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out)
		throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
	out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
	if (!out)
		throw Error(ErrorCode::IoError, "short write to " + path.string());
}

} // namespace cbcode
