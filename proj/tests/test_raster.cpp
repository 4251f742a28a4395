/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/codec.hpp"
#include "cbcode/error.hpp"
#include "cbcode/png_io.hpp"
#include "cbcode/raster.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace cbcode;

namespace {

CodeMatrix RandomMatrix(std::mt19937_64& rng)
{
	return BuildMatrix(PayloadToSymbols(rng() % PayloadLimit));
}

ErrorCode CodeOf(auto&& fn)
{
	try {
		fn();
	} catch (const Error& e) {
		return e.code();
	}
	FAIL("expected an error");
	return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("render dimensions")
{
	CodeMatrix m = BuildMatrix(PayloadToSymbols(0));
	CHECK(Render(m).width() == 260);
	CHECK(Render(m).height() == 260);
	CHECK(Render(m, {1, 0, White}).width() == 4);
	CHECK(Render(m, {65, 8, White}).width() == 276);
	CHECK(CodeOf([&] { Render(m, {0, 0, White}); }) == ErrorCode::InvalidArgument);
	CHECK(CodeOf([&] { Render(m, {4, -1, White}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("render paints flat blocks and the frame")
{
	std::mt19937_64 rng(1);
	CodeMatrix m = RandomMatrix(rng);
	const RenderSpec spec{7, 3, Rgb{10, 20, 30}};
	RasterImage img = Render(m, spec);
	for (int y = 0; y < img.height(); ++y)
		for (int x = 0; x < img.width(); ++x) {
			int bx = x - spec.border_px, by = y - spec.border_px;
			bool inside = bx >= 0 && by >= 0 && bx < 4 * spec.block_px && by < 4 * spec.block_px;
			Rgb expected = inside ? m.cellColor(1 + (by / spec.block_px) * 4 + bx / spec.block_px) : spec.border_color;
			REQUIRE(img.at(x, y) == expected);
		}
	CHECK(Render(m, spec) == img);
}

TEST_CASE("read_cell_colors inverts render")
{
	std::mt19937_64 rng(2);
	for (int block : {1, 2, 8, 65}) {
		CodeMatrix m = RandomMatrix(rng);
		RenderSpec spec{block, block % 3, White};
		auto cells = ReadCellColors(Render(m, spec), spec);
		for (int c = 1; c <= CellCount; ++c)
			CHECK(cells[c - 1] == m.cellColor(c));
	}
	CodeMatrix m = RandomMatrix(rng);
	auto cells = ReadCellColors(Render(m), {});
	CHECK(cells[0] == Rgb{255, 0, 0});
	CHECK(cells[15] == Rgb{0, 0, 255});
	CHECK(CodeOf([&] { ReadCellColors(Render(m), {64, 0, White}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("embed and crop")
{
	std::mt19937_64 rng(3);
	RasterImage code = Render(RandomMatrix(rng), {1, 0, White});
	RasterImage host(28, 28, Rgb{0x80, 0x70, 0x60});
	RasterImage out = Embed(host, code, 20, 2);
	int changed = 0;
	for (int y = 0; y < 28; ++y)
		for (int x = 0; x < 28; ++x)
			changed += !(out.at(x, y) == host.at(x, y));
	CHECK(changed <= 16);
	CHECK(Crop(out, 20, 2, 4, 4) == code);
	for (int y = 0; y < 28; ++y)
		for (int x = 0; x < 28; ++x)
			if (x < 20 || y < 2 || y >= 6)
				REQUIRE(out.at(x, y) == host.at(x, y));

	RasterImage same(4, 4, Black);
	CHECK(Embed(same, code, 0, 0) == code);
	CHECK(CodeOf([&] { Embed(host, code, 25, 0); }) == ErrorCode::OutOfBounds);
	CHECK(CodeOf([&] { Embed(host, code, -1, 0); }) == ErrorCode::OutOfBounds);
	CHECK(CodeOf([&] { Crop(host, 20, 20, 10, 4); }) == ErrorCode::OutOfBounds);
}

TEST_CASE("image construction")
{
	CHECK(CodeOf([] { RasterImage(0, 3); }) == ErrorCode::InvalidArgument);
	RasterImage img(3, 2, Black);
	CHECK(img.pixels().size() == 6);
	CHECK(img.clamped(-5, 9) == Black);
}

TEST_CASE("png round trip is lossless")
{
	std::mt19937_64 rng(4);
	RasterImage img = Render(RandomMatrix(rng), {9, 2, Rgb{1, 2, 3}});
	img.at(0, 0) = Rgb{17, 201, 99};
	CHECK(DecodePng(EncodePng(img)) == img);

	auto path = std::filesystem::temp_directory_path() / "cbcode_raster_roundtrip.png";
	WritePng(path, img);
	CHECK(ReadPng(path) == img);

	auto bytes = EncodePng(img);
	bytes.resize(bytes.size() / 2);
	CHECK(CodeOf([&] { DecodePng(bytes); }) == ErrorCode::IoError);
	CHECK(CodeOf([] { ReadPng("/nonexistent/cbcode.png"); }) == ErrorCode::IoError);
	std::filesystem::remove(path);
}
