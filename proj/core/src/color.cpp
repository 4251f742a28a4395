/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/color.hpp"
#include "cbcode/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace cbcode {

namespace {

// sRGB to XYZ, D65 reference white.
constexpr Matrix3 RgbToXyzMatrix = {{
	{0.4124564, 0.3575761, 0.1804375},
	{0.2126729, 0.7151522, 0.0721750},
	{0.0193339, 0.1191920, 0.9503041},
}};

constexpr Matrix3 BradfordCone = {{
	{0.8951000, 0.2664000, -0.1614000},
	{-0.7502000, 1.7135000, 0.0367000},
	{0.0389000, -0.0685000, 1.0296000},
}};

Eigen::Matrix3d ToEigen(const Matrix3& m)
{
	Eigen::Matrix3d e;
	for (int i = 0; i < 3; ++i)
		for (int j = 0; j < 3; ++j)
			e(i, j) = m[i][j];
	return e;
}

Matrix3 FromEigen(const Eigen::Matrix3d& e)
{
	Matrix3 m;
	for (int i = 0; i < 3; ++i)
		for (int j = 0; j < 3; ++j)
			m[i][j] = e(i, j);
	return m;
}

const Eigen::Matrix3d& XyzToRgbMatrix()
{
	static const Eigen::Matrix3d inv = ToEigen(RgbToXyzMatrix).inverse();
	return inv;
}

std::array<double, 3> Apply(const Matrix3& m, double a, double b, double c) noexcept
{
	return {m[0][0] * a + m[0][1] * b + m[0][2] * c, m[1][0] * a + m[1][1] * b + m[1][2] * c,
			m[2][0] * a + m[2][1] * b + m[2][2] * c};
}

uint8_t ClampByte(double v) noexcept
{
	return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

} // namespace

XyzColor AdaptationMatrix::apply(const XyzColor& c) const noexcept
{
	auto v = Apply(m, c.X, c.Y, c.Z);
	return {v[0], v[1], v[2], false};
}

AdaptationMatrix AdaptationMatrix::Identity() noexcept
{
	return {{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
}

Matrix3 Multiply(const Matrix3& a, const Matrix3& b) noexcept
{
	Matrix3 r{};
	for (int i = 0; i < 3; ++i)
		for (int j = 0; j < 3; ++j)
			for (int k = 0; k < 3; ++k)
				r[i][j] += a[i][k] * b[k][j];
	return r;
}

double SrgbLinearize(uint8_t channel) noexcept
{
	double c = channel / 255.0;
	return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

uint8_t SrgbDelinearize(double value) noexcept
{
	double v = std::clamp(value, 0.0, 1.0);
	double c = v <= 0.0031308 ? v * 12.92 : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
	return ClampByte(c * 255.0);
}

LinearRgb Linearize(Rgb c) noexcept
{
	return {SrgbLinearize(c.r), SrgbLinearize(c.g), SrgbLinearize(c.b)};
}

Rgb Delinearize(const LinearRgb& c) noexcept
{
	return {SrgbDelinearize(c.r), SrgbDelinearize(c.g), SrgbDelinearize(c.b)};
}

XyzColor RgbToXyz(const LinearRgb& c) noexcept
{
	auto v = Apply(RgbToXyzMatrix, c.r, c.g, c.b);
	return {v[0], v[1], v[2], false};
}

LinearRgb XyzToRgb(const XyzColor& c) noexcept
{
	Eigen::Vector3d v = XyzToRgbMatrix() * Eigen::Vector3d(c.X, c.Y, c.Z);
	return {v[0], v[1], v[2]};
}

XyzColor NormalizeY(const XyzColor& c) noexcept
{
	if (c.Y <= 0)
		return c;
	return {c.X / c.Y, 1.0, c.Z / c.Y, true};
}

AdaptationMatrix BradfordMatrix(const XyzColor& source_white, const XyzColor& dest_white)
{
	const Eigen::Matrix3d cone = ToEigen(BradfordCone);
	Eigen::Vector3d src = cone * Eigen::Vector3d(source_white.X, source_white.Y, source_white.Z);
	Eigen::Vector3d dst = cone * Eigen::Vector3d(dest_white.X, dest_white.Y, dest_white.Z);
	if ((src.array() <= 0).any() || (dst.array() <= 0).any())
		throw Error(ErrorCode::DegenerateWhite, "white point has a non-positive cone response");
	Eigen::Matrix3d scale = (dst.array() / src.array()).matrix().asDiagonal();
	return {FromEigen(cone.inverse() * scale * cone)};
}

RasterImage CorrectImage(const RasterImage& image, const XyzColor& estimated_white)
{
	const Eigen::Matrix3d adapt = ToEigen(BradfordMatrix(estimated_white, D65White).m);
	// Work directly in linear RGB: RGB->XYZ, adapt, XYZ->RGB collapses to one matrix.
	const Matrix3 m = FromEigen(XyzToRgbMatrix() * adapt * ToEigen(RgbToXyzMatrix));

	std::array<double, 256> lut;
	for (int i = 0; i < 256; ++i)
		lut[i] = SrgbLinearize(static_cast<uint8_t>(i));

	RasterImage out = image;
	for (auto& p : out.pixels()) {
		auto v = Apply(m, lut[p.r], lut[p.g], lut[p.b]);
		p = {SrgbDelinearize(v[0]), SrgbDelinearize(v[1]), SrgbDelinearize(v[2])};
	}
	return out;
}

RasterImage GaussianPrefilter(const RasterImage& image, double sigma)
{
	if (!(sigma > 0))
		throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
	const int radius = static_cast<int>(std::ceil(3 * sigma));
	std::vector<double> kernel(2 * radius + 1);
	double sum = 0;
	for (int i = -radius; i <= radius; ++i)
		sum += kernel[i + radius] = std::exp(-(i * i) / (2 * sigma * sigma));
	for (auto& k : kernel)
		k /= sum;

	const int w = image.width(), h = image.height();
	std::vector<std::array<double, 3>> tmp(static_cast<size_t>(w) * h);
	for (int y = 0; y < h; ++y)
		for (int x = 0; x < w; ++x) {
			std::array<double, 3> acc{};
			for (int i = -radius; i <= radius; ++i) {
				Rgb p = image.clamped(x + i, y);
				double k = kernel[i + radius];
				acc[0] += k * p.r;
				acc[1] += k * p.g;
				acc[2] += k * p.b;
			}
			tmp[static_cast<size_t>(y) * w + x] = acc;
		}

	RasterImage out(w, h);
	for (int y = 0; y < h; ++y)
		for (int x = 0; x < w; ++x) {
			std::array<double, 3> acc{};
			for (int i = -radius; i <= radius; ++i) {
				const auto& p = tmp[static_cast<size_t>(std::clamp(y + i, 0, h - 1)) * w + x];
				double k = kernel[i + radius];
				acc[0] += k * p[0];
				acc[1] += k * p[1];
				acc[2] += k * p[2];
			}
			out.at(x, y) = {ClampByte(acc[0]), ClampByte(acc[1]), ClampByte(acc[2])};
		}
	return out;
}

const std::array<Rgb, 9>& StandardColors() noexcept
{
	static const std::array<Rgb, 9> colors = {{
		{0x00, 0x00, 0x00},
		{0x33, 0x33, 0x33},
		{0x66, 0x66, 0x66},
		{0x99, 0x99, 0x99},
		{0xCC, 0xCC, 0xCC},
		{0xFF, 0xFF, 0xFF},
		{0xFF, 0x00, 0x00},
		{0x00, 0xFF, 0x00},
		{0x00, 0x00, 0xFF},
	}};
	return colors;
}

Rgb SnapToStandard(Rgb pixel, int tolerance) noexcept
{
	const int spread = std::max({pixel.r, pixel.g, pixel.b}) - std::min({pixel.r, pixel.g, pixel.b});
	const auto& standards = StandardColors();
	for (size_t i = 0; i < standards.size(); ++i) {
		Rgb s = standards[i];
		bool inside = std::abs(pixel.r - s.r) < tolerance && std::abs(pixel.g - s.g) < tolerance
					  && std::abs(pixel.b - s.b) < tolerance;
		if (!inside)
			continue;
		if (i < 6 && spread >= 0x20)
			continue;
		return s;
	}
	return pixel;
}

Hsv ToHsv(const RgbF& c) noexcept
{
	double r = c.r / 255.0, g = c.g / 255.0, b = c.b / 255.0;
	double mx = std::max({r, g, b}), mn = std::min({r, g, b});
	double d = mx - mn;
	Hsv out;
	out.v = mx;
	out.s = mx > 0 ? d / mx : 0;
	if (d <= 0)
		return out;
	double h;
	if (mx == r)
		h = 60 * std::fmod((g - b) / d, 6.0);
	else if (mx == g)
		h = 60 * ((b - r) / d + 2);
	else
		h = 60 * ((r - g) / d + 4);
	if (h < 0)
		h += 360;
	out.h = h;
	return out;
}

Hsv ToHsv(Rgb c) noexcept
{
	return ToHsv(RgbF{double(c.r), double(c.g), double(c.b)});
}

double Luma(Rgb c) noexcept
{
	return 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
}

} // namespace cbcode
