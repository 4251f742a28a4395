#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/image.hpp"

#include <array>
#include <cstdint>

namespace cbcode {

struct LinearRgb
{
	double r = 0, g = 0, b = 0;
};

struct XyzColor
{
	double X = 0, Y = 0, Z = 0;
	bool y_normalized = false;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

struct AdaptationMatrix
{
	Matrix3 m{};

	XyzColor apply(const XyzColor& c) const noexcept;
	static AdaptationMatrix Identity() noexcept;
};

Matrix3 Multiply(const Matrix3& a, const Matrix3& b) noexcept;

/// D65 reference white of the sRGB matrices below.
inline constexpr XyzColor D65White{0.95047, 1.0, 1.08883, true};
inline constexpr XyzColor IlluminantA{1.09850, 1.0, 0.35585, true};

// Standard piecewise sRGB transfer curve.
double SrgbLinearize(uint8_t channel) noexcept;
uint8_t SrgbDelinearize(double value) noexcept;

LinearRgb Linearize(Rgb c) noexcept;
Rgb Delinearize(const LinearRgb& c) noexcept;

/// sRGB (D65) primaries.
XyzColor RgbToXyz(const LinearRgb& c) noexcept;
LinearRgb XyzToRgb(const XyzColor& c) noexcept;

/// Scales so that Y == 1. Leaves zero-luminance colors unchanged.
XyzColor NormalizeY(const XyzColor& c) noexcept;

/// Von Kries adaptation in Bradford cone space mapping source_white onto
/// dest_white. Throws DegenerateWhite if a cone response is not positive.
AdaptationMatrix BradfordMatrix(const XyzColor& source_white, const XyzColor& dest_white);

/// Linearize, adapt estimated_white -> D65 in XYZ, back to sRGB, clamp.
RasterImage CorrectImage(const RasterImage& image, const XyzColor& estimated_white);

/// Separable Gaussian blur, radius ceil(3 sigma), clamped edges.
/// Throws InvalidArgument for sigma <= 0.
RasterImage GaussianPrefilter(const RasterImage& image, double sigma);

inline constexpr int DefaultSnapTolerance = 0x19;

/// The six data grays followed by pure red, green and blue.
const std::array<Rgb, 9>& StandardColors() noexcept;

/// Replaces `pixel` with the standard color whose band contains every channel
/// (|channel - standard| < tolerance); grays additionally need a channel
/// spread below 0x20. Otherwise returns the pixel unchanged.
Rgb SnapToStandard(Rgb pixel, int tolerance = DefaultSnapTolerance) noexcept;

// HSV helpers shared by the locator and classifier.
struct Hsv
{
	double h = 0; // degrees [0, 360)
	double s = 0; // [0, 1]
	double v = 0; // [0, 1]
};

Hsv ToHsv(Rgb c) noexcept;
Hsv ToHsv(const RgbF& c) noexcept;
double Luma(Rgb c) noexcept;

} // namespace cbcode
