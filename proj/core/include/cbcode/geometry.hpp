#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cmath>
#include <span>

namespace cbcode {

struct PointF
{
	double x = 0, y = 0;

	friend constexpr PointF operator+(PointF a, PointF b) noexcept { return {a.x + b.x, a.y + b.y}; }
	friend constexpr PointF operator-(PointF a, PointF b) noexcept { return {a.x - b.x, a.y - b.y}; }
	friend constexpr PointF operator*(double s, PointF p) noexcept { return {s * p.x, s * p.y}; }
	friend constexpr bool operator==(PointF, PointF) = default;
};

inline double Length(PointF p) noexcept { return std::hypot(p.x, p.y); }
inline double Distance(PointF a, PointF b) noexcept { return Length(a - b); }
inline constexpr double Cross(PointF a, PointF b) noexcept { return a.x * b.y - a.y * b.x; }
inline constexpr double Dot(PointF a, PointF b) noexcept { return a.x * b.x + a.y * b.y; }

struct BoundingBox
{
	double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

	double width() const noexcept { return x1 - x0; }
	double height() const noexcept { return y1 - y0; }
	static BoundingBox Of(std::span<const PointF> points) noexcept;
};

using Quad = std::array<PointF, 4>;

/// True if the four points form a strictly convex polygon in either winding.
bool IsConvexQuad(const Quad& quad) noexcept;
double QuadArea(const Quad& quad) noexcept;

/// Projective 2-D map, row-major 3x3.
class Homography
{
public:
	Homography() = default;
	explicit Homography(const std::array<double, 9>& h) : _h(h) {}

	static Homography Identity() noexcept;
	/// p -> origin + u * axis_u + v * axis_v
	static Homography Affine(PointF origin, PointF axis_u, PointF axis_v) noexcept;
	/// Maps src[i] onto dst[i]. Returns false when the points are degenerate.
	static bool FromQuads(const Quad& src, const Quad& dst, Homography& out) noexcept;

	PointF map(PointF p) const noexcept;
	PointF map(double u, double v) const noexcept { return map(PointF{u, v}); }
	Homography inverse() const noexcept;
	Homography then(const Homography& next) const noexcept; // next(this(p))

	const std::array<double, 9>& coefficients() const noexcept { return _h; }

private:
	std::array<double, 9> _h{1, 0, 0, 0, 1, 0, 0, 0, 1};
};

} // namespace cbcode
