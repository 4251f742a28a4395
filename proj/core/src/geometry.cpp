/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace cbcode {

BoundingBox BoundingBox::Of(std::span<const PointF> points) noexcept
{
	if (points.empty())
		return {};
	BoundingBox b{points[0].x, points[0].y, points[0].x, points[0].y};
	for (auto p : points) {
		b.x0 = std::min(b.x0, p.x);
		b.y0 = std::min(b.y0, p.y);
		b.x1 = std::max(b.x1, p.x);
		b.y1 = std::max(b.y1, p.y);
	}
	return b;
}

bool IsConvexQuad(const Quad& q) noexcept
{
	int sign = 0;
	for (int i = 0; i < 4; ++i) {
		double c = Cross(q[(i + 1) % 4] - q[i], q[(i + 2) % 4] - q[(i + 1) % 4]);
		if (std::abs(c) < 1e-9)
			return false;
		int s = c > 0 ? 1 : -1;
		if (sign == 0)
			sign = s;
		else if (s != sign)
			return false;
	}
	return true;
}

double QuadArea(const Quad& q) noexcept
{
	double a = 0;
	for (int i = 0; i < 4; ++i)
		a += Cross(q[i], q[(i + 1) % 4]);
	return std::abs(a) / 2;
}

Homography Homography::Identity() noexcept
{
	return {};
}

Homography Homography::Affine(PointF origin, PointF axis_u, PointF axis_v) noexcept
{
	return Homography({axis_u.x, axis_v.x, origin.x, axis_u.y, axis_v.y, origin.y, 0, 0, 1});
}

bool Homography::FromQuads(const Quad& src, const Quad& dst, Homography& out) noexcept
{
	Eigen::Matrix<double, 8, 8> a;
	Eigen::Matrix<double, 8, 1> b;
	for (int i = 0; i < 4; ++i) {
		double x = src[i].x, y = src[i].y, u = dst[i].x, v = dst[i].y;
		a.row(2 * i) << x, y, 1, 0, 0, 0, -u * x, -u * y;
		a.row(2 * i + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y;
		b(2 * i) = u;
		b(2 * i + 1) = v;
	}
	Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(a);
	if (!lu.isInvertible())
		return false;
	Eigen::Matrix<double, 8, 1> h = lu.solve(b);
	out = Homography({h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1.0});
	return true;
}

PointF Homography::map(PointF p) const noexcept
{
	const auto& h = _h;
	double w = h[6] * p.x + h[7] * p.y + h[8];
	return {(h[0] * p.x + h[1] * p.y + h[2]) / w, (h[3] * p.x + h[4] * p.y + h[5]) / w};
}

Homography Homography::inverse() const noexcept
{
	Eigen::Matrix3d m;
	m << _h[0], _h[1], _h[2], _h[3], _h[4], _h[5], _h[6], _h[7], _h[8];
	Eigen::Matrix3d inv = m.inverse();
	inv /= inv(2, 2);
	return Homography({inv(0, 0), inv(0, 1), inv(0, 2), inv(1, 0), inv(1, 1), inv(1, 2), inv(2, 0), inv(2, 1), inv(2, 2)});
}

Homography Homography::then(const Homography& next) const noexcept
{
	std::array<double, 9> r{};
	const auto& a = next._h;
	const auto& b = _h;
	for (int i = 0; i < 3; ++i)
		for (int j = 0; j < 3; ++j)
			for (int k = 0; k < 3; ++k)
				r[i * 3 + j] += a[i * 3 + k] * b[k * 3 + j];
	return Homography(r);
}

} // namespace cbcode
