/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/report_json.hpp"

#include <json.hpp>

namespace cbcode {

std::string ToJson(const DecodeReport& r, std::optional<std::string_view> version, int indent)
{
	using Json = nlohmann::ordered_json;
	auto opt = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };

	Json j;
	j["found"] = r.found;
	if (r.corners) {
		Json corners = Json::array();
		for (PointF p : *r.corners)
			corners.push_back({p.x, p.y});
		j["corners"] = corners;
	} else {
		j["corners"] = nullptr;
	}
	j["rotation"] = opt(r.rotation);
	j["mirrored"] = opt(r.mirrored);
	j["symbols"] = r.symbols ? Json(ToString(*r.symbols)) : Json(nullptr);
	j["payload"] = opt(r.payload);
	j["crc_read"] = opt(r.crc_read);
	j["crc_computed"] = opt(r.crc_computed);
	j["crc_ok"] = r.crc_ok;
	j["crc_exact"] = r.crc_exact;
	j["confidences"] = r.confidences;
	j["attempts"] = r.attempts;
	j["elapsed_ms"] = r.elapsed_ms;
	if (version)
		j["version"] = std::string(*version);
	return j.dump(indent);
}

} // namespace cbcode
