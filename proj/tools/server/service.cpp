/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "service.hpp"

#include "cbcode/error.hpp"
#include "cbcode/png_io.hpp"
#include "cbcode/report_json.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <stdexcept>

namespace cbcode::service {

namespace {

std::string ErrorJson(std::string_view message)
{
	nlohmann::ordered_json j;
	j["error"] = message;
	j["version"] = CBCODE_VERSION_STRING;
	return j.dump();
}

int ParseInt(const std::string& text, const char* name)
{
	int v = 0;
	auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
	if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
		throw std::invalid_argument(std::string(name) + " must be an integer");
	return v;
}

bool ParseBool(const std::string& text, const char* name)
{
	if (text == "1" || text == "true" || text.empty())
		return true;
	if (text == "0" || text == "false")
		return false;
	throw std::invalid_argument(std::string(name) + " must be true or false");
}

Quad ParseRegion(const std::string& text)
{
	Quad q;
	size_t pos = 0;
	for (int i = 0; i < 8; ++i) {
		size_t end = text.find(',', pos);
		if ((i < 7) == (end == std::string::npos))
			throw std::invalid_argument("region expects 8 comma-separated numbers");
		std::string part = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
		double v = 0;
		auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
		if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
			throw std::invalid_argument("region expects 8 comma-separated numbers");
		(i % 2 ? q[i / 2].y : q[i / 2].x) = v;
		pos = end + 1;
	}
	return q;
}

Params CollectParams(const httplib::Request& req)
{
	Params p(req.params.begin(), req.params.end());
	if (req.is_multipart_form_data())
		for (const auto& [name, field] : req.files)
			if (field.filename.empty())
				p.emplace(name, field.content);
	return p;
}

} // namespace

DecodeOptions OptionsFromParams(const Params& params)
{
	DecodeOptions o;
	for (const auto& [key, value] : params) {
		if (key == "samples")
			o.sample_points = ParseInt(value, "samples");
		else if (key == "timeout_ms")
			o.timeout_ms = ParseInt(value, "timeout_ms");
		else if (key == "strict_crc")
			o.v_tolerance = ParseBool(value, "strict_crc") ? 0 : DefaultVTolerance;
		else if (key == "region")
			o.region_hint = ParseRegion(value);
		else if (key == "color_correct")
			o.enable_color_correction = ParseBool(value, "color_correct");
		else if (key == "prefilter")
			o.enable_prefilter = ParseBool(value, "prefilter");
	}
	if (o.timeout_ms > MaxTimeoutMs)
		o.timeout_ms = MaxTimeoutMs;
	try {
		o.validate();
	} catch (const Error& e) {
		throw std::invalid_argument(e.what());
	}
	return o;
}

Reply HandleDecode(std::span<const uint8_t> png, const Params& params)
{
	if (png.size() > MaxUploadBytes)
		return {413, ErrorJson("upload exceeds 16 MiB")};
	if (png.empty())
		return {400, ErrorJson("empty upload")};
	DecodeOptions options;
	try {
		options = OptionsFromParams(params);
	} catch (const std::invalid_argument& e) {
		return {400, ErrorJson(e.what())};
	}
	RasterImage image{1, 1};
	try {
		image = DecodePng(png);
	} catch (const Error& e) {
		return {400, ErrorJson(std::string("malformed PNG: ") + e.what())};
	}
	try {
		DecodeReport r = Decode(image, options);
		return {r.crc_ok ? 200 : 422, ToJson(r, CBCODE_VERSION_STRING)};
	} catch (const Error& e) {
		if (e.code() == ErrorCode::BadHint || e.code() == ErrorCode::InvalidArgument)
			return {400, ErrorJson(e.what())};
		return {500, ErrorJson(e.what())};
	}
}

std::string HealthJson(double uptime_s)
{
	nlohmann::ordered_json j;
	j["status"] = "ok";
	j["version"] = CBCODE_VERSION_STRING;
	j["uptime_s"] = uptime_s;
	return j.dump();
}

void Configure(httplib::Server& server)
{
	const auto started = std::chrono::steady_clock::now();
	server.set_payload_max_length(MaxUploadBytes);

	server.Post("/v1/decode", [](const httplib::Request& req, httplib::Response& res) {
		Reply reply;
		try {
			std::string upload;
			std::string_view bytes = req.body;
			if (req.is_multipart_form_data()) {
				if (req.has_file("image"))
					upload = req.get_file_value("image").content;
				bytes = upload;
			}
			reply = HandleDecode({reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size()}, CollectParams(req));
		} catch (const std::exception& e) {
			reply = {500, ErrorJson(e.what())};
		}
		res.status = reply.status;
		res.set_content(reply.body, "application/json");
	});

	server.Get("/v1/health", [started](const httplib::Request&, httplib::Response& res) {
		std::chrono::duration<double> up = std::chrono::steady_clock::now() - started;
		res.set_content(HealthJson(up.count()), "application/json");
	});
}

int RunServer()
{
	int port = 8080;
	if (const char* env = std::getenv("PORT"); env && *env) {
		try {
			port = ParseInt(env, "PORT");
		} catch (const std::invalid_argument&) {
			port = 0;
		}
		if (port < 1 || port > 65535) {
			std::cerr << "PORT must be in 1..65535\n";
			return 1;
		}
	}
	httplib::Server server;
	Configure(server);
	std::cerr << "cbcode service " << CBCODE_VERSION_STRING << " listening on :" << port << "\n";
	return server.listen("0.0.0.0", port) ? 0 : 1;
}

} // namespace cbcode::service
