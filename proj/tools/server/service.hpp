#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/pipeline.hpp"

#include <httplib.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace cbcode::service {

inline constexpr size_t MaxUploadBytes = 16u << 20;
inline constexpr int MaxTimeoutMs = 10000;

struct Reply
{
	int status = 200;
	std::string body;
};

using Params = std::multimap<std::string, std::string>;

/// Recognized params: samples, timeout_ms, strict_crc, region, color_correct,
/// prefilter. Throws std::invalid_argument for malformed values.
DecodeOptions OptionsFromParams(const Params& params);

/// 200 when crc_ok, 422 with the failure report otherwise, 400 for a
/// malformed upload or option, 413 above MaxUploadBytes.
Reply HandleDecode(std::span<const uint8_t> png, const Params& params);

std::string HealthJson(double uptime_s);

/// Registers /v1/decode and /v1/health and the upload limit.
void Configure(httplib::Server& server);

/// Listens on $PORT (default 8080) until stopped.
int RunServer();

} // namespace cbcode::service
