#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/pipeline.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace cbcode {

/// Serializes with the fixed key order found, corners, rotation, mirrored,
/// symbols, payload, crc_read, crc_computed, crc_ok, crc_exact, confidences,
/// attempts, elapsed_ms; unset fields are null. A version, when given, is
/// appended last. indent < 0 yields a single line.
std::string ToJson(const DecodeReport& report, std::optional<std::string_view> version = std::nullopt,
				   int indent = -1);

} // namespace cbcode
