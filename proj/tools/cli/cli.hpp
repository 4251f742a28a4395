#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/codec.hpp"
#include "cbcode/geometry.hpp"
#include "cbcode/image.hpp"
#include "cbcode/pipeline.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cbcode::cli {

enum ExitCode : int
{
	ExitOk = 0,
	ExitUsage = 1,
	ExitNotFound = 2,
	ExitCrcFailure = 3,
	ExitTimeout = 4,
	ExitIo = 5,
};

ExitCode ExitCodeFor(DecodeStatus status) noexcept;

/// A 12-letter string over the alphabet is a symbol sequence; otherwise a
/// decimal integer below PayloadLimit.
std::optional<Payload> ParseData(std::string_view text) noexcept;

/// "x1,y1,x2,y2,x3,y3,x4,y4" in red, V, blue, green order.
std::optional<Quad> ParseRegion(std::string_view text) noexcept;

/// "RRGGBB", optionally prefixed with '#'.
std::optional<Rgb> ParseHexColor(std::string_view text) noexcept;

/// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int RunMain(int argc, char** argv);

} // namespace cbcode::cli
