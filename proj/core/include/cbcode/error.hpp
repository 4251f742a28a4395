#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>
#include <string>
#include <string_view>

namespace cbcode {

enum class ErrorCode
{
	OutOfRange,
	Overflow,
	OutOfBounds,
	DimensionMismatch,
	DegenerateWhite,
	NoGrid,
	NotFound,
	Ambiguous,
	BadHint,
	LowConfidence,
	VChannelMismatch,
	CrcFailure,
	Timeout,
	IoError,
	BadCell,
	InvalidArgument,
};

std::string_view ToString(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
public:
	Error(ErrorCode code, const std::string& what) : std::runtime_error(what), _code(code) {}

	ErrorCode code() const noexcept { return _code; }

private:
	ErrorCode _code;
};

} // namespace cbcode
