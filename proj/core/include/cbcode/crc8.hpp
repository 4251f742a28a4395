#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <span>

namespace cbcode {

/// Generator x^8 + x^2 + x + 1, MSB first, init 0x00, no output XOR.
inline constexpr uint8_t Crc8Polynomial = 0x07;

/// Table-driven remainder of message * x^8 modulo the generator.
uint8_t Crc8(std::span<const uint8_t> message) noexcept;

/// Recompute-and-compare form.
bool CrcVerify(std::span<const uint8_t> message, uint8_t check) noexcept;

/// Codeword form: divide message || check and test for a zero remainder.
bool CrcVerifyCodeword(std::span<const uint8_t> message, uint8_t check) noexcept;

} // namespace cbcode
