/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/crc8.hpp"

#include <array>

namespace cbcode {

namespace {

constexpr std::array<uint8_t, 256> MakeTable()
{
	std::array<uint8_t, 256> table{};
	for (int dividend = 0; dividend < 256; ++dividend) {
		uint8_t remainder = static_cast<uint8_t>(dividend);
		for (int bit = 0; bit < 8; ++bit)
			remainder = (remainder & 0x80) ? static_cast<uint8_t>((remainder << 1) ^ Crc8Polynomial)
										   : static_cast<uint8_t>(remainder << 1);
		table[dividend] = remainder;
	}
	return table;
}

constexpr auto Table = MakeTable();

uint8_t Update(uint8_t crc, std::span<const uint8_t> bytes) noexcept
{
	for (uint8_t b : bytes)
		crc = Table[crc ^ b];
	return crc;
}

} // namespace

uint8_t Crc8(std::span<const uint8_t> message) noexcept
{
	return Update(0x00, message);
}

bool CrcVerify(std::span<const uint8_t> message, uint8_t check) noexcept
{
	return Crc8(message) == check;
}

bool CrcVerifyCodeword(std::span<const uint8_t> message, uint8_t check) noexcept
{
	uint8_t tail[1] = {check};
	return Update(Update(0x00, message), tail) == 0;
}

} // namespace cbcode
