#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/error.hpp"
#include "cbcode/image.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cbcode {

/// One of the six gray data levels. The letter is the cluster name, the nibble
/// is the packed CRC dividend digit and gray = nibble * 0x11 on all channels.
class DataSymbol
{
public:
	static constexpr int AlphabetSize = 6;

	constexpr DataSymbol() = default;

	/// Symbol by alphabet index 0..5 (0, 3, 6, 9, C, F).
	static DataSymbol FromIndex(int index);
	static std::optional<DataSymbol> FromLetter(char letter) noexcept;
	static std::optional<DataSymbol> FromNibble(uint8_t nibble) noexcept;

	constexpr int index() const noexcept { return _index; }
	constexpr uint8_t nibble() const noexcept { return static_cast<uint8_t>(_index * 3); }
	constexpr uint8_t gray() const noexcept { return static_cast<uint8_t>(nibble() * 0x11); }
	char letter() const noexcept;

	friend constexpr bool operator==(DataSymbol, DataSymbol) = default;

private:
	constexpr explicit DataSymbol(int index) : _index(index) {}
	int _index = 0;
};

inline constexpr int DataCellCount = 12;
inline constexpr int CellCount = 16;

using SymbolSequence = std::array<DataSymbol, DataCellCount>;

/// Parses a 12-letter string over {0,3,6,9,C,F} (lower-case c/f accepted).
std::optional<SymbolSequence> ParseSymbols(std::string_view text) noexcept;
std::string ToString(const SymbolSequence& seq);

enum class CellRole : uint8_t { Red, Green, Blue, Verify, Data };

/// Cell indices are 1-based, row-major over the 4x4 grid.
struct CodeLayout
{
	int red_cell = 1;
	int green_cell = 13;
	int blue_cell = 16;
	int verify_cell = 4;
	std::array<int, DataCellCount> data_order = {2, 3, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15};

	static const CodeLayout& Default();

	CellRole role(int cell) const;
	/// Position of `cell` in data_order, or -1 if it is not a data cell.
	int dataSlot(int cell) const;
	/// Throws InvalidArgument when the corner/data invariants do not hold.
	void validate() const;
};

inline constexpr uint64_t PayloadLimit = 2'176'782'336ULL; // 6^12
using Payload = uint64_t;

/// Base-6, most significant digit first, digit i -> i-th alphabet symbol.
SymbolSequence PayloadToSymbols(Payload value);
Payload SymbolsToPayload(const SymbolSequence& seq) noexcept;

/// One nibble per symbol, high nibble first: 12 symbols -> 6 bytes.
std::array<uint8_t, 6> Pack(const SymbolSequence& seq) noexcept;

struct CodeMatrix
{
	CodeLayout layout;
	SymbolSequence data{};
	uint8_t crc = 0;

	/// Color of a 1-based cell index according to its layout role.
	Rgb cellColor(int cell) const;
};

CodeMatrix BuildMatrix(const SymbolSequence& seq, const CodeLayout& layout = CodeLayout::Default());

struct SequenceWithCrc
{
	SymbolSequence data;
	uint8_t crc;
	friend bool operator==(const SequenceWithCrc&, const SequenceWithCrc&) = default;
};

SequenceWithCrc MatrixToSequence(const CodeMatrix& matrix) noexcept;

/// alphabet_size ^ data_blocks with exact 64-bit arithmetic; throws Overflow.
uint64_t Capacity(uint64_t alphabet_size, uint64_t data_blocks);

} // namespace cbcode
