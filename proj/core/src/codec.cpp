/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cbcode/codec.hpp"
#include "cbcode/crc8.hpp"

#include <algorithm>
#include <limits>

namespace cbcode {

namespace {

constexpr char Letters[DataSymbol::AlphabetSize] = {'0', '3', '6', '9', 'C', 'F'};

} // namespace

std::string_view ToString(ErrorCode code) noexcept
{
	switch (code) {
	case ErrorCode::OutOfRange: return "OutOfRange";
	case ErrorCode::Overflow: return "Overflow";
	case ErrorCode::OutOfBounds: return "OutOfBounds";
	case ErrorCode::DimensionMismatch: return "DimensionMismatch";
	case ErrorCode::DegenerateWhite: return "DegenerateWhite";
	case ErrorCode::NoGrid: return "NoGrid";
	case ErrorCode::NotFound: return "NotFound";
	case ErrorCode::Ambiguous: return "Ambiguous";
	case ErrorCode::BadHint: return "BadHint";
	case ErrorCode::LowConfidence: return "LowConfidence";
	case ErrorCode::VChannelMismatch: return "VChannelMismatch";
	case ErrorCode::CrcFailure: return "CrcFailure";
	case ErrorCode::Timeout: return "Timeout";
	case ErrorCode::IoError: return "IoError";
	case ErrorCode::BadCell: return "BadCell";
	case ErrorCode::InvalidArgument: return "InvalidArgument";
	}
	return "Unknown";
}

DataSymbol DataSymbol::FromIndex(int index)
{
	if (index < 0 || index >= AlphabetSize)
		throw Error(ErrorCode::OutOfRange, "symbol index out of range");
	return DataSymbol(index);
}

std::optional<DataSymbol> DataSymbol::FromLetter(char letter) noexcept
{
	if (letter == 'c')
		letter = 'C';
	else if (letter == 'f')
		letter = 'F';
	for (int i = 0; i < AlphabetSize; ++i)
		if (Letters[i] == letter)
			return DataSymbol(i);
	return std::nullopt;
}

std::optional<DataSymbol> DataSymbol::FromNibble(uint8_t nibble) noexcept
{
	if (nibble > 0xF || nibble % 3 != 0)
		return std::nullopt;
	return DataSymbol(nibble / 3);
}

char DataSymbol::letter() const noexcept
{
	return Letters[_index];
}

std::optional<SymbolSequence> ParseSymbols(std::string_view text) noexcept
{
	if (text.size() != DataCellCount)
		return std::nullopt;
	SymbolSequence seq;
	for (size_t i = 0; i < text.size(); ++i) {
		auto s = DataSymbol::FromLetter(text[i]);
		if (!s)
			return std::nullopt;
		seq[i] = *s;
	}
	return seq;
}

std::string ToString(const SymbolSequence& seq)
{
	std::string out;
	out.reserve(seq.size());
	for (auto s : seq)
		out.push_back(s.letter());
	return out;
}

const CodeLayout& CodeLayout::Default()
{
	static const CodeLayout layout{};
	return layout;
}

CellRole CodeLayout::role(int cell) const
{
	if (cell < 1 || cell > CellCount)
		throw Error(ErrorCode::BadCell, "cell index must be in 1..16");
	if (cell == red_cell)
		return CellRole::Red;
	if (cell == green_cell)
		return CellRole::Green;
	if (cell == blue_cell)
		return CellRole::Blue;
	if (cell == verify_cell)
		return CellRole::Verify;
	return CellRole::Data;
}

int CodeLayout::dataSlot(int cell) const
{
	auto it = std::find(data_order.begin(), data_order.end(), cell);
	return it == data_order.end() ? -1 : static_cast<int>(it - data_order.begin());
}

void CodeLayout::validate() const
{
	std::array<int, 4> corners = {red_cell, green_cell, blue_cell, verify_cell};
	std::array<int, 4> expected = {1, 4, 13, 16};
	std::sort(corners.begin(), corners.end());
	if (corners != expected)
		throw Error(ErrorCode::InvalidArgument, "P and V roles must occupy the four corner cells");

	std::array<bool, CellCount + 1> seen{};
	for (int cell : data_order) {
		if (cell < 1 || cell > CellCount || seen[cell] || std::binary_search(expected.begin(), expected.end(), cell))
			throw Error(ErrorCode::InvalidArgument, "data_order must cover the 12 non-corner cells once");
		seen[cell] = true;
	}
}

SymbolSequence PayloadToSymbols(Payload value)
{
	if (value >= PayloadLimit)
		throw Error(ErrorCode::OutOfRange, "payload must be below 6^12");
	SymbolSequence seq;
	for (int i = DataCellCount - 1; i >= 0; --i) {
		seq[i] = DataSymbol::FromIndex(static_cast<int>(value % DataSymbol::AlphabetSize));
		value /= DataSymbol::AlphabetSize;
	}
	return seq;
}

Payload SymbolsToPayload(const SymbolSequence& seq) noexcept
{
	Payload value = 0;
	for (auto s : seq)
		value = value * DataSymbol::AlphabetSize + s.index();
	return value;
}

std::array<uint8_t, 6> Pack(const SymbolSequence& seq) noexcept
{
	std::array<uint8_t, 6> bytes{};
	for (int k = 0; k < DataCellCount; ++k) {
		uint8_t nib = seq[k].nibble();
		bytes[k / 2] |= (k % 2 == 0) ? static_cast<uint8_t>(nib << 4) : nib;
	}
	return bytes;
}

Rgb CodeMatrix::cellColor(int cell) const
{
	switch (layout.role(cell)) {
	case CellRole::Red: return {255, 0, 0};
	case CellRole::Green: return {0, 255, 0};
	case CellRole::Blue: return {0, 0, 255};
	case CellRole::Verify: return {crc, crc, crc};
	case CellRole::Data: {
		uint8_t g = data[layout.dataSlot(cell)].gray();
		return {g, g, g};
	}
	}
	return {};
}

CodeMatrix BuildMatrix(const SymbolSequence& seq, const CodeLayout& layout)
{
	layout.validate();
	auto packed = Pack(seq);
	return CodeMatrix{layout, seq, Crc8(packed)};
}

SequenceWithCrc MatrixToSequence(const CodeMatrix& matrix) noexcept
{
	return {matrix.data, matrix.crc};
}

uint64_t Capacity(uint64_t alphabet_size, uint64_t data_blocks)
{
	if (alphabet_size < 1 || data_blocks < 1)
		throw Error(ErrorCode::InvalidArgument, "capacity needs alphabet_size >= 1 and data_blocks >= 1");
	uint64_t result = 1;
	for (uint64_t i = 0; i < data_blocks; ++i) {
		if (result > std::numeric_limits<uint64_t>::max() / alphabet_size)
			throw Error(ErrorCode::Overflow, "capacity exceeds 64-bit range");
		result *= alphabet_size;
	}
	return result;
}

} // namespace cbcode
