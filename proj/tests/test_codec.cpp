/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include "cbcode/codec.hpp"
#include "cbcode/crc8.hpp"
#include "cbcode/error.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <string>

using namespace cbcode;

namespace {

SymbolSequence Seq(const char* text)
{
	auto s = ParseSymbols(text);
	REQUIRE(s.has_value());
	return *s;
}

std::vector<uint8_t> Bytes(std::string_view s)
{
	return {s.begin(), s.end()};
}

template <typename Fn>
void RequireError(ErrorCode code, Fn&& fn)
{
	try {
		fn();
		FAIL("expected an error");
	} catch (const Error& e) {
		CHECK(e.code() == code);
	}
}

} // namespace

TEST_CASE("alphabet is a letter/nibble/gray bijection")
{
	const std::string letters = "0369CF";
	const uint8_t grays[] = {0x00, 0x33, 0x66, 0x99, 0xCC, 0xFF};
	std::set<char> seenLetters;
	std::set<int> seenNibbles;
	for (int i = 0; i < DataSymbol::AlphabetSize; ++i) {
		DataSymbol s = DataSymbol::FromIndex(i);
		CHECK(s.letter() == letters[i]);
		CHECK(s.gray() == grays[i]);
		CHECK(s.gray() == s.nibble() * 0x11);
		CHECK(DataSymbol::FromLetter(s.letter()) == s);
		CHECK(DataSymbol::FromNibble(s.nibble()) == s);
		seenLetters.insert(s.letter());
		seenNibbles.insert(s.nibble());
	}
	CHECK(seenLetters.size() == 6);
	CHECK(seenNibbles.size() == 6);
	CHECK_FALSE(DataSymbol::FromLetter('1').has_value());
	CHECK_FALSE(DataSymbol::FromNibble(0x5).has_value());
	RequireError(ErrorCode::OutOfRange, [] { DataSymbol::FromIndex(6); });
}

TEST_CASE("symbol strings parse and print")
{
	CHECK(ToString(Seq("c3c9f0c3c9f0")) == "C3C9F0C3C9F0");
	CHECK_FALSE(ParseSymbols("C3C9F0C3C9F").has_value());
	CHECK_FALSE(ParseSymbols("C3C9F0C3C9F01").has_value());
	CHECK_FALSE(ParseSymbols("C3C9F0C3C9F1").has_value());
}

TEST_CASE("payload to symbols")
{
	CHECK(ToString(PayloadToSymbols(0)) == "000000000000");
	CHECK(ToString(PayloadToSymbols(7)) == "000000000033");
	CHECK(ToString(PayloadToSymbols(2'176'782'335ULL)) == "FFFFFFFFFFFF");
	CHECK(SymbolsToPayload(Seq("000000000000")) == 0);
	CHECK(SymbolsToPayload(Seq("000000000033")) == 7);
	RequireError(ErrorCode::OutOfRange, [] { PayloadToSymbols(PayloadLimit); });
}

TEST_CASE("payload numbering matches the repeated-division oracle")
{
	std::mt19937_64 rng(11);
	std::uniform_int_distribution<uint64_t> u(0, PayloadLimit - 1);
	for (int i = 0; i < 1000; ++i) {
		uint64_t v = u(rng);
		SymbolSequence s = PayloadToSymbols(v);
		CHECK(ToString(s) == oracle::Base6Letters(v));
		CHECK(SymbolsToPayload(s) == v);
	}
}

TEST_CASE("pack places odd symbols in the high nibble")
{
	using B = std::array<uint8_t, 6>;
	CHECK(Pack(Seq("000000000000")) == B{0, 0, 0, 0, 0, 0});
	CHECK(Pack(Seq("F00000000000")) == B{0xF0, 0, 0, 0, 0, 0});
	CHECK(Pack(Seq("0F0000000000")) == B{0x0F, 0, 0, 0, 0, 0});
	CHECK(Pack(Seq("333333333333")) == B{0x33, 0x33, 0x33, 0x33, 0x33, 0x33});
}

TEST_CASE("crc8 known answers against the long-division oracle")
{
	const auto check = Bytes("123456789");
	CHECK(oracle::Crc8LongDivision(check) == 0xF4);
	CHECK(Crc8(check) == 0xF4);
	const std::vector<uint8_t> zeros(6, 0x00), threes(6, 0x33);
	CHECK(Crc8(zeros) == 0x00);
	CHECK(oracle::Crc8LongDivision(threes) == 0xBE);
	CHECK(Crc8(threes) == 0xBE);
}

TEST_CASE("crc8 agrees with the oracle on random messages")
{
	std::mt19937 rng(3);
	for (int i = 0; i < 300; ++i) {
		std::vector<uint8_t> m(1 + rng() % 16);
		for (auto& b : m)
			b = static_cast<uint8_t>(rng());
		CHECK(Crc8(m) == oracle::Crc8LongDivision(m));
	}
}

TEST_CASE("crc verification forms")
{
	const std::vector<uint8_t> zeros(6, 0x00);
	CHECK(CrcVerify(zeros, 0x00));
	CHECK_FALSE(CrcVerify(zeros, 0x01));

	std::mt19937 rng(5);
	for (int i = 0; i < 1000; ++i) {
		std::vector<uint8_t> m(6);
		for (auto& b : m)
			b = static_cast<uint8_t>(rng());
		uint8_t check = i < 200 ? Crc8(m) : static_cast<uint8_t>(rng());
		if (i < 200)
			CHECK(CrcVerify(m, check));
		CHECK(CrcVerify(m, check) == CrcVerifyCodeword(m, check));
	}
}

TEST_CASE("crc is linear for equal-length messages")
{
	std::mt19937 rng(9);
	for (int i = 0; i < 100; ++i) {
		std::vector<uint8_t> a(6), b(6), x(6);
		for (int k = 0; k < 6; ++k) {
			a[k] = static_cast<uint8_t>(rng());
			b[k] = static_cast<uint8_t>(rng());
			x[k] = a[k] ^ b[k];
		}
		CHECK(Crc8(x) == (Crc8(a) ^ Crc8(b)));
	}
}

TEST_CASE("every single-nibble corruption is detected")
{
	std::mt19937_64 rng(21);
	int undetected = 0;
	for (int m = 0; m < 50; ++m) {
		std::array<uint8_t, 6> msg;
		for (auto& b : msg)
			b = static_cast<uint8_t>(rng());
		const uint8_t check = Crc8(msg);
		for (int pos = 0; pos < 12; ++pos)
			for (uint8_t delta = 1; delta < 16; ++delta) {
				auto bad = msg;
				bad[pos / 2] ^= (pos % 2 == 0) ? static_cast<uint8_t>(delta << 4) : delta;
				undetected += CrcVerify(bad, check);
			}
	}
	CHECK(undetected == 0);
}

TEST_CASE("default layout")
{
	const CodeLayout& l = CodeLayout::Default();
	CHECK(l.role(1) == CellRole::Red);
	CHECK(l.role(13) == CellRole::Green);
	CHECK(l.role(16) == CellRole::Blue);
	CHECK(l.role(4) == CellRole::Verify);
	CHECK(l.role(2) == CellRole::Data);
	CHECK(l.dataSlot(15) == 11);
	CHECK(l.dataSlot(1) == -1);
	CHECK_NOTHROW(l.validate());
	RequireError(ErrorCode::BadCell, [&] { l.role(17); });

	CodeLayout broken = l;
	broken.verify_cell = 2;
	RequireError(ErrorCode::InvalidArgument, [&] { broken.validate(); });
	broken = l;
	broken.data_order[0] = 3;
	RequireError(ErrorCode::InvalidArgument, [&] { broken.validate(); });
}

TEST_CASE("build matrix")
{
	CodeMatrix zero = BuildMatrix(Seq("000000000000"));
	CHECK(zero.crc == 0x00);
	CHECK(zero.cellColor(4) == Rgb{0, 0, 0});
	CHECK(zero.cellColor(1) == Rgb{255, 0, 0});
	CHECK(zero.cellColor(13) == Rgb{0, 255, 0});
	CHECK(zero.cellColor(16) == Rgb{0, 0, 255});

	std::mt19937_64 rng(2);
	for (int i = 0; i < 200; ++i) {
		SymbolSequence s = PayloadToSymbols(rng() % PayloadLimit);
		CodeMatrix m = BuildMatrix(s);
		CHECK(MatrixToSequence(m) == SequenceWithCrc{s, Crc8(Pack(s))});
		CHECK(m.cellColor(4) == Rgb{m.crc, m.crc, m.crc});
		for (int k = 0; k < DataCellCount; ++k) {
			uint8_t g = s[k].gray();
			CHECK(m.cellColor(m.layout.data_order[k]) == Rgb{g, g, g});
		}
	}
}

TEST_CASE("capacity")
{
	CHECK(Capacity(6, 12) == 2'176'782'336ULL);
	CHECK(Capacity(6, 12) == oracle::PowBySquaring(6, 12));
	CHECK(Capacity(6, 12) == PayloadLimit);
	CHECK(Capacity(6, 1) == 6);
	CHECK(Capacity(2, 1) == 2);
	CHECK(Capacity(2, 63) == (1ULL << 63));
	RequireError(ErrorCode::Overflow, [] { Capacity(2, 64); });
	RequireError(ErrorCode::InvalidArgument, [] { Capacity(0, 3); });
}

TEST_CASE("error codes have names")
{
	CHECK(ToString(ErrorCode::CrcFailure) == "CrcFailure");
	Error e(ErrorCode::NotFound, "x");
	CHECK(e.code() == ErrorCode::NotFound);
}
