#pragma once
/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>

// Ten rounds of blocks 1-5 read from a 7.25%-scaled code; the expected
// clusters are C, 3, C, 9, F.
inline constexpr uint32_t ScaledReads[10][5] = {
	{0xD4C9D4, 0x303535, 0xCBCBCB, 0x979897, 0xFFFFFF},
	{0xCECDCE, 0x303131, 0xC9CAC9, 0x919191, 0xFFFFFF},
	{0xCACACA, 0x2C2C2C, 0xCFCECF, 0x979797, 0xFFFFFF},
	{0xCBC5CB, 0x253434, 0xC1C1C1, 0x929292, 0xFFFFFF},
	{0xCFCACF, 0x3F3E3E, 0xC8C8C8, 0x909090, 0xFFFFFF},
	{0xDADADA, 0x323333, 0xCFCCCF, 0x989898, 0xFFFFFF},
	{0xCECACE, 0x283636, 0xD0CDD0, 0x979797, 0xFFFFFF},
	{0xD2CDD2, 0x422F2F, 0xC8C8C8, 0x979797, 0xFFFFFF},
	{0xCFCACF, 0x293636, 0xDCCDCD, 0x939393, 0xFFFFFF},
	{0xD8D8D8, 0x323434, 0xD1CBD1, 0x969696, 0xE8E8E8},
};

inline constexpr int ScaledReadClusters[5] = {4, 1, 4, 3, 5}; // indices into 0,3,6,9,C,F
