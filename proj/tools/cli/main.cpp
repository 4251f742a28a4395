/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

int main(int argc, char** argv)
{
	return cbcode::cli::RunMain(argc, argv);
}
