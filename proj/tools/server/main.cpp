/*
* Copyright 2026 The cbcode Authors
*/
// SPDX-License-Identifier: Apache-2.0

#include "service.hpp"

int main()
{
	return cbcode::service::RunServer();
}
