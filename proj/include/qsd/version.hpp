// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace qsd {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace qsd
