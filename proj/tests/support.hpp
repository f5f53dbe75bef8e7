// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <qsd/fcidump.hpp>

#include <string>

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(QSD_DATA_DIR) + "/" + name; }

inline qsd::MolecularIntegrals load(const std::string& name) { return qsd::read_fcidump(data_path(name)); }

inline constexpr double kFciWater = -75.01259;
inline constexpr double kHfWater = -74.9619;

}  // namespace testing
