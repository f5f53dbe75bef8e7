// Copyright 2026 The qsd Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "coupon.hpp"
#include "determinant.hpp"
#include "eigensolvers.hpp"
#include "estimator.hpp"
#include "fcidump.hpp"
#include "ground_state.hpp"
#include "io.hpp"
#include "pauli.hpp"
#include "qsci.hpp"
#include "qubit_hamiltonian.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "sqd.hpp"
#include "statevector.hpp"
#include "version.hpp"
#include "vqe.hpp"
