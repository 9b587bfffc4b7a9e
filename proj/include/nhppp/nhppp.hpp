// Copyright 2026 The nhppp-cpp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file nhppp.hpp
/// Umbrella header.
#pragma once

#include "nhppp/batch.hpp"
#include "nhppp/bench.hpp"
#include "nhppp/errors.hpp"
#include "nhppp/illustration.hpp"
#include "nhppp/intensity.hpp"
#include "nhppp/majorizer.hpp"
#include "nhppp/nhppp_general.hpp"
#include "nhppp/ppp_const.hpp"
#include "nhppp/rng_stream.hpp"
#include "nhppp/special_cases.hpp"
#include "nhppp/suite.hpp"
#include "nhppp/types.hpp"
#include "nhppp/validation.hpp"
