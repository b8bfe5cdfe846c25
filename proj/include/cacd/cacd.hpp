// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Umbrella header.

#ifndef CACD_CACD_HPP
#define CACD_CACD_HPP

#include "cacd/coding.hpp"
#include "cacd/continuum.hpp"
#include "cacd/demand.hpp"
#include "cacd/error.hpp"
#include "cacd/experiment.hpp"
#include "cacd/metrics.hpp"
#include "cacd/routing.hpp"
#include "cacd/topology.hpp"
#include "cacd/unit_interval.hpp"

#endif  // CACD_CACD_HPP
