// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_REFERENCE_H
#define SIMWAVE_REFERENCE_H

#include "simwave/cascade.hpp"
#include "simwave/metrics.hpp"

// Serial reference implementations. These stay deliberately naive (entrywise
// loops, per-layer recomputation, explicit traces) and are used by the tests
// and the kernel benchmark as independent baselines for the parallel paths.
namespace simwave::ref
{

PropagationOperators build_operators(const SimGeometry& geom);

// Naive left-to-right products; A_l and C_l each recomputed from scratch.
CascadeState compose(const PhaseState& phases, const PropagationOperators& ops);

// tr(G w w^H G^H R) via the explicit O(N^3) matrix product.
double trace_term_explicit(const cmat& response, const cvec& input_column,
                           const cmat& correlation);

RateReport sinr_closed_form(const CascadeState& state, const PropagationOperators& ops,
                            const ChannelStatistics& stats, const PowerAllocation& p);

// Single-stream serial Monte-Carlo estimate of the UatF SINR.
rvec sinr_uatf_mc(const CascadeState& state, const PropagationOperators& ops,
                  const ChannelStatistics& stats, const PowerAllocation& p,
                  int num_samples, std::uint64_t seed);

} // namespace simwave::ref

#endif
