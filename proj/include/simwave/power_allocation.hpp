// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_POWER_ALLOCATION_H
#define SIMWAVE_POWER_ALLOCATION_H

#include "simwave/types.hpp"

namespace simwave
{

// Per-user transmit powers under a total budget, in Watts.
struct PowerAllocation
{
    rvec powers;  // p_k >= 0
    double budget = 1.0; // P_T

    static PowerAllocation uniform(int num_users, double total_power)
    {
        PowerAllocation p;
        p.budget = total_power;
        p.powers = rvec::Constant(num_users, total_power / num_users);
        return p;
    }

    bool feasible(double slack = 1e-9) const
    {
        return powers.minCoeff() >= 0.0 && powers.sum() <= budget * (1.0 + slack);
    }
};

} // namespace simwave

#endif
