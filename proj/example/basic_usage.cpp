// Copyright 2026 The dmtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Prints the thermal channel and teleportation figures of merit for a few
// couplings, then the temperature at which the output entanglement dies.

#include <cstdio>

#include "dmtele/dmtele.hpp"

int main() {
    using namespace dmtele;

    std::printf("%6s %6s %6s %10s %10s %10s\n", "J", "Dx", "T", "C_out", "F", "class");
    for (double j : {-1.0, 0.0, 1.0, 3.0}) {
        for (double t : {0.0, 0.5, 1.0}) {
            const SweepRow row = run_point(ChannelParams{j, 1.0, t}, 1.0);
            std::printf("%6.2f %6.2f %6.2f %10.6f %10.6f  %s\n", row.j, row.dx, row.t, row.c_out, row.fidelity,
                        classify_channel(row).label().c_str());
        }
    }

    // Partially entangled input: theta = asin(C_in).
    const InputState in = InputState::from_concurrence(0.6);
    const TeleportOutcome out = teleport(ChannelParams{1.0, 0.5, 0.3}, in.theta);
    std::printf("\nC_in = %.2f -> C_out = %.6f, F = %.6f (h1 = %.6f, h2 = %.6f)\n", out.c_in, out.c_out,
                out.fidelity, out.h1, out.h2);

    for (double dx : {0.0, 1.0, 2.0}) {
        if (const auto tc = critical_temperature(1.0, dx, 1.0, 10.0))
            std::printf("J = 1, Dx = %.1f: output separable above T = %.6f\n", dx, *tc);
        else
            std::printf("J = 1, Dx = %.1f: no threshold below T = 10\n", dx);
    }
    return 0;
}
