// ngma-sim: rate-level simulator for multi-antenna NOMA/SDMA multiple access
// Copyright (C) 2026 The ngma-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NGMA_REGIONS_HPP
#define NGMA_REGIONS_HPP

#include <vector>

namespace ngma
{

/// Two single-antenna users. SNRs are linear |h_k|^2 / sigma^2 at unit power.
struct RegionSpec
{
    double snr_1 = 10.0;
    double snr_2 = 1.0;
    double power_budget = 1.0;
    int grid_points = 1001;
};

struct RatePair
{
    double r1 = 0.0;
    double r2 = 0.0;
};

/// Boundary points sorted by increasing R1.
struct RegionBoundary
{
    std::vector<RatePair> points;
};

enum class OmaPower
{
    reallocated, ///< each user concentrates its power in its own share (p / share inside the log)
    fixed        ///< each user keeps its nominal power in its own share
};

/// Superposition coding with SIC at the stronger user, p_1 swept over [0, P]
/// and p_2 = P - p_1.
RegionBoundary bc_noma_boundary(const RegionSpec &spec);

/// Pareto frontier of time sharing tau and power split p_1 + p_2 = P.
RegionBoundary bc_oma_boundary(const RegionSpec &spec, OmaPower power = OmaPower::reallocated);

/// MAC capacity pentagon at full powers: both axis faces, both SIC corners and
/// the time-sharing segment between them.
RegionBoundary mac_noma_boundary(const RegionSpec &spec);

/// Orthogonal bandwidth split alpha in [0, 1], each user at its power cap.
RegionBoundary mac_oma_boundary(const RegionSpec &spec, OmaPower power = OmaPower::reallocated);

RatePair bc_noma_point(const RegionSpec &spec, double p1);
RatePair bc_oma_point(const RegionSpec &spec, double tau, double p1, OmaPower power = OmaPower::reallocated);
RatePair mac_oma_point(const RegionSpec &spec, double alpha, OmaPower power = OmaPower::reallocated);

/// SIC corners of the MAC pentagon at full powers.
struct MacCorners
{
    RatePair decode_user1_first;
    RatePair decode_user2_first;
};
MacCorners mac_corners(const RegionSpec &spec);

/// Bandwidth share of user 1 at which orthogonal access meets the sum-capacity face.
double mac_oma_tangent_share(const RegionSpec &spec);

/// Signed distance-like slack of a point to the BC capacity region, in bit/s/Hz:
/// non-negative inside, negative outside.
double bc_region_slack(const RegionSpec &spec, RatePair point);

/// min over the three pentagon faces of (face bound - point value).
double mac_region_slack(const RegionSpec &spec, RatePair point);

/// Keeps points not weakly dominated by another, sorted by increasing R1.
RegionBoundary pareto_frontier(std::vector<RatePair> points);

} // namespace ngma

#endif
