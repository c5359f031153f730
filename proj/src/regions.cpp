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

#include "ngma/regions.hpp"

#include "ngma/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ngma
{
namespace
{

void check_spec(const RegionSpec &spec)
{
    require(std::isfinite(spec.snr_1) && spec.snr_1 > 0 && std::isfinite(spec.snr_2) && spec.snr_2 > 0,
            ErrorKind::InvalidSpec, "SNRs must be finite and positive");
    require(std::isfinite(spec.power_budget) && spec.power_budget > 0, ErrorKind::InvalidSpec,
            "power budget must be finite and positive");
    require(spec.grid_points >= 2, ErrorKind::InvalidSpec, "need at least two grid points");
}

double grid_value(int i, int n, double upper)
{
    if (i == n - 1)
        return upper;
    return upper * static_cast<double>(i) / static_cast<double>(n - 1);
}

// share * log2(1 + snr_power / share); the limit at share = 0 is 0.
double shared_rate(double share, double snr_power, OmaPower power)
{
    if (share <= 0.0)
        return 0.0;
    if (power == OmaPower::fixed)
        return share * rate_from_sinr(snr_power);
    return share * rate_from_sinr(snr_power / share);
}

} // namespace

RatePair bc_noma_point(const RegionSpec &spec, double p1)
{
    const double p2 = spec.power_budget - p1;
    // The stronger user removes the weaker user's signal; the weaker user
    // treats the stronger user's signal as noise.
    if (spec.snr_1 >= spec.snr_2)
        return {rate_from_sinr(p1 * spec.snr_1), rate_from_sinr(p2 * spec.snr_2 / (p1 * spec.snr_2 + 1.0))};
    return {rate_from_sinr(p1 * spec.snr_1 / (p2 * spec.snr_1 + 1.0)), rate_from_sinr(p2 * spec.snr_2)};
}

RegionBoundary bc_noma_boundary(const RegionSpec &spec)
{
    check_spec(spec);
    RegionBoundary boundary;
    for (int i = 0; i < spec.grid_points; ++i)
        boundary.points.push_back(bc_noma_point(spec, grid_value(i, spec.grid_points, spec.power_budget)));
    std::sort(boundary.points.begin(), boundary.points.end(),
              [](const RatePair &a, const RatePair &b) { return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 > b.r2); });
    return boundary;
}

RatePair bc_oma_point(const RegionSpec &spec, double tau, double p1, OmaPower power)
{
    const double p2 = spec.power_budget - p1;
    return {shared_rate(tau, p1 * spec.snr_1, power), shared_rate(1.0 - tau, p2 * spec.snr_2, power)};
}

RegionBoundary bc_oma_boundary(const RegionSpec &spec, OmaPower power)
{
    check_spec(spec);
    std::vector<RatePair> points;
    points.reserve(static_cast<std::size_t>(spec.grid_points) * static_cast<std::size_t>(spec.grid_points));
    for (int t = 0; t < spec.grid_points; ++t)
    {
        const double tau = grid_value(t, spec.grid_points, 1.0);
        for (int i = 0; i < spec.grid_points; ++i)
            points.push_back(bc_oma_point(spec, tau, grid_value(i, spec.grid_points, spec.power_budget), power));
    }
    return pareto_frontier(std::move(points));
}

MacCorners mac_corners(const RegionSpec &spec)
{
    const double a = spec.snr_1 * spec.power_budget;
    const double b = spec.snr_2 * spec.power_budget;
    return {{rate_from_sinr(a / (b + 1.0)), rate_from_sinr(b)}, {rate_from_sinr(a), rate_from_sinr(b / (a + 1.0))}};
}

RegionBoundary mac_noma_boundary(const RegionSpec &spec)
{
    check_spec(spec);
    const auto corners = mac_corners(spec);
    const auto &a = corners.decode_user1_first;
    const auto &b = corners.decode_user2_first;
    const int n = spec.grid_points;

    RegionBoundary boundary;
    for (int i = 0; i < n; ++i) // R2 at its cap, R1 from 0 to corner A
        boundary.points.push_back({grid_value(i, n, a.r1), a.r2});
    for (int i = 1; i < n; ++i) // time sharing between the two SIC orders
    {
        const double t = grid_value(i, n, 1.0);
        boundary.points.push_back({(1.0 - t) * a.r1 + t * b.r1, (1.0 - t) * a.r2 + t * b.r2});
    }
    for (int i = 1; i < n; ++i) // R1 at its cap, R2 down to 0
        boundary.points.push_back({b.r1, b.r2 * (1.0 - grid_value(i, n, 1.0))});
    return boundary;
}

RatePair mac_oma_point(const RegionSpec &spec, double alpha, OmaPower power)
{
    return {shared_rate(alpha, spec.snr_1 * spec.power_budget, power),
            shared_rate(1.0 - alpha, spec.snr_2 * spec.power_budget, power)};
}

RegionBoundary mac_oma_boundary(const RegionSpec &spec, OmaPower power)
{
    check_spec(spec);
    RegionBoundary boundary;
    for (int i = 0; i < spec.grid_points; ++i)
        boundary.points.push_back(mac_oma_point(spec, grid_value(i, spec.grid_points, 1.0), power));
    return boundary;
}

double mac_oma_tangent_share(const RegionSpec &spec)
{
    return spec.snr_1 / (spec.snr_1 + spec.snr_2);
}

double bc_region_slack(const RegionSpec &spec, RatePair point)
{
    const bool first_strong = spec.snr_1 >= spec.snr_2;
    const double snr_strong = first_strong ? spec.snr_1 : spec.snr_2;
    const double snr_weak = first_strong ? spec.snr_2 : spec.snr_1;
    const double r_strong = first_strong ? point.r1 : point.r2;
    const double r_weak = first_strong ? point.r2 : point.r1;

    const double cap_strong = rate_from_sinr(snr_strong * spec.power_budget);
    const double p_strong = std::expm1(r_strong * std::numbers::ln2) / snr_strong;
    if (p_strong > spec.power_budget)
        return cap_strong - r_strong;
    const double weak_max = rate_from_sinr((spec.power_budget - p_strong) * snr_weak / (p_strong * snr_weak + 1.0));
    return weak_max - r_weak;
}

double mac_region_slack(const RegionSpec &spec, RatePair point)
{
    const double a = spec.snr_1 * spec.power_budget;
    const double b = spec.snr_2 * spec.power_budget;
    return std::min({rate_from_sinr(a) - point.r1, rate_from_sinr(b) - point.r2,
                     rate_from_sinr(a + b) - point.r1 - point.r2});
}

RegionBoundary pareto_frontier(std::vector<RatePair> points)
{
    std::sort(points.begin(), points.end(),
              [](const RatePair &a, const RatePair &b) { return a.r1 > b.r1 || (a.r1 == b.r1 && a.r2 > b.r2); });
    RegionBoundary frontier;
    double best_r2 = -std::numeric_limits<double>::infinity();
    for (const auto &p : points)
    {
        if (p.r2 > best_r2)
        {
            frontier.points.push_back(p);
            best_r2 = p.r2;
        }
    }
    std::reverse(frontier.points.begin(), frontier.points.end());
    return frontier;
}

} // namespace ngma
