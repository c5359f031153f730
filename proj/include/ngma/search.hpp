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

#ifndef NGMA_SEARCH_HPP
#define NGMA_SEARCH_HPP

#include "ngma/partitions.hpp"
#include "ngma/uplink.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ngma
{

enum class Objective
{
    sum_rate,
    min_rate
};

enum class GroupingMode
{
    all_partitions,
    fixed
};

enum class OrderMode
{
    all_permutations,
    fixed
};

/// Finite beamforming families for the downlink search.
///
/// zf, mrc_like and explicit_list give each user its own direction;
/// cluster_zf and matched_to_channels give every member of a cluster the
/// cluster's direction (orthogonal to all other clusters, or the dominant
/// eigenvector of the cluster's channel covariance, respectively).
enum class DirectionFamily
{
    zf,
    cluster_zf,
    mrc_like,
    matched_to_channels,
    explicit_list
};

/// Restricts the downlink grouping space to one of the classical schemes.
enum class DownlinkScheme
{
    ngma,    ///< any grouping
    sdma,    ///< M = K
    bb_noma, ///< M = 1
    cb_noma  ///< 1 < M < K, every cluster of size >= 2, shared cluster directions
};

enum class UplinkScheme
{
    ngma, ///< any ordered layer partition
    sdma, ///< L = 1
    noma  ///< L = K
};

inline constexpr std::uint64_t default_search_cap = 10'000'000;

struct SearchSpace
{
    GroupingMode grouping_mode = GroupingMode::all_partitions;
    std::optional<Grouping> fixed_grouping;        ///< downlink, grouping_mode == fixed
    std::optional<LayerPartition> fixed_layers;    ///< uplink, grouping_mode == fixed
    OrderMode order_mode = OrderMode::all_permutations;
    std::vector<int> fixed_rank;                   ///< downlink decoding rank per user, order_mode == fixed
    DirectionFamily direction_family = DirectionFamily::zf;
    std::vector<ComplexVec<double>> explicit_directions;
    DetectorFamily detector = DetectorFamily::mrc;
    MmseMode mmse_mode = MmseMode::layer_aware;
    int power_grid = 10;                           ///< uniform steps per user, endpoints included
    Objective objective = Objective::sum_rate;
    SicMode sic_mode = SicMode::strict;
    DownlinkScheme downlink_scheme = DownlinkScheme::ngma;
    UplinkScheme uplink_scheme = UplinkScheme::ngma;
    std::uint64_t cap = default_search_cap;
    unsigned threads = 0;                          ///< 0: NGMA_THREADS, else hardware concurrency
};

struct DownlinkConfig
{
    IntraClusterOrder order; ///< also carries the grouping
    BeamformerSet<double> beams;
    std::vector<int> power_indices;

    const Grouping &grouping() const { return order.grouping(); }
};

struct DownlinkSearchResult
{
    std::optional<DownlinkConfig> best;
    double best_value = 0.0;
    std::vector<double> best_rates;
    bool feasible = false;
    std::uint64_t evaluations = 0;
    /// Groupings dropped because the direction family has no solution for them.
    std::uint64_t skipped_groupings = 0;

    /// Filled when no configuration satisfies the decoding-rate condition.
    std::optional<DownlinkConfig> least_violating;
    double least_violating_value = 0.0;
    double least_violating_slack = 0.0;
};

struct UplinkConfig
{
    LayerPartition layers;
    DetectorSet<double> detectors;
    std::vector<int> power_indices;
};

/// Best objective value reached with a given number of layers.
struct LatencyPoint
{
    int n_layers = 0;
    double best_value = 0.0;
};

struct UplinkSearchResult
{
    std::optional<UplinkConfig> best;
    double best_value = 0.0;
    std::vector<double> best_rates;
    bool feasible = false;
    std::uint64_t evaluations = 0;
    std::vector<LatencyPoint> per_layer_count;
    /// Layer counts whose best value beats every smaller layer count.
    std::vector<LatencyPoint> pareto;
};

double objective_value(Objective objective, std::span<const double> rates);

/// Number of configurations a search over `space` would evaluate.
std::uint64_t downlink_search_size(const Scenario<double> &s, const SearchSpace &space);
std::uint64_t uplink_search_size(const Scenario<double> &s, const SearchSpace &space);

/// Maximizes the objective over groupings, SIC orders and the power grid
/// (sum of powers within the budget). In strict SIC mode only configurations
/// meeting the decoding-rate condition are eligible. Ties go to the smallest
/// (grouping labels, decoding sequences, power indices) tuple.
///
/// Throws SearchTooLarge when the space exceeds space.cap and Infeasible when
/// the space is empty; returns feasible = false with the least-violating
/// configuration when nothing satisfies the condition.
DownlinkSearchResult dl_exhaustive_search(const Scenario<double> &s, const SearchSpace &space);

/// Maximizes the objective over ordered layer partitions and the per-user
/// power grid. Ties go to the smallest (layer labels, power indices) tuple.
UplinkSearchResult ul_exhaustive_search(const Scenario<double> &s, const SearchSpace &space);

} // namespace ngma

#endif
