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

// Seeded random instances shared by the unit and acceptance tests.

#ifndef NGMA_TESTS_FIXTURES_HPP
#define NGMA_TESTS_FIXTURES_HPP

#include "ngma/core.hpp"
#include "ngma/downlink.hpp"
#include "ngma/uplink.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace ngma::fixture
{

inline int draw_int(GaussianSource &rng, int lo, int hi)
{
    return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// iid channels with random per-user gains in [0.1, 10) and noise in [0.1, 2).
inline Scenario<double> random_scenario(GaussianSource &rng, int n_antennas, int n_users, bool uniform_noise = false)
{
    std::vector<ComplexVec<double>> channels;
    std::vector<double> noise;
    const double shared_noise = 0.1 + 1.9 * rng.uniform();
    for (int k = 0; k < n_users; ++k)
    {
        const double gain = std::pow(10.0, 2.0 * rng.uniform() - 1.0);
        channels.push_back(std::sqrt(gain) * rng.complex_normal_vector(n_antennas));
        noise.push_back(uniform_noise ? shared_noise : 0.1 + 1.9 * rng.uniform());
    }
    return Scenario<double>(std::move(channels), std::move(noise), 1.0 + 4.0 * rng.uniform());
}

inline std::vector<ComplexVec<double>> random_directions(GaussianSource &rng, int n_antennas, int count)
{
    std::vector<ComplexVec<double>> dirs;
    for (int k = 0; k < count; ++k)
        dirs.push_back(rng.unit_vector(n_antennas));
    return dirs;
}

/// Powers summing to a random fraction of the budget.
inline std::vector<double> random_powers(GaussianSource &rng, int count, double budget)
{
    std::vector<double> p;
    for (int k = 0; k < count; ++k)
        p.push_back(rng.uniform() + 1e-3);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    const double scale = budget * (0.5 + 0.5 * rng.uniform()) / total;
    for (auto &x : p)
        x *= scale;
    return p;
}

inline std::vector<int> random_permutation(GaussianSource &rng, int n)
{
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(draw_int(rng, 0, i))]);
    return perm;
}

/// Random grouping with exactly `n_clusters` clusters.
inline Grouping random_grouping(GaussianSource &rng, int n_users, int n_clusters)
{
    const auto perm = random_permutation(rng, n_users);
    std::vector<std::vector<int>> clusters(static_cast<std::size_t>(n_clusters));
    for (int t = 0; t < n_users; ++t)
    {
        const int m = t < n_clusters ? t : draw_int(rng, 0, n_clusters - 1);
        clusters[static_cast<std::size_t>(m)].push_back(perm[static_cast<std::size_t>(t)]);
    }
    return Grouping(std::move(clusters), n_users);
}

/// Random grouping whose clusters all hold at least `min_size` users.
inline Grouping random_grouping_min_size(GaussianSource &rng, int n_users, int n_clusters, int min_size)
{
    const auto perm = random_permutation(rng, n_users);
    std::vector<std::vector<int>> clusters(static_cast<std::size_t>(n_clusters));
    for (int t = 0; t < n_users; ++t)
    {
        const int m = t < n_clusters * min_size ? t % n_clusters : draw_int(rng, 0, n_clusters - 1);
        clusters[static_cast<std::size_t>(m)].push_back(perm[static_cast<std::size_t>(t)]);
    }
    return Grouping(std::move(clusters), n_users);
}

inline IntraClusterOrder random_order(GaussianSource &rng, const Grouping &g)
{
    const auto rank = random_permutation(rng, g.n_users());
    return IntraClusterOrder::by_rank(g, rank);
}

inline LayerPartition random_layers(GaussianSource &rng, int n_users)
{
    const int n_layers = draw_int(rng, 1, n_users);
    const auto perm = random_permutation(rng, n_users);
    std::vector<std::vector<int>> layers(static_cast<std::size_t>(n_layers));
    for (int t = 0; t < n_users; ++t)
    {
        const int l = t < n_layers ? t : draw_int(rng, 0, n_layers - 1);
        layers[static_cast<std::size_t>(l)].push_back(perm[static_cast<std::size_t>(t)]);
    }
    return LayerPartition(std::move(layers), n_users);
}

/// Uplink powers in (0, cap].
inline std::vector<double> random_uplink_powers(GaussianSource &rng, int count, double cap)
{
    std::vector<double> p;
    for (int k = 0; k < count; ++k)
        p.push_back(cap * (0.05 + 0.95 * rng.uniform()));
    return p;
}

} // namespace ngma::fixture

#endif
