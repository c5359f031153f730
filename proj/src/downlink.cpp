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

#include "ngma/downlink.hpp"

#include <algorithm>
#include <numeric>

namespace ngma
{

Grouping::Grouping(std::vector<std::vector<int>> clusters, int n_users)
    : clusters_(std::move(clusters)), cluster_of_(static_cast<std::size_t>(std::max(n_users, 0)), -1)
{
    require(n_users >= 1, ErrorKind::InvalidSpec, "grouping needs at least one user");
    require(!clusters_.empty() && static_cast<int>(clusters_.size()) <= n_users, ErrorKind::InvalidSpec,
            "cluster count must lie in [1, K]");
    for (std::size_t m = 0; m < clusters_.size(); ++m)
    {
        auto &members = clusters_[m];
        require(!members.empty(), ErrorKind::InvalidSpec, "clusters must be non-empty");
        std::sort(members.begin(), members.end());
        for (int k : members)
        {
            require(k >= 0 && k < n_users, ErrorKind::InvalidUser,
                    "user index " + std::to_string(k) + " out of range");
            require(cluster_of_[static_cast<std::size_t>(k)] < 0, ErrorKind::InvalidSpec,
                    "user " + std::to_string(k + 1) + " appears in more than one cluster");
            cluster_of_[static_cast<std::size_t>(k)] = static_cast<int>(m);
        }
    }
    for (std::size_t k = 0; k < cluster_of_.size(); ++k)
        require(cluster_of_[k] >= 0, ErrorKind::InvalidSpec,
                "user " + std::to_string(k + 1) + " is not assigned to a cluster");
}

Grouping Grouping::singletons(int n_users)
{
    std::vector<std::vector<int>> clusters;
    for (int k = 0; k < n_users; ++k)
        clusters.push_back({k});
    return Grouping(std::move(clusters), n_users);
}

Grouping Grouping::single_cluster(int n_users)
{
    std::vector<int> all(static_cast<std::size_t>(std::max(n_users, 0)));
    std::iota(all.begin(), all.end(), 0);
    return Grouping({all}, n_users);
}

int Grouping::cluster_of(int k) const
{
    require(k >= 0 && k < n_users(), ErrorKind::InvalidUser, "user index " + std::to_string(k) + " out of range");
    return cluster_of_[static_cast<std::size_t>(k)];
}

std::vector<int> Grouping::canonical_labels() const
{
    std::vector<int> relabel(clusters_.size(), -1);
    std::vector<int> labels;
    int next = 0;
    for (int m : cluster_of_)
    {
        auto &label = relabel[static_cast<std::size_t>(m)];
        if (label < 0)
            label = next++;
        labels.push_back(label);
    }
    return labels;
}

IntraClusterOrder::IntraClusterOrder(const Grouping &grouping, std::vector<std::vector<int>> sequences)
    : grouping_(grouping), sequences_(std::move(sequences)),
      position_(static_cast<std::size_t>(grouping.n_users()), -1)
{
    require(static_cast<int>(sequences_.size()) == grouping_.n_clusters(), ErrorKind::InvalidSpec,
            "need one decoding sequence per cluster");
    for (int m = 0; m < grouping_.n_clusters(); ++m)
    {
        const auto &seq = sequences_[static_cast<std::size_t>(m)];
        auto sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        require(sorted == grouping_.cluster(m), ErrorKind::InvalidSpec,
                "decoding sequence " + std::to_string(m + 1) + " is not a permutation of its cluster");
        for (std::size_t p = 0; p < seq.size(); ++p)
            position_[static_cast<std::size_t>(seq[p])] = static_cast<int>(p);
    }
}

IntraClusterOrder IntraClusterOrder::by_index(const Grouping &grouping)
{
    return IntraClusterOrder(grouping, grouping.clusters());
}

IntraClusterOrder IntraClusterOrder::by_rank(const Grouping &grouping, std::span<const int> rank)
{
    require(static_cast<int>(rank.size()) == grouping.n_users(), ErrorKind::DimensionError,
            "need one rank per user");
    auto sorted = std::vector<int>(rank.begin(), rank.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
        require(sorted[k] == static_cast<int>(k), ErrorKind::InvalidSpec, "ranks must be a permutation of 0..K-1");

    auto sequences = grouping.clusters();
    for (auto &seq : sequences)
        std::sort(seq.begin(), seq.end(), [&](int a, int b) {
            return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
        });
    return IntraClusterOrder(grouping, std::move(sequences));
}

int IntraClusterOrder::alpha(int k, int i) const
{
    require(k != i, ErrorKind::InvalidUser, "alpha is defined for distinct users only");
    require(grouping_.cluster_of(k) == grouping_.cluster_of(i), ErrorKind::NotCoClustered,
            "users " + std::to_string(k + 1) + " and " + std::to_string(i + 1) + " are in different clusters");
    return position(i) < position(k) ? 0 : 1;
}

} // namespace ngma
