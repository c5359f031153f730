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

#include "ngma/uplink.hpp"

#include <algorithm>

namespace ngma
{

PermutationOrder::PermutationOrder(std::vector<int> beta) : beta_(std::move(beta))
{
    require(!beta_.empty(), ErrorKind::InvalidSpec, "decoding order needs at least one user");
    std::vector<bool> seen(beta_.size(), false);
    for (int b : beta_)
    {
        require(b >= 0 && b < static_cast<int>(beta_.size()) && !seen[static_cast<std::size_t>(b)],
                ErrorKind::InvalidSpec, "decoding positions must be a permutation of 0..K-1");
        seen[static_cast<std::size_t>(b)] = true;
    }
}

PermutationOrder PermutationOrder::from_sequence(std::span<const int> sequence)
{
    std::vector<int> beta(sequence.size(), -1);
    for (std::size_t t = 0; t < sequence.size(); ++t)
    {
        const int k = sequence[t];
        require(k >= 0 && k < static_cast<int>(sequence.size()) && beta[static_cast<std::size_t>(k)] < 0,
                ErrorKind::InvalidSpec, "decoding sequence must be a permutation of 0..K-1");
        beta[static_cast<std::size_t>(k)] = static_cast<int>(t);
    }
    return PermutationOrder(std::move(beta));
}

std::vector<int> PermutationOrder::sequence() const
{
    std::vector<int> seq(beta_.size());
    for (std::size_t k = 0; k < beta_.size(); ++k)
        seq[static_cast<std::size_t>(beta_[k])] = static_cast<int>(k);
    return seq;
}

LayerPartition::LayerPartition(std::vector<std::vector<int>> layers, int n_users)
    : layers_(std::move(layers)), layer_of_(static_cast<std::size_t>(std::max(n_users, 0)), -1)
{
    require(n_users >= 1, ErrorKind::InvalidSpec, "layer partition needs at least one user");
    require(!layers_.empty() && static_cast<int>(layers_.size()) <= n_users, ErrorKind::InvalidSpec,
            "layer count must lie in [1, K]");
    for (std::size_t l = 0; l < layers_.size(); ++l)
    {
        auto &members = layers_[l];
        require(!members.empty(), ErrorKind::InvalidSpec, "layers must be non-empty");
        std::sort(members.begin(), members.end());
        for (int k : members)
        {
            require(k >= 0 && k < n_users, ErrorKind::InvalidUser, "user index " + std::to_string(k) + " out of range");
            require(layer_of_[static_cast<std::size_t>(k)] < 0, ErrorKind::InvalidSpec,
                    "user " + std::to_string(k + 1) + " appears in more than one layer");
            layer_of_[static_cast<std::size_t>(k)] = static_cast<int>(l);
        }
    }
    for (std::size_t k = 0; k < layer_of_.size(); ++k)
        require(layer_of_[k] >= 0, ErrorKind::InvalidUser,
                "user " + std::to_string(k + 1) + " is not assigned to a layer");
}

LayerPartition LayerPartition::single_layer(int n_users)
{
    std::vector<int> all;
    for (int k = 0; k < n_users; ++k)
        all.push_back(k);
    return LayerPartition({all}, n_users);
}

LayerPartition LayerPartition::from_order(const PermutationOrder &order)
{
    std::vector<std::vector<int>> layers;
    for (int k : order.sequence())
        layers.push_back({k});
    return LayerPartition(std::move(layers), order.n_users());
}

int LayerPartition::layer_of(int k) const
{
    require(k >= 0 && k < n_users(), ErrorKind::InvalidUser, "user index " + std::to_string(k) + " out of range");
    return layer_of_[static_cast<std::size_t>(k)];
}

} // namespace ngma
