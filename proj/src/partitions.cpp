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

#include "ngma/partitions.hpp"

#include <algorithm>
#include <numeric>

namespace ngma
{
namespace
{

void extend_labels(std::vector<int> &labels, int next_label, int n, std::vector<Blocks> &out)
{
    const auto position = static_cast<int>(labels.size());
    if (position == n)
    {
        Blocks blocks(static_cast<std::size_t>(next_label));
        for (int k = 0; k < n; ++k)
            blocks[static_cast<std::size_t>(labels[static_cast<std::size_t>(k)])].push_back(k);
        out.push_back(std::move(blocks));
        return;
    }
    for (int label = 0; label <= next_label; ++label)
    {
        labels.push_back(label);
        extend_labels(labels, std::max(next_label, label + 1), n, out);
        labels.pop_back();
    }
}

} // namespace

std::vector<Blocks> set_partitions(int n)
{
    require(n >= 1, ErrorKind::InvalidSpec, "partitions need at least one element");
    std::vector<Blocks> out;
    std::vector<int> labels;
    extend_labels(labels, 0, n, out);
    return out;
}

std::vector<LayerPartition> enumerate_ordered_partitions(int n)
{
    std::vector<LayerPartition> out;
    for (const auto &blocks : set_partitions(n))
    {
        std::vector<std::size_t> perm(blocks.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        do
        {
            Blocks ordered;
            for (std::size_t b : perm)
                ordered.push_back(blocks[b]);
            out.emplace_back(std::move(ordered), n);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

std::vector<Blocks> block_permutations(const Blocks &blocks)
{
    std::vector<Blocks> out{Blocks{}};
    for (const auto &block : blocks)
    {
        auto sorted = block;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::vector<int>> perms;
        do
            perms.push_back(sorted);
        while (std::next_permutation(sorted.begin(), sorted.end()));

        std::vector<Blocks> extended;
        for (const auto &prefix : out)
            for (const auto &p : perms)
            {
                auto next = prefix;
                next.push_back(p);
                extended.push_back(std::move(next));
            }
        out = std::move(extended);
    }
    return out;
}

std::uint64_t bell_number(int n)
{
    // Bell triangle.
    std::vector<std::uint64_t> row{1};
    for (int i = 1; i <= n; ++i)
    {
        std::vector<std::uint64_t> next{row.back()};
        for (std::uint64_t v : row)
            next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

std::uint64_t fubini_number(int n)
{
    // a(n) = sum_k S(n, k) k!, with Stirling numbers of the second kind.
    std::vector<std::vector<std::uint64_t>> stirling(static_cast<std::size_t>(n) + 1,
                                                     std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
    stirling[0][0] = 1;
    for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i)
        for (std::size_t k = 1; k <= i; ++k)
            stirling[i][k] = k * stirling[i - 1][k] + stirling[i - 1][k - 1];
    std::uint64_t total = 0;
    std::uint64_t factorial = 1;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k)
    {
        if (k > 0)
            factorial *= k;
        total += stirling[static_cast<std::size_t>(n)][k] * factorial;
    }
    return total;
}

} // namespace ngma
