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

#ifndef NGMA_PARTITIONS_HPP
#define NGMA_PARTITIONS_HPP

#include "ngma/uplink.hpp"

#include <cstdint>
#include <vector>

namespace ngma
{

using Blocks = std::vector<std::vector<int>>;

/// Every set partition of {0..n-1} exactly once, blocks sorted by their
/// smallest member, in lexicographic order of the restricted-growth labelling.
std::vector<Blocks> set_partitions(int n);

/// Every ordered set partition of {0..n-1} exactly once (a Fubini number of them).
std::vector<LayerPartition> enumerate_ordered_partitions(int n);

/// All orderings of every block, as the cartesian product of per-block
/// permutations in lexicographic order.
std::vector<Blocks> block_permutations(const Blocks &blocks);

std::uint64_t bell_number(int n);
std::uint64_t fubini_number(int n);

} // namespace ngma

#endif
