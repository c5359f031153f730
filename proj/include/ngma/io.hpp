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

#ifndef NGMA_IO_HPP
#define NGMA_IO_HPP

#include "ngma/regions.hpp"
#include "ngma/search.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

// Structured-text and CSV forms. User, cluster and layer indices are 1-based
// in every serialized form and 0-based in memory. Complex numbers are [re, im].

namespace ngma::io
{

using json = nlohmann::json;

json to_json(std::complex<double> z);
std::complex<double> complex_from_json(const json &j);
json to_json(const ComplexVec<double> &v);
ComplexVec<double> vector_from_json(const json &j);

json to_json(const Scenario<double> &s);
Scenario<double> scenario_from_json(const json &j);

/// Reads the generation keys: kind, correlation_constants, explicit_values, gains, seed.
ChannelSpec<double> channel_spec_from_json(const json &j);

json to_json(const Grouping &g);
Grouping grouping_from_json(const json &j, int n_users);

/// Per-cluster decoding sequences, first decoded first.
json to_json(const IntraClusterOrder &o);
IntraClusterOrder order_from_json(const json &j, const Grouping &g);

json to_json(const BeamformerSet<double> &b);
json to_json(const LayerPartition &lp);
LayerPartition layers_from_json(const json &j, int n_users);
json to_json(const DetectorSet<double> &d);

json to_json(const DownlinkSearchResult &r, Objective objective);
json to_json(const UplinkSearchResult &r, Objective objective);

/// Shortest decimal that round-trips, with at least 9 significant digits.
std::string format_number(double value);

/// "scheme,R1,R2" followed by one row per boundary point.
std::string region_csv(const std::vector<std::pair<std::string, RegionBoundary>> &curves);

/// "user,cluster,rate,feasible".
std::string downlink_rates_csv(const Grouping &g, const RateReport<double> &report);

/// "user,layer,rate".
std::string uplink_rates_csv(const LayerPartition &lp, const std::vector<double> &rates);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string &path, const std::string &content);

std::string read_file(const std::string &path);

} // namespace ngma::io

#endif
