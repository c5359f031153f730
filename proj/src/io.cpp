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

#include "ngma/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace ngma::io
{
namespace
{

template <typename T>
T get_as(const json &j, const char *what)
{
    try
    {
        return j.get<T>();
    }
    catch (const json::exception &)
    {
        throw Error(ErrorKind::InvalidSpec, std::string("malformed ") + what);
    }
}

const json &field(const json &j, const char *key)
{
    require(j.is_object() && j.contains(key), ErrorKind::InvalidSpec, std::string("missing key '") + key + "'");
    return j.at(key);
}

std::vector<std::vector<int>> one_based_blocks(const json &j, const char *what)
{
    require(j.is_array(), ErrorKind::InvalidSpec, std::string(what) + " must be an array of arrays");
    std::vector<std::vector<int>> blocks;
    for (const auto &block : j)
    {
        auto members = get_as<std::vector<int>>(block, what);
        for (int &k : members)
            --k;
        blocks.push_back(std::move(members));
    }
    return blocks;
}

json blocks_to_json(const std::vector<std::vector<int>> &blocks)
{
    json out = json::array();
    for (const auto &block : blocks)
    {
        json b = json::array();
        for (int k : block)
            b.push_back(k + 1);
        out.push_back(std::move(b));
    }
    return out;
}

json vectors_to_json(const std::vector<ComplexVec<double>> &vs)
{
    json out = json::array();
    for (const auto &v : vs)
        out.push_back(to_json(v));
    return out;
}

json downlink_config_to_json(const DownlinkConfig &c)
{
    return {{"grouping", to_json(c.grouping())},
            {"order", to_json(c.order)},
            {"directions", vectors_to_json(c.beams.directions)},
            {"powers", c.beams.powers},
            {"power_indices", c.power_indices}};
}

std::string objective_name(Objective objective)
{
    return objective == Objective::sum_rate ? "sum_rate" : "min_rate";
}

} // namespace

json to_json(std::complex<double> z)
{
    return json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const json &j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), ErrorKind::InvalidSpec,
            "complex numbers are written as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const ComplexVec<double> &v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(to_json(v(i)));
    return out;
}

ComplexVec<double> vector_from_json(const json &j)
{
    require(j.is_array() && !j.empty(), ErrorKind::InvalidSpec, "vectors are non-empty arrays of [re, im] pairs");
    ComplexVec<double> v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

json to_json(const Scenario<double> &s)
{
    return {{"n_antennas", s.n_antennas()},
            {"n_users", s.n_users()},
            {"channels", vectors_to_json(s.channels())},
            {"noise_powers", s.noise_powers()},
            {"power_budget", s.power_budget()}};
}

Scenario<double> scenario_from_json(const json &j)
{
    const int n_antennas = get_as<int>(field(j, "n_antennas"), "n_antennas");
    const int n_users = get_as<int>(field(j, "n_users"), "n_users");
    const auto &channels_json = field(j, "channels");
    require(channels_json.is_array(), ErrorKind::InvalidSpec, "channels must be an array");
    std::vector<ComplexVec<double>> channels;
    for (const auto &c : channels_json)
        channels.push_back(vector_from_json(c));
    require(static_cast<int>(channels.size()) == n_users, ErrorKind::InvalidSpec,
            "channels has " + std::to_string(channels.size()) + " entries for " + std::to_string(n_users) + " users");
    for (const auto &c : channels)
        require(c.size() == n_antennas, ErrorKind::InvalidSpec, "channel length differs from n_antennas");
    return Scenario<double>(std::move(channels), get_as<std::vector<double>>(field(j, "noise_powers"), "noise_powers"),
                            get_as<double>(field(j, "power_budget"), "power_budget"));
}

ChannelSpec<double> channel_spec_from_json(const json &j)
{
    require(j.is_object(), ErrorKind::InvalidSpec, "channel_spec must be an object");
    ChannelSpec<double> spec;
    const auto kind = get_as<std::string>(field(j, "kind"), "kind");
    if (kind == "iid_complex_gaussian")
        spec.kind = ChannelKind::iid_complex_gaussian;
    else if (kind == "correlated_pair")
        spec.kind = ChannelKind::correlated_pair;
    else if (kind == "clustered_correlated")
        spec.kind = ChannelKind::clustered_correlated;
    else if (kind == "explicit")
        spec.kind = ChannelKind::explicit_values;
    else
        throw Error(ErrorKind::InvalidSpec, "unknown channel kind '" + kind + "'");

    if (j.contains("correlation_constants"))
        for (const auto &c : j.at("correlation_constants"))
            spec.correlation_constants.push_back(complex_from_json(c));
    if (j.contains("explicit_values"))
        for (const auto &v : j.at("explicit_values"))
            spec.explicit_values.push_back(vector_from_json(v));
    if (j.contains("gains"))
        spec.gains = get_as<std::vector<double>>(j.at("gains"), "gains");
    if (j.contains("seed"))
        spec.seed = get_as<std::uint64_t>(j.at("seed"), "seed");
    return spec;
}

json to_json(const Grouping &g)
{
    return blocks_to_json(g.clusters());
}

Grouping grouping_from_json(const json &j, int n_users)
{
    return Grouping(one_based_blocks(j, "grouping"), n_users);
}

json to_json(const IntraClusterOrder &o)
{
    return blocks_to_json(o.sequences());
}

IntraClusterOrder order_from_json(const json &j, const Grouping &g)
{
    return IntraClusterOrder(g, one_based_blocks(j, "order"));
}

json to_json(const BeamformerSet<double> &b)
{
    return {{"directions", vectors_to_json(b.directions)}, {"powers", b.powers}};
}

json to_json(const LayerPartition &lp)
{
    return blocks_to_json(lp.layers());
}

LayerPartition layers_from_json(const json &j, int n_users)
{
    return LayerPartition(one_based_blocks(j, "layers"), n_users);
}

json to_json(const DetectorSet<double> &d)
{
    return {{"vectors", vectors_to_json(d.vectors)}, {"powers", d.powers}};
}

json to_json(const DownlinkSearchResult &r, Objective objective)
{
    json out = {{"objective", objective_name(objective)},
                {"feasible", r.feasible},
                {"evaluations", r.evaluations},
                {"skipped_groupings", r.skipped_groupings}};
    if (r.best)
    {
        out["best_value"] = r.best_value;
        auto best = downlink_config_to_json(*r.best);
        best["rates"] = r.best_rates;
        out["best"] = std::move(best);
    }
    if (r.least_violating)
    {
        auto worst = downlink_config_to_json(*r.least_violating);
        worst["value"] = r.least_violating_value;
        worst["slack"] = r.least_violating_slack;
        out["least_violating"] = std::move(worst);
    }
    return out;
}

json to_json(const UplinkSearchResult &r, Objective objective)
{
    json out = {{"objective", objective_name(objective)}, {"feasible", r.feasible}, {"evaluations", r.evaluations}};
    if (r.best)
    {
        out["best_value"] = r.best_value;
        out["best"] = {{"layers", to_json(r.best->layers)},
                       {"n_layers", r.best->layers.n_layers()},
                       {"detectors", vectors_to_json(r.best->detectors.vectors)},
                       {"powers", r.best->detectors.powers},
                       {"power_indices", r.best->power_indices},
                       {"rates", r.best_rates}};
    }
    const auto points = [](const std::vector<LatencyPoint> &ps) {
        json arr = json::array();
        for (const auto &p : ps)
            arr.push_back({{"n_layers", p.n_layers}, {"best_value", p.best_value}});
        return arr;
    };
    out["per_layer_count"] = points(r.per_layer_count);
    out["pareto"] = points(r.pareto);
    return out;
}

std::string format_number(double value)
{
    char buf[64];
    for (int precision = 9; precision <= 17; ++precision)
    {
        std::snprintf(buf, sizeof buf, "%#.*g", precision, value);
        if (std::strtod(buf, nullptr) == value)
            break;
    }
    return buf;
}

std::string region_csv(const std::vector<std::pair<std::string, RegionBoundary>> &curves)
{
    std::string out = "scheme,R1,R2\n";
    for (const auto &[scheme, boundary] : curves)
        for (const auto &p : boundary.points)
            out += scheme + "," + format_number(p.r1) + "," + format_number(p.r2) + "\n";
    return out;
}

std::string downlink_rates_csv(const Grouping &g, const RateReport<double> &report)
{
    std::string out = "user,cluster,rate,feasible\n";
    for (int k = 0; k < g.n_users(); ++k)
        out += std::to_string(k + 1) + "," + std::to_string(g.cluster_of(k) + 1) + "," +
               format_number(report.per_user_rate[static_cast<std::size_t>(k)]) + "," +
               (report.sic_feasible ? "1" : "0") + "\n";
    return out;
}

std::string uplink_rates_csv(const LayerPartition &lp, const std::vector<double> &rates)
{
    std::string out = "user,layer,rate\n";
    for (int k = 0; k < lp.n_users(); ++k)
        out += std::to_string(k + 1) + "," + std::to_string(lp.layer_of(k) + 1) + "," +
               format_number(rates[static_cast<std::size_t>(k)]) + "\n";
    return out;
}

void write_file_atomic(const std::string &path, const std::string &content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        require(f.good(), ErrorKind::InvalidSpec, "cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f.good())
        {
            f.close();
            fs::remove(tmp);
            throw Error(ErrorKind::InvalidSpec, "failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
    {
        fs::remove(tmp);
        throw Error(ErrorKind::InvalidSpec, "cannot move output into place at " + path + ": " + ec.message());
    }
}

std::string read_file(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    require(f.good(), ErrorKind::InvalidSpec, "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace ngma::io
