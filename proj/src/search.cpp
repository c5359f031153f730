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

#include "ngma/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>

namespace ngma
{
namespace
{

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    return __builtin_mul_overflow(a, b, &out) ? saturated : out;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    return __builtin_add_overflow(a, b, &out) ? saturated : out;
}

std::uint64_t binomial_sat(std::uint64_t n, std::uint64_t k)
{
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
    {
        // result * (n - k + i) / i stays integral at every step.
        const std::uint64_t num = mul_sat(result, n - k + i);
        if (num == saturated)
            return saturated;
        result = num / i;
    }
    return result;
}

unsigned resolve_threads(unsigned requested, std::size_t work_items)
{
    unsigned threads = requested;
    if (threads == 0)
    {
        if (const char *env = std::getenv("NGMA_THREADS"))
        {
            const long parsed = std::strtol(env, nullptr, 10);
            if (parsed > 0)
                threads = static_cast<unsigned>(parsed);
        }
    }
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::clamp<std::size_t>(work_items, 1, threads));
}

template <typename Worker>
void run_workers(unsigned threads, Worker &&worker)
{
    if (threads <= 1)
    {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto &th : pool)
        th.join();
}

void check_power_grid(const SearchSpace &space)
{
    require(space.power_grid >= 1, ErrorKind::InvalidSpec, "power grid needs at least one step");
}

// All index tuples with sum <= steps, lexicographic.
void sum_bounded_tuples(std::vector<int> &prefix, int n, int remaining, std::vector<std::vector<int>> &out)
{
    if (static_cast<int>(prefix.size()) == n)
    {
        out.push_back(prefix);
        return;
    }
    for (int j = 0; j <= remaining; ++j)
    {
        prefix.push_back(j);
        sum_bounded_tuples(prefix, n, remaining - j, out);
        prefix.pop_back();
    }
}

std::vector<std::vector<int>> box_tuples(int n, int steps)
{
    std::vector<std::vector<int>> out{std::vector<int>{}};
    for (int k = 0; k < n; ++k)
    {
        std::vector<std::vector<int>> next;
        for (const auto &prefix : out)
            for (int j = 0; j <= steps; ++j)
            {
                auto t = prefix;
                t.push_back(j);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<std::vector<double>> tuple_powers(const std::vector<std::vector<int>> &tuples, double budget, int steps)
{
    std::vector<std::vector<double>> out;
    out.reserve(tuples.size());
    for (const auto &t : tuples)
    {
        std::vector<double> p;
        for (int j : t)
            p.push_back(j == steps ? budget : budget * static_cast<double>(j) / static_cast<double>(steps));
        out.push_back(std::move(p));
    }
    return out;
}

bool admits(DownlinkScheme scheme, const Grouping &g)
{
    switch (scheme)
    {
    case DownlinkScheme::ngma:
        return true;
    case DownlinkScheme::sdma:
        return g.n_clusters() == g.n_users();
    case DownlinkScheme::bb_noma:
        return g.n_clusters() == 1;
    case DownlinkScheme::cb_noma:
        if (g.n_clusters() <= 1 || g.n_clusters() >= g.n_users())
            return false;
        return std::all_of(g.clusters().begin(), g.clusters().end(),
                           [](const auto &c) { return c.size() >= 2; });
    }
    return false;
}

bool admits(UplinkScheme scheme, const LayerPartition &lp)
{
    switch (scheme)
    {
    case UplinkScheme::ngma:
        return true;
    case UplinkScheme::sdma:
        return lp.n_layers() == 1;
    case UplinkScheme::noma:
        return lp.n_layers() == lp.n_users();
    }
    return false;
}

bool cluster_shared(DirectionFamily family)
{
    return family == DirectionFamily::cluster_zf || family == DirectionFamily::matched_to_channels;
}

std::vector<Grouping> candidate_groupings(const Scenario<double> &s, const SearchSpace &space)
{
    std::vector<Grouping> candidates;
    if (space.grouping_mode == GroupingMode::fixed)
    {
        require(space.fixed_grouping.has_value(), ErrorKind::InvalidSpec, "fixed grouping mode needs a grouping");
        require(space.fixed_grouping->n_users() == s.n_users(), ErrorKind::DimensionError,
                "fixed grouping and scenario disagree on the user count");
        candidates.push_back(*space.fixed_grouping);
    }
    else
    {
        for (auto &blocks : set_partitions(s.n_users()))
            candidates.emplace_back(std::move(blocks), s.n_users());
    }
    std::erase_if(candidates, [&](const Grouping &g) { return !admits(space.downlink_scheme, g); });
    return candidates;
}

std::uint64_t order_count(const Grouping &g, const SearchSpace &space)
{
    if (space.order_mode == OrderMode::fixed)
        return 1;
    std::uint64_t count = 1;
    for (const auto &c : g.clusters())
        for (std::uint64_t i = 2; i <= c.size(); ++i)
            count = mul_sat(count, i);
    return count;
}

std::vector<LayerPartition> candidate_layers(const Scenario<double> &s, const SearchSpace &space)
{
    std::vector<LayerPartition> candidates;
    if (space.grouping_mode == GroupingMode::fixed)
    {
        require(space.fixed_layers.has_value(), ErrorKind::InvalidSpec, "fixed grouping mode needs a layer partition");
        require(space.fixed_layers->n_users() == s.n_users(), ErrorKind::DimensionError,
                "fixed layer partition and scenario disagree on the user count");
        candidates.push_back(*space.fixed_layers);
    }
    else
    {
        candidates = enumerate_ordered_partitions(s.n_users());
    }
    std::erase_if(candidates, [&](const LayerPartition &lp) { return !admits(space.uplink_scheme, lp); });
    return candidates;
}

struct DownlinkKey
{
    std::vector<int> labels;
    std::vector<int> sequence;
    std::vector<int> powers;

    auto operator<=>(const DownlinkKey &) const = default;
};

struct DownlinkCandidate
{
    double value = 0.0;
    double slack = 0.0;
    DownlinkKey key;
    std::size_t grouping = 0;
    Blocks sequences;
    std::vector<int> power_indices;
};

bool better_feasible(const DownlinkCandidate &a, const std::optional<DownlinkCandidate> &b)
{
    if (!b)
        return true;
    if (a.value != b->value)
        return a.value > b->value;
    return a.key < b->key;
}

bool better_violating(const DownlinkCandidate &a, const std::optional<DownlinkCandidate> &b)
{
    if (!b)
        return true;
    if (a.slack != b->slack)
        return a.slack > b->slack;
    if (a.value != b->value)
        return a.value > b->value;
    return a.key < b->key;
}

std::vector<int> flatten(const Blocks &blocks)
{
    std::vector<int> flat;
    for (const auto &b : blocks)
        flat.insert(flat.end(), b.begin(), b.end());
    return flat;
}

class DirectionSource
{
  public:
    DirectionSource(const Scenario<double> &s, const SearchSpace &space) : s_(s), family_(space.direction_family)
    {
        if (space.downlink_scheme == DownlinkScheme::cb_noma)
            require(cluster_shared(family_), ErrorKind::InvalidSpec,
                    "cluster-based NOMA needs a cluster-shared direction family (cluster_zf or matched_to_channels)");
        switch (family_)
        {
        case DirectionFamily::zf:
            try
            {
                per_user_ = zf_directions(s);
            }
            catch (const Error &e)
            {
                throw Error(ErrorKind::Infeasible, std::string("zero-forcing directions unavailable: ") + e.what());
            }
            break;
        case DirectionFamily::mrc_like:
            per_user_ = matched_directions(s);
            break;
        case DirectionFamily::explicit_list:
            require(static_cast<int>(space.explicit_directions.size()) == s.n_users(), ErrorKind::InvalidSpec,
                    "explicit direction family needs one direction per user");
            per_user_ = space.explicit_directions;
            for (const auto &d : per_user_)
            {
                require(d.size() == s.n_antennas(), ErrorKind::DimensionError,
                        "explicit direction length differs from antenna count");
                require(std::abs(d.norm() - 1.0) <= 1e-12, ErrorKind::InvalidSpec,
                        "explicit directions must be unit norm");
            }
            break;
        case DirectionFamily::cluster_zf:
        case DirectionFamily::matched_to_channels:
            break;
        }
    }

    /// Per-user directions for g, or nullopt when the family has none.
    std::optional<std::vector<ComplexVec<double>>> for_grouping(const Grouping &g) const
    {
        if (family_ == DirectionFamily::cluster_zf)
        {
            try
            {
                const auto cluster_dirs = cluster_zf_directions(s_, g);
                return expand_cluster_directions<double>(g, cluster_dirs);
            }
            catch (const Error &e)
            {
                if (e.kind() == ErrorKind::Overloaded)
                    return std::nullopt;
                throw;
            }
        }
        if (family_ == DirectionFamily::matched_to_channels)
        {
            try
            {
                const auto cluster_dirs = matched_cluster_directions(s_, g);
                return expand_cluster_directions<double>(g, cluster_dirs);
            }
            catch (const Error &e)
            {
                if (e.kind() == ErrorKind::ZeroChannel)
                    return std::nullopt;
                throw;
            }
        }
        return per_user_;
    }

  private:
    const Scenario<double> &s_;
    DirectionFamily family_;
    std::vector<ComplexVec<double>> per_user_;
};

std::vector<Blocks> orders_for(const Grouping &g, const SearchSpace &space)
{
    if (space.order_mode == OrderMode::fixed)
        return {IntraClusterOrder::by_rank(g, space.fixed_rank).sequences()};
    return block_permutations(g.clusters());
}

} // namespace

double objective_value(Objective objective, std::span<const double> rates)
{
    require(!rates.empty(), ErrorKind::InvalidSpec, "objective needs at least one rate");
    if (objective == Objective::min_rate)
        return *std::min_element(rates.begin(), rates.end());
    double total = 0.0;
    for (double r : rates)
        total += r;
    return total;
}

std::uint64_t downlink_search_size(const Scenario<double> &s, const SearchSpace &space)
{
    check_power_grid(space);
    const auto tuples = binomial_sat(static_cast<std::uint64_t>(space.power_grid + s.n_users()),
                                     static_cast<std::uint64_t>(s.n_users()));
    std::uint64_t total = 0;
    for (const auto &g : candidate_groupings(s, space))
        total = add_sat(total, mul_sat(order_count(g, space), tuples));
    return total;
}

std::uint64_t uplink_search_size(const Scenario<double> &s, const SearchSpace &space)
{
    check_power_grid(space);
    std::uint64_t tuples = 1;
    for (int k = 0; k < s.n_users(); ++k)
        tuples = mul_sat(tuples, static_cast<std::uint64_t>(space.power_grid) + 1);
    const auto partitions = static_cast<std::uint64_t>(candidate_layers(s, space).size());
    return mul_sat(partitions, tuples);
}

DownlinkSearchResult dl_exhaustive_search(const Scenario<double> &s, const SearchSpace &space)
{
    check_power_grid(space);
    if (space.order_mode == OrderMode::fixed)
        require(static_cast<int>(space.fixed_rank.size()) == s.n_users(), ErrorKind::InvalidSpec,
                "fixed order mode needs one decoding rank per user");

    const auto groupings = candidate_groupings(s, space);
    if (groupings.empty())
        throw Error(ErrorKind::Infeasible, "no grouping satisfies the scheme restriction");

    const std::uint64_t size = downlink_search_size(s, space);
    if (size > space.cap)
        throw Error(ErrorKind::SearchTooLarge, std::to_string(size) + " configurations exceed the cap of " +
                                                   std::to_string(space.cap));

    const DirectionSource directions(s, space);
    std::vector<std::vector<int>> tuples;
    {
        std::vector<int> prefix;
        sum_bounded_tuples(prefix, s.n_users(), space.power_grid, tuples);
    }
    const auto powers = tuple_powers(tuples, s.power_budget(), space.power_grid);

    std::atomic<std::size_t> next{0};
    std::mutex merge_mutex;
    std::optional<DownlinkCandidate> best;
    std::optional<DownlinkCandidate> violating;
    std::uint64_t evaluations = 0;
    std::uint64_t skipped = 0;

    auto worker = [&] {
        std::optional<DownlinkCandidate> local_best;
        std::optional<DownlinkCandidate> local_violating;
        std::uint64_t local_evals = 0;
        std::uint64_t local_skipped = 0;

        for (std::size_t gi = next++; gi < groupings.size(); gi = next++)
        {
            const Grouping &g = groupings[gi];
            const auto dirs = directions.for_grouping(g);
            if (!dirs)
            {
                ++local_skipped;
                continue;
            }
            const auto gains = gain_matrix<double>(s, *dirs);
            const auto labels = g.canonical_labels();

            for (auto &sequences : orders_for(g, space))
            {
                const IntraClusterOrder order(g, sequences);
                const auto flat = flatten(sequences);
                for (std::size_t t = 0; t < tuples.size(); ++t)
                {
                    const auto report =
                        detail::downlink_report<double>(gains, powers[t], s.noise_powers(), order, space.sic_mode);
                    ++local_evals;
                    DownlinkCandidate c;
                    c.value = objective_value(space.objective, report.per_user_rate);
                    if (report.sic_feasible)
                    {
                        if (local_best && c.value < local_best->value)
                            continue;
                    }
                    else
                    {
                        c.slack = 0.0;
                        for (const auto &v : report.violated_pairs)
                            c.slack = std::min(c.slack, v.slack);
                        if (local_best || (local_violating && c.slack < local_violating->slack))
                            continue;
                    }
                    c.key = {labels, flat, tuples[t]};
                    c.grouping = gi;
                    c.sequences = sequences;
                    c.power_indices = tuples[t];
                    if (report.sic_feasible)
                    {
                        if (better_feasible(c, local_best))
                            local_best = std::move(c);
                    }
                    else if (better_violating(c, local_violating))
                    {
                        local_violating = std::move(c);
                    }
                }
            }
        }

        std::lock_guard lock(merge_mutex);
        evaluations += local_evals;
        skipped += local_skipped;
        if (local_best && better_feasible(*local_best, best))
            best = std::move(local_best);
        if (local_violating && better_violating(*local_violating, violating))
            violating = std::move(local_violating);
    };
    run_workers(resolve_threads(space.threads, groupings.size()), worker);

    if (evaluations == 0)
        throw Error(ErrorKind::Infeasible, "the direction family admits none of the candidate groupings");

    const auto materialize = [&](const DownlinkCandidate &c) {
        const Grouping &g = groupings[c.grouping];
        auto dirs = *directions.for_grouping(g);
        std::vector<double> p;
        for (int j : c.power_indices)
            p.push_back(j == space.power_grid ? s.power_budget()
                                              : s.power_budget() * static_cast<double>(j) /
                                                    static_cast<double>(space.power_grid));
        return DownlinkConfig{IntraClusterOrder(g, c.sequences), BeamformerSet<double>(std::move(dirs), std::move(p)),
                              c.power_indices};
    };

    DownlinkSearchResult result;
    result.evaluations = evaluations;
    result.skipped_groupings = skipped;
    if (best)
    {
        result.feasible = true;
        result.best = materialize(*best);
        result.best_value = best->value;
        result.best_rates = dl_sic_check(s, result.best->order, result.best->beams, space.sic_mode).per_user_rate;
    }
    else
    {
        // Only reachable in strict mode: every evaluated configuration violated the condition.
        result.least_violating = materialize(*violating);
        result.least_violating_value = violating->value;
        result.least_violating_slack = violating->slack;
    }
    return result;
}

namespace
{

struct UplinkCandidate
{
    double value = 0.0;
    std::vector<int> layer_labels;
    std::vector<int> power_indices;
    std::size_t partition = 0;
};

bool better_uplink(const UplinkCandidate &a, const std::optional<UplinkCandidate> &b)
{
    if (!b)
        return true;
    if (a.value != b->value)
        return a.value > b->value;
    return std::tie(a.layer_labels, a.power_indices) < std::tie(b->layer_labels, b->power_indices);
}

std::vector<int> layer_labels(const LayerPartition &lp)
{
    std::vector<int> labels;
    for (int k = 0; k < lp.n_users(); ++k)
        labels.push_back(lp.layer_of(k));
    return labels;
}

} // namespace

UplinkSearchResult ul_exhaustive_search(const Scenario<double> &s, const SearchSpace &space)
{
    check_power_grid(space);
    const double sigma2 = uplink_noise(s);
    const auto partitions = candidate_layers(s, space);
    if (partitions.empty())
        throw Error(ErrorKind::Infeasible, "no layer partition satisfies the scheme restriction");

    const std::uint64_t size = uplink_search_size(s, space);
    if (size > space.cap)
        throw Error(ErrorKind::SearchTooLarge, std::to_string(size) + " configurations exceed the cap of " +
                                                   std::to_string(space.cap));

    const auto tuples = box_tuples(s.n_users(), space.power_grid);
    const auto powers = tuple_powers(tuples, s.power_budget(), space.power_grid);

    std::vector<ComplexVec<double>> fixed_detectors;
    if (space.detector == DetectorFamily::zf)
    {
        try
        {
            fixed_detectors = zf_detectors(s);
        }
        catch (const Error &e)
        {
            throw Error(ErrorKind::Infeasible, std::string("zero-forcing detectors unavailable: ") + e.what());
        }
    }
    else if (space.detector == DetectorFamily::mrc)
    {
        fixed_detectors = mrc_detectors(s);
    }
    const RealMat<double> fixed_gains =
        fixed_detectors.empty() ? RealMat<double>() : detector_gains<double>(s, fixed_detectors);

    const auto detectors_for = [&](const LayerPartition &lp, std::span<const double> p) {
        if (space.detector == DetectorFamily::mmse)
            return mmse_detectors<double>(s, lp, p, space.mmse_mode);
        return fixed_detectors;
    };

    const auto n_users = static_cast<std::size_t>(s.n_users());
    std::atomic<std::size_t> next{0};
    std::mutex merge_mutex;
    std::optional<UplinkCandidate> best;
    std::vector<std::optional<double>> per_layer(n_users + 1);
    std::uint64_t evaluations = 0;

    auto worker = [&] {
        std::optional<UplinkCandidate> local_best;
        std::vector<std::optional<double>> local_layers(n_users + 1);
        std::uint64_t local_evals = 0;
        std::vector<double> rates(n_users);

        for (std::size_t pi = next++; pi < partitions.size(); pi = next++)
        {
            const LayerPartition &lp = partitions[pi];
            const auto labels = layer_labels(lp);
            auto &layer_best = local_layers[static_cast<std::size_t>(lp.n_layers())];
            for (std::size_t t = 0; t < tuples.size(); ++t)
            {
                RealMat<double> gains;
                if (space.detector == DetectorFamily::mmse)
                    gains = detector_gains<double>(s, detectors_for(lp, powers[t]));
                const RealMat<double> &g = space.detector == DetectorFamily::mmse ? gains : fixed_gains;
                for (int k = 0; k < s.n_users(); ++k)
                    rates[static_cast<std::size_t>(k)] = detail::uplink_rate<double>(g, powers[t], sigma2, lp, k);
                ++local_evals;
                const double value = objective_value(space.objective, rates);
                if (!layer_best || value > *layer_best)
                    layer_best = value;
                if (local_best && value < local_best->value)
                    continue;
                UplinkCandidate c{value, labels, tuples[t], pi};
                if (better_uplink(c, local_best))
                    local_best = std::move(c);
            }
        }

        std::lock_guard lock(merge_mutex);
        evaluations += local_evals;
        if (local_best && better_uplink(*local_best, best))
            best = std::move(local_best);
        for (std::size_t l = 0; l < per_layer.size(); ++l)
            if (local_layers[l] && (!per_layer[l] || *local_layers[l] > *per_layer[l]))
                per_layer[l] = local_layers[l];
    };
    run_workers(resolve_threads(space.threads, partitions.size()), worker);

    UplinkSearchResult result;
    result.evaluations = evaluations;
    result.feasible = best.has_value();
    if (!best)
        return result;

    const LayerPartition &lp = partitions[best->partition];
    std::vector<double> p;
    for (int j : best->power_indices)
        p.push_back(j == space.power_grid ? s.power_budget()
                                          : s.power_budget() * static_cast<double>(j) /
                                                static_cast<double>(space.power_grid));
    auto vectors = detectors_for(lp, p);
    result.best = UplinkConfig{lp, DetectorSet<double>(std::move(vectors), std::move(p)), best->power_indices};
    result.best_value = best->value;
    result.best_rates = ul_ngma_rates(s, result.best->layers, result.best->detectors);

    double frontier = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 1; l < per_layer.size(); ++l)
    {
        if (!per_layer[l])
            continue;
        result.per_layer_count.push_back({static_cast<int>(l), *per_layer[l]});
        if (*per_layer[l] > frontier)
        {
            result.pareto.push_back({static_cast<int>(l), *per_layer[l]});
            frontier = *per_layer[l];
        }
    }
    return result;
}

} // namespace ngma
