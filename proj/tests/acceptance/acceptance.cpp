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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   ngma_acceptance <path-to-ngma> <golden-dir> [--update-golden]

#include "ngma/downlink.hpp"
#include "ngma/io.hpp"
#include "ngma/partitions.hpp"
#include "ngma/regions.hpp"
#include "ngma/search.hpp"
#include "ngma/uplink.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

using namespace ngma;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace
{

struct Outcome
{
    bool pass = true;
    std::string detail;

    void fail(const std::string &why)
    {
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
    void note(const std::string &what) { detail += (detail.empty() ? "" : "; ") + what; }
};

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double relative_error(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

double max_norm(RatePair p, double r1, double r2)
{
    return std::max(std::abs(p.r1 - r1), std::abs(p.r2 - r2));
}

double nearest(const RegionBoundary &b, double r1, double r2)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto &p : b.points)
        best = std::min(best, max_norm(p, r1, r2));
    return best;
}

// 1. BC regions
Outcome bc_regions()
{
    Outcome out;
    const RegionSpec spec; // snr 10 dB / 0 dB, P = 1, 1001 points
    const auto start = Clock::now();
    const auto noma = bc_noma_boundary(spec);
    const auto oma = bc_oma_boundary(spec);
    const double elapsed = seconds_since(start);

    // The printed 3.459430 truncates log2(11) = 3.4594316...; the corner is
    // checked against log2(11) itself.
    const struct
    {
        double r1, r2;
    } targets[] = {{std::log2(11.0), 0.0}, {0.0, 1.000000}, {2.584963, 0.415037}};
    double worst = 0;
    for (const auto &t : targets)
        worst = std::max(worst, nearest(noma, t.r1, t.r2));
    if (worst > 1e-6)
        out.fail("boundary misses a reference point by " + sci(worst));
    out.note("reference points within " + sci(worst));
    out.note("printed 3.459430 vs log2(11): " + sci(std::abs(3.459430 - std::log2(11.0))));

    double min_slack = std::numeric_limits<double>::infinity();
    const int g = spec.grid_points;
    for (int t = 0; t < g; ++t)
        for (int i = 0; i < g; ++i)
        {
            const double tau = t == g - 1 ? 1.0 : static_cast<double>(t) / (g - 1);
            const double p1 = i == g - 1 ? spec.power_budget : spec.power_budget * i / (g - 1);
            const auto p = bc_oma_point(spec, tau, p1);
            min_slack = std::min(min_slack, oracle::bc_capacity_slack(spec.snr_1, spec.snr_2, spec.power_budget,
                                                                      p.r1, p.r2));
        }
    if (min_slack < -1e-9)
        out.fail("an OMA grid point leaves the NOMA region, slack " + sci(min_slack));
    out.note("min OMA slack " + sci(min_slack) + " over " + std::to_string(g * g) + " grid points");

    const double corner_gap = std::max(nearest(oma, noma.points.front().r1, noma.points.front().r2),
                                       nearest(oma, noma.points.back().r1, noma.points.back().r2));
    if (corner_gap > 1e-9)
        out.fail("single-user corners differ by " + sci(corner_gap));
    out.note("corner gap " + sci(corner_gap));

    if (elapsed >= 1.0)
        out.fail("runtime " + sci(elapsed) + " s");
    out.note("boundaries in " + sci(elapsed) + " s");
    return out;
}

// 2. MAC regions
Outcome mac_regions()
{
    Outcome out;
    const RegionSpec spec;
    const auto start = Clock::now();
    const auto noma = mac_noma_boundary(spec);
    const auto oma = mac_oma_boundary(spec);
    const auto corners = mac_corners(spec);
    const double elapsed = seconds_since(start);

    const double sum_capacity = std::log2(1.0 + spec.snr_1 + spec.snr_2);
    const double a_err = max_norm(corners.decode_user1_first, 2.584963, 1.000000);
    const double b_err = max_norm(corners.decode_user2_first, std::log2(11.0), 0.125531);
    if (std::max(a_err, b_err) > 1e-6)
        out.fail("corner off by " + sci(std::max(a_err, b_err)));
    if (nearest(noma, corners.decode_user1_first.r1, corners.decode_user1_first.r2) > 1e-12 ||
        nearest(noma, corners.decode_user2_first.r1, corners.decode_user2_first.r2) > 1e-12)
        out.fail("boundary does not pass through the SIC corners");
    const double sum_err =
        std::max(std::abs(corners.decode_user1_first.r1 + corners.decode_user1_first.r2 - sum_capacity),
                 std::abs(corners.decode_user2_first.r1 + corners.decode_user2_first.r2 - sum_capacity));
    if (sum_err > 1e-9)
        out.fail("corner sums off log2(12) by " + sci(sum_err));
    out.note("corners within " + sci(std::max(a_err, b_err)) + ", sums within " + sci(sum_err) + " of log2(12)");

    // Gap to the sum-capacity face along the OMA sweep.
    const int n = static_cast<int>(oma.points.size());
    std::vector<double> gap;
    for (const auto &p : oma.points)
        gap.push_back(sum_capacity - p.r1 - p.r2);
    const int at = static_cast<int>(std::min_element(gap.begin(), gap.end()) - gap.begin());
    const double share = static_cast<double>(at) / (n - 1);
    const double tangent = spec.snr_1 / (spec.snr_1 + spec.snr_2);
    if (std::abs(share - tangent) > 1.0 / (n - 1))
        out.fail("closest OMA grid point at share " + sci(share) + ", not next to 10/11");
    bool unimodal = true;
    for (int i = 1; i < n; ++i)
        unimodal = unimodal && (i <= at ? gap[static_cast<std::size_t>(i)] < gap[static_cast<std::size_t>(i - 1)]
                                        : gap[static_cast<std::size_t>(i)] > gap[static_cast<std::size_t>(i - 1)]);
    if (!unimodal)
        out.fail("OMA approaches the sum face in more than one neighbourhood");
    bool strictly_inside = true;
    for (int i = 0; i < n; ++i)
        if (std::abs(i - at) > 1 && gap[static_cast<std::size_t>(i)] <= 0)
            strictly_inside = false;
    if (!strictly_inside)
        out.fail("OMA touches the sum face away from the tangent share");
    const auto touch = mac_oma_point(spec, tangent);
    const double touch_err = std::abs(touch.r1 + touch.r2 - sum_capacity);
    if (touch_err > 1e-9)
        out.fail("share 10/11 misses the sum face by " + sci(touch_err));
    out.note("closest grid share " + sci(share) + " (gap " + sci(gap[static_cast<std::size_t>(at)]) +
             "), share 10/11 on the face within " + sci(touch_err));

    for (const auto &p : oma.points)
        if (p.r1 > std::log2(1 + spec.snr_1) + 1e-12 || p.r2 > std::log2(1 + spec.snr_2) + 1e-12)
            out.fail("OMA point beyond a single-user face");
    const double corner_gap = std::max(max_norm(oma.points.front(), 0.0, std::log2(1 + spec.snr_2)),
                                       max_norm(oma.points.back(), std::log2(1 + spec.snr_1), 0.0));
    if (corner_gap > 1e-9)
        out.fail("single-user corners differ by " + sci(corner_gap));

    if (elapsed >= 1.0)
        out.fail("runtime " + sci(elapsed) + " s");
    out.note("boundaries in " + sci(elapsed) + " s");
    return out;
}

struct CorpusEntry
{
    Scenario<double> downlink;
    Scenario<double> uplink; ///< same channels, one receiver noise power
};

CorpusEntry corpus_entry(std::uint64_t seed)
{
    GaussianSource rng(seed);
    const int k = fixture::draw_int(rng, 1, 5);
    const int n = fixture::draw_int(rng, 1, 6);
    auto s = fixture::random_scenario(rng, n, k);
    const std::vector<double> shared(static_cast<std::size_t>(k), s.noise_power(0));
    Scenario<double> up(s.channels(), shared, s.power_budget());
    return {std::move(s), std::move(up)};
}

// 3. Reduction identities
Outcome reductions()
{
    Outcome out;
    double worst_dl = 0;
    double worst_ul = 0;
    int cb_cases = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
    {
        const auto entry = corpus_entry(seed);
        const auto &s = entry.downlink;
        const int k = s.n_users();
        const int n = s.n_antennas();
        GaussianSource rng(seed ^ 0x9e3779b97f4a7c15ULL);

        const BeamformerSet<double> b(fixture::random_directions(rng, n, k),
                                      fixture::random_powers(rng, k, s.power_budget()));
        const auto singles = IntraClusterOrder::by_index(Grouping::singletons(k));
        const auto one = fixture::random_order(rng, Grouping::single_cluster(k));
        const auto sdma = dl_sdma_rates(s, b);
        const auto bb = dl_bb_noma_rates(s, one, b);
        const auto grouped_sdma = dl_sic_check(s, singles, b).per_user_rate;
        const auto grouped_bb = dl_sic_check(s, one, b).per_user_rate;
        for (int u = 0; u < k; ++u)
        {
            const auto i = static_cast<std::size_t>(u);
            worst_dl = std::max({worst_dl, relative_error(grouped_sdma[i], sdma[i]),
                                 relative_error(grouped_bb[i], bb[i])});
        }
        if (k >= 4)
        {
            ++cb_cases;
            const int m = fixture::draw_int(rng, 2, k / 2);
            const auto g = fixture::random_grouping_min_size(rng, k, m, 2);
            const auto o = fixture::random_order(rng, g);
            const auto dirs = fixture::random_directions(rng, n, m);
            const auto cb = dl_cb_noma_rates<double>(s, o, dirs, b.powers);
            const auto grouped =
                dl_sic_check(s, o, BeamformerSet<double>(expand_cluster_directions<double>(g, dirs), b.powers))
                    .per_user_rate;
            for (std::size_t i = 0; i < cb.size(); ++i)
                worst_dl = std::max(worst_dl, relative_error(grouped[i], cb[i]));
        }

        const auto &su = entry.uplink;
        const DetectorSet<double> d(fixture::random_directions(rng, n, k),
                                    fixture::random_uplink_powers(rng, k, su.power_budget()));
        const auto order = PermutationOrder::from_sequence(fixture::random_permutation(rng, k));
        const auto ul_sdma = ul_sdma_rates(su, d);
        const auto ul_noma = ul_noma_rates(su, order, d);
        const auto l1 = ul_ngma_rates(su, LayerPartition::single_layer(k), d);
        const auto lk = ul_ngma_rates(su, LayerPartition::from_order(order), d);
        for (std::size_t i = 0; i < l1.size(); ++i)
            worst_ul = std::max({worst_ul, relative_error(l1[i], ul_sdma[i]), relative_error(lk[i], ul_noma[i])});
    }
    if (worst_dl > 1e-12)
        out.fail("downlink reduction error " + sci(worst_dl));
    if (worst_ul > 1e-12)
        out.fail("uplink reduction error " + sci(worst_ul));
    out.note("1000 scenarios, max relative error downlink " + sci(worst_dl) + " (" + std::to_string(cb_cases) +
             " cluster-based cases), uplink " + sci(worst_ul));
    return out;
}

// 4. Uplink interference-set dominance
Outcome uplink_dominance()
{
    Outcome out;
    std::uint64_t comparisons = 0;
    std::uint64_t violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::vector<std::vector<LayerPartition>> partitions(6);
    for (int k = 1; k <= 5; ++k)
        partitions[static_cast<std::size_t>(k)] = enumerate_ordered_partitions(k);

    for (std::uint64_t seed = 0; seed < 1000; ++seed)
    {
        const auto s = corpus_entry(seed).uplink;
        const int k = s.n_users();
        GaussianSource rng(seed ^ 0x51ed270b27a3c6d5ULL);
        const auto powers = fixture::random_uplink_powers(rng, k, s.power_budget());
        const std::vector<std::vector<ComplexVec<double>>> detector_sets{
            fixture::random_directions(rng, s.n_antennas(), k), mrc_detectors(s),
            mmse_detectors<double>(s, LayerPartition::single_layer(k), powers)};
        for (const auto &vectors : detector_sets)
        {
            const DetectorSet<double> d(vectors, powers);
            const auto sdma = ul_sdma_rates(s, d);
            for (const auto &lp : partitions[static_cast<std::size_t>(k)])
            {
                const auto r = ul_ngma_rates(s, lp, d);
                for (std::size_t i = 0; i < r.size(); ++i)
                {
                    ++comparisons;
                    const double margin = r[i] - sdma[i];
                    worst = std::min(worst, margin);
                    if (margin < -1e-12)
                        ++violations;
                }
            }
        }
    }
    if (violations != 0)
        out.fail(std::to_string(violations) + " violations");
    out.note(std::to_string(comparisons) + " per-user comparisons over every ordered layer partition, " +
             std::to_string(violations) + " violations, smallest margin " + sci(worst));
    return out;
}

// 5. MMSE-SIC sum rate against log det
Outcome mmse_sic_oracle()
{
    Outcome out;
    double worst = 0;
    double spread = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        GaussianSource rng(1'000'000 + seed);
        const int k = fixture::draw_int(rng, 1, 6);
        const int n = fixture::draw_int(rng, 1, 8);
        const auto s = fixture::random_scenario(rng, n, k, true);
        const auto p = fixture::random_uplink_powers(rng, k, s.power_budget());
        const double capacity = oracle::mac_sum_capacity(s.channels(), p, s.noise_power(0));
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int rep = 0; rep < 5; ++rep)
        {
            const auto lp =
                LayerPartition::from_order(PermutationOrder::from_sequence(fixture::random_permutation(rng, k)));
            const DetectorSet<double> d(mmse_detectors<double>(s, lp, p), p);
            const auto r = ul_ngma_rates(s, lp, d);
            const double total = std::accumulate(r.begin(), r.end(), 0.0);
            worst = std::max(worst, std::abs(total - capacity));
            lo = std::min(lo, total);
            hi = std::max(hi, total);
        }
        spread = std::max(spread, hi - lo);
    }
    if (worst > 1e-9)
        out.fail("sum rate off log det by " + sci(worst));
    out.note("200 scenarios x 5 orders, max |sum - logdet| " + sci(worst) + ", max order spread " + sci(spread));
    return out;
}

ComplexVec<double> vec2(std::complex<double> a, std::complex<double> b)
{
    ComplexVec<double> v(2);
    v << a, b;
    return v;
}

template <typename F>
auto timed(Outcome &out, const std::string &label, F &&f)
{
    const auto start = Clock::now();
    auto result = f();
    const double elapsed = seconds_since(start);
    if (elapsed > 10.0)
        out.fail(label + " took " + sci(elapsed) + " s");
    return result;
}

// 6. Two-user and overloaded scenario claims
Outcome scenario_claims()
{
    Outcome out;

    // Orthogonal channels, zero-forcing family.
    {
        const Scenario<double> s({vec2(1, 0), vec2(0, std::complex<double>(0, 1.5))}, {1, 1}, 1.0);
        SearchSpace space;
        space.direction_family = DirectionFamily::zf;
        const auto r = timed(out, "orthogonal search", [&] { return dl_exhaustive_search(s, space); });
        if (!r.best || r.best->grouping().n_clusters() != 2)
            out.fail("orthogonal channels: winner is not SDMA-structured");
        else
            out.note("orthogonal: M=2 wins, sum " + sci(r.best_value));
    }

    // Parallel channels h1 = 3 h2, cluster-matched family.
    {
        const auto h2 = vec2({0.6, 0.2}, {-0.3, 0.5});
        const Scenario<double> s({3.0 * h2, h2}, {1, 1}, 1.0);
        for (auto objective : {Objective::sum_rate, Objective::min_rate})
        {
            SearchSpace space;
            space.direction_family = DirectionFamily::matched_to_channels;
            space.objective = objective;
            const auto r = timed(out, "parallel search", [&] { return dl_exhaustive_search(s, space); });
            space.downlink_scheme = DownlinkScheme::sdma;
            const auto sdma = timed(out, "parallel search", [&] { return dl_exhaustive_search(s, space); });
            const char *name = objective == Objective::sum_rate ? "sum" : "min";
            if (!r.best || r.best->grouping().n_clusters() != 1 || r.best->order.alpha(0, 1) != 0)
                out.fail(std::string("parallel channels (") + name + "): winner is not one cluster with user 1 decoding user 2");
            if (objective == Objective::min_rate && !(r.best_value > sdma.best_value + 1e-6))
                out.fail("parallel channels: NOMA does not strictly beat SDMA on the min rate");
            out.note(std::string("parallel ") + name + ": one-cluster NOMA " + sci(r.best_value) + " vs SDMA " +
                     sci(sdma.best_value));
        }
    }

    // Overloaded N = 2, K = 4 with pairwise-parallel clusters h1 = c1 h3, h2 = c2 h4.
    {
        ChannelSpec<double> spec;
        spec.kind = ChannelKind::clustered_correlated;
        spec.correlation_constants = {std::complex<double>(2.0, 0.5), std::complex<double>(-1.5, 1.0)};
        spec.seed = 2026;
        const auto s = generate_scenario(spec, 2, 4, {1, 1, 1, 1}, 1.0);
        const Grouping g({{0, 2}, {1, 3}}, 4);
        const auto dirs = cluster_zf_directions(s, g);
        double residual = 0;
        for (int j = 0; j < 4; ++j)
            for (int m = 0; m < 2; ++m)
                if (g.cluster_of(j) != m)
                    residual = std::max(residual, std::abs(inner_product(s.channel(j), dirs[static_cast<std::size_t>(m)])));
        if (residual > 1e-10)
            out.fail("cluster-ZF residual " + sci(residual));

        const std::vector<double> p{0.15, 0.15, 0.35, 0.35};
        const IntraClusterOrder o(g, {{2, 0}, {3, 1}}); // strong users decode the weak ones first
        const BeamformerSet<double> b(expand_cluster_directions<double>(g, dirs), p);
        const auto report = dl_sic_check(s, o, b);
        double worst = 0;
        for (int strong : {0, 1})
        {
            const auto &d = dirs[static_cast<std::size_t>(g.cluster_of(strong))];
            const double gain = std::norm(oracle::hermitian_dot(oracle::to_std(s.channel(strong)), oracle::to_std(d)));
            const double free = std::log2(1.0 + p[static_cast<std::size_t>(strong)] * gain / s.noise_power(strong));
            worst = std::max(worst, relative_error(report.per_user_rate[static_cast<std::size_t>(strong)], free));
        }
        if (worst > 1e-12)
            out.fail("strong users are not interference free (relative gap " + sci(worst) + ")");
        if (!report.sic_feasible)
            out.fail("overloaded configuration violates the decoding-rate condition");

        SearchSpace space;
        space.direction_family = DirectionFamily::cluster_zf;
        const auto r = timed(out, "overloaded search", [&] { return dl_exhaustive_search(s, space); });
        out.note("overloaded: residual " + sci(residual) + ", strong-user gap " + sci(worst) + ", search best " +
                 sci(r.best_value) + " with M=" + std::to_string(r.best ? r.best->grouping().n_clusters() : 0) +
                 " (" + std::to_string(r.skipped_groupings) + " groupings without a cluster-ZF solution)");
    }
    return out;
}

// 7. Table-level dominance over shared finite search spaces
Outcome scheme_dominance()
{
    Outcome out;
    int cb_runs = 0;
    double worst_dl = std::numeric_limits<double>::infinity();
    double worst_eq = 0;
    double worst_ul = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        GaussianSource rng(5'000'000 + seed);
        const int k = fixture::draw_int(rng, 2, 4);
        const int n = fixture::draw_int(rng, 1, 3);
        const auto s = fixture::random_scenario(rng, n, k, true);

        SearchSpace space;
        space.direction_family = DirectionFamily::matched_to_channels;
        space.power_grid = 4;
        space.objective = seed % 2 ? Objective::min_rate : Objective::sum_rate;
        const double best = dl_exhaustive_search(s, space).best_value;
        for (auto scheme : {DownlinkScheme::sdma, DownlinkScheme::bb_noma, DownlinkScheme::cb_noma})
        {
            space.downlink_scheme = scheme;
            try
            {
                const double restricted = dl_exhaustive_search(s, space).best_value;
                worst_dl = std::min(worst_dl, best - restricted);
                if (best < restricted - 1e-12 * std::max(1.0, restricted))
                    out.fail("downlink seed " + std::to_string(seed) + ": NGMA below a restricted scheme");
                cb_runs += scheme == DownlinkScheme::cb_noma;
            }
            catch (const Error &e)
            {
                if (e.kind() != ErrorKind::Infeasible || scheme != DownlinkScheme::cb_noma)
                    throw;
            }
        }

        SearchSpace up;
        up.power_grid = 4;
        up.detector = DetectorFamily::mrc;
        up.objective = space.objective;
        const double ngma = ul_exhaustive_search(s, up).best_value;
        up.uplink_scheme = UplinkScheme::noma;
        const double noma = ul_exhaustive_search(s, up).best_value;
        up.uplink_scheme = UplinkScheme::sdma;
        const double sdma = ul_exhaustive_search(s, up).best_value;
        worst_eq = std::max(worst_eq, std::abs(ngma - noma));
        worst_ul = std::min(worst_ul, noma - sdma);
        if (std::abs(ngma - noma) > 1e-12 * std::max(1.0, ngma))
            out.fail("uplink seed " + std::to_string(seed) + ": NGMA differs from NOMA by " + sci(ngma - noma));
        if (noma < sdma - 1e-12 * std::max(1.0, sdma))
            out.fail("uplink seed " + std::to_string(seed) + ": NOMA below SDMA");
    }
    out.note("100 scenarios; downlink min(NGMA - restricted) " + sci(worst_dl) + " (" + std::to_string(cb_runs) +
             " with a cluster-based space); uplink max |NGMA - NOMA| " + sci(worst_eq) + ", min(NOMA - SDMA) " +
             sci(worst_ul));
    return out;
}

// 8. Golden CLI outputs
struct GoldenCase
{
    std::string output;
    std::string args;
};

int run_tool(const std::string &tool, const std::string &args, const fs::path &inputs, const fs::path &out_file)
{
    const std::string cmd = "\"" + tool + "\" " + args + " --out \"" + out_file.string() + "\" 2>/dev/null";
    std::string expanded = cmd;
    for (std::size_t at; (at = expanded.find("@IN@")) != std::string::npos;)
        expanded.replace(at, 4, inputs.string());
    return std::system(expanded.c_str());
}

Outcome golden_outputs(const std::string &tool, const fs::path &golden, bool update, double suite_seconds)
{
    Outcome out;
    const std::vector<GoldenCase> cases{
        {"region_bc.csv", "region --bc --snr1-db 10 --snr2-db 0 --power 1 --grid 201"},
        {"region_mac.csv", "region --mac --snr1-db 10 --snr2-db 0 --power 1 --grid 201"},
        {"rate_ul.csv", "rate-ul --scenario \"@IN@/scalar_uplink.json\""},
        {"rate_dl.csv", "rate-dl --scenario \"@IN@/scalar_downlink.json\""},
        {"search_ul.json", "search-ul --scenario \"@IN@/scalar_uplink.json\""},
        {"search_dl.json", "search-dl --scenario \"@IN@/generated.json\" --family matched_to_channels --grid 3"},
        {"compare.csv", "compare --scenario \"@IN@/generated.json\" --grid 3"}};

    const fs::path inputs = golden / "inputs";
    const fs::path expected = golden / "expected";
    const fs::path work = fs::temp_directory_path() / ("ngma_golden_" + std::to_string(::getpid()));
    fs::create_directories(work);
    int compared = 0;
    for (const auto &c : cases)
    {
        const auto first = work / ("a_" + c.output);
        const auto second = work / ("b_" + c.output);
        if (run_tool(tool, c.args, inputs, first) != 0 || run_tool(tool, c.args, inputs, second) != 0)
        {
            out.fail(c.output + ": command failed");
            continue;
        }
        const auto a = io::read_file(first.string());
        if (a != io::read_file(second.string()))
            out.fail(c.output + ": two runs differ");
        const auto reference = expected / c.output;
        if (update)
        {
            fs::create_directories(expected);
            io::write_file_atomic(reference.string(), a);
        }
        else if (fs::exists(reference))
        {
            ++compared;
            if (io::read_file(reference.string()) != a)
                out.fail(c.output + ": differs from the stored golden file");
        }
    }
    fs::remove_all(work);
    out.note(std::to_string(cases.size()) + " CLI outputs byte-identical across two runs, " + std::to_string(compared) +
             " matched stored golden files");
    if (suite_seconds >= 300)
        out.fail("property suites took " + sci(suite_seconds) + " s");
    out.note("property suites ran in " + sci(suite_seconds) + " s");
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    if (argc < 3)
    {
        std::cerr << "usage: ngma_acceptance <ngma-binary> <golden-dir> [--update-golden]\n";
        return 2;
    }
    const std::string tool = argv[1];
    const fs::path golden = argv[2];
    const bool update = argc > 3 && std::string(argv[3]) == "--update-golden";

    int failures = 0;
    const auto report = [&](int id, const std::string &name, const Outcome &o, double elapsed) {
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << sci(elapsed) << " s): "
                  << o.detail << "\n"
                  << std::flush;
        failures += o.pass ? 0 : 1;
    };
    const auto run = [&](int id, const std::string &name, const std::function<Outcome()> &f) {
        const auto start = Clock::now();
        Outcome o;
        try
        {
            o = f();
        }
        catch (const std::exception &e)
        {
            o.fail(std::string("exception: ") + e.what());
        }
        report(id, name, o, seconds_since(start));
    };

    const auto suite_start = Clock::now();
    run(1, "BC capacity vs OMA region", bc_regions);
    run(2, "MAC capacity vs OMA region", mac_regions);
    run(3, "reduction identities", reductions);
    run(4, "uplink interference-set dominance", uplink_dominance);
    run(5, "MMSE-SIC log-det sum rate", mmse_sic_oracle);
    run(6, "two-user and overloaded scenario claims", scenario_claims);
    run(7, "scheme dominance over shared search spaces", scheme_dominance);
    const double suite_seconds = seconds_since(suite_start);
    run(8, "runtime budget and golden CLI outputs",
        [&] { return golden_outputs(tool, golden, update, suite_seconds); });

    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
