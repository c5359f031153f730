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
#include "ngma/partitions.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

using namespace ngma;
using cd = std::complex<double>;
using Vec = ComplexVec<double>;

namespace
{

Vec vec2(cd a, cd b)
{
    Vec v(2);
    v << a, b;
    return v;
}

Vec scalar(double x)
{
    Vec v(1);
    v << x;
    return v;
}

} // namespace

TEST_CASE("orthogonal channels favour separate clusters")
{
    const Scenario<double> s({vec2(1, 0), vec2(0, 1)}, {1, 1}, 1.0);
    SearchSpace space;
    space.direction_family = DirectionFamily::zf;
    const auto r = dl_exhaustive_search(s, space);
    REQUIRE(r.feasible);
    CHECK(r.best->grouping().n_clusters() == 2);
    CHECK(r.best_value == doctest::Approx(2 * std::log2(1.5)).epsilon(1e-12));
}

TEST_CASE("parallel channels favour one cluster with the strong user decoding")
{
    const Vec h2 = vec2(cd(0.6, 0.2), cd(-0.3, 0.5));
    const Scenario<double> s({3.0 * h2, h2}, {1, 1}, 1.0);
    for (auto objective : {Objective::sum_rate, Objective::min_rate})
    {
        SearchSpace space;
        space.direction_family = DirectionFamily::matched_to_channels;
        space.objective = objective;
        const auto r = dl_exhaustive_search(s, space);
        REQUIRE(r.feasible);
        CHECK(r.best->grouping().n_clusters() == 1);
        CHECK(r.best->order.alpha(0, 1) == 0);

        space.downlink_scheme = DownlinkScheme::sdma;
        const auto sdma = dl_exhaustive_search(s, space);
        if (objective == Objective::min_rate)
            CHECK(r.best_value > sdma.best_value + 1e-6);
        else
            CHECK(r.best_value >= sdma.best_value);
    }
}

TEST_CASE("single user search hits the single-user bound")
{
    const Scenario<double> s({vec2(1, cd(0, 2))}, {0.5}, 2.0);
    SearchSpace space;
    space.direction_family = DirectionFamily::mrc_like;
    const auto r = dl_exhaustive_search(s, space);
    CHECK(r.best_value == doctest::Approx(std::log2(1 + 2.0 * 5.0 / 0.5)).epsilon(1e-14));
    CHECK(r.evaluations == 11);

    SearchSpace up;
    const Scenario<double> u({vec2(1, cd(0, 2))}, {0.5}, 2.0);
    const auto ur = ul_exhaustive_search(u, up);
    CHECK(ur.best->layers.n_layers() == 1);
    CHECK(ur.best_value == doctest::Approx(std::log2(1 + 2.0 * 5.0 / 0.5)).epsilon(1e-14));
}

TEST_CASE("uplink scalar example")
{
    const Scenario<double> s({scalar(std::sqrt(10.0)), scalar(1.0)}, {1, 1}, 1.0);
    SearchSpace space;
    const auto r = ul_exhaustive_search(s, space);
    REQUIRE(r.best);
    CHECK(r.best->layers.n_layers() == 2);
    CHECK(r.best_value == doctest::Approx(std::log2(12.0)).epsilon(1e-12));
    REQUIRE(r.per_layer_count.size() == 2);
    CHECK(r.per_layer_count[0].n_layers == 1);
    CHECK(r.per_layer_count[0].best_value < r.best_value - 1e-3);
    CHECK(r.evaluations == 3 * 11 * 11);

    SearchSpace min_space;
    min_space.objective = Objective::min_rate;
    const auto m = ul_exhaustive_search(s, min_space);
    CHECK(m.best_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.best->layers == LayerPartition({{0}, {1}}, 2));
}

TEST_CASE("uplink NGMA matches the best serial order")
{
    GaussianSource rng(41);
    for (int trial = 0; trial < 10; ++trial)
    {
        const int k = fixture::draw_int(rng, 1, 3);
        const auto s = fixture::random_scenario(rng, fixture::draw_int(rng, 1, 3), k, true);
        SearchSpace space;
        space.power_grid = 3;
        const auto ngma = ul_exhaustive_search(s, space);
        space.uplink_scheme = UplinkScheme::noma;
        const auto noma = ul_exhaustive_search(s, space);
        space.uplink_scheme = UplinkScheme::sdma;
        const auto sdma = ul_exhaustive_search(s, space);
        CHECK(std::abs(ngma.best_value - noma.best_value) <= 1e-12 * std::max(1.0, ngma.best_value));
        CHECK(ngma.best_value >= sdma.best_value * (1 - 1e-12));
    }
}

TEST_CASE("search size is checked against the cap")
{
    GaussianSource rng(42);
    const auto s = fixture::random_scenario(rng, 4, 4);
    SearchSpace space;
    space.cap = 100;
    try
    {
        dl_exhaustive_search(s, space);
        FAIL("expected SearchTooLarge");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::SearchTooLarge);
    }
    try
    {
        ul_exhaustive_search(fixture::random_scenario(rng, 4, 4, true), space);
        FAIL("expected SearchTooLarge");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::SearchTooLarge);
    }

    space.cap = default_search_cap;
    space.power_grid = 2;
    // 4 users: 75 (grouping, order) pairs weighted by orders; power tuples with sum <= 2: C(6, 4) = 15
    std::uint64_t orders = 0;
    for (const auto &blocks : set_partitions(4))
        orders += block_permutations(blocks).size();
    CHECK(downlink_search_size(s, space) == orders * 15);
    CHECK(uplink_search_size(s, space) == 75 * 81);
}

TEST_CASE("results do not depend on the worker count")
{
    GaussianSource rng(43);
    for (int trial = 0; trial < 5; ++trial)
    {
        const auto s = fixture::random_scenario(rng, 3, 3, true);
        SearchSpace space;
        space.direction_family = trial % 2 ? DirectionFamily::matched_to_channels : DirectionFamily::mrc_like;
        space.power_grid = 4;
        space.threads = 1;
        const auto a = dl_exhaustive_search(s, space);
        space.threads = 4;
        const auto b = dl_exhaustive_search(s, space);
        CHECK(a.feasible == b.feasible);
        CHECK(a.best_value == b.best_value);
        CHECK(a.evaluations == b.evaluations);
        if (a.best && b.best)
        {
            CHECK(a.best->order.sequences() == b.best->order.sequences());
            CHECK(a.best->power_indices == b.best->power_indices);
        }

        space.threads = 1;
        const auto ua = ul_exhaustive_search(s, space);
        space.threads = 3;
        const auto ub = ul_exhaustive_search(s, space);
        CHECK(ua.best_value == ub.best_value);
        CHECK(ua.best->layers == ub.best->layers);
        CHECK(ua.best->power_indices == ub.best->power_indices);
    }
}

TEST_CASE("best value reproduces through the rate kernels")
{
    GaussianSource rng(44);
    for (int trial = 0; trial < 10; ++trial)
    {
        const int k = fixture::draw_int(rng, 2, 3);
        const auto s = fixture::random_scenario(rng, fixture::draw_int(rng, 1, 3), k, true);
        SearchSpace space;
        space.direction_family = DirectionFamily::matched_to_channels;
        space.power_grid = 3;
        space.objective = trial % 2 ? Objective::min_rate : Objective::sum_rate;
        const auto r = dl_exhaustive_search(s, space);
        REQUIRE(r.best);
        const auto report = dl_sic_check(s, r.best->order, r.best->beams);
        CHECK(report.sic_feasible);
        CHECK(std::abs(objective_value(space.objective, report.per_user_rate) - r.best_value) <=
              1e-12 * std::max(1.0, r.best_value));

        space.detector = DetectorFamily::mmse;
        const auto u = ul_exhaustive_search(s, space);
        REQUIRE(u.best);
        const auto rates = ul_ngma_rates(s, u.best->layers, u.best->detectors);
        CHECK(std::abs(objective_value(space.objective, rates) - u.best_value) <= 1e-12 * std::max(1.0, u.best_value));
    }
}

TEST_CASE("fixed grouping and order restrict the search")
{
    const Vec h2 = vec2(cd(0.6, 0.2), cd(-0.3, 0.5));
    const Scenario<double> s({3.0 * h2, h2}, {1, 1}, 1.0);
    SearchSpace space;
    space.direction_family = DirectionFamily::matched_to_channels;
    space.grouping_mode = GroupingMode::fixed;
    space.fixed_grouping = Grouping::single_cluster(2);
    space.order_mode = OrderMode::fixed;
    space.fixed_rank = {0, 1}; // user 1 decoded first: the weak user must decode the strong one
    space.power_grid = 4;
    const auto r = dl_exhaustive_search(s, space);
    CHECK(r.evaluations == 15);
    REQUIRE(r.feasible); // feasible only with the strong user switched off
    CHECK(r.best->power_indices[0] == 0);
}

TEST_CASE("cluster-based search needs a cluster-shared direction family")
{
    const Vec h2 = vec2(cd(0.6, 0.2), cd(-0.3, 0.5));
    const Scenario<double> s({3.0 * h2, h2, vec2(1, 0), vec2(0, 1)}, {1, 1, 1, 1}, 1.0);
    SearchSpace space;
    space.direction_family = DirectionFamily::mrc_like;
    space.downlink_scheme = DownlinkScheme::cb_noma;
    space.power_grid = 2;
    try
    {
        dl_exhaustive_search(s, space);
        FAIL("expected InvalidSpec");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::InvalidSpec);
    }
    space.direction_family = DirectionFamily::matched_to_channels;
    const auto r = dl_exhaustive_search(s, space);
    REQUIRE(r.best);
    CHECK(r.best->grouping().n_clusters() == 2);
    for (const auto &c : r.best->grouping().clusters())
        CHECK(c.size() == 2);
}

TEST_CASE("cluster zero-forcing skips infeasible groupings")
{
    GaussianSource rng(45);
    const auto s = fixture::random_scenario(rng, 2, 3);
    SearchSpace space;
    space.direction_family = DirectionFamily::cluster_zf;
    space.power_grid = 2;
    const auto r = dl_exhaustive_search(s, space);
    // Every grouping with M > 1 leaves a singleton facing two generic channels in N=2.
    CHECK(r.skipped_groupings == 4);
    CHECK(r.evaluations > 0);

    space.direction_family = DirectionFamily::zf;
    try
    {
        dl_exhaustive_search(s, space);
        FAIL("expected Infeasible");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::Infeasible);
    }
}
