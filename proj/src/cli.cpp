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

#include "ngma/cli.hpp"

#include "ngma/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <optional>
#include <string>

namespace ngma
{
namespace
{

using io::json;

struct Options
{
    std::optional<std::string> scenario;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> cap;
    std::optional<int> grid;
    std::optional<double> snr1_db;
    std::optional<double> snr2_db;
    std::optional<double> power;
    std::optional<std::string> objective;
    std::optional<std::string> detector;
    std::optional<std::string> sic_mode;
    std::optional<std::string> family;
    std::optional<std::string> scheme;
    std::optional<std::string> oma_power;
    bool bc = false;
    bool mac = false;
};

// Thrown for exit-code-3 outcomes that still produced output.
struct InfeasibleOutcome
{
    std::string message;
};

double db_to_linear(double db)
{
    require(std::isfinite(db), ErrorKind::InvalidSpec, "dB values must be finite");
    return std::pow(10.0, db / 10.0);
}

json load_config(const Options &opt)
{
    if (!opt.scenario)
        return json::object();
    const std::string text = io::read_file(*opt.scenario);
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (const json::parse_error &)
    {
        throw Error(ErrorKind::InvalidSpec, "cannot parse " + *opt.scenario + " as JSON");
    }
    require(root.is_object(), ErrorKind::InvalidSpec, *opt.scenario + " must hold a JSON object");
    return root;
}

template <typename T>
T pick(const std::optional<T> &flag, const json &root, const char *key, T fallback)
{
    if (flag)
        return *flag;
    if (root.contains(key))
    {
        try
        {
            return root.at(key).get<T>();
        }
        catch (const json::exception &)
        {
            throw Error(ErrorKind::InvalidSpec, std::string("malformed '") + key + "'");
        }
    }
    return fallback;
}

Scenario<double> load_scenario(const Options &opt, const json &root)
{
    require(opt.scenario.has_value(), ErrorKind::InvalidSpec, "this command needs --scenario PATH");
    json sj = root.contains("scenario") ? root.at("scenario") : root;
    require(sj.is_object(), ErrorKind::InvalidSpec, "scenario must be a JSON object");
    if (opt.power)
        sj["power_budget"] = *opt.power;
    if (!sj.contains("channel_spec"))
        return io::scenario_from_json(sj);

    auto spec = io::channel_spec_from_json(sj.at("channel_spec"));
    if (opt.seed)
        spec.seed = *opt.seed;
    const auto get_int = [&](const char *key) {
        require(sj.contains(key) && sj.at(key).is_number_integer(), ErrorKind::InvalidSpec,
                std::string("missing integer '") + key + "'");
        return sj.at(key).get<int>();
    };
    const int n_users = get_int("n_users");
    require(sj.contains("noise_powers") && sj.contains("power_budget"), ErrorKind::InvalidSpec,
            "generated scenarios need noise_powers and power_budget");
    return generate_scenario(spec, get_int("n_antennas"), n_users, sj.at("noise_powers").get<std::vector<double>>(),
                             sj.at("power_budget").get<double>());
}

Objective parse_objective(const std::string &name)
{
    if (name == "sum" || name == "sum_rate")
        return Objective::sum_rate;
    if (name == "min" || name == "min_rate")
        return Objective::min_rate;
    throw Error(ErrorKind::InvalidSpec, "unknown objective '" + name + "'");
}

DetectorFamily parse_detector(const std::string &name)
{
    if (name == "mrc")
        return DetectorFamily::mrc;
    if (name == "zf")
        return DetectorFamily::zf;
    if (name == "mmse")
        return DetectorFamily::mmse;
    throw Error(ErrorKind::InvalidSpec, "unknown detector '" + name + "'");
}

SicMode parse_sic_mode(const std::string &name)
{
    if (name == "strict")
        return SicMode::strict;
    if (name == "relaxed")
        return SicMode::relaxed;
    throw Error(ErrorKind::InvalidSpec, "unknown SIC mode '" + name + "'");
}

DirectionFamily parse_family(const std::string &name)
{
    if (name == "zf")
        return DirectionFamily::zf;
    if (name == "cluster_zf")
        return DirectionFamily::cluster_zf;
    if (name == "mrc_like")
        return DirectionFamily::mrc_like;
    if (name == "matched_to_channels")
        return DirectionFamily::matched_to_channels;
    if (name == "explicit")
        return DirectionFamily::explicit_list;
    throw Error(ErrorKind::InvalidSpec, "unknown direction family '" + name + "'");
}

std::vector<ComplexVec<double>> directions_from_json(const json &j)
{
    require(j.is_array(), ErrorKind::InvalidSpec, "directions must be an array of vectors");
    std::vector<ComplexVec<double>> dirs;
    for (const auto &d : j)
        dirs.push_back(io::vector_from_json(d));
    return dirs;
}

void emit(const Options &opt, const std::string &content, std::ostream &out)
{
    if (opt.out)
        io::write_file_atomic(*opt.out, content);
    else
        out << content;
}

int run_region(const Options &opt, std::ostream &out)
{
    const json root = load_config(opt);
    const json rj = root.contains("region") ? root.at("region") : json::object();
    require(!(opt.bc && opt.mac), ErrorKind::InvalidSpec, "choose one of --bc and --mac");

    RegionSpec spec;
    spec.snr_1 = db_to_linear(pick(opt.snr1_db, rj, "snr1_db", 10.0));
    spec.snr_2 = db_to_linear(pick(opt.snr2_db, rj, "snr2_db", 0.0));
    spec.power_budget = pick(opt.power, rj, "power", 1.0);
    spec.grid_points = pick(opt.grid, rj, "grid", 1001);

    std::string channel = rj.value("channel", std::string("bc"));
    if (opt.bc)
        channel = "bc";
    if (opt.mac)
        channel = "mac";
    const std::string oma_name = pick(opt.oma_power, rj, "oma_power", std::string("reallocated"));
    require(oma_name == "reallocated" || oma_name == "fixed", ErrorKind::InvalidSpec,
            "unknown OMA power convention '" + oma_name + "'");
    const OmaPower oma = oma_name == "fixed" ? OmaPower::fixed : OmaPower::reallocated;

    std::vector<std::pair<std::string, RegionBoundary>> curves;
    if (channel == "bc")
    {
        curves.emplace_back("NOMA", bc_noma_boundary(spec));
        curves.emplace_back("OMA", bc_oma_boundary(spec, oma));
    }
    else if (channel == "mac")
    {
        curves.emplace_back("NOMA", mac_noma_boundary(spec));
        curves.emplace_back("OMA", mac_oma_boundary(spec, oma));
    }
    else
    {
        throw Error(ErrorKind::InvalidSpec, "unknown channel '" + channel + "', expected bc or mac");
    }
    emit(opt, io::region_csv(curves), out);
    return exit_ok;
}

/// Weakest channel decoded first, ties by index.
std::vector<int> rank_by_channel_strength(const Scenario<double> &s)
{
    std::vector<int> users(static_cast<std::size_t>(s.n_users()));
    for (int k = 0; k < s.n_users(); ++k)
        users[static_cast<std::size_t>(k)] = k;
    std::stable_sort(users.begin(), users.end(),
                     [&](int a, int b) { return s.channel(a).squaredNorm() < s.channel(b).squaredNorm(); });
    std::vector<int> rank(users.size());
    for (std::size_t r = 0; r < users.size(); ++r)
        rank[static_cast<std::size_t>(users[r])] = static_cast<int>(r);
    return rank;
}

int run_rate_dl(const Options &opt, std::ostream &out)
{
    const json root = load_config(opt);
    const auto s = load_scenario(opt, root);
    const Grouping g =
        root.contains("grouping") ? io::grouping_from_json(root.at("grouping"), s.n_users()) : Grouping::singletons(s.n_users());
    const IntraClusterOrder order = root.contains("order") ? io::order_from_json(root.at("order"), g)
                                                           : IntraClusterOrder::by_rank(g, rank_by_channel_strength(s));

    std::vector<ComplexVec<double>> dirs;
    if (root.contains("directions"))
    {
        dirs = directions_from_json(root.at("directions"));
    }
    else
    {
        switch (parse_family(pick(opt.family, root, "direction_family", std::string("mrc_like"))))
        {
        case DirectionFamily::zf:
            dirs = zf_directions(s);
            break;
        case DirectionFamily::cluster_zf:
            dirs = expand_cluster_directions<double>(g, cluster_zf_directions(s, g));
            break;
        case DirectionFamily::matched_to_channels:
            dirs = expand_cluster_directions<double>(g, matched_cluster_directions(s, g));
            break;
        case DirectionFamily::mrc_like:
            dirs = matched_directions(s);
            break;
        case DirectionFamily::explicit_list:
            throw Error(ErrorKind::InvalidSpec, "explicit family needs a 'directions' key");
        }
    }
    std::vector<double> powers(static_cast<std::size_t>(s.n_users()), s.power_budget() / s.n_users());
    if (root.contains("powers"))
        powers = root.at("powers").get<std::vector<double>>();

    const BeamformerSet<double> beams(std::move(dirs), std::move(powers));
    const SicMode mode = parse_sic_mode(pick(opt.sic_mode, root, "sic_mode", std::string("strict")));
    emit(opt, io::downlink_rates_csv(g, dl_sic_check(s, order, beams, mode)), out);
    return exit_ok;
}

int run_rate_ul(const Options &opt, std::ostream &out)
{
    const json root = load_config(opt);
    const auto s = load_scenario(opt, root);
    const LayerPartition lp = root.contains("layers") ? io::layers_from_json(root.at("layers"), s.n_users())
                                                      : LayerPartition::single_layer(s.n_users());
    std::vector<double> powers(static_cast<std::size_t>(s.n_users()), s.power_budget());
    if (root.contains("powers"))
        powers = root.at("powers").get<std::vector<double>>();

    std::vector<ComplexVec<double>> vectors;
    if (root.contains("detectors"))
        vectors = directions_from_json(root.at("detectors"));
    else
        vectors = make_detectors<double>(s, parse_detector(pick(opt.detector, root, "detector", std::string("mrc"))),
                                         lp, powers);
    const DetectorSet<double> d(std::move(vectors), std::move(powers));
    emit(opt, io::uplink_rates_csv(lp, ul_ngma_rates(s, lp, d)), out);
    return exit_ok;
}

SearchSpace load_search_space(const Options &opt, const json &root, const Scenario<double> &s)
{
    const json sj = root.contains("search") ? root.at("search") : json::object();
    SearchSpace space;

    const std::string grouping_mode = sj.value("grouping_mode", std::string("all_partitions"));
    if (grouping_mode == "fixed")
    {
        space.grouping_mode = GroupingMode::fixed;
        if (sj.contains("grouping"))
            space.fixed_grouping = io::grouping_from_json(sj.at("grouping"), s.n_users());
        if (sj.contains("layers"))
            space.fixed_layers = io::layers_from_json(sj.at("layers"), s.n_users());
    }
    else
    {
        require(grouping_mode == "all_partitions", ErrorKind::InvalidSpec,
                "unknown grouping_mode '" + grouping_mode + "'");
    }

    const std::string order_mode = sj.value("order_mode", std::string("all_permutations"));
    if (order_mode == "fixed")
    {
        space.order_mode = OrderMode::fixed;
        if (sj.contains("rank"))
        {
            space.fixed_rank = sj.at("rank").get<std::vector<int>>();
            for (int &r : space.fixed_rank)
                --r;
        }
        else
        {
            space.fixed_rank = rank_by_channel_strength(s);
        }
    }
    else
    {
        require(order_mode == "all_permutations", ErrorKind::InvalidSpec, "unknown order_mode '" + order_mode + "'");
    }

    space.direction_family = parse_family(pick(opt.family, sj, "direction_family", std::string("zf")));
    if (space.direction_family == DirectionFamily::explicit_list)
    {
        require(sj.contains("directions"), ErrorKind::InvalidSpec, "explicit family needs 'directions'");
        space.explicit_directions = directions_from_json(sj.at("directions"));
    }
    space.detector = parse_detector(pick(opt.detector, sj, "detector", std::string("mrc")));
    space.power_grid = pick(opt.grid, sj, "power_grid", 10);
    space.objective = parse_objective(pick(opt.objective, sj, "objective", std::string("sum")));
    space.sic_mode = parse_sic_mode(pick(opt.sic_mode, sj, "sic_mode", std::string("strict")));
    space.cap = pick(opt.cap, sj, "cap", default_search_cap);
    return space;
}

DownlinkScheme parse_downlink_scheme(const std::string &name)
{
    if (name == "ngma")
        return DownlinkScheme::ngma;
    if (name == "sdma")
        return DownlinkScheme::sdma;
    if (name == "bb_noma")
        return DownlinkScheme::bb_noma;
    if (name == "cb_noma")
        return DownlinkScheme::cb_noma;
    throw Error(ErrorKind::InvalidSpec, "unknown downlink scheme '" + name + "'");
}

UplinkScheme parse_uplink_scheme(const std::string &name)
{
    if (name == "ngma")
        return UplinkScheme::ngma;
    if (name == "sdma")
        return UplinkScheme::sdma;
    if (name == "noma")
        return UplinkScheme::noma;
    throw Error(ErrorKind::InvalidSpec, "unknown uplink scheme '" + name + "'");
}

int run_search_dl(const Options &opt, std::ostream &out)
{
    const json root = load_config(opt);
    const auto s = load_scenario(opt, root);
    auto space = load_search_space(opt, root, s);
    const json sj = root.contains("search") ? root.at("search") : json::object();
    space.downlink_scheme = parse_downlink_scheme(pick(opt.scheme, sj, "scheme", std::string("ngma")));
    const auto result = dl_exhaustive_search(s, space);
    emit(opt, io::to_json(result, space.objective).dump(2) + "\n", out);
    if (!result.feasible)
        throw InfeasibleOutcome{"no configuration satisfies the SIC decoding condition"};
    return exit_ok;
}

int run_search_ul(const Options &opt, std::ostream &out)
{
    const json root = load_config(opt);
    const auto s = load_scenario(opt, root);
    auto space = load_search_space(opt, root, s);
    const json sj = root.contains("search") ? root.at("search") : json::object();
    space.uplink_scheme = parse_uplink_scheme(pick(opt.scheme, sj, "scheme", std::string("ngma")));
    const auto result = ul_exhaustive_search(s, space);
    emit(opt, io::to_json(result, space.objective).dump(2) + "\n", out);
    if (!result.feasible)
        throw InfeasibleOutcome{"no feasible uplink configuration"};
    return exit_ok;
}

int run_compare(const Options &opt, std::ostream &out)
{
    const json root = load_config(opt);
    const auto s = load_scenario(opt, root);
    json sj = root.contains("search") ? root.at("search") : json::object();
    if (!opt.family && !sj.contains("direction_family"))
        sj["direction_family"] = "matched_to_channels";
    json adjusted = root;
    adjusted["search"] = sj;
    const auto base = load_search_space(opt, adjusted, s);

    const std::pair<const char *, DownlinkScheme> schemes[] = {{"SDMA", DownlinkScheme::sdma},
                                                                {"BB-NOMA", DownlinkScheme::bb_noma},
                                                                {"CB-NOMA", DownlinkScheme::cb_noma},
                                                                {"NGMA", DownlinkScheme::ngma}};
    std::string csv = "scheme,status,best_value,n_clusters,evaluations\n";
    for (const auto &[name, scheme] : schemes)
    {
        auto space = base;
        space.downlink_scheme = scheme;
        std::string status = "ok";
        std::string value;
        std::string clusters;
        std::string evaluations = "0";
        try
        {
            const auto r = dl_exhaustive_search(s, space);
            evaluations = std::to_string(r.evaluations);
            if (r.feasible)
            {
                value = io::format_number(r.best_value);
                clusters = std::to_string(r.best->grouping().n_clusters());
            }
            else
            {
                status = "infeasible";
            }
        }
        catch (const Error &e)
        {
            if (e.kind() == ErrorKind::SearchTooLarge)
                throw;
            status = e.kind() == ErrorKind::Infeasible ? "empty" : "unsupported";
        }
        csv += std::string(name) + "," + status + "," + value + "," + clusters + "," + evaluations + "\n";
    }
    emit(opt, csv, out);
    return exit_ok;
}

void add_options(CLI::App &sub, Options &opt)
{
    sub.add_option("--scenario", opt.scenario, "JSON scenario/config file");
    sub.add_option("--out", opt.out, "Output path (stdout when omitted)");
    sub.add_option("--seed", opt.seed, "Seed for generated channels");
    sub.add_option("--cap", opt.cap, "Maximum number of search configurations");
    sub.add_option("--grid", opt.grid, "Region grid points, or power grid steps for searches");
    sub.add_option("--snr1-db", opt.snr1_db, "User 1 SNR in dB");
    sub.add_option("--snr2-db", opt.snr2_db, "User 2 SNR in dB");
    sub.add_option("--power", opt.power, "Power budget in W");
    sub.add_option("--objective", opt.objective, "sum or min");
    sub.add_option("--detector", opt.detector, "mrc, mmse or zf");
    sub.add_option("--sic-mode", opt.sic_mode, "strict or relaxed");
    sub.add_option("--family", opt.family, "zf, cluster_zf, mrc_like, matched_to_channels or explicit");
    sub.add_option("--scheme", opt.scheme, "Scheme restriction for searches");
    sub.add_option("--oma-power", opt.oma_power, "reallocated or fixed");
    sub.add_flag("--bc", opt.bc, "Broadcast channel regions");
    sub.add_flag("--mac", opt.mac, "Multiple-access channel regions");
}

std::string single_line(std::string text)
{
    for (char &c : text)
        if (c == '\n' || c == '\r')
            c = ' ';
    return text;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Rate-level simulator for multi-antenna NOMA/SDMA multiple access", "ngma"};
    app.require_subcommand(1);
    Options opt;
    struct Command
    {
        const char *name;
        const char *help;
        int (*run)(const Options &, std::ostream &);
    };
    const Command commands[] = {{"region", "Two-user SISO BC/MAC rate regions (CSV)", run_region},
                                {"rate-dl", "Downlink per-user rates and SIC verdict (CSV)", run_rate_dl},
                                {"rate-ul", "Uplink layered-detection rates (CSV)", run_rate_ul},
                                {"search-dl", "Exhaustive downlink search (JSON)", run_search_dl},
                                {"search-ul", "Exhaustive uplink search (JSON)", run_search_ul},
                                {"compare", "Best value per downlink scheme (CSV)", run_compare}};
    std::vector<CLI::App *> subs;
    for (const auto &c : commands)
    {
        auto *sub = app.add_subcommand(c.name, c.help);
        add_options(*sub, opt);
        subs.push_back(sub);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &)
    {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: " << single_line(e.what()) << "\n";
        return exit_config_error;
    }

    try
    {
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed())
                return commands[i].run(opt, out);
        err << "error: no command given\n";
        return exit_config_error;
    }
    catch (const InfeasibleOutcome &e)
    {
        err << "error: " << e.message << "\n";
        return exit_infeasible;
    }
    catch (const Error &e)
    {
        err << "error: " << single_line(e.what()) << "\n";
        return e.kind() == ErrorKind::Infeasible || e.kind() == ErrorKind::SearchTooLarge ? exit_infeasible
                                                                                         : exit_config_error;
    }
    catch (const io::json::exception &e)
    {
        err << "error: " << single_line(e.what()) << "\n";
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        err << "error: " << single_line(e.what()) << "\n";
        return exit_config_error;
    }
}

} // namespace ngma
