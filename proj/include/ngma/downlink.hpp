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

#ifndef NGMA_DOWNLINK_HPP
#define NGMA_DOWNLINK_HPP

#include "ngma/core.hpp"

#include <span>
#include <vector>

namespace ngma
{

/// Partition of the K users into M ordered, non-empty clusters. User indices
/// are 0-based; members of each cluster are kept sorted.
class Grouping
{
  public:
    Grouping(std::vector<std::vector<int>> clusters, int n_users);

    static Grouping singletons(int n_users);
    static Grouping single_cluster(int n_users);

    int n_users() const { return static_cast<int>(cluster_of_.size()); }
    int n_clusters() const { return static_cast<int>(clusters_.size()); }
    const std::vector<int> &cluster(int m) const { return clusters_.at(static_cast<std::size_t>(m)); }
    const std::vector<std::vector<int>> &clusters() const { return clusters_; }
    int cluster_of(int k) const;

    /// Restricted-growth labelling: user 0 gets label 0, each new cluster
    /// the next label in order of its smallest member.
    std::vector<int> canonical_labels() const;

    friend bool operator==(const Grouping &, const Grouping &) = default;

  private:
    std::vector<std::vector<int>> clusters_;
    std::vector<int> cluster_of_;
};

/// SIC order inside each cluster, stored as one decoding sequence per cluster.
/// A user decodes and removes the signals of every cluster member listed
/// before it and treats members listed after it as interference, so the
/// pairwise gates alpha(k, i) are antisymmetric and transitive by construction.
class IntraClusterOrder
{
  public:
    IntraClusterOrder(const Grouping &grouping, std::vector<std::vector<int>> sequences);

    /// Ascending user index inside every cluster.
    static IntraClusterOrder by_index(const Grouping &grouping);

    /// Orders each cluster by ascending rank[k] (rank is a permutation of 0..K-1).
    static IntraClusterOrder by_rank(const Grouping &grouping, std::span<const int> rank);

    /// 1 when user k treats s_i as interference, 0 when k decodes and removes s_i.
    int alpha(int k, int i) const;

    int position(int k) const { return position_.at(static_cast<std::size_t>(k)); }
    const std::vector<std::vector<int>> &sequences() const { return sequences_; }
    const Grouping &grouping() const { return grouping_; }

  private:
    Grouping grouping_;
    std::vector<std::vector<int>> sequences_;
    std::vector<int> position_;
};

/// w_k = sqrt(p_k) * direction_k with unit-norm directions.
template <typename Real = double>
struct BeamformerSet
{
    BeamformerSet(std::vector<ComplexVec<Real>> dirs, std::vector<Real> pows)
        : directions(std::move(dirs)), powers(std::move(pows))
    {
        require(directions.size() == powers.size(), ErrorKind::DimensionError,
                "need one power per beamforming direction");
        for (std::size_t k = 0; k < directions.size(); ++k)
        {
            require(std::abs(directions[k].norm() - Real(1)) <= unit_norm_tolerance<Real>(),
                    ErrorKind::InvalidSpec,
                    "direction " + std::to_string(k + 1) + " is not unit norm");
            require(std::isfinite(powers[k]) && powers[k] >= 0, ErrorKind::InvalidSpec,
                    "powers must be finite and non-negative");
        }
    }

    std::vector<ComplexVec<Real>> directions;
    std::vector<Real> powers;
};

enum class SicMode
{
    strict,  ///< decoding-rate condition checked and reported, rates untouched
    relaxed  ///< rate of each decoded user capped by the worst decoder
};

struct SicViolation
{
    int decoder;
    int target;
    int cluster;
    double slack; ///< R_{target->decoder} - R_{target->target}, negative
};

template <typename Real = double>
struct RateReport
{
    std::vector<Real> per_user_rate;
    bool sic_feasible = true;
    std::vector<SicViolation> violated_pairs;
};

/// Absolute slack on the decoding-rate condition, bit/s/Hz.
inline constexpr double sic_tolerance = 1e-9;

/// Relative singular-value threshold for zero-forcing feasibility.
inline constexpr double rank_tolerance = 1e-10;

/// G(k, j) = |h_k^H d_j|^2 for unit directions d_j.
template <typename Real>
RealMat<Real> gain_matrix(const Scenario<Real> &s, std::span<const ComplexVec<Real>> directions)
{
    const int n_users = s.n_users();
    require(static_cast<int>(directions.size()) == n_users, ErrorKind::DimensionError,
            "need one direction per user");
    RealMat<Real> gains(n_users, static_cast<Eigen::Index>(directions.size()));
    for (int k = 0; k < n_users; ++k)
        for (int j = 0; j < n_users; ++j)
            gains(k, j) = std::norm(inner_product(s.channel(k), directions[static_cast<std::size_t>(j)]));
    return gains;
}

namespace detail
{

template <typename Real>
void check_beams(const Scenario<Real> &s, const BeamformerSet<Real> &b)
{
    require(static_cast<int>(b.directions.size()) == s.n_users(), ErrorKind::DimensionError,
            "need one beamformer per user");
    Real total = 0;
    for (std::size_t k = 0; k < b.directions.size(); ++k)
    {
        require(b.directions[k].size() == s.n_antennas(), ErrorKind::DimensionError,
                "beamformer length differs from antenna count");
        total += b.powers[k];
    }
    require(total <= s.power_budget() + Real(1e-12), ErrorKind::InvalidSpec,
            "transmit powers exceed the power budget");
}

inline void check_user(int k, int n_users)
{
    require(k >= 0 && k < n_users, ErrorKind::InvalidUser,
            "user index " + std::to_string(k) + " out of range");
}

/// Rate at which `decoder` decodes s_target. The interference is what is still
/// on the air when s_target is decoded: cluster members decoded after the
/// target, plus every stream of every other cluster. decoder == target gives
/// the user's own rate.
template <typename Real>
Real downlink_rate(const RealMat<Real> &gains, std::span<const Real> powers, Real noise,
                   const IntraClusterOrder &order, int decoder, int target)
{
    const Grouping &g = order.grouping();
    const int cluster = g.cluster_of(target);
    const int target_pos = order.position(target);
    Real interference = 0;
    for (int j = 0; j < g.n_users(); ++j)
    {
        if (j == target)
            continue;
        if (g.cluster_of(j) == cluster && order.position(j) < target_pos)
            continue; // already removed by SIC
        interference += powers[static_cast<std::size_t>(j)] * gains(decoder, j);
    }
    const Real signal = powers[static_cast<std::size_t>(target)] * gains(decoder, target);
    return rate_from_sinr(signal / (interference + noise));
}

template <typename Real>
RateReport<Real> downlink_report(const RealMat<Real> &gains, std::span<const Real> powers,
                                 std::span<const Real> noise, const IntraClusterOrder &order,
                                 SicMode mode)
{
    const Grouping &g = order.grouping();
    RateReport<Real> report;
    report.per_user_rate.resize(static_cast<std::size_t>(g.n_users()));
    for (int k = 0; k < g.n_users(); ++k)
        report.per_user_rate[static_cast<std::size_t>(k)] =
            downlink_rate(gains, powers, noise[static_cast<std::size_t>(k)], order, k, k);

    for (int m = 0; m < g.n_clusters(); ++m)
    {
        const auto &seq = order.sequences()[static_cast<std::size_t>(m)];
        for (std::size_t a = 0; a < seq.size(); ++a)
        {
            const int target = seq[a];
            const Real own = report.per_user_rate[static_cast<std::size_t>(target)];
            Real capped = own;
            for (std::size_t b = a + 1; b < seq.size(); ++b)
            {
                const int decoder = seq[b];
                const Real cross = downlink_rate(gains, powers, noise[static_cast<std::size_t>(decoder)],
                                                 order, decoder, target);
                capped = std::min(capped, cross);
                if (mode == SicMode::strict && cross < own - Real(sic_tolerance))
                    report.violated_pairs.push_back(
                        {decoder, target, m, static_cast<double>(cross - own)});
            }
            if (mode == SicMode::relaxed)
                report.per_user_rate[static_cast<std::size_t>(target)] = capped;
        }
    }
    report.sic_feasible = report.violated_pairs.empty();
    return report;
}

} // namespace detail

/// Achievable rate of user k under grouped SIC: intra-cluster streams the user
/// has not removed and all inter-cluster streams count as interference.
template <typename Real>
Real dl_user_rate(const Scenario<Real> &s, const IntraClusterOrder &o, const BeamformerSet<Real> &b, int k)
{
    detail::check_user(k, s.n_users());
    require(o.grouping().n_users() == s.n_users(), ErrorKind::DimensionError,
            "grouping and scenario disagree on the user count");
    detail::check_beams(s, b);
    const auto gains = gain_matrix<Real>(s, b.directions);
    return detail::downlink_rate<Real>(gains, b.powers, s.noise_power(k), o, k, k);
}

template <typename Real>
Real dl_user_rate(const Scenario<Real> &s, const Grouping &g, const IntraClusterOrder &o,
                  const BeamformerSet<Real> &b, int k)
{
    require(o.grouping() == g, ErrorKind::InvalidSpec, "order was built for a different grouping");
    return dl_user_rate(s, o, b, k);
}

/// Rate at which `decoder` can decode the signal intended for `target`.
template <typename Real>
Real dl_cross_decoding_rate(const Scenario<Real> &s, const IntraClusterOrder &o,
                            const BeamformerSet<Real> &b, int decoder, int target)
{
    detail::check_user(decoder, s.n_users());
    detail::check_user(target, s.n_users());
    const Grouping &g = o.grouping();
    require(g.n_users() == s.n_users(), ErrorKind::DimensionError,
            "grouping and scenario disagree on the user count");
    require(g.cluster_of(decoder) == g.cluster_of(target), ErrorKind::NotCoClustered,
            "users " + std::to_string(decoder + 1) + " and " + std::to_string(target + 1) +
                " are in different clusters");
    detail::check_beams(s, b);
    const auto gains = gain_matrix<Real>(s, b.directions);
    return detail::downlink_rate<Real>(gains, b.powers, s.noise_power(decoder), o, decoder, target);
}

/// Per-user rates plus the decoding-rate verdict for every SIC pair.
template <typename Real>
RateReport<Real> dl_sic_check(const Scenario<Real> &s, const IntraClusterOrder &o,
                              const BeamformerSet<Real> &b, SicMode mode = SicMode::strict)
{
    require(o.grouping().n_users() == s.n_users(), ErrorKind::DimensionError,
            "grouping and scenario disagree on the user count");
    detail::check_beams(s, b);
    const auto gains = gain_matrix<Real>(s, b.directions);
    return detail::downlink_report<Real>(gains, b.powers, s.noise_powers(), o, mode);
}

// The three special cases below evaluate their own closed forms rather than
// delegating to the grouped kernel, so the reduction identities are checked
// between two independent code paths.

/// Every user alone: all other streams interfere.
template <typename Real>
std::vector<Real> dl_sdma_rates(const Scenario<Real> &s, const BeamformerSet<Real> &b)
{
    detail::check_beams(s, b);
    std::vector<Real> rates;
    for (int k = 0; k < s.n_users(); ++k)
    {
        const auto &h = s.channel(k);
        Real signal = 0;
        Real interference = 0;
        for (int j = 0; j < s.n_users(); ++j)
        {
            const Real rx = b.powers[static_cast<std::size_t>(j)] *
                            std::norm(inner_product(h, b.directions[static_cast<std::size_t>(j)]));
            (j == k ? signal : interference) += rx;
        }
        rates.push_back(rate_from_sinr(signal / (interference + s.noise_power(k))));
    }
    return rates;
}

/// One cluster holding every user, each with its own beamformer.
template <typename Real>
std::vector<Real> dl_bb_noma_rates(const Scenario<Real> &s, const IntraClusterOrder &o,
                                   const BeamformerSet<Real> &b)
{
    require(o.grouping().n_clusters() == 1 && o.grouping().n_users() == s.n_users(),
            ErrorKind::InvalidSpec, "beamformer-based NOMA needs a single cluster of all users");
    detail::check_beams(s, b);
    std::vector<Real> rates;
    for (int k = 0; k < s.n_users(); ++k)
    {
        const auto &h = s.channel(k);
        Real signal = 0;
        Real interference = 0;
        for (int i = 0; i < s.n_users(); ++i)
        {
            const Real rx = b.powers[static_cast<std::size_t>(i)] *
                            std::norm(inner_product(h, b.directions[static_cast<std::size_t>(i)]));
            if (i == k)
                signal = rx;
            else
                interference += Real(o.alpha(k, i)) * rx;
        }
        rates.push_back(rate_from_sinr(signal / (interference + s.noise_power(k))));
    }
    return rates;
}

/// Cluster-based NOMA: every member of cluster m shares direction
/// cluster_directions[m]; SIC only inside clusters.
template <typename Real>
std::vector<Real> dl_cb_noma_rates(const Scenario<Real> &s, const IntraClusterOrder &o,
                                   std::span<const ComplexVec<Real>> cluster_directions,
                                   std::span<const Real> powers)
{
    const Grouping &g = o.grouping();
    const int n_users = s.n_users();
    require(g.n_users() == n_users, ErrorKind::DimensionError,
            "grouping and scenario disagree on the user count");
    require(g.n_clusters() > 1 && g.n_clusters() < n_users, ErrorKind::InvalidClusterSize,
            "cluster-based NOMA needs 1 < M < K clusters");
    for (const auto &cluster : g.clusters())
        require(cluster.size() >= 2, ErrorKind::InvalidClusterSize,
                "cluster-based NOMA needs at least two users per cluster");
    require(static_cast<int>(cluster_directions.size()) == g.n_clusters(), ErrorKind::DimensionError,
            "need one direction per cluster");
    require(static_cast<int>(powers.size()) == n_users, ErrorKind::DimensionError,
            "need one power per user");
    for (const auto &d : cluster_directions)
    {
        require(d.size() == s.n_antennas(), ErrorKind::DimensionError,
                "cluster direction length differs from antenna count");
        require(std::abs(d.norm() - Real(1)) <= unit_norm_tolerance<Real>(), ErrorKind::InvalidSpec,
                "cluster direction is not unit norm");
    }

    std::vector<Real> cluster_power(static_cast<std::size_t>(g.n_clusters()), Real(0));
    for (int k = 0; k < n_users; ++k)
        cluster_power[static_cast<std::size_t>(g.cluster_of(k))] += powers[static_cast<std::size_t>(k)];

    std::vector<Real> rates;
    for (int k = 0; k < n_users; ++k)
    {
        const int m = g.cluster_of(k);
        const auto &h = s.channel(k);
        const Real own_gain = std::norm(inner_product(h, cluster_directions[static_cast<std::size_t>(m)]));
        Real intra = 0;
        for (int i : g.cluster(m))
            if (i != k)
                intra += Real(o.alpha(k, i)) * powers[static_cast<std::size_t>(i)];
        Real inter = 0;
        for (int n = 0; n < g.n_clusters(); ++n)
            if (n != m)
                inter += std::norm(inner_product(h, cluster_directions[static_cast<std::size_t>(n)])) *
                         cluster_power[static_cast<std::size_t>(n)];
        const Real signal = powers[static_cast<std::size_t>(k)] * own_gain;
        rates.push_back(rate_from_sinr(signal / (own_gain * intra + inter + s.noise_power(k))));
    }
    return rates;
}

/// Per-user direction list with every user taking its cluster's direction.
template <typename Real>
std::vector<ComplexVec<Real>> expand_cluster_directions(const Grouping &g,
                                                        std::span<const ComplexVec<Real>> cluster_directions)
{
    require(static_cast<int>(cluster_directions.size()) == g.n_clusters(), ErrorKind::DimensionError,
            "need one direction per cluster");
    std::vector<ComplexVec<Real>> per_user;
    for (int k = 0; k < g.n_users(); ++k)
        per_user.push_back(cluster_directions[static_cast<std::size_t>(g.cluster_of(k))]);
    return per_user;
}

/// Unit directions with h_j^H d_k = 0 for all j != k: the normalized columns
/// of H (H^H H)^{-1}, computed from the SVD of H. Each h_k^H d_k comes out real
/// positive.
template <typename Real>
std::vector<ComplexVec<Real>> zf_directions(const Scenario<Real> &s)
{
    const int n = s.n_antennas();
    const int k_users = s.n_users();
    require(k_users <= n, ErrorKind::Overloaded,
            std::to_string(k_users) + " users exceed " + std::to_string(n) + " antennas");

    const ComplexMat<Real> h = s.channel_matrix();
    Eigen::JacobiSVD<ComplexMat<Real>> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    const Real smallest = sv(k_users - 1);
    if (!(sv(0) > Real(0)) || smallest <= Real(rank_tolerance) * sv(0))
        throw Error(ErrorKind::RankDeficient,
                    "channel matrix is rank deficient (smallest singular value " +
                        std::to_string(static_cast<double>(smallest)) + ")");

    const ComplexMat<Real> w =
        svd.matrixU() * sv.cwiseInverse().asDiagonal() * svd.matrixV().adjoint();
    std::vector<ComplexVec<Real>> directions;
    for (int k = 0; k < k_users; ++k)
    {
        ComplexVec<Real> d = w.col(k) / w.col(k).norm();
        canonicalize_phase(d, s.channel(k));
        directions.push_back(std::move(d));
    }
    return directions;
}

namespace detail
{

/// Orthonormal basis (as columns) of { w : h_j^H w = 0 for all columns h_j of a }.
template <typename Real>
ComplexMat<Real> null_basis_of_adjoint(const ComplexMat<Real> &a, int n)
{
    if (a.cols() == 0)
        return ComplexMat<Real>::Identity(n, n);
    Eigen::JacobiSVD<ComplexMat<Real>> svd(a, Eigen::ComputeFullU);
    const auto &sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > Real(rank_tolerance) * sv(0))
            ++rank;
    return svd.matrixU().rightCols(n - rank);
}

/// Dominant left singular vector of the columns of m, phase-aligned to the first column.
template <typename Real>
ComplexVec<Real> principal_direction(const ComplexMat<Real> &m)
{
    Eigen::JacobiSVD<ComplexMat<Real>> svd(m, Eigen::ComputeThinU);
    ComplexVec<Real> d = svd.matrixU().col(0);
    canonicalize_phase(d, ComplexVec<Real>(m.col(0)));
    return d;
}

} // namespace detail

/// One direction per cluster, orthogonal to the channel of every user outside
/// that cluster. Inside the admissible subspace the direction maximizing the
/// cluster's aggregate channel gain is chosen.
template <typename Real>
std::vector<ComplexVec<Real>> cluster_zf_directions(const Scenario<Real> &s, const Grouping &g)
{
    require(g.n_users() == s.n_users(), ErrorKind::DimensionError,
            "grouping and scenario disagree on the user count");
    const int n = s.n_antennas();
    std::vector<ComplexVec<Real>> directions;
    for (int m = 0; m < g.n_clusters(); ++m)
    {
        const auto &members = g.cluster(m);
        ComplexMat<Real> outside(n, s.n_users() - static_cast<int>(members.size()));
        ComplexMat<Real> inside(n, static_cast<Eigen::Index>(members.size()));
        int o = 0;
        int i = 0;
        for (int k = 0; k < s.n_users(); ++k)
            (g.cluster_of(k) == m ? inside.col(i++) : outside.col(o++)) = s.channel(k);

        const ComplexMat<Real> basis = detail::null_basis_of_adjoint(outside, n);
        if (basis.cols() == 0)
            throw Error(ErrorKind::Overloaded,
                        "no direction for cluster " + std::to_string(m + 1) +
                            " is orthogonal to all out-of-cluster channels");
        const ComplexMat<Real> projected = basis.adjoint() * inside;
        ComplexVec<Real> d = basis * detail::principal_direction<Real>(projected);
        d /= d.norm();
        canonicalize_phase(d, ComplexVec<Real>(inside.col(0)));
        directions.push_back(std::move(d));
    }
    return directions;
}

/// Per cluster, the dominant eigenvector of sum_{k in cluster} h_k h_k^H.
template <typename Real>
std::vector<ComplexVec<Real>> matched_cluster_directions(const Scenario<Real> &s, const Grouping &g)
{
    require(g.n_users() == s.n_users(), ErrorKind::DimensionError,
            "grouping and scenario disagree on the user count");
    std::vector<ComplexVec<Real>> directions;
    for (const auto &members : g.clusters())
    {
        ComplexMat<Real> inside(s.n_antennas(), static_cast<Eigen::Index>(members.size()));
        for (std::size_t i = 0; i < members.size(); ++i)
            inside.col(static_cast<Eigen::Index>(i)) = s.channel(members[i]);
        require(inside.norm() > Real(0), ErrorKind::ZeroChannel, "cluster has only zero channels");
        directions.push_back(detail::principal_direction<Real>(inside));
    }
    return directions;
}

/// d_k = h_k / ||h_k||.
template <typename Real>
std::vector<ComplexVec<Real>> matched_directions(const Scenario<Real> &s)
{
    std::vector<ComplexVec<Real>> directions;
    for (int k = 0; k < s.n_users(); ++k)
    {
        const Real norm = s.channel(k).norm();
        require(norm > Real(0), ErrorKind::ZeroChannel,
                "user " + std::to_string(k + 1) + " has a zero channel");
        directions.push_back(s.channel(k) / norm);
    }
    return directions;
}

} // namespace ngma

#endif
