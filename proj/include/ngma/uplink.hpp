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

#ifndef NGMA_UPLINK_HPP
#define NGMA_UPLINK_HPP

#include "ngma/downlink.hpp"

#include <span>
#include <vector>

namespace ngma
{

/// Decoding position of every stream; beta(k) is the 0-based position of s_k.
class PermutationOrder
{
  public:
    explicit PermutationOrder(std::vector<int> beta);

    /// sequence[t] is the user decoded t-th.
    static PermutationOrder from_sequence(std::span<const int> sequence);

    int n_users() const { return static_cast<int>(beta_.size()); }
    int beta(int k) const { return beta_.at(static_cast<std::size_t>(k)); }
    std::vector<int> sequence() const;

  private:
    std::vector<int> beta_;
};

/// Ordered partition of the streams into detection layers U_1..U_L. Streams of
/// one layer are detected in parallel; each finished layer is cancelled before
/// the next is detected.
class LayerPartition
{
  public:
    LayerPartition(std::vector<std::vector<int>> layers, int n_users);

    static LayerPartition single_layer(int n_users);
    static LayerPartition from_order(const PermutationOrder &order);

    int n_users() const { return static_cast<int>(layer_of_.size()); }
    int n_layers() const { return static_cast<int>(layers_.size()); }
    const std::vector<int> &layer(int l) const { return layers_.at(static_cast<std::size_t>(l)); }
    const std::vector<std::vector<int>> &layers() const { return layers_; }
    int layer_of(int k) const;

    friend bool operator==(const LayerPartition &, const LayerPartition &) = default;

  private:
    std::vector<std::vector<int>> layers_;
    std::vector<int> layer_of_;
};

template <typename Real = double>
struct DetectorSet
{
    DetectorSet(std::vector<ComplexVec<Real>> vecs, std::vector<Real> pows)
        : vectors(std::move(vecs)), powers(std::move(pows))
    {
        require(vectors.size() == powers.size(), ErrorKind::DimensionError,
                "need one power per detection vector");
        for (std::size_t k = 0; k < vectors.size(); ++k)
        {
            require(std::abs(vectors[k].norm() - Real(1)) <= unit_norm_tolerance<Real>(),
                    ErrorKind::InvalidSpec, "detector " + std::to_string(k + 1) + " is not unit norm");
            require(std::isfinite(powers[k]) && powers[k] >= 0, ErrorKind::InvalidSpec,
                    "powers must be finite and non-negative");
        }
    }

    std::vector<ComplexVec<Real>> vectors;
    std::vector<Real> powers;
};

enum class DetectorFamily
{
    mrc,
    zf,
    mmse
};

enum class MmseMode
{
    layer_aware, ///< regularize against the streams still present at the user's layer
    fixed        ///< regularize against all other streams, ignoring cancellation
};

/// The single receiver noise power. Per-user lists must be uniform.
template <typename Real>
Real uplink_noise(const Scenario<Real> &s)
{
    const Real sigma2 = s.noise_power(0);
    for (Real v : s.noise_powers())
        require(v == sigma2, ErrorKind::InvalidSpec,
                "uplink evaluation needs one receiver noise power, got differing per-user values");
    return sigma2;
}

/// G(k, j) = |v_k^H h_j|^2.
template <typename Real>
RealMat<Real> detector_gains(const Scenario<Real> &s, std::span<const ComplexVec<Real>> detectors)
{
    const int n_users = s.n_users();
    require(static_cast<int>(detectors.size()) == n_users, ErrorKind::DimensionError,
            "need one detector per user");
    RealMat<Real> gains(n_users, n_users);
    for (int k = 0; k < n_users; ++k)
        for (int j = 0; j < n_users; ++j)
            gains(k, j) = std::norm(inner_product(detectors[static_cast<std::size_t>(k)], s.channel(j)));
    return gains;
}

namespace detail
{

template <typename Real>
void check_detectors(const Scenario<Real> &s, const DetectorSet<Real> &d)
{
    require(static_cast<int>(d.vectors.size()) == s.n_users(), ErrorKind::DimensionError,
            "need one detector per user");
    for (std::size_t k = 0; k < d.vectors.size(); ++k)
    {
        require(d.vectors[k].size() == s.n_antennas(), ErrorKind::DimensionError,
                "detector length differs from antenna count");
        require(d.powers[k] <= s.power_budget() + Real(1e-12), ErrorKind::InvalidSpec,
                "user " + std::to_string(k + 1) + " exceeds the per-user power cap");
    }
}

/// Earlier layers are cancelled; same-layer and later-layer streams interfere.
template <typename Real>
Real uplink_rate(const RealMat<Real> &gains, std::span<const Real> powers, Real noise,
                 const LayerPartition &lp, int k)
{
    const int layer = lp.layer_of(k);
    Real interference = 0;
    for (int j = 0; j < lp.n_users(); ++j)
        if (j != k && lp.layer_of(j) >= layer)
            interference += powers[static_cast<std::size_t>(j)] * gains(k, j);
    const Real signal = powers[static_cast<std::size_t>(k)] * gains(k, k);
    return rate_from_sinr(signal / (interference + noise));
}

} // namespace detail

template <typename Real>
Real ul_ngma_rate(const Scenario<Real> &s, const LayerPartition &lp, const DetectorSet<Real> &d, int k)
{
    require(k >= 0 && k < s.n_users(), ErrorKind::InvalidUser, "user index " + std::to_string(k) + " out of range");
    require(lp.n_users() == s.n_users(), ErrorKind::DimensionError,
            "layer partition and scenario disagree on the user count");
    detail::check_detectors(s, d);
    const Real sigma2 = uplink_noise(s);
    const auto gains = detector_gains<Real>(s, d.vectors);
    return detail::uplink_rate<Real>(gains, d.powers, sigma2, lp, k);
}

template <typename Real>
std::vector<Real> ul_ngma_rates(const Scenario<Real> &s, const LayerPartition &lp, const DetectorSet<Real> &d)
{
    require(lp.n_users() == s.n_users(), ErrorKind::DimensionError,
            "layer partition and scenario disagree on the user count");
    detail::check_detectors(s, d);
    const Real sigma2 = uplink_noise(s);
    const auto gains = detector_gains<Real>(s, d.vectors);
    std::vector<Real> rates;
    for (int k = 0; k < s.n_users(); ++k)
        rates.push_back(detail::uplink_rate<Real>(gains, d.powers, sigma2, lp, k));
    return rates;
}

// SDMA and serial NOMA below use their own closed forms so that the layered
// kernel is checked against independent code.

/// Parallel detection: every other stream interferes.
template <typename Real>
std::vector<Real> ul_sdma_rates(const Scenario<Real> &s, const DetectorSet<Real> &d)
{
    detail::check_detectors(s, d);
    const Real sigma2 = uplink_noise(s);
    std::vector<Real> rates;
    for (int k = 0; k < s.n_users(); ++k)
    {
        const auto &v = d.vectors[static_cast<std::size_t>(k)];
        Real interference = 0;
        for (int i = 0; i < s.n_users(); ++i)
            if (i != k)
                interference += std::norm(inner_product(v, s.channel(i))) * d.powers[static_cast<std::size_t>(i)];
        const Real signal = std::norm(inner_product(v, s.channel(k))) * d.powers[static_cast<std::size_t>(k)];
        rates.push_back(rate_from_sinr(signal / (interference + sigma2)));
    }
    return rates;
}

/// Serial detection: only streams decoded later interfere.
template <typename Real>
std::vector<Real> ul_noma_rates(const Scenario<Real> &s, const PermutationOrder &order, const DetectorSet<Real> &d)
{
    require(order.n_users() == s.n_users(), ErrorKind::DimensionError,
            "decoding order and scenario disagree on the user count");
    detail::check_detectors(s, d);
    const Real sigma2 = uplink_noise(s);
    std::vector<Real> rates;
    for (int k = 0; k < s.n_users(); ++k)
    {
        const auto &v = d.vectors[static_cast<std::size_t>(k)];
        Real interference = 0;
        for (int i = 0; i < s.n_users(); ++i)
            if (order.beta(i) > order.beta(k))
                interference += std::norm(inner_product(v, s.channel(i))) * d.powers[static_cast<std::size_t>(i)];
        const Real signal = std::norm(inner_product(v, s.channel(k))) * d.powers[static_cast<std::size_t>(k)];
        rates.push_back(rate_from_sinr(signal / (interference + sigma2)));
    }
    return rates;
}

/// v_k = h_k / ||h_k||.
template <typename Real>
std::vector<ComplexVec<Real>> mrc_detectors(const Scenario<Real> &s)
{
    return matched_directions(s);
}

/// v_k orthogonal to every other user's channel (needs K <= N, full rank).
template <typename Real>
std::vector<ComplexVec<Real>> zf_detectors(const Scenario<Real> &s)
{
    return zf_directions(s);
}

/// Linear MMSE: v_k proportional to (sum_{j interfering} p_j h_j h_j^H + sigma^2 I)^{-1} h_k.
/// In layer-aware mode the interferers are the other streams of k's layer and
/// every stream of a later layer.
template <typename Real>
std::vector<ComplexVec<Real>> mmse_detectors(const Scenario<Real> &s, const LayerPartition &lp,
                                             std::span<const Real> powers, MmseMode mode = MmseMode::layer_aware)
{
    const int n = s.n_antennas();
    require(lp.n_users() == s.n_users(), ErrorKind::DimensionError,
            "layer partition and scenario disagree on the user count");
    require(static_cast<int>(powers.size()) == s.n_users(), ErrorKind::DimensionError,
            "need one power per user");
    const Real sigma2 = uplink_noise(s);

    std::vector<ComplexVec<Real>> detectors;
    for (int k = 0; k < s.n_users(); ++k)
    {
        require(s.channel(k).norm() > Real(0), ErrorKind::ZeroChannel,
                "user " + std::to_string(k + 1) + " has a zero channel");
        ComplexMat<Real> covariance = sigma2 * ComplexMat<Real>::Identity(n, n);
        for (int j = 0; j < s.n_users(); ++j)
        {
            if (j == k)
                continue;
            if (mode == MmseMode::layer_aware && lp.layer_of(j) < lp.layer_of(k))
                continue;
            const auto &h = s.channel(j);
            covariance.noalias() += powers[static_cast<std::size_t>(j)] * (h * h.adjoint());
        }
        ComplexVec<Real> v = covariance.ldlt().solve(s.channel(k));
        detectors.push_back(v / v.norm());
    }
    return detectors;
}

template <typename Real>
std::vector<ComplexVec<Real>> make_detectors(const Scenario<Real> &s, DetectorFamily family,
                                             const LayerPartition &lp, std::span<const Real> powers,
                                             MmseMode mode = MmseMode::layer_aware)
{
    switch (family)
    {
    case DetectorFamily::mrc:
        return mrc_detectors(s);
    case DetectorFamily::zf:
        return zf_detectors(s);
    case DetectorFamily::mmse:
        return mmse_detectors(s, lp, powers, mode);
    }
    throw Error(ErrorKind::InvalidSpec, "unknown detector family");
}

} // namespace ngma

#endif
