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

#ifndef NGMA_CORE_HPP
#define NGMA_CORE_HPP

#include "ngma/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ngma
{

template <typename Real>
using ComplexVec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using ComplexMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

/// a^H b, conjugate-linear in the first argument.
template <typename DerivedA, typename DerivedB>
auto inner_product(const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b)
{
    require(a.size() == b.size(), ErrorKind::DimensionError,
            "inner product of vectors with lengths " + std::to_string(a.size()) + " and " +
                std::to_string(b.size()));
    return a.dot(b);
}

/// log2(1 + sinr), evaluated through log1p so tiny SINRs keep full relative precision.
template <typename Real>
Real rate_from_sinr(Real sinr)
{
    return std::log1p(sinr) / std::numbers::ln2_v<Real>;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived> &v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        using std::isfinite;
        if (!isfinite(std::real(v(i))) || !isfinite(std::imag(v(i))))
            return false;
    }
    return true;
}

// Tolerance for unit-norm checks: 1e-12 in double, looser for narrower scalars.
template <typename Real>
constexpr Real unit_norm_tolerance()
{
    return std::max(Real(1e-12), Real(64) * std::numeric_limits<Real>::epsilon());
}

/// N-antenna base station, K single-antenna users. Channel h_k is stored in
/// column form; the downlink row channel is its conjugate transpose.
template <typename Real = double>
class Scenario
{
  public:
    using Vec = ComplexVec<Real>;

    Scenario(std::vector<Vec> channels, std::vector<Real> noise_powers, Real power_budget)
        : channels_(std::move(channels)), noise_powers_(std::move(noise_powers)),
          power_budget_(power_budget)
    {
        require(!channels_.empty(), ErrorKind::InvalidSpec, "scenario needs at least one user");
        n_antennas_ = static_cast<int>(channels_.front().size());
        require(n_antennas_ >= 1, ErrorKind::InvalidSpec, "channel vectors need at least one antenna");
        for (std::size_t k = 0; k < channels_.size(); ++k)
        {
            require(channels_[k].size() == n_antennas_, ErrorKind::InvalidSpec,
                    "channel " + std::to_string(k + 1) + " has length " +
                        std::to_string(channels_[k].size()) + ", expected " + std::to_string(n_antennas_));
            require(all_finite(channels_[k]), ErrorKind::InvalidSpec,
                    "channel " + std::to_string(k + 1) + " has non-finite entries");
        }
        require(noise_powers_.size() == channels_.size(), ErrorKind::InvalidSpec,
                "need one noise power per user");
        for (Real sigma2 : noise_powers_)
            require(std::isfinite(sigma2) && sigma2 > 0, ErrorKind::InvalidSpec,
                    "noise powers must be finite and positive");
        require(std::isfinite(power_budget_) && power_budget_ > 0, ErrorKind::InvalidSpec,
                "power budget must be finite and positive");
    }

    int n_antennas() const { return n_antennas_; }
    int n_users() const { return static_cast<int>(channels_.size()); }
    const Vec &channel(int k) const { return channels_.at(static_cast<std::size_t>(k)); }
    const std::vector<Vec> &channels() const { return channels_; }
    Real noise_power(int k) const { return noise_powers_.at(static_cast<std::size_t>(k)); }
    const std::vector<Real> &noise_powers() const { return noise_powers_; }
    Real power_budget() const { return power_budget_; }

    /// N x K matrix whose k-th column is h_k.
    ComplexMat<Real> channel_matrix() const
    {
        ComplexMat<Real> h(n_antennas_, n_users());
        for (int k = 0; k < n_users(); ++k)
            h.col(k) = channels_[static_cast<std::size_t>(k)];
        return h;
    }

  private:
    std::vector<Vec> channels_;
    std::vector<Real> noise_powers_;
    Real power_budget_;
    int n_antennas_ = 0;
};

/// Seeded source of unit-variance circularly-symmetric complex Gaussians.
///
/// Uniforms come from std::mt19937_64 (output fully specified by the C++
/// standard) using the top 53 bits, and normals from the Box-Muller transform,
/// so a seed yields the same channels with every conforming standard library.
class GaussianSource
{
  public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double standard_normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// CN(0, 1): real and imaginary parts each carry variance 1/2.
    template <typename Real = double>
    std::complex<Real> complex_normal()
    {
        const double re = standard_normal() * std::numbers::sqrt2 / 2.0;
        const double im = standard_normal() * std::numbers::sqrt2 / 2.0;
        return {static_cast<Real>(re), static_cast<Real>(im)};
    }

    template <typename Real = double>
    ComplexVec<Real> complex_normal_vector(int n)
    {
        ComplexVec<Real> v(n);
        for (int i = 0; i < n; ++i)
            v(i) = complex_normal<Real>();
        return v;
    }

    /// Uniformly distributed direction on the complex unit sphere.
    template <typename Real = double>
    ComplexVec<Real> unit_vector(int n)
    {
        ComplexVec<Real> v = complex_normal_vector<Real>(n);
        while (v.norm() == Real(0))
            v = complex_normal_vector<Real>(n);
        return v / v.norm();
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

enum class ChannelKind
{
    iid_complex_gaussian,
    correlated_pair,
    clustered_correlated,
    explicit_values
};

/// How generate_scenario builds channels.
///
/// - iid_complex_gaussian: every entry drawn CN(0, 1).
/// - correlated_pair: K = 2, h_1 = c h_2. h_2 is explicit_values[0] when given,
///   otherwise drawn iid.
/// - clustered_correlated: K = 2P users, h_j = c_j h_{P+j} for j < P (0-based),
///   so users j and P+j share a direction. The base channels h_P..h_{2P-1} are
///   explicit_values when given, otherwise drawn iid.
/// - explicit_values: channels passed through unchanged.
///
/// gains, when non-empty, holds one power gain per user; channel k is scaled by
/// sqrt(gains[k]) after the correlation structure is applied.
template <typename Real = double>
struct ChannelSpec
{
    ChannelKind kind = ChannelKind::iid_complex_gaussian;
    std::vector<std::complex<Real>> correlation_constants;
    std::vector<ComplexVec<Real>> explicit_values;
    std::vector<Real> gains;
    std::uint64_t seed = 0;
};

template <typename Real>
Scenario<Real> generate_scenario(const ChannelSpec<Real> &spec, int n_antennas, int n_users,
                                 std::vector<Real> noise_powers, Real power_budget)
{
    require(n_antennas >= 1 && n_users >= 1, ErrorKind::InvalidSpec,
            "antenna and user counts must be positive");
    require(static_cast<int>(noise_powers.size()) == n_users, ErrorKind::InvalidSpec,
            "need one noise power per user");

    const auto check_lengths = [&](const std::vector<ComplexVec<Real>> &vs) {
        for (const auto &v : vs)
            require(v.size() == n_antennas, ErrorKind::InvalidSpec,
                    "explicit channel of length " + std::to_string(v.size()) + " for " +
                        std::to_string(n_antennas) + " antennas");
    };
    check_lengths(spec.explicit_values);

    GaussianSource source(spec.seed);
    const auto draw_or_take = [&](std::size_t count) {
        if (!spec.explicit_values.empty())
        {
            require(spec.explicit_values.size() == count, ErrorKind::InvalidSpec,
                    "expected " + std::to_string(count) + " explicit base channels, got " +
                        std::to_string(spec.explicit_values.size()));
            return spec.explicit_values;
        }
        std::vector<ComplexVec<Real>> drawn;
        for (std::size_t i = 0; i < count; ++i)
            drawn.push_back(source.complex_normal_vector<Real>(n_antennas));
        return drawn;
    };

    std::vector<ComplexVec<Real>> channels;
    switch (spec.kind)
    {
    case ChannelKind::explicit_values:
        require(static_cast<int>(spec.explicit_values.size()) == n_users, ErrorKind::InvalidSpec,
                "explicit kind needs exactly one channel per user");
        channels = spec.explicit_values;
        break;
    case ChannelKind::iid_complex_gaussian:
        require(spec.explicit_values.empty(), ErrorKind::InvalidSpec,
                "iid kind does not take explicit channels");
        channels = draw_or_take(static_cast<std::size_t>(n_users));
        break;
    case ChannelKind::correlated_pair: {
        require(n_users == 2, ErrorKind::InvalidSpec, "correlated_pair requires exactly two users");
        require(spec.correlation_constants.size() == 1, ErrorKind::InvalidSpec,
                "correlated_pair requires exactly one correlation constant");
        const auto base = draw_or_take(1);
        channels = {spec.correlation_constants[0] * base[0], base[0]};
        break;
    }
    case ChannelKind::clustered_correlated: {
        require(n_users % 2 == 0, ErrorKind::InvalidSpec,
                "clustered_correlated requires an even number of users");
        const auto pairs = static_cast<std::size_t>(n_users / 2);
        require(spec.correlation_constants.size() == pairs, ErrorKind::InvalidSpec,
                "clustered_correlated requires one correlation constant per cluster pair");
        const auto base = draw_or_take(pairs);
        for (std::size_t j = 0; j < pairs; ++j)
            channels.push_back(spec.correlation_constants[j] * base[j]);
        for (std::size_t j = 0; j < pairs; ++j)
            channels.push_back(base[j]);
        break;
    }
    }

    if (!spec.gains.empty())
    {
        require(static_cast<int>(spec.gains.size()) == n_users, ErrorKind::InvalidSpec,
                "need one gain per user");
        for (std::size_t k = 0; k < channels.size(); ++k)
        {
            require(std::isfinite(spec.gains[k]) && spec.gains[k] >= 0, ErrorKind::InvalidSpec,
                    "gains must be finite and non-negative");
            channels[k] *= std::sqrt(spec.gains[k]);
        }
    }
    return Scenario<Real>(std::move(channels), std::move(noise_powers), power_budget);
}

// Rotates v by a unit phase so that reference^H v is real positive. Falls back
// to making the largest-magnitude entry real positive when reference^H v ~ 0.
template <typename Real>
void canonicalize_phase(ComplexVec<Real> &v, const ComplexVec<Real> &reference)
{
    std::complex<Real> anchor = reference.dot(v);
    if (std::abs(anchor) <= Real(1e-12) * reference.norm() * v.norm())
    {
        Eigen::Index idx = 0;
        v.cwiseAbs().maxCoeff(&idx);
        anchor = v(idx);
    }
    if (std::abs(anchor) > Real(0))
        v *= std::conj(anchor) / std::abs(anchor);
}

} // namespace ngma

#endif
