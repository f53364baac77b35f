// Copyright 2026 The spinent Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file suscept_fit.hpp
 * Levenberg-Marquardt fit of (J/k_B, g, C) to chi(T) data under the
 * dimer + Curie model, plus a seeded synthetic-data generator.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "dimer_model.hpp"

namespace spinent {

struct ChiPoint {
    double temperature; ///< K
    double chi;         ///< muB / (FU Oe)
    std::optional<double> sigma;

    friend bool operator==(const ChiPoint &, const ChiPoint &) = default;
};

struct SusceptibilityDataset {
    std::vector<ChiPoint> points;
    double applied_field_oe = 100.0;
    std::string label;

    [[nodiscard]] bool has_sigma() const {
        return !points.empty() &&
               std::all_of(points.begin(), points.end(),
                           [](const ChiPoint &p) { return p.sigma.has_value(); });
    }

    void validate() const {
        for (const auto &p : points) {
            require_positive_temperature(p.temperature);
            if (p.sigma && !(*p.sigma > 0.0)) {
                throw Error(ErrorKind::InvalidParams, "sigma must be > 0");
            }
        }
    }
};

/// chi_i = chi_total(T_i) (1 + noise_rel z_i), z_i ~ N(0,1) from mt19937_64(seed).
/// With noise, sigma_i is set to noise_rel * chi_total(T_i).
inline SusceptibilityDataset synth_dataset(const ModelParams &params,
                                           const std::vector<double> &grid,
                                           double noise_rel, std::uint64_t seed) {
    if (!(noise_rel >= 0.0)) {
        throw Error(ErrorKind::InvalidParams, "noise_rel must be >= 0");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SusceptibilityDataset out;
    out.label = "synthetic";
    out.points.reserve(grid.size());
    for (double t : grid) {
        const double truth = chi_total(params, t);
        ChiPoint p{t, truth, std::nullopt};
        if (noise_rel > 0.0) {
            p.chi = truth * (1.0 + noise_rel * normal(rng));
            p.sigma = noise_rel * truth;
        }
        out.points.push_back(p);
    }
    return out;
}

/// (chi_model - chi_i) / sigma_i, or unweighted when sigma is absent.
inline std::vector<double> residuals(const SusceptibilityDataset &data,
                                     const ModelParams &params) {
    std::vector<double> r;
    r.reserve(data.points.size());
    for (const auto &p : data.points) {
        const double d = chi_total(params, p.temperature) - p.chi;
        r.push_back(p.sigma ? d / *p.sigma : d);
    }
    return r;
}

struct FitOptions {
    int max_iterations = 200;
    double lambda_start = 1e-3;
    double relative_step = 1e-6;
    double absolute_step = 1e-12;
    double cost_tolerance = 1e-10;     ///< relative cost reduction
    double gradient_tolerance = 1e-12; ///< on the cost normalized by its start value
};

struct FitResult {
    ModelParams params;
    double residual_norm = 0.0;              ///< weighted RMS
    std::array<double, 3> covariance_diag{}; ///< var(J/k_B), var(g), var(C)
    int iterations = 0;
    bool converged = false;
    std::vector<double> cost_history; ///< cost after each accepted step, starting point first

    friend bool operator==(const FitResult &, const FitResult &) = default;
};

namespace detail {

// Internal coordinates: u = (J / 100 K, g, log((C + eps_C) / 1e-5)).
inline constexpr double j_scale = 100.0;
inline constexpr double c_scale = 1e-5;
inline constexpr double c_floor = 1e-12;

using Vec = std::array<double, 3>;
using Mat = std::array<std::array<double, 3>, 3>;

inline Vec to_internal(const ModelParams &p) {
    return {p.j_over_kb / j_scale, p.g, std::log((p.curie_c + c_floor) / c_scale)};
}

inline ModelParams from_internal(const Vec &u, const ModelParams &meta) {
    ModelParams p = meta;
    p.j_over_kb = u[0] * j_scale;
    p.g = u[1];
    p.curie_c = std::max(0.0, c_scale * std::exp(u[2]) - c_floor);
    return p;
}

/// Solves a 3x3 system by Gaussian elimination with partial pivoting.
inline std::optional<Vec> solve3(Mat a, Vec b) {
    for (std::size_t col = 0; col < 3; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0 || !std::isfinite(a[piv][col])) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < 3; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec x{};
    for (std::size_t r = 3; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < 3; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

inline std::optional<Mat> invert3(const Mat &a) {
    Mat inv{};
    for (std::size_t k = 0; k < 3; ++k) {
        Vec e{};
        e[k] = 1.0;
        auto col = solve3(a, e);
        if (!col) return std::nullopt;
        for (std::size_t r = 0; r < 3; ++r) inv[r][k] = (*col)[r];
    }
    return inv;
}

} // namespace detail

/// Minimizes sum_i w_i (chi_model(T_i) - chi_i)^2, w_i = 1/sigma_i^2 (or 1).
///
/// Points are sorted internally, so the result does not depend on the
/// order of the input. The best parameters found are returned even when
/// `converged` is false.
inline FitResult fit(const SusceptibilityDataset &dataset, const ModelParams &initial,
                     const FitOptions &opt = {}) {
    if (dataset.points.size() < 4) {
        throw Error(ErrorKind::TooFewPoints,
                    "a 3-parameter fit needs at least 4 points, got " +
                        std::to_string(dataset.points.size()));
    }
    dataset.validate();
    if (!(initial.g > 0.0)) {
        throw Error(ErrorKind::InvalidParams, "initial g must be > 0");
    }

    std::vector<ChiPoint> pts = dataset.points;
    std::sort(pts.begin(), pts.end(), [](const ChiPoint &a, const ChiPoint &b) {
        return std::tuple(a.temperature, a.chi, a.sigma.value_or(0.0)) <
               std::tuple(b.temperature, b.chi, b.sigma.value_or(0.0));
    });
    const std::size_t n = pts.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = pts[i].sigma ? 1.0 / (*pts[i].sigma * *pts[i].sigma) : 1.0;

    auto model = [&](const detail::Vec &u, std::vector<double> &r) {
        const ModelParams p = detail::from_internal(u, initial);
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = chi_total(p, pts[i].temperature) - pts[i].chi;
            cost += w[i] * r[i] * r[i];
        }
        return cost;
    };

    // Forward-difference Jacobian -> J^T W J and J^T W r.
    std::vector<std::array<double, 3>> jac(n);
    auto linearize = [&](const detail::Vec &at, const std::vector<double> &res,
                         detail::Mat &jtj, detail::Vec &jtr) {
        for (std::size_t k = 0; k < 3; ++k) {
            detail::Vec up = at;
            const double h = std::max(opt.relative_step * std::max(std::abs(at[k]), 1.0),
                                      opt.absolute_step);
            up[k] += h;
            const ModelParams p = detail::from_internal(up, initial);
            for (std::size_t i = 0; i < n; ++i)
                jac[i][k] = (chi_total(p, pts[i].temperature) - pts[i].chi - res[i]) / h;
        }
        jtj = {};
        jtr = {};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < 3; ++a) {
                jtr[a] += w[i] * jac[i][a] * res[i];
                for (std::size_t b = 0; b < 3; ++b) jtj[a][b] += w[i] * jac[i][a] * jac[i][b];
            }
    };

    detail::Vec u = detail::to_internal(initial);
    std::vector<double> r(n), r_trial(n);
    double cost = model(u, r);
    const double cost0 = std::max(cost, std::numeric_limits<double>::min());

    FitResult result;
    result.cost_history.push_back(cost);
    double lambda = opt.lambda_start;
    detail::Mat normal{};
    bool have_normal = false;

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        result.iterations = iter + 1;
        if (cost == 0.0) {
            result.converged = true;
            break;
        }
        detail::Vec grad{};
        linearize(u, r, normal, grad);
        have_normal = true;
        for (std::size_t a = 0; a < 3; ++a) {
            if (normal[a][a] == 0.0) {
                throw Error(ErrorKind::SingularJacobian,
                            "model is insensitive to parameter " + std::to_string(a) +
                                " at iteration " + std::to_string(iter),
                            static_cast<std::size_t>(iter));
            }
        }
        const double gnorm = std::max({std::abs(grad[0]), std::abs(grad[1]), std::abs(grad[2])});
        if (2.0 * gnorm / cost0 < opt.gradient_tolerance) {
            result.converged = true;
            break;
        }

        bool accepted = false;
        while (!accepted && lambda < 1e20) {
            detail::Mat damped = normal;
            for (std::size_t a = 0; a < 3; ++a) damped[a][a] += lambda * normal[a][a];
            const auto step = detail::solve3(damped, {-grad[0], -grad[1], -grad[2]});
            if (!step) {
                throw Error(ErrorKind::SingularJacobian,
                            "damped normal equations singular at iteration " +
                                std::to_string(iter),
                            static_cast<std::size_t>(iter));
            }
            const detail::Vec trial{u[0] + (*step)[0], u[1] + (*step)[1], u[2] + (*step)[2]};
            double trial_cost = std::numeric_limits<double>::infinity();
            if (trial[1] > 0.0 && std::isfinite(trial[2]) && trial[2] < 700.0) {
                trial_cost = model(trial, r_trial);
            }
            if (std::isfinite(trial_cost) && trial_cost < cost) {
                const double reduction = (cost - trial_cost) / cost;
                u = trial;
                cost = trial_cost;
                std::swap(r, r_trial);
                lambda = std::max(lambda / 10.0, 1e-15);
                result.cost_history.push_back(cost);
                accepted = true;
                if (reduction < opt.cost_tolerance) result.converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!accepted) {
            // No downhill step at any damping: stationary to working precision.
            result.converged = true;
            break;
        }
        if (result.converged) break;
    }

    result.params = detail::from_internal(u, initial);
    result.residual_norm = std::sqrt(cost / static_cast<double>(n));

    if (have_normal) {
        detail::Vec grad{};
        linearize(u, r, normal, grad);
        if (auto cov = detail::invert3(normal)) {
            double scale = 1.0;
            if (!dataset.has_sigma() && n > 3) scale = cost / static_cast<double>(n - 3);
            const double dc = result.params.curie_c + detail::c_floor;
            const detail::Vec d{detail::j_scale, 1.0, dc};
            for (std::size_t a = 0; a < 3; ++a)
                result.covariance_diag[a] = scale * (*cov)[a][a] * d[a] * d[a];
        }
    }
    return result;
}

} // namespace spinent
