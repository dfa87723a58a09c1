#include "ndcert/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace ndcert {

RankOneFamily::RankOneFamily(std::size_t dim, std::span<const ComplexVector> vectors) : dim_(dim) {
    units_.reserve(vectors.size() * dim);
    for (const auto& x : vectors) {
        if (x.dim() != dim) throw DimensionMismatch("RankOneFamily: vector dimension mismatch");
        const ComplexVector u = normalized(x);
        units_.insert(units_.end(), u.begin(), u.end());
        ++count_;
    }
}

void RankOneFamily::values(const ComplexVector& v, std::vector<double>& out) const {
    out.resize(count_);
    const Complex* u = units_.data();
    for (std::size_t k = 0; k < count_; ++k, u += dim_) {
        Complex acc{};
        for (std::size_t i = 0; i < dim_; ++i) acc += v[i] * std::conj(u[i]);
        out[k] = std::norm(acc);
    }
}

void RankOneFamily::weighted_apply(const ComplexVector& v, std::span<const double> w, ComplexVector& out) const {
    out = ComplexVector(dim_);
    const Complex* u = units_.data();
    for (std::size_t k = 0; k < count_; ++k, u += dim_) {
        if (w[k] == 0.0) continue;
        Complex acc{};
        for (std::size_t i = 0; i < dim_; ++i) acc += v[i] * std::conj(u[i]);
        const Complex c = w[k] * acc;
        for (std::size_t i = 0; i < dim_; ++i) out[i] += c * u[i];
    }
}

void MatrixFamily::add(std::vector<Complex> matrix) {
    if (matrix.size() != dim_ * dim_) throw DimensionMismatch("MatrixFamily::add: matrix size mismatch");
    matrices_.push_back(std::move(matrix));
}

void MatrixFamily::values(const ComplexVector& v, std::vector<double>& out) const {
    out.resize(matrices_.size());
    for (std::size_t k = 0; k < matrices_.size(); ++k) {
        const auto& m = matrices_[k];
        Complex acc{};
        for (std::size_t i = 0; i < dim_; ++i) {
            Complex row{};
            for (std::size_t j = 0; j < dim_; ++j) row += m[i * dim_ + j] * v[j];
            acc += row * std::conj(v[i]);
        }
        out[k] = acc.real();
    }
}

void MatrixFamily::weighted_apply(const ComplexVector& v, std::span<const double> w, ComplexVector& out) const {
    out = ComplexVector(dim_);
    for (std::size_t k = 0; k < matrices_.size(); ++k) {
        if (w[k] == 0.0) continue;
        const auto& m = matrices_[k];
        for (std::size_t i = 0; i < dim_; ++i) {
            Complex row{};
            for (std::size_t j = 0; j < dim_; ++j) row += m[i * dim_ + j] * v[j];
            out[i] += w[k] * row;
        }
    }
}

namespace {

struct RestartOutcome {
    ComplexVector best;
    double best_value = 0.0;
    std::size_t evaluations = 0;
};

double max_of(const std::vector<double>& f) { return f.empty() ? 0.0 : *std::max_element(f.begin(), f.end()); }

/// Log-sum-exp smoothing of max f at sharpness beta.
// Terms below exp(-kCutoff) relative to the top are dropped.
constexpr double kCutoff = 40.0;

double smoothed(const std::vector<double>& f, double beta) {
    const double top = max_of(f);
    double acc = 0.0;
    for (double x : f) {
        const double e = beta * (x - top);
        if (e > -kCutoff) acc += std::exp(e);
    }
    return top + std::log(acc) / beta;
}

RestartOutcome run_restart(const QuadraticFamily& family, std::uint64_t seed, std::size_t cap) {
    RestartOutcome out;
    ComplexVector v = random_unit_vector(family.dim(), seed);
    std::vector<double> f;
    family.values(v, f);
    out.evaluations = 1;
    out.best = v;
    out.best_value = max_of(f);
    if (family.size() == 0 || family.dim() == 1) return out;

    // Sharpness is relative to the current max so the smoothing error stays a
    // fixed fraction of the objective.
    double kappa = 20.0;
    constexpr double kappa_max = 1e5;
    double step = 0.3;
    std::vector<double> weights(family.size());
    std::vector<double> trial_f;
    ComplexVector grad;

    while (out.evaluations < cap && step > 1e-12) {
        const double top = max_of(f);
        const double beta = kappa / std::max(top, 1e-300);
        double wsum = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            const double e = beta * (f[k] - top);
            weights[k] = e > -kCutoff ? std::exp(e) : 0.0;
            wsum += weights[k];
        }
        for (auto& w : weights) w /= wsum;
        family.weighted_apply(v, weights, grad);
        const Complex radial = inner(grad, v);
        for (std::size_t i = 0; i < v.dim(); ++i) grad[i] -= radial.real() * v[i];
        const double gnorm = norm(grad);
        if (!(gnorm > 1e-15 * std::max(top, 1e-300))) {
            if (kappa >= kappa_max) break;
            kappa = std::min(kappa * 4.0, kappa_max);
            continue;
        }

        ComplexVector trial = v;
        for (std::size_t i = 0; i < v.dim(); ++i) trial[i] -= (step / gnorm) * grad[i];
        trial = normalized(trial);
        family.values(trial, trial_f);
        ++out.evaluations;

        const double trial_max = max_of(trial_f);
        if (trial_max < out.best_value) {
            out.best_value = trial_max;
            out.best = trial;
        }
        if (smoothed(trial_f, beta) < smoothed(f, beta)) {
            v = std::move(trial);
            f.swap(trial_f);
            step *= 1.25;
            kappa = std::min(kappa * 1.05, kappa_max);
        } else {
            step *= 0.5;
            if (step < 1e-6 && kappa < kappa_max) {
                kappa = std::min(kappa * 4.0, kappa_max);
                step = 1e-3;
            }
        }
    }
    return out;
}

}  // namespace

MinimaxResult minimize_max_form(const QuadraticFamily& family, const MinimaxOptions& options) {
    if (family.dim() == 0) throw std::invalid_argument("minimize_max_form: zero dimension");
    const std::size_t budget = std::max<std::size_t>(options.budget, 1);
    const std::size_t cap = std::clamp<std::size_t>(options.steps_per_restart, 1, budget);
    const std::size_t restarts = std::max<std::size_t>(1, budget / cap);
    const unsigned threads = std::max(1U, options.threads);

    MinimaxResult result;
    std::vector<RestartOutcome> outcomes;
    std::size_t spent = 0;
    bool have_best = false;

    for (std::size_t first = 0; first < restarts; first += threads) {
        const std::size_t batch = std::min<std::size_t>(threads, restarts - first);
        outcomes.assign(batch, {});
        auto work = [&](std::size_t i) {
            outcomes[i] = run_restart(family, derive_seed(options.seed, seed_tags::restart, first + i), cap);
        };
        if (batch == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t i = 0; i < batch; ++i) pool.emplace_back(work, i);
        }
        for (std::size_t i = 0; i < batch; ++i) {
            auto& o = outcomes[i];
            spent += o.evaluations;
            result.restarts_run = first + i + 1;
            if (!have_best || o.best_value < result.best_value) {
                result.best = o.best;
                result.best_value = o.best_value;
                result.restart_index = first + i;
                have_best = true;
            }
            if (o.best_value <= options.target) {
                result.best = std::move(o.best);
                result.best_value = o.best_value;
                result.restart_index = first + i;
                result.reached_target = true;
                result.evaluations = spent;
                return result;
            }
        }
    }
    result.evaluations = spent;
    return result;
}

}  // namespace ndcert
