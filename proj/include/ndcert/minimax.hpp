// minimax.hpp
// Minimize max_k <M_k v, v> over the complex unit sphere, for a finite family
// of Hermitian positive semidefinite forms M_k.
//
// Each restart starts from a seeded random unit vector and runs Riemannian
// descent on the log-sum-exp smoothing of the max, with the smoothing
// sharpened as the iterate settles. Restarts are independent; the lowest
// restart index reaching the target wins, so the result does not depend on
// how many threads run them.

#pragma once

#include "ndcert/hilbert.hpp"

namespace ndcert {

class QuadraticFamily {
public:
    virtual ~QuadraticFamily() = default;
    virtual std::size_t dim() const = 0;
    virtual std::size_t size() const = 0;
    /// out[k] = <M_k v, v>
    virtual void values(const ComplexVector& v, std::vector<double>& out) const = 0;
    /// out = sum_k w_k M_k v
    virtual void weighted_apply(const ComplexVector& v, std::span<const double> w, ComplexVector& out) const = 0;
};

/// M_k = u_k u_k^* for unit u_k, so <M_k v, v> = |<v, u_k>|^2.
class RankOneFamily final : public QuadraticFamily {
public:
    /// Normalizes each vector; throws on zero vectors or mixed dimensions.
    RankOneFamily(std::size_t dim, std::span<const ComplexVector> vectors);

    std::size_t dim() const override { return dim_; }
    std::size_t size() const override { return count_; }
    void values(const ComplexVector& v, std::vector<double>& out) const override;
    void weighted_apply(const ComplexVector& v, std::span<const double> w, ComplexVector& out) const override;

private:
    std::size_t dim_;
    std::size_t count_ = 0;
    std::vector<Complex> units_;  // count_ rows of dim_ entries
};

/// Explicit d x d Hermitian matrices, row-major.
class MatrixFamily final : public QuadraticFamily {
public:
    explicit MatrixFamily(std::size_t dim) : dim_(dim) {}

    /// Appends a matrix of dim*dim entries.
    void add(std::vector<Complex> matrix);

    std::size_t dim() const override { return dim_; }
    std::size_t size() const override { return matrices_.size(); }
    void values(const ComplexVector& v, std::vector<double>& out) const override;
    void weighted_apply(const ComplexVector& v, std::span<const double> w, ComplexVector& out) const override;

private:
    std::size_t dim_;
    std::vector<std::vector<Complex>> matrices_;
};

struct MinimaxOptions {
    std::size_t budget = 10000;            // total objective evaluations across restarts
    std::size_t steps_per_restart = 200;   // evaluation cap of one restart
    double target = 0.0;                   // a restart succeeds when max_k f_k <= target
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct MinimaxResult {
    ComplexVector best;
    double best_value = 0.0;          // max_k <M_k best, best>
    std::size_t evaluations = 0;      // spent by restarts 0..restart_index
    std::size_t restart_index = 0;
    std::size_t restarts_run = 0;
    bool reached_target = false;
};

MinimaxResult minimize_max_form(const QuadraticFamily& family, const MinimaxOptions& options);

}  // namespace ndcert
