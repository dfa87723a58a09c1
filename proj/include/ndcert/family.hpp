// family.hpp
// Finite-stage branch projections.
//
// A stage of depth M is the direct sum over levels m = 1..M of l2(B_m^{A_m})
// with A_m = {0,1}^m (2^m axes, labelled by binary strings) and |B_m| = d_m.
// For a branch alpha (a binary string of length >= M) the branch projection
// acts on level m as the axis projection along the length-m prefix of alpha:
//
//     P_alpha = (+)_m  I (x) ... (x) R_{v_m} (x) ... (x) I     (axis alpha|m)
//
// The builder picks the directions v_m so that every basis vector e_k has
// <P_alpha e_k, e_k> <= (1 + rho) / 2, and emits a certificate that is
// recomputed from scratch by verify_suppression.

#pragma once

#include "ndcert/incline_search.hpp"
#include "ndcert/tensor_index.hpp"

#include <functional>

namespace ndcert {

enum class Regime { Paper, Toy };

std::string to_string(Regime regime);
Regime regime_from_string(const std::string& text);

class StageParameters {
public:
    /// alphabet_sizes[m-1] = d_m. Paper regime requires d_m >= 128 and the
    /// exact level predicate at every level; throws std::invalid_argument otherwise.
    StageParameters(Regime regime, std::vector<std::size_t> alphabet_sizes);

    /// Paper regime with d_m = min_level_dimension(m).
    static StageParameters paper(unsigned depth);

    Regime regime() const noexcept { return regime_; }
    unsigned depth() const noexcept { return static_cast<unsigned>(alphabets_.size()); }
    std::size_t alphabet(unsigned m) const { return alphabets_.at(m - 1); }
    const std::vector<std::size_t>& alphabets() const noexcept { return alphabets_; }

    const TensorIndexSpace& level_space(unsigned m) const { return spaces_.at(m - 1); }
    std::size_t level_offset(unsigned m) const { return offsets_.at(m - 1); }
    std::size_t level_dim(unsigned m) const { return spaces_.at(m - 1).dim(); }
    /// sum_m d_m^(2^m)
    std::size_t dim() const noexcept { return dim_; }

    /// Q_m x as a view into a stage vector.
    std::span<const Complex> level_block(unsigned m, const ComplexVector& x) const;
    std::span<Complex> level_block(unsigned m, ComplexVector& x) const;

    friend bool operator==(const StageParameters& a, const StageParameters& b) {
        return a.regime_ == b.regime_ && a.alphabets_ == b.alphabets_;
    }

private:
    Regime regime_;
    std::vector<std::size_t> alphabets_;
    std::vector<TensorIndexSpace> spaces_;
    std::vector<std::size_t> offsets_;
    std::size_t dim_ = 0;
};

class BranchProjectionSpec {
public:
    /// directions[m-1] = v_m (normalized here). The branch must be a 0/1 string
    /// of length >= depth; only its first `depth` symbols matter.
    BranchProjectionSpec(StageParameters stage, std::string branch, std::vector<ComplexVector> directions);

    const StageParameters& stage() const noexcept { return stage_; }
    const std::string& branch() const noexcept { return branch_; }
    /// sigma_m = alpha|m
    std::string axis(unsigned m) const { return branch_.substr(0, m); }
    const ComplexVector& direction(unsigned m) const { return directions_.at(m - 1); }
    const std::vector<ComplexVector>& directions() const noexcept { return directions_; }

private:
    StageParameters stage_;
    std::string branch_;
    std::vector<ComplexVector> directions_;
};

void validate_branch(const std::string& branch, unsigned depth);

ComplexVector apply_branch_projection(const BranchProjectionSpec& spec, const ComplexVector& x);

/// Orthogonal projection onto span of an orthonormal family.
class SubspaceProjector {
public:
    /// Throws std::invalid_argument unless the family is orthonormal within 1e-8.
    explicit SubspaceProjector(std::vector<ComplexVector> orthonormal);

    std::size_t rank() const noexcept { return vectors_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    ComplexVector apply(const ComplexVector& x) const;

private:
    std::size_t dim_ = 0;
    std::vector<ComplexVector> vectors_;
};

/// Throws std::invalid_argument when the family is not orthonormal within tol.
void require_orthonormal(std::span<const ComplexVector> basis, double tol = 1e-8);

/// {k : ||P_F e_k||^2 >= eps}, ascending.
std::vector<std::size_t> leakage_set(std::span<const ComplexVector> basis,
                                     const std::function<ComplexVector(const ComplexVector&)>& projector,
                                     double eps);
inline std::vector<std::size_t> leakage_set(std::span<const ComplexVector> basis, const SubspaceProjector& projector,
                                            double eps) {
    return leakage_set(basis, [&](const ComplexVector& x) { return projector.apply(x); }, eps);
}

/// 3 / (pi^2 m^2)
double level_threshold(unsigned m);

struct LeakageReport {
    std::vector<double> thresholds;                 // per level
    std::vector<std::vector<std::size_t>> members;  // X_m per level, ascending
    std::vector<std::vector<double>> masses;        // masses[k][m-1] = ||Q_m e_k||^2
    std::vector<double> off_leakage_mass;           // alpha_k = sum over m with k not in X_m

    bool in_leakage(unsigned m, std::size_t k) const;
};

/// X_m = {k : ||Q_m e_k||^2 > 3/(pi^2 m^2)} (strict), for every level.
LeakageReport level_leakage_sets(const StageParameters& stage, std::span<const ComplexVector> basis);

struct SuppressionCertificate {
    std::string basis_digest;
    std::string branch;
    Regime regime = Regime::Toy;
    std::vector<double> diagonals;  // <P_alpha e_k, e_k>
    double max_diagonal = 0.0;
    double bound = 0.0;
    bool passed = false;
};

SuppressionCertificate verify_suppression(const BranchProjectionSpec& spec, std::span<const ComplexVector> basis,
                                          double bound);

struct LevelBuildReport {
    unsigned m = 0;
    std::string axis;
    std::size_t leakage_count = 0;
    std::string route;              // "empty", "blocks" or "reduced"
    std::size_t block_count = 0;    // nonzero blocks offered to the blockwise search
    bool capacity_hypothesis = false;  // exact: block_count < (100/91)^d / 8
    double block_achieved = 0.0;    // blockwise max normalized inner product (when attempted)
    double level_ratio = 0.0;       // max_{k in X_m} ||P_m Q_m e_k||^2 / ||Q_m e_k||^2, recomputed
    std::size_t iterations = 0;
};

struct BranchBuildOptions {
    double rho = 0.9;
    std::size_t budget = 10000;
    std::size_t steps_per_restart = 200;
    /// Evaluation budget for the blockwise attempt in the toy regime before
    /// falling back to the reduced-form search.
    std::size_t toy_block_budget = 256;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct BranchBuild {
    BranchProjectionSpec spec;
    SuppressionCertificate certificate;
    std::vector<LevelBuildReport> levels;
};

/// Throws BudgetExhausted (with the level) if some level cannot reach rho.
BranchBuild build_branch_projection(const StageParameters& stage, std::span<const ComplexVector> basis,
                                    const std::string& branch, const BranchBuildOptions& options);

/// rho (1 - alpha_k) + alpha_k per basis index.
std::vector<double> per_index_suppression_bounds(const LeakageReport& report, double rho);

struct IntersectionResult {
    unsigned level = 0;                 // first level where all prefixes differ
    std::vector<std::string> axes;      // sigma per branch at that level
    ComplexVector vector;               // unit stage vector
    std::vector<double> residuals;      // ||P_alpha_j x - x|| per branch
};

/// Common unit fixed vector of all branch projections, built at the first
/// separating level from the product of the per-branch axis projections.
/// Throws std::invalid_argument naming the colliding prefixes when no level
/// of the stage separates them.
IntersectionResult branch_intersection(std::span<const BranchProjectionSpec> specs);

/// First level m <= depth at which the prefixes are pairwise distinct.
std::optional<unsigned> separating_level(std::span<const std::string> branches, unsigned depth);

}  // namespace ndcert
