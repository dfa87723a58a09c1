#include "ndcert/family.hpp"

#include "ndcert/io.hpp"
#include "ndcert/minimax.hpp"
#include "ndcert/tensor_projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace ndcert {

std::string to_string(Regime regime) { return regime == Regime::Paper ? "paper" : "toy"; }

Regime regime_from_string(const std::string& text) {
    if (text == "paper") return Regime::Paper;
    if (text == "toy") return Regime::Toy;
    throw std::invalid_argument("unknown regime '" + text + "' (expected paper or toy)");
}

StageParameters::StageParameters(Regime regime, std::vector<std::size_t> alphabet_sizes)
    : regime_(regime), alphabets_(std::move(alphabet_sizes)) {
    if (alphabets_.empty()) throw std::invalid_argument("StageParameters: at least one level required");
    for (unsigned m = 1; m <= alphabets_.size(); ++m) {
        const std::size_t d = alphabets_[m - 1];
        if (d == 0) throw std::invalid_argument("StageParameters: alphabet size must be positive");
        if (regime_ == Regime::Paper) {
            if (d < kMinAlphabet)
                throw std::invalid_argument("StageParameters: paper regime needs d_" + std::to_string(m) + " >= 128");
            if (!level_predicate(m, d))
                throw std::invalid_argument("StageParameters: level predicate fails at m=" + std::to_string(m) +
                                            ", d=" + std::to_string(d));
        }
        spaces_.push_back(TensorIndexSpace::binary_axes(m, d));
        offsets_.push_back(dim_);
        if (spaces_.back().dim() > std::numeric_limits<std::size_t>::max() - dim_)
            throw std::invalid_argument("StageParameters: stage dimension overflows");
        dim_ += spaces_.back().dim();
    }
}

StageParameters StageParameters::paper(unsigned depth) {
    std::vector<std::size_t> ds;
    for (unsigned m = 1; m <= depth; ++m) ds.push_back(min_level_dimension(m));
    return StageParameters(Regime::Paper, std::move(ds));
}

std::span<const Complex> StageParameters::level_block(unsigned m, const ComplexVector& x) const {
    if (x.dim() != dim_) throw DimensionMismatch("level_block: vector is not a stage vector");
    return x.entries().subspan(level_offset(m), level_dim(m));
}

std::span<Complex> StageParameters::level_block(unsigned m, ComplexVector& x) const {
    if (x.dim() != dim_) throw DimensionMismatch("level_block: vector is not a stage vector");
    return x.entries().subspan(level_offset(m), level_dim(m));
}

void validate_branch(const std::string& branch, unsigned depth) {
    if (branch.size() < depth)
        throw std::invalid_argument("branch '" + branch + "' is shorter than the stage depth " + std::to_string(depth));
    for (char ch : branch)
        if (ch != '0' && ch != '1') throw std::invalid_argument("branch '" + branch + "' is not a binary string");
}

BranchProjectionSpec::BranchProjectionSpec(StageParameters stage, std::string branch,
                                           std::vector<ComplexVector> directions)
    : stage_(std::move(stage)), branch_(std::move(branch)) {
    validate_branch(branch_, stage_.depth());
    if (directions.size() != stage_.depth())
        throw std::invalid_argument("BranchProjectionSpec: need one direction per level");
    for (unsigned m = 1; m <= stage_.depth(); ++m) {
        const auto& v = directions[m - 1];
        if (v.dim() != stage_.alphabet(m))
            throw DimensionMismatch("BranchProjectionSpec: direction at level " + std::to_string(m) +
                                    " has the wrong length");
        directions_.push_back(normalized(v));
    }
}

ComplexVector apply_branch_projection(const BranchProjectionSpec& spec, const ComplexVector& x) {
    const auto& stage = spec.stage();
    if (x.dim() != stage.dim()) throw DimensionMismatch("apply_branch_projection: dimension mismatch");
    ComplexVector y = x;
    for (unsigned m = 1; m <= stage.depth(); ++m) {
        const auto& space = stage.level_space(m);
        apply_axis_inplace(space, space.axis_position(spec.axis(m)), spec.direction(m), stage.level_block(m, y));
    }
    return y;
}

void require_orthonormal(std::span<const ComplexVector> basis, double tol) {
    if (basis.empty()) throw std::invalid_argument("basis is empty");
    const std::size_t dim = basis.front().dim();
    for (const auto& b : basis)
        if (b.dim() != dim) throw DimensionMismatch("basis vectors have different dimensions");
    if (basis.size() > dim) throw std::invalid_argument("basis has more vectors than the dimension");
    const double residual = gram_residual(basis);
    if (!(residual <= tol)) {
        std::ostringstream msg;
        msg << "basis is not orthonormal (Gram residual " << residual << " > " << tol << ")";
        throw std::invalid_argument(msg.str());
    }
}

SubspaceProjector::SubspaceProjector(std::vector<ComplexVector> orthonormal) : vectors_(std::move(orthonormal)) {
    require_orthonormal(vectors_);
    dim_ = vectors_.front().dim();
}

ComplexVector SubspaceProjector::apply(const ComplexVector& x) const {
    if (x.dim() != dim_) throw DimensionMismatch("SubspaceProjector::apply: dimension mismatch");
    ComplexVector y(dim_);
    for (const auto& f : vectors_) {
        const Complex c = inner(x, f);
        for (std::size_t i = 0; i < dim_; ++i) y[i] += c * f[i];
    }
    return y;
}

std::vector<std::size_t> leakage_set(std::span<const ComplexVector> basis,
                                     const std::function<ComplexVector(const ComplexVector&)>& projector,
                                     double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("leakage_set: eps must be positive");
    require_orthonormal(basis);
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (norm_squared(projector(basis[k])) >= eps) members.push_back(k);
    return members;
}

double level_threshold(unsigned m) {
    const double mm = static_cast<double>(m);
    return 3.0 / (std::numbers::pi * std::numbers::pi * mm * mm);
}

bool LeakageReport::in_leakage(unsigned m, std::size_t k) const {
    const auto& xs = members.at(m - 1);
    return std::binary_search(xs.begin(), xs.end(), k);
}

LeakageReport level_leakage_sets(const StageParameters& stage, std::span<const ComplexVector> basis) {
    require_orthonormal(basis);
    if (basis.front().dim() != stage.dim()) throw DimensionMismatch("level_leakage_sets: basis is not over the stage");
    LeakageReport report;
    const unsigned depth = stage.depth();
    report.members.resize(depth);
    for (unsigned m = 1; m <= depth; ++m) report.thresholds.push_back(level_threshold(m));
    report.masses.assign(basis.size(), std::vector<double>(depth, 0.0));
    report.off_leakage_mass.assign(basis.size(), 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        for (unsigned m = 1; m <= depth; ++m) {
            const double mass = norm_squared(stage.level_block(m, basis[k]));
            report.masses[k][m - 1] = mass;
            if (mass > report.thresholds[m - 1]) {
                report.members[m - 1].push_back(k);
            } else {
                report.off_leakage_mass[k] += mass;
            }
        }
    }
    return report;
}

std::vector<double> per_index_suppression_bounds(const LeakageReport& report, double rho) {
    std::vector<double> bounds;
    bounds.reserve(report.off_leakage_mass.size());
    for (double alpha : report.off_leakage_mass) bounds.push_back(rho * (1.0 - alpha) + alpha);
    return bounds;
}

SuppressionCertificate verify_suppression(const BranchProjectionSpec& spec, std::span<const ComplexVector> basis,
                                          double bound) {
    const auto& stage = spec.stage();
    SuppressionCertificate cert;
    cert.branch = spec.branch();
    cert.regime = stage.regime();
    cert.bound = bound;
    cert.basis_digest = vector_list_digest(basis);
    cert.diagonals.reserve(basis.size());
    for (const auto& e : basis) {
        if (e.dim() != stage.dim()) throw DimensionMismatch("verify_suppression: basis is not over the stage");
        cert.diagonals.push_back(inner(apply_branch_projection(spec, e), e).real());
    }
    cert.max_diagonal = 0.0;
    for (double v : cert.diagonals) cert.max_diagonal = std::max(cert.max_diagonal, v);
    cert.passed = cert.max_diagonal <= bound;
    return cert;
}

namespace {

ComplexVector level_vector(const StageParameters& stage, unsigned m, const ComplexVector& e) {
    const auto block = stage.level_block(m, e);
    return ComplexVector(std::vector<Complex>(block.begin(), block.end()));
}

double level_ratio(const TensorIndexSpace& space, std::size_t axis_pos, const ComplexVector& v,
                   const std::vector<ComplexVector>& members) {
    double worst = 0.0;
    for (const auto& y : members) {
        const double mass = norm_squared(y);
        if (mass == 0.0) continue;
        worst = std::max(worst, axis_projection_norm_squared(space, axis_pos, v, y.entries()) / mass);
    }
    return worst;
}

}  // namespace

BranchBuild build_branch_projection(const StageParameters& stage, std::span<const ComplexVector> basis,
                                    const std::string& branch, const BranchBuildOptions& options) {
    validate_branch(branch, stage.depth());
    if (!(options.rho > 0.0 && options.rho < 1.0)) throw std::invalid_argument("build: rho must lie in (0, 1)");
    const LeakageReport leakage = level_leakage_sets(stage, basis);
    const double c = std::sqrt(options.rho);

    std::vector<ComplexVector> directions;
    std::vector<LevelBuildReport> reports;
    for (unsigned m = 1; m <= stage.depth(); ++m) {
        const auto& space = stage.level_space(m);
        const std::string axis = branch.substr(0, m);
        const std::size_t axis_pos = space.axis_position(axis);
        const std::size_t d = space.alphabet_size();
        const std::uint64_t level_seed = derive_seed(options.seed, seed_tags::level, m);

        LevelBuildReport report;
        report.m = m;
        report.axis = axis;
        report.leakage_count = leakage.members[m - 1].size();

        std::vector<ComplexVector> members;
        for (std::size_t k : leakage.members[m - 1]) members.push_back(level_vector(stage, m, basis[k]));

        if (members.empty()) {
            // No constraint at this level; any direction works.
            report.route = "empty";
            report.capacity_hypothesis = true;
            directions.push_back(random_unit_vector(d, level_seed));
            reports.push_back(report);
            continue;
        }

        // Blockwise route: incline v against every block y_k(s).
        std::vector<ComplexVector> blocks;
        for (const auto& y : members) {
            for (const auto& blk : block_view(space, y, axis))
                if (norm_squared(blk.values) > 0.0) blocks.push_back(blk.values);
        }
        report.block_count = blocks.size();
        report.capacity_hypothesis = below_inclined_capacity(BigInt(blocks.size()), d);

        std::optional<ComplexVector> chosen;
        if (!blocks.empty()) {
            InclineSearchOptions search;
            search.budget = stage.regime() == Regime::Toy ? std::min(options.budget, options.toy_block_budget)
                                                          : options.budget;
            search.steps_per_restart = options.steps_per_restart;
            search.seed = level_seed;
            search.threads = options.threads;
            const InclinationCertificate cert = search_inclined_vector(blocks, c, search);
            report.block_achieved = cert.achieved;
            report.iterations += cert.iterations_used;
            if (cert.certified) {
                report.route = "blocks";
                chosen = cert.candidate;
            }
        }

        if (!chosen && stage.regime() == Regime::Toy) {
            // Reduced route: minimize max_k ||P_{a,v} y_k||^2 / ||y_k||^2 directly,
            // i.e. the largest of the quadratic forms sum_s y_k(s) y_k(s)^* / ||y_k||^2.
            MatrixFamily forms(d);
            for (const auto& y : members) {
                const double mass = norm_squared(y);
                if (mass == 0.0) continue;
                std::vector<Complex> g(d * d);
                for (const auto& blk : block_view(space, y, axis))
                    for (std::size_t i = 0; i < d; ++i)
                        for (std::size_t j = 0; j < d; ++j)
                            g[i * d + j] += blk.values[i] * std::conj(blk.values[j]) / mass;
                forms.add(std::move(g));
            }
            MinimaxOptions mm;
            mm.budget = options.budget;
            mm.steps_per_restart = options.steps_per_restart;
            mm.seed = mix_seed(level_seed);
            mm.threads = options.threads;
            mm.target = options.rho - kCertificateMargin;
            const MinimaxResult found = minimize_max_form(forms, mm);
            report.iterations += found.evaluations;
            if (found.reached_target) {
                report.route = "reduced";
                chosen = found.best;
            }
        }

        ComplexVector v = chosen ? normalized(*chosen) : random_unit_vector(d, level_seed);
        report.level_ratio = level_ratio(space, axis_pos, v, members);
        if (!chosen || report.level_ratio > options.rho) {
            std::ostringstream msg;
            msg << "level " << m << ": no direction reached ratio " << options.rho << " within budget "
                << options.budget << " (best blockwise inclination " << report.block_achieved << ")";
            throw BudgetExhausted(msg.str(), chosen ? report.level_ratio : report.block_achieved, m);
        }
        directions.push_back(std::move(v));
        reports.push_back(report);
    }

    BranchProjectionSpec spec(stage, branch, std::move(directions));
    const double bound = (1.0 + options.rho) / 2.0;
    SuppressionCertificate certificate = verify_suppression(spec, basis, bound);
    if (!certificate.passed) {
        std::ostringstream msg;
        msg << "internal error: certified levels but max diagonal " << certificate.max_diagonal << " > " << bound;
        throw std::logic_error(msg.str());
    }
    return BranchBuild{std::move(spec), std::move(certificate), std::move(reports)};
}

std::optional<unsigned> separating_level(std::span<const std::string> branches, unsigned depth) {
    for (unsigned m = 1; m <= depth; ++m) {
        std::set<std::string> prefixes;
        for (const auto& b : branches) prefixes.insert(b.substr(0, m));
        if (prefixes.size() == branches.size()) return m;
    }
    return std::nullopt;
}

IntersectionResult branch_intersection(std::span<const BranchProjectionSpec> specs) {
    if (specs.empty()) throw std::invalid_argument("branch_intersection: no branches");
    const StageParameters& stage = specs.front().stage();
    std::vector<std::string> branches;
    for (const auto& s : specs) {
        if (!(s.stage() == stage)) throw std::invalid_argument("branch_intersection: branches use different stages");
        branches.push_back(s.branch());
    }
    const auto level = separating_level(branches, stage.depth());
    if (!level) {
        std::ostringstream msg;
        msg << "branch_intersection: no level <= " << stage.depth() << " separates the prefixes";
        std::set<std::string> seen;
        for (const auto& b : branches) {
            const std::string p = b.substr(0, stage.depth());
            if (!seen.insert(p).second) msg << "; colliding prefix '" << p << "'";
        }
        throw std::invalid_argument(msg.str());
    }

    const unsigned m = *level;
    const auto& space = stage.level_space(m);
    std::map<std::string, ComplexVector> directions;
    IntersectionResult result;
    result.level = m;
    for (const auto& s : specs) {
        result.axes.push_back(s.axis(m));
        directions.emplace(s.axis(m), s.direction(m));
    }
    // Unconstrained axes take e_0; any unit vector would do.
    for (const auto& axis : space.axes())
        if (!directions.contains(axis)) directions.emplace(axis, ComplexVector::basis(space.alphabet_size(), 0));

    const ComplexVector local = joint_fixed_vector(ProductProjectionSpec(space, directions));
    result.vector = ComplexVector(stage.dim());
    auto block = stage.level_block(m, result.vector);
    std::copy(local.begin(), local.end(), block.begin());

    for (const auto& s : specs) result.residuals.push_back(distance(apply_branch_projection(s, result.vector), result.vector));
    return result;
}

}  // namespace ndcert
