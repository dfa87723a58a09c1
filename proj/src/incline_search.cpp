#include "ndcert/incline_search.hpp"

#include "ndcert/io.hpp"
#include "ndcert/minimax.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace ndcert {

RealVector realify(const ComplexVector& x) {
    RealVector z(2 * x.dim());
    for (std::size_t k = 0; k < x.dim(); ++k) {
        z[2 * k] = x[k].real();
        z[2 * k + 1] = x[k].imag();
    }
    return z;
}

ComplexVector complexify(std::span<const double> z) {
    if (z.size() % 2 != 0) throw std::invalid_argument("complexify: odd-length real vector");
    ComplexVector x(z.size() / 2);
    for (std::size_t k = 0; k < x.dim(); ++k) x[k] = Complex(z[2 * k], z[2 * k + 1]);
    return x;
}

std::array<RealVector, 4> four_copies(const ComplexVector& x) {
    const Complex i{0.0, 1.0};
    return {realify(x), realify(Complex(-1.0) * x), realify(i * x), realify(-i * x)};
}

double real_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("real_distance: dimension mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(acc);
}

double inclination_bound(double eps) {
    if (!(eps >= 0.0 && eps <= std::sqrt(2.0))) throw std::domain_error("inclination_bound: eps outside [0, sqrt 2]");
    return std::sqrt(2.0) * (1.0 - eps * eps / 2.0);
}

double inclination_achieved(const ComplexVector& candidate, std::span<const ComplexVector> vectors) {
    double worst = 0.0;
    for (const auto& x : vectors) {
        const double n = norm(x);
        if (n == 0.0) continue;
        worst = std::max(worst, std::abs(inner(candidate, x)) / n);
    }
    return worst;
}

namespace {

std::vector<ComplexVector> nonzero_only(std::span<const ComplexVector> vectors, std::size_t d) {
    std::vector<ComplexVector> kept;
    kept.reserve(vectors.size());
    for (const auto& x : vectors) {
        if (x.dim() != d) throw DimensionMismatch("inclined vector search: vectors have different dimensions");
        if (norm_squared(x) > 0.0) kept.push_back(x);
    }
    return kept;
}

}  // namespace

InclinationCertificate search_inclined_vector(std::span<const ComplexVector> vectors, double bound,
                                              const InclineSearchOptions& options) {
    if (vectors.empty()) throw std::invalid_argument("inclined vector search: empty vector family");
    if (!(bound > 0.0 && bound < 1.0)) throw std::invalid_argument("inclined vector search: bound must lie in (0, 1)");
    const std::size_t d = vectors.front().dim();
    if (d == 0) throw std::invalid_argument("inclined vector search: zero dimension");
    const auto kept = nonzero_only(vectors, d);

    InclinationCertificate cert;
    cert.d = d;
    cert.family_digest = vector_list_digest(vectors);
    cert.bound = bound;
    cert.seed = options.seed;

    const RankOneFamily family(d, kept);
    MinimaxOptions mm;
    mm.budget = options.budget;
    mm.steps_per_restart = options.steps_per_restart;
    mm.seed = options.seed;
    mm.threads = options.threads;
    const double target = bound - kCertificateMargin;
    mm.target = target > 0.0 ? target * target : 0.0;
    const MinimaxResult found = minimize_max_form(family, mm);

    cert.candidate = found.best;
    cert.iterations_used = found.evaluations;
    // Recomputed from the raw inputs, independent of the search's bookkeeping.
    cert.achieved = inclination_achieved(cert.candidate, vectors);
    cert.certified = cert.achieved <= target;
    return cert;
}

InclinationCertificate find_inclined_vector(std::span<const ComplexVector> vectors, double bound,
                                            const InclineSearchOptions& options) {
    InclinationCertificate cert = search_inclined_vector(vectors, bound, options);
    if (!cert.certified) {
        std::ostringstream msg;
        msg << "inclined vector search exhausted budget " << options.budget << ": best achieved " << cert.achieved
            << " > bound " << bound;
        throw BudgetExhausted(msg.str(), cert.achieved);
    }
    return cert;
}

InclinationCheck verify_inclination(const InclinationCertificate& cert, std::span<const ComplexVector> vectors) {
    InclinationCheck check;
    for (const auto& x : vectors)
        if (x.dim() != cert.candidate.dim()) throw DimensionMismatch("verify_inclination: dimension mismatch");
    check.digest_matches = vector_list_digest(vectors) == cert.family_digest;
    check.unit_candidate = std::abs(norm(cert.candidate) - 1.0) <= 1e-12;
    check.recomputed = inclination_achieved(cert.candidate, vectors);
    check.achieved_matches = std::abs(check.recomputed - cert.achieved) <= kRecomputeTolerance;
    check.within_bound = check.recomputed <= cert.bound - kCertificateMargin + kRecomputeTolerance &&
                         cert.achieved <= cert.bound;
    return check;
}

std::optional<RealVector> cover_witness(std::span<const RealVector> points, double radius, std::size_t trials,
                                        std::uint64_t seed) {
    if (points.empty()) throw std::invalid_argument("cover_witness: empty point set");
    if (!(radius > 0.0)) throw std::invalid_argument("cover_witness: radius must be positive");
    const std::size_t dim = points.front().size();
    if (dim == 0) throw std::invalid_argument("cover_witness: zero dimension");
    for (const auto& p : points)
        if (p.size() != dim) throw DimensionMismatch("cover_witness: points have different dimensions");

    std::mt19937_64 rng(derive_seed(seed, seed_tags::cover, 0));
    std::normal_distribution<double> normal(0.0, 1.0);
    RealVector y(dim);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        double n2 = 0.0;
        for (auto& c : y) {
            c = normal(rng);
            n2 += c * c;
        }
        if (n2 == 0.0) continue;
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& c : y) c *= inv;

        bool far = true;
        for (const auto& p : points) {
            if (real_distance(p, y) <= radius) {
                far = false;
                break;
            }
        }
        if (!far) continue;

        // Recheck the unit norm and every distance before reporting.
        double check_norm = 0.0;
        for (double c : y) check_norm += c * c;
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& p : points) nearest = std::min(nearest, real_distance(p, y));
        if (std::abs(std::sqrt(check_norm) - 1.0) <= 1e-12 && nearest > radius) return y;
    }
    return std::nullopt;
}

std::optional<RealVector> cover_witness(std::span<const ComplexVector> points, double radius, std::size_t trials,
                                        std::uint64_t seed) {
    std::vector<RealVector> real_points;
    real_points.reserve(points.size());
    for (const auto& p : points) real_points.push_back(realify(p));
    return cover_witness(std::span<const RealVector>(real_points), radius, trials, seed);
}

}  // namespace ndcert
