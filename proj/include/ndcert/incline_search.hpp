// incline_search.hpp
// Inclined unit vectors: given x_1..x_n in C^d, find a unit x with
// |<x, x_j>| <= c ||x_j|| for every j, together with a certificate that can be
// re-verified from the inputs alone. Also the realification used to move
// between C^d and R^2d, the parallelogram inclination bound and an empirical
// covering-witness search on the real sphere.

#pragma once

#include "ndcert/exact.hpp"
#include "ndcert/hilbert.hpp"

#include <array>
#include <optional>
#include <string>

namespace ndcert {

using RealVector = std::vector<double>;

/// (x_0, ..., x_{d-1}) -> (Re x_0, Im x_0, Re x_1, Im x_1, ...).
RealVector realify(const ComplexVector& x);
/// Inverse of realify; throws std::invalid_argument on odd length.
ComplexVector complexify(std::span<const double> z);

/// realify of x, -x, ix, -ix, in that order.
std::array<RealVector, 4> four_copies(const ComplexVector& x);

double real_distance(std::span<const double> a, std::span<const double> b);

/// sqrt(2) (1 - eps^2 / 2): for unit x, y with ||x +- y||, ||x +- iy|| >= eps,
/// |<x, y>| is at most this. Throws std::domain_error unless 0 <= eps <= sqrt(2).
double inclination_bound(double eps);

/// Certificates must clear the bound by this margin.
inline constexpr double kCertificateMargin = 1e-9;
/// Recomputed achieved values must match the stored one within this.
inline constexpr double kRecomputeTolerance = 1e-10;

struct InclinationCertificate {
    std::size_t d = 0;
    std::string family_digest;
    ComplexVector candidate;
    double achieved = 0.0;  // max_j |<candidate, x_j>| / ||x_j|| over nonzero x_j
    double bound = 0.0;
    std::uint64_t seed = 0;
    std::size_t iterations_used = 0;
    bool certified = false;  // achieved <= bound - kCertificateMargin
};

class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(std::string message, double best_achieved, std::optional<unsigned> level = std::nullopt)
        : std::runtime_error(std::move(message)), best_achieved_(best_achieved), level_(level) {}

    double best_achieved() const noexcept { return best_achieved_; }
    std::optional<unsigned> level() const noexcept { return level_; }

private:
    double best_achieved_;
    std::optional<unsigned> level_;
};

struct InclineSearchOptions {
    std::size_t budget = 10000;
    std::size_t steps_per_restart = 200;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// Runs the search and always returns a certificate; `certified` tells whether
/// it meets the bound. Zero vectors are ignored.
InclinationCertificate search_inclined_vector(std::span<const ComplexVector> vectors, double bound,
                                              const InclineSearchOptions& options);

/// As search_inclined_vector but throws BudgetExhausted when the bound is not met.
InclinationCertificate find_inclined_vector(std::span<const ComplexVector> vectors, double bound,
                                            const InclineSearchOptions& options);

/// max_j |<candidate, x_j>| / ||x_j||, skipping zero x_j; 0 for an empty family.
double inclination_achieved(const ComplexVector& candidate, std::span<const ComplexVector> vectors);

struct InclinationCheck {
    double recomputed = 0.0;
    bool digest_matches = false;
    bool unit_candidate = false;
    bool achieved_matches = false;
    bool within_bound = false;
    bool ok() const noexcept { return digest_matches && unit_candidate && achieved_matches && within_bound; }
};

/// Re-verifies a certificate against the vector family it claims to cover.
InclinationCheck verify_inclination(const InclinationCertificate& cert, std::span<const ComplexVector> vectors);

/// Samples uniform unit vectors in R^D and returns the first one farther than
/// `radius` from every point (re-verified), or nothing within the trial budget.
/// Not finding one is not a covering proof.
std::optional<RealVector> cover_witness(std::span<const RealVector> points, double radius, std::size_t trials,
                                        std::uint64_t seed);
std::optional<RealVector> cover_witness(std::span<const ComplexVector> points, double radius, std::size_t trials,
                                        std::uint64_t seed);

}  // namespace ndcert
