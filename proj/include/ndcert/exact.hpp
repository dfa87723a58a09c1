// exact.hpp
// Exact integer/rational arithmetic for the level-dimension predicate
//
//     32 m^2 (d^(2^m))^2 d^(2^m - 1) < (100/91)^d
//
// and rounded-down evaluations of the (100/91)^d capacity bounds. Floating
// point never decides a comparison here.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>

namespace ndcert {

using BigInt = boost::multiprecision::cpp_int;

/// Smallest admissible per-level alphabet size.
inline constexpr std::uint64_t kMinAlphabet = 128;  // 2^7

struct PredicateEvaluation {
    unsigned m = 0;
    std::uint64_t d = 0;
    BigInt lhs;        // 32 m^2 d^(3*2^m - 1)
    BigInt rhs_floor;  // floor((100/91)^d)
    bool holds = false;
};

/// Exact evaluation. Since (100/91)^d is never an integer for d >= 1,
/// lhs < (100/91)^d  <=>  lhs <= floor((100/91)^d).
PredicateEvaluation evaluate_level_predicate(unsigned m, std::uint64_t d);
bool level_predicate(unsigned m, std::uint64_t d);

struct LevelDimensionScan {
    unsigned m = 0;
    std::uint64_t d_min = 0;
    std::optional<PredicateEvaluation> last_failure;  // at d_min - 1, absent when d_min == 128
    PredicateEvaluation first_success;
};

/// Smallest d >= 128 satisfying the predicate. The predicate's log-margin is
/// convex in d and negative at d = 128, so it holds on a ray [d_min, inf);
/// a galloping search over that ray returns the same value as an upward scan.
LevelDimensionScan scan_level_dimension(unsigned m);
std::uint64_t min_level_dimension(unsigned m);

/// num/den rounded toward zero to a double (num, den > 0). Saturates at the
/// largest finite double.
double ratio_floor_to_double(const BigInt& num, const BigInt& den);

struct CapacityReport {
    std::uint64_t d = 0;
    double net_lower_bound = 0.0;    // (100/91)^d / 2, rounded down
    double inclined_capacity = 0.0;  // (100/91)^d / 8, rounded down
    double shell_fraction = 0.0;     // (99/100)^d, rounded down
    bool shell_fraction_at_most_half = false;  // exact: (99/100)^d <= 1/2
};

CapacityReport capacity(std::uint64_t d);

/// Exact check n < (100/91)^d / 8.
bool below_inclined_capacity(const BigInt& n, std::uint64_t d);

}  // namespace ndcert
