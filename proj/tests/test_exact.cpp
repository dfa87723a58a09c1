#include <doctest.h>

#include "ndcert/exact.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

using namespace ndcert;
using boost::multiprecision::cpp_rational;

namespace {

// Independent oracle: 32 m^2 (d^(2^m))^2 d^(2^m-1) < (100/91)^d, cross-multiplied
// as lhs * 91^d < 100^d, built factor by factor as written, scanned upward from 128.
bool oracle_predicate(unsigned m, std::uint64_t d) {
    using boost::multiprecision::cpp_int;
    const std::uint64_t block = std::uint64_t{1} << m;
    cpp_int lhs = 32 * m * m;
    cpp_int level = 1;
    for (std::uint64_t i = 0; i < block; ++i) level *= d;
    lhs *= level * level;
    for (std::uint64_t i = 0; i + 1 < block; ++i) lhs *= d;
    cpp_int num = 1, den = 1;
    for (std::uint64_t i = 0; i < d; ++i) {
        num *= 100;
        den *= 91;
    }
    return lhs * den < num;
}

std::uint64_t oracle_scan(unsigned m) {
    std::uint64_t d = 128;
    while (!oracle_predicate(m, d)) ++d;
    return d;
}

// Frozen from an exhaustive exact upward scan.
constexpr std::uint64_t kMinLevelDimension1 = 347;

}  // namespace

TEST_CASE("level predicate spot values") {
    // 32 * 128^5 = 2^40 against (100/91)^128 ~ 1.75e5.
    const auto at128 = evaluate_level_predicate(1, 128);
    CHECK(at128.lhs == BigInt(1) << 40);
    CHECK(at128.rhs_floor == 174864);
    CHECK_FALSE(at128.holds);
    CHECK_FALSE(level_predicate(1, 128));
    CHECK_FALSE(oracle_predicate(1, 128));

    const auto at1000 = evaluate_level_predicate(1, 1000);
    CHECK(at1000.lhs == BigInt("32000000000000000"));
    CHECK(at1000.holds);
    CHECK(level_predicate(1, 1000));
    CHECK(oracle_predicate(1, 1000));
}

TEST_CASE("both predicate forms agree with the rational oracle") {
    for (unsigned m = 1; m <= 2; ++m)
        for (std::uint64_t d = 128; d < 1000; d += 37) {
            CHECK(level_predicate(m, d) == oracle_predicate(m, d));
            CHECK(evaluate_level_predicate(m, d).holds == oracle_predicate(m, d));
        }
}

TEST_CASE("min_level_dimension(1) matches the upward-scan oracle") {
    const std::uint64_t oracle = oracle_scan(1);
    CHECK(oracle == kMinLevelDimension1);
    const auto scan = scan_level_dimension(1);
    CHECK(scan.d_min == oracle);
    CHECK(min_level_dimension(1) == oracle);
    REQUIRE(scan.last_failure.has_value());
    CHECK(scan.last_failure->d + 1 == scan.first_success.d);
    CHECK_FALSE(scan.last_failure->holds);
    CHECK(scan.first_success.holds);
    // 32 * 347^5 = 160989426128224 <= floor((100/91)^347) = 163168704188830
    CHECK(scan.first_success.lhs == BigInt("160989426128224"));
    CHECK(scan.first_success.rhs_floor == BigInt("163168704188830"));
}

TEST_CASE("min_level_dimension(2) matches the oracle") {
    CHECK(min_level_dimension(2) == oracle_scan(2));
    CHECK(min_level_dimension(2) == 837);
}

TEST_CASE("ratio_floor_to_double rounds toward zero") {
    CHECK(ratio_floor_to_double(1, 3) <= 1.0 / 3.0);
    CHECK(ratio_floor_to_double(1, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(ratio_floor_to_double(50, 91) == doctest::Approx(50.0 / 91.0).epsilon(1e-15));
    CHECK(ratio_floor_to_double(50, 91) <= 50.0 / 91.0);
    CHECK(ratio_floor_to_double(BigInt(1) << 80, 1) == std::ldexp(1.0, 80));
    CHECK(ratio_floor_to_double(7, 7) == 1.0);
    // The rounded value times the denominator never exceeds the numerator.
    for (int n = 1; n < 200; n += 7)
        for (int d = 1; d < 200; d += 11) {
            const double q = ratio_floor_to_double(n, d);
            CHECK(cpp_rational(q) <= cpp_rational(n, d));
        }
}

TEST_CASE("capacity") {
    const auto c1 = capacity(1);
    CHECK(c1.net_lower_bound == doctest::Approx(50.0 / 91.0).epsilon(1e-14));
    CHECK(c1.inclined_capacity == doctest::Approx(12.5 / 91.0).epsilon(1e-14));

    const auto c128 = capacity(128);
    CHECK(c128.inclined_capacity == doctest::Approx(21858.069167617865).epsilon(1e-12));
    CHECK(c128.inclined_capacity >= 2e4);
    CHECK(c128.net_lower_bound == doctest::Approx(87432.27667047146).epsilon(1e-12));
    // Exactly a factor of four apart (both are exact quotients rounded down).
    CHECK(c128.net_lower_bound / 4.0 == doctest::Approx(c128.inclined_capacity).epsilon(1e-15));
    CHECK(std::abs(c128.shell_fraction - 0.276251668) < 1e-9);
    CHECK(c128.shell_fraction_at_most_half);
    CHECK_FALSE(capacity(60).shell_fraction_at_most_half);

    CHECK(below_inclined_capacity(21858, 128));
    CHECK_FALSE(below_inclined_capacity(21859, 128));
}
