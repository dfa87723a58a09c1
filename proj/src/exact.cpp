#include "ndcert/exact.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ndcert {

namespace {

BigInt power(std::uint64_t base, std::uint64_t exponent) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

std::uint64_t lhs_exponent(unsigned m) {
    if (m == 0 || m > 24) throw std::invalid_argument("level predicate: m must be in [1, 24]");
    return 3 * (std::uint64_t{1} << m) - 1;
}

}  // namespace

PredicateEvaluation evaluate_level_predicate(unsigned m, std::uint64_t d) {
    PredicateEvaluation ev;
    ev.m = m;
    ev.d = d;
    ev.lhs = BigInt(32) * m * m * power(d, lhs_exponent(m));
    ev.rhs_floor = power(100, d) / power(91, d);
    ev.holds = ev.lhs <= ev.rhs_floor;
    return ev;
}

bool level_predicate(unsigned m, std::uint64_t d) {
    // Cross-multiplied form, no division.
    return BigInt(32) * m * m * power(d, lhs_exponent(m)) * power(91, d) < power(100, d);
}

LevelDimensionScan scan_level_dimension(unsigned m) {
    if (m == 0) throw std::invalid_argument("scan_level_dimension: m must be positive");
    std::uint64_t lo = kMinAlphabet;
    std::uint64_t hi = kMinAlphabet;
    if (!level_predicate(m, lo)) {
        // Gallop: invariant predicate(lo) false.
        std::uint64_t step = 64;
        hi = lo + step;
        while (!level_predicate(m, hi)) {
            lo = hi;
            step *= 2;
            hi = lo + step;
        }
        // Bisect: predicate(lo) false, predicate(hi) true.
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            (level_predicate(m, mid) ? hi : lo) = mid;
        }
    }
    LevelDimensionScan scan;
    scan.m = m;
    scan.d_min = hi;
    scan.first_success = evaluate_level_predicate(m, hi);
    if (hi > kMinAlphabet) scan.last_failure = evaluate_level_predicate(m, hi - 1);
    return scan;
}

std::uint64_t min_level_dimension(unsigned m) { return scan_level_dimension(m).d_min; }

double ratio_floor_to_double(const BigInt& num, const BigInt& den) {
    if (num <= 0 || den <= 0) throw std::invalid_argument("ratio_floor_to_double: operands must be positive");
    // Scale so the integer quotient carries at least 64 significant bits,
    // truncate it to 53 bits, then rescale exactly by a power of two.
    const long num_bits = static_cast<long>(boost::multiprecision::msb(num));
    const long den_bits = static_cast<long>(boost::multiprecision::msb(den));
    const long shift = 64 - (num_bits - den_bits);
    BigInt q = shift >= 0 ? BigInt((num << shift) / den) : BigInt(num / (den << -shift));
    const long q_bits = static_cast<long>(boost::multiprecision::msb(q)) + 1;
    long drop = q_bits - 53;
    if (drop > 0) {
        q >>= drop;
    } else {
        drop = 0;
    }
    const double mantissa = static_cast<double>(q.convert_to<std::uint64_t>());
    const long exponent = drop - shift;
    if (exponent > std::numeric_limits<double>::max_exponent) return std::numeric_limits<double>::max();
    const double value = std::ldexp(mantissa, static_cast<int>(exponent));
    return std::isfinite(value) ? value : std::numeric_limits<double>::max();
}

CapacityReport capacity(std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("capacity: d must be positive");
    CapacityReport report;
    report.d = d;
    const BigInt hundred_d = power(100, d);
    const BigInt ninety_one_d = power(91, d);
    report.net_lower_bound = ratio_floor_to_double(hundred_d, 2 * ninety_one_d);
    report.inclined_capacity = ratio_floor_to_double(hundred_d, 8 * ninety_one_d);
    const BigInt ninety_nine_d = power(99, d);
    report.shell_fraction = ratio_floor_to_double(ninety_nine_d, hundred_d);
    report.shell_fraction_at_most_half = 2 * ninety_nine_d <= hundred_d;
    return report;
}

bool below_inclined_capacity(const BigInt& n, std::uint64_t d) {
    return 8 * n * power(91, d) < power(100, d);
}

}  // namespace ndcert
