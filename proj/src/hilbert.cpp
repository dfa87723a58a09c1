#include "ndcert/hilbert.hpp"

#include <cmath>
#include <random>
#include <string>

namespace ndcert {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

ComplexVector::ComplexVector(std::size_t dim) : entries_(dim) {}

ComplexVector::ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::out_of_range("basis index " + std::to_string(index) + " >= dim " +
                                std::to_string(dim));
    }
    ComplexVector e(dim);
    e[index] = 1.0;
    return e;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
    require_same_dim(dim(), other.dim(), "operator+=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& other) {
    require_same_dim(dim(), other.dim(), "operator-=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

ComplexVector& ComplexVector::operator*=(Complex scale) {
    for (auto& z : entries_) z *= scale;
    return *this;
}

ComplexVector operator+(ComplexVector lhs, const ComplexVector& rhs) { return lhs += rhs; }
ComplexVector operator-(ComplexVector lhs, const ComplexVector& rhs) { return lhs -= rhs; }
ComplexVector operator*(Complex scale, ComplexVector v) { return v *= scale; }

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    require_same_dim(x.size(), y.size(), "inner");
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * std::conj(y[k]);
    return acc;
}

double norm_squared(std::span<const Complex> x) noexcept {
    double acc = 0.0;
    for (const auto& z : x) acc += std::norm(z);
    return acc;
}

double norm(const ComplexVector& x) noexcept { return std::sqrt(norm_squared(x)); }

double distance(const ComplexVector& x, const ComplexVector& y) {
    require_same_dim(x.dim(), y.dim(), "distance");
    double acc = 0.0;
    for (std::size_t k = 0; k < x.dim(); ++k) acc += std::norm(x[k] - y[k]);
    return std::sqrt(acc);
}

ComplexVector normalized(const ComplexVector& x) {
    const double n = norm(x);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("normalized: vector has zero or non-finite norm");
    }
    return Complex(1.0 / n) * x;
}

ComplexVector rank_one_apply(const ComplexVector& v, const ComplexVector& x) {
    require_same_dim(v.dim(), x.dim(), "rank_one_apply");
    const double vv = norm_squared(v);
    if (!(vv > 0.0)) throw std::invalid_argument("rank_one_apply: zero direction vector");
    return (inner(x, v) / vv) * v;
}

std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag, std::uint64_t index) noexcept {
    return mix_seed(mix_seed(mix_seed(root) ^ tag) ^ index);
}

namespace {

ComplexVector gaussian_vector(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector g(dim);
    for (auto& z : g) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = Complex(re, im);
    }
    return g;
}

}  // namespace

ComplexVector random_unit_vector(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("random_unit_vector: dim must be positive");
    std::mt19937_64 rng(seed);
    for (;;) {
        ComplexVector g = gaussian_vector(dim, rng);
        if (norm_squared(g) > 0.0) return normalized(g);
    }
}

std::vector<ComplexVector> random_orthonormal_basis(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_orthonormal_basis: n must be positive");
    std::mt19937_64 rng(seed);
    std::vector<ComplexVector> basis;
    basis.reserve(n);
    while (basis.size() < n) {
        ComplexVector g = gaussian_vector(n, rng);
        const double initial = norm(g);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                const Complex c = inner(g, q);
                for (std::size_t k = 0; k < n; ++k) g[k] -= c * q[k];
            }
        }
        // A near-dependent draw is discarded and redrawn.
        if (norm(g) < 1e-6 * initial) continue;
        basis.push_back(normalized(g));
    }
    return basis;
}

double gram_residual(std::span<const ComplexVector> family) {
    double worst = 0.0;
    for (std::size_t j = 0; j < family.size(); ++j) {
        for (std::size_t k = j; k < family.size(); ++k) {
            const Complex g = inner(family[j], family[k]);
            const double expected = (j == k) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(g - expected));
        }
    }
    return worst;
}

}  // namespace ndcert
