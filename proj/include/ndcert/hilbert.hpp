// hilbert.hpp
// Finite-dimensional complex vectors, the inner product, rank-one projections
// and seeded random unit vectors / orthonormal bases.
//
// Convention: the inner product is linear in the FIRST argument and
// conjugate-linear in the second, <x, y> = sum_k x_k * conj(y_k).

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace ndcert {

using Complex = std::complex<double>;

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim);
    explicit ComplexVector(std::vector<Complex> entries);
    ComplexVector(std::initializer_list<Complex> entries);

    /// Standard basis vector e_index in C^dim.
    static ComplexVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    Complex& operator[](std::size_t k) { return entries_[k]; }
    const Complex& operator[](std::size_t k) const { return entries_[k]; }

    std::span<Complex> entries() noexcept { return entries_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    auto begin() noexcept { return entries_.begin(); }
    auto end() noexcept { return entries_.end(); }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    ComplexVector& operator+=(const ComplexVector& other);
    ComplexVector& operator-=(const ComplexVector& other);
    ComplexVector& operator*=(Complex scale);

    friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

private:
    std::vector<Complex> entries_;
};

ComplexVector operator+(ComplexVector lhs, const ComplexVector& rhs);
ComplexVector operator-(ComplexVector lhs, const ComplexVector& rhs);
ComplexVector operator*(Complex scale, ComplexVector v);

/// sum_k x_k conj(y_k). Throws DimensionMismatch.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
inline Complex inner(const ComplexVector& x, const ComplexVector& y) {
    return inner(x.entries(), y.entries());
}

double norm_squared(std::span<const Complex> x) noexcept;
inline double norm_squared(const ComplexVector& x) noexcept { return norm_squared(x.entries()); }
double norm(const ComplexVector& x) noexcept;
double distance(const ComplexVector& x, const ComplexVector& y);

/// x / ||x||; throws std::invalid_argument on the zero vector.
ComplexVector normalized(const ComplexVector& x);

/// Orthogonal projection of x onto the line C v: (<x, v> / <v, v>) v.
ComplexVector rank_one_apply(const ComplexVector& v, const ComplexVector& x);

/// Complex Gaussian vector normalized to the unit sphere; deterministic in seed.
ComplexVector random_unit_vector(std::size_t dim, std::uint64_t seed);

/// Haar-distributed orthonormal basis of C^n (Gram-Schmidt with one
/// reorthogonalization pass over complex Gaussian columns).
std::vector<ComplexVector> random_orthonormal_basis(std::size_t n, std::uint64_t seed);

/// max_{j,k} |<b_j, b_k> - delta_jk|.
double gram_residual(std::span<const ComplexVector> family);

/// splitmix64 finalizer used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Child seed for (root, stream tag, index). Every component derives its
/// randomness this way so parallel execution cannot change results.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag, std::uint64_t index) noexcept;

namespace seed_tags {
inline constexpr std::uint64_t restart = 0x52455354;   // search restarts
inline constexpr std::uint64_t level = 0x4c45564c;     // family levels
inline constexpr std::uint64_t basis = 0x42415349;     // random bases
inline constexpr std::uint64_t vectors = 0x56454353;   // random vector files
inline constexpr std::uint64_t cover = 0x434f5652;     // cover trials
}  // namespace seed_tags

}  // namespace ndcert
