// dense_operator.hpp
// Small dense complex matrices. Test oracle only; capped at dimension 4096.

#pragma once

#include "ndcert/hilbert.hpp"

namespace ndcert {

class DenseOperator {
public:
    static constexpr std::size_t max_dim = 4096;

    /// Zero operator; throws std::length_error above max_dim.
    explicit DenseOperator(std::size_t dim);

    static DenseOperator identity(std::size_t dim);
    /// v v* / <v, v>
    static DenseOperator rank_one(const ComplexVector& v);

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    Complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    ComplexVector apply(const ComplexVector& x) const;
    DenseOperator adjoint() const;

    friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);

    /// Kronecker product a (x) b, with a's index most significant.
    static DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

    double max_abs_diff(const DenseOperator& other) const;

private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

}  // namespace ndcert
