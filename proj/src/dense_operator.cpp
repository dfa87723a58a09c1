#include "ndcert/dense_operator.hpp"

#include <cmath>
#include <string>

namespace ndcert {

DenseOperator::DenseOperator(std::size_t dim) : dim_(dim) {
    if (dim == 0 || dim > max_dim) {
        throw std::length_error("DenseOperator: dimension " + std::to_string(dim) +
                                " outside [1, " + std::to_string(max_dim) + "]");
    }
    data_.assign(dim * dim, Complex{});
}

DenseOperator DenseOperator::identity(std::size_t dim) {
    DenseOperator id(dim);
    for (std::size_t k = 0; k < dim; ++k) id(k, k) = 1.0;
    return id;
}

DenseOperator DenseOperator::rank_one(const ComplexVector& v) {
    const double vv = norm_squared(v);
    if (!(vv > 0.0)) throw std::invalid_argument("DenseOperator::rank_one: zero vector");
    DenseOperator r(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j) r(i, j) = v[i] * std::conj(v[j]) / vv;
    return r;
}

ComplexVector DenseOperator::apply(const ComplexVector& x) const {
    if (x.dim() != dim_) throw DimensionMismatch("DenseOperator::apply: dimension mismatch");
    ComplexVector y(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex acc{};
        const Complex* row = &data_[i * dim_];
        for (std::size_t j = 0; j < dim_; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

DenseOperator DenseOperator::adjoint() const {
    DenseOperator a(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) a(j, i) = std::conj((*this)(i, j));
    return a;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("DenseOperator product: dimension mismatch");
    const std::size_t n = a.dim_;
    DenseOperator c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c.data_[i * n + j] += aik * b.data_[k * n + j];
        }
    return c;
}

DenseOperator DenseOperator::kron(const DenseOperator& a, const DenseOperator& b) {
    const std::size_t na = a.dim_, nb = b.dim_;
    DenseOperator k(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t p = 0; p < nb; ++p)
                for (std::size_t q = 0; q < nb; ++q) k(i * nb + p, j * nb + q) = aij * b(p, q);
        }
    return k;
}

double DenseOperator::max_abs_diff(const DenseOperator& other) const {
    if (dim_ != other.dim_) throw DimensionMismatch("DenseOperator compare: dimension mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k)
        worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
    return worst;
}

}  // namespace ndcert
