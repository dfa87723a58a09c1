// tensor_projection.hpp
// Structural single-axis projections I (x) ... (x) R_v (x) ... (x) I on
// l2(B^A) and their products over distinct axes. Dense matrices are only
// produced by dense_materialize, as a test oracle.

#pragma once

#include "ndcert/dense_operator.hpp"
#include "ndcert/tensor_index.hpp"

namespace ndcert {

class AxisProjectionSpec {
public:
    /// Normalizes direction; throws on unknown axis, wrong length or zero direction.
    AxisProjectionSpec(TensorIndexSpace space, std::string axis, const ComplexVector& direction);

    const TensorIndexSpace& space() const noexcept { return space_; }
    const std::string& axis() const noexcept { return axis_; }
    const ComplexVector& direction() const noexcept { return direction_; }

private:
    TensorIndexSpace space_;
    std::string axis_;
    ComplexVector direction_;
};

class ProductProjectionSpec {
public:
    ProductProjectionSpec(TensorIndexSpace space, const std::map<std::string, ComplexVector>& directions);

    const TensorIndexSpace& space() const noexcept { return space_; }
    const std::map<std::string, ComplexVector>& directions() const noexcept { return directions_; }

    /// Factors in the space's axis order.
    std::vector<AxisProjectionSpec> factors() const;

private:
    TensorIndexSpace space_;
    std::map<std::string, ComplexVector> directions_;
};

/// Apply R_v in place to every block along one axis of a flat buffer (v unit).
void apply_axis_inplace(const TensorIndexSpace& space, std::size_t axis_pos, const ComplexVector& unit_direction,
                        std::span<Complex> x);

/// sum_s |<x(s), v>|^2 = ||P_{a,v} x||^2 for unit v, without materializing the output.
double axis_projection_norm_squared(const TensorIndexSpace& space, std::size_t axis_pos,
                                    const ComplexVector& unit_direction, std::span<const Complex> x);

ComplexVector apply_axis(const AxisProjectionSpec& spec, const ComplexVector& x);

/// Sequential application in the space's axis order; the factors commute.
ComplexVector apply_product(const ProductProjectionSpec& spec, const ComplexVector& x);

/// Sequential application in a caller-chosen axis order (each axis once).
ComplexVector apply_product_in_order(const ProductProjectionSpec& spec, const ComplexVector& x,
                                     const std::vector<std::string>& order);

/// v_t = prod_a v_{a, t(a)}: the unit vector fixed by every factor.
/// Requires a direction on every axis.
ComplexVector joint_fixed_vector(const ProductProjectionSpec& spec);

DenseOperator dense_materialize(const AxisProjectionSpec& spec);
DenseOperator dense_materialize(const ProductProjectionSpec& spec);

}  // namespace ndcert
