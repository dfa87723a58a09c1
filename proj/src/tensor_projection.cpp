#include "ndcert/tensor_projection.hpp"

#include <set>

namespace ndcert {

AxisProjectionSpec::AxisProjectionSpec(TensorIndexSpace space, std::string axis, const ComplexVector& direction)
    : space_(std::move(space)), axis_(std::move(axis)) {
    if (!space_.has_axis(axis_)) throw std::invalid_argument("AxisProjectionSpec: unknown axis '" + axis_ + "'");
    if (direction.dim() != space_.alphabet_size())
        throw DimensionMismatch("AxisProjectionSpec: direction length differs from alphabet size");
    direction_ = normalized(direction);
}

ProductProjectionSpec::ProductProjectionSpec(TensorIndexSpace space,
                                             const std::map<std::string, ComplexVector>& directions)
    : space_(std::move(space)) {
    for (const auto& [axis, v] : directions) {
        if (!space_.has_axis(axis)) throw std::invalid_argument("ProductProjectionSpec: unknown axis '" + axis + "'");
        if (v.dim() != space_.alphabet_size())
            throw DimensionMismatch("ProductProjectionSpec: direction length differs from alphabet size");
        directions_.emplace(axis, normalized(v));
    }
}

std::vector<AxisProjectionSpec> ProductProjectionSpec::factors() const {
    std::vector<AxisProjectionSpec> out;
    for (const auto& axis : space_.axes()) {
        auto it = directions_.find(axis);
        if (it != directions_.end()) out.emplace_back(space_, axis, it->second);
    }
    return out;
}

void apply_axis_inplace(const TensorIndexSpace& space, std::size_t axis_pos, const ComplexVector& v,
                        std::span<Complex> x) {
    if (x.size() != space.dim()) throw DimensionMismatch("apply_axis: dimension mismatch");
    const std::size_t d = space.alphabet_size();
    const std::size_t st = space.stride(axis_pos);
    for (std::size_t blk = 0; blk < space.block_count(); ++blk) {
        const std::size_t base = space.block_base(axis_pos, blk);
        Complex c{};
        for (std::size_t b = 0; b < d; ++b) c += x[base + b * st] * std::conj(v[b]);
        for (std::size_t b = 0; b < d; ++b) x[base + b * st] = c * v[b];
    }
}

double axis_projection_norm_squared(const TensorIndexSpace& space, std::size_t axis_pos, const ComplexVector& v,
                                    std::span<const Complex> x) {
    if (x.size() != space.dim()) throw DimensionMismatch("axis_projection_norm_squared: dimension mismatch");
    const std::size_t d = space.alphabet_size();
    const std::size_t st = space.stride(axis_pos);
    double acc = 0.0;
    for (std::size_t blk = 0; blk < space.block_count(); ++blk) {
        const std::size_t base = space.block_base(axis_pos, blk);
        Complex c{};
        for (std::size_t b = 0; b < d; ++b) c += x[base + b * st] * std::conj(v[b]);
        acc += std::norm(c);
    }
    return acc;
}

ComplexVector apply_axis(const AxisProjectionSpec& spec, const ComplexVector& x) {
    ComplexVector y = x;
    apply_axis_inplace(spec.space(), spec.space().axis_position(spec.axis()), spec.direction(), y.entries());
    return y;
}

ComplexVector apply_product(const ProductProjectionSpec& spec, const ComplexVector& x) {
    if (x.dim() != spec.space().dim()) throw DimensionMismatch("apply_product: dimension mismatch");
    ComplexVector y = x;
    for (std::size_t pos = 0; pos < spec.space().rank(); ++pos) {
        auto it = spec.directions().find(spec.space().axes()[pos]);
        if (it != spec.directions().end()) apply_axis_inplace(spec.space(), pos, it->second, y.entries());
    }
    return y;
}

ComplexVector apply_product_in_order(const ProductProjectionSpec& spec, const ComplexVector& x,
                                     const std::vector<std::string>& order) {
    if (x.dim() != spec.space().dim()) throw DimensionMismatch("apply_product: dimension mismatch");
    std::set<std::string> seen(order.begin(), order.end());
    if (seen.size() != order.size() || order.size() != spec.directions().size())
        throw std::invalid_argument("apply_product_in_order: order must list each projected axis once");
    ComplexVector y = x;
    for (const auto& axis : order) {
        auto it = spec.directions().find(axis);
        if (it == spec.directions().end())
            throw std::invalid_argument("apply_product_in_order: axis '" + axis + "' has no direction");
        apply_axis_inplace(spec.space(), spec.space().axis_position(axis), it->second, y.entries());
    }
    return y;
}

ComplexVector joint_fixed_vector(const ProductProjectionSpec& spec) {
    const auto& space = spec.space();
    std::vector<const ComplexVector*> per_axis;
    for (const auto& axis : space.axes()) {
        auto it = spec.directions().find(axis);
        if (it == spec.directions().end())
            throw std::invalid_argument("joint_fixed_vector: missing direction for axis '" + axis + "'");
        per_axis.push_back(&it->second);
    }
    ComplexVector v(space.dim());
    for (std::size_t flat = 0; flat < space.dim(); ++flat) {
        Complex prod{1.0, 0.0};
        std::size_t rem = flat;
        for (std::size_t pos = 0; pos < space.rank(); ++pos) {
            const std::size_t st = space.stride(pos);
            prod *= (*per_axis[pos])[rem / st];
            rem %= st;
        }
        v[flat] = prod;
    }
    return v;
}

namespace {

DenseOperator kron_chain(const TensorIndexSpace& space, const std::map<std::string, ComplexVector>& directions) {
    if (space.dim() > DenseOperator::max_dim)
        throw std::length_error("dense_materialize: dimension " + std::to_string(space.dim()) + " exceeds cap");
    const std::size_t d = space.alphabet_size();
    auto factor = [&](const std::string& axis) {
        auto it = directions.find(axis);
        return it == directions.end() ? DenseOperator::identity(d) : DenseOperator::rank_one(it->second);
    };
    DenseOperator out = factor(space.axes().front());
    for (std::size_t pos = 1; pos < space.rank(); ++pos) out = DenseOperator::kron(out, factor(space.axes()[pos]));
    return out;
}

}  // namespace

DenseOperator dense_materialize(const AxisProjectionSpec& spec) {
    return kron_chain(spec.space(), {{spec.axis(), spec.direction()}});
}

DenseOperator dense_materialize(const ProductProjectionSpec& spec) {
    return kron_chain(spec.space(), spec.directions());
}

}  // namespace ndcert
