#include "ndcert/tensor_index.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace ndcert {

TensorIndexSpace::TensorIndexSpace(std::vector<std::string> axes, std::size_t alphabet_size)
    : axes_(std::move(axes)), alphabet_(alphabet_size), dim_(1) {
    if (axes_.empty()) throw std::invalid_argument("TensorIndexSpace: no axes");
    if (alphabet_ == 0) throw std::invalid_argument("TensorIndexSpace: alphabet size must be positive");
    std::set<std::string> seen(axes_.begin(), axes_.end());
    if (seen.size() != axes_.size()) throw std::invalid_argument("TensorIndexSpace: duplicate axis label");

    strides_.assign(axes_.size(), 1);
    for (std::size_t i = axes_.size(); i-- > 0;) {
        strides_[i] = dim_;
        if (dim_ > std::numeric_limits<std::size_t>::max() / alphabet_) {
            throw std::invalid_argument("TensorIndexSpace: total dimension overflows");
        }
        dim_ *= alphabet_;
    }
}

TensorIndexSpace TensorIndexSpace::binary_axes(unsigned m, std::size_t alphabet_size) {
    if (m == 0 || m >= 8 * sizeof(std::size_t)) throw std::invalid_argument("binary_axes: bad m");
    std::vector<std::string> axes;
    const std::size_t count = std::size_t{1} << m;
    axes.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::string label(m, '0');
        for (unsigned bit = 0; bit < m; ++bit)
            if ((k >> (m - 1 - bit)) & 1U) label[bit] = '1';
        axes.push_back(std::move(label));
    }
    return TensorIndexSpace(std::move(axes), alphabet_size);
}

std::size_t TensorIndexSpace::axis_position(const std::string& axis) const {
    const auto it = std::find(axes_.begin(), axes_.end(), axis);
    if (it == axes_.end()) throw std::out_of_range("unknown axis '" + axis + "'");
    return static_cast<std::size_t>(it - axes_.begin());
}

bool TensorIndexSpace::has_axis(const std::string& axis) const noexcept {
    return std::find(axes_.begin(), axes_.end(), axis) != axes_.end();
}

std::size_t TensorIndexSpace::linearize(const FunctionIndex& t) const {
    if (t.size() != axes_.size()) throw std::invalid_argument("linearize: index is not total on the axes");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        const auto it = t.find(axes_[i]);
        if (it == t.end()) throw std::invalid_argument("linearize: missing axis '" + axes_[i] + "'");
        if (it->second >= alphabet_) throw std::out_of_range("linearize: symbol out of range");
        flat += it->second * strides_[i];
    }
    return flat;
}

FunctionIndex TensorIndexSpace::delinearize(std::size_t flat) const {
    if (flat >= dim_) throw std::out_of_range("delinearize: flat index out of range");
    FunctionIndex t;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        t[axes_[i]] = flat / strides_[i];
        flat %= strides_[i];
    }
    return t;
}

TensorIndexSpace TensorIndexSpace::without_axis(const std::string& axis) const {
    const std::size_t pos = axis_position(axis);
    std::vector<std::string> rest = axes_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
    return TensorIndexSpace(std::move(rest), alphabet_);
}

std::pair<FunctionIndex, std::size_t> split(const FunctionIndex& t, const std::string& axis) {
    auto it = t.find(axis);
    if (it == t.end()) throw std::out_of_range("split: axis '" + axis + "' not in index");
    FunctionIndex s = t;
    s.erase(axis);
    return {std::move(s), it->second};
}

FunctionIndex join(const FunctionIndex& s, const std::string& axis, std::size_t symbol) {
    if (s.contains(axis)) throw std::invalid_argument("join: axis '" + axis + "' already assigned");
    FunctionIndex t = s;
    t.emplace(axis, symbol);
    return t;
}

std::vector<Block> block_view(const TensorIndexSpace& space, const ComplexVector& x,
                              const std::string& axis) {
    if (x.dim() != space.dim()) throw DimensionMismatch("block_view: dimension mismatch");
    const std::size_t pos = space.axis_position(axis);
    const std::size_t d = space.alphabet_size();
    const std::size_t st = space.stride(pos);
    std::vector<Block> blocks;
    blocks.reserve(space.block_count());
    for (std::size_t blk = 0; blk < space.block_count(); ++blk) {
        const std::size_t base = space.block_base(pos, blk);
        ComplexVector values(d);
        for (std::size_t b = 0; b < d; ++b) values[b] = x[base + b * st];
        FunctionIndex rest = split(space.delinearize(base), axis).first;
        blocks.push_back({std::move(rest), std::move(values)});
    }
    return blocks;
}

ComplexVector assemble_blocks(const TensorIndexSpace& space, const std::vector<Block>& blocks,
                              const std::string& axis) {
    const std::size_t d = space.alphabet_size();
    ComplexVector x(space.dim());
    for (const auto& block : blocks) {
        if (block.values.dim() != d) throw DimensionMismatch("assemble_blocks: block dimension mismatch");
        for (std::size_t b = 0; b < d; ++b) x[space.linearize(join(block.rest, axis, b))] = block.values[b];
    }
    return x;
}

}  // namespace ndcert
