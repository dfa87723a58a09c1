// tensor_index.hpp
// The index set B^A of l2(B^A): A is an ordered list of axis labels and B is
// {0, ..., d-1}. Coordinates are laid out lexicographically, the first axis
// being the most significant digit.

#pragma once

#include "ndcert/hilbert.hpp"

#include <map>
#include <string>
#include <utility>

namespace ndcert {

/// Total assignment axis label -> symbol.
using FunctionIndex = std::map<std::string, std::size_t>;

class TensorIndexSpace {
public:
    /// Throws std::invalid_argument for empty/duplicate axes, d == 0, or a
    /// total dimension that overflows size_t.
    TensorIndexSpace(std::vector<std::string> axes, std::size_t alphabet_size);

    /// Axis set {0,1}^m as the 2^m binary strings of length m in lexicographic order.
    static TensorIndexSpace binary_axes(unsigned m, std::size_t alphabet_size);

    const std::vector<std::string>& axes() const noexcept { return axes_; }
    std::size_t alphabet_size() const noexcept { return alphabet_; }
    std::size_t rank() const noexcept { return axes_.size(); }
    std::size_t dim() const noexcept { return dim_; }

    /// Position of the axis in axes(); throws std::out_of_range if absent.
    std::size_t axis_position(const std::string& axis) const;
    bool has_axis(const std::string& axis) const noexcept;

    /// Distance in the flat layout between consecutive symbols of an axis.
    std::size_t stride(std::size_t axis_pos) const noexcept { return strides_[axis_pos]; }

    std::size_t linearize(const FunctionIndex& t) const;
    FunctionIndex delinearize(std::size_t flat) const;

    /// Number of blocks x(s) for one axis: d^(|A|-1).
    std::size_t block_count() const noexcept { return dim_ / alphabet_; }

    /// Flat offset of the symbol-0 coordinate of block number `block` along
    /// axis_pos; blocks are numbered in the lexicographic order of s.
    std::size_t block_base(std::size_t axis_pos, std::size_t block) const noexcept {
        const std::size_t st = strides_[axis_pos];
        return (block / st) * st * alphabet_ + (block % st);
    }

    /// The space B^(A \ {axis}); throws if axis is the only axis.
    TensorIndexSpace without_axis(const std::string& axis) const;

    friend bool operator==(const TensorIndexSpace&, const TensorIndexSpace&) = default;

private:
    std::vector<std::string> axes_;
    std::size_t alphabet_;
    std::size_t dim_;
    std::vector<std::size_t> strides_;
};

/// t = s u {(a, b)}; throws std::out_of_range if a is not assigned by t.
std::pair<FunctionIndex, std::size_t> split(const FunctionIndex& t, const std::string& axis);
/// Inverse of split; throws std::invalid_argument if s already assigns a.
FunctionIndex join(const FunctionIndex& s, const std::string& axis, std::size_t symbol);

struct Block {
    FunctionIndex rest;  // s in B^(A \ {a})
    ComplexVector values;  // x(s), dimension d
};

/// Eq. (1) view: x(s)_b = x_{s u {(a,b)}}, blocks ordered lexicographically in s.
std::vector<Block> block_view(const TensorIndexSpace& space, const ComplexVector& x,
                              const std::string& axis);

/// Inverse of block_view.
ComplexVector assemble_blocks(const TensorIndexSpace& space, const std::vector<Block>& blocks,
                              const std::string& axis);

}  // namespace ndcert
