#pragma once

// Linear algebra over Z/N: Howell normal form, membership with
// coefficients, left kernels, and Smith form over Z/l^k.

#include <cstdint>
#include <vector>

namespace equitheta::zmod {

using Row = std::vector<std::int64_t>;
using Matrix = std::vector<Row>;

/// Howell form of the row span of `rows` (each of length ncols) over Z/N.
/// Rows are ordered by pivot column, pivots divide N, entries above a pivot
/// lie in [0, pivot), and no zero rows remain. Two generating sets of the
/// same submodule give identical output.
Matrix howell_form(Matrix rows, std::int64_t n, std::size_t ncols);

/// Column of the first nonzero entry (ncols for a zero row).
std::size_t pivot_col(const Row& r);

struct Reduction {
    Row remainder;  // canonical representative of v modulo the span
    Row coeffs;     // v - remainder = sum coeffs[i] * howell[i]
    bool member() const;
};

Reduction reduce(const Matrix& howell, Row v, std::int64_t n);
bool in_span(const Matrix& howell, const Row& v, std::int64_t n);
/// Submodule inclusion span(a) within span(b_howell).
bool contains(const Matrix& b_howell, const Matrix& a, std::int64_t n);

/// Number of elements of the span of a Howell basis (capped at 2^62).
std::uint64_t span_size(const Matrix& howell, std::int64_t n);

/// Generators of {x : x * a = 0} for a (m x c) over Z/N.
Matrix left_kernel(const Matrix& a, std::int64_t n, std::size_t ncols);

/// Diagonal reduction over Z/l^k of a relation matrix on `ncols` free
/// generators: span(rows) * V has a basis {d_j e_j}. d_j are powers of l
/// (d_j = N for a zero pivot), nondecreasing.
struct Smith {
    std::vector<std::int64_t> diagonal;  // length ncols
    Matrix v;                            // ncols x ncols
    Matrix v_inverse;
};

Smith smith_prime_power(Matrix rows, std::int64_t ell, int k, std::size_t ncols);

}  // namespace equitheta::zmod
