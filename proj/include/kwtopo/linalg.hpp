#pragma once

#include <cstdint>
#include <vector>

#include "kwtopo/zq.hpp"

namespace kwtopo {

/// Vector over Z_q, one byte per entry.
using ZqVec = std::vector<uint8_t>;

/// Dense row-major matrix over Z_q. Entries are kept reduced to [0, q).
/// Rank/kernel/image/orthogonal-complement computations require prime q
/// (Gaussian elimination over the field F_q) and throw CompositeModulus
/// otherwise; construction and multiplication work for any q >= 2.
class ZqMatrix {
public:
    ZqMatrix() = default;
    ZqMatrix(size_t rows, size_t cols, uint32_t q);

    static ZqMatrix identity(size_t n, uint32_t q);
    /// Rows given as vectors; all must share length.
    static ZqMatrix from_rows(const std::vector<ZqVec>& rows, uint32_t q);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    uint32_t modulus() const { return q_; }

    uint8_t at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    void set(size_t r, size_t c, int64_t v) { data_[r * cols_ + c] = zq_reduce(v, q_); }

    ZqMatrix transposed() const;
    ZqVec multiply(const ZqVec& v) const;
    ZqVec column(size_t c) const;

    bool operator==(const ZqMatrix&) const = default;

private:
    size_t rows_ = 0, cols_ = 0;
    uint32_t q_ = 2;
    std::vector<uint8_t> data_;
};

/// Rank over F_q (prime q required).
size_t rank(const ZqMatrix& m);

/// Basis of { v : m v = 0 }. The vectors are linearly independent and there
/// are exactly cols - rank(m) of them.
std::vector<ZqVec> kernel_basis(const ZqMatrix& m);

/// Basis of the column space, returned as rank(m) original columns of m.
std::vector<ZqVec> image_basis(const ZqMatrix& m);

/// Basis of { y : x . y = 0 for all x in span(basis) } under the standard
/// bilinear form on Z_q^len.
std::vector<ZqVec> orthogonal_complement(const std::vector<ZqVec>& basis,
                                         size_t len, uint32_t q);

/// True iff v lies in the span of the given vectors (prime q).
bool in_span(const std::vector<ZqVec>& basis, const ZqVec& v, uint32_t q);

/// True iff the two lists span the same subspace (prime q).
bool same_span(const std::vector<ZqVec>& a, const std::vector<ZqVec>& b,
               size_t len, uint32_t q);

constexpr uint64_t kDefaultBudget = uint64_t(1) << 24;

/// Streams the q^k linear combinations of k basis vectors in a fixed
/// mixed-radix order (coefficient of basis[0] is the most significant digit;
/// index 0 is the zero vector). The index range [0, size()) can be split
/// deterministically across workers; at(i) depends only on i.
class SpanEnumerator {
public:
    SpanEnumerator(std::vector<ZqVec> basis, size_t len, uint32_t q,
                   uint64_t budget = kDefaultBudget);

    uint64_t size() const { return size_; }
    size_t vector_length() const { return len_; }

    ZqVec at(uint64_t index) const;
    /// In-place variant for hot loops.
    void write(uint64_t index, ZqVec& out) const;

private:
    std::vector<ZqVec> basis_;
    size_t len_;
    uint32_t q_;
    uint64_t size_;
};

/// q^k with overflow/budget guard; throws BudgetExceeded past the cap.
uint64_t checked_power(uint32_t q, size_t k, uint64_t cap);

} // namespace kwtopo
