#include "kwtopo/linalg.hpp"

#include <algorithm>
#include <string>

namespace kwtopo {

ZqMatrix::ZqMatrix(size_t rows, size_t cols, uint32_t q)
    : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {
    if (q < 2) throw Error("modulus must be >= 2");
}

ZqMatrix ZqMatrix::identity(size_t n, uint32_t q) {
    ZqMatrix m(n, n, q);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

ZqMatrix ZqMatrix::from_rows(const std::vector<ZqVec>& rows, uint32_t q) {
    size_t cols = rows.empty() ? 0 : rows.front().size();
    ZqMatrix m(rows.size(), cols, q);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error("ragged row list");
        for (size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

ZqMatrix ZqMatrix::transposed() const {
    ZqMatrix t(cols_, rows_, q_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

ZqVec ZqMatrix::multiply(const ZqVec& v) const {
    if (v.size() != cols_) throw Error("dimension mismatch in matrix-vector product");
    ZqVec out(rows_, 0);
    for (size_t r = 0; r < rows_; ++r) {
        uint64_t acc = 0;
        for (size_t c = 0; c < cols_; ++c) acc += uint64_t(at(r, c)) * v[c];
        out[r] = static_cast<uint8_t>(acc % q_);
    }
    return out;
}

ZqVec ZqMatrix::column(size_t c) const {
    ZqVec out(rows_);
    for (size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

namespace {

// Row echelon form in place; returns pivot column per pivot row.
std::vector<size_t> echelonize(std::vector<ZqVec>& rows, size_t cols, uint32_t q) {
    require_prime(q);
    std::vector<size_t> pivot_cols;
    size_t pivot_row = 0;
    for (size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
        size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        uint8_t inv = zq_inv(rows[pivot_row][col], q);
        for (size_t c = col; c < cols; ++c)
            rows[pivot_row][c] = zq_mul(rows[pivot_row][c], inv, q);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col] == 0) continue;
            uint8_t factor = rows[r][col];
            for (size_t c = col; c < cols; ++c) {
                uint8_t sub = zq_mul(factor, rows[pivot_row][c], q);
                rows[r][c] = zq_sub(rows[r][c], sub, q);
            }
        }
        pivot_cols.push_back(col);
        ++pivot_row;
    }
    return pivot_cols;
}

std::vector<ZqVec> matrix_rows(const ZqMatrix& m) {
    std::vector<ZqVec> rows(m.rows(), ZqVec(m.cols()));
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) rows[r][c] = m.at(r, c);
    return rows;
}

} // namespace

size_t rank(const ZqMatrix& m) {
    auto rows = matrix_rows(m);
    return echelonize(rows, m.cols(), m.modulus()).size();
}

std::vector<ZqVec> kernel_basis(const ZqMatrix& m) {
    uint32_t q = m.modulus();
    auto rows = matrix_rows(m);
    auto pivot_cols = echelonize(rows, m.cols(), q);

    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : pivot_cols) is_pivot[c] = true;

    std::vector<ZqVec> basis;
    for (size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        ZqVec v(m.cols(), 0);
        v[free_col] = 1;
        // Reduced echelon form: pivot rows read off the dependent entries.
        for (size_t pr = 0; pr < pivot_cols.size(); ++pr)
            v[pivot_cols[pr]] = zq_neg(rows[pr][free_col], q);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<ZqVec> image_basis(const ZqMatrix& m) {
    // Pivot columns of the echelon form index independent columns of m.
    auto rows = matrix_rows(m);
    auto pivots = echelonize(rows, m.cols(), m.modulus());
    std::vector<ZqVec> basis;
    basis.reserve(pivots.size());
    for (size_t c : pivots) basis.push_back(m.column(c));
    return basis;
}

std::vector<ZqVec> orthogonal_complement(const std::vector<ZqVec>& basis,
                                         size_t len, uint32_t q) {
    for (const auto& v : basis)
        if (v.size() != len) throw Error("basis vector length mismatch");
    if (basis.empty()) {
        // Complement of {0} is everything.
        std::vector<ZqVec> full;
        for (size_t i = 0; i < len; ++i) {
            ZqVec e(len, 0);
            e[i] = 1;
            full.push_back(std::move(e));
        }
        return full;
    }
    return kernel_basis(ZqMatrix::from_rows(basis, q));
}

bool in_span(const std::vector<ZqVec>& basis, const ZqVec& v, uint32_t q) {
    if (basis.empty())
        return std::all_of(v.begin(), v.end(), [](uint8_t x) { return x == 0; });
    ZqMatrix b = ZqMatrix::from_rows(basis, q);
    auto extended = basis;
    extended.push_back(v);
    return rank(b) == rank(ZqMatrix::from_rows(extended, q));
}

bool same_span(const std::vector<ZqVec>& a, const std::vector<ZqVec>& b,
               size_t len, uint32_t q) {
    auto joint = a;
    joint.insert(joint.end(), b.begin(), b.end());
    size_t ra = a.empty() ? 0 : rank(ZqMatrix::from_rows(a, q));
    size_t rb = b.empty() ? 0 : rank(ZqMatrix::from_rows(b, q));
    size_t rj = joint.empty() ? 0 : rank(ZqMatrix::from_rows(joint, q));
    (void)len;
    return ra == rb && rb == rj;
}

uint64_t checked_power(uint32_t q, size_t k, uint64_t cap) {
    uint64_t result = 1;
    for (size_t i = 0; i < k; ++i) {
        if (result > cap / q)
            throw BudgetExceeded("q^" + std::to_string(k) + " exceeds enumeration budget of " +
                                 std::to_string(cap));
        result *= q;
    }
    if (result > cap)
        throw BudgetExceeded("q^" + std::to_string(k) + " exceeds enumeration budget of " +
                             std::to_string(cap));
    return result;
}

SpanEnumerator::SpanEnumerator(std::vector<ZqVec> basis, size_t len, uint32_t q,
                               uint64_t budget)
    : basis_(std::move(basis)), len_(len), q_(q) {
    for (const auto& v : basis_)
        if (v.size() != len_) throw Error("basis vector length mismatch");
    size_ = checked_power(q_, basis_.size(), budget);
}

ZqVec SpanEnumerator::at(uint64_t index) const {
    ZqVec out(len_, 0);
    write(index, out);
    return out;
}

void SpanEnumerator::write(uint64_t index, ZqVec& out) const {
    out.assign(len_, 0);
    // basis_[0] carries the most significant digit
    for (size_t i = basis_.size(); i-- > 0;) {
        uint8_t coeff = static_cast<uint8_t>(index % q_);
        index /= q_;
        if (coeff == 0) continue;
        const ZqVec& b = basis_[i];
        for (size_t j = 0; j < len_; ++j)
            out[j] = zq_add(out[j], zq_mul(coeff, b[j], q_), q_);
    }
}

} // namespace kwtopo
