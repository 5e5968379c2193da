#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace covrough {

/// Running count of matrix cells scanned by the Boolean product kernels plus
/// cells written by row/column replacement. Thread-local; reset it around a
/// region of interest to measure one computation.
inline std::uint64_t& touch_counter() noexcept {
    thread_local std::uint64_t count = 0;
    return count;
}

inline void reset_touches() noexcept { touch_counter() = 0; }
inline std::uint64_t touches() noexcept { return touch_counter(); }

namespace detail {

inline constexpr std::size_t word_bits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept {
    return (bits + word_bits - 1) / word_bits;
}

// Scans every word, no early exit, so one call always costs words * 64 cells.
inline bool any_common(std::span<const std::uint64_t> a,
                       std::span<const std::uint64_t> b) noexcept {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.size(); ++w) acc |= a[w] & b[w];
    return acc != 0;
}

// a <= b bitwise: the set a encodes is contained in the set b encodes.
inline bool contained_in(std::span<const std::uint64_t> a,
                         std::span<const std::uint64_t> b) noexcept {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.size(); ++w) acc |= a[w] & ~b[w];
    return acc == 0;
}

inline constexpr std::uint64_t fnv_offset = 0xcbf29ce484222325ull;
inline constexpr std::uint64_t fnv_prime = 0x100000001b3ull;

inline std::uint64_t fnv1a64(std::uint64_t value, std::uint64_t h) noexcept {
    for (int byte = 0; byte < 8; ++byte) {
        h ^= (value >> (8 * byte)) & 0xffu;
        h *= fnv_prime;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::span<const std::uint64_t> words, std::uint64_t h) noexcept {
    for (std::uint64_t w : words) h = fnv1a64(w, h);
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h) noexcept {
    for (unsigned char c : s) {
        h ^= c;
        h *= fnv_prime;
    }
    return h;
}

}  // namespace detail

/// Dense 0/1 vector packed into 64-bit words. Trailing pad bits stay zero, so
/// word-wise comparison and hashing are exact.
class BoolVector {
public:
    explicit BoolVector(std::size_t len)
        : len_(len), words_(detail::words_for(len), 0) {
        if (len == 0) throw std::invalid_argument("BoolVector: length must be at least 1");
    }

    static BoolVector zeros(std::size_t len) { return BoolVector(len); }

    static BoolVector ones(std::size_t len) {
        BoolVector v(len);
        for (auto& w : v.words_) w = ~std::uint64_t{0};
        v.clear_padding();
        return v;
    }

    static BoolVector of(std::initializer_list<int> bits) {
        BoolVector v(bits.size());
        std::size_t i = 0;
        for (int b : bits) v.set(i++, b != 0);
        return v;
    }

    std::size_t size() const noexcept { return len_; }

    bool get(std::size_t i) const {
        check_index(i);
        return (words_[i / detail::word_bits] >> (i % detail::word_bits)) & 1u;
    }

    void set(std::size_t i, bool value) {
        check_index(i);
        const std::uint64_t mask = std::uint64_t{1} << (i % detail::word_bits);
        if (value)
            words_[i / detail::word_bits] |= mask;
        else
            words_[i / detail::word_bits] &= ~mask;
    }

    bool any() const noexcept {
        for (std::uint64_t w : words_)
            if (w != 0) return true;
        return false;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    BoolVector complemented() const {
        BoolVector out(len_);
        for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
        out.clear_padding();
        return out;
    }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const BoolVector&, const BoolVector&) = default;

private:
    void check_index(std::size_t i) const {
        if (i >= len_)
            throw std::out_of_range("BoolVector: index " + std::to_string(i) +
                                    " out of range for length " + std::to_string(len_));
    }

    void clear_padding() noexcept {
        const std::size_t used = len_ % detail::word_bits;
        if (used != 0) words_.back() &= (std::uint64_t{1} << used) - 1;
    }

    std::size_t len_;
    std::vector<std::uint64_t> words_;
};

/// Dense 0/1 matrix stored as row-major packed bit rows; every row is padded
/// to a whole number of words and the pad bits stay zero.
class BoolMatrix {
public:
    BoolMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_(detail::words_for(cols)), words_(rows * wpr_, 0) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("BoolMatrix: dimensions must be at least 1x1");
    }

    static BoolMatrix identity(std::size_t n) {
        BoolMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static BoolMatrix ones(std::size_t rows, std::size_t cols) {
        BoolMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.set(i, j, true);
        return m;
    }

    static BoolMatrix of(std::initializer_list<std::initializer_list<int>> rows) {
        if (rows.size() == 0 || rows.begin()->size() == 0)
            throw std::invalid_argument("BoolMatrix: dimensions must be at least 1x1");
        BoolMatrix m(rows.size(), rows.begin()->size());
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != m.cols_)
                throw std::invalid_argument("BoolMatrix: ragged initializer");
            std::size_t j = 0;
            for (int b : row) m.set(i, j++, b != 0);
            ++i;
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t i, std::size_t j) const {
        check_indices(i, j);
        return (words_[i * wpr_ + j / detail::word_bits] >> (j % detail::word_bits)) & 1u;
    }

    void set(std::size_t i, std::size_t j, bool value) {
        check_indices(i, j);
        const std::uint64_t mask = std::uint64_t{1} << (j % detail::word_bits);
        if (value)
            words_[i * wpr_ + j / detail::word_bits] |= mask;
        else
            words_[i * wpr_ + j / detail::word_bits] &= ~mask;
    }

    BoolVector row(std::size_t i) const {
        check_indices(i, 0);
        BoolVector out(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) out.set(j, true);
        return out;
    }

    BoolVector col(std::size_t j) const {
        check_indices(0, j);
        BoolVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (get(i, j)) out.set(i, true);
        return out;
    }

    std::span<const std::uint64_t> row_words(std::size_t i) const noexcept {
        return {words_.data() + i * wpr_, wpr_};
    }

    std::size_t words_per_row() const noexcept { return wpr_; }

    friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

private:
    friend BoolMatrix replace_row(BoolMatrix, std::size_t, const BoolVector&);

    std::span<std::uint64_t> row_words_mut(std::size_t i) noexcept {
        return {words_.data() + i * wpr_, wpr_};
    }

    void check_indices(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("BoolMatrix: index (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ") out of range for " +
                                    std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    std::size_t rows_;
    std::size_t cols_;
    std::size_t wpr_;
    std::vector<std::uint64_t> words_;
};

inline BoolMatrix transpose(const BoolMatrix& a) {
    BoolMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.get(i, j)) out.set(j, i, true);
    return out;
}

namespace detail {

inline void check_product_shapes(const char* op, std::size_t a_cols, std::size_t b_rows) {
    if (a_cols != b_rows)
        throw std::invalid_argument(std::string(op) + ": shape mismatch, left has " +
                                    std::to_string(a_cols) + " columns but right has " +
                                    std::to_string(b_rows) + " rows");
}

}  // namespace detail

/// Boolean matrix product: out(i,j) = 1 iff some k has a(i,k) = b(k,j) = 1.
inline BoolMatrix bool_dot(const BoolMatrix& a, const BoolMatrix& b) {
    detail::check_product_shapes("bool_dot", a.cols(), b.rows());
    const BoolMatrix bt = transpose(b);
    BoolMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto ra = a.row_words(i);
        for (std::size_t j = 0; j < bt.rows(); ++j)
            if (detail::any_common(ra, bt.row_words(j))) out.set(i, j, true);
    }
    touch_counter() += static_cast<std::uint64_t>(a.rows()) * bt.rows() *
                       a.words_per_row() * detail::word_bits;
    return out;
}

/// Containment product: out(i,j) = 1 iff a(i,k) <= b(k,j) for every k. This is
/// the min-of-differences product with values clamped to {0,1}; the clamp only
/// matters for all-zero rows, which valid coverings never produce.
inline BoolMatrix circle_dot(const BoolMatrix& a, const BoolMatrix& b) {
    detail::check_product_shapes("circle_dot", a.cols(), b.rows());
    const BoolMatrix bt = transpose(b);
    BoolMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto ra = a.row_words(i);
        for (std::size_t j = 0; j < bt.rows(); ++j)
            if (detail::contained_in(ra, bt.row_words(j))) out.set(i, j, true);
    }
    touch_counter() += static_cast<std::uint64_t>(a.rows()) * bt.rows() *
                       a.words_per_row() * detail::word_bits;
    return out;
}

/// Product of a matrix with its own transpose: out(i,j) = 1 iff rows i and j
/// share a set column. Equal to bool_dot(a, transpose(a)) without forming the
/// transpose.
inline BoolMatrix bool_gram(const BoolMatrix& a) {
    const std::size_t n = a.rows();
    BoolMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ri = a.row_words(i);
        for (std::size_t j = 0; j < n; ++j)
            if (detail::any_common(ri, a.row_words(j))) out.set(i, j, true);
    }
    touch_counter() += static_cast<std::uint64_t>(n) * n * a.words_per_row() *
                       detail::word_bits;
    return out;
}

/// Containment form of the gram product: out(i,j) = 1 iff row i is contained
/// in row j. Equal to circle_dot(a, transpose(a)).
inline BoolMatrix circle_gram(const BoolMatrix& a) {
    const std::size_t n = a.rows();
    BoolMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ri = a.row_words(i);
        for (std::size_t j = 0; j < n; ++j)
            if (detail::contained_in(ri, a.row_words(j))) out.set(i, j, true);
    }
    touch_counter() += static_cast<std::uint64_t>(n) * n * a.words_per_row() *
                       detail::word_bits;
    return out;
}

/// out(i) = 1 iff row i of a intersects the set v encodes.
inline BoolVector bool_matvec(const BoolMatrix& a, const BoolVector& v) {
    detail::check_product_shapes("bool_matvec", a.cols(), v.size());
    BoolVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (detail::any_common(a.row_words(i), v.words())) out.set(i, true);
    touch_counter() += static_cast<std::uint64_t>(a.rows()) * a.words_per_row() *
                       detail::word_bits;
    return out;
}

/// out(i) = 1 iff row i of a is contained in the set v encodes.
inline BoolVector circle_matvec(const BoolMatrix& a, const BoolVector& v) {
    detail::check_product_shapes("circle_matvec", a.cols(), v.size());
    BoolVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (detail::contained_in(a.row_words(i), v.words())) out.set(i, true);
    touch_counter() += static_cast<std::uint64_t>(a.rows()) * a.words_per_row() *
                       detail::word_bits;
    return out;
}

/// Returns a with row k replaced by r; every other cell is untouched.
inline BoolMatrix replace_row(BoolMatrix a, std::size_t k, const BoolVector& r) {
    if (k >= a.rows())
        throw std::out_of_range("replace_row: row " + std::to_string(k) +
                                " out of range for " + std::to_string(a.rows()) + " rows");
    if (r.size() != a.cols())
        throw std::invalid_argument("replace_row: row length " + std::to_string(r.size()) +
                                    " does not match " + std::to_string(a.cols()) + " columns");
    auto dst = a.row_words_mut(k);
    const auto src = r.words();
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] = src[w];
    touch_counter() += a.cols();
    return a;
}

/// Returns a with column k replaced by c.
inline BoolMatrix replace_col(BoolMatrix a, std::size_t k, const BoolVector& c) {
    if (k >= a.cols())
        throw std::out_of_range("replace_col: column " + std::to_string(k) +
                                " out of range for " + std::to_string(a.cols()) + " columns");
    if (c.size() != a.rows())
        throw std::invalid_argument("replace_col: column length " + std::to_string(c.size()) +
                                    " does not match " + std::to_string(a.rows()) + " rows");
    for (std::size_t i = 0; i < a.rows(); ++i) a.set(i, k, c.get(i));
    touch_counter() += a.rows();
    return a;
}

inline std::string to_string(const BoolVector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) out += ' ';
        out += v.get(i) ? '1' : '0';
    }
    return out;
}

inline std::string to_string(const BoolMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j != 0) out += ' ';
            out += m.get(i, j) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

}  // namespace covrough
