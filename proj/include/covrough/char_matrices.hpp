#pragma once

#include <cstdint>
#include <utility>

#include "bool_matrix.hpp"
#include "covering.hpp"

namespace covrough {

/// Type-1 characteristic matrix of the selected coverings: entry (i,j) is 1
/// iff some selected block contains both x_i and x_j. Symmetric, all-ones
/// diagonal.
inline BoolMatrix build_gamma(const CoveringSpace& space, const Selector& selector) {
    return bool_gram(matrix_rep(space, selector));
}

/// Type-2 characteristic matrix: entry (i,j) is 1 iff every selected block
/// containing x_i contains x_j, so row i is the indicator of the granule of
/// x_i. All-ones diagonal, generally not symmetric.
inline BoolMatrix build_pi(const CoveringSpace& space, const Selector& selector) {
    return circle_gram(matrix_rep(space, selector));
}

struct ApproxPair {
    BoolVector upper;
    BoolVector lower;

    friend bool operator==(const ApproxPair&, const ApproxPair&) = default;
};

/// Second approximations from the type-1 matrix.
inline ApproxPair second_approx(const BoolMatrix& gamma, const BoolVector& x) {
    return {bool_matvec(gamma, x), circle_matvec(gamma, x)};
}

/// Fifth approximations from the type-2 matrix: membership tests on granules.
inline ApproxPair fifth_approx(const BoolMatrix& pi, const BoolVector& x) {
    return {bool_matvec(pi, x), circle_matvec(pi, x)};
}

/// Sixth approximations from the type-2 matrix: unions of the granules the
/// fifth operators select. Row i of pi encodes the granule of x_i, so the
/// union of selected granules is a transposed product over the fifth result.
inline ApproxPair sixth_approx(const BoolMatrix& pi, const BoolVector& x) {
    const BoolMatrix pit = transpose(pi);
    return {bool_matvec(pit, bool_matvec(pi, x)), bool_matvec(pit, circle_matvec(pi, x))};
}

/// The matrix pair for one covering selection, tagged with the digest of the
/// space state it was built from so stale use after an edit is detectable.
struct CharMatrices {
    BoolMatrix gamma;
    BoolMatrix pi;
    Selector selector;
    std::uint64_t source_fingerprint;

    static CharMatrices build(const CoveringSpace& space, Selector selector) {
        BoolMatrix gamma = build_gamma(space, selector);
        BoolMatrix pi = build_pi(space, selector);
        return {std::move(gamma), std::move(pi), std::move(selector), fingerprint(space)};
    }

    bool matches(const CoveringSpace& space) const {
        return source_fingerprint == fingerprint(space);
    }
};

}  // namespace covrough
