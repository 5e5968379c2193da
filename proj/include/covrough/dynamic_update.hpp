#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bool_matrix.hpp"
#include "char_matrices.hpp"
#include "covering.hpp"

namespace covrough {

/// Revision of one object's block memberships. For every covering listed,
/// `blocks` is the complete set of block indices containing the object after
/// the revision; coverings not listed keep their old memberships. Block
/// counts never change, so the covering family keeps its shape.
struct UpdateEvent {
    struct Membership {
        std::string covering;
        std::vector<std::size_t> blocks;
    };

    std::size_t object;
    std::vector<Membership> memberships;
};

/// Applies the revision, rejecting any event that would empty a block or
/// leave the object uncovered in some covering. The result differs from the
/// input only in row `object` of the affected membership matrices.
inline CoveringSpace apply_update(const CoveringSpace& space, const UpdateEvent& ev) {
    const std::size_t n = space.universe.size();
    if (ev.object >= n)
        throw std::invalid_argument("apply_update: object " + std::to_string(ev.object) +
                                    " out of range for universe of size " + std::to_string(n));
    CoveringSpace out = space;
    std::vector<bool> seen(space.coverings.size(), false);
    for (const auto& membership : ev.memberships) {
        std::size_t c = 0;
        for (; c < out.coverings.size(); ++c)
            if (out.coverings[c].name == membership.covering) break;
        if (c == out.coverings.size())
            throw std::invalid_argument("apply_update: unknown covering '" +
                                        membership.covering + "'");
        if (seen[c])
            throw std::invalid_argument("apply_update: covering '" + membership.covering +
                                        "' listed twice in one event");
        seen[c] = true;

        auto& cov = out.coverings[c];
        if (membership.blocks.empty())
            throw std::invalid_argument("apply_update: object '" +
                                        space.universe.names[ev.object] +
                                        "' would be uncovered in covering '" + cov.name + "'");
        for (std::size_t b : membership.blocks)
            if (b >= cov.blocks.size())
                throw std::invalid_argument("apply_update: block " + std::to_string(b) +
                                            " out of range in covering '" + cov.name + "'");
        for (std::size_t b = 0; b < cov.blocks.size(); ++b) {
            auto& block = cov.blocks[b];
            const bool was_in = std::binary_search(block.begin(), block.end(), ev.object);
            const bool now_in = std::find(membership.blocks.begin(), membership.blocks.end(),
                                          b) != membership.blocks.end();
            if (was_in == now_in) continue;
            if (now_in) {
                block.insert(std::lower_bound(block.begin(), block.end(), ev.object),
                             ev.object);
            } else {
                if (block.size() == 1)
                    throw std::invalid_argument("apply_update: removing object '" +
                                                space.universe.names[ev.object] +
                                                "' would empty block " + std::to_string(b) +
                                                " of covering '" + cov.name + "'");
                block.erase(std::lower_bound(block.begin(), block.end(), ev.object));
            }
        }
    }
    if (auto violation = validate(out))
        throw std::invalid_argument("apply_update: result invalid: " + violation->message);
    return out;
}

namespace detail {

inline void check_update_shapes(const char* op, const BoolMatrix& square,
                                const BoolMatrix& membership, std::size_t k) {
    if (square.rows() != square.cols())
        throw std::invalid_argument(std::string(op) + ": characteristic matrix must be square");
    if (membership.rows() != square.rows())
        throw std::invalid_argument(std::string(op) + ": membership matrix has " +
                                    std::to_string(membership.rows()) +
                                    " rows but the characteristic matrix is " +
                                    std::to_string(square.rows()) + "x" +
                                    std::to_string(square.cols()));
    if (k >= square.rows())
        throw std::out_of_range(std::string(op) + ": object " + std::to_string(k) +
                                " out of range");
}

// Row k of membership . membership^T: which objects share a block with x_k.
inline BoolVector gamma_line(const BoolMatrix& membership, std::size_t k) {
    const std::size_t n = membership.rows();
    BoolVector line(n);
    const auto rk = membership.row_words(k);
    for (std::size_t j = 0; j < n; ++j)
        if (any_common(rk, membership.row_words(j))) line.set(j, true);
    touch_counter() += static_cast<std::uint64_t>(n) * membership.words_per_row() * word_bits;
    return line;
}

// Row k of the containment product: objects whose every block around x_k ...
// entry j is 1 iff the block set of x_k is contained in that of x_j.
inline BoolVector pi_row(const BoolMatrix& membership, std::size_t k) {
    const std::size_t n = membership.rows();
    BoolVector line(n);
    const auto rk = membership.row_words(k);
    for (std::size_t j = 0; j < n; ++j)
        if (contained_in(rk, membership.row_words(j))) line.set(j, true);
    touch_counter() += static_cast<std::uint64_t>(n) * membership.words_per_row() * word_bits;
    return line;
}

// Column k: entry i is 1 iff the block set of x_i is contained in that of x_k.
inline BoolVector pi_col(const BoolMatrix& membership, std::size_t k) {
    const std::size_t n = membership.rows();
    BoolVector line(n);
    const auto rk = membership.row_words(k);
    for (std::size_t i = 0; i < n; ++i)
        if (contained_in(membership.row_words(i), rk)) line.set(i, true);
    touch_counter() += static_cast<std::uint64_t>(n) * membership.words_per_row() * word_bits;
    return line;
}

inline std::vector<int> line_minus(const BoolVector& fresh, const BoolVector& old) {
    std::vector<int> delta(fresh.size());
    for (std::size_t i = 0; i < fresh.size(); ++i)
        delta[i] = static_cast<int>(fresh.get(i)) - static_cast<int>(old.get(i));
    return delta;
}

}  // namespace detail

/// Incremental refresh of the type-1 matrix after object k's memberships
/// changed: recompute line k from the new membership matrix and mirror it to
/// the column (the matrix stays symmetric). Touches O(nm + n) cells; the
/// result is bit-identical to a full rebuild.
inline BoolMatrix update_gamma(BoolMatrix gamma, const BoolMatrix& membership, std::size_t k) {
    detail::check_update_shapes("update_gamma", gamma, membership, k);
    const BoolVector line = detail::gamma_line(membership, k);
    gamma = replace_row(std::move(gamma), k, line);
    gamma = replace_col(std::move(gamma), k, line);
    return gamma;
}

/// Incremental refresh of the type-2 matrix: row k and column k are distinct
/// lines (no symmetry), both recomputed from the new membership matrix. Both
/// formulas put 1 at (k,k).
inline BoolMatrix update_pi(BoolMatrix pi, const BoolMatrix& membership, std::size_t k) {
    detail::check_update_shapes("update_pi", pi, membership, k);
    const BoolVector row = detail::pi_row(membership, k);
    const BoolVector col = detail::pi_col(membership, k);
    pi = replace_row(std::move(pi), k, row);
    pi = replace_col(std::move(pi), k, col);
    return pi;
}

/// Signed difference between the refreshed line(s) and the old ones, entries
/// in {-1, 0, 1}. Diagnostic view of the update as a matrix addition; the
/// update functions themselves replace lines instead of adding.
struct LineDelta {
    std::vector<int> row;
    std::vector<int> col;
};

inline LineDelta gamma_delta(const BoolMatrix& gamma_old, const BoolMatrix& membership,
                             std::size_t k) {
    detail::check_update_shapes("gamma_delta", gamma_old, membership, k);
    const BoolVector line = detail::gamma_line(membership, k);
    auto row = detail::line_minus(line, gamma_old.row(k));
    return {row, row};
}

inline LineDelta pi_delta(const BoolMatrix& pi_old, const BoolMatrix& membership,
                          std::size_t k) {
    detail::check_update_shapes("pi_delta", pi_old, membership, k);
    return {detail::line_minus(detail::pi_row(membership, k), pi_old.row(k)),
            detail::line_minus(detail::pi_col(membership, k), pi_old.col(k))};
}

/// Carries a validated matrix pair across a one-object revision. Requires the
/// pair to match the pre-update space (stale input is an error) and checks
/// that only the revised object's membership row changed.
inline CharMatrices update_char_matrices(CharMatrices cm, const CoveringSpace& before,
                                         const CoveringSpace& after, std::size_t object) {
    if (!cm.matches(before))
        throw std::invalid_argument(
            "update_char_matrices: matrices are stale, they were not built from the "
            "pre-update space");
    const BoolMatrix m_before = matrix_rep(before, cm.selector);
    const BoolMatrix m_after = matrix_rep(after, cm.selector);
    if (m_before.rows() != m_after.rows() || m_before.cols() != m_after.cols())
        throw std::invalid_argument("update_char_matrices: block counts changed");
    for (std::size_t i = 0; i < m_before.rows(); ++i) {
        if (i == object) continue;
        if (m_before.row(i) != m_after.row(i))
            throw std::invalid_argument(
                "update_char_matrices: memberships changed for more than one object");
    }
    cm.gamma = update_gamma(std::move(cm.gamma), m_after, object);
    cm.pi = update_pi(std::move(cm.pi), m_after, object);
    cm.source_fingerprint = fingerprint(after);
    return cm;
}

/// Full-recompute reference path: rebuild the needed characteristic matrix of
/// the updated space from scratch, then apply the chosen operators.
inline ApproxPair recompute_baseline(const CoveringSpace& updated, const Selector& selector,
                                     const BoolVector& x, ApproxOp op) {
    switch (op) {
        case ApproxOp::second:
            return second_approx(build_gamma(updated, selector), x);
        case ApproxOp::fifth:
            return fifth_approx(build_pi(updated, selector), x);
        case ApproxOp::sixth:
            return sixth_approx(build_pi(updated, selector), x);
    }
    throw std::invalid_argument("recompute_baseline: unknown operator");
}

}  // namespace covrough
