#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "bool_matrix.hpp"

namespace covrough {

/// Ordered object labels x_1..x_n, addressed by 0-based index everywhere in
/// the library; labels only surface in I/O.
struct Universe {
    std::vector<std::string> names;

    std::size_t size() const noexcept { return names.size(); }
};

/// Family of blocks over a universe. Block contents are sorted object
/// indices; block order is declaration order.
struct Covering {
    std::string name;
    std::vector<std::vector<std::size_t>> blocks;
};

/// A universe together with one or more named coverings of it. Treated as
/// immutable once validated; shareable read-only.
struct CoveringSpace {
    Universe universe;
    std::vector<Covering> coverings;
};

struct Violation {
    enum class Kind {
        empty_universe,
        duplicate_label,
        no_coverings,
        duplicate_covering_name,
        empty_block,
        index_out_of_range,
        uncovered_object,
    };
    Kind kind;
    std::string message;
};

/// Checks the covering axioms: nonempty blocks, indices in range, and every
/// object covered by every covering. Returns the first violation found.
inline std::optional<Violation> validate(const CoveringSpace& space) {
    const std::size_t n = space.universe.size();
    if (n == 0)
        return Violation{Violation::Kind::empty_universe, "universe has no objects"};
    {
        std::unordered_set<std::string> seen;
        for (const auto& label : space.universe.names)
            if (!seen.insert(label).second)
                return Violation{Violation::Kind::duplicate_label,
                                 "duplicate object label '" + label + "'"};
    }
    if (space.coverings.empty())
        return Violation{Violation::Kind::no_coverings, "space has no coverings"};
    {
        std::unordered_set<std::string> seen;
        for (const auto& cov : space.coverings)
            if (!seen.insert(cov.name).second)
                return Violation{Violation::Kind::duplicate_covering_name,
                                 "duplicate covering name '" + cov.name + "'"};
    }
    for (const auto& cov : space.coverings) {
        std::vector<bool> covered(n, false);
        for (std::size_t b = 0; b < cov.blocks.size(); ++b) {
            const auto& block = cov.blocks[b];
            if (block.empty())
                return Violation{Violation::Kind::empty_block,
                                 "covering '" + cov.name + "' block " + std::to_string(b) +
                                     " is empty"};
            for (std::size_t idx : block) {
                if (idx >= n)
                    return Violation{Violation::Kind::index_out_of_range,
                                     "covering '" + cov.name + "' block " + std::to_string(b) +
                                         " references object " + std::to_string(idx) +
                                         " outside the universe of size " + std::to_string(n)};
                covered[idx] = true;
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!covered[i])
                return Violation{Violation::Kind::uncovered_object,
                                 "covering '" + cov.name + "' does not cover object '" +
                                     space.universe.names[i] + "'"};
    }
    return std::nullopt;
}

/// Subset of a universe, kept as sorted unique indices.
struct ObjectSet {
    std::vector<std::size_t> members;

    ObjectSet() = default;

    explicit ObjectSet(std::vector<std::size_t> indices) : members(std::move(indices)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }

    ObjectSet(std::initializer_list<std::size_t> indices)
        : ObjectSet(std::vector<std::size_t>(indices)) {}

    static ObjectSet full(std::size_t n) {
        ObjectSet s;
        s.members.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.members[i] = i;
        return s;
    }

    std::size_t size() const noexcept { return members.size(); }
    bool empty() const noexcept { return members.empty(); }

    bool contains(std::size_t i) const {
        return std::binary_search(members.begin(), members.end(), i);
    }

    ObjectSet complement(std::size_t n) const {
        ObjectSet out;
        for (std::size_t i = 0; i < n; ++i)
            if (!contains(i)) out.members.push_back(i);
        return out;
    }

    friend bool operator==(const ObjectSet&, const ObjectSet&) = default;
};

/// Indicator vector of a set inside a universe of n objects.
inline BoolVector char_vector(const ObjectSet& set, std::size_t n) {
    BoolVector out(n);
    for (std::size_t idx : set.members) {
        if (idx >= n)
            throw std::out_of_range("char_vector: object " + std::to_string(idx) +
                                    " out of range for universe of size " + std::to_string(n));
        out.set(idx, true);
    }
    return out;
}

inline ObjectSet to_object_set(const BoolVector& v) {
    ObjectSet out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) out.members.push_back(i);
    return out;
}

/// Selection of coverings by name; composition unit for all operators.
using Selector = std::vector<std::string>;

inline Selector all_coverings(const CoveringSpace& space) {
    Selector sel;
    sel.reserve(space.coverings.size());
    for (const auto& cov : space.coverings) sel.push_back(cov.name);
    return sel;
}

namespace detail {

inline std::vector<std::size_t> resolve_selector(const CoveringSpace& space,
                                                 const Selector& selector) {
    if (selector.empty())
        throw std::invalid_argument("selector: at least one covering must be selected");
    std::vector<std::size_t> indices;
    indices.reserve(selector.size());
    for (const auto& name : selector) {
        bool found = false;
        for (std::size_t c = 0; c < space.coverings.size(); ++c)
            if (space.coverings[c].name == name) {
                indices.push_back(c);
                found = true;
                break;
            }
        if (!found)
            throw std::invalid_argument("selector: unknown covering '" + name + "'");
    }
    return indices;
}

}  // namespace detail

/// Membership matrix of the selected coverings: one row per object, one
/// column per block, columns concatenated in declaration order.
inline BoolMatrix matrix_rep(const CoveringSpace& space, const Selector& selector) {
    const auto indices = detail::resolve_selector(space, selector);
    std::size_t total_blocks = 0;
    for (std::size_t c : indices) total_blocks += space.coverings[c].blocks.size();
    if (total_blocks == 0)
        throw std::invalid_argument("matrix_rep: selected coverings have no blocks");
    BoolMatrix m(space.universe.size(), total_blocks);
    std::size_t col = 0;
    for (std::size_t c : indices)
        for (const auto& block : space.coverings[c].blocks) {
            for (std::size_t idx : block) m.set(idx, col, true);
            ++col;
        }
    return m;
}

/// Intersection of all selected blocks containing x; the granule of x.
inline ObjectSet neighborhood(const CoveringSpace& space, const Selector& selector,
                              std::size_t x) {
    const auto indices = detail::resolve_selector(space, selector);
    const std::size_t n = space.universe.size();
    if (x >= n)
        throw std::out_of_range("neighborhood: object " + std::to_string(x) +
                                " out of range for universe of size " + std::to_string(n));
    std::vector<bool> in(n, true);
    for (std::size_t c : indices)
        for (const auto& block : space.coverings[c].blocks) {
            if (!std::binary_search(block.begin(), block.end(), x)) continue;
            std::vector<bool> mask(n, false);
            for (std::size_t idx : block) mask[idx] = true;
            for (std::size_t i = 0; i < n; ++i) in[i] = in[i] && mask[i];
        }
    ObjectSet out;
    for (std::size_t i = 0; i < n; ++i)
        if (in[i]) out.members.push_back(i);
    return out;
}

enum class ApproxOp { second, fifth, sixth };

struct ApproxSets {
    ObjectSet upper;
    ObjectSet lower;

    friend bool operator==(const ApproxSets&, const ApproxSets&) = default;
};

namespace detail {

inline ObjectSet second_upper_sets(const CoveringSpace& space,
                                   const std::vector<std::size_t>& indices,
                                   const ObjectSet& x) {
    const std::size_t n = space.universe.size();
    std::vector<bool> in(n, false);
    for (std::size_t c : indices)
        for (const auto& block : space.coverings[c].blocks) {
            bool meets = false;
            for (std::size_t idx : block)
                if (x.contains(idx)) {
                    meets = true;
                    break;
                }
            if (!meets) continue;
            for (std::size_t idx : block) in[idx] = true;
        }
    ObjectSet out;
    for (std::size_t i = 0; i < n; ++i)
        if (in[i]) out.members.push_back(i);
    return out;
}

}  // namespace detail

/// Ground-truth approximations computed straight from the set definitions:
/// the second pair from block unions (lower as the complement dual), the
/// fifth and sixth pairs from neighborhoods. Independent of the matrix path,
/// which it serves as the oracle for.
inline ApproxSets oracle_approx(const CoveringSpace& space, const Selector& selector,
                                const ObjectSet& x, ApproxOp op) {
    const auto indices = detail::resolve_selector(space, selector);
    const std::size_t n = space.universe.size();
    for (std::size_t idx : x.members)
        if (idx >= n)
            throw std::out_of_range("oracle_approx: set member out of range");

    if (op == ApproxOp::second) {
        ObjectSet upper = detail::second_upper_sets(space, indices, x);
        ObjectSet lower =
            detail::second_upper_sets(space, indices, x.complement(n)).complement(n);
        return {upper, lower};
    }

    std::vector<ObjectSet> granules;
    granules.reserve(n);
    for (std::size_t i = 0; i < n; ++i) granules.push_back(neighborhood(space, selector, i));

    auto meets = [&](const ObjectSet& g) {
        for (std::size_t idx : g.members)
            if (x.contains(idx)) return true;
        return false;
    };
    auto inside = [&](const ObjectSet& g) {
        for (std::size_t idx : g.members)
            if (!x.contains(idx)) return false;
        return true;
    };

    if (op == ApproxOp::fifth) {
        ObjectSet upper, lower;
        for (std::size_t i = 0; i < n; ++i) {
            if (meets(granules[i])) upper.members.push_back(i);
            if (inside(granules[i])) lower.members.push_back(i);
        }
        return {upper, lower};
    }

    std::vector<bool> up(n, false), low(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (meets(granules[i]))
            for (std::size_t idx : granules[i].members) up[idx] = true;
        if (inside(granules[i]))
            for (std::size_t idx : granules[i].members) low[idx] = true;
    }
    ApproxSets out;
    for (std::size_t i = 0; i < n; ++i) {
        if (up[i]) out.upper.members.push_back(i);
        if (low[i]) out.lower.members.push_back(i);
    }
    return out;
}

/// Order-sensitive digest of the whole space state; used to detect stale
/// derived matrices after an edit.
inline std::uint64_t fingerprint(const CoveringSpace& space) {
    std::uint64_t h = detail::fnv_offset;
    h = detail::fnv1a64(static_cast<std::uint64_t>(space.universe.size()), h);
    for (const auto& label : space.universe.names) h = detail::fnv1a64(label, h);
    h = detail::fnv1a64(static_cast<std::uint64_t>(space.coverings.size()), h);
    for (const auto& cov : space.coverings) {
        h = detail::fnv1a64(cov.name, h);
        h = detail::fnv1a64(static_cast<std::uint64_t>(cov.blocks.size()), h);
        for (const auto& block : cov.blocks) {
            h = detail::fnv1a64(static_cast<std::uint64_t>(block.size()), h);
            for (std::size_t idx : block) h = detail::fnv1a64(static_cast<std::uint64_t>(idx), h);
        }
    }
    return h;
}

}  // namespace covrough
