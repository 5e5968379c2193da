#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "char_matrices.hpp"
#include "covering.hpp"
#include "dynamic_update.hpp"

namespace covrough {

/// Covering family together with a decision partition of the universe.
struct DecisionSystem {
    CoveringSpace space;
    std::vector<ObjectSet> decision;
};

/// Partition axioms on top of the space axioms: classes nonempty, pairwise
/// disjoint, union the whole universe.
inline std::optional<Violation> validate(const DecisionSystem& ds) {
    if (auto violation = validate(ds.space)) return violation;
    const std::size_t n = ds.space.universe.size();
    if (ds.decision.empty())
        return Violation{Violation::Kind::empty_block, "decision partition has no classes"};
    std::vector<int> owner(n, -1);
    for (std::size_t d = 0; d < ds.decision.size(); ++d) {
        if (ds.decision[d].empty())
            return Violation{Violation::Kind::empty_block,
                             "decision class " + std::to_string(d) + " is empty"};
        for (std::size_t idx : ds.decision[d].members) {
            if (idx >= n)
                return Violation{Violation::Kind::index_out_of_range,
                                 "decision class " + std::to_string(d) +
                                     " references object " + std::to_string(idx) +
                                     " outside the universe"};
            if (owner[idx] != -1)
                return Violation{Violation::Kind::duplicate_label,
                                 "object '" + ds.space.universe.names[idx] +
                                     "' appears in decision classes " +
                                     std::to_string(owner[idx]) + " and " + std::to_string(d)};
            owner[idx] = static_cast<int>(d);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (owner[i] == -1)
            return Violation{Violation::Kind::uncovered_object,
                             "object '" + ds.space.universe.names[i] +
                                 "' belongs to no decision class"};
    return std::nullopt;
}

enum class ReductKind { type1, type2 };
enum class ReductMode { greedy, exhaustive };

/// Full-family approximation vectors of one decision class; the quantities a
/// reduct must preserve. The granule-based pair is only tracked for type-2.
struct ClassCertificate {
    ApproxPair gamma;
    std::optional<ApproxPair> pi;

    friend bool operator==(const ClassCertificate&, const ClassCertificate&) = default;
};

/// A preserving, minimal covering subfamily together with the vectors it
/// preserves. Removing any member breaks preservation.
struct Reduct {
    ReductKind kind;
    std::vector<std::string> members;
    std::vector<ClassCertificate> certificate;
};

namespace detail {

struct ReductContext {
    const DecisionSystem* ds;
    ReductKind kind;
    std::vector<BoolVector> class_vectors;
    std::vector<ClassCertificate> target;
};

inline std::vector<ClassCertificate> class_certificates(const CoveringSpace& space,
                                                        const Selector& selector,
                                                        const std::vector<BoolVector>& xs,
                                                        ReductKind kind) {
    std::vector<ClassCertificate> out;
    out.reserve(xs.size());
    const BoolMatrix gamma = build_gamma(space, selector);
    if (kind == ReductKind::type1) {
        for (const auto& x : xs) out.push_back({second_approx(gamma, x), std::nullopt});
        return out;
    }
    const BoolMatrix pi = build_pi(space, selector);
    for (const auto& x : xs)
        out.push_back({second_approx(gamma, x), fifth_approx(pi, x)});
    return out;
}

inline std::vector<ClassCertificate> certificates_from(const CharMatrices& cm,
                                                       const std::vector<BoolVector>& xs,
                                                       ReductKind kind) {
    std::vector<ClassCertificate> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        std::optional<ApproxPair> pi_pair;
        if (kind == ReductKind::type2) pi_pair = fifth_approx(cm.pi, x);
        out.push_back({second_approx(cm.gamma, x), std::move(pi_pair)});
    }
    return out;
}

inline ReductContext make_context(const DecisionSystem& ds, ReductKind kind,
                                  const CharMatrices& full) {
    ReductContext ctx;
    ctx.ds = &ds;
    ctx.kind = kind;
    const std::size_t n = ds.space.universe.size();
    for (const auto& cls : ds.decision) ctx.class_vectors.push_back(char_vector(cls, n));
    ctx.target = certificates_from(full, ctx.class_vectors, kind);
    return ctx;
}

inline bool subset_preserves(const ReductContext& ctx, const Selector& subset) {
    const auto candidate =
        class_certificates(ctx.ds->space, subset, ctx.class_vectors, ctx.kind);
    return candidate == ctx.target;
}

inline Reduct greedy_reduct(const ReductContext& ctx) {
    Selector members = all_coverings(ctx.ds->space);
    // Deletion attempts run from the last-declared covering back to the
    // first; preservation is monotone in the subfamily, so one pass ends at
    // a minimal set.
    for (std::size_t pos = members.size(); pos-- > 0;) {
        if (members.size() == 1) break;
        Selector trial;
        trial.reserve(members.size() - 1);
        for (std::size_t i = 0; i < members.size(); ++i)
            if (i != pos) trial.push_back(members[i]);
        if (subset_preserves(ctx, trial)) members = std::move(trial);
    }
    return {ctx.kind, std::move(members), ctx.target};
}

inline Reduct exhaustive_reduct(const ReductContext& ctx) {
    const auto& coverings = ctx.ds->space.coverings;
    const std::size_t total = coverings.size();
    if (total > 20)
        throw std::invalid_argument(
            "find_reduct: exhaustive mode is limited to 20 coverings");
    // Ranked by name so candidates of equal size are tried in lexicographic
    // order of their member-name tuples; the first hit at the smallest
    // cardinality wins.
    std::vector<std::size_t> ranked(total);
    for (std::size_t i = 0; i < total; ++i) ranked[i] = i;
    std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
        return coverings[a].name < coverings[b].name;
    });
    for (std::size_t size = 1; size <= total; ++size) {
        std::vector<std::size_t> choose(size);
        for (std::size_t i = 0; i < size; ++i) choose[i] = i;
        while (true) {
            Selector trial;
            trial.reserve(size);
            for (std::size_t r : choose) trial.push_back(coverings[ranked[r]].name);
            if (subset_preserves(ctx, trial)) {
                // Report members in declaration order.
                std::vector<bool> keep(total, false);
                for (std::size_t r : choose) keep[ranked[r]] = true;
                Selector members;
                for (std::size_t c = 0; c < total; ++c)
                    if (keep[c]) members.push_back(coverings[c].name);
                return {ctx.kind, std::move(members), ctx.target};
            }
            std::size_t i = size;
            while (i > 0 && choose[i - 1] == i - 1 + total - size) --i;
            if (i == 0) break;
            ++choose[i - 1];
            for (std::size_t j = i; j < size; ++j) choose[j] = choose[j - 1] + 1;
        }
    }
    // The full family always preserves itself, so this is unreachable on a
    // valid system.
    throw std::logic_error("find_reduct: no preserving subfamily found");
}

}  // namespace detail

/// True iff the subfamily reproduces the full family's per-class upper and
/// lower vectors. Type-1 compares the second pair; type-2 additionally
/// requires the granule-based pair, which is what keeps the worked dynamic
/// systems' three-member answer minimal.
inline bool preserves(const DecisionSystem& ds, const Selector& subset, ReductKind kind) {
    if (subset.empty())
        throw std::invalid_argument("preserves: subfamily must be nonempty");
    const auto full = CharMatrices::build(ds.space, all_coverings(ds.space));
    const auto ctx = detail::make_context(ds, kind, full);
    return detail::subset_preserves(ctx, subset);
}

/// Minimal preserving subfamily. Greedy mode deletes coverings one pass in
/// reverse declaration order; exhaustive mode returns a minimum-cardinality
/// reduct with lexicographic tie-breaking on names.
inline Reduct find_reduct(const DecisionSystem& ds, ReductKind kind,
                          ReductMode mode = ReductMode::greedy) {
    if (auto violation = validate(ds))
        throw std::invalid_argument("find_reduct: " + violation->message);
    const auto full = CharMatrices::build(ds.space, all_coverings(ds.space));
    const auto ctx = detail::make_context(ds, kind, full);
    return mode == ReductMode::greedy ? detail::greedy_reduct(ctx)
                                      : detail::exhaustive_reduct(ctx);
}

/// Applies the revision, refreshes the full-family matrices through the
/// incremental engine, and searches the updated system. Identical to
/// rebuilding the system from scratch and searching that.
inline Reduct reduct_after_update(const DecisionSystem& ds, const UpdateEvent& ev,
                                  ReductKind kind, ReductMode mode = ReductMode::greedy) {
    if (auto violation = validate(ds))
        throw std::invalid_argument("reduct_after_update: " + violation->message);
    auto full = CharMatrices::build(ds.space, all_coverings(ds.space));
    CoveringSpace updated = apply_update(ds.space, ev);
    full = update_char_matrices(std::move(full), ds.space, updated, ev.object);
    DecisionSystem updated_ds{std::move(updated), ds.decision};
    const auto ctx = detail::make_context(updated_ds, kind, full);
    return mode == ReductMode::greedy ? detail::greedy_reduct(ctx)
                                      : detail::exhaustive_reduct(ctx);
}

}  // namespace covrough
