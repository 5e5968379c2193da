// Acceptance suite. Each criterion runs end to end and prints one pass/fail
// line; the process exits nonzero if any criterion fails. Time limits are
// part of the criteria and are checked, not just reported.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <covrough/covrough.hpp>

using namespace covrough;

namespace {

int failures = 0;

class Criterion {
public:
    Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)), start_(clock::now()) {}

    void require(bool ok, const std::string& what) {
        if (!ok && first_failure_.empty()) first_failure_ = what;
        ok_ = ok_ && ok;
    }

    void note(const std::string& text) { notes_ = text; }

    double elapsed() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

    void finish(double budget_seconds) {
        const double seconds = elapsed();
        if (seconds > budget_seconds)
            require(false, "took " + std::to_string(seconds) + " s, budget " +
                               std::to_string(budget_seconds) + " s");
        std::printf("[%s] %d. %s (%.2f s)%s%s\n", ok_ ? "PASS" : "FAIL", number_,
                    title_.c_str(), seconds, notes_.empty() ? "" : " ",
                    notes_.c_str());
        if (!ok_) {
            std::printf("       first failure: %s\n", first_failure_.c_str());
            ++failures;
        }
    }

private:
    using clock = std::chrono::steady_clock;
    int number_;
    std::string title_;
    clock::time_point start_;
    bool ok_ = true;
    std::string first_failure_;
    std::string notes_;
};

CoveringSpace revision_space() {
    CoveringSpace space;
    space.universe.names = {"x1", "x2", "x3", "x4"};
    space.coverings.push_back({"C", {{0, 3}, {0, 1, 3}, {2, 3}}});
    return space;
}

UpdateEvent revision_event() { return UpdateEvent{2, {{"C", {0, 1}}}}; }

DecisionSystem decision_system() {
    CoveringSpace space;
    space.universe.names = {"x1", "x2", "x3", "x4", "x5"};
    space.coverings.push_back({"C1", {{0, 1, 2, 3}, {4}}});
    space.coverings.push_back({"C2", {{0, 1}, {2, 3, 4}}});
    space.coverings.push_back({"C3", {{0, 1, 4}, {2, 3}}});
    space.coverings.push_back({"C4", {{0, 1}, {2, 3}, {4}}});
    return DecisionSystem{std::move(space), {ObjectSet{0, 1}, ObjectSet{2, 3, 4}}};
}

// 1. The type-1 matrix of the worked four-object space, its one-object
// revision, and the second approximations of {x3,x4}, all bit-exact.
void criterion_type1_revision() {
    Criterion c(1, "type-1 revision walk: matrix, delta line, refreshed matrix, "
                   "second approximations");
    const auto space = revision_space();
    const auto updated = apply_update(space, revision_event());
    const Selector sel = all_coverings(space);

    const BoolMatrix gamma = build_gamma(space, sel);
    c.require(gamma == BoolMatrix::of({{1, 1, 0, 1}, {1, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 1}}),
              "initial type-1 matrix");

    const BoolMatrix membership = matrix_rep(updated, sel);
    const LineDelta delta = gamma_delta(gamma, membership, 2);
    c.require(delta.row == std::vector<int>{1, 1, 0, 0}, "delta row");

    const BoolMatrix refreshed = update_gamma(gamma, membership, 2);
    c.require(refreshed == BoolMatrix::ones(4, 4), "refreshed type-1 matrix");

    const auto pair = second_approx(refreshed, BoolVector::of({0, 0, 1, 1}));
    c.require(pair.upper == BoolVector::ones(4), "second upper approximation");
    c.require(pair.lower == BoolVector(4), "second lower approximation");
    c.finish(1.0);
}

// 2. The type-2 walk of the same revision: matrix, both delta lines, the
// refreshed matrix and the fifth approximations.
void criterion_type2_revision() {
    Criterion c(2, "type-2 revision walk: matrix, delta lines, refreshed matrix, "
                   "fifth approximations");
    const auto space = revision_space();
    const auto updated = apply_update(space, revision_event());
    const Selector sel = all_coverings(space);

    const BoolMatrix pi = build_pi(space, sel);
    c.require(pi == BoolMatrix::of({{1, 0, 0, 1}, {1, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}}),
              "initial type-2 matrix");

    const BoolMatrix membership = matrix_rep(updated, sel);
    const LineDelta delta = pi_delta(pi, membership, 2);
    c.require(delta.row == std::vector<int>{1, 0, 0, 0}, "delta row");
    c.require(delta.col == std::vector<int>{1, 1, 0, 0}, "delta column");

    const BoolMatrix refreshed = update_pi(pi, membership, 2);
    c.require(refreshed ==
                  BoolMatrix::of({{1, 0, 1, 1}, {1, 1, 1, 1}, {1, 0, 1, 1}, {0, 0, 0, 1}}),
              "refreshed type-2 matrix");

    const auto pair = fifth_approx(refreshed, BoolVector::of({0, 0, 1, 1}));
    c.require(pair.upper == BoolVector::ones(4), "fifth upper approximation");
    c.require(pair.lower == BoolVector::of({0, 0, 0, 1}), "fifth lower approximation");
    c.finish(1.0);
}

// 3. Reducts of the worked five-object decision system, before and after the
// revision of its third covering.
void criterion_reducts() {
    Criterion c(3, "reducts of the worked decision system, static and revised");
    const auto ds = decision_system();
    const UpdateEvent ev{2, {{"C3", {0}}}};
    const std::vector<std::string> pair13{"C1", "C3"};
    const std::vector<std::string> triple123{"C1", "C2", "C3"};

    for (ReductMode mode : {ReductMode::greedy, ReductMode::exhaustive}) {
        const char* tag = mode == ReductMode::greedy ? " (greedy)" : " (exhaustive)";
        c.require(find_reduct(ds, ReductKind::type1, mode).members == pair13,
                  std::string("static type-1 reduct") + tag);
        c.require(find_reduct(ds, ReductKind::type2, mode).members == pair13,
                  std::string("static type-2 reduct") + tag);
        c.require(reduct_after_update(ds, ev, ReductKind::type1, mode).members == pair13,
                  std::string("revised type-1 reduct") + tag);
        c.require(reduct_after_update(ds, ev, ReductKind::type2, mode).members == triple123,
                  std::string("revised type-2 reduct") + tag);
    }

    const DecisionSystem rebuilt{apply_update(ds.space, ev), ds.decision};
    c.require(find_reduct(rebuilt, ReductKind::type1).members == pair13,
              "revised type-1 reduct from scratch");
    c.require(find_reduct(rebuilt, ReductKind::type2).members == triple123,
              "revised type-2 reduct from scratch");
    c.finish(10.0);
}

// 4. The matrix operators agree with the set-form definitions on at least a
// thousand random spaces, exhausting every subset on small universes.
void criterion_oracle_equivalence() {
    Criterion c(4, "matrix operators equal the set-form reference on 1020 random spaces");
    std::mt19937_64 rng(20240801);
    std::size_t spaces = 0, comparisons = 0;
    for (int iter = 0; iter < 1020 && c.elapsed() < 115.0; ++iter) {
        const std::size_t n = 2 + iter % 11;              // up to 12 objects
        const std::size_t m = 1 + iter % 6;               // up to 6 blocks
        const std::size_t families = 1 + (iter / 11) % 2; // one or two coverings
        CoveringSpace space;
        for (std::size_t i = 0; i < n; ++i)
            space.universe.names.push_back("x" + std::to_string(i + 1));
        std::bernoulli_distribution bit(0.2 + 0.6 * ((iter % 7) / 6.0));
        for (std::size_t f = 0; f < families; ++f) {
            Covering cov{"C" + std::to_string(f + 1),
                         std::vector<std::vector<std::size_t>>(m)};
            for (std::size_t i = 0; i < n; ++i) {
                bool covered = false;
                for (std::size_t b = 0; b < m; ++b)
                    if (bit(rng)) {
                        cov.blocks[b].push_back(i);
                        covered = true;
                    }
                if (!covered) cov.blocks[rng() % m].push_back(i);
            }
            for (std::size_t b = 0; b < m; ++b)
                if (cov.blocks[b].empty()) {
                    const std::size_t obj = rng() % n;
                    cov.blocks[b].push_back(obj);
                    std::sort(cov.blocks[b].begin(), cov.blocks[b].end());
                }
            space.coverings.push_back(std::move(cov));
        }
        if (validate(space)) {
            c.require(false, "generated space failed validation");
            break;
        }
        ++spaces;

        const Selector sel = all_coverings(space);
        const BoolMatrix gamma = build_gamma(space, sel);
        const BoolMatrix pi = build_pi(space, sel);

        std::vector<ObjectSet> subsets;
        if (n <= 8) {
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                ObjectSet s;
                for (std::size_t i = 0; i < n; ++i)
                    if ((mask >> i) & 1) s.members.push_back(i);
                subsets.push_back(std::move(s));
            }
        } else {
            std::bernoulli_distribution in_set(0.5);
            for (int rep = 0; rep < 32; ++rep) {
                ObjectSet s;
                for (std::size_t i = 0; i < n; ++i)
                    if (in_set(rng)) s.members.push_back(i);
                subsets.push_back(std::move(s));
            }
        }

        for (const auto& x : subsets) {
            const BoolVector xv = char_vector(x, n);
            const auto second_pair = second_approx(gamma, xv);
            const auto second_ref = oracle_approx(space, sel, x, ApproxOp::second);
            const auto fifth_pair = fifth_approx(pi, xv);
            const auto fifth_ref = oracle_approx(space, sel, x, ApproxOp::fifth);
            const auto sixth_pair = sixth_approx(pi, xv);
            const auto sixth_ref = oracle_approx(space, sel, x, ApproxOp::sixth);
            const bool ok =
                to_object_set(second_pair.upper) == second_ref.upper &&
                to_object_set(second_pair.lower) == second_ref.lower &&
                to_object_set(fifth_pair.upper) == fifth_ref.upper &&
                to_object_set(fifth_pair.lower) == fifth_ref.lower &&
                to_object_set(sixth_pair.upper) == sixth_ref.upper &&
                to_object_set(sixth_pair.lower) == sixth_ref.lower;
            comparisons += 6;
            if (!ok) {
                c.require(false, "operator/reference mismatch on a space with n=" +
                                     std::to_string(n) + " m=" + std::to_string(m));
                break;
            }
        }
    }
    c.require(spaces >= 1000, "covered " + std::to_string(spaces) + " spaces, need 1000");
    c.note(std::to_string(spaces) + " spaces, " + std::to_string(comparisons) +
           " vector comparisons");
    c.finish(120.0);
}

// 5. Incremental refresh equals a full rebuild bit for bit on at least five
// hundred random space/revision pairs, and never disturbs off-line entries.
void criterion_incremental_correctness() {
    Criterion c(5, "incremental refresh equals full rebuild on 520 random revisions");
    std::mt19937_64 rng(20240802);
    std::size_t pairs = 0;
    for (int iter = 0; iter < 520 && c.elapsed() < 55.0; ++iter) {
        const std::size_t n = 2 + iter % 14;  // up to 15 objects
        const std::size_t m = 1 + iter % 6;
        const std::size_t families = 1 + iter % 2;
        CoveringSpace space;
        for (std::size_t i = 0; i < n; ++i)
            space.universe.names.push_back("x" + std::to_string(i + 1));
        std::bernoulli_distribution bit(0.5);
        for (std::size_t f = 0; f < families; ++f) {
            Covering cov{"C" + std::to_string(f + 1),
                         std::vector<std::vector<std::size_t>>(m)};
            for (std::size_t i = 0; i < n; ++i) {
                bool covered = false;
                for (std::size_t b = 0; b < m; ++b)
                    if (bit(rng)) {
                        cov.blocks[b].push_back(i);
                        covered = true;
                    }
                if (!covered) cov.blocks[rng() % m].push_back(i);
            }
            for (std::size_t b = 0; b < m; ++b)
                if (cov.blocks[b].empty()) {
                    cov.blocks[b].push_back(rng() % n);
                    std::sort(cov.blocks[b].begin(), cov.blocks[b].end());
                }
            space.coverings.push_back(std::move(cov));
        }

        // Random valid one-object revision, additions and removals alike.
        UpdateEvent ev;
        CoveringSpace updated;
        bool found = false;
        for (int attempt = 0; attempt < 100 && !found; ++attempt) {
            ev = UpdateEvent{rng() % n, {}};
            for (const auto& cov : space.coverings) {
                UpdateEvent::Membership membership{cov.name, {}};
                for (std::size_t b = 0; b < cov.blocks.size(); ++b)
                    if (bit(rng)) membership.blocks.push_back(b);
                ev.memberships.push_back(std::move(membership));
            }
            try {
                updated = apply_update(space, ev);
                found = true;
            } catch (const std::invalid_argument&) {
                ev.memberships.clear();
            }
        }
        if (!found) continue;
        ++pairs;

        const Selector sel = all_coverings(space);
        const BoolMatrix gamma_old = build_gamma(space, sel);
        const BoolMatrix pi_old = build_pi(space, sel);
        const BoolMatrix membership = matrix_rep(updated, sel);
        const BoolMatrix gamma_new = update_gamma(gamma_old, membership, ev.object);
        const BoolMatrix pi_new = update_pi(pi_old, membership, ev.object);

        bool ok = gamma_new == build_gamma(updated, sel) && pi_new == build_pi(updated, sel);
        for (std::size_t i = 0; ok && i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == ev.object || j == ev.object) continue;
                if (gamma_new.get(i, j) != gamma_old.get(i, j) ||
                    pi_new.get(i, j) != pi_old.get(i, j)) {
                    ok = false;
                    break;
                }
            }
        if (!ok) {
            c.require(false, "mismatch on a revision with n=" + std::to_string(n) +
                                 " m=" + std::to_string(m));
            break;
        }
    }
    c.require(pairs >= 500, "covered " + std::to_string(pairs) + " revisions, need 500");
    c.note(std::to_string(pairs) + " space/revision pairs");
    c.finish(60.0);
}

// 6. Timing trend: the incremental paths beat the rebuild paths by wide
// factors at (2000,100), every trial checksums equal, and the mean speedups
// never shrink as the sizes grow.
void criterion_performance() {
    Criterion c(6, "incremental speedup floors and non-decreasing trend along the ladder");
    ExperimentConfig cfg;
    cfg.sizes = {{500, 25}, {1000, 50}, {2000, 100}, {4000, 200}};
    cfg.trials = 10;
    cfg.seed = 20240803;

    std::vector<TimingRecord> records;
    try {
        records = run_experiment(cfg);
    } catch (const std::exception& e) {
        c.require(false, std::string("experiment aborted: ") + e.what());
        c.finish(120.0);
        return;
    }
    for (std::size_t i = 0; i + 3 < records.size(); i += 4) {
        c.require(records[i].checksum == records[i + 1].checksum,
                  "type-1 checksum mismatch in a trial");
        c.require(records[i + 2].checksum == records[i + 3].checksum,
                  "type-2 checksum mismatch in a trial");
    }

    const auto summary = summarize(records);
    std::string ratios = "NIS/IS, NIX/IX:";
    double previous_s = 0.0, previous_x = 0.0;
    for (const auto& row : summary) {
        const double speedup_s = row.nis / row.is;
        const double speedup_x = row.nix / row.ix;
        char buf[96];
        std::snprintf(buf, sizeof buf, " (%zu,%zu) %.1fx %.1fx", row.n, row.m, speedup_s,
                      speedup_x);
        ratios += buf;
        if (row.n == 2000) {
            c.require(speedup_s >= 5.0, "type-1 speedup at (2000,100) below 5x");
            c.require(speedup_x >= 3.0, "type-2 speedup at (2000,100) below 3x");
        }
        c.require(speedup_s >= previous_s, "type-1 speedup shrank along the ladder");
        c.require(speedup_x >= previous_x, "type-2 speedup shrank along the ladder");
        previous_s = speedup_s;
        previous_x = speedup_x;
    }
    c.note(ratios);
    c.finish(120.0);
}

// 7. Cell-touch counters: incremental refreshes stay within a fixed multiple
// of nm+n while rebuilds cost at least the padded n^2 m, across the ladder.
void criterion_work_bound() {
    Criterion c(7, "cell-touch counters match the complexity split across the ladder");
    const std::vector<std::pair<std::size_t, std::size_t>> ladder = {
        {500, 25}, {1000, 50}, {2000, 100}, {4000, 200}};
    constexpr std::uint64_t incremental_factor = 8;  // fixed across all sizes
    for (auto [n, m] : ladder) {
        const CoveringSpace space = generate_space(n, m, 424242);
        const UpdateEvent ev = generate_update(space, 424243);
        const CoveringSpace updated = apply_update(space, ev);
        const Selector sel = all_coverings(space);
        const BoolMatrix gamma_old = build_gamma(space, sel);
        const BoolMatrix pi_old = build_pi(space, sel);
        const BoolMatrix membership = matrix_rep(updated, sel);
        const std::uint64_t padded_m = membership.words_per_row() * 64;
        const std::uint64_t incremental_budget =
            incremental_factor * (static_cast<std::uint64_t>(n) * m + n);

        reset_touches();
        (void)update_gamma(gamma_old, membership, ev.object);
        const std::uint64_t gamma_cost = touches();
        reset_touches();
        (void)update_pi(pi_old, membership, ev.object);
        const std::uint64_t pi_cost = touches();
        reset_touches();
        (void)build_gamma(updated, sel);
        const std::uint64_t rebuild_gamma_cost = touches();
        reset_touches();
        (void)build_pi(updated, sel);
        const std::uint64_t rebuild_pi_cost = touches();

        const std::string at = " at (" + std::to_string(n) + "," + std::to_string(m) + ")";
        c.require(gamma_cost <= incremental_budget, "type-1 refresh over budget" + at);
        c.require(pi_cost <= incremental_budget, "type-2 refresh over budget" + at);
        c.require(rebuild_gamma_cost >= static_cast<std::uint64_t>(n) * n * padded_m,
                  "type-1 rebuild under the quadratic floor" + at);
        c.require(rebuild_pi_cost >= static_cast<std::uint64_t>(n) * n * padded_m,
                  "type-2 rebuild under the quadratic floor" + at);
    }
    c.finish(60.0);
}

}  // namespace

int main() {
    criterion_type1_revision();
    criterion_type2_revision();
    criterion_reducts();
    criterion_oracle_equivalence();
    criterion_incremental_correctness();
    criterion_performance();
    criterion_work_bound();
    if (failures == 0)
        std::printf("all 7 criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
