#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "char_matrices.hpp"
#include "covering.hpp"
#include "dynamic_update.hpp"

namespace covrough {

struct ExperimentConfig {
    std::vector<std::pair<std::size_t, std::size_t>> sizes;  // (objects, blocks), n >= m >= 1
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    std::string output;  // report path, used by the command-line driver
};

struct TimingRecord {
    std::size_t n;
    std::size_t m;
    std::size_t trial;
    std::string algo;  // NIS, IS, NIX or IX
    double seconds;
    std::uint64_t checksum;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
    std::uint64_t z = fnv_offset;
    z = fnv1a64(seed, z);
    z = fnv1a64(a, z);
    z = fnv1a64(b, z);
    z = fnv1a64(c, z);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t pair_checksum(const ApproxPair& pair) {
    std::uint64_t h = fnv_offset;
    h = fnv1a64(static_cast<std::uint64_t>(pair.upper.size()), h);
    h = fnv1a64(pair.upper.words(), h);
    h = fnv1a64(static_cast<std::uint64_t>(pair.lower.size()), h);
    h = fnv1a64(pair.lower.words(), h);
    return h;
}

// Timed section: an untimed setup step before every timed body run. The
// four algorithm sections of one trial are sampled round-robin so slow
// machine phases hit all of them alike and the speed ratios stay fair.
struct TimedSection {
    std::function<void()> setup;
    std::function<void()> body;
    std::size_t inner = 1;
    std::vector<double> samples;  // seconds per body run, one entry per cycle
};

// One sample: mean seconds per body run over `inner` consecutive runs, setup
// excluded from the clock.
inline double sample_section(TimedSection& section) {
    using clock = std::chrono::steady_clock;
    double total = 0.0;
    for (std::size_t i = 0; i < section.inner; ++i) {
        section.setup();
        const auto a = clock::now();
        section.body();
        const auto b = clock::now();
        total += std::chrono::duration<double>(b - a).count();
    }
    return total / static_cast<double>(section.inner);
}

// Calibrates inner repetition counts, interleaves the sections over several
// cycles and reports each section's fastest cycle. Every cycle repeats the
// same computation on the same inputs, so the spread across cycles is pure
// interference and the minimum is the cleanest estimate.
inline std::vector<double> time_interleaved(std::vector<TimedSection>& sections) {
    constexpr double inner_floor = 1e-3;
    constexpr std::size_t cycles = 5;
    for (auto& section : sections) {
        const double first = sample_section(section);
        section.inner = std::min<std::size_t>(
            static_cast<std::size_t>(inner_floor / std::max(first, 1e-7)) + 1, 10000);
    }
    for (std::size_t c = 0; c < cycles; ++c)
        for (auto& section : sections) section.samples.push_back(sample_section(section));
    std::vector<double> best;
    best.reserve(sections.size());
    for (auto& section : sections)
        best.push_back(*std::min_element(section.samples.begin(), section.samples.end()));
    return best;
}

}  // namespace detail

/// Random covering with m blocks over n objects: every object joins one
/// uniform block plus each further block with probability 1/m, then empty
/// blocks are patched by stealing a multiply-covered object. Deterministic
/// for a seed.
inline CoveringSpace generate_space(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1 || n < m)
        throw std::invalid_argument("generate_space: need n >= m >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_block(0, m - 1);
    std::uniform_int_distribution<std::size_t> pick_object(0, n - 1);
    std::bernoulli_distribution join(1.0 / static_cast<double>(m));

    std::vector<std::vector<std::size_t>> blocks(m);
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t base = pick_block(rng);
        for (std::size_t b = 0; b < m; ++b) {
            if (b != base && !join(rng)) continue;
            blocks[b].push_back(i);
            ++degree[i];
        }
    }
    for (std::size_t b = 0; b < m; ++b) {
        if (!blocks[b].empty()) continue;
        std::vector<std::size_t> donors;
        for (std::size_t i = 0; i < n; ++i)
            if (degree[i] >= 2) donors.push_back(i);
        std::size_t chosen;
        if (donors.empty()) {
            chosen = pick_object(rng);
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, donors.size() - 1);
            chosen = donors[pick(rng)];
            for (std::size_t src = 0; src < m; ++src) {
                auto& block = blocks[src];
                if (block.size() < 2) continue;
                const auto it = std::lower_bound(block.begin(), block.end(), chosen);
                if (it == block.end() || *it != chosen) continue;
                block.erase(it);
                --degree[chosen];
                break;
            }
        }
        blocks[b].push_back(chosen);
        ++degree[chosen];
    }

    CoveringSpace space;
    space.universe.names.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        space.universe.names.push_back("x" + std::to_string(i + 1));
    space.coverings.push_back({"C1", std::move(blocks)});
    return space;
}

/// Random one-object revision that only ever adds the object to more blocks,
/// so the result is always a valid covering.
inline UpdateEvent generate_update(const CoveringSpace& space, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = space.universe.size();
    std::uniform_int_distribution<std::size_t> pick_object(0, n - 1);
    std::bernoulli_distribution add(0.5);

    UpdateEvent ev;
    ev.object = pick_object(rng);
    for (const auto& cov : space.coverings) {
        UpdateEvent::Membership membership{cov.name, {}};
        for (std::size_t b = 0; b < cov.blocks.size(); ++b) {
            const bool already =
                std::binary_search(cov.blocks[b].begin(), cov.blocks[b].end(), ev.object);
            if (already || add(rng)) membership.blocks.push_back(b);
        }
        ev.memberships.push_back(std::move(membership));
    }
    return ev;
}

/// Times the full-rebuild and incremental paths on identical inputs: per
/// size and trial, one random space, one additive revision and one query
/// set. NIS/IS construct the type-1 matrix (full product vs line refresh)
/// and apply both second operators; NIX/IX do the same with the type-2
/// matrix. Each incremental result must checksum-equal its baseline.
inline std::vector<TimingRecord> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_experiment: need at least one trial");
    std::vector<TimingRecord> records;
    records.reserve(cfg.sizes.size() * cfg.trials * 4);

    for (std::size_t s = 0; s < cfg.sizes.size(); ++s) {
        const auto [n, m] = cfg.sizes[s];
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            const CoveringSpace space =
                generate_space(n, m, detail::mix_seed(cfg.seed, s, trial, 0));
            const UpdateEvent ev =
                generate_update(space, detail::mix_seed(cfg.seed, s, trial, 1));
            const CoveringSpace updated = apply_update(space, ev);
            const std::size_t k = ev.object;
            const Selector sel = all_coverings(space);

            BoolVector x(n);
            {
                std::mt19937_64 rng(detail::mix_seed(cfg.seed, s, trial, 2));
                std::bernoulli_distribution in_set(0.5);
                for (std::size_t i = 0; i < n; ++i)
                    if (in_set(rng)) x.set(i, true);
            }

            // Inputs of the incremental algorithms, staged outside the timers.
            const BoolMatrix gamma_before = build_gamma(space, sel);
            const BoolMatrix pi_before = build_pi(space, sel);

            std::optional<ApproxPair> nis_out, is_out, nix_out, ix_out;
            BoolMatrix gamma_work = gamma_before;
            BoolMatrix pi_work = pi_before;

            std::vector<detail::TimedSection> sections(4);
            sections[0].setup = [] {};
            sections[0].body = [&] {
                const BoolMatrix mm = matrix_rep(updated, sel);
                const BoolMatrix gamma = bool_gram(mm);
                nis_out = second_approx(gamma, x);
            };
            sections[1].setup = [&] { gamma_work = BoolMatrix(gamma_before); };
            sections[1].body = [&] {
                const BoolMatrix mm = matrix_rep(updated, sel);
                gamma_work = update_gamma(std::move(gamma_work), mm, k);
                is_out = second_approx(gamma_work, x);
            };
            sections[2].setup = [] {};
            sections[2].body = [&] {
                const BoolMatrix mm = matrix_rep(updated, sel);
                const BoolMatrix pi = circle_gram(mm);
                nix_out = fifth_approx(pi, x);
            };
            sections[3].setup = [&] { pi_work = BoolMatrix(pi_before); };
            sections[3].body = [&] {
                const BoolMatrix mm = matrix_rep(updated, sel);
                pi_work = update_pi(std::move(pi_work), mm, k);
                ix_out = fifth_approx(pi_work, x);
            };
            const std::vector<double> seconds = detail::time_interleaved(sections);
            const double nis_s = seconds[0];
            const double is_s = seconds[1];
            const double nix_s = seconds[2];
            const double ix_s = seconds[3];

            const std::uint64_t nis_sum = detail::pair_checksum(*nis_out);
            const std::uint64_t is_sum = detail::pair_checksum(*is_out);
            const std::uint64_t nix_sum = detail::pair_checksum(*nix_out);
            const std::uint64_t ix_sum = detail::pair_checksum(*ix_out);
            if (nis_sum != is_sum)
                throw std::runtime_error(
                    "run_experiment: incremental type-1 result differs from full rebuild at n=" +
                    std::to_string(n) + " m=" + std::to_string(m) +
                    " trial=" + std::to_string(trial));
            if (nix_sum != ix_sum)
                throw std::runtime_error(
                    "run_experiment: incremental type-2 result differs from full rebuild at n=" +
                    std::to_string(n) + " m=" + std::to_string(m) +
                    " trial=" + std::to_string(trial));

            records.push_back({n, m, trial, "NIS", nis_s, nis_sum});
            records.push_back({n, m, trial, "IS", is_s, is_sum});
            records.push_back({n, m, trial, "NIX", nix_s, nix_sum});
            records.push_back({n, m, trial, "IX", ix_s, ix_sum});
        }
    }
    return records;
}

/// CSV report: header then one record per line, seconds with nine decimal
/// digits, checksum as lowercase hex.
inline void write_report(std::ostream& out, const std::vector<TimingRecord>& records) {
    out << "n,m,trial,algo,seconds,checksum\n";
    for (const auto& rec : records) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9f", rec.seconds);
        char hex[32];
        std::snprintf(hex, sizeof hex, "%016llx",
                      static_cast<unsigned long long>(rec.checksum));
        out << rec.n << ',' << rec.m << ',' << rec.trial << ',' << rec.algo << ',' << buf
            << ',' << hex << '\n';
    }
}

struct SizeSummary {
    std::size_t n;
    std::size_t m;
    double nis;
    double is;
    double nix;
    double ix;
};

/// Mean seconds per algorithm for each size, in first-seen size order.
inline std::vector<SizeSummary> summarize(const std::vector<TimingRecord>& records) {
    std::vector<SizeSummary> out;
    std::vector<std::size_t> counts;
    for (const auto& rec : records) {
        std::size_t idx = out.size();
        for (std::size_t i = 0; i < out.size(); ++i)
            if (out[i].n == rec.n && out[i].m == rec.m) {
                idx = i;
                break;
            }
        if (idx == out.size()) {
            out.push_back({rec.n, rec.m, 0.0, 0.0, 0.0, 0.0});
            counts.push_back(0);
        }
        if (rec.algo == "NIS")
            out[idx].nis += rec.seconds;
        else if (rec.algo == "IS")
            out[idx].is += rec.seconds;
        else if (rec.algo == "NIX")
            out[idx].nix += rec.seconds;
        else if (rec.algo == "IX")
            out[idx].ix += rec.seconds;
        ++counts[idx];
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double trials = static_cast<double>(counts[i]) / 4.0;
        if (trials > 0) {
            out[i].nis /= trials;
            out[i].is /= trials;
            out[i].nix /= trials;
            out[i].ix /= trials;
        }
    }
    return out;
}

}  // namespace covrough
