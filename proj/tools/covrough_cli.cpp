// Command-line front end: builds characteristic matrices, evaluates
// approximations, applies one-object revisions incrementally, searches for
// reducts and runs the timing experiment. Exit codes: 0 success, 1 validation
// or verification failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <covrough/covrough.hpp>

namespace {

using namespace covrough;

// Thrown for failures that should exit with status 1.
struct CommandError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ApproxOp parse_op(const std::string& name) {
    if (name == "second") return ApproxOp::second;
    if (name == "fifth") return ApproxOp::fifth;
    if (name == "sixth") return ApproxOp::sixth;
    throw CommandError("unknown operator '" + name + "'");
}

std::vector<std::size_t> parse_index_csv(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoul(item));
        } catch (const std::exception&) {
            throw CommandError("bad index '" + item + "' in set");
        }
    }
    return out;
}

SpaceDocument load_valid_space(const std::string& path) {
    SpaceDocument doc;
    try {
        doc = load_space_file(path);
    } catch (const std::exception& e) {
        throw CommandError(std::string("space document: ") + e.what());
    }
    if (auto violation = validate(doc.space))
        throw CommandError("invalid space in '" + path + "': " + violation->message);
    return doc;
}

Selector selector_or_all(const CoveringSpace& space, const std::vector<std::string>& names) {
    return names.empty() ? all_coverings(space) : names;
}

std::string format_set(const ObjectSet& set, const Universe& universe) {
    std::string out = "{";
    for (std::size_t i = 0; i < set.members.size(); ++i) {
        if (i != 0) out += ", ";
        out += universe.names[set.members[i]];
    }
    out += "}";
    return out;
}

void print_pair(const ApproxPair& pair, const Universe& universe) {
    std::cout << "upper: " << format_set(to_object_set(pair.upper), universe) << "\n";
    std::cout << "lower: " << format_set(to_object_set(pair.lower), universe) << "\n";
}

struct MatrixArgs {
    std::string space_path;
    int type = 1;
    std::vector<std::string> coverings;
};

void run_matrix(const MatrixArgs& args) {
    const auto doc = load_valid_space(args.space_path);
    const Selector sel = selector_or_all(doc.space, args.coverings);
    const BoolMatrix m =
        args.type == 1 ? build_gamma(doc.space, sel) : build_pi(doc.space, sel);
    std::cout << to_string(m);
}

struct ApproxArgs {
    std::string space_path;
    std::string set_csv;
    std::string op = "second";
    std::vector<std::string> coverings;
};

void run_approx(const ApproxArgs& args) {
    const auto doc = load_valid_space(args.space_path);
    const std::size_t n = doc.space.universe.size();
    const Selector sel = selector_or_all(doc.space, args.coverings);
    const ApproxOp op = parse_op(args.op);
    BoolVector x(n);
    for (std::size_t idx : parse_index_csv(args.set_csv)) {
        if (idx >= n)
            throw CommandError("set index " + std::to_string(idx) +
                               " out of range for universe of size " + std::to_string(n));
        x.set(idx, true);
    }
    ApproxPair pair = recompute_baseline(doc.space, sel, x, op);
    print_pair(pair, doc.space.universe);
}

struct UpdateArgs {
    std::string space_path;
    std::string event_path;
    std::string set_csv;
    std::string op = "second";
    bool verify = false;
};

void run_update(const UpdateArgs& args) {
    const auto doc = load_valid_space(args.space_path);
    UpdateEvent ev;
    try {
        ev = load_event_file(args.event_path);
    } catch (const std::exception& e) {
        throw CommandError(std::string("event document: ") + e.what());
    }
    const Selector sel = all_coverings(doc.space);
    const std::size_t n = doc.space.universe.size();
    const ApproxOp op = parse_op(args.op);
    BoolVector x(n);
    for (std::size_t idx : parse_index_csv(args.set_csv)) {
        if (idx >= n) throw CommandError("set index " + std::to_string(idx) + " out of range");
        x.set(idx, true);
    }

    CharMatrices cm = CharMatrices::build(doc.space, sel);
    CoveringSpace updated;
    try {
        updated = apply_update(doc.space, ev);
        cm = update_char_matrices(std::move(cm), doc.space, updated, ev.object);
    } catch (const std::exception& e) {
        throw CommandError(e.what());
    }

    ApproxPair pair = op == ApproxOp::second  ? second_approx(cm.gamma, x)
                      : op == ApproxOp::fifth ? fifth_approx(cm.pi, x)
                                              : sixth_approx(cm.pi, x);
    print_pair(pair, doc.space.universe);

    if (args.verify) {
        const ApproxPair reference = recompute_baseline(updated, sel, x, op);
        if (!(pair == reference))
            throw CommandError("verification failed: incremental result differs from rebuild");
    }
}

struct ReductArgs {
    std::string space_path;
    int kind = 1;
    std::string mode = "greedy";
};

void run_reduct(const ReductArgs& args) {
    const auto doc = load_valid_space(args.space_path);
    if (!doc.decision)
        throw CommandError("'" + args.space_path + "' has no decision partition");
    DecisionSystem ds{doc.space, *doc.decision};
    if (auto violation = validate(ds))
        throw CommandError("invalid decision system: " + violation->message);
    const ReductKind kind = args.kind == 1 ? ReductKind::type1 : ReductKind::type2;
    const ReductMode mode =
        args.mode == "exhaustive" ? ReductMode::exhaustive : ReductMode::greedy;
    const Reduct reduct = find_reduct(ds, kind, mode);
    for (const auto& name : reduct.members) std::cout << name << "\n";
}

struct BenchArgs {
    std::vector<std::string> sizes = {"500:25", "1000:50", "2000:100", "4000:200"};
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    std::string out = "bench_report.csv";
};

void run_bench(const BenchArgs& args) {
    ExperimentConfig cfg;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.output = args.out;
    for (const auto& token : args.sizes) {
        const auto colon = token.find(':');
        if (colon == std::string::npos)
            throw CommandError("size '" + token + "' is not of the form n:m");
        try {
            cfg.sizes.emplace_back(std::stoul(token.substr(0, colon)),
                                   std::stoul(token.substr(colon + 1)));
        } catch (const std::exception&) {
            throw CommandError("size '" + token + "' is not of the form n:m");
        }
    }

    std::vector<TimingRecord> records;
    try {
        records = run_experiment(cfg);
    } catch (const std::exception& e) {
        throw CommandError(e.what());
    }

    std::ofstream out(cfg.output);
    if (!out) throw CommandError("cannot write report to '" + cfg.output + "'");
    write_report(out, records);

    std::cout << "report written to " << cfg.output << "\n";
    std::printf("%8s %8s %12s %12s %12s %12s %10s %10s\n", "n", "m", "NIS", "IS", "NIX", "IX",
                "NIS/IS", "NIX/IX");
    for (const auto& row : summarize(records))
        std::printf("%8zu %8zu %12.6f %12.6f %12.6f %12.6f %9.1fx %9.1fx\n", row.n, row.m,
                    row.nis, row.is, row.nix, row.ix, row.nis / row.is, row.nix / row.ix);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covering approximation spaces: characteristic matrices, incremental "
                 "updates, reducts and timing experiments"};
    app.require_subcommand(1);

    MatrixArgs matrix_args;
    auto* matrix = app.add_subcommand("matrix", "print a characteristic matrix");
    matrix->add_option("space", matrix_args.space_path, "space document (JSON)")->required();
    matrix->add_option("--type", matrix_args.type, "1 for the type-1 matrix, 2 for type-2")
        ->check(CLI::IsMember({1, 2}))
        ->required();
    matrix->add_option("--coverings", matrix_args.coverings,
                       "covering names to select (default: all)")
        ->delimiter(',');

    ApproxArgs approx_args;
    auto* approx = app.add_subcommand("approx", "approximate a set of objects");
    approx->add_option("space", approx_args.space_path, "space document (JSON)")->required();
    approx->add_option("--set", approx_args.set_csv, "comma-separated 0-based object indices")
        ->required();
    approx->add_option("--op", approx_args.op, "second, fifth or sixth")
        ->check(CLI::IsMember({"second", "fifth", "sixth"}))
        ->required();
    approx->add_option("--coverings", approx_args.coverings,
                       "covering names to select (default: all)")
        ->delimiter(',');

    UpdateArgs update_args;
    auto* update = app.add_subcommand(
        "update", "apply a one-object revision incrementally, then approximate");
    update->add_option("space", update_args.space_path, "space document (JSON)")->required();
    update->add_option("event", update_args.event_path, "event document (JSON)")->required();
    update->add_option("--set", update_args.set_csv, "comma-separated 0-based object indices")
        ->required();
    update->add_option("--op", update_args.op, "second, fifth or sixth")
        ->check(CLI::IsMember({"second", "fifth", "sixth"}))
        ->required();
    update->add_flag("--verify", update_args.verify,
                     "also rebuild from scratch and require identical results");

    ReductArgs reduct_args;
    auto* reduct = app.add_subcommand("reduct", "search for a reduct of a decision system");
    reduct->add_option("space", reduct_args.space_path,
                       "space document with a decision partition")
        ->required();
    reduct->add_option("--kind", reduct_args.kind, "1 or 2")
        ->check(CLI::IsMember({1, 2}))
        ->required();
    reduct->add_option("--mode", reduct_args.mode, "greedy or exhaustive")
        ->check(CLI::IsMember({"greedy", "exhaustive"}));

    BenchArgs bench_args;
    auto* bench =
        app.add_subcommand("bench", "time full rebuilds against incremental updates");
    bench->add_option("--sizes", bench_args.sizes, "space sizes as n:m pairs")->delimiter(',');
    bench->add_option("--trials", bench_args.trials, "trials per size");
    bench->add_option("--seed", bench_args.seed, "generator seed");
    bench->add_option("--out", bench_args.out, "report path (CSV)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (matrix->parsed()) run_matrix(matrix_args);
        if (approx->parsed()) run_approx(approx_args);
        if (update->parsed()) run_update(update_args);
        if (reduct->parsed()) run_reduct(reduct_args);
        if (bench->parsed()) run_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
