// cnr - cops-and-robbers solver CLI.
//
// Subcommands: solve, copnumber, verify, play, export. Machine-readable JSON
// goes to stdout (or --out); human summaries go to stderr. Exit codes:
// 0 success / all checks passed, 1 check failure, 2 input error,
// 3 resource limit, 4 illegal move.

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cnr/io.hpp"

namespace {

using namespace cnr;

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    try {
        return parse_graph(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line, path + ": " + e.what());
    }
}

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw Error("cannot write " + path);
        stream = &file;
    }
    std::ostream& out() { return *stream; }
};

struct Instance {
    std::string name;
    Graph graph;
};

std::vector<Instance> gather_instances(const std::string& graph_path, const std::string& corpus,
                                       const std::string& corpus_dir) {
    std::vector<Instance> instances;
    if (!graph_path.empty()) {
        instances.push_back({graph_path, load_graph_file(graph_path)});
        return instances;
    }
    namespace fs = std::filesystem;
    fs::path dir = fs::path(corpus_dir) / corpus;
    if (!fs::is_directory(dir)) throw ParseError(0, "no corpus directory " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".el") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) instances.push_back({corpus + "/" + f.stem().string(),
                                                     load_graph_file(f.string())});
    if (instances.empty()) throw ParseError(0, "corpus " + dir.string() + " has no .el files");
    return instances;
}

int cmd_solve(const std::string& graph_path, int k, std::uint64_t max_positions,
              const std::string& out_path) {
    Graph g = load_graph_file(graph_path);
    SolveLimits limits{max_positions};
    ValueTable vt = compute_values(Arena(g, k), limits);
    Output output(out_path);
    output.out() << result_record(vt).dump() << '\n';
    Rank t = capture_time(vt);
    std::cerr << graph_path << ": k=" << k << " "
              << (is_cop_win(vt) ? "cop-win, capture time " + std::to_string(t.plies()) + " round(s)"
                                 : "robber-win")
              << '\n';
    return 0;
}

int cmd_copnumber(const std::string& graph_path, int max_k, std::uint64_t max_positions,
                  const std::string& out_path) {
    Graph g = load_graph_file(graph_path);
    SolveLimits limits{max_positions};
    CopNumberResult result = cop_number(g, max_k, limits);
    json j;
    j["n"] = g.vertex_count();
    j["max_cops"] = max_k;
    j["cop_number"] = result.cop_number ? json(*result.cop_number) : json(nullptr);
    if (!result.cop_number) j["not_found"] = max_k;
    json per_k = json::array();
    for (auto [k, win] : result.per_k) per_k.push_back({{"k", k}, {"cop_win", win}});
    j["per_k"] = std::move(per_k);
    Output output(out_path);
    output.out() << j.dump() << '\n';
    if (result.cop_number)
        std::cerr << graph_path << ": cop number " << *result.cop_number << '\n';
    else
        std::cerr << graph_path << ": not cop-win with up to " << max_k << " cop(s)\n";
    return 0;
}

int cmd_verify(const std::string& graph_path, const std::string& corpus,
               const std::string& corpus_dir, int k, const std::string& checks, int random_robbers,
               std::uint64_t seed, std::uint64_t horizon, std::uint64_t max_positions, int jobs,
               const std::string& out_path) {
    bool all = checks == "all";
    if (!all && checks != "bound" && checks != "norepeat" && checks != "memoryless")
        throw ParseError(0, "unknown check \"" + checks + "\"");
    std::vector<Instance> instances = gather_instances(graph_path, corpus, corpus_dir);
    SolveLimits limits{max_positions};

    struct Task {
        const Instance* instance;
        std::string check;
    };
    std::vector<Task> tasks;
    for (const Instance& inst : instances)
        for (const char* c : {"bound", "norepeat", "memoryless"})
            if (all || checks == c) tasks.push_back({&inst, c});

    std::vector<VerificationReport> reports(tasks.size());
    std::atomic<size_t> cursor{0};
    std::atomic<bool> hit_limit{false};
    auto worker = [&] {
        for (size_t i = cursor.fetch_add(1); i < tasks.size(); i = cursor.fetch_add(1)) {
            const Task& task = tasks[i];
            try {
                if (task.check == "bound") {
                    reports[i] = check_bound(task.instance->graph, k, task.instance->name, limits);
                } else if (task.check == "memoryless") {
                    std::optional<TruncationParams> trunc;
                    if (horizon > 0) trunc = TruncationParams(horizon);
                    reports[i] = check_memoryless_sufficiency(task.instance->graph, k,
                                                              task.instance->name, trunc, limits);
                } else {
                    RepetitionCheckConfig config;
                    config.random_robbers = random_robbers;
                    config.seed = seed;
                    reports[i] = check_no_repetition(task.instance->graph, k, task.instance->name,
                                                     config, limits);
                }
            } catch (const LimitError& e) {
                VerificationReport r;
                r.claim = task.check;
                r.instance = task.instance->name;
                r.n = task.instance->graph.vertex_count();
                r.k = k;
                r.status = VerificationReport::Status::skipped;
                r.detail = std::string("limit exceeded: ") + e.what();
                reports[i] = std::move(r);
                hit_limit = true;
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    Output output(out_path);
    int failed = 0, skipped = 0, passed = 0;
    for (const VerificationReport& report : reports) {
        output.out() << report_to_json(report).dump() << '\n';
        switch (report.status) {
            case VerificationReport::Status::passed: ++passed; break;
            case VerificationReport::Status::failed: ++failed; break;
            case VerificationReport::Status::skipped: ++skipped; break;
        }
    }
    std::cerr << "verify: " << passed << " passed, " << failed << " failed, " << skipped
              << " skipped\n";
    if (failed > 0) return 1;
    if (hit_limit) return 3;
    // remaining skips are inapplicable checks (e.g. norepeat on robber-win)
    return 0;
}

Behavior interactive_behavior(const Arena& arena, const std::string& side) {
    return Behavior{"interactive",
                    [&arena, side](const std::vector<Position>&, const Position& current) {
                        auto options = arena.successors(current);
                        std::cout << side << " to move at " << current.str() << "\n";
                        for (size_t i = 0; i < options.size(); ++i)
                            std::cout << "  [" << i << "] " << options[i].str() << "\n";
                        while (true) {
                            std::cout << "choose 0.." << options.size() - 1 << ": " << std::flush;
                            std::string line;
                            if (!std::getline(std::cin, line))
                                throw Error("end of input in interactive mode");
                            try {
                                size_t idx = std::stoul(line);
                                if (idx < options.size()) return options[idx];
                            } catch (const std::exception&) {
                            }
                            std::cout << "invalid choice\n";
                        }
                    }};
}

Behavior make_side(const std::string& spec, Turn side, const Arena& arena,
                   std::shared_ptr<const ValueTable>& vt, std::uint64_t default_seed) {
    std::string side_name = side == Turn::cop ? "cop" : "robber";
    auto solved = [&]() -> std::shared_ptr<const ValueTable> {
        if (!vt) vt = std::make_shared<const ValueTable>(compute_values(arena));
        return vt;
    };
    if (spec == "optimal") {
        auto table = solved();
        auto [c, r] = extract_strategies(*table);
        auto strategy = std::make_shared<const Strategy>(side == Turn::cop ? std::move(c)
                                                                           : std::move(r));
        return strategy_behavior(table, strategy);
    }
    if (spec == "interactive") return interactive_behavior(arena, side_name);
    if (spec.starts_with("random")) {
        std::uint64_t seed = default_seed;
        if (spec.starts_with("random:")) seed = std::stoull(spec.substr(7));
        else if (spec != "random") throw ParseError(0, "bad side spec \"" + spec + "\"");
        return random_behavior(arena, seed);
    }
    if (spec.starts_with("scripted:")) {
        std::string path = spec.substr(9);
        std::ifstream in(path);
        if (!in) throw ParseError(0, "cannot open script " + path);
        json j;
        try {
            in >> j;
            return behavior_from_script_json(j, side);
        } catch (const json::exception& e) {
            throw ParseError(0, path + ": " + e.what());
        }
    }
    throw ParseError(0, "unknown side spec \"" + spec + "\" (optimal | random[:seed] | "
                        "interactive | scripted:file)");
}

int cmd_play(const std::string& graph_path, int k, const std::string& cop_spec,
             const std::string& robber_spec, std::int64_t max_rounds, std::uint64_t seed,
             const std::string& out_path) {
    Graph g = load_graph_file(graph_path);
    Arena arena(g, k);
    if (max_rounds < 0)
        max_rounds = static_cast<std::int64_t>(g.vertex_count()) * g.vertex_count() + 1;
    std::shared_ptr<const ValueTable> vt;
    Behavior cop = make_side(cop_spec, Turn::cop, arena, vt, seed);
    Behavior robber = make_side(robber_spec, Turn::robber, arena, vt, seed + 1);
    Play play = run_play(arena, cop, robber, static_cast<std::uint64_t>(max_rounds));
    Output output(out_path);
    output.out() << play_to_json(play, k).dump() << '\n';
    std::cerr << graph_path << ": "
              << (play.captured() ? "captured in round " + std::to_string(play.length_rounds)
                                  : "ongoing after " + std::to_string(play.length_rounds) +
                                        " round(s)")
              << '\n';
    return 0;
}

int cmd_export(const std::string& graph_path, int k, std::uint64_t max_positions,
               const std::string& out_path, const std::string& strategies_prefix) {
    Graph g = load_graph_file(graph_path);
    Arena arena(g, k);
    {
        Output output(out_path);
        std::uint64_t edges = arena.export_move_digraph(output.out(), max_positions);
        std::cerr << graph_path << ": " << arena.size() << " nodes, " << edges << " edges\n";
    }
    if (!strategies_prefix.empty()) {
        ValueTable vt = compute_values(arena, SolveLimits{max_positions});
        auto [cop, robber] = extract_strategies(vt);
        for (const Strategy& s : {cop, robber}) {
            std::string path = strategies_prefix +
                               (s.owner == Strategy::Owner::cop ? ".cop.json" : ".robber.json");
            std::ofstream out(path);
            if (!out) throw Error("cannot write " + path);
            out << strategy_to_json(vt, s).dump(2) << '\n';
            std::cerr << "wrote " << path << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cops-and-robbers reachability solver"};
    app.require_subcommand(1);

    std::string graph_path, corpus, corpus_dir = "data/corpus", out_path;
    std::string checks = "all", cop_spec = "optimal", robber_spec = "optimal";
    std::string strategies_prefix;
    int k = 1, max_k = 3, random_robbers = 100, jobs = 1;
    std::int64_t max_rounds = -1;
    std::uint64_t seed = 1, horizon = 0, max_positions = 5'000'000;

    auto add_common = [&](CLI::App* cmd, bool needs_graph) {
        if (needs_graph) cmd->add_option("--graph", graph_path, "graph file (edge list)")->required();
        cmd->add_option("--out", out_path, "write JSON output here instead of stdout");
        cmd->add_option("--max-positions", max_positions, "arena size limit");
    };

    CLI::App* solve = app.add_subcommand("solve", "decide cop-win and compute capture time");
    add_common(solve, true);
    solve->add_option("--cops", k, "number of cops");

    CLI::App* copnumber = app.add_subcommand("copnumber", "find the smallest winning cop team");
    add_common(copnumber, true);
    copnumber->add_option("--max-cops", max_k, "largest team size to try");

    CLI::App* verify = app.add_subcommand("verify", "run claim checks, one JSON line per result");
    verify->add_option("--graph", graph_path, "graph file (edge list)");
    verify->add_option("--corpus", corpus, "bundled corpus name (named | small4 | perf)");
    verify->add_option("--corpus-dir", corpus_dir, "corpus root directory");
    verify->add_option("--out", out_path, "write JSON output here instead of stdout");
    verify->add_option("--max-positions", max_positions, "arena size limit");
    verify->add_option("--cops", k, "number of cops");
    verify->add_option("--checks", checks, "bound | norepeat | memoryless | all");
    verify->add_option("--random-robbers", random_robbers, "seeded random robbers per instance");
    verify->add_option("--seed", seed, "base seed for random robbers");
    verify->add_option("--horizon", horizon, "truncated-game horizon override, in plies");
    verify->add_option("--jobs", jobs, "parallel instances");

    CLI::App* play = app.add_subcommand("play", "run one match and emit the transcript");
    add_common(play, true);
    play->add_option("--cops", k, "number of cops");
    play->add_option("--cop", cop_spec, "optimal | random[:seed] | interactive | scripted:file");
    play->add_option("--robber", robber_spec, "optimal | random[:seed] | interactive | scripted:file");
    play->add_option("--max-rounds", max_rounds, "truncate after this many rounds (default n^2+1)");
    play->add_option("--seed", seed, "seed for random sides without an explicit one");

    CLI::App* exp = app.add_subcommand("export", "write the move digraph (and strategies)");
    add_common(exp, true);
    exp->add_option("--cops", k, "number of cops");
    exp->add_option("--emit-strategies", strategies_prefix,
                    "also solve and write <prefix>.cop.json / <prefix>.robber.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0, usage errors are input errors
    }

    try {
        if (solve->parsed()) return cmd_solve(graph_path, k, max_positions, out_path);
        if (copnumber->parsed()) return cmd_copnumber(graph_path, max_k, max_positions, out_path);
        if (verify->parsed()) {
            if (graph_path.empty() == corpus.empty())
                throw ParseError(0, "verify needs exactly one of --graph and --corpus");
            return cmd_verify(graph_path, corpus, corpus_dir, k, checks, random_robbers, seed,
                              horizon, max_positions, jobs, out_path);
        }
        if (play->parsed())
            return cmd_play(graph_path, k, cop_spec, robber_spec, max_rounds, seed, out_path);
        if (exp->parsed())
            return cmd_export(graph_path, k, max_positions, out_path, strategies_prefix);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const LimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const IllegalMoveError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
