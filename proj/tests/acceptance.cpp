// Acceptance suite: runs every advertised guarantee end to end against the
// bundled corpus and prints one PASS/FAIL line per criterion. Exits nonzero
// if any criterion fails.

#include <chrono>
#include <iostream>

#include "cnr/io.hpp"
#include "table_checks.hpp"
#include "testutil.hpp"

using namespace cnr;
using testutil::corpus_files;
using testutil::load_graph;
using testutil::value_table_violation;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, bool ok, const std::string& note) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name;
    if (!note.empty()) std::cout << " (" << note << ")";
    std::cout << std::endl;
    if (!ok) ++g_failures;
}

struct Instance {
    std::string name;
    Graph graph;
};

std::vector<Instance> load_corpus(const std::string& sub) {
    std::vector<Instance> out;
    for (const auto& path : corpus_files(sub))
        out.push_back({sub + "/" + path.stem().string(), load_graph(path)});
    return out;
}

// --- 1. memoryless sufficiency on the exhaustive <=4-vertex corpus ---------

void criterion_memoryless(const std::vector<Instance>& small4) {
    int checked = 0;
    std::string bad;
    for (const Instance& inst : small4) {
        VerificationReport r = check_memoryless_sufficiency(inst.graph, 1, inst.name);
        ++checked;
        if (!r.passed()) {
            bad = inst.name + ": " + r.detail;
            break;
        }
    }
    criterion(1, "memoryless value = general-strategy truncated value, k=1", bad.empty(),
              bad.empty() ? std::to_string(checked) + " connected graphs on <= 4 vertices" : bad);
}

// --- 2. the two oracles agree ----------------------------------------------

void criterion_oracle_independence() {
    std::vector<std::pair<std::string, Graph>> tiny{
        {"K1", testutil::complete_graph(1)},
        {"P2", testutil::path_graph(2)},
        {"P3", testutil::path_graph(3)},
    };
    std::string bad;
    int compared = 0;
    for (const auto& [name, g] : tiny) {
        Arena arena(g, 1);
        for (std::uint64_t h = 2; h <= 8; ++h) {
            OracleValue fast = truncated_value(arena, TruncationParams(h));
            OracleValue slow = history_tree_value(arena, TruncationParams(h));
            ++compared;
            if (!(fast == slow)) {
                bad = name + " at horizon " + std::to_string(h);
                break;
            }
        }
        if (!bad.empty()) break;
    }
    criterion(2, "truncated oracle = history-tree oracle on K1, P2, P3", bad.empty(),
              bad.empty() ? std::to_string(compared) + " horizon/instance pairs" : bad);
}

// --- 3. boundedness ---------------------------------------------------------

void criterion_bound(const std::vector<Instance>& corpus) {
    std::string bad;
    int cop_wins = 0;
    for (const Instance& inst : corpus) {
        const std::uint64_t n = inst.graph.vertex_count();
        Arena arena(inst.graph, 1);
        ValueTable vt = compute_values(arena);
        Rank t = capture_time(vt);
        if (t.is_finite()) {
            ++cop_wins;
            if (t.plies() > n * n) {
                bad = inst.name + ": capture time exceeds n^2";
                break;
            }
        }
        OracleValue oracle = truncated_value(arena, TruncationParams(2 * n * n + 2));
        if (oracle.survives() != !t.is_finite()) {
            bad = inst.name + ": survival at horizon 2n^2+2 disagrees with solver rank";
            break;
        }
    }
    criterion(3, "capture time <= n^2 and survival at 2n^2+2 plies = infinite rank", bad.empty(),
              bad.empty() ? std::to_string(cop_wins) + " cop-win instances among " +
                                std::to_string(corpus.size())
                          : bad);
}

// --- 4. no repetition under the optimal cop --------------------------------

void criterion_no_repetition(const std::vector<Instance>& corpus,
                             const std::vector<std::pair<Instance, int>>& multi_cop) {
    RepetitionCheckConfig config;
    config.random_robbers = 1000;
    config.seed = 1;
    std::string bad;
    int checked = 0;
    auto run = [&](const Instance& inst, int k) {
        if (!bad.empty()) return;
        VerificationReport r = check_no_repetition(inst.graph, k, inst.name, config);
        if (r.status == VerificationReport::Status::skipped) return;  // robber-win instance
        ++checked;
        if (!r.passed()) bad = inst.name + " k=" + std::to_string(k) + ": " + r.detail;
    };
    for (const Instance& inst : corpus) run(inst, 1);
    for (const auto& [inst, k] : multi_cop) run(inst, k);

    // the detector itself must fire on the stationary-cop fixture
    bool detector_fires = false;
    {
        Arena arena(testutil::cycle_graph(4), 1);
        Play play = run_play(arena, stationary_cop_behavior(arena, 0),
                             cycling_robber_behavior(arena), 20);
        detector_fires = !play.captured() && detail::first_repetition(play.moves).has_value();
    }
    if (bad.empty() && !detector_fires) bad = "stationary-cop fixture did not trigger the detector";
    criterion(4, "optimal cop never repeats a position (1000 random robbers per instance)",
              bad.empty(),
              bad.empty() ? std::to_string(checked) + " cop-win instances + expected-fail fixture"
                          : bad);
}

// --- 5. determinacy and local optimality -----------------------------------

void criterion_determinacy(const std::vector<Instance>& corpus,
                           const std::vector<std::pair<Instance, int>>& multi_cop) {
    std::string bad;
    std::uint64_t positions = 0;
    auto sweep = [&](const Instance& inst, int k) {
        if (!bad.empty()) return;
        ValueTable vt = compute_values(Arena(inst.graph, k));
        positions += vt.size();
        if (auto violation = value_table_violation(vt))
            bad = inst.name + " k=" + std::to_string(k) + ": " + *violation;
    };
    for (const Instance& inst : corpus) sweep(inst, 1);
    for (const auto& [inst, k] : multi_cop) sweep(inst, k);
    criterion(5, "value tables satisfy both optimality equations at every position", bad.empty(),
              bad.empty() ? std::to_string(positions) + " positions swept" : bad);
}

// --- 6. known game values, oracle-cross-checked -----------------------------

struct KnownValue {
    std::string name;
    int cop_number;
    std::optional<std::uint64_t> capture_rounds;  // at k = cop_number, when pinned
};

void criterion_known_values(const std::string& named_dir) {
    std::vector<KnownValue> known;
    for (int n = 1; n <= 8; ++n) known.push_back({"p" + std::to_string(n), 1, std::nullopt});
    known.push_back({"tree7", 1, std::nullopt});
    known.push_back({"c3", 1, std::nullopt});
    for (int n = 4; n <= 8; ++n) known.push_back({"c" + std::to_string(n), 2, std::nullopt});
    known.push_back({"k1", 1, 0});
    for (int n = 2; n <= 6; ++n) known.push_back({"k" + std::to_string(n), 1, 1});
    known.push_back({"petersen", 3, std::nullopt});
    // oracle-vetted path values
    std::vector<std::pair<std::string, std::uint64_t>> path_times{{"p3", 1}, {"p4", 2}};

    std::string bad;
    int solved = 0;
    for (const KnownValue& kv : known) {
        Graph g = load_graph(std::filesystem::path(named_dir) / (kv.name + ".el"));
        for (int k = 1; k <= kv.cop_number && bad.empty(); ++k) {
            Arena arena(g, k);
            ValueTable vt = compute_values(arena);
            OracleValue oracle = truncated_value(arena, TruncationParams::defaults(arena));
            Rank initial = vt.rank(Arena::initial_position());
            ++solved;
            bool expect_win = k == kv.cop_number;
            if (is_cop_win(vt) != expect_win) {
                bad = kv.name + ": cop number is not " + std::to_string(kv.cop_number);
            } else if (oracle.survives() == initial.is_finite()) {
                bad = kv.name + " k=" + std::to_string(k) + ": oracle disagrees with solver";
            } else if (expect_win && *oracle.capture_plies != initial.plies()) {
                bad = kv.name + " k=" + std::to_string(k) + ": oracle plies differ from rank";
            } else if (expect_win && kv.capture_rounds &&
                       !(capture_time(vt) == Rank::finite(*kv.capture_rounds))) {
                bad = kv.name + ": capture time is not " + std::to_string(*kv.capture_rounds);
            }
        }
        if (!bad.empty()) break;
    }
    if (bad.empty()) {
        for (const auto& [name, rounds] : path_times) {
            Graph g = load_graph(std::filesystem::path(named_dir) / (name + ".el"));
            ValueTable vt = compute_values(Arena(g, 1));
            if (!(capture_time(vt) == Rank::finite(rounds))) {
                bad = name + ": capture time is not " + std::to_string(rounds);
                break;
            }
        }
    }
    criterion(6, "known cop numbers and capture times, oracle-cross-checked", bad.empty(),
              bad.empty() ? std::to_string(solved) + " (graph, k) instances" : bad);
}

// --- 7. strategy optimality against a behavior battery ----------------------

void criterion_strategy_optimality() {
    std::string bad;
    for (auto [name, g, k] :
         {std::tuple{"P4", testutil::path_graph(4), 1}, {"C4", testutil::cycle_graph(4), 2}}) {
        Arena arena(g, k);
        auto vt = std::make_shared<const ValueTable>(compute_values(arena));
        auto [c, r] = extract_strategies(*vt);
        auto cop_strategy = std::make_shared<const Strategy>(std::move(c));
        auto robber_strategy = std::make_shared<const Strategy>(std::move(r));
        const std::uint64_t value = capture_time(*vt).plies();
        const std::uint64_t bound = static_cast<std::uint64_t>(g.vertex_count()) *
                                        g.vertex_count() + 1;

        std::vector<Behavior> robbers{strategy_behavior(vt, robber_strategy),
                                      cycling_robber_behavior(arena)};
        for (std::uint64_t s = 1; s <= 300; ++s) robbers.push_back(random_behavior(arena, s));
        for (const Behavior& robber : robbers) {
            Play play = run_play(arena, strategy_behavior(vt, cop_strategy), robber, bound);
            if (!play.captured() || play.length_rounds > value) {
                bad = std::string(name) + ": cop strategy exceeded the value vs " + robber.name;
                break;
            }
        }
        if (!bad.empty()) break;

        std::vector<Behavior> cops{strategy_behavior(vt, cop_strategy),
                                   stationary_cop_behavior(arena, 0)};
        for (std::uint64_t s = 401; s <= 700; ++s) cops.push_back(random_behavior(arena, s));
        for (const Behavior& cop : cops) {
            Play play = run_play(arena, cop, strategy_behavior(vt, robber_strategy), bound);
            if (play.captured() && play.length_rounds < value) {
                bad = std::string(name) + ": robber strategy fell short of the value vs " +
                      cop.name;
                break;
            }
        }
        if (!bad.empty()) break;
    }
    criterion(7, "extracted strategies meet the value against the whole battery", bad.empty(),
              bad.empty() ? "P4 (k=1) and C4 (k=2), 302 behaviors per side" : bad);
}

// --- 8. performance sanity ---------------------------------------------------

void criterion_performance(const std::string& perf_dir, const std::string& named_dir) {
    auto timed_solve = [](const Graph& g, int k) {
        auto start = std::chrono::steady_clock::now();
        ValueTable vt = compute_values(Arena(g, k), SolveLimits{50'000'000});
        (void)is_cop_win(vt);
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    namespace fs = std::filesystem;
    double t200 = timed_solve(load_graph(fs::path(perf_dir) / "rand200.el"), 1);
    double t30 = timed_solve(load_graph(fs::path(perf_dir) / "rand30.el"), 2);
    double tpet = timed_solve(load_graph(fs::path(named_dir) / "petersen.el"), 3);
    bool ok = t200 < 10.0 && t30 < 60.0 && tpet < 60.0;
    char note[160];
    std::snprintf(note, sizeof note,
                  "rand200 k=1: %.2fs (<10s), rand30 k=2: %.2fs (<60s), petersen k=3: %.2fs (<60s)",
                  t200, t30, tpet);
    criterion(8, "solver speed on the large instances", ok, note);
}

}  // namespace

int main() {
    std::vector<Instance> small4 = load_corpus("small4");
    std::vector<Instance> named = load_corpus("named");
    std::vector<Instance> corpus = named;
    corpus.insert(corpus.end(), small4.begin(), small4.end());

    // the cop-win instances above k=1 pinned by the known-values table
    std::vector<std::pair<Instance, int>> multi_cop;
    for (const Instance& inst : named) {
        std::string stem = inst.name.substr(inst.name.find('/') + 1);
        if (stem.starts_with("c") && stem != "c3") multi_cop.emplace_back(inst, 2);
        if (stem == "petersen") multi_cop.emplace_back(inst, 3);
    }

    std::string named_dir = (testutil::corpus_dir() / "named").string();
    std::string perf_dir = (testutil::corpus_dir() / "perf").string();

    criterion_memoryless(small4);
    criterion_oracle_independence();
    criterion_bound(corpus);
    criterion_no_repetition(corpus, multi_cop);
    criterion_determinacy(corpus, multi_cop);
    criterion_known_values(named_dir);
    criterion_strategy_optimality();
    criterion_performance(perf_dir, named_dir);

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all 8 criteria passed" << std::endl;
    return 0;
}
