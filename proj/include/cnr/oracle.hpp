#pragma once

#include <unordered_map>

#include "cnr/play.hpp"

namespace cnr {

/// Horizon for the truncated game, in plies (placement plies included).
/// The default covers the position-count bound on optimal capture: with
/// 2*M*n fully placed positions (M cop multisets), a winning cop needs at
/// most that many pursuit plies, plus the two placements. At k=1 this is
/// the classic 2n^2 + 2.
struct TruncationParams {
    std::uint64_t horizon_plies;

    explicit TruncationParams(std::uint64_t plies) : horizon_plies(plies) {
        if (plies < 2) throw Error("horizon must be at least 2 plies (the placements)");
    }

    static TruncationParams defaults(const Arena& arena) {
        std::uint64_t n = arena.graph().vertex_count();
        std::uint64_t m = detail::MultisetCodec(arena.graph().vertex_count(), arena.cop_count()).count();
        return TruncationParams(detail::checked_add(detail::checked_mul(2 * m, n), 2));
    }
};

/// Outcome of a horizon-limited game: capture after some plies, or the
/// robber survives the whole horizon.
struct OracleValue {
    std::optional<std::uint64_t> capture_plies;

    bool survives() const { return !capture_plies.has_value(); }
    std::optional<std::uint64_t> capture_rounds() const {
        if (survives()) return std::nullopt;
        return plies_to_rounds(*capture_plies);
    }
    bool operator==(const OracleValue&) const = default;
};

/// Exact minimax value of the truncated game by depth-indexed backward
/// induction: value(pos, 0) is capture-or-survives, and value(pos, d) picks
/// over successors at depth d-1 (cop prefers capture, then fewer plies;
/// robber prefers survival, then more plies). States are indexed by a
/// discovery-order table built from a reachability sweep, not by the
/// solver's arithmetic ids, and the recurrence never looks at attractor
/// ranks - this is an independent computation. Depth layers that reach a
/// fixpoint stop early; the layer function is deterministic, so the value
/// at the full horizon equals the fixpoint.
inline OracleValue truncated_value(const Arena& arena, const TruncationParams& trunc) {
    // discover the positions reachable from the start node
    std::vector<Position> states;
    std::unordered_map<Position, std::uint32_t, PositionHash> index;
    std::vector<std::vector<std::uint32_t>> succ_ids;
    {
        std::vector<Position> frontier{Arena::initial_position()};
        index.emplace(frontier.back(), 0);
        states.push_back(frontier.back());
        while (!frontier.empty()) {
            Position pos = std::move(frontier.back());
            frontier.pop_back();
            std::uint32_t id = index.at(pos);
            if (succ_ids.size() <= id) succ_ids.resize(id + 1);
            if (arena.is_capture(pos)) continue;
            for (Position& next : arena.successors(pos)) {
                auto [it, fresh] = index.emplace(next, static_cast<std::uint32_t>(states.size()));
                if (fresh) {
                    states.push_back(next);
                    frontier.push_back(std::move(next));
                }
                succ_ids[id].push_back(it->second);
            }
        }
        succ_ids.resize(states.size());
    }

    const std::uint64_t kSurvives = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> prev(states.size()), cur(states.size());
    for (size_t i = 0; i < states.size(); ++i)
        prev[i] = arena.is_capture(states[i]) ? 0 : kSurvives;

    std::uint64_t start_value = prev[0];
    for (std::uint64_t d = 1; d <= trunc.horizon_plies; ++d) {
        bool changed = false;
        for (size_t i = 0; i < states.size(); ++i) {
            if (arena.is_capture(states[i])) {
                cur[i] = 0;
                continue;
            }
            std::uint64_t best = kSurvives;
            if (states[i].turn == Turn::cop) {
                for (std::uint32_t s : succ_ids[i])
                    if (prev[s] != kSurvives) best = std::min(best, prev[s] + 1);
            } else {
                best = 0;
                for (std::uint32_t s : succ_ids[i]) {
                    if (prev[s] == kSurvives) {
                        best = kSurvives;
                        break;
                    }
                    best = std::max(best, prev[s] + 1);
                }
            }
            cur[i] = best;
            if (best != prev[i]) changed = true;
        }
        start_value = cur[0];
        if (!changed) break;  // fixpoint: all further layers are identical
        std::swap(prev, cur);
    }
    if (start_value == kSurvives) return OracleValue{std::nullopt};
    return OracleValue{start_value};
}

/// Exact minimax over the raw history tree: plain recursion, no merging of
/// transpositions, so the quantification ranges over history-dependent
/// strategies by construction. Exponential; guarded by a node budget.
inline OracleValue history_tree_value(const Arena& arena, const TruncationParams& trunc,
                                      std::uint64_t max_nodes = 20'000'000) {
    std::uint64_t visited = 0;
    const std::uint64_t kSurvives = std::numeric_limits<std::uint64_t>::max();
    auto rec = [&](auto&& self, const Position& pos, std::uint64_t depth) -> std::uint64_t {
        if (++visited > max_nodes)
            throw LimitError("history tree exceeded " + std::to_string(max_nodes) +
                             " nodes; shrink the instance or the horizon");
        if (arena.is_capture(pos)) return 0;
        if (depth == 0) return kSurvives;
        std::uint64_t best;
        if (pos.turn == Turn::cop) {
            best = kSurvives;
            for (const Position& next : arena.successors(pos)) {
                std::uint64_t v = self(self, next, depth - 1);
                if (v != kSurvives) best = std::min(best, v + 1);
            }
        } else {
            best = 0;
            for (const Position& next : arena.successors(pos)) {
                std::uint64_t v = self(self, next, depth - 1);
                if (v == kSurvives) return kSurvives;
                best = std::max(best, v + 1);
            }
        }
        return best;
    };
    std::uint64_t v = rec(rec, Arena::initial_position(), trunc.horizon_plies);
    if (v == kSurvives) return OracleValue{std::nullopt};
    return OracleValue{v};
}

// ---------------------------------------------------------------------------
// claim checks

struct VerificationReport {
    enum class Status { passed, failed, skipped };
    std::string claim;
    std::string instance;
    int n = 0;
    int k = 0;
    Status status = Status::failed;
    std::string detail;
    std::optional<Play> witness;  // failing reports carry a replayable witness
    std::vector<std::uint64_t> seeds;

    bool passed() const { return status == Status::passed; }
};

/// Memoryless sufficiency: the value computed over memoryless strategies
/// (the attractor) must equal the general-strategy minimax value of the
/// truncated game at a horizon covering the capture-time bound.
inline VerificationReport check_memoryless_sufficiency(
    const Graph& g, int k, std::string instance = "",
    std::optional<TruncationParams> horizon = std::nullopt, const SolveLimits& limits = {}) {
    Arena arena(g, k);
    VerificationReport report;
    report.claim = "memoryless";
    report.instance = std::move(instance);
    report.n = g.vertex_count();
    report.k = k;
    ValueTable vt = compute_values(arena, limits);
    OracleValue oracle = truncated_value(arena, horizon.value_or(TruncationParams::defaults(arena)));
    Rank solver_time = capture_time(vt);
    bool match = solver_time.is_finite() ? (!oracle.survives() &&
                                            *oracle.capture_rounds() == solver_time.plies())
                                         : oracle.survives();
    report.status = match ? VerificationReport::Status::passed : VerificationReport::Status::failed;
    auto show = [](const Rank& r) {
        return r.is_finite() ? std::to_string(r.plies()) : std::string("inf");
    };
    report.detail = "solver=" + show(solver_time) + " oracle=" +
                    (oracle.survives() ? "survives" : std::to_string(*oracle.capture_rounds()));
    return report;
}

/// Bound: a cop-win instance is captured within n^2 rounds.
inline VerificationReport check_bound(const Graph& g, int k, std::string instance = "",
                                      const SolveLimits& limits = {}) {
    VerificationReport report;
    report.claim = "bound";
    report.instance = std::move(instance);
    report.n = g.vertex_count();
    report.k = k;
    ValueTable vt = compute_values(Arena(g, k), limits);
    Rank t = capture_time(vt);
    std::uint64_t n = g.vertex_count();
    if (!t.is_finite()) {
        report.status = VerificationReport::Status::passed;
        report.detail = "robber-win, bound holds vacuously";
    } else if (t.plies() <= n * n) {
        report.status = VerificationReport::Status::passed;
        report.detail = "capture_time " + std::to_string(t.plies()) + " <= " + std::to_string(n * n);
    } else {
        report.status = VerificationReport::Status::failed;
        report.detail = "capture_time " + std::to_string(t.plies()) + " > " + std::to_string(n * n);
    }
    return report;
}

struct RepetitionCheckConfig {
    int random_robbers = 100;
    std::uint64_t seed = 1;
    std::uint64_t exhaustive_budget = 200'000;  // robber move-tree nodes
};

namespace detail {

inline std::optional<size_t> first_repetition(const std::vector<Position>& moves) {
    for (size_t i = 0; i < moves.size(); ++i)
        for (size_t j = i + 1; j < moves.size(); ++j)
            if (moves[i] == moves[j]) return j;
    return std::nullopt;
}

// Rank must drop by exactly 1 on the optimal mover's plies and cannot drop
// by less on the opponent's.
inline bool rank_descent_holds(const ValueTable& vt, const std::vector<Position>& moves,
                               bool robber_optimal) {
    for (size_t i = 0; i + 1 < moves.size(); ++i) {
        Rank before = vt.rank(moves[i]);
        Rank after = vt.rank(moves[i + 1]);
        if (!before.is_finite() || !after.is_finite()) return false;
        bool cop_ply = moves[i].turn == Turn::cop;
        if (cop_ply || robber_optimal) {
            if (after.plies() != before.plies() - 1) return false;
        } else if (!(after.plies() <= before.plies() - 1)) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// No-repetition: the extracted optimal cop strategy, against the optimal
/// robber, a battery of seeded random robbers, and (within budget) every
/// robber move tree, never revisits a position before capture. Also asserts
/// the stronger rank-descent property along every simulated ply.
inline VerificationReport check_no_repetition(const Graph& g, int k, std::string instance = "",
                                              const RepetitionCheckConfig& config = {},
                                              const SolveLimits& limits = {}) {
    Arena arena(g, k);
    VerificationReport report;
    report.claim = "norepeat";
    report.instance = std::move(instance);
    report.n = g.vertex_count();
    report.k = k;
    auto vt = std::make_shared<const ValueTable>(compute_values(arena, limits));
    if (!is_cop_win(*vt)) {
        report.status = VerificationReport::Status::skipped;
        report.detail = "not cop-win at k=" + std::to_string(k) + "; check inapplicable";
        return report;
    }
    auto [cop_s, robber_s] = extract_strategies(*vt);
    auto cop_strategy = std::make_shared<const Strategy>(std::move(cop_s));
    auto robber_strategy = std::make_shared<const Strategy>(std::move(robber_s));
    Behavior cop = strategy_behavior(vt, cop_strategy);
    const std::uint64_t max_rounds =
        static_cast<std::uint64_t>(g.vertex_count()) * g.vertex_count() + 1;

    auto fails = [&](const Play& play, const std::string& robber_name, bool robber_optimal) {
        if (!play.captured()) {
            report.detail = "vs " + robber_name + ": no capture within bound";
            report.witness = play;
            return true;
        }
        if (auto rep = detail::first_repetition(play.moves)) {
            report.detail = "vs " + robber_name + ": position repeated at ply " +
                            std::to_string(*rep);
            report.witness = play;
            return true;
        }
        if (!detail::rank_descent_holds(*vt, play.moves, robber_optimal)) {
            report.detail = "vs " + robber_name + ": rank descent violated";
            report.witness = play;
            return true;
        }
        return false;
    };

    if (fails(run_play(arena, cop, strategy_behavior(vt, robber_strategy), max_rounds), "optimal",
              true))
        return report;
    for (int i = 0; i < config.random_robbers; ++i) {
        std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
        report.seeds.push_back(seed);
        if (fails(run_play(arena, cop, random_behavior(arena, seed), max_rounds),
                  "random:" + std::to_string(seed), false))
            return report;
    }

    // exhaustive robber move tree vs the cop strategy, budget permitting
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    std::vector<Position> trail{Arena::initial_position()};
    auto dfs = [&](auto&& self) -> bool {  // true = violation found
        if (++nodes > config.exhaustive_budget) {
            budget_hit = true;
            return false;
        }
        const Position& current = trail.back();
        if (arena.is_capture(current)) return false;
        std::vector<Position> options;
        if (current.turn == Turn::cop)
            options.push_back(arena.position_at(cop_strategy->move_from(arena.index_of(current))));
        else
            options = arena.successors(current);
        for (const Position& next : options) {
            if (std::find(trail.begin(), trail.end(), next) != trail.end()) {
                trail.push_back(next);
                return true;
            }
            trail.push_back(next);
            if (self(self)) return true;
            trail.pop_back();
        }
        return false;
    };
    if (dfs(dfs)) {
        report.detail = "exhaustive robber tree: position repeated";
        Play witness;
        witness.moves = trail;
        witness.outcome = Play::Outcome::ongoing;
        witness.length_rounds = witness.plies() >= 2 ? (witness.plies() - 2) / 2 : 0;
        report.witness = witness;
        return report;
    }

    report.status = VerificationReport::Status::passed;
    report.detail = "optimal + " + std::to_string(config.random_robbers) + " random robbers" +
                    (budget_hit ? "" : " + exhaustive robber tree") + ": no repetition";
    return report;
}

}  // namespace cnr
