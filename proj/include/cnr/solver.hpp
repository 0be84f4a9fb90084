#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <map>

#include "cnr/arena.hpp"

namespace cnr {

/// Plies-to-capture under optimal play, or infinite. Infinity is a real
/// state of this type, not a sentinel integer; finite arithmetic is only
/// reachable through plies().
class Rank {
public:
    constexpr Rank() : finite_(false), plies_(0) {}
    static constexpr Rank infinite() { return Rank(); }
    static constexpr Rank finite(std::uint64_t plies) { return Rank(plies); }

    constexpr bool is_finite() const { return finite_; }
    constexpr std::uint64_t plies() const {
        if (!finite_) throw Error("plies() on an infinite rank");
        return plies_;
    }

    constexpr bool operator==(const Rank& o) const {
        return finite_ == o.finite_ && (!finite_ || plies_ == o.plies_);
    }
    // Infinite compares above every finite rank (the robber's preference).
    constexpr bool operator<(const Rank& o) const {
        if (finite_ != o.finite_) return finite_;
        return finite_ && plies_ < o.plies_;
    }
    constexpr bool operator<=(const Rank& o) const { return *this < o || *this == o; }

private:
    constexpr explicit Rank(std::uint64_t plies) : finite_(true), plies_(plies) {}
    bool finite_;
    std::uint64_t plies_;
};

/// Plies are counted from the start node: ply 1 places the cops, ply 2 the
/// robber, plies 3,4 form round 1, and so on. A capture after m plies
/// happens during round floor((m-1)/2).
inline std::uint64_t plies_to_rounds(std::uint64_t plies) { return (plies - 1) / 2; }

struct SolveLimits {
    std::uint64_t max_positions = 5'000'000;
};

/// rank(pos) for every position of the arena. rank is 0 exactly on capture
/// positions, 1 + min over successors on cop-turn positions and 1 + max on
/// robber-turn positions (infinite once the robber can reach an infinite
/// successor). Immutable after compute_values.
class ValueTable {
public:
    ValueTable(Arena arena, std::vector<Rank> ranks)
        : arena_(std::move(arena)), ranks_(std::move(ranks)) {}

    const Arena& arena() const { return arena_; }
    Rank rank(const Position& pos) const { return ranks_[arena_.index_of(pos)]; }
    Rank rank_at(std::uint64_t id) const { return ranks_[id]; }
    std::uint64_t size() const { return ranks_.size(); }

private:
    Arena arena_;
    std::vector<Rank> ranks_;
};

/// Backward induction over the arena, processing ranks in increasing order
/// from the capture set. A cop-turn position is ranked the first time one of
/// its successors is ranked (that successor realizes the minimum); a
/// robber-turn position keeps a countdown of unranked successors and is
/// ranked when the last one falls (realizing the maximum). Positions the
/// propagation never reaches are the robber's winning region and stay
/// infinite.
inline ValueTable compute_values(const Arena& arena, const SolveLimits& limits = {}) {
    const std::uint64_t total = arena.size();
    if (total > limits.max_positions)
        throw LimitError("arena has " + std::to_string(total) + " positions, limit is " +
                         std::to_string(limits.max_positions));

    std::vector<Rank> rank(total, Rank::infinite());
    std::vector<bool> assigned(total, false);
    std::vector<std::uint32_t> pending(total, 0);  // robber positions: successors still unranked
    std::deque<std::uint64_t> queue;

    const int n = arena.graph().vertex_count();
    detail::MultisetCodec codec(n, arena.cop_count());
    for (std::uint64_t i = 0, m = codec.count(); i < m; ++i) {
        std::vector<Vertex> cops = codec.unrank(i);
        Vertex last = -1;
        for (Vertex c : cops) {
            if (c == last) continue;  // distinct occupied vertices only
            last = c;
            for (Turn t : {Turn::cop, Turn::robber}) {
                std::uint64_t id = arena.index_of(Position{cops, c, t});
                rank[id] = Rank::finite(0);
                assigned[id] = true;
                queue.push_back(id);
            }
        }
    }

    while (!queue.empty()) {
        std::uint64_t id = queue.front();
        queue.pop_front();
        const std::uint64_t next_plies = rank[id].plies() + 1;
        for (const Position& prev : arena.predecessors(arena.position_at(id))) {
            std::uint64_t pid = arena.index_of(prev);
            if (assigned[pid]) continue;
            if (prev.turn == Turn::cop) {
                rank[pid] = Rank::finite(next_plies);
                assigned[pid] = true;
                queue.push_back(pid);
            } else {
                if (pending[pid] == 0) pending[pid] = static_cast<std::uint32_t>(arena.out_degree(prev));
                if (--pending[pid] == 0) {
                    rank[pid] = Rank::finite(next_plies);
                    assigned[pid] = true;
                    queue.push_back(pid);
                }
            }
        }
    }

    return ValueTable(arena, std::move(rank));
}

/// The graph is cop-win for this arena's k iff the start node has finite rank.
inline bool is_cop_win(const ValueTable& vt) {
    return vt.rank(Arena::initial_position()).is_finite();
}

/// Optimal-play game length in rounds; infinite when the robber wins.
inline Rank capture_time(const ValueTable& vt) {
    Rank r = vt.rank(Arena::initial_position());
    if (!r.is_finite()) return Rank::infinite();
    return Rank::finite(plies_to_rounds(r.plies()));
}

/// Memoryless move function: one chosen successor per owned non-capture
/// position, keyed and valued by position id. Deterministic by construction
/// (ties resolved toward the lexicographically smallest successor), so
/// serialized strategies are reproducible byte for byte.
struct Strategy {
    enum class Owner { cop, robber } owner;
    std::map<std::uint64_t, std::uint64_t> entries;

    std::uint64_t move_from(std::uint64_t id) const {
        auto it = entries.find(id);
        if (it == entries.end()) throw Error("strategy has no entry for position id " + std::to_string(id));
        return it->second;
    }
};

/// Time-optimal memoryless strategies for both players. The cop minimizes
/// successor rank; the robber maximizes it, preferring infinite (survival)
/// over any finite delay. On positions already lost to the owner the choice
/// is arbitrary but deterministic (smallest successor).
inline std::pair<Strategy, Strategy> extract_strategies(const ValueTable& vt) {
    const Arena& arena = vt.arena();
    Strategy cop{Strategy::Owner::cop, {}};
    Strategy robber{Strategy::Owner::robber, {}};
    for (std::uint64_t id = 0, total = arena.size(); id < total; ++id) {
        Position pos = arena.position_at(id);
        if (arena.is_capture(pos)) continue;
        bool cop_owned = pos.turn == Turn::cop;
        std::uint64_t best_id = 0;
        Rank best_rank;
        bool have = false;
        for (const Position& next : arena.successors(pos)) {  // lexicographic order
            Rank r = vt.rank(next);
            bool better = !have || (cop_owned ? r < best_rank : best_rank < r);
            if (better) {
                best_rank = r;
                best_id = arena.index_of(next);
                have = true;
            }
        }
        (cop_owned ? cop : robber).entries.emplace(id, best_id);
    }
    return {std::move(cop), std::move(robber)};
}

struct CopNumberResult {
    std::optional<int> cop_number;  // nullopt: not found up to max_k
    int max_k;
    std::vector<std::pair<int, bool>> per_k;  // (k, cop_win)
};

/// Smallest k <= max_k for which the graph is cop-win. Solves k = 1, 2, ...
/// until the first win; a limit failure reports the k it was hit at.
inline CopNumberResult cop_number(const Graph& g, int max_k, const SolveLimits& limits = {}) {
    if (max_k < 1) throw Error("max_k must be at least 1");
    CopNumberResult result{std::nullopt, max_k, {}};
    for (int k = 1; k <= max_k; ++k) {
        ValueTable vt = [&] {
            try {
                return compute_values(Arena(g, k), limits);
            } catch (const LimitError& e) {
                throw LimitError("at k=" + std::to_string(k) + ": " + e.what());
            }
        }();
        bool win = is_cop_win(vt);
        result.per_k.emplace_back(k, win);
        if (win) {
            result.cop_number = k;
            break;
        }
    }
    return result;
}

}  // namespace cnr
