#pragma once

#include <optional>
#include <string>

#include "cnr/solver.hpp"

namespace testutil {

/// Full-sweep check of the ValueTable invariants. Returns the first
/// violation as a message, or nullopt when the table is sound:
///   - rank 0 exactly on capture positions,
///   - cop-turn rank = 1 + min successor rank,
///   - robber-turn rank = 1 + max successor rank (infinite absorbing),
/// which together certify the finite/infinite partition is consistent.
inline std::optional<std::string> value_table_violation(const cnr::ValueTable& vt) {
    using namespace cnr;
    const Arena& arena = vt.arena();
    for (std::uint64_t id = 0; id < arena.size(); ++id) {
        Position pos = arena.position_at(id);
        Rank r = vt.rank_at(id);
        if (arena.is_capture(pos)) {
            if (!(r == Rank::finite(0))) return "capture " + pos.str() + " has nonzero rank";
            continue;
        }
        if (r == Rank::finite(0)) return "non-capture " + pos.str() + " has rank 0";
        Rank best = pos.turn == Turn::cop ? Rank::infinite() : Rank::finite(0);
        bool robber_escapes = false;
        for (const Position& next : arena.successors(pos)) {
            Rank s = vt.rank(next);
            if (pos.turn == Turn::cop) {
                if (s < best) best = s;
            } else if (!s.is_finite()) {
                robber_escapes = true;
            } else if (best < s) {
                best = s;
            }
        }
        Rank expected = Rank::infinite();
        if (pos.turn == Turn::cop) {
            if (best.is_finite()) expected = Rank::finite(best.plies() + 1);
        } else if (!robber_escapes) {
            expected = Rank::finite(best.plies() + 1);
        }
        if (!(r == expected)) return "local optimality fails at " + pos.str();
    }
    return std::nullopt;
}

}  // namespace testutil
