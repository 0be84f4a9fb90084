#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>

#include "cnr/graph.hpp"

namespace cnr {

enum class Turn : std::uint8_t { cop, robber };

inline char turn_letter(Turn t) { return t == Turn::cop ? 'C' : 'R'; }

/// Game position (x, y, p): cop multiset, robber vertex, player to move.
/// Unplaced sides are nullopt. Exactly three shapes occur:
///   (unplaced, unplaced, cop)  - start of the game
///   (placed, unplaced, robber) - cops placed, robber about to place
///   (placed, placed, either)
/// Placed cop tuples are kept sorted ascending (canonical multiset form).
struct Position {
    std::optional<std::vector<Vertex>> cops;
    std::optional<Vertex> robber;
    Turn turn = Turn::cop;

    bool cops_placed() const { return cops.has_value(); }
    bool robber_placed() const { return robber.has_value(); }
    bool fully_placed() const { return cops_placed() && robber_placed(); }

    bool operator==(const Position& o) const {
        return turn == o.turn && cops == o.cops && robber == o.robber;
    }

    // Lexicographic order on (cops, robber, turn), unplaced first, C before R.
    // Position ids follow this order, as does all successor tie-breaking.
    std::strong_ordering operator<=>(const Position& o) const {
        if (auto c = cops <=> o.cops; c != 0) return c;
        if (auto c = robber <=> o.robber; c != 0) return c;
        return turn <=> o.turn;
    }

    std::string str() const {
        std::string s = "(";
        if (cops) {
            for (size_t i = 0; i < cops->size(); ++i)
                s += (i ? "," : "") + std::to_string((*cops)[i]);
        } else {
            s += "-";
        }
        s += robber ? "|" + std::to_string(*robber) : "|-";
        s += std::string("|") + turn_letter(turn) + ")";
        return s;
    }
};

inline std::ostream& operator<<(std::ostream& os, const Position& p) { return os << p.str(); }

struct PositionHash {
    size_t operator()(const Position& p) const {
        size_t h = p.turn == Turn::cop ? 0x9e3779b97f4a7c15ull : 0xc2b2ae3d27d4eb4full;
        auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
        mix(p.robber ? static_cast<size_t>(*p.robber) + 2 : 1);
        if (p.cops)
            for (Vertex c : *p.cops) mix(static_cast<size_t>(c) + 2);
        else
            mix(1);
        return h;
    }
};

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw LimitError("position count overflows 64 bits");
    return r;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw LimitError("position count overflows 64 bits");
    return r;
}

/// Ranks and unranks size-k multisets over {0..n-1} in lexicographic order
/// of their sorted tuples: id 0 is (0,...,0), the last is (n-1,...,n-1).
class MultisetCodec {
public:
    MultisetCodec(int n, int k) : n_(n), k_(k), count_(k + 1, std::vector<std::uint64_t>(n + 1)) {
        // count_[j][m] = #multisets of size j over m symbols = C(m+j-1, j)
        for (int m = 0; m <= n; ++m) count_[0][m] = 1;
        for (int j = 1; j <= k; ++j)
            for (int m = 1; m <= n; ++m)
                count_[j][m] = checked_add(count_[j - 1][m], count_[j][m - 1]);
    }

    std::uint64_t count() const { return count_[k_][n_]; }

    std::uint64_t rank(const std::vector<Vertex>& tuple) const {
        std::uint64_t id = 0;
        int lo = 0, remaining = k_;
        for (Vertex x : tuple) {
            // multisets whose first remaining element lies in [lo, x)
            id += count_[remaining][n_ - lo] - count_[remaining][n_ - x];
            lo = x;
            --remaining;
        }
        return id;
    }

    std::vector<Vertex> unrank(std::uint64_t id) const {
        std::vector<Vertex> tuple;
        tuple.reserve(k_);
        int lo = 0, remaining = k_;
        while (remaining > 0) {
            std::uint64_t with_lo = count_[remaining - 1][n_ - lo];
            if (id < with_lo) {
                tuple.push_back(lo);
                --remaining;
            } else {
                id -= with_lo;
                ++lo;
            }
        }
        return tuple;
    }

private:
    int n_, k_;
    std::vector<std::vector<std::uint64_t>> count_;
};

}  // namespace detail

/// Total number of positions: one start node, one robber-placement node per
/// cop multiset, and a (robber vertex x turn) pair per multiset; with
/// M = C(n+k-1, k) cop multisets this is M*n*2 + M + 1 (2n^2 + n + 1 at k=1).
inline std::uint64_t position_count(int n, int k) {
    if (n < 1 || k < 1) throw Error("position_count requires n >= 1 and k >= 1");
    std::uint64_t m = detail::MultisetCodec(n, k).count();
    return detail::checked_add(detail::checked_mul(m, 2 * static_cast<std::uint64_t>(n) + 1), 1);
}

/// The arena of a cops-and-robbers instance: a graph plus a cop count k.
/// Successor and predecessor lists are generated on demand; nothing is
/// materialized. Position ids are dense integers in lexicographic position
/// order, so id 0 is the start node and ids are stable across runs.
class Arena {
public:
    Arena(Graph g, int cop_count)
        : graph_(std::move(g)), k_(cop_count), codec_(graph_.vertex_count(), cop_count) {
        if (k_ < 1) throw Error("cop count must be at least 1");
    }

    const Graph& graph() const { return graph_; }
    int cop_count() const { return k_; }
    std::uint64_t size() const { return position_count(graph_.vertex_count(), k_); }

    static Position initial_position() { return Position{}; }

    bool is_capture(const Position& pos) const {
        if (!pos.fully_placed()) return false;
        return std::binary_search(pos.cops->begin(), pos.cops->end(), *pos.robber);
    }

    /// Throws unless pos is one of the three legal shapes for this arena.
    void validate(const Position& pos) const {
        const int n = graph_.vertex_count();
        if (pos.cops) {
            if (static_cast<int>(pos.cops->size()) != k_)
                throw Error("position has " + std::to_string(pos.cops->size()) +
                            " cops, arena expects " + std::to_string(k_));
            if (!std::is_sorted(pos.cops->begin(), pos.cops->end()))
                throw Error("cop tuple not in canonical sorted form: " + pos.str());
            for (Vertex c : *pos.cops)
                if (c < 0 || c >= n) throw Error("cop vertex out of range: " + pos.str());
        }
        if (pos.robber && (*pos.robber < 0 || *pos.robber >= n))
            throw Error("robber vertex out of range: " + pos.str());
        bool ok = (!pos.cops && !pos.robber && pos.turn == Turn::cop) ||
                  (pos.cops && !pos.robber && pos.turn == Turn::robber) ||
                  (pos.cops && pos.robber);
        if (!ok) throw Error("position has an impossible shape: " + pos.str());
    }

    /// Legal moves, sorted lexicographically and duplicate-free.
    /// Capture positions are sinks and may not be expanded.
    std::vector<Position> successors(const Position& pos) const {
        validate(pos);
        if (is_capture(pos)) throw Error("successor request on a capture position " + pos.str());
        const int n = graph_.vertex_count();
        std::vector<Position> out;

        if (!pos.cops_placed()) {
            // cop team placement: every k-multiset of vertices
            std::uint64_t m = codec_.count();
            out.reserve(m);
            for (std::uint64_t i = 0; i < m; ++i)
                out.push_back(Position{codec_.unrank(i), std::nullopt, Turn::robber});
            return out;  // unrank order is already lexicographic
        }
        if (!pos.robber_placed()) {
            out.reserve(n);
            for (Vertex y = 0; y < n; ++y) out.push_back(Position{pos.cops, y, Turn::cop});
            return out;
        }
        if (pos.turn == Turn::cop) {
            out = cop_team_moves(*pos.cops, *pos.robber, Turn::robber);
        } else {
            for (Vertex y : graph_.closed_neighborhood(*pos.robber))
                out.push_back(Position{pos.cops, y, Turn::cop});
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Reverse move generation: all non-capture positions that have pos as a
    /// successor. Closed neighborhoods are symmetric, so the cop-side
    /// predecessors of a robber-turn position are exactly the cop team moves
    /// applied backwards.
    std::vector<Position> predecessors(const Position& pos) const {
        validate(pos);
        std::vector<Position> out;
        if (!pos.cops_placed()) return out;  // start node has no predecessors
        if (!pos.robber_placed()) {
            out.push_back(initial_position());
            return out;
        }
        if (pos.turn == Turn::cop) {
            // robber placed or moved here
            out.push_back(Position{pos.cops, std::nullopt, Turn::robber});
            for (Vertex y : graph_.closed_neighborhood(*pos.robber)) {
                Position prev{pos.cops, y, Turn::robber};
                if (!is_capture(prev)) out.push_back(prev);
            }
        } else {
            for (Position& prev : cop_team_moves(*pos.cops, *pos.robber, Turn::cop))
                if (!is_capture(prev)) out.push_back(std::move(prev));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::uint64_t index_of(const Position& pos) const {
        validate(pos);
        if (!pos.cops_placed()) return 0;
        const std::uint64_t n = graph_.vertex_count();
        std::uint64_t block = 1 + codec_.rank(*pos.cops) * (2 * n + 1);
        if (!pos.robber_placed()) return block;
        return block + 1 + 2 * static_cast<std::uint64_t>(*pos.robber) +
               (pos.turn == Turn::robber ? 1 : 0);
    }

    Position position_at(std::uint64_t id) const {
        if (id >= size()) throw Error("position id out of range");
        if (id == 0) return initial_position();
        const std::uint64_t n = graph_.vertex_count();
        std::uint64_t block = (id - 1) / (2 * n + 1);
        std::uint64_t rest = (id - 1) % (2 * n + 1);
        Position pos;
        pos.cops = codec_.unrank(block);
        if (rest == 0) {
            pos.turn = Turn::robber;
            return pos;
        }
        pos.robber = static_cast<Vertex>((rest - 1) / 2);
        pos.turn = (rest - 1) % 2 == 0 ? Turn::cop : Turn::robber;
        return pos;
    }

    /// Number of successors without generating them.
    std::uint64_t out_degree(const Position& pos) const {
        validate(pos);
        if (is_capture(pos)) return 0;
        if (!pos.cops_placed()) return codec_.count();
        if (!pos.robber_placed()) return graph_.vertex_count();
        if (pos.turn == Turn::robber)
            return graph_.closed_neighborhood(*pos.robber).size();
        return successors(pos).size();  // distinct multisets need generation
    }

    /// Writes every node and edge of the move digraph.
    /// Node lines: "N <id> cops=<c1,..,ck|-> robber=<v|-> turn=<C|R> capture=<0|1>"
    /// Edge lines: "E <from> <to>". Returns the number of edges written.
    std::uint64_t export_move_digraph(std::ostream& sink, std::uint64_t max_positions) const {
        if (size() > max_positions)
            throw LimitError("arena has " + std::to_string(size()) +
                             " positions, limit is " + std::to_string(max_positions));
        const std::uint64_t total = size();
        for (std::uint64_t id = 0; id < total; ++id) {
            Position pos = position_at(id);
            sink << "N " << id << " cops=";
            if (pos.cops) {
                for (size_t i = 0; i < pos.cops->size(); ++i)
                    sink << (i ? "," : "") << (*pos.cops)[i];
            } else {
                sink << '-';
            }
            sink << " robber=";
            if (pos.robber)
                sink << *pos.robber;
            else
                sink << '-';
            sink << " turn=" << turn_letter(pos.turn) << " capture=" << (is_capture(pos) ? 1 : 0)
                 << '\n';
        }
        std::uint64_t edges = 0;
        for (std::uint64_t id = 0; id < total; ++id) {
            Position pos = position_at(id);
            if (is_capture(pos)) continue;
            for (const Position& next : successors(pos)) {
                sink << "E " << id << ' ' << index_of(next) << '\n';
                ++edges;
            }
        }
        if (!sink) throw Error("write failure while exporting move digraph");
        return edges;
    }

private:
    // All multisets reachable by moving every cop within its closed
    // neighborhood in one simultaneous step, canonicalized and paired with
    // the given robber vertex and turn. May contain duplicates; callers sort.
    std::vector<Position> cop_team_moves(const std::vector<Vertex>& cops, Vertex robber,
                                         Turn next_turn) const {
        std::vector<Position> out;
        std::vector<Vertex> current(cops.size());
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == cops.size()) {
                std::vector<Vertex> sorted = current;
                std::sort(sorted.begin(), sorted.end());
                out.push_back(Position{std::move(sorted), robber, next_turn});
                return;
            }
            for (Vertex t : graph_.closed_neighborhood(cops[i])) {
                current[i] = t;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
        return out;
    }

    Graph graph_;
    int k_;
    detail::MultisetCodec codec_;
};

}  // namespace cnr
