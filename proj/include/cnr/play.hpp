#pragma once

#include <memory>
#include <random>

#include "cnr/solver.hpp"

namespace cnr {

/// A behavior returned an illegal move (or a transcript contains an illegal
/// transition). Names the offender and the position. CLI exit code 4.
struct IllegalMoveError : Error {
    IllegalMoveError(std::string offender, const Position& at, const std::string& what)
        : Error(offender + " at " + at.str() + ": " + what),
          offender(std::move(offender)),
          position(at) {}
    std::string offender;
    Position position;
};

/// A realized trajectory through the arena, starting at the start node.
/// Either ends in the first capture position of the sequence or was
/// truncated after max_rounds complete rounds.
struct Play {
    enum class Outcome { captured, ongoing };
    std::vector<Position> moves;
    Outcome outcome = Outcome::ongoing;
    std::uint64_t length_rounds = 0;  // capture round, or rounds completed

    std::uint64_t plies() const { return moves.size() - 1; }
    bool captured() const { return outcome == Outcome::captured; }
};

/// A move chooser. Receives the full history (positions so far, ending in
/// the current one) so genuinely history-dependent strategies can be
/// scripted; memoryless behaviors simply ignore everything but the back.
struct Behavior {
    std::string name;
    std::function<Position(const std::vector<Position>& history, const Position& current)> choose;
};

/// Plays out cop vs robber from the start node. Capture is checked after
/// every half-move, so both "cop steps onto robber" and "robber steps onto
/// cop" (including the placement suicide) terminate mid-round. Behaviors are
/// policed: an illegal choice raises IllegalMoveError naming the offender.
inline Play run_play(const Arena& arena, const Behavior& cop, const Behavior& robber,
                     std::uint64_t max_rounds) {
    Play play;
    play.moves.push_back(Arena::initial_position());
    const std::uint64_t max_plies = 2 * max_rounds + 2;  // placements + max_rounds rounds

    while (true) {
        const Position& current = play.moves.back();
        if (arena.is_capture(current)) {
            play.outcome = Play::Outcome::captured;
            play.length_rounds = plies_to_rounds(play.plies());
            return play;
        }
        if (play.plies() >= max_plies) {
            play.outcome = Play::Outcome::ongoing;
            play.length_rounds = max_rounds;
            return play;
        }
        const bool cop_to_move = current.turn == Turn::cop;
        const Behavior& mover = cop_to_move ? cop : robber;
        Position next = mover.choose(play.moves, current);
        auto legal = arena.successors(current);
        if (!std::binary_search(legal.begin(), legal.end(), next))
            throw IllegalMoveError(std::string(cop_to_move ? "cop " : "robber ") + mover.name,
                                   current, "illegal move to " + next.str());
        play.moves.push_back(std::move(next));
    }
}

/// Validates a recorded trajectory against the arena and rebuilds the Play.
/// Rejects empty transcripts, a wrong start node, transitions that are not
/// arena edges, and moves played past a capture.
inline Play replay_transcript(const Arena& arena, const std::vector<Position>& transcript) {
    if (transcript.empty()) throw Error("empty transcript");
    if (!(transcript.front() == Arena::initial_position()))
        throw IllegalMoveError("transcript", transcript.front(),
                               "index 0: play must start at the start node");
    Play play;
    play.moves.push_back(transcript.front());
    for (size_t i = 1; i < transcript.size(); ++i) {
        const Position& current = play.moves.back();
        std::string offender = current.turn == Turn::cop ? "cop" : "robber";
        if (arena.is_capture(current))
            throw IllegalMoveError(offender, current,
                                   "index " + std::to_string(i) + ": move after capture");
        auto legal = arena.successors(current);
        if (!std::binary_search(legal.begin(), legal.end(), transcript[i]))
            throw IllegalMoveError(offender, current,
                                   "index " + std::to_string(i) + ": illegal transition to " +
                                       transcript[i].str());
        play.moves.push_back(transcript[i]);
    }
    if (arena.is_capture(play.moves.back())) {
        play.outcome = Play::Outcome::captured;
        play.length_rounds = plies_to_rounds(play.plies());
    } else {
        play.outcome = Play::Outcome::ongoing;
        play.length_rounds = play.plies() >= 2 ? (play.plies() - 2) / 2 : 0;
    }
    return play;
}

// ---------------------------------------------------------------------------
// Stock behaviors

/// Follows an extracted memoryless strategy.
inline Behavior strategy_behavior(std::shared_ptr<const ValueTable> vt, std::shared_ptr<const Strategy> s,
                                  std::string name = "optimal") {
    return Behavior{std::move(name), [vt, s](const auto&, const Position& current) {
                        const Arena& a = vt->arena();
                        return a.position_at(s->move_from(a.index_of(current)));
                    }};
}

/// Picks uniformly among legal moves with a private seeded generator.
inline Behavior random_behavior(const Arena& arena, std::uint64_t seed, std::string name = "") {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    if (name.empty()) name = "random:" + std::to_string(seed);
    return Behavior{std::move(name), [&arena, rng](const auto&, const Position& current) {
                        auto succ = arena.successors(current);
                        std::uniform_int_distribution<size_t> pick(0, succ.size() - 1);
                        return succ[pick(*rng)];
                    }};
}

/// Cop that places its whole team on one vertex and never moves again.
/// Exists mainly as a deliberately bad opponent for detector fixtures.
inline Behavior stationary_cop_behavior(const Arena& arena, Vertex v) {
    return Behavior{"stationary:" + std::to_string(v),
                    [&arena, v](const auto&, const Position& current) {
                        if (!current.cops_placed())
                            return Position{std::vector<Vertex>(arena.cop_count(), v),
                                            std::nullopt, Turn::robber};
                        return Position{current.cops, current.robber, Turn::robber};
                    }};
}

/// Robber walking its safe moves round-robin (placement picks the highest
/// cop-free vertex). Never steps onto a cop, so against a cop that cannot
/// close in it wanders forever.
inline Behavior cycling_robber_behavior(const Arena& arena) {
    auto step = std::make_shared<std::uint64_t>(0);
    return Behavior{"cycling", [&arena, step](const auto&, const Position& current) {
                        auto succ = arena.successors(current);
                        std::vector<Position> safe;
                        for (const Position& s : succ)
                            if (!arena.is_capture(s)) safe.push_back(s);
                        if (safe.empty()) return succ.back();  // cornered
                        if (!current.robber_placed()) return safe.back();
                        std::vector<Position> moving;
                        for (const Position& s : safe)
                            if (s.robber != current.robber) moving.push_back(s);
                        const auto& pool = moving.empty() ? safe : moving;
                        return pool[(*step)++ % pool.size()];
                    }};
}

/// Plays a fixed per-side script: each robber entry is a vertex, each cop
/// entry a full team tuple. The script is consumed one entry per own turn;
/// running out or naming an impossible move is the scripter's fault.
inline Behavior scripted_cop_behavior(std::vector<std::vector<Vertex>> script,
                                      std::string name = "scripted-cop") {
    auto turn = std::make_shared<size_t>(0);
    return Behavior{std::move(name),
                    [script = std::move(script), turn](const auto&, const Position& current) {
                        if (*turn >= script.size())
                            throw IllegalMoveError("scripted-cop", current, "script exhausted");
                        std::vector<Vertex> cops = script[(*turn)++];
                        std::sort(cops.begin(), cops.end());
                        return Position{std::move(cops), current.robber, Turn::robber};
                    }};
}

inline Behavior scripted_robber_behavior(std::vector<Vertex> script,
                                         std::string name = "scripted-robber") {
    auto turn = std::make_shared<size_t>(0);
    return Behavior{std::move(name),
                    [script = std::move(script), turn](const auto&, const Position& current) {
                        if (*turn >= script.size())
                            throw IllegalMoveError("scripted-robber", current, "script exhausted");
                        return Position{current.cops, script[(*turn)++], Turn::cop};
                    }};
}

}  // namespace cnr
