#pragma once

#include <json.hpp>

#include "cnr/oracle.hpp"

namespace cnr {

using json = nlohmann::ordered_json;

// "inf" is serialized as a string, never a number, so round-trips are
// unambiguous.

inline json position_to_json(const Position& pos) {
    json j;
    j["cops"] = pos.cops ? json(*pos.cops) : json(nullptr);
    j["robber"] = pos.robber ? json(*pos.robber) : json(nullptr);
    j["turn"] = std::string(1, turn_letter(pos.turn));
    return j;
}

inline Position position_from_json(const json& j) {
    Position pos;
    if (!j.at("cops").is_null()) pos.cops = j.at("cops").get<std::vector<Vertex>>();
    if (!j.at("robber").is_null()) pos.robber = j.at("robber").get<Vertex>();
    std::string t = j.at("turn").get<std::string>();
    if (t != "C" && t != "R") throw Error("turn must be \"C\" or \"R\", got \"" + t + "\"");
    pos.turn = t == "C" ? Turn::cop : Turn::robber;
    return pos;
}

inline json rank_to_json(const Rank& r) {
    return r.is_finite() ? json(r.plies()) : json("inf");
}

inline json result_record(const ValueTable& vt) {
    const Arena& arena = vt.arena();
    json j;
    j["n"] = arena.graph().vertex_count();
    j["k"] = arena.cop_count();
    j["cop_win"] = is_cop_win(vt);
    j["capture_time"] = rank_to_json(capture_time(vt));
    j["initial_rank_plies"] = rank_to_json(vt.rank(Arena::initial_position()));
    j["positions"] = arena.size();
    return j;
}

inline json strategy_to_json(const ValueTable& vt, const Strategy& s) {
    const Arena& arena = vt.arena();
    json entries = json::array();
    for (auto [from, to] : s.entries) {
        json e = position_to_json(arena.position_at(from));
        e["move"] = position_to_json(arena.position_at(to));
        entries.push_back(std::move(e));
    }
    json j;
    j["k"] = arena.cop_count();
    j["owner"] = s.owner == Strategy::Owner::cop ? "cop" : "robber";
    j["entries"] = std::move(entries);
    return j;
}

inline json play_to_json(const Play& play, int k) {
    json moves = json::array();
    for (const Position& pos : play.moves) moves.push_back(position_to_json(pos));
    json j;
    j["k"] = k;
    j["moves"] = std::move(moves);
    j["outcome"] = {{"type", play.captured() ? "captured" : "ongoing"},
                    {"round", play.length_rounds}};
    j["length"] = play.length_rounds;
    return j;
}

inline std::vector<Position> transcript_from_json(const json& j) {
    std::vector<Position> moves;
    for (const json& m : j.at("moves")) moves.push_back(position_from_json(m));
    return moves;
}

inline json report_to_json(const VerificationReport& report) {
    json j;
    j["claim"] = report.claim;
    j["graph"] = report.instance;
    j["n"] = report.n;
    j["k"] = report.k;
    j["pass"] = report.passed();
    if (report.status == VerificationReport::Status::skipped) j["skipped"] = true;
    j["detail"] = report.detail;
    j["witness"] = report.witness ? play_to_json(*report.witness, report.k) : json(nullptr);
    j["seeds"] = report.seeds;
    return j;
}

/// Scripted side: {"moves": [...]} where each robber entry is a vertex and
/// each cop entry an array of k vertices.
inline Behavior behavior_from_script_json(const json& j, Turn side) {
    const json& moves = j.at("moves");
    if (side == Turn::robber) {
        std::vector<Vertex> script;
        for (const json& m : moves) script.push_back(m.get<Vertex>());
        return scripted_robber_behavior(std::move(script));
    }
    std::vector<std::vector<Vertex>> script;
    for (const json& m : moves) script.push_back(m.get<std::vector<Vertex>>());
    return scripted_cop_behavior(std::move(script));
}

}  // namespace cnr
