#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cnr {

using Vertex = int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad input (graph files, transcripts, scripted moves). CLI exit code 2.
struct ParseError : Error {
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

/// A configured resource limit was exceeded. CLI exit code 3.
struct LimitError : Error {
    using Error::Error;
};

/// Finite simple undirected graph on vertices 0..n-1.
/// Immutable after construction; adjacency lists are sorted and loop-free.
class Graph {
public:
    Graph(int n, std::vector<std::pair<Vertex, Vertex>> edge_list)
        : n_(n), edges_(std::move(edge_list)), adj_(static_cast<size_t>(std::max(n, 0))) {
        if (n_ < 1) throw Error("graph must have at least one vertex");
        for (auto& [u, v] : edges_) {
            if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
            if (u < 0 || v < 0 || u >= n_ || v >= n_)
                throw Error("edge endpoint out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw Error("duplicate edge");
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        closed_ = adj_;
        for (Vertex v = 0; v < n_; ++v) {
            closed_[v].push_back(v);
            std::sort(adj_[v].begin(), adj_[v].end());
            std::sort(closed_[v].begin(), closed_[v].end());
        }
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }

    const std::vector<Vertex>& neighbors(Vertex v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    /// N[v] = neighbors of v plus v itself; the legal destination set of a
    /// single move (staying in place is always legal).
    const std::vector<Vertex>& closed_neighborhood(Vertex v) const {
        check_vertex(v);
        return closed_[v];
    }

    bool adjacent_or_equal(Vertex u, Vertex v) const {
        const auto& nb = closed_neighborhood(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_)
            throw Error("vertex " + std::to_string(v) + " out of range [0, " +
                        std::to_string(n_) + ")");
    }

    int n_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::vector<Vertex>> closed_;
};

inline const std::vector<Vertex>& closed_neighborhood(const Graph& g, Vertex v) {
    return g.closed_neighborhood(v);
}

/// Parses the edge-list format: '#' lines are comments, the first data line
/// is "n m", followed by exactly m lines "u v". Errors carry line numbers.
inline Graph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;

    auto data_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            return true;
        }
        return false;
    };

    if (!data_line()) throw ParseError(lineno, "missing header line \"n m\"");
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra))
            throw ParseError(lineno, "malformed header, expected \"n m\"");
        if (n < 1) throw ParseError(lineno, "vertex count must be at least 1");
        if (m < 0) throw ParseError(lineno, "negative edge count");
    }

    while (data_line()) {
        long long u, v;
        std::istringstream es(line);
        std::string extra;
        if (!(es >> u >> v) || (es >> extra))
            throw ParseError(lineno, "malformed edge line, expected \"u v\"");
        if (static_cast<long long>(edges.size()) == m)
            throw ParseError(lineno, "more than the declared " + std::to_string(m) + " edges");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(lineno, "vertex index out of range [0, " + std::to_string(n) + ")");
        if (u == v) throw ParseError(lineno, "self-loop at vertex " + std::to_string(u));
        auto lo = static_cast<Vertex>(std::min(u, v));
        auto hi = static_cast<Vertex>(std::max(u, v));
        if (std::find(edges.begin(), edges.end(), std::make_pair(lo, hi)) != edges.end())
            throw ParseError(lineno,
                             "duplicate edge " + std::to_string(lo) + " " + std::to_string(hi));
        edges.emplace_back(lo, hi);
    }
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError(lineno, "expected " + std::to_string(m) + " edges, got " +
                                     std::to_string(edges.size()));
    return Graph(static_cast<int>(n), std::move(edges));
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

/// Canonical edge-list form: header, then edges with u < v in sorted order.
inline void serialize_graph(const Graph& g, std::ostream& out) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    serialize_graph(g, out);
    return out.str();
}

}  // namespace cnr
