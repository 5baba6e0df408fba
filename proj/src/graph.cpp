#include "cutscape/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "cutscape/errors.hpp"
#include "cutscape/rng.hpp"

namespace cutscape {

double WeightedGraph::total_weight() const {
    double t = 0.0;
    for (const Edge& e : edges) t += e.w;
    return t;
}

void WeightedGraph::validate() const {
    if (n < 1 || n > 64)
        throw input_error("graph: vertex count must be in [1, 64], got " +
                          std::to_string(n));
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges) {
        if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n)
            throw input_error("graph: edge endpoint out of range");
        if (e.a == e.b) throw input_error("graph: self-loop not allowed");
        if (!(e.w >= 0.0) || !std::isfinite(e.w))
            throw input_error("graph: weights must be finite and >= 0");
        auto key = std::minmax(e.a, e.b);
        if (!seen.insert(key).second)
            throw input_error("graph: duplicate edge (" + std::to_string(e.a) +
                              "," + std::to_string(e.b) + ")");
    }
}

static void check_bits(const WeightedGraph& g, const CutAssignment& s,
                       const char* op) {
    if (s.n != g.n)
        throw input_error(std::string(op) + ": cut has " + std::to_string(s.n) +
                          " bits, graph has " + std::to_string(g.n) +
                          " vertices");
}

double cut_value(const WeightedGraph& g, const CutAssignment& s) {
    check_bits(g, s, "cut_value");
    return cut_value(g, s.bits);
}

double cut_value(const WeightedGraph& g, mask_t bits) {
    double v = 0.0;
    for (const Edge& e : g.edges) {
        if (((bits >> e.a) ^ (bits >> e.b)) & 1) v += e.w;
    }
    return v;
}

double ising_energy(const WeightedGraph& g, const CutAssignment& z) {
    check_bits(g, z, "ising_energy");
    return ising_energy(g, z.bits);
}

double ising_energy(const WeightedGraph& g, mask_t bits) {
    double v = 0.0;
    for (const Edge& e : g.edges) {
        v += (((bits >> e.a) ^ (bits >> e.b)) & 1) ? -e.w : e.w;
    }
    return v;
}

MaxCutResult max_cut_bruteforce(const WeightedGraph& g, int cap) {
    g.validate();
    if (g.n > cap)
        throw cap_error("max_cut_bruteforce: n = " + std::to_string(g.n) +
                        " exceeds cap " + std::to_string(cap) +
                        " (2^n enumeration)");

    // Adjacency lists for Gray-code incremental updates.
    std::vector<std::vector<std::pair<int, double>>> adj(g.n);
    for (const Edge& e : g.edges) {
        adj[e.a].emplace_back(e.b, e.w);
        adj[e.b].emplace_back(e.a, e.w);
    }

    // Vertex 0 stays on side 0; walk the remaining n-1 bits in Gray order.
    mask_t best_mask = 0;
    double best_val = 0.0;
    mask_t cur = 0;
    double cur_val = 0.0;
    const std::uint64_t count =
        g.n >= 2 ? (std::uint64_t{1} << (g.n - 1)) : 1;
    for (std::uint64_t i = 1; i < count; ++i) {
        const int v = std::countr_zero(i) + 1;  // vertex being flipped
        double delta = 0.0;
        for (const auto& [u, w] : adj[v]) {
            // Edge (v,u) leaves the cut if it was crossing, enters otherwise.
            delta += (((cur >> v) ^ (cur >> u)) & 1) ? -w : w;
        }
        cur ^= bit(v);
        cur_val += delta;
        if (cur_val > best_val || (cur_val == best_val && cur < best_mask)) {
            best_val = cur_val;
            best_mask = cur;
        }
    }
    // Recompute the winner directly: the Gray-code walk accumulates rounding
    // error over 2^(n-1) incremental updates. Report the canonical
    // representative (vertex n-1 on side 0).
    CutAssignment best{canonical_cut(best_mask, g.n), g.n};
    return MaxCutResult{cut_value(g, best), best};
}

WeightedGraph generate(const GraphGenerator& gen) {
    if (gen.n < 1 || gen.n > 64)
        throw input_error("generate: n must be in [1, 64]");
    if (gen.weight_hi < gen.weight_lo)
        throw input_error("generate: weight range is empty");

    Rng rng(derive_seed(gen.seed, "graph-weights"));
    WeightedGraph g;
    g.n = gen.n;

    auto draw = [&] { return rng.uniform(gen.weight_lo, gen.weight_hi); };

    switch (gen.kind) {
        case GraphKind::complete:
            for (int a = 0; a < gen.n; ++a)
                for (int b = a + 1; b < gen.n; ++b)
                    g.edges.push_back({a, b, draw()});
            break;
        case GraphKind::path_chain:
            for (int a = 0; a + 1 < gen.n; ++a)
                g.edges.push_back({a, a + 1, draw()});
            break;
        case GraphKind::cycle:
            if (gen.n < 3) throw input_error("generate: cycle needs n >= 3");
            for (int a = 0; a + 1 < gen.n; ++a)
                g.edges.push_back({a, a + 1, draw()});
            g.edges.push_back({0, gen.n - 1, draw()});
            break;
        case GraphKind::k_regular: {
            const int k = gen.degree;
            if (k < 1 || k >= gen.n || (k * gen.n) % 2 != 0)
                throw input_error(
                    "generate: k-regular needs 1 <= k < n and k*n even");
            Rng pair_rng(derive_seed(gen.seed, "graph-pairing"));
            // Incremental stub pairing: every round joins two random stubs
            // whose edge is new and not a loop; a dead end restarts the
            // attempt. Rejecting whole pairings instead would almost never
            // succeed at dense degrees.
            std::vector<std::pair<int, int>> pairs;
            const int max_attempts = 10000;
            bool ok = false;
            for (int attempt = 0; attempt < max_attempts && !ok; ++attempt) {
                std::vector<int> stubs;
                stubs.reserve(static_cast<std::size_t>(gen.n) * k);
                for (int v = 0; v < gen.n; ++v)
                    for (int c = 0; c < k; ++c) stubs.push_back(v);
                std::set<std::pair<int, int>> seen;
                pairs.clear();
                ok = true;
                while (!stubs.empty()) {
                    const auto legal = [&](int u, int v) {
                        return u != v && seen.count(std::minmax(u, v)) == 0;
                    };
                    std::size_t i = 0, j = 0;
                    bool found = false;
                    for (int probe = 0; probe < 64 && !found; ++probe) {
                        i = pair_rng.uniform_index(stubs.size());
                        j = pair_rng.uniform_index(stubs.size());
                        found = i != j && legal(stubs[i], stubs[j]);
                    }
                    if (!found) {
                        // Uniform draw over every remaining legal stub pair.
                        std::uint64_t count = 0;
                        for (std::size_t p = 0; p + 1 < stubs.size(); ++p)
                            for (std::size_t q = p + 1; q < stubs.size(); ++q)
                                if (legal(stubs[p], stubs[q])) ++count;
                        if (count == 0) {
                            ok = false;  // dead end; retry from scratch
                            break;
                        }
                        std::uint64_t pick = pair_rng.uniform_index(count);
                        for (std::size_t p = 0; p + 1 < stubs.size() && !found;
                             ++p)
                            for (std::size_t q = p + 1; q < stubs.size(); ++q)
                                if (legal(stubs[p], stubs[q]) && pick-- == 0) {
                                    i = p;
                                    j = q;
                                    found = true;
                                    break;
                                }
                    }
                    pairs.push_back(std::minmax(stubs[i], stubs[j]));
                    seen.insert(pairs.back());
                    if (i < j) std::swap(i, j);  // drop the larger index first
                    stubs[i] = stubs.back();
                    stubs.pop_back();
                    stubs[j] = stubs.back();
                    stubs.pop_back();
                }
            }
            if (!ok)
                throw input_error(
                    "generate: pairing model failed to produce a simple "
                    "k-regular graph");
            std::sort(pairs.begin(), pairs.end());
            for (const auto& [a, b] : pairs) g.edges.push_back({a, b, draw()});
            break;
        }
    }
    g.validate();
    return g;
}

WeightedGraph read_graph(std::istream& in) {
    WeightedGraph g;
    std::size_t m = 0;
    if (!(in >> g.n >> m)) throw input_error("graph file: bad header line");
    g.edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Edge e;
        if (!(in >> e.a >> e.b >> e.w))
            throw input_error("graph file: bad edge line " +
                              std::to_string(i + 1));
        g.edges.push_back(e);
    }
    g.validate();
    return g;
}

WeightedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << g.n << " " << g.edges.size() << "\n";
    char buf[64];
    for (const Edge& e : g.edges) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g\n", e.a, e.b, e.w);
        out << buf;
    }
}

void write_graph_file(const std::string& path, const WeightedGraph& g) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open for writing: " + path);
    write_graph(out, g);
}

}  // namespace cutscape
