#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "cutscape/errors.hpp"
#include "cutscape/flipsearch.hpp"
#include "cutscape/landscape.hpp"
#include "test_util.hpp"

using namespace cutscape;

namespace {

std::vector<mask_t> singleton_masks(int n) {
    std::vector<mask_t> m;
    for (int i = 0; i < n; ++i) m.push_back(bit(i));
    return m;
}

// Independent statement of the fixed-point condition on raw energies.
bool no_improving_flip(const WeightedGraph& g, std::span<const mask_t> masks,
                       mask_t z) {
    for (const mask_t m : masks)
        if (cut_value(g, z ^ m) > cut_value(g, z)) return false;
    return true;
}

std::set<mask_t> fixed_masks(const WeightedGraph& g,
                             std::span<const mask_t> masks) {
    std::set<mask_t> out;
    for (const CutAssignment& c : fixed_point_set(g, masks)) out.insert(c.bits);
    return out;
}

}  // namespace

TEST_CASE("triangle with singleton moves always ends at cut 2") {
    WeightedGraph k3;
    k3.n = 3;
    k3.edges = {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}};
    const std::vector<mask_t> masks = singleton_masks(3);
    for (const FlipPolicyKind kind :
         {FlipPolicyKind::uniform_random, FlipPolicyKind::first_improvement,
          FlipPolicyKind::greedy}) {
        for (mask_t start = 0; start < 8; ++start) {
            const FlipResult r = flip_search(
                k3, masks, CutAssignment{start, 3}, {kind, 77, 1000});
            CHECK(r.cut_value == 2.0);
            CHECK(r.converged);
        }
    }
}

TEST_CASE("start at a max cut: zero accepted flips") {
    Rng rng(401);
    const WeightedGraph g = test_util::random_graph(rng, 7, 0.6, 0.1, 5.0);
    const CutAssignment best = max_cut_bruteforce(g).argmax;
    const std::vector<mask_t> masks = singleton_masks(7);
    for (const FlipPolicyKind kind :
         {FlipPolicyKind::uniform_random, FlipPolicyKind::first_improvement,
          FlipPolicyKind::greedy}) {
        const FlipResult r = flip_search(g, masks, best, {kind, 5, 100});
        CHECK(r.trace.empty());
        CHECK(r.final.bits == best.bits);
        CHECK(r.converged);
    }
}

TEST_CASE("accepted flips strictly increase the cut value") {
    Rng rng(402);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 5 + static_cast<int>(rng.uniform_index(4));
        const WeightedGraph g = test_util::random_graph(rng, n, 0.5, 0.1, 5.0);
        const Ansatz a = test_util::random_x_ansatz(rng, n, 6);
        const mask_t start = rng.next_u64() & full_mask(n);
        const FlipPolicyKind kind = static_cast<FlipPolicyKind>(trial % 3);
        const FlipResult r = flip_search(g, a, CutAssignment{start, n},
                                         {kind, rng.next_u64(), 100000});
        double prev = cut_value(g, start);
        for (const FlipStep& s : r.trace) {
            CHECK(s.cut_after > prev);
            prev = s.cut_after;
        }
        CHECK(r.cut_value == doctest::Approx(prev).epsilon(1e-12));
        CHECK(r.cut_value == doctest::Approx(cut_value(g, r.final.bits)));
    }
}

TEST_CASE("every policy terminates inside the fixed-point set") {
    Rng rng(403);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 5 + static_cast<int>(rng.uniform_index(3));
        const WeightedGraph g = test_util::random_graph(rng, n, 0.6, 0.1, 5.0);
        const Ansatz a = test_util::random_x_ansatz(rng, n, 5);
        const std::vector<mask_t> masks = x_masks(a);
        const std::set<mask_t> fixed = fixed_masks(g, masks);
        for (const FlipPolicyKind kind :
             {FlipPolicyKind::uniform_random,
              FlipPolicyKind::first_improvement, FlipPolicyKind::greedy}) {
            const mask_t start = rng.next_u64() & full_mask(n);
            const FlipResult r = flip_search(g, masks, CutAssignment{start, n},
                                             {kind, rng.next_u64(), 100000});
            CHECK(r.converged);
            CHECK(fixed.count(canonical_cut(r.final.bits, n)) == 1);
        }
    }
}

TEST_CASE("unweighted graphs: accepted flips within the move-edge budget") {
    Rng rng(404);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 6 + static_cast<int>(rng.uniform_index(3));
        WeightedGraph g = test_util::random_graph(rng, n, 0.5);
        for (Edge& e : g.edges) e.w = 1.0;
        const Ansatz a = test_util::random_x_ansatz(rng, n, 6);
        const mask_t start = rng.next_u64() & full_mask(n);
        const FlipPolicyKind kind = static_cast<FlipPolicyKind>(trial % 3);
        const FlipResult r = flip_search(g, a, CutAssignment{start, n},
                                         {kind, rng.next_u64(), 1000000});
        CHECK(r.converged);
        CHECK(r.trace.size() <= x_masks(a).size() * g.edges.size());
    }
}

TEST_CASE("fixed points match the raw no-improving-flip condition") {
    Rng rng(405);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_index(7));  // 4..10
        const WeightedGraph g = test_util::random_graph(rng, n, 0.5, 0.1, 5.0);
        const Ansatz a = test_util::random_x_ansatz(rng, n, 5);
        const std::vector<mask_t> masks = x_masks(a);
        const std::set<mask_t> fixed = fixed_masks(g, masks);
        const mask_t count = bit(n - 1);
        for (mask_t z = 0; z < count; ++z)
            CHECK(fixed.count(z) ==
                  (no_improving_flip(g, masks, z) ? 1u : 0u));
    }
}

TEST_CASE("fixed points are the landscape sweep's minima") {
    Rng rng(406);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_index(5));
        const WeightedGraph g = test_util::random_graph(rng, n, 0.6, 0.1, 5.0);
        const Ansatz a = trial % 2 == 0 ? classical_ansatz(n)
                                        : test_util::random_x_ansatz(rng, n, 6);
        const std::set<mask_t> fixed = fixed_masks(g, x_masks(a));
        std::set<mask_t> minima;
        for (const EigenstateReport& r : classify_all_eigenstates(g, a).reports)
            if (r.cls == CutClass::global_min || r.cls == CutClass::local_min)
                minima.insert(r.cut);
        CHECK(fixed == minima);
    }
}

TEST_CASE("full nonsymmetric family: fixed points are exactly the max cuts") {
    Rng rng(407);
    for (int n : {4, 5, 6}) {
        WeightedGraph g;
        g.n = n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                g.edges.push_back({i, j, rng.uniform(0.1, 5.0)});
        const std::set<mask_t> fixed =
            fixed_masks(g, x_masks(x_ansatz_full_nonsymmetric(n)));
        const double best = max_cut_bruteforce(g).value;
        std::set<mask_t> optima;
        for (mask_t z = 0; z < bit(n - 1); ++z)
            if (cut_value(g, z) == best) optima.insert(z);
        CHECK(fixed == optima);
    }
}

TEST_CASE("no moves: every canonical cut is fixed") {
    WeightedGraph g;
    g.n = 4;
    g.edges = {{0, 1, 2.0}, {2, 3, 1.0}};
    const std::vector<mask_t> empty;
    CHECK(fixed_point_set(g, empty).size() == 8);
    const FlipResult r =
        flip_search(g, empty, CutAssignment{0b0101, 4},
                    {FlipPolicyKind::uniform_random, 9, 10});
    CHECK(r.trace.empty());
    CHECK(r.converged);
}

TEST_CASE("trial batches are seed-deterministic") {
    Rng rng(408);
    const WeightedGraph g = test_util::random_graph(rng, 8, 0.5, 0.1, 5.0);
    const std::vector<mask_t> masks = singleton_masks(8);
    const FlipRunStats s1 =
        flip_trials(g, masks, FlipPolicyKind::uniform_random, 20, 99);
    const FlipRunStats s2 =
        flip_trials(g, masks, FlipPolicyKind::uniform_random, 20, 99);
    REQUIRE(s1.records.size() == s2.records.size());
    for (std::size_t i = 0; i < s1.records.size(); ++i) {
        CHECK(s1.records[i].start == s2.records[i].start);
        CHECK(s1.records[i].final == s2.records[i].final);
        CHECK(s1.records[i].cut_value == s2.records[i].cut_value);
        CHECK(s1.records[i].steps == s2.records[i].steps);
    }
    CHECK(s1.mean_alpha == s2.mean_alpha);
}

TEST_CASE("greedy on complete graphs keeps at least half the optimum") {
    Rng rng(409);
    WeightedGraph k8;
    k8.n = 8;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            k8.edges.push_back({i, j, rng.uniform(0.1, 5.0)});
    const FlipRunStats s = greedy_approximation_run(k8, classical_ansatz(8),
                                                    100, 7);
    CHECK(s.mean_alpha >= 0.5);
    CHECK(s.mean_alpha <= 1.0 + 1e-12);
    for (const FlipTrialRecord& r : s.records) CHECK(r.alpha >= 0.5);
}

TEST_CASE("bipartite graphs reach the full cut when single flips suffice") {
    Rng rng(410);
    int usable = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 6 + static_cast<int>(rng.uniform_index(5));  // 6..10
        const mask_t left = rng.next_u64() & full_mask(n);
        WeightedGraph g;
        g.n = n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (has_bit(left, i) != has_bit(left, j) &&
                    rng.uniform01() < 0.6)
                    g.edges.push_back({i, j, rng.uniform(0.5, 4.0)});
        if (g.edges.empty()) continue;
        const double best = max_cut_bruteforce(g).value;
        CHECK(best == doctest::Approx(g.total_weight()));  // bipartite
        const std::vector<mask_t> masks = singleton_masks(n);
        // Only instances whose single-flip landscape is trap-free make the
        // all-starts claim; the fixed-point oracle decides per instance.
        bool trap_free = true;
        for (const mask_t z : fixed_masks(g, masks))
            trap_free = trap_free && cut_value(g, z) == best;
        if (!trap_free) continue;
        ++usable;
        const FlipRunStats s =
            flip_trials(g, masks, FlipPolicyKind::greedy, 10,
                        1000 + static_cast<std::uint64_t>(trial));
        for (const FlipTrialRecord& r : s.records)
            CHECK(r.alpha == doctest::Approx(1.0));
    }
    CHECK(usable >= 1);  // the filter must not make the test vacuous
}

TEST_CASE("flip input validation") {
    WeightedGraph g;
    g.n = 4;
    g.edges = {{0, 1, 1.0}};
    const std::vector<mask_t> bad = {bit(5)};
    CHECK_THROWS_AS(
        flip_search(g, bad, CutAssignment{0, 4}, FlipPolicy{}), input_error);
    const std::vector<mask_t> ok = {bit(0)};
    CHECK_THROWS_AS(
        flip_search(g, ok, CutAssignment{0, 3}, FlipPolicy{}), input_error);
    FlipPolicy zero;
    zero.max_steps = 0;
    CHECK_THROWS_AS(
        flip_search(g, ok, CutAssignment{0, 4}, zero), input_error);
    WeightedGraph big;
    big.n = 30;
    big.edges = {{0, 1, 1.0}};
    CHECK_THROWS_AS(fixed_point_set(big, ok), cap_error);
    CHECK_THROWS_AS(flip_trials(g, ok, FlipPolicyKind::greedy, 0, 1),
                    input_error);
}

TEST_CASE("policy names round-trip") {
    for (const FlipPolicyKind kind :
         {FlipPolicyKind::uniform_random, FlipPolicyKind::first_improvement,
          FlipPolicyKind::greedy})
        CHECK(parse_flip_policy(flip_policy_name(kind)) == kind);
    CHECK_THROWS_AS(parse_flip_policy("anneal"), input_error);
}
