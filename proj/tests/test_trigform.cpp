#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "cutscape/errors.hpp"
#include "cutscape/statevec.hpp"
#include "cutscape/trigform.hpp"
#include "test_util.hpp"

using namespace cutscape;

namespace {

// GF(2) rank of the mask list; the kernel family is the null space of the
// subset-XOR map, so |kernels| = 2^(|C| - rank).
int gf2_rank(std::vector<mask_t> rows) {
    int rank = 0;
    for (int b = 63; b >= 0; --b) {
        std::size_t pivot = static_cast<std::size_t>(-1);
        for (std::size_t i = static_cast<std::size_t>(rank); i < rows.size();
             ++i)
            if ((rows[i] >> b) & 1u) {
                pivot = i;
                break;
            }
        if (pivot == static_cast<std::size_t>(-1)) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != static_cast<std::size_t>(rank) && ((rows[i] >> b) & 1u))
                rows[i] ^= rows[static_cast<std::size_t>(rank)];
        ++rank;
    }
    return rank;
}

Ansatz x_family_from_masks(int n, const std::vector<mask_t>& masks) {
    Ansatz a;
    a.n = n;
    a.init = InitialState::all_zeros;
    for (const mask_t m : masks) a.gens.push_back({GenKind::x_string, m});
    return a;
}

}  // namespace

TEST_CASE("cut sets: membership is a one-endpoint intersection") {
    WeightedGraph g;
    g.n = 3;
    g.edges = {{0, 1, 1.0}, {1, 2, 2.0}};
    const Ansatz a = x_family_from_masks(3, {0b001, 0b010, 0b011});
    const std::vector<EdgeCutSet> cs = cut_sets(g, a);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].members == std::vector<int>{0, 1});  // 011 covers both ends
    CHECK(cs[1].members == std::vector<int>{1, 2});  // 001 misses edge (1,2)
}

TEST_CASE("classical ansatz: |C| = 2 and only the empty kernel") {
    Rng rng(201);
    for (int n : {3, 5, 7}) {
        const WeightedGraph g = test_util::random_graph(rng, n, 0.8);
        const TrigForm tf = build_trigform(g, classical_ansatz(n));
        for (std::size_t e = 0; e < tf.families.size(); ++e) {
            CHECK(tf.cut_sets[e].members.size() == 2);
            CHECK(tf.families[e].kernels.size() == 1);
            CHECK(tf.families[e].kernels[0] == 0u);
        }
    }
}

TEST_CASE("kernels have even cardinality and XOR to zero") {
    Rng rng(202);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_index(3));
        const WeightedGraph g = test_util::random_graph(rng, n, 0.5);
        const Ansatz a = test_util::random_x_ansatz(rng, n, 8);
        const TrigForm tf = build_trigform(g, a);
        for (std::size_t e = 0; e < tf.families.size(); ++e) {
            const EdgeCutSet& cs = tf.cut_sets[e];
            for (const std::uint64_t kernel : tf.families[e].kernels) {
                CHECK(std::popcount(kernel) % 2 == 0);
                mask_t x = 0;
                for (std::size_t i = 0; i < cs.members.size(); ++i)
                    if ((kernel >> i) & 1u)
                        x ^= a.gens[static_cast<std::size_t>(cs.members[i])]
                                 .mask;
                CHECK(x == 0u);
            }
            // Count identity: null space of the GF(2) subset-XOR map.
            std::vector<mask_t> member_masks;
            for (int j : cs.members)
                member_masks.push_back(a.gens[static_cast<std::size_t>(j)].mask);
            const int rank = gf2_rank(member_masks);
            CHECK(tf.families[e].kernels.size() ==
                  (std::uint64_t{1}
                   << (static_cast<int>(member_masks.size()) - rank)));
        }
    }
}

TEST_CASE("duplicated generator gives the two-copy kernel") {
    WeightedGraph g;
    g.n = 2;
    g.edges = {{0, 1, 1.0}};
    const Ansatz a = x_family_from_masks(2, {0b01, 0b01});
    const TrigForm tf = build_trigform(g, a);
    REQUIRE(tf.families.size() == 1);
    CHECK(tf.families[0].kernels == std::vector<std::uint64_t>{0b00, 0b11});
}

TEST_CASE("split enumeration matches an independent subset scan") {
    // 13 members pushes kernel_sets onto the split path; the oracle here is
    // a from-scratch scan over all 2^13 subsets.
    Rng rng(203);
    const int n = 8;
    std::vector<mask_t> masks;
    std::set<mask_t> used;
    while (masks.size() < 13) {
        mask_t m = (rng.next_u64() & full_mask(n) & ~mask_t{0b10}) | 1u;
        if (used.insert(m).second) masks.push_back(m);  // cuts edge (0,1)
    }
    WeightedGraph g;
    g.n = n;
    g.edges = {{0, 1, 1.5}};
    const Ansatz a = x_family_from_masks(n, masks);
    const std::vector<EdgeCutSet> cs = cut_sets(g, a);
    REQUIRE(cs[0].members.size() == 13);
    const KernelFamily fam = kernel_sets(cs[0], a);

    std::vector<std::uint64_t> want;
    for (std::uint64_t sub = 0; sub < (1u << 13); ++sub) {
        mask_t x = 0;
        for (int i = 0; i < 13; ++i)
            if ((sub >> i) & 1u) x ^= masks[static_cast<std::size_t>(i)];
        if (x == 0) want.push_back(sub);
    }
    CHECK(fam.kernels == want);
}

TEST_CASE("enumeration cap is enforced") {
    const int n = 8;
    std::vector<mask_t> masks;
    for (int k = 0; masks.size() < 21; ++k) {
        const mask_t m = (static_cast<mask_t>(k) << 2 | 1u) & full_mask(n);
        if (std::popcount(m & 0b11u) == 1) masks.push_back(m);
    }
    WeightedGraph g;
    g.n = n;
    g.edges = {{0, 1, 1.0}};
    const Ansatz a = x_family_from_masks(n, masks);
    const std::vector<EdgeCutSet> cs = cut_sets(g, a);
    REQUIRE(cs[0].members.size() >= 21);
    CHECK_THROWS_AS(kernel_sets(cs[0], a), cap_error);
    CHECK_NOTHROW(kernel_sets(cs[0], a, 22));
}

TEST_CASE("closed form at theta = 0 is the total weight") {
    Rng rng(204);
    const WeightedGraph g = test_util::random_graph(rng, 6);
    const Ansatz a = test_util::random_x_ansatz(rng, 6, 7);
    const std::vector<double> theta(a.param_count(), 0.0);
    CHECK(objective_closed_form(g, a, theta) ==
          doctest::Approx(g.total_weight()).epsilon(1e-14));
}

TEST_CASE("closed form equals the classical product formula") {
    Rng rng(205);
    const int n = 6;
    const WeightedGraph g = test_util::random_graph(rng, n, 0.7);
    const std::vector<double> theta = test_util::random_theta(rng, n);
    double want = 0.0;
    for (const Edge& e : g.edges)
        want += e.w * std::cos(2 * theta[e.a]) * std::cos(2 * theta[e.b]);
    CHECK(objective_closed_form(g, classical_ansatz(n), theta) ==
          doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("closed form equals the statevector objective") {
    Rng rng(206);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_index(6));  // 3..8
        const WeightedGraph g = test_util::random_graph(rng, n, 0.5);
        const Ansatz a =
            test_util::random_x_ansatz(rng, n, 3 + static_cast<int>(
                                                       rng.uniform_index(8)));
        const std::vector<double> theta =
            test_util::random_theta(rng, a.param_count());
        const double sv = objective(g, prepare(a, theta));
        const double cf = objective_closed_form(g, a, theta);
        CHECK(std::abs(sv - cf) < 1e-9);
    }
}

TEST_CASE("st coefficients: classical ansatz closed form") {
    Rng rng(207);
    const int n = 6;
    const WeightedGraph g = test_util::random_graph(rng, n, 0.7);
    const std::vector<double> theta = test_util::random_theta(rng, n);
    const TrigForm tf = build_trigform(g, classical_ansatz(n));
    for (int k = 0; k < n; ++k) {
        const STCoefficients st = st_coefficients(tf, theta, k);
        double s_want = 0.0;
        for (const Edge& e : g.edges) {
            if (e.a == k) s_want += e.w * std::cos(2 * theta[e.b]);
            if (e.b == k) s_want += e.w * std::cos(2 * theta[e.a]);
        }
        CHECK(st.s == doctest::Approx(s_want).epsilon(1e-12));
        CHECK(st.t == doctest::Approx(0.0));
    }
}

TEST_CASE("st decomposition properties") {
    Rng rng(208);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_index(3));
        const WeightedGraph g = test_util::random_graph(rng, n, 0.6);
        const Ansatz a = test_util::random_x_ansatz(rng, n, 6);
        const TrigForm tf = build_trigform(g, a);
        std::vector<double> theta =
            test_util::random_theta(rng, a.param_count());
        const double j0 = objective_closed_form(tf, theta);
        const EnergyTable table = build_energy_table(g);
        const std::vector<double> grad = gradient(table, a, theta);

        for (int k = 0; k < a.param_count(); ++k) {
            const STCoefficients st = st_coefficients(tf, theta, k);
            const double c = std::cos(2 * theta[k]);
            const double s = std::sin(2 * theta[k]);
            const double residual_v = j0 - c * st.s - s * st.t;

            // s,t and the residual V_k are independent of theta_k.
            std::vector<double> shifted = theta;
            shifted[k] = rng.uniform(0.0, 6.28);
            const STCoefficients st2 = st_coefficients(tf, shifted, k);
            CHECK(std::abs(st2.s - st.s) < 1e-12);
            CHECK(std::abs(st2.t - st.t) < 1e-12);
            const double j2 = objective_closed_form(tf, shifted);
            CHECK(std::abs((j2 - std::cos(2 * shifted[k]) * st.s -
                            std::sin(2 * shifted[k]) * st.t) -
                           residual_v) < 1e-10);

            // Gradient identity against the statevector oracle.
            CHECK(std::abs(2.0 * (-s * st.s + c * st.t) - grad[k]) < 1e-8);
        }

        // Residual vector = -gradient/2 componentwise.
        const std::vector<double> res = critical_condition_residual(tf, theta);
        for (int k = 0; k < a.param_count(); ++k)
            CHECK(res[static_cast<std::size_t>(k)] ==
                  doctest::Approx(-grad[k] / 2.0).epsilon(1e-10));
    }
}

TEST_CASE("residual vanishes at eigenstate configurations") {
    Rng rng(209);
    const int n = 5;
    const WeightedGraph g = test_util::random_graph(rng, n);
    const Ansatz a = test_util::random_x_ansatz(rng, n, 5);
    const TrigForm tf = build_trigform(g, a);
    std::vector<double> theta(static_cast<std::size_t>(a.param_count()), 0.0);
    for (double& t : theta)
        if (rng.uniform01() < 0.5) t = std::numbers::pi / 2.0;
    for (const double r : critical_condition_residual(tf, theta))
        CHECK(std::abs(r) < 1e-14);
}

TEST_CASE("trigform rejects unsupported families") {
    WeightedGraph g;
    g.n = 4;
    g.edges = {{0, 1, 1.0}};
    CHECK_THROWS_AS(cut_sets(g, qaoa_ansatz(4, 1, QaoaVariant::standard)),
                    input_error);
    CHECK_THROWS_AS(cut_sets(g, xz_ansatz(4, 1, XzVariant::kbody_z)),
                    input_error);
    Ansatz plus = x_ansatz_depth(4, 1);
    plus.init = InitialState::all_plus;
    CHECK_THROWS_AS(cut_sets(g, plus), input_error);
}

TEST_CASE("edge kernel stats expose sizes") {
    Rng rng(210);
    const WeightedGraph g = test_util::random_graph(rng, 5, 0.8);
    const TrigForm tf = build_trigform(g, x_ansatz_depth(5, 2));
    const std::vector<EdgeKernelStat> stats = edge_kernel_stats(tf);
    REQUIRE(stats.size() == g.edges.size());
    for (std::size_t e = 0; e < stats.size(); ++e) {
        CHECK(stats[e].cut_size ==
              static_cast<int>(tf.cut_sets[e].members.size()));
        CHECK(stats[e].kernel_count == tf.families[e].kernels.size());
        CHECK(stats[e].w == g.edges[e].w);
    }
}
