#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cutscape/errors.hpp"
#include "cutscape/landscape.hpp"
#include "cutscape/statevec.hpp"
#include "cutscape/trigform.hpp"
#include "test_util.hpp"

using namespace cutscape;

TEST_CASE("eigenstate hessian diagonal is the double energy difference") {
    Rng rng(301);
    const int n = 6;
    const WeightedGraph g = test_util::random_graph(rng, n, 0.6);
    const Ansatz a = test_util::random_x_ansatz(rng, n, 7);
    const std::vector<mask_t> masks = x_masks(a);
    for (int trial = 0; trial < 20; ++trial) {
        const mask_t z = rng.next_u64() & full_mask(n);
        const std::vector<double> diag = hessian_diag_at_eigenstate(g, a, z);
        for (std::size_t j = 0; j < masks.size(); ++j) {
            const double want =
                2.0 * (ising_energy(g, z ^ masks[j]) - ising_energy(g, z));
            CHECK(diag[j] == want);  // same expression, bit-identical
        }
    }
}

TEST_CASE("eigenstate diagonal matches the statevec hessian at grid angles") {
    Rng rng(302);
    const int n = 5;
    const WeightedGraph g = test_util::random_graph(rng, n, 0.7);
    const Ansatz a = test_util::random_x_ansatz(rng, n, 5);
    const std::vector<mask_t> masks = x_masks(a);
    std::vector<double> theta(masks.size(), 0.0);
    mask_t z = 0;
    for (std::size_t j = 0; j < masks.size(); ++j)
        if (rng.uniform01() < 0.5) {
            theta[j] = std::numbers::pi / 2.0;
            z ^= masks[j];
        }
    const std::vector<double> diag = hessian_diag_at_eigenstate(g, a, z);
    const SymMatrix h = hessian(g, a, theta);
    for (std::size_t j = 0; j < masks.size(); ++j)
        CHECK(std::abs(h.at(static_cast<int>(j), static_cast<int>(j)) -
                       diag[j]) < 1e-8);
}

TEST_CASE("ising chain: diagonal reads the adjacent ZZ correlator") {
    Rng rng(303);
    const int n = 7;
    const WeightedGraph chain =
        generate({GraphKind::path_chain, n, 0, 0.5, 3.0, 17});
    const Ansatz a = path_ansatz(n);
    for (int trial = 0; trial < 10; ++trial) {
        const mask_t z = rng.next_u64() & full_mask(n);
        const std::vector<double> diag =
            hessian_diag_at_eigenstate(chain, a, z);
        // Generator k flips the prefix of length k, toggling only edge
        // (k-1, k): diag = -4 w * (-1)^(z_{k-1} xor z_k).
        for (int k = 1; k < n; ++k) {
            const double w = chain.edges[static_cast<std::size_t>(k - 1)].w;
            const double zz =
                ((z >> (k - 1)) ^ (z >> k)) & 1u ? -1.0 : 1.0;
            CHECK(diag[static_cast<std::size_t>(k - 1)] ==
                  doctest::Approx(-4.0 * w * zz).epsilon(1e-12));
        }
    }
}

TEST_CASE("ground cut has a nonnegative diagonal") {
    Rng rng(304);
    const WeightedGraph g = test_util::random_graph(rng, 6, 0.7);
    const Ansatz a = test_util::random_x_ansatz(rng, 6, 6);
    const mask_t zg = max_cut_bruteforce(g).argmax.bits;  // min ising energy
    for (const double d : hessian_diag_at_eigenstate(g, a, zg))
        CHECK(d >= 0.0);
}

TEST_CASE("summary counts partition the canonical cuts") {
    Rng rng(305);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_index(4));
        const WeightedGraph g = test_util::random_graph(rng, n, 0.6);
        const Ansatz a = test_util::random_x_ansatz(rng, n, 5);
        const LandscapeSummary s = classify_all_eigenstates(g, a);
        std::uint64_t total = 0;
        for (const std::uint64_t c : s.counts) total += c;
        CHECK(total == (std::uint64_t{1} << (n - 1)));
        CHECK(s.reports.size() == (std::uint64_t{1} << (n - 1)));
        CHECK(s.count(CutClass::global_min) >= 1);
        CHECK(s.count(CutClass::global_max) >= 1);
    }
}

TEST_CASE("full nonsymmetric family has no local optima") {
    Rng rng(306);
    for (int n : {3, 4, 5}) {
        const Ansatz a = x_ansatz_full_nonsymmetric(n);
        for (int trial = 0; trial < 10; ++trial) {
            WeightedGraph g;
            g.n = n;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    g.edges.push_back({i, j, rng.uniform(0.1, 5.0)});
            const LandscapeSummary s = classify_all_eigenstates(g, a);
            CHECK(s.local_optima() == 0);
        }
    }
}

TEST_CASE("witness flip always reaches a strictly better cut") {
    Rng rng(307);
    const int n = 6;
    const WeightedGraph g = test_util::random_graph(rng, n, 0.8, 0.1, 5.0);
    const Ansatz a = classical_ansatz(n);
    const LandscapeSummary s = classify_all_eigenstates(g, a);
    const double emin = max_cut_bruteforce(g).value;  // cut form
    for (const EigenstateReport& r : s.reports) {
        if (r.cls == CutClass::global_min) continue;
        // Flipping the witness set lands exactly on the global minimum.
        CHECK(ising_energy(g, r.cut ^ r.witness) ==
              doctest::Approx(g.total_weight() - 2.0 * emin));
        CHECK(ising_energy(g, r.cut ^ r.witness) < r.j_value);
    }
}

TEST_CASE("path ansatz on chains: no local optima") {
    Rng rng(308);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_index(7));  // 4..10
        const WeightedGraph chain =
            generate({GraphKind::path_chain, n, 0, 0.1, 4.0,
                      static_cast<std::uint64_t>(900 + trial)});
        const LandscapeSummary s =
            classify_all_eigenstates(chain, path_ansatz(n));
        CHECK(s.local_optima() == 0);
    }
}

TEST_CASE("classical ansatz does hit local optima on some weighted graph") {
    Rng rng(309);
    bool found = false;
    for (int trial = 0; trial < 200 && !found; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_index(3));
        const WeightedGraph g = test_util::random_graph(rng, n, 0.7, 0.1, 5.0);
        const LandscapeSummary s =
            classify_all_eigenstates(g, classical_ansatz(n));
        found = s.local_optima() > 0;
    }
    CHECK(found);
}

TEST_CASE("probe: zero angles report an eigenstate configuration") {
    Rng rng(310);
    const WeightedGraph g = test_util::random_graph(rng, 5);
    const Ansatz a = test_util::random_x_ansatz(rng, 5, 5);
    const std::vector<double> theta(
        static_cast<std::size_t>(a.param_count()), 0.0);
    const ProbeReport r = probe_critical_point(g, a, theta);
    CHECK(r.label == ProbeLabel::eigenstate_config);
    CHECK(r.grad_inf < 1e-12);
}

TEST_CASE("probe: grid angles pi/2 also count as eigenstates") {
    Rng rng(311);
    const WeightedGraph g = test_util::random_graph(rng, 5);
    const Ansatz a = test_util::random_x_ansatz(rng, 5, 4);
    std::vector<double> theta(static_cast<std::size_t>(a.param_count()), 0.0);
    for (double& t : theta)
        if (rng.uniform01() < 0.5) t = std::numbers::pi / 2.0;
    CHECK(probe_critical_point(g, a, theta).label ==
          ProbeLabel::eigenstate_config);
}

TEST_CASE("probe rejects non-critical points") {
    Rng rng(312);
    const WeightedGraph g = test_util::random_graph(rng, 5, 0.8, 0.5, 4.0);
    const Ansatz a = classical_ansatz(5);
    for (int trial = 0; trial < 5; ++trial) {
        const std::vector<double> theta =
            test_util::random_theta(rng, a.param_count(), 0.3, 1.2);
        double ginf = 0.0;
        for (const double v : gradient(g, a, theta))
            ginf = std::max(ginf, std::abs(v));
        if (ginf < 1e-3) continue;  // freak near-critical draw
        CHECK_THROWS_AS(probe_critical_point(g, a, theta), input_error);
        return;
    }
    FAIL("no clearly non-critical draw found");
}

TEST_CASE("probe on a two-edge path: mid-angle pi/4 splits by the end angles") {
    // Classical ansatz, J = cos(2t0)cos(2t1) + cos(2t1)cos(2t2).
    WeightedGraph path;
    path.n = 3;
    path.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
    const Ansatz a = classical_ansatz(3);
    const double pi = std::numbers::pi;

    // (pi/2, pi/4, 0): every coordinate sits on a quarter-grid point with
    // the matching coefficient zero, so the prepared state is an eigenstate
    // (inside the degenerate zero-energy eigenspace).
    const ProbeReport on_grid =
        probe_critical_point(path, a, std::vector<double>{pi / 2, pi / 4, 0.0});
    CHECK(on_grid.label == ProbeLabel::eigenstate_config);

    // (pi/3, pi/4, pi/6): still critical (cos(2pi/3) + cos(pi/3) = 0), but
    // the end coordinates are off-grid with vanishing coefficient pairs, so
    // the Hessian decides. It is 2*sqrt(3) times the path adjacency matrix:
    // eigenvalues -2*sqrt(6), 0, +2*sqrt(6) -> a numeric saddle.
    const ProbeReport off_grid = probe_critical_point(
        path, a, std::vector<double>{pi / 3, pi / 4, pi / 6});
    CHECK(off_grid.label == ProbeLabel::saddle_numeric);
    CHECK(off_grid.eig_min == doctest::Approx(-2.0 * std::sqrt(6.0)));
    CHECK(off_grid.eig_max == doctest::Approx(2.0 * std::sqrt(6.0)));
}

TEST_CASE("jacobi eigenvalues match hand-computed spectra") {
    SymMatrix m;
    m.m = 2;
    m.a = {2.0, 1.0, 1.0, 2.0};
    const std::vector<double> eig = symmetric_eigenvalues(m);
    CHECK(eig[0] == doctest::Approx(1.0));
    CHECK(eig[1] == doctest::Approx(3.0));

    SymMatrix d;
    d.m = 3;
    d.a = {5, 0, 0, 0, -2, 0, 0, 0, 7};
    const std::vector<double> ed = symmetric_eigenvalues(d);
    CHECK(ed[0] == doctest::Approx(-2.0));
    CHECK(ed[1] == doctest::Approx(5.0));
    CHECK(ed[2] == doctest::Approx(7.0));
}

TEST_CASE("landscape rejects non-X families and oversized graphs") {
    WeightedGraph g;
    g.n = 4;
    g.edges = {{0, 1, 1.0}};
    CHECK_THROWS_AS(
        hessian_diag_at_eigenstate(g, qaoa_ansatz(4, 1, QaoaVariant::standard),
                                   0),
        input_error);
    WeightedGraph big;
    big.n = 30;
    big.edges = {{0, 1, 1.0}};
    Ansatz a;
    a.n = 30;
    a.gens = {{GenKind::x_string, 1}};
    CHECK_THROWS_AS(classify_all_eigenstates(big, a), cap_error);
}
