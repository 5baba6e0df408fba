#include "cutscape/flipsearch.hpp"

#include <algorithm>
#include <string>

#include "cutscape/errors.hpp"
#include "cutscape/rng.hpp"

namespace cutscape {
namespace {

// Precomputed boundary structure: for each move mask, the edges with exactly
// one endpoint inside the mask (the only edges whose crossing status flips).
struct MoveTable {
    struct BoundaryEdge {
        mask_t ends = 0;  // bit(a) | bit(b)
        double w = 0.0;
    };
    std::vector<std::vector<BoundaryEdge>> boundary;

    MoveTable(const WeightedGraph& g, std::span<const mask_t> masks) {
        boundary.resize(masks.size());
        for (std::size_t k = 0; k < masks.size(); ++k)
            for (const Edge& e : g.edges) {
                const mask_t ends = bit(e.a) | bit(e.b);
                if (popcount(masks[k] & ends) == 1)
                    boundary[k].push_back({ends, e.w});
            }
    }

    // cut(z ^ mask_k) - cut(z): boundary edges leave the cut if crossing,
    // enter it otherwise.
    double delta(mask_t z, std::size_t k) const {
        double d = 0.0;
        for (const BoundaryEdge& e : boundary[k])
            d += parity(z & e.ends) ? -e.w : e.w;
        return d;
    }
};

void check_masks(const WeightedGraph& g, std::span<const mask_t> masks) {
    const mask_t full = full_mask(g.n);
    for (const mask_t m : masks)
        if (m & ~full)
            throw input_error("flip: move mask exceeds the vertex range");
}

}  // namespace

const char* flip_policy_name(FlipPolicyKind k) {
    switch (k) {
        case FlipPolicyKind::uniform_random: return "uniform_random";
        case FlipPolicyKind::first_improvement: return "first_improvement";
        case FlipPolicyKind::greedy: return "greedy";
    }
    return "?";
}

FlipPolicyKind parse_flip_policy(const std::string& name) {
    if (name == "uniform_random") return FlipPolicyKind::uniform_random;
    if (name == "first_improvement") return FlipPolicyKind::first_improvement;
    if (name == "greedy") return FlipPolicyKind::greedy;
    throw input_error("unknown flip policy '" + name +
                      "' (uniform_random | first_improvement | greedy)");
}

FlipResult flip_search(const WeightedGraph& g, std::span<const mask_t> masks,
                       const CutAssignment& start, const FlipPolicy& policy) {
    g.validate();
    check_masks(g, masks);
    if (start.n != g.n)
        throw input_error("flip: start cut has n = " + std::to_string(start.n) +
                          ", graph has n = " + std::to_string(g.n));
    if (start.bits & ~full_mask(g.n))
        throw input_error("flip: start cut has bits outside the vertex range");
    if (policy.max_steps < 1) throw input_error("flip: max_steps must be >= 1");

    const MoveTable moves(g, masks);
    const std::size_t nmoves = masks.size();

    FlipResult res;
    mask_t cur = start.bits;
    double cur_val = cut_value(g, cur);

    const auto accept = [&](std::size_t k, double d) {
        cur ^= masks[k];
        cur_val += d;
        res.trace.push_back({res.trace.size() + 1, masks[k], cur_val});
    };
    // Certifies the current cut is fixed (used when the step cap is hit).
    const auto is_fixed = [&] {
        for (std::size_t k = 0; k < nmoves; ++k) {
            ++res.proposals;
            if (moves.delta(cur, k) > 0.0) return false;
        }
        return true;
    };

    switch (policy.kind) {
        case FlipPolicyKind::first_improvement: {
            while (res.trace.size() < policy.max_steps) {
                bool accepted = false;
                for (std::size_t k = 0; k < nmoves; ++k) {
                    ++res.proposals;
                    const double d = moves.delta(cur, k);
                    if (d > 0.0) {
                        accept(k, d);
                        accepted = true;
                        break;  // restart the scan from the first move
                    }
                }
                if (!accepted) break;  // full scan found nothing: fixed point
            }
            if (res.trace.size() >= policy.max_steps) res.converged = is_fixed();
            break;
        }
        case FlipPolicyKind::greedy: {
            while (res.trace.size() < policy.max_steps) {
                double best_d = 0.0;
                std::size_t best_k = nmoves;
                for (std::size_t k = 0; k < nmoves; ++k) {
                    ++res.proposals;
                    const double d = moves.delta(cur, k);
                    if (d > 0.0 &&
                        (best_k == nmoves || d > best_d ||
                         (d == best_d && masks[k] < masks[best_k])))
                        best_d = d, best_k = k;
                }
                if (best_k == nmoves) break;
                accept(best_k, best_d);
            }
            if (res.trace.size() >= policy.max_steps) res.converged = is_fixed();
            break;
        }
        case FlipPolicyKind::uniform_random: {
            Rng rng(policy.seed);
            std::vector<char> rejected(nmoves, 0);
            std::size_t nrejected = 0;
            bool certified = nmoves == 0;
            while (!certified && res.trace.size() < policy.max_steps) {
                const std::size_t k = rng.uniform_index(nmoves);
                ++res.proposals;
                const double d = moves.delta(cur, k);
                if (d > 0.0) {
                    accept(k, d);
                    std::fill(rejected.begin(), rejected.end(), char{0});
                    nrejected = 0;
                } else if (!rejected[k]) {
                    rejected[k] = 1;
                    // Every move has now failed against this cut: fixed.
                    if (++nrejected == nmoves) certified = true;
                }
            }
            if (!certified) res.converged = is_fixed();
            break;
        }
    }

    res.final = CutAssignment{cur, g.n};
    res.cut_value = cur_val;
    return res;
}

FlipResult flip_search(const WeightedGraph& g, const Ansatz& a,
                       const CutAssignment& start, const FlipPolicy& policy) {
    const std::vector<mask_t> masks = x_masks(a);
    return flip_search(g, masks, start, policy);
}

std::vector<CutAssignment> fixed_point_set(const WeightedGraph& g,
                                           std::span<const mask_t> masks,
                                           int cap) {
    g.validate();
    check_masks(g, masks);
    if (g.n > cap)
        throw cap_error("fixed_point_set: n = " + std::to_string(g.n) +
                        " exceeds cap " + std::to_string(cap) +
                        " (2^n enumeration)");

    const MoveTable moves(g, masks);
    const mask_t count = g.n >= 2 ? bit(g.n - 1) : 1;  // canonical cuts
    std::vector<CutAssignment> fixed;
    for (mask_t z = 0; z < count; ++z) {
        bool ok = true;
        for (std::size_t k = 0; ok && k < masks.size(); ++k)
            ok = moves.delta(z, k) <= 0.0;
        if (ok) fixed.push_back({z, g.n});
    }
    return fixed;
}

std::vector<CutAssignment> fixed_point_set(const WeightedGraph& g,
                                           const Ansatz& a, int cap) {
    const std::vector<mask_t> masks = x_masks(a);
    return fixed_point_set(g, masks, cap);
}

FlipRunStats flip_trials(const WeightedGraph& g, std::span<const mask_t> masks,
                         FlipPolicyKind kind, int trials, std::uint64_t seed,
                         std::uint64_t max_steps) {
    if (trials < 1) throw input_error("flip_trials: trials must be >= 1");
    const MaxCutResult opt = max_cut_bruteforce(g);

    FlipRunStats stats;
    stats.trials = trials;
    stats.optimum = opt.value;
    stats.records.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, "flip-trial", static_cast<std::uint64_t>(t)));
        const mask_t start = rng.next_u64() & full_mask(g.n);
        FlipPolicy policy{kind, rng.next_u64(), max_steps};
        const FlipResult r =
            flip_search(g, masks, CutAssignment{start, g.n}, policy);
        FlipTrialRecord rec;
        rec.trial = t;
        rec.start = start;
        rec.final = r.final.bits;
        rec.cut_value = r.cut_value;
        rec.alpha = opt.value > 0.0 ? r.cut_value / opt.value : 1.0;
        rec.steps = r.trace.size();
        rec.converged = r.converged;
        stats.mean_cut += rec.cut_value;
        stats.mean_alpha += rec.alpha;
        stats.mean_steps += static_cast<double>(rec.steps);
        stats.records.push_back(rec);
    }
    stats.mean_cut /= trials;
    stats.mean_alpha /= trials;
    stats.mean_steps /= trials;
    return stats;
}

FlipRunStats greedy_approximation_run(const WeightedGraph& g, const Ansatz& a,
                                      int trials, std::uint64_t seed) {
    const std::vector<mask_t> masks = x_masks(a);
    return flip_trials(g, masks, FlipPolicyKind::greedy, trials, seed);
}

}  // namespace cutscape
