#include "cutscape/ansatz.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cutscape/errors.hpp"

namespace cutscape {

bool is_x_type(GenKind kind) {
    return kind == GenKind::x_string || kind == GenKind::local_x;
}

const char* kind_name(GenKind kind) {
    switch (kind) {
        case GenKind::x_string: return "x_string";
        case GenKind::z_string: return "z_string";
        case GenKind::local_x: return "local_x";
        case GenKind::global_x_mixer: return "global_x_mixer";
        case GenKind::global_z_mixer: return "global_z_mixer";
        case GenKind::problem_phase: return "problem_phase";
    }
    return "?";
}

static GenKind kind_from_name(const std::string& s) {
    if (s == "x_string") return GenKind::x_string;
    if (s == "z_string") return GenKind::z_string;
    if (s == "local_x") return GenKind::local_x;
    if (s == "global_x_mixer") return GenKind::global_x_mixer;
    if (s == "global_z_mixer") return GenKind::global_z_mixer;
    if (s == "problem_phase") return GenKind::problem_phase;
    throw input_error("ansatz: unknown generator kind '" + s + "'");
}

int Ansatz::depth() const {
    int d = 0;
    for (const Generator& g : gens)
        if (is_x_type(g.kind)) d = std::max(d, popcount(g.mask));
    return d;
}

bool Ansatz::pure_x() const {
    for (const Generator& g : gens)
        if (!is_x_type(g.kind)) return false;
    return true;
}

void Ansatz::validate() const {
    if (n < 1 || n > 64) throw input_error("ansatz: n must be in [1, 64]");
    if (gens.empty()) throw input_error("ansatz: needs at least one generator");
    const mask_t full = full_mask(n);
    for (const Generator& g : gens) {
        switch (g.kind) {
            case GenKind::x_string:
            case GenKind::z_string:
                if (g.mask == 0 || (g.mask & ~full))
                    throw input_error(
                        "ansatz: string mask must be non-empty and < 2^n");
                break;
            case GenKind::local_x:
                if (popcount(g.mask) != 1 || (g.mask & ~full))
                    throw input_error("ansatz: local_x mask must be one bit");
                break;
            case GenKind::global_x_mixer:
            case GenKind::global_z_mixer:
            case GenKind::problem_phase:
                if (g.mask != 0)
                    throw input_error("ansatz: maskless kind carries mask 0");
                break;
        }
    }
}

std::vector<mask_t> x_masks(const Ansatz& a) {
    if (!a.pure_x())
        throw input_error("ansatz: operation requires a pure X-string family");
    std::vector<mask_t> out;
    out.reserve(a.gens.size());
    for (const Generator& g : a.gens) out.push_back(g.mask);
    return out;
}

static Ansatz make_x(int n, std::vector<mask_t> masks) {
    Ansatz a;
    a.n = n;
    a.init = InitialState::all_zeros;
    a.gens.reserve(masks.size());
    for (mask_t m : masks) a.gens.push_back({GenKind::x_string, m});
    a.validate();
    return a;
}

Ansatz classical_ansatz(int n) {
    if (n < 1) throw input_error("classical_ansatz: n >= 1 required");
    std::vector<mask_t> masks;
    for (int i = 0; i < n; ++i) masks.push_back(bit(i));
    return make_x(n, std::move(masks));
}

Ansatz x_ansatz_depth(int n, int D) {
    if (n < 1 || n > 24)
        throw input_error("x_ansatz_depth: n out of range (mask enumeration)");
    if (D < 1 || D > n) throw input_error("x_ansatz_depth: need 1 <= D <= n");
    std::vector<mask_t> masks;
    for (mask_t m = 1; m <= full_mask(n); ++m)
        if (popcount(m) <= D) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](mask_t x, mask_t y) {
        return popcount(x) != popcount(y) ? popcount(x) < popcount(y) : x < y;
    });
    return make_x(n, std::move(masks));
}

Ansatz x_ansatz_full_nonsymmetric(int n) {
    if (n < 2 || n > 24)
        throw input_error("x_ansatz_full_nonsymmetric: need 2 <= n <= 24");
    // Masks with the highest-index vertex absent cover each complement pair
    // of proper non-empty subsets exactly once; the full set is excluded.
    std::vector<mask_t> masks;
    for (mask_t m = 1; m < bit(n - 1); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](mask_t x, mask_t y) {
        return popcount(x) != popcount(y) ? popcount(x) < popcount(y) : x < y;
    });
    return make_x(n, std::move(masks));
}

Ansatz path_ansatz(int n) {
    if (n < 2) throw input_error("path_ansatz: n >= 2 required");
    std::vector<mask_t> masks;
    for (int k = 1; k < n; ++k) masks.push_back(full_mask(k));
    return make_x(n, std::move(masks));
}

Ansatz ring_ansatz(int n) {
    if (n < 2) throw input_error("ring_ansatz: n >= 2 required");
    std::vector<mask_t> masks;
    for (int start = 0; start < n; ++start) {
        mask_t m = 0;
        for (int len = 1; len < n; ++len) {
            m |= bit((start + len - 1) % n);
            masks.push_back(m);
        }
    }
    return make_x(n, std::move(masks));
}

Ansatz xz_ansatz(int n, int D, XzVariant variant) {
    Ansatz base = x_ansatz_depth(n, D);
    Ansatz a;
    a.n = n;
    a.init = InitialState::all_zeros;
    for (const Generator& g : base.gens) {
        a.gens.push_back(g);
        if (variant == XzVariant::kbody_z)
            a.gens.push_back({GenKind::z_string, g.mask});
        else
            a.gens.push_back({GenKind::global_z_mixer, 0});
    }
    a.validate();
    return a;
}

Ansatz qaoa_ansatz(int n, int p_layers, QaoaVariant variant) {
    if (n < 1 || n > 64) throw input_error("qaoa_ansatz: n out of range");
    if (p_layers < 1) throw input_error("qaoa_ansatz: p_layers >= 1 required");
    Ansatz a;
    a.n = n;
    a.init = variant == QaoaVariant::local_x_zero_start ? InitialState::all_zeros
                                                        : InitialState::all_plus;
    for (int p = 0; p < p_layers; ++p) {
        if (variant == QaoaVariant::standard) {
            a.gens.push_back({GenKind::global_x_mixer, 0});
        } else {
            for (int q = 0; q < n; ++q) a.gens.push_back({GenKind::local_x, bit(q)});
        }
        a.gens.push_back({GenKind::problem_phase, 0});
    }
    a.validate();
    return a;
}

void write_ansatz(std::ostream& out, const Ansatz& a) {
    out << "cutscape-ansatz v1\n";
    out << "n " << a.n << "\n";
    out << "initial_state "
        << (a.init == InitialState::all_zeros ? "all_zeros" : "all_plus")
        << "\n";
    out << "generators " << a.gens.size() << "\n";
    out << std::hex;
    for (const Generator& g : a.gens)
        out << kind_name(g.kind) << " 0x" << g.mask << "\n";
    out << std::dec;
}

Ansatz read_ansatz(std::istream& in) {
    std::string word, version;
    if (!(in >> word >> version) || word != "cutscape-ansatz" || version != "v1")
        throw input_error("ansatz file: bad magic line");
    Ansatz a;
    std::string key;
    if (!(in >> key >> a.n) || key != "n")
        throw input_error("ansatz file: expected 'n <count>'");
    std::string init;
    if (!(in >> key >> init) || key != "initial_state")
        throw input_error("ansatz file: expected 'initial_state <name>'");
    if (init == "all_zeros")
        a.init = InitialState::all_zeros;
    else if (init == "all_plus")
        a.init = InitialState::all_plus;
    else
        throw input_error("ansatz file: unknown initial state '" + init + "'");
    std::size_t count = 0;
    if (!(in >> key >> count) || key != "generators")
        throw input_error("ansatz file: expected 'generators <count>'");
    a.gens.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string kind, mask;
        if (!(in >> kind >> mask))
            throw input_error("ansatz file: truncated generator list");
        Generator g;
        g.kind = kind_from_name(kind);
        if (mask.rfind("0x", 0) != 0)
            throw input_error("ansatz file: mask must be hex (0x...)");
        g.mask = std::stoull(mask.substr(2), nullptr, 16);
        a.gens.push_back(g);
    }
    a.validate();
    return a;
}

void write_ansatz_file(const std::string& path, const Ansatz& a) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open for writing: " + path);
    write_ansatz(out, a);
}

Ansatz read_ansatz_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open ansatz file: " + path);
    return read_ansatz(in);
}

Ansatz parse_ansatz_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw input_error("empty ansatz spec");

    auto num = [&](std::size_t i) -> int {
        if (i >= parts.size())
            throw input_error("ansatz spec '" + spec + "': missing field");
        try {
            return std::stoi(parts[i]);
        } catch (const std::exception&) {
            throw input_error("ansatz spec '" + spec + "': bad number '" +
                              parts[i] + "'");
        }
    };

    const std::string& kind = parts[0];
    if (kind == "classical") return classical_ansatz(num(1));
    if (kind == "xdepth") return x_ansatz_depth(num(1), num(2));
    if (kind == "xfull") return x_ansatz_full_nonsymmetric(num(1));
    if (kind == "path") return path_ansatz(num(1));
    if (kind == "ring") return ring_ansatz(num(1));
    if (kind == "xz") {
        if (parts.size() < 4)
            throw input_error("ansatz spec: xz:N:D:kbody|globalz");
        XzVariant v;
        if (parts[3] == "kbody")
            v = XzVariant::kbody_z;
        else if (parts[3] == "globalz")
            v = XzVariant::global_z;
        else
            throw input_error("ansatz spec: unknown xz variant '" + parts[3] +
                              "'");
        return xz_ansatz(num(1), num(2), v);
    }
    if (kind == "qaoa") {
        if (parts.size() < 4)
            throw input_error("ansatz spec: qaoa:N:P:standard|localx|localx0");
        QaoaVariant v;
        if (parts[3] == "standard")
            v = QaoaVariant::standard;
        else if (parts[3] == "localx")
            v = QaoaVariant::local_x;
        else if (parts[3] == "localx0")
            v = QaoaVariant::local_x_zero_start;
        else
            throw input_error("ansatz spec: unknown qaoa variant '" + parts[3] +
                              "'");
        return qaoa_ansatz(num(1), num(2), v);
    }
    throw input_error("ansatz spec: unknown family '" + kind + "'");
}

}  // namespace cutscape
