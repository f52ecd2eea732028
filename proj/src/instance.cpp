#include "rig/instance.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "rig/errors.hpp"

namespace rig {

std::vector<std::uint32_t> sample_uniform_subset(std::uint64_t k, std::uint64_t m, Rng& rng) {
    if (k > m) throw size_limit_error("sample_uniform_subset: k exceeds m");
    std::vector<std::uint32_t> out;
    out.reserve(k);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(k * 2);
    // Floyd: for j in [m-k, m), pick t uniform in [0, j]; take t unless it
    // was already taken, in which case take j (j itself is always fresh).
    for (std::uint64_t j = m - k; j < m; ++j) {
        std::uint64_t t = uniform_below(rng, j + 1);
        if (!seen.insert(t).second) {
            seen.insert(j);
            out.push_back(std::uint32_t(j));
        } else {
            out.push_back(std::uint32_t(t));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void check_dims(std::uint64_t n, std::uint64_t m) {
    const std::uint64_t cap = std::numeric_limits<std::uint32_t>::max();
    if (n > cap || m > cap)
        throw size_limit_error("generate: n and m must fit in 32-bit ids");
}

}  // namespace

Instance generate(std::uint64_t n, std::uint64_t m, const SetSizeLaw& law, std::uint64_t seed) {
    check_dims(n, m);
    Instance inst;
    inst.n = n;
    inst.m = m;
    inst.seed = seed;
    inst.subsets.resize(n);
    Rng rng(seed);
    for (std::uint64_t v = 0; v < n; ++v) {
        std::uint64_t k = law.sample_size(n, m, rng);
        inst.subsets[v] = sample_uniform_subset(k, m, rng);
    }
    return inst;
}

Instance generate_binomial(std::uint64_t n, std::uint64_t m, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw invalid_law_error("generate_binomial: p outside [0, 1]");
    return generate(n, m, SetSizeLaw::binomial(p), seed);
}

AttributeIndex invert(const Instance& inst) {
    AttributeIndex idx;
    idx.occupants.resize(inst.m);
    for (std::uint32_t v = 0; v < inst.subsets.size(); ++v)
        for (std::uint32_t w : inst.subsets[v]) idx.occupants[w].push_back(v);
    return idx;
}

void write_instance(const Instance& inst, std::ostream& out) {
    out << inst.n << ' ' << inst.m << ' ' << inst.seed << '\n';
    for (const auto& subset : inst.subsets) {
        for (std::size_t i = 0; i < subset.size(); ++i) {
            if (i) out << ' ';
            out << subset[i];
        }
        out << '\n';
    }
}

Instance read_instance(std::istream& in) {
    Instance inst;
    std::string line;
    if (!std::getline(in, line)) throw format_error("instance: missing header line");
    {
        std::istringstream head(line);
        if (!(head >> inst.n >> inst.m >> inst.seed))
            throw format_error("instance: header must be 'n m seed'");
        std::string rest;
        if (head >> rest) throw format_error("instance: trailing data in header");
    }
    check_dims(inst.n, inst.m);
    inst.subsets.resize(inst.n);
    for (std::uint64_t v = 0; v < inst.n; ++v) {
        if (!std::getline(in, line))
            throw format_error("instance: expected " + std::to_string(inst.n) + " vertex lines");
        std::istringstream row(line);
        std::uint64_t w;
        while (row >> w) {
            if (w >= inst.m) throw format_error("instance: attribute id out of range");
            inst.subsets[v].push_back(std::uint32_t(w));
        }
        if (!row.eof()) throw format_error("instance: non-numeric token in a vertex line");
        std::sort(inst.subsets[v].begin(), inst.subsets[v].end());
        if (std::adjacent_find(inst.subsets[v].begin(), inst.subsets[v].end()) !=
            inst.subsets[v].end())
            throw format_error("instance: duplicate attribute in a vertex line");
    }
    return inst;
}

void write_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw format_error("instance: cannot open '" + path + "' for writing");
    write_instance(inst, out);
    if (!out) throw format_error("instance: write to '" + path + "' failed");
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("instance: cannot open '" + path + "'");
    return read_instance(in);
}

}  // namespace rig
