#include "paige/automorphism.hpp"

#include <algorithm>

namespace paige {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

struct Fingerprint {
    u64 order = 0;
    u32 t_fixed = 0;                 // fixed points of z -> x \ (zx)
    std::vector<u64> product_orders; // sorted orders of x*y over all y
    bool operator==(const Fingerprint&) const = default;
};

std::vector<u64> element_orders(const LoopOps& t) {
    const u32 n = t.size();
    std::vector<u64> ord(n, 1);
    for (u32 x = 1; x < n; ++x) {
        u32 acc = x;
        u64 k = 1;
        while (acc != 0) {
            acc = t.mul(acc, x);
            ++k;
        }
        ord[x] = k;
    }
    return ord;
}

std::vector<Fingerprint> fingerprints(const LoopOps& t, const std::vector<u64>& ord) {
    const u32 n = t.size();
    std::vector<Fingerprint> fp(n);
    for (u32 x = 0; x < n; ++x) {
        fp[x].order = ord[x];
        u32 fixed = 0;
        fp[x].product_orders.resize(n);
        for (u32 z = 0; z < n; ++z) {
            if (t.ldiv(x, t.mul(z, x)) == z) ++fixed;
            fp[x].product_orders[z] = ord[t.mul(x, z)];
        }
        fp[x].t_fixed = fixed;
        std::sort(fp[x].product_orders.begin(), fp[x].product_orders.end());
    }
    return fp;
}

// Partial table-morphism: img[x] is the image when assigned, kNone otherwise.
constexpr u32 kNone = 0xffffffffu;

struct PartialMap {
    std::vector<u32> img;
    std::vector<std::uint8_t> used; // image already taken
    std::vector<u32> known;         // assigned preimages, in assignment order

    explicit PartialMap(u32 n) : img(n, kNone), used(n, 0) {
        img[0] = 0;
        used[0] = 1;
        known.push_back(0);
    }
};

// Assign x -> y and propagate through products and inverses until fixpoint
// or conflict. Returns false on conflict.
bool extend(const LoopOps& t, PartialMap& m, u32 x, u32 y) {
    auto assign = [&](u32 a, u32 b) -> bool {
        if (m.img[a] != kNone) return m.img[a] == b;
        if (m.used[b]) return false;
        m.img[a] = b;
        m.used[b] = 1;
        m.known.push_back(a);
        return true;
    };

    std::size_t next = m.known.size();
    if (!assign(x, y)) return false;
    // cursor over `known`; every new assignment is processed against all
    // members known at its processing time, which covers every pair
    while (next < m.known.size()) {
        const u32 u = m.known[next++];
        const u32 iu = m.img[u];
        if (!assign(t.inv(u), t.inv(iu))) return false;
        for (std::size_t j = 0; j < m.known.size(); ++j) {
            const u32 v = m.known[j];
            const u32 iv = m.img[v];
            if (!assign(t.mul(u, v), t.mul(iu, iv))) return false;
            if (!assign(t.mul(v, u), t.mul(iv, iu))) return false;
        }
    }
    return true;
}

std::array<u32, 3> find_generating_triple(const LoopOps& t) {
    const u32 n = t.size();
    if (n == 1) return {0, 0, 0};
    for (u32 a = 0; a < n; ++a)
        for (u32 b = a; b < n; ++b)
            for (u32 c = b; c < n; ++c) {
                const u32 seed[3] = {a, b, c};
                if (generates(t, seed)) return {a, b, c};
            }
    throw value_error("loop has no generating triple");
}

} // namespace

AutomorphismReport automorphism_search(const LoopOps& t, const AutoSearchOptions& opts) {
    const u32 n = t.size();
    if (n > opts.order_limit)
        throw guardrail_error("loop order " + std::to_string(n) +
                              " exceeds the automorphism search limit of " +
                              std::to_string(opts.order_limit));

    AutomorphismReport rep;
    rep.generators = find_generating_triple(t);
    const auto [a, b, c] = rep.generators;

    if (n == 1) {
        rep.count = 1;
        if (opts.collect) rep.automorphisms.push_back({0});
        return rep;
    }

    const auto ord = element_orders(t);
    const auto fp = fingerprints(t, ord);

    auto candidates = [&](u32 g) {
        std::vector<u32> out;
        for (u32 x = 0; x < n; ++x) {
            if (fp[x] == fp[g]) out.push_back(x);
            else ++rep.fingerprint_pruned;
        }
        return out;
    };

    const std::vector<u32> cand_a = candidates(a);
    const std::vector<u32> cand_b = candidates(b);
    const std::vector<u32> cand_c = candidates(c);
    const u64 ord_ab = ord[t.mul(a, b)];
    const u64 ord_bc = ord[t.mul(b, c)];
    const u64 ord_ac = ord[t.mul(a, c)];

    auto budget_hit = [&] {
        return opts.node_budget != 0 && rep.nodes >= opts.node_budget;
    };

    for (u32 a2 : cand_a) {
        if (budget_hit()) { rep.budget_exhausted = true; break; }
        PartialMap ma(n);
        ++rep.nodes;
        if (!extend(t, ma, a, a2)) { ++rep.conflict_pruned; continue; }
        for (u32 b2 : cand_b) {
            if (budget_hit()) { rep.budget_exhausted = true; break; }
            if (ord[t.mul(a2, b2)] != ord_ab) { ++rep.fingerprint_pruned; continue; }
            PartialMap mb = ma;
            ++rep.nodes;
            if (!extend(t, mb, b, b2)) { ++rep.conflict_pruned; continue; }
            for (u32 c2 : cand_c) {
                if (budget_hit()) { rep.budget_exhausted = true; break; }
                if (ord[t.mul(b2, c2)] != ord_bc || ord[t.mul(a2, c2)] != ord_ac) {
                    ++rep.fingerprint_pruned;
                    continue;
                }
                PartialMap mc = mb;
                ++rep.nodes;
                if (!extend(t, mc, c, c2)) { ++rep.conflict_pruned; continue; }
                if (mc.known.size() != n)
                    throw internal_error("generating triple closure did not cover the loop");
                ++rep.count;
                if (opts.collect) rep.automorphisms.push_back(mc.img);
            }
            if (rep.budget_exhausted) break;
        }
        if (rep.budget_exhausted) break;
    }
    return rep;
}

} // namespace paige
