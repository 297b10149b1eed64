#include "paige/loop_table.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>

#include "paige/parallel.hpp"

namespace paige {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

// membership bitset + insertion list; the workhorse behind closures
struct IndexSet {
    std::vector<std::uint8_t> in;
    std::vector<u32> list;
    explicit IndexSet(u32 n) : in(n, 0) {}
    bool add(u32 x) {
        if (in[x]) return false;
        in[x] = 1;
        list.push_back(x);
        return true;
    }
    bool has(u32 x) const { return in[x] != 0; }
    u32 count() const { return static_cast<u32>(list.size()); }
};

// closes `s` under products and inverses; stops early once the whole loop is
// reached when stop_at_full is set
void close_under_ops(const LoopOps& t, IndexSet& s, bool stop_at_full) {
    const u32 n = t.size();
    std::size_t next = 0;
    while (next < s.list.size()) {
        if (stop_at_full && s.count() == n) return;
        const u32 u = s.list[next++];
        s.add(t.inv(u));
        for (std::size_t j = 0; j < s.list.size(); ++j) {
            const u32 v = s.list[j];
            s.add(t.mul(u, v));
            s.add(t.mul(v, u));
            if (stop_at_full && s.count() == n) return;
        }
    }
}

SubloopHandle to_handle(const IndexSet& s) {
    SubloopHandle h;
    h.indices = s.list;
    std::sort(h.indices.begin(), h.indices.end());
    return h;
}

bool is_closed_subloop(const LoopOps& t, const SubloopHandle& s) {
    if (s.indices.empty() || s.indices[0] != 0) return false;
    for (u32 x : s.indices) {
        if (x >= t.size()) return false;
        if (!s.contains(t.inv(x))) return false;
        for (u32 y : s.indices)
            if (!s.contains(t.mul(x, y))) return false;
    }
    return true;
}

} // namespace

// ---- LoopTable ---------------------------------------------------------------

LoopTable LoopTable::build(const LoopOps& loop, std::uint64_t max_elements) {
    const u32 n = loop.size();
    if (n > max_elements)
        throw guardrail_error("loop order " + std::to_string(n) +
                              " exceeds the table guardrail of " + std::to_string(max_elements));
    LoopTable t;
    t.n_ = n;
    t.table_.resize(static_cast<std::size_t>(n) * n);
    parallel_chunks(0, n, 16, [&](u64, u64 b, u64 e) {
        for (u64 x = b; x < e; ++x)
            for (u64 y = 0; y < n; ++y)
                t.table_[x * n + y] = loop.mul(static_cast<u32>(x), static_cast<u32>(y));
    });
    t.finish(/*validate=*/true);
    return t;
}

LoopTable LoopTable::from_rows(std::vector<std::vector<std::uint32_t>> rows) {
    LoopTable t;
    t.n_ = static_cast<u32>(rows.size());
    t.table_.reserve(static_cast<std::size_t>(t.n_) * t.n_);
    for (const auto& row : rows) {
        if (row.size() != rows.size()) throw value_error("table is not square");
        t.table_.insert(t.table_.end(), row.begin(), row.end());
    }
    t.finish(/*validate=*/true);
    return t;
}

LoopTable LoopTable::from_rows_unchecked(std::vector<std::vector<std::uint32_t>> rows) {
    LoopTable t;
    t.n_ = static_cast<u32>(rows.size());
    for (const auto& row : rows) {
        if (row.size() != rows.size()) throw value_error("table is not square");
        t.table_.insert(t.table_.end(), row.begin(), row.end());
    }
    t.finish(/*validate=*/false);
    return t;
}

void LoopTable::finish(bool validate) {
    const u32 n = n_;
    if (n == 0) throw value_error("empty table");

    if (validate) {
        for (u32 x = 0; x < n; ++x) {
            if (mul(0, x) != x || mul(x, 0) != x)
                throw internal_error("index 0 is not a two-sided identity");
        }
        std::vector<std::uint8_t> seen(n);
        for (u32 x = 0; x < n; ++x) {
            std::fill(seen.begin(), seen.end(), 0);
            for (u32 y = 0; y < n; ++y) {
                const u32 v = mul(x, y);
                if (v >= n || seen[v])
                    throw internal_error("row " + std::to_string(x) + " is not a permutation");
                seen[v] = 1;
            }
        }
        for (u32 y = 0; y < n; ++y) {
            std::fill(seen.begin(), seen.end(), 0);
            for (u32 x = 0; x < n; ++x) {
                const u32 v = mul(x, y);
                if (v >= n || seen[v])
                    throw internal_error("column " + std::to_string(y) + " is not a permutation");
                seen[v] = 1;
            }
        }
    }

    ldiv_.assign(static_cast<std::size_t>(n) * n, 0);
    rdiv_.assign(static_cast<std::size_t>(n) * n, 0);
    inv_.assign(n, 0);
    for (u32 x = 0; x < n; ++x) {
        for (u32 y = 0; y < n; ++y) {
            const u32 z = mul(x, y);
            if (z < n) {
                ldiv_[static_cast<std::size_t>(x) * n + z] = y; // x * y == z
                rdiv_[static_cast<std::size_t>(y) * n + z] = x;
            }
        }
    }
    for (u32 x = 0; x < n; ++x) {
        const u32 r = ldiv(x, 0);
        if (validate && mul(r, x) != 0)
            throw internal_error("element " + std::to_string(x) + " has no two-sided inverse");
        inv_[x] = r;
    }
}

bool SubloopHandle::contains(std::uint32_t x) const {
    return std::binary_search(indices.begin(), indices.end(), x);
}

// ---- Moufang check -----------------------------------------------------------

namespace {

constexpr const char* kMoufangNames[4] = {
    "((xy)x)z = x(y(xz))",
    "((xy)z)y = x(y(zy))",
    "(xy)(zx) = (x(yz))x",
    "(xy)(zx) = x((yz)x)",
};

// returns bitmask of failing identities for one triple
inline unsigned moufang_fail_mask(const LoopOps& t, u32 x, u32 y, u32 z) {
    unsigned mask = 0;
    const u32 xy = t.mul(x, y);
    const u32 yz = t.mul(y, z);
    if (t.mul(t.mul(xy, x), z) != t.mul(x, t.mul(y, t.mul(x, z)))) mask |= 1;
    if (t.mul(t.mul(xy, z), y) != t.mul(x, t.mul(y, t.mul(z, y)))) mask |= 2;
    const u32 lhs34 = t.mul(xy, t.mul(z, x));
    if (lhs34 != t.mul(t.mul(x, yz), x)) mask |= 4;
    if (lhs34 != t.mul(x, t.mul(yz, x))) mask |= 8;
    return mask;
}

struct MoufangChunkAcc {
    std::array<u64, 4> checked{};
    std::array<u64, 4> failures{};
    std::array<std::optional<std::array<u32, 3>>, 4> first;

    void record(unsigned mask, u32 x, u32 y, u32 z) {
        for (int i = 0; i < 4; ++i) {
            ++checked[i];
            if (mask & (1u << i)) {
                ++failures[i];
                const std::array<u32, 3> tr{x, y, z};
                if (!first[i] || tr < *first[i]) first[i] = tr;
            }
        }
    }
};

} // namespace

MoufangReport check_moufang(const LoopOps& t, const ScanMode& mode, unsigned threads) {
    const u32 n = t.size();
    MoufangReport rep;
    rep.mode = mode;
    for (int i = 0; i < 4; ++i) rep.identities[i].name = kMoufangNames[i];

    std::vector<MoufangChunkAcc> accs;
    if (!mode.is_sample()) {
        const u64 total = static_cast<u64>(n) * n * n;
        const u64 chunk = std::max<u64>(1, static_cast<u64>(n) * n); // one x-plane
        const u64 nchunks = (total + chunk - 1) / chunk;
        accs.resize(nchunks);
        parallel_chunks(0, total, chunk, [&](u64 c, u64 b, u64 e) {
            auto& acc = accs[c];
            for (u64 i = b; i < e; ++i) {
                const u32 z = static_cast<u32>(i % n);
                const u32 y = static_cast<u32>((i / n) % n);
                const u32 x = static_cast<u32>(i / (static_cast<u64>(n) * n));
                acc.record(moufang_fail_mask(t, x, y, z), x, y, z);
            }
        }, threads);
    } else {
        const u64 chunk = 1u << 14;
        const u64 nchunks = (mode.count + chunk - 1) / chunk;
        accs.resize(nchunks);
        parallel_chunks(0, mode.count, chunk, [&](u64 c, u64 b, u64 e) {
            auto& acc = accs[c];
            std::mt19937_64 rng(mix_seed(mode.seed, c));
            std::uniform_int_distribution<u32> pick(0, n - 1);
            for (u64 i = b; i < e; ++i) {
                const u32 x = pick(rng), y = pick(rng), z = pick(rng);
                acc.record(moufang_fail_mask(t, x, y, z), x, y, z);
            }
        }, threads);
    }

    for (const auto& acc : accs) {
        for (int i = 0; i < 4; ++i) {
            rep.identities[i].checked += acc.checked[i];
            rep.identities[i].failures += acc.failures[i];
            if (acc.first[i]) {
                auto& cur = rep.identities[i].first_counterexample;
                if (!cur || *acc.first[i] < *cur) cur = acc.first[i];
            }
        }
    }
    return rep;
}

// ---- closures, normality, center ----------------------------------------------

SubloopHandle subloop_closure(const LoopOps& t, std::span<const std::uint32_t> seed) {
    IndexSet s(t.size());
    s.add(0);
    for (u32 x : seed) {
        if (x >= t.size()) throw value_error("seed index out of range");
        s.add(x);
    }
    close_under_ops(t, s, /*stop_at_full=*/false);
    return to_handle(s);
}

bool generates(const LoopOps& t, std::span<const std::uint32_t> seed) {
    IndexSet s(t.size());
    s.add(0);
    for (u32 x : seed) {
        if (x >= t.size()) throw value_error("seed index out of range");
        s.add(x);
    }
    close_under_ops(t, s, /*stop_at_full=*/true);
    return s.count() == t.size();
}

InnerMaps inner_maps(const LoopOps& t, std::uint32_t x, std::uint32_t y) {
    const u32 n = t.size();
    if (x >= n || y >= n) throw value_error("index out of range");
    InnerMaps m;
    m.left.resize(n);
    m.right.resize(n);
    m.conj.resize(n);
    const u32 xy = t.mul(x, y);
    for (u32 z = 0; z < n; ++z) {
        m.left[z] = t.ldiv(xy, t.mul(x, t.mul(y, z)));
        m.right[z] = t.rdiv(t.mul(t.mul(z, x), y), xy);
        m.conj[z] = t.ldiv(x, t.mul(z, x));
    }
    return m;
}

namespace {

// One pass over all inner-map generators applied to members of s; adds
// images that fall outside. Returns the number of additions. A nonzero
// `batch` stops the pass early after that many additions so the caller can
// re-close cheaply instead of finishing an O(N^2 |s|) scan.
u64 inner_expand_once(const LoopOps& t, IndexSet& s, u64 batch) {
    const u32 n = t.size();
    const std::size_t members = s.list.size(); // images of later additions come next pass
    u64 added = 0;
    // T(x) images
    for (u32 x = 0; x < n; ++x) {
        for (std::size_t j = 0; j < members; ++j) {
            const u32 z = s.list[j];
            if (s.add(t.ldiv(x, t.mul(z, x)))) {
                if (++added >= batch && batch != 0) return added;
            }
        }
    }
    // L(x,y), R(x,y) images
    for (u32 x = 0; x < n; ++x) {
        for (u32 y = 0; y < n; ++y) {
            const u32 xy = t.mul(x, y);
            for (std::size_t j = 0; j < members; ++j) {
                const u32 z = s.list[j];
                if (s.add(t.ldiv(xy, t.mul(x, t.mul(y, z))))) {
                    if (++added >= batch && batch != 0) return added;
                }
                if (s.add(t.rdiv(t.mul(t.mul(z, x), y), xy))) {
                    if (++added >= batch && batch != 0) return added;
                }
            }
        }
    }
    return added;
}

} // namespace

SubloopHandle normal_closure(const LoopOps& t, std::span<const std::uint32_t> seed) {
    const u32 n = t.size();
    IndexSet s(n);
    s.add(0);
    for (u32 x : seed) {
        if (x >= n) throw value_error("seed index out of range");
        s.add(x);
    }
    close_under_ops(t, s, /*stop_at_full=*/true);
    for (;;) {
        if (s.count() == n) break; // the whole loop is trivially normal
        if (inner_expand_once(t, s, /*batch=*/32) == 0) break; // fixpoint: s is normal
        close_under_ops(t, s, /*stop_at_full=*/true);
    }
    return to_handle(s);
}

bool is_normal(const LoopOps& t, const SubloopHandle& s) {
    if (!is_closed_subloop(t, s))
        throw value_error("candidate set is not a subloop");
    if (s.size() == t.size()) return true;
    IndexSet set(t.size());
    for (u32 x : s.indices) set.add(x);
    return inner_expand_once(t, set, /*batch=*/1) == 0;
}

SubloopHandle center(const LoopOps& t) {
    const u32 n = t.size();
    std::vector<u32> commuting;
    for (u32 z = 0; z < n; ++z) {
        bool ok = true;
        for (u32 x = 0; x < n && ok; ++x)
            ok = t.mul(z, x) == t.mul(x, z);
        if (ok) commuting.push_back(z);
    }
    SubloopHandle h;
    for (u32 z : commuting) {
        bool ok = true;
        for (u32 x = 0; x < n && ok; ++x) {
            for (u32 y = 0; y < n && ok; ++y) {
                const u32 xy = t.mul(x, y);
                if (t.mul(t.mul(z, x), y) != t.mul(z, xy)) ok = false;
                else if (t.mul(t.mul(x, z), y) != t.mul(x, t.mul(z, y))) ok = false;
                else if (t.mul(xy, z) != t.mul(x, t.mul(y, z))) ok = false;
            }
        }
        if (ok) h.indices.push_back(z);
    }
    return h;
}

bool is_simple(const LoopOps& t, unsigned threads) {
    const u32 n = t.size();
    if (n == 1) return false; // convention: the trivial loop is not simple
    std::atomic<bool> failed{false};
    parallel_chunks(1, n, 8, [&](u64, u64 b, u64 e) {
        for (u64 x = b; x < e && !failed.load(std::memory_order_relaxed); ++x) {
            const u32 seed[1] = {static_cast<u32>(x)};
            if (normal_closure(t, seed).size() != n) failed.store(true);
        }
    }, threads);
    return !failed;
}

// ---- automorphism predicate, permutation order ---------------------------------

bool check_automorphism(const LoopOps& t, std::span<const std::uint32_t> perm,
                        unsigned threads) {
    const u32 n = t.size();
    if (perm.size() != n) throw value_error("permutation has wrong length");
    std::vector<std::uint8_t> seen(n, 0);
    for (u32 v : perm) {
        if (v >= n || seen[v]) throw value_error("not a permutation");
        seen[v] = 1;
    }
    if (perm[0] != 0) return false;
    std::atomic<bool> bad{false};
    parallel_chunks(0, n, 8, [&](u64, u64 b, u64 e) {
        for (u64 x = b; x < e && !bad.load(std::memory_order_relaxed); ++x) {
            for (u32 y = 0; y < n; ++y) {
                if (perm[t.mul(static_cast<u32>(x), y)] !=
                    t.mul(perm[x], perm[y])) {
                    bad.store(true);
                    break;
                }
            }
        }
    }, threads);
    return !bad;
}

std::uint64_t permutation_order(std::span<const std::uint32_t> perm) {
    const std::size_t n = perm.size();
    std::vector<std::uint8_t> seen(n, 0);
    u64 order = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        u64 len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = perm[j];
            ++len;
        }
        order = std::lcm(order, len);
    }
    return order;
}

// ---- generator triple scan ------------------------------------------------------

TripleScanReport scan_generator_triples(const LoopOps& t, const ScanMode& mode,
                                        std::size_t witness_limit, unsigned threads) {
    const u32 n = t.size();
    struct Acc {
        u64 scanned = 0, assoc = 0, gen = 0, nongen = 0;
        std::vector<std::array<u32, 3>> witnesses;
    };

    auto visit = [&](Acc& acc, u32 a, u32 b, u32 c) {
        ++acc.scanned;
        if (t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c))) {
            ++acc.assoc;
            return;
        }
        const u32 seed[3] = {a, b, c};
        if (generates(t, seed)) {
            ++acc.gen;
        } else {
            ++acc.nongen;
            if (acc.witnesses.size() < witness_limit) acc.witnesses.push_back({a, b, c});
        }
    };

    std::vector<Acc> accs;
    if (!mode.is_sample()) {
        const u64 total = static_cast<u64>(n) * n * n;
        const u64 chunk = std::max<u64>(1, static_cast<u64>(n) * n);
        accs.resize((total + chunk - 1) / chunk);
        parallel_chunks(0, total, chunk, [&](u64 ci, u64 b, u64 e) {
            for (u64 i = b; i < e; ++i) {
                const u32 c = static_cast<u32>(i % n);
                const u32 bb = static_cast<u32>((i / n) % n);
                const u32 a = static_cast<u32>(i / (static_cast<u64>(n) * n));
                visit(accs[ci], a, bb, c);
            }
        }, threads);
    } else {
        const u64 chunk = 4096;
        accs.resize((mode.count + chunk - 1) / chunk);
        parallel_chunks(0, mode.count, chunk, [&](u64 ci, u64 b, u64 e) {
            std::mt19937_64 rng(mix_seed(mode.seed, ci));
            std::uniform_int_distribution<u32> pick(0, n - 1);
            for (u64 i = b; i < e; ++i) {
                const u32 a = pick(rng), bb = pick(rng), c = pick(rng);
                visit(accs[ci], a, bb, c);
            }
        }, threads);
    }

    TripleScanReport rep;
    rep.mode = mode;
    for (const auto& acc : accs) {
        rep.scanned += acc.scanned;
        rep.associating += acc.assoc;
        rep.nonassoc_generating += acc.gen;
        rep.nonassoc_nongenerating += acc.nongen;
        for (const auto& w : acc.witnesses) rep.nongenerating_witnesses.push_back(w);
    }
    std::sort(rep.nongenerating_witnesses.begin(), rep.nongenerating_witnesses.end());
    if (rep.nongenerating_witnesses.size() > witness_limit)
        rep.nongenerating_witnesses.resize(witness_limit);
    return rep;
}

} // namespace paige
