#include "paige/galois.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "paige/detail/zorn_kernel.hpp"
#include "paige/parallel.hpp"

namespace paige {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u8 = std::uint8_t;

std::vector<u64> divisors_of(u64 n) {
    std::vector<u64> out;
    for (u64 d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

struct BigArith {
    const u32* add_tab;
    const u32* mul_tab;
    const u32* neg_tab;
    u64 q;
    u8 add(u8 a, u8 b) const { return static_cast<u8>(add_tab[a * q + b]); }
    u8 mul(u8 a, u8 b) const { return static_cast<u8>(mul_tab[a * q + b]); }
    u8 neg(u8 a) const { return static_cast<u8>(neg_tab[a]); }
    u8 sub(u8 a, u8 b) const { return add(a, neg(b)); }
};

u64 encode8(const u8* t, u64 q) {
    u64 key = 0;
    for (int i = 0; i < 8; ++i) key = key * q + t[i];
    return key;
}

void big_canonical(const BigArith& F, bool char2, u8* t) {
    if (char2) return;
    u8 n[8];
    for (int i = 0; i < 8; ++i) n[i] = F.neg(t[i]);
    for (int i = 0; i < 8; ++i) {
        if (n[i] != t[i]) {
            if (n[i] < t[i]) std::memcpy(t, n, 8);
            return;
        }
    }
}

} // namespace

bool GaloisSubgroup::contains(const GaloisSubgroup& other) const {
    for (u64 e : other.exponents)
        if (!std::binary_search(exponents.begin(), exponents.end(), e)) return false;
    return true;
}

GaloisGroupDesc galois_group(std::uint64_t p, std::uint64_t n) {
    if (!is_prime_u64(p)) throw value_error("characteristic must be prime");
    if (n == 0) throw value_error("degree must be >= 1");
    GaloisGroupDesc g;
    g.p = p;
    g.n = n;
    for (u64 d : divisors_of(n)) {
        GaloisSubgroup sub;
        sub.d = d;
        sub.order = n / d;
        for (u64 e = 0; e < n; e += d) sub.exponents.push_back(e);
        g.subgroups.push_back(std::move(sub));
    }
    return g;
}

FixedField fixed_field(const Field& big, std::uint64_t d, std::uint64_t scan_limit) {
    if (big.is_rational_field()) throw value_error("fixed fields need a finite field");
    const u64 n = big.degree();
    if (d == 0 || n % d != 0)
        throw value_error("subgroup exponent " + std::to_string(d) + " does not divide " +
                          std::to_string(n));
    const u64 q = big.order();
    if (q > scan_limit) throw guardrail_error("field too large for a fixed-point scan");

    FixedField out;
    out.d = d;
    for (u64 idx = 0; idx < q; ++idx) {
        u64 v = idx;
        for (u64 k = 0; k < d; ++k) v = big.frob_idx(static_cast<u32>(v));
        if (v == idx) out.elements.push_back(idx);
    }

    u64 expected = 1;
    for (u64 i = 0; i < d; ++i) expected *= big.characteristic();
    if (out.elements.size() != expected)
        throw internal_error("fixed field has wrong size");

    // closure under the field operations; full check at desk scale,
    // deterministic stride subsample above it
    const std::size_t m = out.elements.size();
    const std::size_t stride = m <= 1024 ? 1 : m / 512;
    for (std::size_t i = 0; i < m; i += stride) {
        for (std::size_t j = 0; j < m; j += stride) {
            const u32 x = static_cast<u32>(out.elements[i]);
            const u32 y = static_cast<u32>(out.elements[j]);
            if (!std::binary_search(out.elements.begin(), out.elements.end(),
                                    static_cast<u64>(big.add_idx(x, y))) ||
                !std::binary_search(out.elements.begin(), out.elements.end(),
                                    static_cast<u64>(big.mul_idx(x, y))))
                throw internal_error("fixed set is not closed under field operations");
        }
    }

    out.embedding = subfield_embedding(Field::make(big.characteristic(), d), big, scan_limit);
    std::vector<u64> image = out.embedding;
    std::sort(image.begin(), image.end());
    if (image != out.elements)
        throw internal_error("fixed field differs from the subfield embedding image");
    return out;
}

const TowerRecord& GaloisTower::record(std::uint64_t d) const {
    for (const auto& r : records)
        if (r.d == d) return r;
    throw value_error(std::to_string(d) + " does not divide " + std::to_string(n));
}

GaloisTower correspondence_table(std::uint64_t p, std::uint64_t n, const TowerOptions& opts) {
    GaloisGroupDesc g = galois_group(p, n); // validates p, n

    GaloisTower tower;
    tower.p = p;
    tower.n = n;
    tower.big = Field::make(p, n);
    tower.elementwise = tower.big.order() != 0 && tower.big.order() <= opts.elementwise_limit;

    for (auto& sub : g.subgroups) {
        TowerRecord rec;
        rec.d = sub.d;
        rec.subfield = Field::make(p, sub.d);
        rec.subgroup = sub;
        try {
            rec.paige_order = predicted_order(rec.subfield.order());
        } catch (const value_error&) {
            rec.paige_order.reset(); // beyond 64 bits; marker omitted
        }
        if (tower.elementwise) {
            FixedField ff = fixed_field(tower.big, sub.d, opts.elementwise_limit);
            rec.fixed_set = std::move(ff.elements);
            rec.embedding = std::move(ff.embedding);
        }
        tower.records.push_back(std::move(rec));
    }

    // Theorem-level sanity: divisibility, reversed subgroup containment and
    // subfield-image containment must agree on every pair
    for (const auto& ra : tower.records) {
        for (const auto& rb : tower.records) {
            const bool div = rb.d % ra.d == 0;
            const bool grp = ra.subgroup.contains(rb.subgroup);
            if (div != grp) throw internal_error("subgroup containment disagrees with divisibility");
            if (tower.elementwise) {
                const auto& sa = *ra.fixed_set;
                const auto& sb = *rb.fixed_set;
                const bool sub = std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
                if (div != sub) throw internal_error("subfield containment disagrees with divisibility");
            }
        }
    }

    for (const auto& ra : tower.records) {
        for (const auto& rb : tower.records) {
            if (ra.d == rb.d || rb.d % ra.d != 0) continue;
            const u64 quot = rb.d / ra.d;
            if (is_prime_u64(quot)) tower.covers.emplace_back(ra.d, rb.d);
        }
    }
    return tower;
}

std::uint64_t lattice_meet(const GaloisTower& tower, std::uint64_t d1, std::uint64_t d2) {
    if (d1 == 0 || d2 == 0 || tower.n % d1 != 0 || tower.n % d2 != 0)
        throw value_error("meet arguments must divide the tower degree");
    return std::gcd(d1, d2);
}

std::uint64_t lattice_join(const GaloisTower& tower, std::uint64_t d1, std::uint64_t d2) {
    if (d1 == 0 || d2 == 0 || tower.n % d1 != 0 || tower.n % d2 != 0)
        throw value_error("join arguments must divide the tower degree");
    return std::lcm(d1, d2);
}

PaigeEmbedding embed_paige(const Field& small, const Field& big, const EmbedOptions& opts) {
    // distinct refusal reasons, then the field-level embedding
    PaigeEmbedding out;
    out.small_field = small;
    out.big_field = big;
    out.element_map = subfield_embedding(small, big);

    if (big.order() > 255)
        throw guardrail_error("target field too large for Zorn index arithmetic");
    if (big.add_table() == nullptr || big.neg_table() == nullptr)
        throw guardrail_error("target field has no index tables");

    PaigeLoop loop = PaigeLoop::enumerate(small, {true, opts.max_small_elements});
    out.small_order = loop.size();

    const BigArith F{big.add_table(), big.mul_table(), big.neg_table(), big.order()};
    const bool char2 = big.characteristic() == 2;
    const u64 qb = big.order();

    // canonical image tuple per small element
    std::vector<std::array<u8, 8>> image(loop.size());
    out.image_keys.resize(loop.size());
    for (u32 i = 0; i < loop.size(); ++i) {
        const auto& c = loop.components(i);
        u8 t[8];
        for (int k = 0; k < 8; ++k) t[k] = static_cast<u8>(out.element_map[c[k]]);
        big_canonical(F, char2, t);
        std::memcpy(image[i].data(), t, 8);
        out.image_keys[i] = encode8(t, qb);
    }

    // injectivity
    std::vector<u64> sorted = out.image_keys;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw internal_error("induced loop map is not injective");

    // multiplication preservation, exhaustive over the small loop
    const u32 m = loop.size();
    std::atomic<bool> bad{false};
    std::vector<u64> checked_per_chunk((m + 7) / 8, 0);
    parallel_chunks(0, m, 8, [&](u64 ci, u64 b, u64 e) {
        u64 done = 0;
        for (u64 i = b; i < e && !bad.load(std::memory_order_relaxed); ++i) {
            for (u32 j = 0; j < m; ++j) {
                const u32 k = loop.mul(static_cast<u32>(i), j);
                u8 prod[8];
                detail::zorn_mul_kernel(F, image[i].data(), image[j].data(), prod);
                big_canonical(F, char2, prod);
                if (encode8(prod, qb) != out.image_keys[k]) {
                    bad.store(true);
                    break;
                }
                ++done;
            }
        }
        checked_per_chunk[ci] = done;
    }, opts.threads);
    if (bad) throw internal_error("induced loop map does not preserve multiplication");
    for (u64 c : checked_per_chunk) out.pairs_checked += c;
    return out;
}

std::string tower_to_dot(const GaloisTower& tower) {
    std::ostringstream os;
    os << "digraph galois_tower {\n  rankdir=BT;\n";
    for (const auto& r : tower.records) {
        os << "  d" << r.d << " [shape=box, label=\"GF(" << tower.p << "^" << r.d
           << ") | ⟨φ^" << r.d << "⟩ | M(GF(" << tower.p << "^" << r.d
           << "))\"];\n";
    }
    for (const auto& [lo, hi] : tower.covers) os << "  d" << lo << " -> d" << hi << ";\n";
    os << "}\n";
    return os.str();
}

std::string tower_to_json(const GaloisTower& tower) {
    nlohmann::json j;
    j["schema"] = "tower/1";
    j["p"] = tower.p;
    j["n"] = tower.n;
    j["elementwise"] = tower.elementwise;
    j["records"] = nlohmann::json::array();
    for (const auto& r : tower.records) {
        nlohmann::json rec;
        rec["d"] = r.d;
        rec["field"] = {{"p", tower.p}, {"n", r.d}, {"modulus", r.subfield.modulus()}};
        rec["subgroup"] = {{"generator_exponent", r.d},
                           {"order", r.subgroup.order},
                           {"exponents", r.subgroup.exponents}};
        if (r.paige_order) rec["paige_order"] = *r.paige_order;
        if (r.embedding) rec["embedding"] = *r.embedding;
        if (r.fixed_set) rec["fixed_set_size"] = r.fixed_set->size();
        j["records"].push_back(std::move(rec));
    }
    j["covers"] = nlohmann::json::array();
    for (const auto& [lo, hi] : tower.covers) j["covers"].push_back({lo, hi});
    return j.dump(2) + "\n";
}

} // namespace paige
