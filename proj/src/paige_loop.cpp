#include "paige/paige_loop.hpp"

#include <algorithm>
#include <cstring>

#include "paige/detail/zorn_kernel.hpp"

namespace paige {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u8 = std::uint8_t;

// index arithmetic over a small field through its precomputed tables
struct IdxArith {
    const u32* add_tab;
    const u32* mul_tab;
    const u32* neg_tab;
    u64 q;
    u8 add(u8 a, u8 b) const { return static_cast<u8>(add_tab[a * q + b]); }
    u8 mul(u8 a, u8 b) const { return static_cast<u8>(mul_tab[a * q + b]); }
    u8 neg(u8 a) const { return static_cast<u8>(neg_tab[a]); }
    u8 sub(u8 a, u8 b) const { return add(a, neg(b)); }

    static IdxArith from(const Field& f) {
        if (f.add_table() == nullptr)
            throw guardrail_error("field order " + std::to_string(f.order()) +
                                  " too large for index-level Zorn arithmetic");
        return IdxArith{f.add_table(), f.mul_table(), f.neg_table(), f.order()};
    }
};

bool char2(const Field& f) { return f.characteristic() == 2; }

// lexicographic comparison of 8-tuples
bool tuple_less(const u8* a, const u8* b) {
    for (int i = 0; i < 8; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

} // namespace

// ---- API-level operations on PaigeElement -----------------------------------

PaigeElement canonicalize(const ZornMatrix& a) {
    const Field& f = a.field();
    if (f.is_rational_field())
        throw value_error("Paige loop elements are finite-field only");
    if (norm(a) != f.one()) throw value_error("canonicalize requires a unit-norm matrix");
    if (char2(f)) return PaigeElement(a);
    const ZornMatrix n = zorn_neg(a);
    const auto ta = a.serialize(), tn = n.serialize();
    return PaigeElement(ta <= tn ? a : n);
}

PaigeElement paige_mul(const PaigeElement& x, const PaigeElement& y) {
    return canonicalize(zorn_mul(x.rep(), y.rep()));
}

PaigeElement paige_inv(const PaigeElement& x) {
    return canonicalize(zorn_inverse(x.rep()));
}

PaigeElement loop_associator(const PaigeElement& x, const PaigeElement& y,
                             const PaigeElement& z) {
    const PaigeElement yz = paige_mul(y, z);
    const PaigeElement xy = paige_mul(x, y);
    return paige_mul(paige_inv(paige_mul(x, yz)), paige_mul(xy, z));
}

std::uint64_t element_order(const PaigeElement& x) {
    const PaigeElement id = canonicalize(zorn_identity(x.rep().field()));
    PaigeElement acc = x;
    u64 k = 1;
    while (acc != id) {
        acc = paige_mul(acc, x); // left-bracketed powers; unambiguous by diassociativity
        ++k;
        if (k > (1u << 20)) throw internal_error("element order diverged");
    }
    return k;
}

std::uint64_t predicted_star_order(std::uint64_t q) {
    const auto v = static_cast<unsigned __int128>(q) * q * q * (static_cast<unsigned __int128>(q) * q * q * q - 1);
    if (v > static_cast<unsigned __int128>(UINT64_MAX))
        throw value_error("loop order overflows 64 bits");
    return static_cast<u64>(v);
}

std::uint64_t predicted_order(std::uint64_t q) {
    const u64 star = predicted_star_order(q);
    return (q % 2 == 0) ? star : star / 2;
}

// ---- PaigeLoop ----------------------------------------------------------------

PaigeLoop::PaigeLoop(Field f, bool quotient)
    : field_(std::move(f)), quotient_(quotient), q_(field_.order()), identity_key_(0) {}

std::uint64_t PaigeLoop::encode(const std::uint8_t* t) const {
    u64 key = 0;
    for (int i = 0; i < 8; ++i) key = key * q_ + t[i];
    return key;
}

void PaigeLoop::canonical_of(std::uint8_t* t) const {
    if (!quotient_ || field_.characteristic() == 2) return;
    const u32* neg = neg_tab_ != nullptr ? neg_tab_ : field_.neg_table();
    u8 n[8];
    for (int i = 0; i < 8; ++i) n[i] = static_cast<u8>(neg[t[i]]);
    if (tuple_less(n, t)) std::memcpy(t, n, 8);
}

std::uint32_t PaigeLoop::index_of_key(std::uint64_t key) const {
    if (!dense_index_.empty()) {
        const u32 v = dense_index_[key];
        if (v == 0) throw internal_error("product escaped the enumerated loop");
        return v - 1;
    }
    if (key == identity_key_) return 0;
    const auto it = std::lower_bound(keys_.begin() + 1, keys_.end(), key);
    if (it == keys_.end() || *it != key)
        throw internal_error("product escaped the enumerated loop");
    return static_cast<u32>(it - keys_.begin());
}

void PaigeLoop::finalize(std::vector<std::uint64_t> keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    u8 id[8] = {1, 0, 0, 0, 0, 0, 0, 1};
    identity_key_ = encode(id);
    const auto it = std::lower_bound(keys.begin(), keys.end(), identity_key_);
    if (it == keys.end() || *it != identity_key_)
        throw internal_error("identity missing from enumerated loop");
    std::rotate(keys.begin(), it, it + 1);

    keys_ = std::move(keys);
    comps_.resize(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        u64 k = keys_[i];
        for (int j = 7; j >= 0; --j) {
            comps_[i][j] = static_cast<u8>(k % q_);
            k /= q_;
        }
    }

    add_tab_ = field_.add_table();
    mul_tab_ = field_.mul_table();
    neg_tab_ = field_.neg_table();

    // dense inverse of the key packing; q^8 stays modest at desk scale
    u64 key_space = 1;
    for (int i = 0; i < 8; ++i) key_space *= q_;
    if (key_space <= (1u << 24)) {
        dense_index_.assign(key_space, 0);
        for (std::size_t i = 0; i < keys_.size(); ++i)
            dense_index_[keys_[i]] = static_cast<u32>(i) + 1;
    }
}

PaigeLoop PaigeLoop::enumerate(const Field& f, const EnumerateOptions& opts) {
    if (f.is_rational_field())
        throw value_error("enumeration over the rationals is not supported");
    const u64 q = f.order();
    if (q > 255) throw guardrail_error("field order too large for loop enumeration");
    const u64 predicted = opts.quotient ? predicted_order(q) : predicted_star_order(q);
    if (predicted > opts.max_elements)
        throw guardrail_error("predicted loop order " + std::to_string(predicted) +
                              " exceeds the enumeration guardrail of " +
                              std::to_string(opts.max_elements));

    PaigeLoop loop(f, opts.quotient);
    const IdxArith F = IdxArith::from(f);
    const u32* inv_tab = f.inv_table();

    std::vector<u64> keys;
    keys.reserve(predicted * (opts.quotient && q % 2 == 1 ? 2 : 1));

    const u64 q3 = q * q * q;
    u8 t[8];
    // stratified scan: pick (a1, a12, a21) freely; a1 != 0 forces
    // a2 = (1 + (a12, a21)) / a1, while the a1 = 0 slab needs
    // (a12, a21) = -1 and leaves a2 free
    for (u64 v12 = 0; v12 < q3; ++v12) {
        u64 w = v12;
        t[1] = static_cast<u8>(w % q); w /= q;
        t[2] = static_cast<u8>(w % q); w /= q;
        t[3] = static_cast<u8>(w % q);
        for (u64 v21 = 0; v21 < q3; ++v21) {
            w = v21;
            t[4] = static_cast<u8>(w % q); w /= q;
            t[5] = static_cast<u8>(w % q); w /= q;
            t[6] = static_cast<u8>(w % q);
            const u8 d = detail::dot3(F, t + 1, t + 4);
            for (u64 a1 = 1; a1 < q; ++a1) {
                t[0] = static_cast<u8>(a1);
                t[7] = F.mul(F.add(1, d), static_cast<u8>(inv_tab[a1]));
                u8 c[8];
                std::memcpy(c, t, 8);
                loop.canonical_of(c);
                keys.push_back(loop.encode(c));
            }
            if (d == F.neg(1)) {
                t[0] = 0;
                for (u64 a2 = 0; a2 < q; ++a2) {
                    t[7] = static_cast<u8>(a2);
                    u8 c[8];
                    std::memcpy(c, t, 8);
                    loop.canonical_of(c);
                    keys.push_back(loop.encode(c));
                }
            }
        }
    }

    loop.finalize(std::move(keys));
    return loop;
}

PaigeLoop PaigeLoop::from_tuples(const Field& f,
                                 const std::vector<std::array<std::uint64_t, 8>>& tuples) {
    if (f.is_rational_field()) throw cache_error("cache field cannot be the rationals");
    const u64 q = f.order();
    if (q > 255) throw cache_error("cache field order out of range");
    if (tuples.empty()) throw cache_error("cache holds no elements");

    const IdxArith F = IdxArith::from(f);
    const u32* neg = f.neg_table();

    std::vector<u64> raw_keys;
    raw_keys.reserve(tuples.size());
    bool all_canonical = true;

    PaigeLoop probe(f, false); // encode helper only
    for (const auto& tup : tuples) {
        u8 t[8];
        for (int i = 0; i < 8; ++i) {
            if (tup[i] >= q) throw cache_error("tuple component out of field range");
            t[i] = static_cast<u8>(tup[i]);
        }
        if (detail::zorn_norm_kernel(F, t) != 1) throw cache_error("tuple with norm != 1");
        if (f.characteristic() != 2) {
            u8 n[8];
            for (int i = 0; i < 8; ++i) n[i] = static_cast<u8>(neg[t[i]]);
            if (tuple_less(n, t)) all_canonical = false;
        }
        raw_keys.push_back(probe.encode(t));
    }

    // classify: canonical list = quotient loop M; negation-closed list = M*
    bool quotient = true;
    if (f.characteristic() != 2 && !all_canonical) {
        quotient = false;
        std::vector<u64> sorted = raw_keys;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& tup : tuples) {
            u8 n[8];
            for (int i = 0; i < 8; ++i) n[i] = static_cast<u8>(neg[tup[i]]);
            if (!std::binary_search(sorted.begin(), sorted.end(), probe.encode(n)))
                throw cache_error("element list is neither canonical nor closed under negation");
        }
    }

    PaigeLoop loop(f, quotient);
    const std::size_t before = raw_keys.size();
    try {
        loop.finalize(std::move(raw_keys));
    } catch (const internal_error& e) {
        throw cache_error(e.what()); // e.g. the identity tuple is missing
    }
    if (loop.keys_.size() != before) throw cache_error("duplicate elements in cache");
    return loop;
}

std::uint32_t PaigeLoop::mul(std::uint32_t i, std::uint32_t j) const {
    const IdxArith F{add_tab_, mul_tab_, neg_tab_, q_};
    u8 out[8];
    detail::zorn_mul_kernel(F, comps_[i].data(), comps_[j].data(), out);
    canonical_of(out);
    return index_of_key(encode(out));
}

std::uint32_t PaigeLoop::inv(std::uint32_t i) const {
    const IdxArith F{add_tab_, mul_tab_, neg_tab_, q_};
    u8 out[8];
    detail::zorn_conj_kernel(F, comps_[i].data(), out); // unit norm: inverse = conjugate
    canonical_of(out);
    return index_of_key(encode(out));
}

std::uint64_t PaigeLoop::order_of(std::uint32_t i) const {
    u64 k = 1;
    u32 acc = i;
    while (acc != 0) {
        acc = mul(acc, i);
        ++k;
    }
    return k;
}

std::array<std::uint64_t, 8> PaigeLoop::tuple(std::uint32_t i) const {
    std::array<u64, 8> out{};
    for (int j = 0; j < 8; ++j) out[j] = comps_[i][j];
    return out;
}

ZornMatrix PaigeLoop::matrix(std::uint32_t i) const {
    return zorn_from_tuple(field_, tuple(i));
}

PaigeElement PaigeLoop::element(std::uint32_t i) const { return canonicalize(matrix(i)); }

std::uint32_t PaigeLoop::index_of(const PaigeElement& x) const {
    if (x.rep().field() != field_) throw value_error("element from a different field");
    const auto t = x.rep().serialize();
    u8 c[8];
    for (int i = 0; i < 8; ++i) c[i] = static_cast<u8>(t[i]);
    canonical_of(c);
    return index_of_key(encode(c));
}

std::optional<std::uint32_t> PaigeLoop::find_tuple(const std::array<std::uint64_t, 8>& t) const {
    for (auto v : t)
        if (v >= q_) return std::nullopt;
    u8 c[8];
    for (int i = 0; i < 8; ++i) c[i] = static_cast<u8>(t[i]);
    const u64 key = encode(c);
    if (key == identity_key_) return 0;
    const auto it = std::lower_bound(keys_.begin() + 1, keys_.end(), key);
    if (it == keys_.end() || *it != key) return std::nullopt;
    return static_cast<u32>(it - keys_.begin());
}

std::vector<std::uint32_t> PaigeLoop::frobenius_map(unsigned k) const {
    if (field_.characteristic() == 0) throw value_error("frobenius undefined here");
    if (k >= field_.degree()) throw value_error("frobenius exponent out of range");
    std::vector<u32> perm(size());
    for (u32 i = 0; i < size(); ++i) {
        u8 t[8];
        std::memcpy(t, comps_[i].data(), 8);
        for (unsigned step = 0; step < k; ++step)
            for (int j = 0; j < 8; ++j) t[j] = static_cast<u8>(field_.frob_idx(t[j]));
        canonical_of(t);
        perm[i] = index_of_key(encode(t));
    }
    return perm;
}

} // namespace paige
