#include "paige/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace paige {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// deterministic Miller-Rabin for 64-bit inputs
bool miller_rabin(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// ---- polynomial helpers over GF(p), coefficient vectors c0..c_deg ----------

using Poly = std::vector<u32>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a mod b, b monic
Poly poly_rem(Poly a, const Poly& b, u64 p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const u64 lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        if (lead != 0) {
            for (std::size_t i = 0; i < db; ++i) {
                u64 v = a[shift + i] + p - (lead * b[i]) % p;
                a[shift + i] = static_cast<u32>(v % p);
            }
        }
        a.pop_back();
        poly_trim(a);
        if (a.size() <= db) break;
    }
    poly_trim(a);
    return a;
}

} // namespace

bool is_prime_u64(std::uint64_t v) { return miller_rabin(v); }

// ---- Field data -------------------------------------------------------------

struct Field::Data {
    u64 p = 0;       // characteristic, 0 = rationals
    u64 n = 1;       // degree
    u64 q = 0;       // p^n, 0 for rationals
    std::vector<u32> modulus; // c0..c_{n-1}; empty when n == 1 or rationals

    // tables; binary tables only when q <= kBinaryTableLimit,
    // unary tables when q <= kUnaryTableLimit
    std::vector<u32> add_tab, mul_tab;            // q*q
    std::vector<u32> neg_tab, inv_tab, frob_tab;  // q

    static constexpr u64 kBinaryTableLimit = 256;
    static constexpr u64 kUnaryTableLimit = 1u << 16;

    bool is_rat() const { return p == 0; }

    void decode(u64 idx, u32* digits) const {
        for (u64 i = 0; i < n; ++i) {
            digits[i] = static_cast<u32>(idx % p);
            idx /= p;
        }
    }
    u64 encode(const u32* digits) const {
        u64 idx = 0;
        for (u64 i = n; i-- > 0;) idx = idx * p + digits[i];
        return idx;
    }

    u64 add_raw(u64 a, u64 b) const {
        if (n == 1) {
            u64 s = a + b;
            return s >= p ? s - p : s;
        }
        u32 da[64], db[64];
        decode(a, da);
        decode(b, db);
        for (u64 i = 0; i < n; ++i) {
            u32 s = da[i] + db[i];
            da[i] = s >= p ? static_cast<u32>(s - p) : s;
        }
        return encode(da);
    }

    u64 neg_raw(u64 a) const {
        if (n == 1) return a == 0 ? 0 : p - a;
        u32 da[64];
        decode(a, da);
        for (u64 i = 0; i < n; ++i)
            if (da[i] != 0) da[i] = static_cast<u32>(p - da[i]);
        return encode(da);
    }

    u64 mul_raw(u64 a, u64 b) const {
        if (n == 1) return mulmod_u64(a, b, p);
        u32 da[64], db[64];
        decode(a, da);
        decode(b, db);
        // schoolbook product then reduction by x^n = -modulus
        u64 buf[127] = {0};
        for (u64 i = 0; i < n; ++i) {
            if (da[i] == 0) continue;
            for (u64 j = 0; j < n; ++j)
                buf[i + j] = (buf[i + j] + static_cast<u64>(da[i]) * db[j]) % p;
        }
        for (u64 k = 2 * n - 2; k + 1 > n; --k) {
            const u64 c = buf[k];
            if (c == 0) continue;
            buf[k] = 0;
            for (u64 j = 0; j < n; ++j) {
                if (modulus[j] == 0) continue;
                u64 v = buf[k - n + j] + (p - (c * modulus[j]) % p);
                buf[k - n + j] = v % p;
            }
        }
        u32 out[64];
        for (u64 i = 0; i < n; ++i) out[i] = static_cast<u32>(buf[i]);
        return encode(out);
    }

    u64 pow_raw(u64 a, u64 e) const {
        u64 r = 1, base = a;
        while (e) {
            if (e & 1) r = mul_raw(r, base);
            base = mul_raw(base, base);
            e >>= 1;
        }
        return r;
    }

    u64 inv_raw(u64 a) const {
        if (a == 0) throw value_error("division by zero in GF(" + std::to_string(p) +
                                      (n > 1 ? "^" + std::to_string(n) : "") + ")");
        return pow_raw(a, q - 2);
    }

    u64 frob_raw(u64 a) const { return pow_raw(a, p); }

    void build_tables() {
        if (is_rat()) return;
        if (q <= kUnaryTableLimit) {
            neg_tab.resize(q);
            inv_tab.resize(q);
            frob_tab.resize(q);
            for (u64 a = 0; a < q; ++a) {
                neg_tab[a] = static_cast<u32>(neg_raw(a));
                inv_tab[a] = a == 0 ? 0 : static_cast<u32>(inv_raw(a));
                frob_tab[a] = static_cast<u32>(frob_raw(a));
            }
        }
        if (q <= kBinaryTableLimit) {
            add_tab.resize(q * q);
            mul_tab.resize(q * q);
            for (u64 a = 0; a < q; ++a)
                for (u64 b = 0; b < q; ++b) {
                    add_tab[a * q + b] = static_cast<u32>(add_raw(a, b));
                    mul_tab[a * q + b] = static_cast<u32>(mul_raw(a, b));
                }
        }
    }
};

namespace {

// find the deterministic modulus for GF(p^n): first irreducible in base-p
// counting order of the low-coefficient vector
std::vector<u32> find_modulus(u64 p, u64 n) {
    std::vector<u32> coeffs(n, 0);
    // scan bound p^n, saturated; the first irreducible shows up after ~n
    // candidates so the bound is never approached
    u64 limit = 1;
    for (u64 i = 0; i < n; ++i) {
        if (limit > (1ULL << 62) / p) { limit = 1ULL << 62; break; }
        limit *= p;
    }
    for (u64 v = 0; v < limit; ++v) {
        u64 t = v;
        for (u64 i = 0; i < n; ++i) {
            coeffs[i] = static_cast<u32>(t % p);
            t /= p;
        }
        Poly full(coeffs.begin(), coeffs.end());
        full.push_back(1); // monic x^n
        if (is_irreducible(full, p)) return coeffs;
    }
    throw internal_error("no irreducible polynomial found"); // unreachable for prime p
}

struct FieldKey {
    u64 p, n;
    bool operator<(const FieldKey& o) const { return p < o.p || (p == o.p && n < o.n); }
};

std::mutex g_field_cache_mutex;
std::map<FieldKey, std::shared_ptr<const Field::Data>> g_field_cache;

} // namespace

Field Field::make(std::uint64_t p, std::uint64_t n) {
    if (p == 0) {
        if (n != 1) throw value_error("rationals only support degree 1");
    } else {
        if (!miller_rabin(p)) throw value_error("composite characteristic " + std::to_string(p));
        if (n == 0) throw value_error("degree must be >= 1");
        if (n > 63) throw value_error("degree too large");
    }

    {
        std::lock_guard<std::mutex> lock(g_field_cache_mutex);
        auto it = g_field_cache.find({p, n});
        if (it != g_field_cache.end()) return Field(it->second);
    }

    auto d = std::make_shared<Field::Data>();
    d->p = p;
    d->n = n;
    if (p == 0) {
        d->q = 0;
    } else {
        // p^n with overflow check
        u64 q = 1;
        for (u64 i = 0; i < n; ++i) {
            if (q > UINT64_MAX / p) throw value_error("field order overflows 64 bits");
            q *= p;
        }
        d->q = q;
        if (n > 1) d->modulus = find_modulus(p, n);
        d->build_tables();
    }

    std::lock_guard<std::mutex> lock(g_field_cache_mutex);
    auto [it, inserted] = g_field_cache.emplace(FieldKey{p, n}, std::move(d));
    return Field(it->second);
}

std::uint64_t Field::characteristic() const { return d_->p; }
std::uint64_t Field::degree() const { return d_->n; }
std::uint64_t Field::order() const { return d_->q; }

const std::vector<std::uint32_t>& Field::modulus() const { return d_->modulus; }

FieldElem Field::zero() const {
    return d_->is_rat() ? FieldElem(Rational(0)) : FieldElem(u64{0});
}

FieldElem Field::one() const {
    return d_->is_rat() ? FieldElem(Rational(1)) : FieldElem(u64{1});
}

FieldElem Field::from_index(std::uint64_t idx) const {
    if (d_->is_rat()) throw value_error("rationals have no element index");
    if (idx >= d_->q) throw value_error("element index out of range");
    return FieldElem(idx);
}

FieldElem Field::from_int(std::int64_t v) const {
    if (d_->is_rat()) return FieldElem(Rational(v));
    const auto p = static_cast<std::int64_t>(d_->p);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return FieldElem(static_cast<u64>(r));
}

FieldElem Field::from_rational(const Rational& r) const {
    if (!d_->is_rat()) throw value_error("finite field cannot hold a rational");
    return FieldElem(r);
}

std::vector<std::uint32_t> Field::coefficients(const FieldElem& a) const {
    if (d_->is_rat()) throw value_error("rationals have no coefficient vector");
    std::vector<u32> out(d_->n);
    d_->decode(a.index(), out.data());
    return out;
}

// an element of another field is detectable when its kind differs or its
// index overruns this field's order
static void require_member(const Field::Data& d, const FieldElem& a) {
    if (a.is_rational() != (d.p == 0) || (d.p != 0 && a.index() >= d.q))
        throw value_error("element does not belong to this field");
}

FieldElem Field::add(const FieldElem& a, const FieldElem& b) const {
    require_member(*d_, a);
    require_member(*d_, b);
    if (d_->is_rat()) return FieldElem(a.rational() + b.rational());
    return FieldElem(d_->add_raw(a.index(), b.index()));
}

FieldElem Field::sub(const FieldElem& a, const FieldElem& b) const {
    require_member(*d_, a);
    require_member(*d_, b);
    if (d_->is_rat()) return FieldElem(a.rational() - b.rational());
    return FieldElem(d_->add_raw(a.index(), d_->neg_raw(b.index())));
}

FieldElem Field::mul(const FieldElem& a, const FieldElem& b) const {
    require_member(*d_, a);
    require_member(*d_, b);
    if (d_->is_rat()) return FieldElem(a.rational() * b.rational());
    return FieldElem(d_->mul_raw(a.index(), b.index()));
}

FieldElem Field::neg(const FieldElem& a) const {
    require_member(*d_, a);
    if (d_->is_rat()) return FieldElem(-a.rational());
    return FieldElem(d_->neg_raw(a.index()));
}

FieldElem Field::inv(const FieldElem& a) const {
    require_member(*d_, a);
    if (d_->is_rat()) return FieldElem(a.rational().inverse());
    return FieldElem(d_->inv_raw(a.index()));
}

FieldElem Field::pow(const FieldElem& a, std::uint64_t e) const {
    if (d_->is_rat()) {
        Rational r(1);
        for (u64 i = 0; i < e; ++i) r = r * a.rational();
        return FieldElem(r);
    }
    return FieldElem(d_->pow_raw(a.index(), e));
}

FieldElem Field::frobenius(const FieldElem& a) const {
    if (d_->is_rat()) throw value_error("frobenius undefined in characteristic 0");
    if (!d_->frob_tab.empty()) return FieldElem(u64{d_->frob_tab[a.index()]});
    return FieldElem(d_->frob_raw(a.index()));
}

std::uint64_t Field::multiplicative_order(const FieldElem& a) const {
    if (d_->is_rat()) throw value_error("multiplicative order only defined for finite fields");
    u64 x = a.index();
    if (x == 0) throw value_error("zero has no multiplicative order");
    u64 acc = x, k = 1;
    while (acc != 1) {
        acc = d_->mul_raw(acc, x);
        ++k;
    }
    return k;
}

std::uint32_t Field::add_idx(std::uint32_t a, std::uint32_t b) const {
    if (!d_->add_tab.empty()) return d_->add_tab[static_cast<u64>(a) * d_->q + b];
    return static_cast<u32>(d_->add_raw(a, b));
}
std::uint32_t Field::sub_idx(std::uint32_t a, std::uint32_t b) const {
    return add_idx(a, neg_idx(b));
}
std::uint32_t Field::mul_idx(std::uint32_t a, std::uint32_t b) const {
    if (!d_->mul_tab.empty()) return d_->mul_tab[static_cast<u64>(a) * d_->q + b];
    return static_cast<u32>(d_->mul_raw(a, b));
}
std::uint32_t Field::neg_idx(std::uint32_t a) const {
    if (!d_->neg_tab.empty()) return d_->neg_tab[a];
    return static_cast<u32>(d_->neg_raw(a));
}
std::uint32_t Field::inv_idx(std::uint32_t a) const {
    if (a == 0) throw value_error("division by zero");
    if (!d_->inv_tab.empty()) return d_->inv_tab[a];
    return static_cast<u32>(d_->inv_raw(a));
}
std::uint32_t Field::frob_idx(std::uint32_t a) const {
    if (!d_->frob_tab.empty()) return d_->frob_tab[a];
    return static_cast<u32>(d_->frob_raw(a));
}

const std::uint32_t* Field::add_table() const {
    return d_->add_tab.empty() ? nullptr : d_->add_tab.data();
}
const std::uint32_t* Field::mul_table() const {
    return d_->mul_tab.empty() ? nullptr : d_->mul_tab.data();
}
const std::uint32_t* Field::neg_table() const {
    return d_->neg_tab.empty() ? nullptr : d_->neg_tab.data();
}
const std::uint32_t* Field::inv_table() const {
    return d_->inv_tab.empty() ? nullptr : d_->inv_tab.data();
}

bool operator==(const Field& a, const Field& b) {
    if (a.d_ == b.d_) return true;
    return a.d_->p == b.d_->p && a.d_->n == b.d_->n && a.d_->modulus == b.d_->modulus;
}

// ---- free operations --------------------------------------------------------

bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint64_t p) {
    if (!miller_rabin(p)) throw value_error("is_irreducible requires a prime modulus");
    Poly f = poly;
    poly_trim(f);
    if (f.size() < 2) throw value_error("polynomial must have degree >= 1");
    if (f.back() != 1) throw value_error("polynomial must be monic");
    for (u32 c : f)
        if (c >= p) throw value_error("coefficient not reduced mod p");
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;

    // trial division against every monic polynomial of degree <= deg/2,
    // smallest degrees first so small factors are found quickly
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        u64 count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p; // p^d candidates
        Poly g(d + 1);
        g[d] = 1;
        for (u64 v = 0; v < count; ++v) {
            u64 t = v;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<u32>(t % p);
                t /= p;
            }
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

FieldElem primitive_element(const Field& f, std::uint64_t scan_limit) {
    if (f.is_rational_field()) throw value_error("rationals have no primitive element");
    const u64 q = f.order();
    if (q > scan_limit)
        throw guardrail_error("field too large to scan for a primitive element");

    // distinct prime factors of q-1
    std::vector<u64> primes;
    u64 m = q - 1;
    for (u64 d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) primes.push_back(m);

    for (u64 idx = 1; idx < q; ++idx) {
        const FieldElem a = f.from_index(idx);
        bool primitive = true;
        for (u64 r : primes) {
            if (f.pow(a, (q - 1) / r) == f.one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) return a;
    }
    throw internal_error("no primitive element found"); // unreachable for a field
}

std::vector<std::uint64_t> subfield_embedding(const Field& small, const Field& big,
                                              std::uint64_t scan_limit) {
    if (small.is_rational_field() || big.is_rational_field())
        throw value_error("embedding impossible: rationals are not finite fields");
    if (small.characteristic() != big.characteristic())
        throw value_error("embedding impossible: characteristic mismatch (" +
                          std::to_string(small.characteristic()) + " vs " +
                          std::to_string(big.characteristic()) + ")");
    const u64 m = small.degree(), n = big.degree();
    if (n % m != 0)
        throw value_error("embedding impossible: degree " + std::to_string(m) +
                          " does not divide " + std::to_string(n));
    if (big.order() > scan_limit)
        throw guardrail_error("target field too large to scan for an embedding root");

    const u64 p = small.characteristic();
    std::vector<u64> map(small.order());

    if (m == 1) {
        for (u64 c = 0; c < p; ++c) map[c] = c; // GF(p) sits as the constant digits
        return map;
    }

    // smallest root of the small modulus inside the big field
    std::vector<u32> mod = small.modulus(); // c0..c_{m-1}
    u64 root = 0;
    bool found = false;
    for (u64 idx = 0; idx < big.order(); ++idx) {
        const FieldElem x = big.from_index(idx);
        // Horner for x^m + c_{m-1} x^{m-1} + ... + c_0
        FieldElem acc = big.one();
        for (u64 i = m; i-- > 0;) {
            acc = big.add(big.mul(acc, x), big.from_int(static_cast<std::int64_t>(mod[i])));
        }
        if (acc == big.zero()) {
            root = idx;
            found = true;
            break;
        }
    }
    if (!found) throw internal_error("modulus has no root in the extension field");

    // powers of the root
    std::vector<FieldElem> pw(m);
    pw[0] = big.one();
    for (u64 i = 1; i < m; ++i) pw[i] = big.mul(pw[i - 1], big.from_index(root));

    for (u64 idx = 0; idx < small.order(); ++idx) {
        const auto digits = small.coefficients(small.from_index(idx));
        FieldElem acc = big.zero();
        for (u64 i = 0; i < m; ++i) {
            if (digits[i] == 0) continue;
            acc = big.add(acc, big.mul(big.from_int(static_cast<std::int64_t>(digits[i])), pw[i]));
        }
        map[idx] = acc.index();
    }
    return map;
}

} // namespace paige
