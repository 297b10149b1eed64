#include "paige/cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <vector>

namespace paige {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u8 = std::uint8_t;

constexpr char kMagic[6] = {'P', 'A', 'I', 'G', 'E', '1'};

unsigned bytes_for(u64 count) {
    unsigned w = 1;
    u64 cap = 256;
    while (cap < count) {
        cap *= 256;
        ++w;
    }
    return w;
}

void put_u64(std::string& out, u64 v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_fixed(std::string& out, u64 v, unsigned width) {
    for (unsigned i = 0; i < width; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw cache_error("cache file truncated");
    }
    u64 get_u64() {
        need(8);
        u64 v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<u64>(static_cast<u8>(buf[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    u64 get_fixed(unsigned width) {
        need(width);
        u64 v = 0;
        for (unsigned i = 0; i < width; ++i)
            v |= static_cast<u64>(static_cast<u8>(buf[pos + i])) << (8 * i);
        pos += width;
        return v;
    }
    u8 get_byte() {
        need(1);
        return static_cast<u8>(buf[pos++]);
    }
};

} // namespace

void write_cache(const std::string& path, const PaigeLoop& loop, const LoopTable* table) {
    const Field& f = loop.field();
    if (f.characteristic() > 255) throw value_error("cache format holds byte-sized coefficients");

    std::string out;
    out.append(kMagic, sizeof kMagic);
    put_u64(out, f.characteristic());
    put_u64(out, f.degree());
    const auto& mod = f.modulus();
    put_u64(out, mod.size());
    for (u32 c : mod) out.push_back(static_cast<char>(c));

    const u64 n = loop.size();
    put_u64(out, n);
    const unsigned w = bytes_for(f.order());
    for (u32 i = 0; i < n; ++i) {
        const auto& c = loop.components(i);
        for (int k = 0; k < 8; ++k) put_fixed(out, c[k], w);
    }

    if (table != nullptr) {
        if (table->size() != n) throw value_error("table size does not match the element list");
        out.push_back(1);
        const unsigned tw = bytes_for(n);
        for (u64 x = 0; x < n; ++x)
            for (u64 y = 0; y < n; ++y)
                put_fixed(out, table->mul(static_cast<u32>(x), static_cast<u32>(y)), tw);
    } else {
        out.push_back(0);
    }

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw error("cannot open " + path + " for writing");
    os.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!os) throw error("write failed for " + path);
}

LoadedCache load_cache(const std::string& path, bool trust) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw error("cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());

    Reader r{buf};
    r.need(sizeof kMagic);
    if (std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0)
        throw cache_error("bad magic; not a PAIGE1 cache");
    r.pos = sizeof kMagic;

    const u64 p = r.get_u64();
    const u64 deg = r.get_u64();
    const u64 modlen = r.get_u64();
    std::vector<u32> mod(modlen);
    for (u64 i = 0; i < modlen; ++i) mod[i] = r.get_byte();

    Field field = Field::make(p, deg); // throws on composite p
    if (field.modulus() != mod)
        throw cache_error("stored modulus disagrees with the canonical modulus for this field");

    const u64 n = r.get_u64();
    if (n == 0) throw cache_error("cache holds no elements");
    const unsigned w = bytes_for(field.order());
    std::vector<std::array<u64, 8>> tuples(n);
    for (u64 i = 0; i < n; ++i)
        for (int k = 0; k < 8; ++k) tuples[i][k] = r.get_fixed(w);

    PaigeLoop loop = PaigeLoop::from_tuples(field, tuples);

    if (!trust) {
        // the file must store elements in canonical order (identity first,
        // the rest ascending), or table indices would be meaningless
        for (u64 i = 0; i < n; ++i)
            if (loop.tuple(static_cast<u32>(i)) != tuples[i])
                throw cache_error("element list is not in canonical order");
        const u64 expected = loop.quotiented() ? predicted_order(field.order())
                                               : predicted_star_order(field.order());
        if (n != expected)
            throw cache_error("element count " + std::to_string(n) +
                              " does not match the predicted order " + std::to_string(expected));
    }

    LoadedCache out{std::move(loop), std::nullopt};

    const u8 flag = r.get_byte();
    if (flag == 1) {
        const unsigned tw = bytes_for(n);
        std::vector<std::vector<u32>> rows(n, std::vector<u32>(n));
        for (u64 x = 0; x < n; ++x)
            for (u64 y = 0; y < n; ++y) {
                const u64 v = r.get_fixed(tw);
                if (v >= n) throw cache_error("table entry out of range");
                rows[x][y] = static_cast<u32>(v);
            }
        try {
            out.table = trust ? LoopTable::from_rows_unchecked(std::move(rows))
                              : LoopTable::from_rows(std::move(rows));
        } catch (const internal_error& e) {
            throw cache_error(std::string("table block failed validation: ") + e.what());
        }
    } else if (flag != 0) {
        throw cache_error("bad table flag");
    }
    if (r.pos != buf.size()) throw cache_error("trailing bytes after cache payload");
    return out;
}

} // namespace paige
