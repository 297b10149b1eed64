#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "paige/loop_table.hpp"

using namespace paige;

namespace {

LoopTable cyclic_group(std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) rows[i][j] = (i + j) % n;
    return LoopTable::from_rows(std::move(rows));
}

// symmetric group S3 as a loop table, identity first
LoopTable s3_group() {
    const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1},
    }};
    auto index_of = [&](const std::array<int, 3>& p) {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<std::uint32_t>(i);
        throw std::logic_error("not a permutation of 3 points");
    };
    std::vector<std::vector<std::uint32_t>> rows(6, std::vector<std::uint32_t>(6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            std::array<int, 3> comp{};
            for (int k = 0; k < 3; ++k) comp[k] = perms[i][perms[j][k]];
            rows[i][j] = index_of(comp);
        }
    return LoopTable::from_rows(std::move(rows));
}

const PaigeLoop& m2() {
    static const PaigeLoop loop = PaigeLoop::enumerate(Field::make(2, 1));
    return loop;
}

const LoopTable& m2_table() {
    static const LoopTable t = LoopTable::build(DirectLoopOps(m2()));
    return t;
}

std::array<std::uint32_t, 3> first_nonassociating_triple(const LoopOps& t) {
    const std::uint32_t n = t.size();
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            for (std::uint32_t c = 0; c < n; ++c)
                if (t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c))) return {a, b, c};
    throw std::logic_error("loop is associative");
}

} // namespace

TEST_CASE("table construction and validation") {
    const LoopTable& t = m2_table();
    CHECK(t.size() == 120);
    for (std::uint32_t x = 0; x < t.size(); ++x) {
        CHECK(t.mul(x, t.inv(x)) == 0);
        CHECK(t.ldiv(x, t.mul(x, 7)) == 7);
        CHECK(t.rdiv(t.mul(7, x), x) == 7);
    }

    CHECK(LoopTable::from_rows({{0}}).size() == 1);

    // identity must sit at index 0
    CHECK_THROWS_AS(LoopTable::from_rows({{1, 0}, {0, 1}}), internal_error);
    // non-Latin rows rejected
    CHECK_THROWS_AS(LoopTable::from_rows({{0, 1}, {1, 1}}), internal_error);

    EnumerateOptions star;
    star.quotient = false;
    PaigeLoop m3s = PaigeLoop::enumerate(Field::make(3, 1), star);
    CHECK_THROWS_AS(LoopTable::build(DirectLoopOps(m3s)), guardrail_error); // 2160 > 2000
}

TEST_CASE("check_moufang") {
    SUBCASE("exhaustive pass on M(GF(2))") {
        const MoufangReport rep = check_moufang(m2_table(), ScanMode::exhaustive());
        CHECK(rep.all_pass());
        for (const auto& ident : rep.identities) {
            CHECK(ident.checked == 120ull * 120 * 120);
            CHECK(ident.failures == 0);
            CHECK_FALSE(ident.first_counterexample.has_value());
        }
    }
    SUBCASE("groups are Moufang") {
        CHECK(check_moufang(cyclic_group(12), ScanMode::exhaustive()).all_pass());
        CHECK(check_moufang(s3_group(), ScanMode::exhaustive()).all_pass());
    }
    SUBCASE("a corrupted table fails at least one identity") {
        std::vector<std::vector<std::uint32_t>> rows(120, std::vector<std::uint32_t>(120));
        for (std::uint32_t x = 0; x < 120; ++x)
            for (std::uint32_t y = 0; y < 120; ++y) rows[x][y] = m2_table().mul(x, y);
        std::swap(rows[3][5], rows[3][7]); // keeps rows permutations, breaks the loop
        const LoopTable bad = LoopTable::from_rows_unchecked(std::move(rows));
        const MoufangReport rep = check_moufang(bad, ScanMode::exhaustive());
        CHECK_FALSE(rep.all_pass());
        bool have_witness = false;
        for (const auto& ident : rep.identities)
            if (ident.first_counterexample) have_witness = true;
        CHECK(have_witness);
    }
    SUBCASE("sampled mode is seed-reproducible") {
        const auto a = check_moufang(m2_table(), ScanMode::sample(20000, 99));
        const auto b = check_moufang(m2_table(), ScanMode::sample(20000, 99));
        CHECK(a.all_pass());
        for (int i = 0; i < 4; ++i) CHECK(a.identities[i].checked == b.identities[i].checked);
    }
}

TEST_CASE("subloop_closure") {
    const LoopTable& t = m2_table();
    CHECK(subloop_closure(t, {}).indices == std::vector<std::uint32_t>{0});

    for (std::uint32_t x : {3u, 17u, 61u}) {
        const std::uint32_t seed[1] = {x};
        const SubloopHandle h = subloop_closure(t, seed);
        CHECK(h.size() == m2().order_of(x));
        for (std::uint32_t v : h.indices) CHECK(h.contains(t.inv(v)));
    }

    // some nonassociating triples generate the whole loop
    bool generating_found = false;
    for (std::uint32_t a = 1; a < 120 && !generating_found; ++a)
        for (std::uint32_t b = 1; b < 120 && !generating_found; ++b)
            for (std::uint32_t c = 1; c < 120 && !generating_found; ++c) {
                if (t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c))) continue;
                const std::uint32_t tri[3] = {a, b, c};
                if (generates(t, tri)) {
                    CHECK(subloop_closure(t, tri).size() == 120);
                    generating_found = true;
                }
            }
    CHECK(generating_found);
    CHECK_FALSE(generates(t, {}));
}

TEST_CASE("M(GF(2)) contains a proper nonassociative subloop of order 24") {
    // The first nonassociating triple closes to a 24-element Moufang subloop
    // with the M(A4,2) order profile: the unquantified generation claim for
    // nonassociating triples fails on it.
    const LoopTable& t = m2_table();
    const auto tri = first_nonassociating_triple(t);
    CHECK(tri == std::array<std::uint32_t, 3>{1, 2, 3});
    const SubloopHandle h = subloop_closure(t, tri);
    REQUIRE(h.size() == 24);
    CHECK_FALSE(generates(t, tri));

    // closed, contains a nonassociating triple, order histogram 1/15/8
    int involutions = 0, order3 = 0;
    for (std::uint32_t x : h.indices) {
        CHECK(h.contains(t.inv(x)));
        for (std::uint32_t y : h.indices) CHECK(h.contains(t.mul(x, y)));
        const auto k = m2().order_of(x);
        if (k == 2) ++involutions;
        if (k == 3) ++order3;
    }
    CHECK(involutions == 15);
    CHECK(order3 == 8);
    CHECK(t.mul(t.mul(tri[0], tri[1]), tri[2]) != t.mul(tri[0], t.mul(tri[1], tri[2])));
}

TEST_CASE("diassociativity: two-generated subloops associate") {
    const LoopTable& t = m2_table();
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::uint32_t> pick(0, 119);
    for (int k = 0; k < 12; ++k) {
        const std::uint32_t seed[2] = {pick(rng), pick(rng)};
        const SubloopHandle h = subloop_closure(t, seed);
        for (std::uint32_t a : h.indices)
            for (std::uint32_t b : h.indices)
                for (std::uint32_t c : h.indices)
                    CHECK(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)));
    }

    // same property on M(GF(3))
    PaigeLoop m3 = PaigeLoop::enumerate(Field::make(3, 1));
    DirectLoopOps ops3(m3);
    std::uniform_int_distribution<std::uint32_t> pick3(0, m3.size() - 1);
    for (int k = 0; k < 5; ++k) {
        const std::uint32_t seed[2] = {pick3(rng), pick3(rng)};
        const SubloopHandle h = subloop_closure(ops3, seed);
        std::uint64_t bad = 0;
        for (std::uint32_t a : h.indices)
            for (std::uint32_t b : h.indices)
                for (std::uint32_t c : h.indices)
                    if (ops3.mul(ops3.mul(a, b), c) != ops3.mul(a, ops3.mul(b, c))) ++bad;
        CHECK(bad == 0);
    }
    // and left-bracketed powers equal right-bracketed powers
    for (std::uint32_t x = 0; x < 120; ++x) {
        std::uint32_t left = x, right = x;
        for (int k = 0; k < 6; ++k) {
            left = t.mul(left, x);
            right = t.mul(x, right);
            CHECK(left == right);
        }
    }
}

TEST_CASE("inner maps") {
    const LoopTable& t = m2_table();
    const InnerMaps at_identity = inner_maps(t, 0, 4);
    for (std::uint32_t z = 0; z < t.size(); ++z) CHECK(at_identity.left[z] == z);

    const LoopTable c8 = cyclic_group(8);
    for (std::uint32_t x = 0; x < 8; ++x) {
        const InnerMaps m = inner_maps(c8, x, 3);
        for (std::uint32_t z = 0; z < 8; ++z) {
            CHECK(m.conj[z] == z); // T(x) trivial in an abelian group
            CHECK(m.left[z] == z);
            CHECK(m.right[z] == z);
        }
    }

    bool nontrivial_left = false;
    for (std::uint32_t x = 1; x < 20 && !nontrivial_left; ++x)
        for (std::uint32_t y = 1; y < 20 && !nontrivial_left; ++y) {
            const InnerMaps m = inner_maps(t, x, y);
            for (std::uint32_t z = 0; z < t.size(); ++z)
                if (m.left[z] != z) nontrivial_left = true;
        }
    CHECK(nontrivial_left);

    // inner maps fix 0 and are bijections (exhaustive over M(GF(2)))
    for (std::uint32_t x = 0; x < t.size(); x += 17)
        for (std::uint32_t y = 0; y < t.size(); y += 13) {
            const InnerMaps m = inner_maps(t, x, y);
            for (const auto* perm : {&m.left, &m.right, &m.conj}) {
                CHECK((*perm)[0] == 0);
                std::vector<std::uint8_t> seen(t.size(), 0);
                for (std::uint32_t v : *perm) {
                    CHECK(!seen[v]);
                    seen[v] = 1;
                }
            }
        }
}

TEST_CASE("normal closure and normality") {
    const LoopTable& t = m2_table();
    CHECK(normal_closure(t, {}).indices == std::vector<std::uint32_t>{0});
    const std::uint32_t one[1] = {1};
    CHECK(normal_closure(t, one).size() == 120); // simplicity in action

    // abelian group: every subgroup is normal, closures stay small
    const LoopTable c12 = cyclic_group(12);
    const std::uint32_t three[1] = {3};
    const SubloopHandle h = normal_closure(c12, three);
    CHECK(h.indices == std::vector<std::uint32_t>{0, 3, 6, 9});
    CHECK(is_normal(c12, h));

    // monotonicity and the fixpoint property of normal closures
    std::mt19937_64 nc_rng(77);
    std::uniform_int_distribution<std::uint32_t> nc_pick(0, 119);
    for (int k = 0; k < 6; ++k) {
        const std::uint32_t seed[2] = {nc_pick(nc_rng), nc_pick(nc_rng)};
        const SubloopHandle nh = normal_closure(t, seed);
        for (std::uint32_t s : seed) CHECK(nh.contains(s));
        CHECK(is_normal(t, nh));
    }

    CHECK(is_normal(t, subloop_closure(t, {})));
    const std::uint32_t x17[1] = {17};
    const SubloopHandle sub = subloop_closure(t, x17);
    REQUIRE(sub.size() > 1);
    REQUIRE(sub.size() < 120);
    CHECK_FALSE(is_normal(t, sub));

    SubloopHandle whole;
    for (std::uint32_t i = 0; i < 120; ++i) whole.indices.push_back(i);
    CHECK(is_normal(t, whole));

    // {0, x} with x of order 3 misses x^2, hence is not closed
    std::uint32_t cube_root = 0;
    for (std::uint32_t x = 1; x < 120; ++x)
        if (m2().order_of(x) == 3) { cube_root = x; break; }
    REQUIRE(cube_root != 0);
    SubloopHandle not_closed;
    not_closed.indices = {0, cube_root};
    CHECK_THROWS_AS(is_normal(t, not_closed), value_error);
}

TEST_CASE("center") {
    CHECK(center(m2_table()).indices == std::vector<std::uint32_t>{0});

    const LoopTable c6 = cyclic_group(6);
    CHECK(center(c6).size() == 6); // abelian: everything is central

    CHECK(center(s3_group()).indices == std::vector<std::uint32_t>{0});

    // the unquotiented M*(GF(3)): center is exactly {I, -I}
    EnumerateOptions star;
    star.quotient = false;
    PaigeLoop m3s = PaigeLoop::enumerate(Field::make(3, 1), star);
    const LoopTable t3 = LoopTable::build(DirectLoopOps(m3s), 3000);
    const SubloopHandle z = center(t3);
    REQUIRE(z.size() == 2);
    CHECK(z.indices[0] == 0);
    CHECK(m3s.tuple(z.indices[1]) == std::array<std::uint64_t, 8>{2, 0, 0, 0, 0, 0, 0, 2});
}

TEST_CASE("is_simple") {
    CHECK(is_simple(m2_table()));
    CHECK_FALSE(is_simple(cyclic_group(4)));
    CHECK_FALSE(is_simple(cyclic_group(1))); // convention
    CHECK(is_simple(cyclic_group(5)));       // prime order group
}

TEST_CASE("generates bucket scan") {
    const LoopTable& t = m2_table();
    const std::uint32_t zeros[3] = {0, 0, 0};
    CHECK_FALSE(generates(t, zeros));

    // an associating triple inside a cyclic subgroup does not generate
    const std::uint32_t g = 9;
    const std::uint32_t sq = t.mul(g, g);
    const std::uint32_t inside[3] = {g, sq, t.mul(g, sq)};
    CHECK(t.mul(t.mul(inside[0], inside[1]), inside[2]) ==
          t.mul(inside[0], t.mul(inside[1], inside[2])));
    CHECK_FALSE(generates(t, inside));

    const TripleScanReport rep =
        scan_generator_triples(t, ScanMode::sample(30000, 4242));
    CHECK(rep.scanned == 30000);
    CHECK(rep.associating + rep.nonassoc_generating + rep.nonassoc_nongenerating ==
          rep.scanned);
    CHECK(rep.nonassoc_generating > 0);
    // nonassociating non-generating triples exist in M(GF(2)): they live in
    // its order-24 nonassociative subloops
    CHECK(rep.nonassoc_nongenerating > 0);
    REQUIRE_FALSE(rep.nongenerating_witnesses.empty());
    for (const auto& w : rep.nongenerating_witnesses) {
        CHECK(t.mul(t.mul(w[0], w[1]), w[2]) != t.mul(w[0], t.mul(w[1], w[2])));
        CHECK_FALSE(generates(t, w));
    }

    // reproducibility from (seed, count)
    const TripleScanReport again =
        scan_generator_triples(t, ScanMode::sample(30000, 4242));
    CHECK(again.nonassoc_nongenerating == rep.nonassoc_nongenerating);
    CHECK(again.nongenerating_witnesses == rep.nongenerating_witnesses);
}

TEST_CASE("check_automorphism and permutation order") {
    const LoopTable& t = m2_table();
    std::vector<std::uint32_t> id(t.size());
    for (std::uint32_t i = 0; i < t.size(); ++i) id[i] = i;
    CHECK(check_automorphism(t, id));
    CHECK(permutation_order(id) == 1);

    std::vector<std::uint32_t> swapped = id;
    std::swap(swapped[1], swapped[2]);
    CHECK_FALSE(check_automorphism(t, swapped));
    CHECK(permutation_order(swapped) == 2);

    std::vector<std::uint32_t> not_perm(t.size(), 0);
    CHECK_THROWS_AS(check_automorphism(t, not_perm), value_error);

    std::vector<std::uint32_t> moves_identity = id;
    std::swap(moves_identity[0], moves_identity[1]);
    CHECK_FALSE(check_automorphism(t, moves_identity));
}
