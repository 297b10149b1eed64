// Acceptance suite: one numbered criterion per structural claim, each
// printing PASS or FAIL with the measured evidence. Criterion 12 (full
// automorphism count) is opt-in via --run-expensive. Criterion 7 documents a
// known computational counterexample to the classical generation claim for
// M(GF(2)) and is expected to FAIL; see README.
//
// Usage: acceptance [--criterion N]... [--run-expensive]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "paige/automorphism.hpp"
#include "paige/galois.hpp"
#include "paige/loop_table.hpp"

using namespace paige;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int number;
    std::string title;
    std::function<Outcome()> run;
    bool expensive = false;
};

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt_tuple(const std::array<std::uint64_t, 8>& t) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < 8; ++i) os << t[i] << (i == 7 ? ")" : ",");
    return os.str();
}

ZornMatrix random_matrix(const Field& f, std::mt19937_64& rng) {
    if (f.is_rational_field()) {
        std::uniform_int_distribution<std::int64_t> num(-9, 9);
        std::uniform_int_distribution<std::int64_t> den(1, 9);
        auto r = [&] { return f.from_rational(Rational(num(rng), den(rng))); };
        return ZornMatrix(f, r(), Vec3{r(), r(), r()}, Vec3{r(), r(), r()}, r());
    }
    std::uniform_int_distribution<std::uint64_t> pick(0, f.order() - 1);
    auto r = [&] { return f.from_index(pick(rng)); };
    return ZornMatrix(f, r(), Vec3{r(), r(), r()}, Vec3{r(), r(), r()}, r());
}

std::vector<ZornMatrix> all_c_gf2() {
    const Field f2 = Field::make(2, 1);
    std::vector<ZornMatrix> all;
    all.reserve(256);
    for (std::uint64_t v = 0; v < 256; ++v) {
        std::array<std::uint64_t, 8> t{};
        std::uint64_t w = v;
        for (int i = 0; i < 8; ++i) {
            t[i] = w & 1;
            w >>= 1;
        }
        all.push_back(zorn_from_tuple(f2, t));
    }
    return all;
}

// shared fixtures, built once
const PaigeLoop& m2_loop() {
    static const PaigeLoop loop = PaigeLoop::enumerate(Field::make(2, 1));
    return loop;
}
const LoopTable& m2_table() {
    static const LoopTable t = LoopTable::build(DirectLoopOps(m2_loop()));
    return t;
}
const PaigeLoop& m3_loop() {
    static const PaigeLoop loop = PaigeLoop::enumerate(Field::make(3, 1));
    return loop;
}
const LoopTable& m3_table() {
    static const LoopTable t = LoopTable::build(DirectLoopOps(m3_loop()));
    return t;
}
const PaigeLoop& m4_loop() {
    static const PaigeLoop loop = PaigeLoop::enumerate(Field::make(2, 2));
    return loop;
}

// --- criterion 1: loop orders -------------------------------------------------

Outcome c1_orders() {
    const auto t0 = Clock::now();
    struct Case {
        std::uint64_t p, n, expected;
    };
    const Case cases[] = {{2, 1, 120}, {3, 1, 1080}, {2, 2, 16320}};
    std::ostringstream detail;
    bool pass = true;
    for (const auto& c : cases) {
        const Field f = Field::make(c.p, c.n);
        const PaigeLoop loop = PaigeLoop::enumerate(f);
        const std::uint64_t predicted = predicted_order(f.order());
        const bool ok = loop.size() == c.expected && predicted == c.expected;
        pass = pass && ok;
        detail << "|M(GF(" << f.order() << "))|=" << loop.size() << (ok ? " " : "(MISMATCH) ");
    }
    const double elapsed = ms_since(t0);
    if (elapsed > 60000) pass = false;
    detail << "in " << static_cast<int>(elapsed) << " ms (limit 60 s)";
    return {pass, detail.str()};
}

// --- criterion 2: composition law ----------------------------------------------

Outcome c2_composition() {
    std::uint64_t checked = 0, failures = 0;
    const Field f2 = Field::make(2, 1);
    const auto all = all_c_gf2();
    for (const auto& a : all)
        for (const auto& b : all) {
            ++checked;
            if (norm(zorn_mul(a, b)) != f2.mul(norm(a), norm(b))) ++failures;
        }
    const std::uint64_t exhaustive_pairs = checked;

    for (auto [p, n] : {std::pair<std::uint64_t, std::uint64_t>{3, 1}, {5, 1}, {7, 1}, {0, 1}}) {
        const Field f = p == 0 ? Field::rationals() : Field::make(p, n);
        std::mt19937_64 rng(0xC0115EEDull + p);
        for (int i = 0; i < 100000; ++i) {
            const ZornMatrix a = random_matrix(f, rng), b = random_matrix(f, rng);
            ++checked;
            if (norm(zorn_mul(a, b)) != f.mul(norm(a), norm(b))) ++failures;
        }
    }
    std::ostringstream detail;
    detail << exhaustive_pairs << " exhaustive GF(2) pairs + 4x100000 sampled, failures="
           << failures;
    return {failures == 0, detail.str()};
}

// --- criterion 3: alternativity -------------------------------------------------

Outcome c3_alternativity() {
    std::uint64_t failures = 0;
    const Field f2 = Field::make(2, 1);
    const ZornMatrix zero2 = zorn_zero(f2);
    const auto all = all_c_gf2();
    for (const auto& a : all)
        for (const auto& b : all) {
            if (alg_associator(a, a, b) != zero2) ++failures;
            if (alg_associator(b, a, a) != zero2) ++failures;
        }
    for (auto [p, n] : {std::pair<std::uint64_t, std::uint64_t>{3, 1}, {5, 1}, {7, 1}, {0, 1}}) {
        const Field f = p == 0 ? Field::rationals() : Field::make(p, n);
        const ZornMatrix zero = zorn_zero(f);
        std::mt19937_64 rng(0xA17E12ull + p);
        for (int i = 0; i < 100000; ++i) {
            const ZornMatrix a = random_matrix(f, rng), b = random_matrix(f, rng);
            if (alg_associator(a, a, b) != zero) ++failures;
            if (alg_associator(b, a, a) != zero) ++failures;
        }
    }
    std::ostringstream detail;
    detail << "65536 exhaustive GF(2) pairs + 4x100000 sampled, both patterns, failures="
           << failures;
    return {failures == 0, detail.str()};
}

// --- criterion 4: Moufang identities --------------------------------------------

Outcome c4_moufang() {
    const auto t0 = Clock::now();
    const MoufangReport exh = check_moufang(m2_table(), ScanMode::exhaustive());
    const double exh_ms = ms_since(t0);

    const MoufangReport s3 = check_moufang(m3_table(), ScanMode::sample(1000000, 42));
    const MoufangReport s4 =
        check_moufang(DirectLoopOps(m4_loop()), ScanMode::sample(1000000, 43));

    bool pass = exh.all_pass() && s3.all_pass() && s4.all_pass() && exh_ms <= 120000;
    std::uint64_t checks = 0;
    for (const auto& ident : exh.identities) checks += ident.checked;
    std::ostringstream detail;
    detail << checks << " exhaustive checks on M(GF(2)) in " << static_cast<int>(exh_ms)
           << " ms (limit 120 s); 10^6 seeded samples each on M(GF(3)), M(GF(4))";
    if (!pass) detail << "; a Moufang identity FAILED";
    return {pass, detail.str()};
}

// --- criterion 5: simplicity ----------------------------------------------------

Outcome c5_simplicity() {
    const auto t0 = Clock::now();
    const bool s2 = is_simple(m2_table());
    const bool s3 = is_simple(m3_table());
    const double elapsed = ms_since(t0);
    std::ostringstream detail;
    detail << "is_simple(M(GF(2)))=" << s2 << ", is_simple(M(GF(3)))=" << s3 << " in "
           << static_cast<int>(elapsed) << " ms (limit 10 min)";
    return {s2 && s3 && elapsed <= 600000, detail.str()};
}

// --- criterion 6: centers -------------------------------------------------------

Outcome c6_center() {
    EnumerateOptions star;
    star.quotient = false;
    const PaigeLoop m3s = PaigeLoop::enumerate(Field::make(3, 1), star);
    const LoopTable t3s = LoopTable::build(DirectLoopOps(m3s), 3000);
    const SubloopHandle z = center(t3s);

    bool star_ok = z.size() == 2 && z.indices[0] == 0;
    if (star_ok) {
        const auto minus = m3s.tuple(z.indices[1]);
        star_ok = minus == std::array<std::uint64_t, 8>{2, 0, 0, 0, 0, 0, 0, 2};
    }
    const bool q2 = center(m2_table()).indices == std::vector<std::uint32_t>{0};
    const bool q3 = center(m3_table()).indices == std::vector<std::uint32_t>{0};

    std::ostringstream detail;
    detail << "center(M*(GF(3)))={I,-I}:" << star_ok << ", center(M(GF(2)))={1}:" << q2
           << ", center(M(GF(3)))={1}:" << q3;
    return {star_ok && q2 && q3, detail.str()};
}

// --- criterion 7: generation of M(GF(2)) by nonassociating triples ---------------

Outcome c7_corollary3() {
    const TripleScanReport rep =
        scan_generator_triples(m2_table(), ScanMode::sample(100000, 1729), 4);
    std::ostringstream detail;
    detail << "seeded 10^5-triple scan: associating=" << rep.associating
           << ", nonassoc-generating=" << rep.nonassoc_generating
           << ", nonassoc-NONgenerating=" << rep.nonassoc_nongenerating;
    if (!rep.nongenerating_witnesses.empty()) {
        const auto& w = rep.nongenerating_witnesses.front();
        detail << "; witness a=" << fmt_tuple(m2_loop().tuple(w[0]))
               << " b=" << fmt_tuple(m2_loop().tuple(w[1]))
               << " c=" << fmt_tuple(m2_loop().tuple(w[2]))
               << " closes to a " << subloop_closure(m2_table(), w).size()
               << "-element subloop";
    }
    return {rep.nonassoc_nongenerating == 0, detail.str()};
}

// --- criterion 8: Paige loop embeddings ------------------------------------------

Outcome c8_embeddings() {
    std::ostringstream detail;
    bool pass = true;

    for (auto [m, n] : {std::pair<std::uint64_t, std::uint64_t>{1, 2}, {1, 3}, {2, 4}}) {
        const auto t0 = Clock::now();
        const PaigeEmbedding e = embed_paige(Field::make(2, m), Field::make(2, n));
        const bool ok =
            e.pairs_checked == static_cast<std::uint64_t>(e.small_order) * e.small_order;
        pass = pass && ok;
        detail << "M(GF(2^" << m << "))->M(GF(2^" << n << ")): " << e.small_order
               << " elements, " << e.pairs_checked << " pairs in "
               << static_cast<int>(ms_since(t0)) << " ms; ";
    }

    bool refused_degree = false, refused_char = false;
    try {
        (void)embed_paige(Field::make(2, 2), Field::make(2, 3));
    } catch (const value_error& e) {
        refused_degree = std::string(e.what()).find("degree") != std::string::npos;
    }
    try {
        (void)embed_paige(Field::make(2, 1), Field::make(3, 1));
    } catch (const value_error& e) {
        refused_char = std::string(e.what()).find("characteristic") != std::string::npos;
    }
    detail << "refusals: (2,3)-degree:" << refused_degree << " char-mismatch:" << refused_char;
    return {pass && refused_degree && refused_char, detail.str()};
}

// --- criterion 9: the GF(5) central-square element --------------------------------

Outcome c9_gf5_center() {
    const Field f5 = Field::make(5, 1);
    const FieldElem alpha = primitive_element(f5);
    const ZornMatrix u = zorn_diag(f5, f5.inv(alpha), alpha);
    const ZornMatrix minus_id = zorn_neg(zorn_identity(f5));

    const bool alpha_ok = alpha.index() == 2;
    const bool norm_ok = norm(u) == f5.one();
    const bool square_ok = zorn_mul(u, u) == minus_id;

    // -I commutes with all of M*(GF(5)) and associates on seeded triples
    EnumerateOptions star;
    star.quotient = false;
    const PaigeLoop m5s = PaigeLoop::enumerate(f5, star);
    const auto mi = m5s.find_tuple(minus_id.serialize());
    bool central = mi.has_value();
    if (central) {
        for (std::uint32_t x = 0; x < m5s.size(); ++x)
            if (m5s.mul(*mi, x) != m5s.mul(x, *mi)) central = false;
        std::mt19937_64 rng(55);
        std::uniform_int_distribution<std::uint32_t> pick(0, m5s.size() - 1);
        for (int k = 0; k < 10000 && central; ++k) {
            const std::uint32_t x = pick(rng), y = pick(rng);
            if (m5s.mul(m5s.mul(*mi, x), y) != m5s.mul(*mi, m5s.mul(x, y))) central = false;
            if (m5s.mul(m5s.mul(x, *mi), y) != m5s.mul(x, m5s.mul(*mi, y))) central = false;
            if (m5s.mul(m5s.mul(x, y), *mi) != m5s.mul(x, m5s.mul(y, *mi))) central = false;
        }
    }
    std::ostringstream detail;
    detail << "alpha=2:" << alpha_ok << " n(diag(3,2))=1:" << norm_ok
           << " square=-I:" << square_ok << " -I central in M*(GF(5)) (78000 commute + 3x10^4 assoc):"
           << central;
    return {alpha_ok && norm_ok && square_ok && central, detail.str()};
}

// --- criterion 10: finite Galois correspondence ------------------------------------

Outcome c10_galois() {
    std::ostringstream detail;
    bool pass = true;
    for (auto [p, n] : {std::pair<std::uint64_t, std::uint64_t>{2, 6}, {2, 4}, {3, 4}}) {
        const GaloisTower tower = correspondence_table(p, n);
        std::uint64_t ndiv = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) ++ndiv;
        bool ok = tower.records.size() == ndiv && tower.elementwise;
        std::set<std::vector<std::uint64_t>> groups;
        for (const auto& r : tower.records) {
            groups.insert(r.subgroup.exponents);
            if (!r.embedding || !r.fixed_set) {
                ok = false;
                continue;
            }
            std::vector<std::uint64_t> image = *r.embedding;
            std::sort(image.begin(), image.end());
            if (image != *r.fixed_set) ok = false;
        }
        if (groups.size() != ndiv) ok = false;
        for (const auto& ra : tower.records)
            for (const auto& rb : tower.records) {
                const bool div = rb.d % ra.d == 0;
                if (div != ra.subgroup.contains(rb.subgroup)) ok = false;
                const bool sub = std::includes(rb.fixed_set->begin(), rb.fixed_set->end(),
                                               ra.fixed_set->begin(), ra.fixed_set->end());
                if (div != sub) ok = false;
            }
        pass = pass && ok;
        detail << "GF(" << p << "^" << n << "): " << ndiv << " divisors=subfields=subgroups, "
               << "anti-isomorphism+fixed-sets:" << ok << "; ";
    }
    return {pass, detail.str()};
}

// --- criterion 11: Frobenius automorphism of M(GF(4)) ------------------------------

Outcome c11_frobenius() {
    const auto t0 = Clock::now();
    const auto perm = m4_loop().frobenius_map(1);
    const bool is_auto = check_automorphism(DirectLoopOps(m4_loop()), perm);
    const std::uint64_t order = permutation_order(perm);
    std::ostringstream detail;
    detail << "check_automorphism over 16320^2 pairs:" << is_auto << ", permutation order "
           << order << " in " << static_cast<int>(ms_since(t0)) << " ms";
    return {is_auto && order == 2, detail.str()};
}

// --- criterion 12: Aut M(GF(2)) -----------------------------------------------------

Outcome c12_automorphisms() {
    const auto t0 = Clock::now();
    AutoSearchOptions opts;
    opts.collect = true;
    const AutomorphismReport rep = automorphism_search(m2_table(), opts);
    std::uint64_t verified = 0;
    for (const auto& perm : rep.automorphisms)
        if (check_automorphism(m2_table(), perm, 1)) ++verified;
    std::ostringstream detail;
    detail << "count=" << rep.count << " (expected 12096), all " << verified
           << " collected permutations re-verified, nodes=" << rep.nodes << " in "
           << static_cast<int>(ms_since(t0)) << " ms";
    return {!rep.budget_exhausted && rep.count == 12096 && verified == rep.count,
            detail.str()};
}

// --- criterion 13: Dedekind (modular) law --------------------------------------------

Outcome c13_dedekind() {
    std::ostringstream detail;
    bool pass = true;
    for (std::uint64_t n : {12ull, 30ull}) {
        const GaloisTower tower = correspondence_table(2, n);
        std::vector<std::uint64_t> divs;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) divs.push_back(d);
        std::uint64_t triples = 0;
        bool ok = true;
        for (std::uint64_t x : divs)
            for (std::uint64_t y : divs)
                for (std::uint64_t z : divs) {
                    if (x % y != 0) continue; // modularity hypothesis y <= x
                    ++triples;
                    if (lattice_meet(tower, x, lattice_join(tower, y, z)) !=
                        lattice_join(tower, y, lattice_meet(tower, x, z)))
                        ok = false;
                }
        pass = pass && ok;
        detail << "n=" << n << ": " << triples << " hypothesis triples, modular:" << ok << "; ";
    }
    return {pass, detail.str()};
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    bool run_expensive = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--run-expensive") == 0) {
            run_expensive = true;
        } else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]... [--run-expensive]\n");
            return 2;
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "loop orders match the order formula", c1_orders},
        {2, "composition law n(ab) = n(a)n(b)", c2_composition},
        {3, "alternativity of C(F)", c3_alternativity},
        {4, "four Moufang identities", c4_moufang},
        {5, "simplicity of M(GF(2)), M(GF(3))", c5_simplicity},
        {6, "centers: M* has {1,-1}, M is centerless", c6_center},
        {7, "nonassociating triples of M(GF(2)) generate", c7_corollary3},
        {8, "Paige subloop embeddings and refusals", c8_embeddings},
        {9, "GF(5): diag(1/a,a) squares to -1", c9_gf5_center},
        {10, "Galois correspondence, finite towers", c10_galois},
        {11, "Frobenius induces an order-2 automorphism of M(GF(4))", c11_frobenius},
        {12, "Aut M(GF(2)) has order 12096", c12_automorphisms, true},
        {13, "divisor lattices are modular (n=12, n=30)", c13_dedekind},
    };

    int failures = 0, ran = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.number) == selected.end())
            continue;
        if (selected.empty() && c.expensive && !run_expensive) {
            std::printf("[%2d] SKIP %s (opt-in: --run-expensive)\n", c.number, c.title.c_str());
            continue;
        }
        const auto t0 = Clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        ++ran;
        if (!out.pass) ++failures;
        std::printf("[%2d] %s %s — %s (%d ms)\n", c.number, out.pass ? "PASS" : "FAIL",
                    c.title.c_str(), out.detail.c_str(),
                    static_cast<int>(ms_since(t0)));
        std::fflush(stdout);
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criteria selected\n");
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
