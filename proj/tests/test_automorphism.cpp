#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paige/automorphism.hpp"

using namespace paige;

namespace {

LoopTable cyclic_group(std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) rows[i][j] = (i + j) % n;
    return LoopTable::from_rows(std::move(rows));
}

// elementary abelian (C2 x C2): Aut = GL(2,2) of order 6
LoopTable klein_four() {
    return LoopTable::from_rows({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

} // namespace

TEST_CASE("trivial loop") {
    const AutomorphismReport rep = automorphism_search(cyclic_group(1));
    CHECK(rep.count == 1);
}

TEST_CASE("cyclic groups: |Aut C_n| = phi(n)") {
    for (std::uint32_t n : {2u, 3u, 4u, 5u, 6u, 7u, 10u, 12u}) {
        AutoSearchOptions opts;
        opts.collect = true;
        const AutomorphismReport rep = automorphism_search(cyclic_group(n), opts);
        CHECK(rep.count == euler_phi(n));
        CHECK_FALSE(rep.budget_exhausted);
        const LoopTable t = cyclic_group(n);
        for (const auto& perm : rep.automorphisms) CHECK(check_automorphism(t, perm));
    }
}

TEST_CASE("klein four group has six automorphisms") {
    AutoSearchOptions opts;
    opts.collect = true;
    const AutomorphismReport rep = automorphism_search(klein_four(), opts);
    CHECK(rep.count == 6);
    const LoopTable t = klein_four();
    for (const auto& perm : rep.automorphisms) CHECK(check_automorphism(t, perm));
}

TEST_CASE("budget exhaustion flags a partial result") {
    AutoSearchOptions opts;
    opts.node_budget = 1;
    const AutomorphismReport rep = automorphism_search(cyclic_group(12), opts);
    CHECK(rep.budget_exhausted);
    CHECK(rep.count <= euler_phi(12));
}

TEST_CASE("order limit guardrail") {
    AutoSearchOptions opts;
    opts.order_limit = 10;
    CHECK_THROWS_AS(automorphism_search(cyclic_group(12), opts), guardrail_error);
}

TEST_CASE("every reported permutation fixes 0 and preserves the table") {
    AutoSearchOptions opts;
    opts.collect = true;
    const LoopTable t = cyclic_group(9);
    const AutomorphismReport rep = automorphism_search(t, opts);
    CHECK(rep.count == 6);
    for (const auto& perm : rep.automorphisms) {
        CHECK(perm[0] == 0);
        CHECK(check_automorphism(t, perm));
    }
}
