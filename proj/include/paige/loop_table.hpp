#ifndef PAIGE_LOOP_TABLE_HPP
#define PAIGE_LOOP_TABLE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paige/errors.hpp"
#include "paige/paige_loop.hpp"

namespace paige {

/// Access to a finite loop with identity index 0. Implemented by LoopTable
/// (materialized Cayley table) and DirectLoopOps (on-the-fly Zorn
/// arithmetic for loops too big to tabulate).
class LoopOps {
public:
    virtual ~LoopOps() = default;
    virtual std::uint32_t size() const = 0;
    virtual std::uint32_t mul(std::uint32_t x, std::uint32_t y) const = 0;
    virtual std::uint32_t inv(std::uint32_t x) const = 0;
    /// y with x*y == z
    virtual std::uint32_t ldiv(std::uint32_t x, std::uint32_t z) const = 0;
    /// x with x*y == z
    virtual std::uint32_t rdiv(std::uint32_t z, std::uint32_t y) const = 0;
};

/// Adapter: loop operations straight off a PaigeLoop. Divisions use the
/// inverse (valid in Moufang loops, which have the inverse property).
class DirectLoopOps final : public LoopOps {
public:
    explicit DirectLoopOps(const PaigeLoop& loop) : loop_(&loop) {}
    std::uint32_t size() const override { return loop_->size(); }
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const override { return loop_->mul(x, y); }
    std::uint32_t inv(std::uint32_t x) const override { return loop_->inv(x); }
    std::uint32_t ldiv(std::uint32_t x, std::uint32_t z) const override {
        return loop_->mul(loop_->inv(x), z);
    }
    std::uint32_t rdiv(std::uint32_t z, std::uint32_t y) const override {
        return loop_->mul(z, loop_->inv(y));
    }
    const PaigeLoop& loop() const { return *loop_; }

private:
    const PaigeLoop* loop_;
};

inline constexpr std::uint64_t kDefaultTableLimit = 2000;

/// Indexed N x N Cayley table with division tables and inverses. The Latin
/// square property is verified at construction.
class LoopTable final : public LoopOps {
public:
    static LoopTable build(const LoopOps& loop, std::uint64_t max_elements = kDefaultTableLimit);
    static LoopTable from_rows(std::vector<std::vector<std::uint32_t>> rows);
    /// No Latin validation; for regression fixtures and trusted caches.
    static LoopTable from_rows_unchecked(std::vector<std::vector<std::uint32_t>> rows);

    std::uint32_t size() const override { return n_; }
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const override {
        return table_[static_cast<std::size_t>(x) * n_ + y];
    }
    std::uint32_t inv(std::uint32_t x) const override { return inv_[x]; }
    std::uint32_t ldiv(std::uint32_t x, std::uint32_t z) const override {
        return ldiv_[static_cast<std::size_t>(x) * n_ + z];
    }
    std::uint32_t rdiv(std::uint32_t z, std::uint32_t y) const override {
        return rdiv_[static_cast<std::size_t>(y) * n_ + z];
    }

    const std::vector<std::uint32_t>& raw() const { return table_; } // row-major

private:
    LoopTable() = default;
    void finish(bool validate); // divisions, inverses, identity/Latin checks
    std::uint32_t n_ = 0;
    std::vector<std::uint32_t> table_, ldiv_, rdiv_, inv_;
};

/// Subset of loop indices closed under multiplication and inversion,
/// containing the identity. Kept sorted.
struct SubloopHandle {
    std::vector<std::uint32_t> indices;
    bool contains(std::uint32_t x) const;
    std::size_t size() const { return indices.size(); }
};

struct ScanMode {
    enum class Kind { exhaustive, sample };
    Kind kind = Kind::exhaustive;
    std::uint64_t count = 0; // samples
    std::uint64_t seed = 0;

    static ScanMode exhaustive() { return ScanMode{}; }
    static ScanMode sample(std::uint64_t count, std::uint64_t seed) {
        return ScanMode{Kind::sample, count, seed};
    }
    bool is_sample() const { return kind == Kind::sample; }
};

struct MoufangIdentityResult {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::optional<std::array<std::uint32_t, 3>> first_counterexample; // lex-min failing triple
    bool pass() const { return failures == 0; }
};

struct MoufangReport {
    std::array<MoufangIdentityResult, 4> identities;
    ScanMode mode;
    bool all_pass() const {
        for (const auto& r : identities)
            if (!r.pass()) return false;
        return true;
    }
};

/// Verifies the four Moufang identities
///   ((xy)x)z = x(y(xz)),  ((xy)z)y = x(y(zy)),
///   (xy)(zx) = (x(yz))x,  (xy)(zx) = x((yz)x).
/// Failure is data, not an error.
MoufangReport check_moufang(const LoopOps& t, const ScanMode& mode, unsigned threads = 0);

/// Smallest index set containing seed and the identity, closed under
/// products and inverses.
SubloopHandle subloop_closure(const LoopOps& t, std::span<const std::uint32_t> seed);

/// True iff the closure of the seed is the whole loop (early-exit variant).
bool generates(const LoopOps& t, std::span<const std::uint32_t> seed);

struct InnerMaps {
    std::vector<std::uint32_t> left;  // L(x,y): z -> (xy) \ (x(yz))
    std::vector<std::uint32_t> right; // R(x,y): z -> ((zx)y) / (xy)
    std::vector<std::uint32_t> conj;  // T(x):   z -> x \ (zx)
};
InnerMaps inner_maps(const LoopOps& t, std::uint32_t x, std::uint32_t y);

/// Smallest subloop containing seed that is invariant under all inner
/// mappings.
SubloopHandle normal_closure(const LoopOps& t, std::span<const std::uint32_t> seed);

/// True iff s (a subloop; validated) is invariant under every inner map.
bool is_normal(const LoopOps& t, const SubloopHandle& s);

/// Indices commuting and associating with everything.
SubloopHandle center(const LoopOps& t);

/// Every nontrivial normal closure is the whole loop. The trivial loop is
/// reported as not simple by convention.
bool is_simple(const LoopOps& t, unsigned threads = 0);

/// True iff perm fixes 0 and preserves the table. Throws if perm is not a
/// permutation of 0..N-1.
bool check_automorphism(const LoopOps& t, std::span<const std::uint32_t> perm,
                        unsigned threads = 0);

/// Order of a permutation (lcm of cycle lengths).
std::uint64_t permutation_order(std::span<const std::uint32_t> perm);

/// Triple scan for the generator corollary: buckets every scanned triple as
/// associating / nonassociating-generating / nonassociating-nongenerating.
struct TripleScanReport {
    std::uint64_t scanned = 0;
    std::uint64_t associating = 0;
    std::uint64_t nonassoc_generating = 0;
    std::uint64_t nonassoc_nongenerating = 0;
    std::vector<std::array<std::uint32_t, 3>> nongenerating_witnesses; // lex-min first
    ScanMode mode;
};
TripleScanReport scan_generator_triples(const LoopOps& t, const ScanMode& mode,
                                        std::size_t witness_limit = 16, unsigned threads = 0);

} // namespace paige

#endif
