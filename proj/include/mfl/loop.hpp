#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mfl/error.hpp"

namespace mfl {

/// Fixed seed used by every sampled check unless a caller overrides it.
inline constexpr std::uint64_t kDefaultSeed = 0x6d666c;

/// How triple-quantified predicates (Moufang, associativity) are evaluated.
/// `automatic` is exhaustive up to `exhaustive_cutoff` elements and switches
/// to fixed-seed sampling above it.
struct CheckPolicy {
    enum class Mode { automatic, exhaustive, sampled };
    Mode mode = Mode::automatic;
    std::size_t samples = 100000;
    std::uint64_t seed = kDefaultSeed;
    int exhaustive_cutoff = 256;

    static CheckPolicy exhaustive() { return {Mode::exhaustive, 0, 0, 0}; }
    static CheckPolicy sampled(std::size_t count, std::uint64_t seed = kDefaultSeed) {
        return {Mode::sampled, count, seed, 0};
    }
};

/// A finite loop as a validated Cayley table over indices 0..order-1 with the
/// identity at index 0.  Division tables are precomputed, so quasigroup
/// solves are O(1).
class FiniteLoop {
public:
    FiniteLoop() = default; // empty placeholder; build real loops via from_*

    static FiniteLoop from_rows(const std::vector<std::vector<int>>& rows);
    static FiniteLoop from_flat(int order, std::vector<std::uint16_t> table);

    int order() const { return order_; }

    int mul(int x, int y) const { return table_[std::size_t(x) * order_ + y]; }
    /// y with x*y = b
    int ldiv(int x, int b) const { return ldiv_[std::size_t(x) * order_ + b]; }
    /// x with x*y = b
    int rdiv(int b, int y) const { return rdiv_[std::size_t(b) * order_ + y]; }

    int left_inv(int x) const { return linv_[x]; }   // y with y*x = 1
    int right_inv(int x) const { return rinv_[x]; }  // y with x*y = 1
    int inv(int x) const { return rinv_[x]; }

    // Point evaluations of the inner mappings T(a), R(a,b), L(a,b).
    int t_map(int a, int x) const { return ldiv(a, mul(x, a)); }
    int r_map(int a, int b, int x) const { return rdiv(mul(mul(x, a), b), mul(a, b)); }
    int l_map(int a, int b, int x) const { return ldiv(mul(a, b), mul(a, mul(b, x))); }

    bool operator==(const FiniteLoop& o) const {
        return order_ == o.order_ && table_ == o.table_;
    }

private:
    void build_aux();

    int order_ = 0;
    std::vector<std::uint16_t> table_, ldiv_, rdiv_;
    std::vector<std::uint16_t> linv_, rinv_;
};

bool is_associative(const FiniteLoop& q, CheckPolicy policy = {});
bool is_moufang(const FiniteLoop& q, CheckPolicy policy = {});
bool is_ip_loop(const FiniteLoop& q);
bool is_commutative(const FiniteLoop& q);

// Inner mappings as explicit permutations (images of 0..order-1).
std::vector<int> inner_t(const FiniteLoop& q, int a);
std::vector<int> inner_r(const FiniteLoop& q, int a, int b);
std::vector<int> inner_l(const FiniteLoop& q, int a, int b);

/// Solution x of ab.c = ax.bc
int assoc_alpha(const FiniteLoop& q, int a, int b, int c);
/// Solution x of c.ba = cb.xa
int assoc_beta(const FiniteLoop& q, int a, int b, int c);
/// Solution t of ab = b.at
int commutator(const FiniteLoop& q, int a, int b);
/// Solution t of ab.c = (a.bc)t
int bracket_assoc(const FiniteLoop& q, int a, int b, int c);
/// Solution t of ab = (ba)t
int bracket_comm(const FiniteLoop& q, int a, int b);

/// An index subset of a loop, validated on construction to contain the
/// identity and be closed under products and both inverses.  Holds a pointer
/// to the parent; must not outlive it.
class SubloopRef {
public:
    SubloopRef(const FiniteLoop& parent, std::vector<int> members);

    const FiniteLoop& parent() const { return *parent_; }
    const std::vector<int>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(int x) const { return mask_[x] != 0; }
    bool is_whole() const { return members_.size() == std::size_t(parent_->order()); }

    bool operator==(const SubloopRef& o) const {
        return parent_ == o.parent_ && members_ == o.members_;
    }
    bool subset_of(const SubloopRef& o) const;

private:
    const FiniteLoop* parent_;
    std::vector<int> members_;
    std::vector<char> mask_;
};

SubloopRef trivial_subloop(const FiniteLoop& q);
SubloopRef whole_loop(const FiniteLoop& q);
SubloopRef subloop_generated(const FiniteLoop& q, const std::vector<int>& seeds);

/// Normality per the coset characterization xH = Hx, x.yH = xy.H, H.xy = Hx.y,
/// evaluated blockwise in O(order^2).  Inner-mapping stability (the T/R/L
/// form) is equivalent and exposed as is_normal_inner for cross-checks.
bool is_normal(const FiniteLoop& q, const SubloopRef& h);
bool is_normal_inner(const FiniteLoop& q, const SubloopRef& h);

SubloopRef normal_closure(const FiniteLoop& q, const std::vector<int>& seeds);
SubloopRef center(const FiniteLoop& q);

struct LoopMap {
    std::vector<int> images; // images[x] in the target loop
};

/// Checks images[x*y] == images[x]*images[y] and images[0] == 0.
bool is_homomorphism(const FiniteLoop& src, const FiniteLoop& tgt, const LoopMap& map);

struct Quotient {
    FiniteLoop loop;
    LoopMap projection;
};

/// Cosets of a normal subloop as a loop.  Throws NotNormal otherwise.
Quotient quotient(const FiniteLoop& q, const SubloopRef& h);

int element_order(const FiniteLoop& q, int g);
bool is_simple(const FiniteLoop& q);

/// One-sided evidence for large loops: closes `count` seeded random
/// singletons; a proper closure disproves simplicity, full agreement only
/// suggests it.
bool is_simple_sampled(const FiniteLoop& q, std::size_t count, std::uint64_t seed = kDefaultSeed);

enum class SeriesKind { upper, lower, custom };
enum class LcsMode { general, moufang };

struct SeriesReport {
    SeriesKind kind = SeriesKind::custom;
    std::vector<SubloopRef> chain;
    std::optional<int> cls; // central nilpotency class, absent if the series stalls
};

SeriesReport upper_central_series(const FiniteLoop& q);
SeriesReport lower_central_series(const FiniteLoop& q, LcsMode mode,
                                  CheckPolicy policy = {});

/// Common length of the central series when both terminate; absent otherwise.
std::optional<int> nilpotency_class(const FiniteLoop& q);

/// True iff `chain` is a descending series of normal subloops from Q to {1}
/// with every quotient step central.  Structural defects yield false.
bool is_central_series(const FiniteLoop& q, const std::vector<SubloopRef>& chain);

std::string series_to_json(const SeriesReport& report);

// Cayley-table text format: "order n" then n rows of n indices.
FiniteLoop read_table(std::istream& in);
void write_table(std::ostream& out, const FiniteLoop& q);

} // namespace mfl
