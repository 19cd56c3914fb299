#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfl/loop.hpp"
#include "mfl/zorn.hpp"

namespace mfl {

struct PaigeOptions {
    bool allow_large = false; // lifts the q <= 3 table guard (q <= 2 for units)
    std::ostream* progress = nullptr;
};

/// A Cayley table built from a multiplicatively closed set of Zorn matrices,
/// reindexed so the identity matrix sits at index 0.  elements[i] is the
/// matrix behind loop index i.
struct ZornLoop {
    FiniteLoop loop;
    std::vector<ZornMatrix> elements;
};

ZornLoop make_zorn_loop(const FiniteField& f, std::vector<ZornMatrix> elements,
                        std::ostream* progress = nullptr);

/// M0(F), M(F) and the projection between them.
struct PaigeBundle {
    const FiniteField* field = nullptr;
    FiniteLoop m0;
    std::vector<ZornMatrix> elements; // index -> matrix, for m0
    std::optional<FiniteLoop> m;      // present after build_m
    std::optional<LoopMap> projection; // m0 -> m
};

/// Norm-one loop M0(F).  Guarded to q <= 3 (q <= 5 with allow_large).
PaigeBundle build_m0(const FiniteField& f, const PaigeOptions& opts = {});

/// M(F) = M0(F)/<-1>.  In characteristic 2 this is M0 itself; in odd
/// characteristic the center of M0 is verified to equal {1,-1} first
/// (CenterMismatch otherwise) and the quotient is taken.
PaigeBundle build_m(const FiniteField& f, const PaigeOptions& opts = {});

/// Unit loop U(F) = {n(a) != 0}.  Guarded to q = 2 (q = 3 with allow_large;
/// larger fields would need multi-GB tables and are refused).
ZornLoop build_unit_loop(const FiniteField& f, const PaigeOptions& opts = {});

struct ClassificationReport {
    unsigned p = 0;
    unsigned n = 0;
    std::uint32_t q = 0;
    bool characteristic_two = false;
    bool computed_closed_under_sqrt = false; // by enumeration; authoritative
    bool parity_claim_closed = false;        // the even-exponent heuristic, for comparison
    bool claims_disagree = false;
    std::string verdict; // "claimed non-embeddable" or "embeddable"
};

ClassificationReport classify_embeddability(unsigned p, unsigned n);

} // namespace mfl
