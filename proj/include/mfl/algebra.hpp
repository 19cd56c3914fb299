#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfl/gf.hpp"
#include "mfl/loop.hpp"

namespace mfl {

/// Everything here is exact linear algebra over a small finite field; the
/// ambient dimension (loop order) is guarded to 256.
inline constexpr int kAlgebraDimGuard = 256;

/// Element of the loop algebra FQ: a coefficient per loop element, stored as
/// field-element indices.
class AlgebraElement {
public:
    AlgebraElement(const FiniteLoop& loop, const FiniteField& field);

    static AlgebraElement basis(const FiniteLoop& loop, const FiniteField& field, int g);
    static AlgebraElement unit(const FiniteLoop& loop, const FiniteField& field); // basis(0)
    /// 1 - g
    static AlgebraElement one_minus(const FiniteLoop& loop, const FiniteField& field, int g);

    const FiniteLoop& loop() const { return *loop_; }
    const FiniteField& field() const { return *field_; }
    const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }

    FieldElement coeff(int g) const { return field_->element(coeffs_[g]); }
    void set_coeff(int g, const FieldElement& c);

    bool is_zero() const;
    FieldElement augmentation() const;

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    AlgebraElement scaled(const FieldElement& c) const;
    AlgebraElement operator-() const;

    /// Left-normed power x, x.x, (x.x).x, ...; k >= 1.
    AlgebraElement pow_left(std::size_t k) const;

    bool operator==(const AlgebraElement& o) const;
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

private:
    void check_compatible(const AlgebraElement& o) const;

    const FiniteLoop* loop_;
    const FiniteField* field_;
    std::vector<std::uint32_t> coeffs_;
};

/// Row space in reduced echelon form over a finite field.  The basis is
/// canonical, so subspace equality is rowwise equality.
class Subspace {
public:
    Subspace(const FiniteField& field, std::size_t ambient_dim);

    const FiniteField& field() const { return *field_; }
    std::size_t ambient_dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<std::uint32_t>>& rows() const { return rows_; }

    /// Returns the reduced new basis row if the span grew, nullopt otherwise.
    std::optional<std::vector<std::uint32_t>> insert(std::vector<std::uint32_t> v);
    std::optional<std::vector<std::uint32_t>> insert(const AlgebraElement& v);

    std::vector<std::uint32_t> reduce(std::vector<std::uint32_t> v) const;
    bool contains(const std::vector<std::uint32_t>& v) const;
    bool contains(const AlgebraElement& v) const;
    bool subspace_of(const Subspace& o) const;

    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    const FiniteField* field_;
    std::size_t dim_;
    std::vector<std::vector<std::uint32_t>> rows_; // sorted by pivot column
    std::vector<int> pivot_of_row_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);

/// A multiplication-closed subspace of FQ together with its provenance.
/// Closure under one-sided products with every loop basis element is checked
/// at construction.
struct IdealHandle {
    const FiniteLoop* loop = nullptr;
    const FiniteField* field = nullptr;
    Subspace space;
    std::string description;
};

/// Least ideal containing {1-h : h in H}.  H must be normal (the whole loop
/// is always accepted).  For H = Q the result is the kernel of the
/// augmentation map and has dimension |Q|-1.
IdealHandle omega_ideal(const FiniteLoop& q, const FiniteField& f, const SubloopRef& h);
IdealHandle omega_ideal(const FiniteLoop& q, const FiniteField& f); // whole loop

/// Ideal generated by an arbitrary list of algebra elements.
IdealHandle ideal_generated(const FiniteLoop& q, const FiniteField& f,
                            const std::vector<AlgebraElement>& gens, std::string description);

/// Powers P_1 = S, P_k = span{u v : u in basis(P_i), v in basis(P_{k-i})};
/// the chain stops after the first zero or repeated term, or at cap.
std::vector<Subspace> ideal_power_chain(const IdealHandle& s, std::size_t cap);
Subspace ideal_power(const IdealHandle& s, std::size_t k);

/// Least k <= cap with P_k = 0, absent if the chain stabilizes nonzero or cap
/// is exhausted.  cap = 0 means dim+1 (always sufficient for ideals).
std::optional<std::size_t> nilpotency_index(const IdealHandle& s, std::size_t cap = 0);

struct PLoopOmegaReport {
    std::vector<int> element_orders;
    bool one_minus_g_powers_vanish = false; // (1-g)^{order g} = 0 for every g
    std::vector<std::size_t> power_dims;
    std::optional<std::size_t> index;
    bool ok() const { return one_minus_g_powers_vanish && index.has_value(); }
};

/// Checks the augmentation-ideal nilpotency mechanism for a Moufang p-loop
/// over GF(p).  Throws NotMoufang / NotPLoop when the hypotheses fail.
PLoopOmegaReport p_loop_omega_check(const FiniteLoop& q, unsigned p);

/// Sum 1 + u + ... + u^{m-1}; verified to invert 1-u (NotNilpotent otherwise).
AlgebraElement nil_inverse_series(const AlgebraElement& u, std::size_t m);

struct BracketIdentityResult {
    bool associator_identity = false;
    bool commutator_identity = false;
    bool ok() const { return associator_identity && commutator_identity; }
};

/// Both unit-loop bracket identities for a = 1-u, b = 1-v, c = 1-w:
///   [a,b,c] = 1 - ((Sw Sv) Su)(u,v,w)   and   [a,b] = 1 + (Su Sv)(u,v),
/// where Sx = 1 + x + ... + x^{m-1}.  Requires u^m = v^m = w^m = 0.
BracketIdentityResult bracket_identity_check(const AlgebraElement& u, const AlgebraElement& v,
                            const AlgebraElement& w, std::size_t m);

struct OmegaChainBoundReport {
    bool applicable = false; // omega(Q) nilpotent
    std::optional<std::size_t> omega_index;
    struct Level {
        std::size_t term_size = 0;
        bool included = false; // every g in Q_i has 1-g in (omega Q)^{i+1}
    };
    std::vector<Level> levels;
    std::optional<std::size_t> class_bound; // omega_index - 1
    std::optional<int> computed_class;
    bool ok() const;
};

/// Chain inclusion Q_i <= 1 - (omega Q)^{i+1} and the resulting class bound.
OmegaChainBoundReport omega_chain_bound_check(const FiniteLoop& q, const FiniteField& f);

struct AugmentationSuiteReport {
    struct PerH {
        std::size_t omega_dim = 0;
        bool dim_matches_quotient = false;        // dim(FQ/omega H) = |Q/H|
        bool structure_constants_match = false;   // FQ/omega H = F(Q/H) on coset reps
        bool omega_quotient_matches = false;      // image of omega Q = omega(Q/H)
        bool generators_suffice = false;          // 1-h_i for generators span omega H
        bool membership_equivalence = false;      // g in H iff 1-g in omega H
        bool all() const {
            return dim_matches_quotient && structure_constants_match && omega_quotient_matches &&
                   generators_suffice && membership_equivalence;
        }
    };
    PerH h1, h2;
    bool kernel_characterization = false; // omega Q = {sum c_q q : sum c_q = 0}
    bool unit_line_split = false;         // F.1 ^ omega Q = 0 and FQ = F.1 + omega Q
    bool omegas_distinct = true;          // omega H1 != omega H2 when H1 != H2
    std::optional<bool> strict_inclusion; // when H1 < H2
    bool join_is_sum = false;             // omega<H1,H2> = omega H1 + omega H2
    bool all_ok() const;
};

AugmentationSuiteReport augmentation_ideal_suite(const FiniteLoop& q, const FiniteField& f, const SubloopRef& h1,
                        const SubloopRef& h2);

} // namespace mfl
