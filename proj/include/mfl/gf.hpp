#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfl/error.hpp"

namespace mfl {

class FieldElement;

/// A finite field GF(p^n) with exact table-backed arithmetic.
///
/// Fields are interned: FiniteField::get(p, n) returns a reference to a
/// process-wide immutable instance, so element ownership never dangles and
/// field identity is pointer identity.
///
/// Elements are indexed 0 .. p^n-1 by their base-p coefficient encoding
/// (index = c0 + c1*p + ... + c_{n-1}*p^{n-1}, low degree least significant).
/// Index 0 is zero, index 1 is one.  The modulus is the lexicographically
/// smallest monic irreducible of degree n, comparing coefficient tuples
/// low-degree-first.
///
/// Sizes are capped at p^n <= 2^16 so that enumeration-based predicates
/// (squares, square-root closure) stay total.
class FiniteField {
public:
    static const FiniteField& get(unsigned p, unsigned n);

    /// Accepts "p^n", "p", or a plain prime power such as "9".
    static const FiniteField& parse(std::string_view spec);

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return n_; }
    std::uint32_t size() const { return q_; }

    /// Monic modulus polynomial, length degree()+1, low-degree coefficient first.
    const std::vector<unsigned>& modulus() const { return modulus_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement element(std::uint32_t index) const;
    FieldElement from_int(long long value) const;
    FieldElement from_coeffs(const std::vector<long long>& coeffs) const;
    FieldElement parse_element(std::string_view text) const;

    std::vector<unsigned> coeffs_of(std::uint32_t ix) const;
    std::string to_string(std::uint32_t ix) const;

    // Index-level arithmetic (hot paths run on raw indices).
    std::uint32_t add_ix(std::uint32_t a, std::uint32_t b) const {
        return tables_ ? add_t_[a * q_ + b] : add_slow(a, b);
    }
    std::uint32_t sub_ix(std::uint32_t a, std::uint32_t b) const { return add_ix(a, neg_ix(b)); }
    std::uint32_t neg_ix(std::uint32_t a) const { return neg_t_[a]; }
    std::uint32_t mul_ix(std::uint32_t a, std::uint32_t b) const {
        return tables_ ? mul_t_[a * q_ + b] : mul_slow(a, b);
    }
    std::uint32_t inv_ix(std::uint32_t a) const;
    std::uint32_t pow_ix(std::uint32_t a, long long e) const;

    bool is_square_ix(std::uint32_t a) const { return sqrt_t_[a] != kNoRoot; }
    std::optional<std::uint32_t> sqrt_ix(std::uint32_t a) const;

    /// True iff every nonzero element has a square root, decided by enumeration.
    bool closed_under_sqrt() const { return closed_sqrt_; }

    FiniteField(const FiniteField&) = delete;
    FiniteField& operator=(const FiniteField&) = delete;

private:
    FiniteField(unsigned p, unsigned n);

    std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;

    static constexpr std::uint32_t kNoRoot = 0xffffffffu;

    unsigned p_ = 0;
    unsigned n_ = 0;
    std::uint32_t q_ = 0;
    std::vector<unsigned> modulus_;
    bool tables_ = false;
    std::vector<std::uint16_t> add_t_;
    std::vector<std::uint16_t> mul_t_;
    std::vector<std::uint32_t> neg_t_;
    std::vector<std::uint32_t> inv_t_; // inv_t_[0] unused
    std::vector<std::uint32_t> sqrt_t_;
    std::vector<std::uint32_t> xpow_red_; // x^k mod modulus for k in [n, 2n-2]
    bool closed_sqrt_ = false;
};

/// A value of a specific finite field.  Cheap to copy; equality is structural
/// (same field, same canonical coefficient vector).
class FieldElement {
public:
    FieldElement() = default; // null element; using it in arithmetic throws

    const FiniteField& field() const {
        require_bound();
        return *field_;
    }
    std::uint32_t index() const { return ix_; }
    bool is_zero() const { return ix_ == 0; }
    bool is_one() const { return ix_ == 1; }

    std::vector<unsigned> coeffs() const { return field().coeffs_of(ix_); }
    std::string str() const { return field().to_string(ix_); }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        const FiniteField& f = a.common_field(b);
        return FieldElement(f, f.add_ix(a.ix_, b.ix_));
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        const FiniteField& f = a.common_field(b);
        return FieldElement(f, f.sub_ix(a.ix_, b.ix_));
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        const FiniteField& f = a.common_field(b);
        return FieldElement(f, f.mul_ix(a.ix_, b.ix_));
    }
    friend FieldElement operator/(FieldElement a, FieldElement b) {
        const FiniteField& f = a.common_field(b);
        return FieldElement(f, f.mul_ix(a.ix_, f.inv_ix(b.ix_)));
    }
    FieldElement operator-() const {
        require_bound();
        return FieldElement(*field_, field_->neg_ix(ix_));
    }
    FieldElement inverse() const {
        require_bound();
        return FieldElement(*field_, field_->inv_ix(ix_));
    }
    FieldElement pow(long long e) const {
        require_bound();
        return FieldElement(*field_, field_->pow_ix(ix_, e));
    }

    bool is_square() const {
        require_bound();
        return field_->is_square_ix(ix_);
    }
    std::optional<FieldElement> sqrt() const {
        require_bound();
        auto r = field_->sqrt_ix(ix_);
        if (!r) return std::nullopt;
        return FieldElement(*field_, *r);
    }

    bool operator==(const FieldElement& o) const { return field_ == o.field_ && ix_ == o.ix_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    friend class FiniteField;
    FieldElement(const FiniteField& f, std::uint32_t ix) : field_(&f), ix_(ix) {}

    void require_bound() const {
        if (field_ == nullptr) throw Error(Errc::mixed_fields, "use of unbound field element");
    }
    const FiniteField& common_field(const FieldElement& o) const {
        require_bound();
        if (field_ != o.field_)
            throw Error(Errc::mixed_fields, "operands belong to different fields");
        return *field_;
    }

    const FiniteField* field_ = nullptr;
    std::uint32_t ix_ = 0;
};

inline FieldElement FiniteField::zero() const { return FieldElement(*this, 0); }
inline FieldElement FiniteField::one() const { return FieldElement(*this, 1 % q_); }
inline FieldElement FiniteField::element(std::uint32_t index) const {
    if (index >= q_) throw Error(Errc::bad_input, "element index out of range");
    return FieldElement(*this, index);
}

} // namespace mfl
