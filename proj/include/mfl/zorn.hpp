#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfl/gf.hpp"

namespace mfl {

/// Element of the split matrix Cayley-Dickson algebra C(F): two scalars on
/// the diagonal and two 3-vectors off it.  All eight components live in one
/// field.
struct ZornMatrix {
    FieldElement a1, a2;
    std::array<FieldElement, 3> v12, v21;

    const FiniteField& field() const { return a1.field(); }

    static ZornMatrix zero(const FiniteField& f);
    static ZornMatrix identity(const FiniteField& f);

    bool operator==(const ZornMatrix& o) const {
        return a1 == o.a1 && a2 == o.a2 && v12 == o.v12 && v21 == o.v21;
    }
    bool operator!=(const ZornMatrix& o) const { return !(*this == o); }
};

ZornMatrix zmul(const ZornMatrix& a, const ZornMatrix& b);
ZornMatrix zadd(const ZornMatrix& a, const ZornMatrix& b);
ZornMatrix zsub(const ZornMatrix& a, const ZornMatrix& b);
ZornMatrix zneg(const ZornMatrix& a);
ZornMatrix zscale(const FieldElement& c, const ZornMatrix& a);

FieldElement trace(const ZornMatrix& a);
FieldElement norm(const ZornMatrix& a);

/// Inverse of a unit: n(a)^{-1} (t(a) 1 - a).  Throws NotAUnit when n(a) = 0.
ZornMatrix zinv(const ZornMatrix& a);

/// Algebra associator (u,v,w) = (uv)w - u(vw).
ZornMatrix zorn_associator(const ZornMatrix& u, const ZornMatrix& v, const ZornMatrix& w);

bool is_zero(const ZornMatrix& a);

/// Position of a matrix in the lexicographic enumeration of all q^8 matrices,
/// components ordered (a1, a2, v12, v21), the last vector entry fastest.
std::uint64_t zorn_key(const ZornMatrix& a);
ZornMatrix zorn_from_key(const FiniteField& f, std::uint64_t key);

/// All q^8 matrices in key order.  Guarded to q <= 5.
std::vector<ZornMatrix> enumerate_zorn(const FiniteField& f);
std::vector<ZornMatrix> enumerate_by_norm(const FiniteField& f, const FieldElement& target);
std::vector<ZornMatrix> enumerate_units(const FiniteField& f);

/// "(a1, a2 | x,y,z | x,y,z)"; components use ';' separators when the field
/// has degree > 1 (each component is itself a comma-separated coefficient list).
std::string to_string(const ZornMatrix& a);
ZornMatrix parse_zorn(const FiniteField& f, std::string_view text);

} // namespace mfl
