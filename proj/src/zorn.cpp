#include "mfl/zorn.hpp"

#include <sstream>

namespace mfl {

namespace {

using Vec3 = std::array<FieldElement, 3>;

FieldElement dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 vadd(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 vsub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 vscale(const FieldElement& c, const Vec3& a) { return {c * a[0], c * a[1], c * a[2]}; }

void require_same_field(const ZornMatrix& a, const ZornMatrix& b) {
    if (&a.field() != &b.field())
        throw Error(Errc::mixed_fields, "Zorn matrices from different fields");
}

constexpr std::uint32_t kEnumGuard = 5;

} // namespace

ZornMatrix ZornMatrix::zero(const FiniteField& f) {
    FieldElement z = f.zero();
    return ZornMatrix{z, z, {z, z, z}, {z, z, z}};
}

ZornMatrix ZornMatrix::identity(const FiniteField& f) {
    FieldElement z = f.zero(), o = f.one();
    return ZornMatrix{o, o, {z, z, z}, {z, z, z}};
}

ZornMatrix zmul(const ZornMatrix& a, const ZornMatrix& b) {
    require_same_field(a, b);
    return ZornMatrix{
        a.a1 * b.a1 + dot(a.v12, b.v21),
        a.a2 * b.a2 + dot(a.v21, b.v12),
        vsub(vadd(vscale(a.a1, b.v12), vscale(b.a2, a.v12)), cross(a.v21, b.v21)),
        vadd(vadd(vscale(b.a1, a.v21), vscale(a.a2, b.v21)), cross(a.v12, b.v12)),
    };
}

ZornMatrix zadd(const ZornMatrix& a, const ZornMatrix& b) {
    require_same_field(a, b);
    return ZornMatrix{a.a1 + b.a1, a.a2 + b.a2, vadd(a.v12, b.v12), vadd(a.v21, b.v21)};
}

ZornMatrix zsub(const ZornMatrix& a, const ZornMatrix& b) {
    require_same_field(a, b);
    return ZornMatrix{a.a1 - b.a1, a.a2 - b.a2, vsub(a.v12, b.v12), vsub(a.v21, b.v21)};
}

ZornMatrix zneg(const ZornMatrix& a) {
    return ZornMatrix{-a.a1, -a.a2, vscale(-a.field().one(), a.v12), vscale(-a.field().one(), a.v21)};
}

ZornMatrix zscale(const FieldElement& c, const ZornMatrix& a) {
    return ZornMatrix{c * a.a1, c * a.a2, vscale(c, a.v12), vscale(c, a.v21)};
}

FieldElement trace(const ZornMatrix& a) { return a.a1 + a.a2; }

FieldElement norm(const ZornMatrix& a) { return a.a1 * a.a2 - dot(a.v12, a.v21); }

ZornMatrix zinv(const ZornMatrix& a) {
    FieldElement n = norm(a);
    if (n.is_zero()) throw Error(Errc::not_a_unit, "norm is zero");
    ZornMatrix adj = zsub(zscale(trace(a), ZornMatrix::identity(a.field())), a);
    return zscale(n.inverse(), adj);
}

ZornMatrix zorn_associator(const ZornMatrix& u, const ZornMatrix& v, const ZornMatrix& w) {
    return zsub(zmul(zmul(u, v), w), zmul(u, zmul(v, w)));
}

bool is_zero(const ZornMatrix& a) {
    return a.a1.is_zero() && a.a2.is_zero() && a.v12[0].is_zero() && a.v12[1].is_zero() &&
           a.v12[2].is_zero() && a.v21[0].is_zero() && a.v21[1].is_zero() && a.v21[2].is_zero();
}

std::uint64_t zorn_key(const ZornMatrix& a) {
    std::uint64_t q = a.field().size(), k = 0;
    const FieldElement comps[8] = {a.a1,     a.a2,     a.v12[0], a.v12[1],
                                   a.v12[2], a.v21[0], a.v21[1], a.v21[2]};
    for (const auto& c : comps) k = k * q + c.index();
    return k;
}

ZornMatrix zorn_from_key(const FiniteField& f, std::uint64_t key) {
    std::uint64_t q = f.size();
    std::uint32_t ix[8];
    for (int i = 7; i >= 0; --i) {
        ix[i] = static_cast<std::uint32_t>(key % q);
        key /= q;
    }
    return ZornMatrix{f.element(ix[0]),
                      f.element(ix[1]),
                      {f.element(ix[2]), f.element(ix[3]), f.element(ix[4])},
                      {f.element(ix[5]), f.element(ix[6]), f.element(ix[7])}};
}

std::vector<ZornMatrix> enumerate_zorn(const FiniteField& f) {
    if (f.size() > kEnumGuard)
        throw Error(Errc::field_too_large,
                    "Zorn enumeration is guarded to q <= " + std::to_string(kEnumGuard));
    std::uint64_t total = 1;
    for (int i = 0; i < 8; ++i) total *= f.size();
    std::vector<ZornMatrix> out;
    out.reserve(total);
    for (std::uint64_t k = 0; k < total; ++k) out.push_back(zorn_from_key(f, k));
    return out;
}

std::vector<ZornMatrix> enumerate_by_norm(const FiniteField& f, const FieldElement& target) {
    if (&target.field() != &f)
        throw Error(Errc::mixed_fields, "target norm from a different field");
    std::vector<ZornMatrix> out;
    for (const ZornMatrix& m : enumerate_zorn(f))
        if (norm(m) == target) out.push_back(m);
    return out;
}

std::vector<ZornMatrix> enumerate_units(const FiniteField& f) {
    std::vector<ZornMatrix> out;
    for (const ZornMatrix& m : enumerate_zorn(f))
        if (!norm(m).is_zero()) out.push_back(m);
    return out;
}

std::string to_string(const ZornMatrix& a) {
    bool ext = a.field().degree() > 1;
    const char* sep = ext ? "; " : ",";
    auto vec = [&](const Vec3& v) {
        return v[0].str() + sep + v[1].str() + sep + v[2].str();
    };
    return "(" + a.a1.str() + (ext ? "; " : ", ") + a.a2.str() + " | " + vec(a.v12) + " | " +
           vec(a.v21) + ")";
}

ZornMatrix parse_zorn(const FiniteField& f, std::string_view text) {
    std::string s(text);
    // strip outer parens
    auto l = s.find('('), r = s.rfind(')');
    if (l != std::string::npos && r != std::string::npos && l < r) s = s.substr(l + 1, r - l - 1);

    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == '|') {
            parts.push_back(cur);
            cur.clear();
        } else
            cur += ch;
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw Error(Errc::bad_input, "expected '(a1, a2 | v12 | v21)'");

    char comp_sep = f.degree() > 1 ? ';' : ',';
    auto split = [&](const std::string& str, char sep) {
        std::vector<std::string> out;
        std::string c;
        for (char ch : str) {
            if (ch == sep) {
                out.push_back(c);
                c.clear();
            } else
                c += ch;
        }
        out.push_back(c);
        return out;
    };

    auto scalars = split(parts[0], ',');
    if (f.degree() > 1) {
        scalars = split(parts[0], ';');
    }
    if (scalars.size() != 2) throw Error(Errc::bad_input, "expected two diagonal scalars");

    auto vec = [&](const std::string& str) -> Vec3 {
        auto comps = split(str, comp_sep);
        if (comps.size() != 3) throw Error(Errc::bad_input, "expected a 3-vector");
        return {f.parse_element(comps[0]), f.parse_element(comps[1]), f.parse_element(comps[2])};
    };

    return ZornMatrix{f.parse_element(scalars[0]), f.parse_element(scalars[1]), vec(parts[1]),
                      vec(parts[2])};
}

} // namespace mfl
