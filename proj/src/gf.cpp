#include "mfl/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace mfl {

const char* to_string(Errc c) noexcept {
    switch (c) {
        case Errc::not_prime: return "NotPrime";
        case Errc::bad_degree: return "BadDegree";
        case Errc::field_too_large: return "FieldTooLarge";
        case Errc::division_by_zero: return "DivisionByZero";
        case Errc::mixed_fields: return "MixedFields";
        case Errc::not_a_unit: return "NotAUnit";
        case Errc::not_latin: return "NotLatin";
        case Errc::no_identity: return "NoIdentity";
        case Errc::not_a_subloop: return "NotASubloop";
        case Errc::not_normal: return "NotNormal";
        case Errc::not_moufang: return "NotMoufang";
        case Errc::not_associative: return "NotAssociative";
        case Errc::center_mismatch: return "CenterMismatch";
        case Errc::unknown_name: return "UnknownName";
        case Errc::not_p_loop: return "NotPLoop";
        case Errc::not_nilpotent: return "NotNilpotent";
        case Errc::mismatch: return "Mismatch";
        case Errc::too_large: return "TooLarge";
        case Errc::bad_input: return "BadInput";
    }
    return "Error";
}

namespace {

constexpr std::uint64_t kMaxFieldSize = 1u << 16;
constexpr std::uint32_t kTableCutoff = 256; // full q x q tables below this

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Dense polynomials over GF(p), low-degree coefficient first, no trailing zeros.
using Poly = std::vector<unsigned>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod m, m monic
Poly poly_mod(Poly a, const Poly& m, unsigned p) {
    poly_trim(a);
    while (a.size() >= m.size()) {
        unsigned lead = a.back();
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            unsigned sub = (lead * m[i]) % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        poly_trim(a);
    }
    return a;
}

bool next_tuple(std::vector<unsigned>& t, unsigned p) {
    for (std::size_t i = t.size(); i-- > 0;) {
        if (++t[i] < p) return true;
        t[i] = 0;
    }
    return false;
}

// Trial division by every monic divisor of degree 1..deg/2.
bool is_irreducible(const Poly& f, unsigned p) {
    std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::vector<unsigned> low(d, 0); // low coefficients of a monic divisor
        do {
            Poly div(low.begin(), low.end());
            div.push_back(1);
            if (poly_mod(f, div, p).empty()) return false;
        } while (next_tuple(low, p));
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree n over GF(p),
// tuples (c0, ..., c_{n-1}) compared low-degree-first.
Poly smallest_irreducible(unsigned p, unsigned n) {
    if (n == 1) return Poly{0, 1}; // x
    std::vector<unsigned> low(n, 0);
    // Scan with c0 most significant so the first hit is the lex-least tuple.
    std::vector<unsigned> counter(n, 0);
    do {
        Poly f(counter.begin(), counter.end());
        f.push_back(1);
        if (is_irreducible(f, p)) return f;
    } while (next_tuple(counter, p));
    throw std::logic_error("no irreducible polynomial found"); // unreachable
}

} // namespace

FiniteField::FiniteField(unsigned p, unsigned n) : p_(p), n_(n) {
    if (!is_prime(p)) throw Error(Errc::not_prime, "p = " + std::to_string(p));
    if (n < 1) throw Error(Errc::bad_degree, "n = " + std::to_string(n));
    std::uint64_t q = 1;
    for (unsigned i = 0; i < n; ++i) {
        q *= p;
        if (q > kMaxFieldSize)
            throw Error(Errc::field_too_large,
                        "p^n exceeds 2^16 (p = " + std::to_string(p) + ", n = " + std::to_string(n) + ")");
    }
    q_ = static_cast<std::uint32_t>(q);
    modulus_ = smallest_irreducible(p, n);

    // x^k mod modulus for k = n .. 2n-2, stored as element indices.
    xpow_red_.resize(n >= 1 ? n - 1 : 0);
    for (unsigned k = n; k + 1 <= 2 * n - 1 && n > 1; ++k) {
        Poly xe(k + 1, 0);
        xe[k] = 1;
        Poly r = poly_mod(xe, modulus_, p);
        std::uint32_t ix = 0;
        for (std::size_t i = r.size(); i-- > 0;) ix = ix * p + r[i];
        xpow_red_[k - n] = ix;
    }

    neg_t_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        std::uint32_t r = 0, mult = 1, x = a;
        for (unsigned i = 0; i < n_; ++i) {
            unsigned d = x % p_;
            r += ((p_ - d) % p_) * mult;
            x /= p_;
            mult *= p_;
        }
        neg_t_[a] = r;
    }

    tables_ = q_ <= kTableCutoff;
    if (tables_) {
        add_t_.resize(std::size_t(q_) * q_);
        mul_t_.resize(std::size_t(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b) {
                add_t_[std::size_t(a) * q_ + b] = static_cast<std::uint16_t>(add_slow(a, b));
                mul_t_[std::size_t(a) * q_ + b] = static_cast<std::uint16_t>(mul_slow(a, b));
            }
    }

    inv_t_.assign(q_, 0);
    for (std::uint32_t a = 1; a < q_; ++a) inv_t_[a] = pow_ix(a, static_cast<long long>(q_) - 2);

    sqrt_t_.assign(q_, kNoRoot);
    for (std::uint32_t x = 0; x < q_; ++x) {
        std::uint32_t s = mul_ix(x, x);
        if (sqrt_t_[s] == kNoRoot) sqrt_t_[s] = x;
    }
    closed_sqrt_ = true;
    for (std::uint32_t a = 1; a < q_; ++a)
        if (sqrt_t_[a] == kNoRoot) {
            closed_sqrt_ = false;
            break;
        }
}

std::uint32_t FiniteField::add_slow(std::uint32_t a, std::uint32_t b) const {
    if (n_ == 1) return (a + b) % p_;
    std::uint32_t r = 0, mult = 1;
    for (unsigned i = 0; i < n_; ++i) {
        r += ((a % p_ + b % p_) % p_) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

std::uint32_t FiniteField::mul_slow(std::uint32_t a, std::uint32_t b) const {
    if (n_ == 1) return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p_);
    unsigned da[16], db[16];
    std::uint32_t x = a, y = b;
    for (unsigned i = 0; i < n_; ++i) {
        da[i] = x % p_;
        x /= p_;
        db[i] = y % p_;
        y /= p_;
    }
    unsigned conv[31] = {0};
    for (unsigned i = 0; i < n_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < n_; ++j)
            conv[i + j] = (conv[i + j] + da[i] * db[j]) % p_;
    }
    // Low part directly, high part through the precomputed x^k reductions.
    std::uint32_t r = 0, mult = 1;
    for (unsigned k = 0; k < n_; ++k) {
        r += conv[k] * mult;
        mult *= p_;
    }
    for (unsigned k = n_; k <= 2 * n_ - 2; ++k) {
        if (conv[k] == 0) continue;
        std::uint32_t red = xpow_red_[k - n_], scaled = 0, m2 = 1;
        for (unsigned i = 0; i < n_; ++i) {
            scaled += ((red % p_) * conv[k] % p_) * m2;
            red /= p_;
            m2 *= p_;
        }
        r = add_slow(r, scaled);
    }
    return r;
}

std::uint32_t FiniteField::inv_ix(std::uint32_t a) const {
    if (a == 0) throw Error(Errc::division_by_zero, "inverse of zero");
    return inv_t_[a];
}

std::uint32_t FiniteField::pow_ix(std::uint32_t a, long long e) const {
    if (e < 0) {
        a = inv_ix(a);
        e = -e;
    }
    std::uint32_t r = 1 % q_, base = a;
    std::uint64_t k = static_cast<std::uint64_t>(e);
    while (k > 0) {
        if (k & 1) r = mul_ix(r, base);
        base = mul_ix(base, base);
        k >>= 1;
    }
    return r;
}

std::optional<std::uint32_t> FiniteField::sqrt_ix(std::uint32_t a) const {
    if (sqrt_t_[a] == kNoRoot) return std::nullopt;
    return sqrt_t_[a];
}

std::vector<unsigned> FiniteField::coeffs_of(std::uint32_t ix) const {
    std::vector<unsigned> c(n_);
    for (unsigned i = 0; i < n_; ++i) {
        c[i] = ix % p_;
        ix /= p_;
    }
    return c;
}

std::string FiniteField::to_string(std::uint32_t ix) const {
    std::string s;
    auto c = coeffs_of(ix);
    for (unsigned i = 0; i < n_; ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    return s;
}

FieldElement FiniteField::from_int(long long value) const {
    long long r = value % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return FieldElement(*this, static_cast<std::uint32_t>(r));
}

FieldElement FiniteField::from_coeffs(const std::vector<long long>& coeffs) const {
    if (coeffs.size() > n_) throw Error(Errc::bad_input, "too many coefficients for field degree");
    std::uint32_t ix = 0, mult = 1;
    for (unsigned i = 0; i < n_; ++i) {
        long long c = i < coeffs.size() ? coeffs[i] % static_cast<long long>(p_) : 0;
        if (c < 0) c += p_;
        ix += static_cast<std::uint32_t>(c) * mult;
        mult *= p_;
    }
    return FieldElement(*this, ix);
}

FieldElement FiniteField::parse_element(std::string_view text) const {
    auto to_num = [&](const std::string& part) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(part, &used);
            if (used != part.size()) throw Error(Errc::bad_input, "bad coefficient '" + part + "'");
            return v;
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw Error(Errc::bad_input, "bad coefficient '" + part + "'");
        }
    };
    std::vector<long long> coeffs;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            coeffs.push_back(to_num(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) coeffs.push_back(to_num(cur));
    if (coeffs.empty()) throw Error(Errc::bad_input, "empty field element");
    return from_coeffs(coeffs);
}

const FiniteField& FiniteField::get(unsigned p, unsigned n) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FiniteField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::unique_ptr<FiniteField>(new FiniteField(p, n))).first;
    return *it->second;
}

const FiniteField& FiniteField::parse(std::string_view spec) {
    std::string s(spec);
    auto caret = s.find('^');
    unsigned long p = 0, n = 1;
    auto to_num = [&](const std::string& part) {
        std::size_t used = 0;
        unsigned long v = std::stoul(part, &used);
        if (used != part.size()) throw Error(Errc::bad_input, "bad field spec '" + s + "'");
        return v;
    };
    try {
        if (caret != std::string::npos) {
            p = to_num(s.substr(0, caret));
            n = to_num(s.substr(caret + 1));
        } else {
            unsigned long q = to_num(s);
            if (q < 2) throw Error(Errc::bad_input, "field size must be >= 2");
            if (is_prime(static_cast<unsigned>(q))) {
                p = q;
            } else {
                // factor a prime power
                unsigned long base = 2;
                while (base * base <= q && q % base != 0) ++base;
                if (q % base != 0) base = q;
                unsigned long v = q, e = 0;
                while (v % base == 0) {
                    v /= base;
                    ++e;
                }
                if (v != 1) throw Error(Errc::not_prime, s + " is not a prime power");
                p = base;
                n = e;
            }
        }
    } catch (const std::invalid_argument&) {
        throw Error(Errc::bad_input, "bad field spec '" + s + "'");
    } catch (const std::out_of_range&) {
        throw Error(Errc::bad_input, "bad field spec '" + s + "'");
    }
    return get(static_cast<unsigned>(p), static_cast<unsigned>(n));
}

} // namespace mfl
