#include "mfl/paige.hpp"

#include <ostream>

namespace mfl {

namespace {

std::uint64_t pow8(std::uint64_t q) {
    std::uint64_t t = 1;
    for (int i = 0; i < 8; ++i) t *= q;
    return t;
}

void check_guard(const FiniteField& f, std::uint32_t plain_limit, std::uint32_t override_limit,
                 bool allow_large, const char* what) {
    std::uint32_t q = f.size();
    if (q <= plain_limit) return;
    if (allow_large && q <= override_limit) return;
    std::string msg = std::string(what) + " is guarded to q <= " + std::to_string(plain_limit);
    if (override_limit > plain_limit)
        msg += " (q <= " + std::to_string(override_limit) + " with allow_large)";
    throw Error(Errc::field_too_large, msg + ", got q = " + std::to_string(q));
}

} // namespace

ZornLoop make_zorn_loop(const FiniteField& f, std::vector<ZornMatrix> elements,
                        std::ostream* progress) {
    std::size_t n = elements.size();
    if (n == 0 || n > 65535) throw Error(Errc::too_large, "element count out of range");

    ZornMatrix one = ZornMatrix::identity(f);
    std::size_t id_pos = n;
    for (std::size_t i = 0; i < n; ++i)
        if (elements[i] == one) {
            id_pos = i;
            break;
        }
    if (id_pos == n) throw Error(Errc::no_identity, "identity matrix not in element set");
    std::swap(elements[0], elements[id_pos]);

    std::vector<std::int32_t> index_of(pow8(f.size()), -1);
    for (std::size_t i = 0; i < n; ++i) index_of[zorn_key(elements[i])] = static_cast<std::int32_t>(i);

    std::vector<std::uint16_t> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::int32_t k = index_of[zorn_key(zmul(elements[i], elements[j]))];
            if (k < 0) throw Error(Errc::bad_input, "element set is not closed under products");
            table[i * n + j] = static_cast<std::uint16_t>(k);
        }
        if (progress && n > 1000 && i % (n / 10) == 0)
            *progress << "  rows " << i << "/" << n << "\n";
    }
    return ZornLoop{FiniteLoop::from_flat(static_cast<int>(n), std::move(table)),
                    std::move(elements)};
}

PaigeBundle build_m0(const FiniteField& f, const PaigeOptions& opts) {
    check_guard(f, 3, 5, opts.allow_large, "M0 table construction");
    if (opts.progress) *opts.progress << "enumerating norm-1 Zorn matrices over q = " << f.size() << "\n";
    ZornLoop zl = make_zorn_loop(f, enumerate_by_norm(f, f.one()), opts.progress);
    PaigeBundle out;
    out.field = &f;
    out.m0 = std::move(zl.loop);
    out.elements = std::move(zl.elements);
    return out;
}

PaigeBundle build_m(const FiniteField& f, const PaigeOptions& opts) {
    PaigeBundle b = build_m0(f, opts);
    ZornMatrix minus_one = zneg(ZornMatrix::identity(f));
    if (f.characteristic() == 2) {
        // -1 = 1: M = M0, identity projection.
        b.m = b.m0;
        LoopMap id;
        id.images.resize(b.m0.order());
        for (int i = 0; i < b.m0.order(); ++i) id.images[i] = i;
        b.projection = std::move(id);
        return b;
    }
    int minus_ix = -1;
    for (std::size_t i = 0; i < b.elements.size(); ++i)
        if (b.elements[i] == minus_one) {
            minus_ix = static_cast<int>(i);
            break;
        }
    if (minus_ix < 0) throw Error(Errc::center_mismatch, "-1 not found among norm-1 elements");
    SubloopRef z = center(b.m0);
    if (z.size() != 2 || !z.contains(minus_ix))
        throw Error(Errc::center_mismatch, "center of M0 is not {1,-1}");
    Quotient qt = quotient(b.m0, z);
    b.m = std::move(qt.loop);
    b.projection = std::move(qt.projection);
    return b;
}

ZornLoop build_unit_loop(const FiniteField& f, const PaigeOptions& opts) {
    check_guard(f, 2, 3, opts.allow_large, "unit loop table construction");
    if (opts.progress) *opts.progress << "enumerating units over q = " << f.size() << "\n";
    return make_zorn_loop(f, enumerate_units(f), opts.progress);
}

ClassificationReport classify_embeddability(unsigned p, unsigned n) {
    const FiniteField& f = FiniteField::get(p, n);
    ClassificationReport r;
    r.p = p;
    r.n = n;
    r.q = f.size();
    r.characteristic_two = p == 2;
    r.computed_closed_under_sqrt = f.closed_under_sqrt();
    r.parity_claim_closed = p != 2 && n % 2 == 0;
    r.claims_disagree = p != 2 && r.computed_closed_under_sqrt != r.parity_claim_closed;
    bool non_embeddable = p != 2 && r.computed_closed_under_sqrt;
    r.verdict = non_embeddable ? "claimed non-embeddable" : "embeddable";
    return r;
}

} // namespace mfl
