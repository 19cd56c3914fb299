#include "mfl/corpus.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace mfl {

namespace {

FiniteLoop cyclic(int n) {
    std::vector<std::uint16_t> t(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[std::size_t(i) * n + j] = static_cast<std::uint16_t>((i + j) % n);
    return FiniteLoop::from_flat(n, std::move(t));
}

// Permutations of {0,1,2} in one-line notation, identity first.
FiniteLoop sym3() {
    const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    auto index_of = [&](const std::array<int, 3>& p) {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<int>(i);
        throw std::logic_error("permutation lookup");
    };
    int n = 6;
    std::vector<std::uint16_t> t(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // composition: (pq)(x) = p(q(x))
            std::array<int, 3> pq{};
            for (int x = 0; x < 3; ++x) pq[x] = perms[i][perms[j][x]];
            t[std::size_t(i) * n + j] = static_cast<std::uint16_t>(index_of(pq));
        }
    return FiniteLoop::from_flat(n, std::move(t));
}

// Dihedral group of order 2n; element f*n+i stands for s^f r^i.
FiniteLoop dihedral(int n) {
    int order = 2 * n;
    std::vector<std::uint16_t> t(std::size_t(order) * order);
    auto id = [&](int f, int i) { return f * n + ((i % n) + n) % n; };
    for (int f1 = 0; f1 < 2; ++f1)
        for (int i1 = 0; i1 < n; ++i1)
            for (int f2 = 0; f2 < 2; ++f2)
                for (int i2 = 0; i2 < n; ++i2) {
                    // s^f1 r^i1 s^f2 r^i2 = s^(f1^f2) r^((-1)^f2 i1 + i2)
                    int f = f1 ^ f2;
                    int i = (f2 ? -i1 : i1) + i2;
                    t[std::size_t(id(f1, i1)) * order + id(f2, i2)] =
                        static_cast<std::uint16_t>(id(f, i));
                }
    return FiniteLoop::from_flat(order, std::move(t));
}

// Quaternion group {1,-1,i,-i,j,-j,k,-k}; index = 2*basis + sign.
FiniteLoop quaternion8() {
    // basis products with sign: b1*b2 -> (sign, basis) over basis order (1,i,j,k)
    const int bmul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    const int bsign[4][4] = {{+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
    // bsign[i][j]: sign of e_i * e_j with e = (1,i,j,k):
    //   i*i = -1, i*j = k, i*k = -j, j*i = -k, j*j = -1, j*k = i, k*i = j, k*j = -i, k*k = -1
    int n = 8;
    std::vector<std::uint16_t> t(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ba = a / 2, sa = a % 2, bb = b / 2, sb = b % 2;
            int basis = bmul[ba][bb];
            int sign = (bsign[ba][bb] < 0 ? 1 : 0) ^ sa ^ sb;
            t[std::size_t(a) * n + b] = static_cast<std::uint16_t>(2 * basis + sign);
        }
    return FiniteLoop::from_flat(n, std::move(t));
}

std::set<std::string> compute_tags(const FiniteLoop& q) {
    std::set<std::string> tags;
    bool assoc = is_associative(q, CheckPolicy::exhaustive());
    bool mouf = is_moufang(q, CheckPolicy::exhaustive());
    if (assoc) tags.insert("group");
    if (mouf) tags.insert("moufang");
    if (!assoc) tags.insert("nonassociative");
    for (int p : {2, 3, 5, 7}) {
        bool ploop = true;
        for (int g = 0; g < q.order() && ploop; ++g) {
            int k = element_order(q, g);
            while (k % p == 0) k /= p;
            ploop = k == 1;
        }
        if (ploop) tags.insert("p-loop:" + std::to_string(p));
    }
    if (is_simple(q)) tags.insert("simple");
    if (nilpotency_class(q).has_value()) tags.insert("nilpotent-expected");
    return tags;
}

} // namespace

FiniteLoop small_group(const std::string& name) {
    if (name.size() >= 2 && name[0] == 'Z' && name.find('x') == std::string::npos) {
        int n = 0;
        try {
            n = std::stoi(name.substr(1));
        } catch (...) {
            throw Error(Errc::unknown_name, name);
        }
        if (n < 1 || n > 4096) throw Error(Errc::unknown_name, name);
        return cyclic(n);
    }
    if (name == "S3") return sym3();
    if (name == "D4") return dihedral(4);
    if (name == "Q8") return quaternion8();
    if (name == "Z2xZ2") return direct_product(cyclic(2), cyclic(2));
    if (name == "D4xZ2") return direct_product(dihedral(4), cyclic(2));
    throw Error(Errc::unknown_name, name);
}

FiniteLoop direct_product(const FiniteLoop& a, const FiniteLoop& b) {
    int na = a.order(), nb = b.order(), n = na * nb;
    std::vector<std::uint16_t> t(std::size_t(n) * n);
    auto id = [&](int x, int y) { return x * nb + y; };
    for (int x1 = 0; x1 < na; ++x1)
        for (int y1 = 0; y1 < nb; ++y1)
            for (int x2 = 0; x2 < na; ++x2)
                for (int y2 = 0; y2 < nb; ++y2)
                    t[std::size_t(id(x1, y1)) * n + id(x2, y2)] =
                        static_cast<std::uint16_t>(id(a.mul(x1, x2), b.mul(y1, y2)));
    return FiniteLoop::from_flat(n, std::move(t));
}

FiniteLoop chein_double(const FiniteLoop& g) {
    if (!is_associative(g, CheckPolicy::exhaustive()))
        throw Error(Errc::not_associative, "Chein double needs a group");
    int m = g.order(), n = 2 * m;
    std::vector<std::uint16_t> t(std::size_t(n) * n);
    auto set = [&](int x, int y, int v) { t[std::size_t(x) * n + y] = static_cast<std::uint16_t>(v); };
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            set(x, y, g.mul(x, y));                       // g.h = gh
            set(x, m + y, m + g.mul(y, x));               // g.(hu) = (hg)u
            set(m + x, y, m + g.mul(x, g.inv(y)));        // (gu).h = (g h^-1)u
            set(m + x, m + y, g.mul(g.inv(y), x));        // (gu).(hu) = h^-1 g
        }
    FiniteLoop out = FiniteLoop::from_flat(n, std::move(t));
    if (!is_moufang(out, CheckPolicy::exhaustive()))
        throw std::logic_error("Chein double failed the Moufang law");
    bool abelian = is_commutative(g);
    if (abelian == !is_associative(out, CheckPolicy::exhaustive()))
        throw std::logic_error("Chein double associativity mismatch");
    return out;
}

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<std::pair<std::string, FiniteLoop>> raw;
        for (int n : {2, 3, 4, 5, 6, 8}) raw.emplace_back("Z" + std::to_string(n), small_group("Z" + std::to_string(n)));
        raw.emplace_back("Z2xZ2", small_group("Z2xZ2"));
        raw.emplace_back("S3", small_group("S3"));
        raw.emplace_back("D4", small_group("D4"));
        raw.emplace_back("Q8", small_group("Q8"));
        raw.emplace_back("D4xZ2", small_group("D4xZ2"));
        raw.emplace_back("chein-S3", chein_double(small_group("S3")));
        raw.emplace_back("chein-D4", chein_double(small_group("D4")));
        raw.emplace_back("chein-Q8", chein_double(small_group("Q8")));
        raw.emplace_back("chein-D4xZ2", chein_double(small_group("D4xZ2")));
        std::vector<CorpusEntry> out;
        out.reserve(raw.size());
        for (auto& [name, loop] : raw) {
            std::set<std::string> tags = compute_tags(loop);
            out.push_back(CorpusEntry{name, std::move(loop), std::move(tags)});
        }
        return out;
    }();
    return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
    for (const CorpusEntry& e : corpus())
        if (e.name == name) return e;
    throw Error(Errc::unknown_name, name);
}

} // namespace mfl
