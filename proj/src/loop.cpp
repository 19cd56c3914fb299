#include "mfl/loop.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace mfl {

namespace {

constexpr int kMaxOrder = 65535;

// Deterministic triple sampling shared by the sampled predicate paths.
template <typename F>
bool for_sampled_triples(int n, const CheckPolicy& policy, F&& body) {
    std::mt19937_64 rng(policy.seed);
    for (std::size_t i = 0; i < policy.samples; ++i) {
        int x = static_cast<int>(rng() % n);
        int y = static_cast<int>(rng() % n);
        int z = static_cast<int>(rng() % n);
        if (!body(x, y, z)) return false;
    }
    return true;
}

bool use_exhaustive(int n, const CheckPolicy& policy) {
    switch (policy.mode) {
        case CheckPolicy::Mode::exhaustive: return true;
        case CheckPolicy::Mode::sampled: return false;
        case CheckPolicy::Mode::automatic: return n <= policy.exhaustive_cutoff;
    }
    return true;
}

} // namespace

void FiniteLoop::build_aux() {
    std::size_t n = order_;
    ldiv_.assign(n * n, 0);
    rdiv_.assign(n * n, 0);
    linv_.assign(n, 0);
    rinv_.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::uint16_t b = table_[x * n + y];
            ldiv_[x * n + b] = static_cast<std::uint16_t>(y);
            rdiv_[std::size_t(b) * n + y] = static_cast<std::uint16_t>(x);
            if (b == 0) {
                rinv_[x] = static_cast<std::uint16_t>(y);
                linv_[y] = static_cast<std::uint16_t>(x);
            }
        }
}

FiniteLoop FiniteLoop::from_flat(int order, std::vector<std::uint16_t> table) {
    if (order < 1 || order > kMaxOrder)
        throw Error(Errc::too_large, "loop order must be in [1, 65535]");
    std::size_t n = order;
    if (table.size() != n * n) throw Error(Errc::bad_input, "table size is not order^2");

    std::vector<char> seen(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t c = 0; c < n; ++c) {
            std::uint16_t v = table[r * n + c];
            if (v >= n) throw Error(Errc::bad_input, "entry out of range in row " + std::to_string(r));
            if (seen[v]) throw Error(Errc::not_latin, "row " + std::to_string(r) + " repeats " + std::to_string(v));
            seen[v] = 1;
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t r = 0; r < n; ++r) {
            std::uint16_t v = table[r * n + c];
            if (seen[v]) throw Error(Errc::not_latin, "column " + std::to_string(c) + " repeats " + std::to_string(v));
            seen[v] = 1;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (table[0 * n + i] != i || table[i * n + 0] != i)
            throw Error(Errc::no_identity, "index 0 is not a two-sided identity");
    }

    FiniteLoop q;
    q.order_ = order;
    q.table_ = std::move(table);
    q.build_aux();
    return q;
}

FiniteLoop FiniteLoop::from_rows(const std::vector<std::vector<int>>& rows) {
    std::size_t n = rows.size();
    if (n == 0) throw Error(Errc::bad_input, "empty table");
    std::vector<std::uint16_t> flat;
    flat.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) throw Error(Errc::bad_input, "table is not square");
        for (int v : row) {
            if (v < 0 || v >= static_cast<int>(n))
                throw Error(Errc::bad_input, "entry out of range");
            flat.push_back(static_cast<std::uint16_t>(v));
        }
    }
    return from_flat(static_cast<int>(n), std::move(flat));
}

bool is_associative(const FiniteLoop& q, CheckPolicy policy) {
    int n = q.order();
    auto ok = [&](int x, int y, int z) { return q.mul(q.mul(x, y), z) == q.mul(x, q.mul(y, z)); };
    if (use_exhaustive(n, policy)) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (!ok(x, y, z)) return false;
        return true;
    }
    return for_sampled_triples(n, policy, ok);
}

bool is_moufang(const FiniteLoop& q, CheckPolicy policy) {
    int n = q.order();
    // (xy.x)z = x(y.xz)
    auto ok = [&](int x, int y, int z) {
        return q.mul(q.mul(q.mul(x, y), x), z) == q.mul(x, q.mul(y, q.mul(x, z)));
    };
    if (use_exhaustive(n, policy)) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (!ok(x, y, z)) return false;
        return true;
    }
    return for_sampled_triples(n, policy, ok);
}

bool is_ip_loop(const FiniteLoop& q) {
    int n = q.order();
    for (int x = 0; x < n; ++x) {
        int lx = q.left_inv(x), rx = q.right_inv(x);
        for (int y = 0; y < n; ++y) {
            if (q.mul(lx, q.mul(x, y)) != y) return false;
            if (q.mul(q.mul(y, x), rx) != y) return false;
        }
    }
    return true;
}

bool is_commutative(const FiniteLoop& q) {
    int n = q.order();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (q.mul(x, y) != q.mul(y, x)) return false;
    return true;
}

std::vector<int> inner_t(const FiniteLoop& q, int a) {
    std::vector<int> p(q.order());
    for (int x = 0; x < q.order(); ++x) p[x] = q.t_map(a, x);
    return p;
}

std::vector<int> inner_r(const FiniteLoop& q, int a, int b) {
    std::vector<int> p(q.order());
    for (int x = 0; x < q.order(); ++x) p[x] = q.r_map(a, b, x);
    return p;
}

std::vector<int> inner_l(const FiniteLoop& q, int a, int b) {
    std::vector<int> p(q.order());
    for (int x = 0; x < q.order(); ++x) p[x] = q.l_map(a, b, x);
    return p;
}

int assoc_alpha(const FiniteLoop& q, int a, int b, int c) {
    return q.ldiv(a, q.rdiv(q.mul(q.mul(a, b), c), q.mul(b, c)));
}

int assoc_beta(const FiniteLoop& q, int a, int b, int c) {
    return q.rdiv(q.ldiv(q.mul(c, b), q.mul(c, q.mul(b, a))), a);
}

int commutator(const FiniteLoop& q, int a, int b) {
    return q.ldiv(a, q.ldiv(b, q.mul(a, b)));
}

int bracket_assoc(const FiniteLoop& q, int a, int b, int c) {
    return q.ldiv(q.mul(a, q.mul(b, c)), q.mul(q.mul(a, b), c));
}

int bracket_comm(const FiniteLoop& q, int a, int b) {
    return q.ldiv(q.mul(b, a), q.mul(a, b));
}

SubloopRef::SubloopRef(const FiniteLoop& parent, std::vector<int> members)
    : parent_(&parent), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    mask_.assign(parent.order(), 0);
    for (int m : members_) {
        if (m < 0 || m >= parent.order())
            throw Error(Errc::not_a_subloop, "member index out of range");
        mask_[m] = 1;
    }
    if (members_.empty() || members_[0] != 0)
        throw Error(Errc::not_a_subloop, "identity missing");
    for (int a : members_) {
        if (!mask_[parent.left_inv(a)] || !mask_[parent.right_inv(a)])
            throw Error(Errc::not_a_subloop, "not closed under inverses");
        for (int b : members_)
            if (!mask_[parent.mul(a, b)])
                throw Error(Errc::not_a_subloop, "not closed under products");
    }
}

bool SubloopRef::subset_of(const SubloopRef& o) const {
    if (parent_ != o.parent_) return false;
    for (int m : members_)
        if (!o.contains(m)) return false;
    return true;
}

SubloopRef trivial_subloop(const FiniteLoop& q) { return SubloopRef(q, {0}); }

SubloopRef whole_loop(const FiniteLoop& q) {
    std::vector<int> all(q.order());
    for (int i = 0; i < q.order(); ++i) all[i] = i;
    return SubloopRef(q, std::move(all));
}

namespace {

struct GrowSet {
    std::vector<char> mask;
    std::vector<int> members;
    std::deque<int> queue;

    explicit GrowSet(int n) : mask(n, 0) {}
    bool add(int x) {
        if (mask[x]) return false;
        mask[x] = 1;
        members.push_back(x);
        queue.push_back(x);
        return true;
    }
};

// Least subset containing seeds and 0, closed under products and inverses.
void subloop_close(const FiniteLoop& q, GrowSet& s) {
    while (!s.queue.empty()) {
        int x = s.queue.front();
        s.queue.pop_front();
        s.add(q.left_inv(x));
        s.add(q.right_inv(x));
        for (std::size_t i = 0; i < s.members.size(); ++i) {
            int y = s.members[i];
            s.add(q.mul(x, y));
            s.add(q.mul(y, x));
        }
    }
}

} // namespace

SubloopRef subloop_generated(const FiniteLoop& q, const std::vector<int>& seeds) {
    GrowSet s(q.order());
    s.add(0);
    for (int g : seeds) {
        if (g < 0 || g >= q.order()) throw Error(Errc::bad_input, "seed index out of range");
        s.add(g);
    }
    subloop_close(q, s);
    std::sort(s.members.begin(), s.members.end());
    return SubloopRef(q, std::move(s.members));
}

SubloopRef normal_closure(const FiniteLoop& q, const std::vector<int>& seeds) {
    int n = q.order();
    GrowSet s(n);
    s.add(0);
    for (int g : seeds) {
        if (g < 0 || g >= n) throw Error(Errc::bad_input, "seed index out of range");
        s.add(g);
    }
    // Single worklist covering both subloop operations and the inner-mapping
    // orbit; the fixpoint is the least subloop stable under all of them.
    // Once every element is in, the closure is the whole loop and the orbit
    // sweeps can stop.
    while (!s.queue.empty() && s.members.size() < std::size_t(n)) {
        int h = s.queue.front();
        s.queue.pop_front();
        s.add(q.left_inv(h));
        s.add(q.right_inv(h));
        for (std::size_t i = 0; i < s.members.size(); ++i) {
            int y = s.members[i];
            s.add(q.mul(h, y));
            s.add(q.mul(y, h));
        }
        for (int x = 0; x < n; ++x) s.add(q.t_map(x, h));
        for (int x = 0; x < n && s.members.size() < std::size_t(n); ++x)
            for (int y = 0; y < n; ++y) {
                s.add(q.r_map(x, y, h));
                s.add(q.l_map(x, y, h));
            }
    }
    std::sort(s.members.begin(), s.members.end());
    return SubloopRef(q, std::move(s.members));
}

namespace {

struct CosetData {
    bool normal = false;
    std::vector<int> bid;  // block id per element; identity block is 0
    std::vector<int> reps; // ascending representatives, one per block
};

CosetData coset_partition(const FiniteLoop& q, const SubloopRef& h) {
    if (&h.parent() != &q) throw Error(Errc::mismatch, "subloop belongs to another loop");
    CosetData d;
    int n = q.order();
    int m = static_cast<int>(h.size());
    if (n % m != 0) return d;
    d.bid.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        if (d.bid[x] >= 0) continue;
        int b = static_cast<int>(d.reps.size());
        d.reps.push_back(x);
        for (int t : h.members()) {
            int z = q.mul(x, t);
            if (d.bid[z] >= 0) return d; // overlapping left cosets
            d.bid[z] = b;
        }
    }
    // zH and Hz agree with the block of z, for every z.
    for (int z = 0; z < n; ++z)
        for (int t : h.members()) {
            if (d.bid[q.mul(z, t)] != d.bid[z]) return d;
            if (d.bid[q.mul(t, z)] != d.bid[z]) return d;
        }
    // x.yH = xy.H and Hx.y = H.xy, via block representatives.
    for (int x = 0; x < n; ++x)
        for (int w = 0; w < n; ++w)
            if (d.bid[q.mul(x, w)] != d.bid[q.mul(x, d.reps[d.bid[w]])]) return d;
    for (int w = 0; w < n; ++w) {
        int r = d.reps[d.bid[w]];
        for (int y = 0; y < n; ++y)
            if (d.bid[q.mul(w, y)] != d.bid[q.mul(r, y)]) return d;
    }
    d.normal = true;
    return d;
}

} // namespace

bool is_normal(const FiniteLoop& q, const SubloopRef& h) { return coset_partition(q, h).normal; }

bool is_normal_inner(const FiniteLoop& q, const SubloopRef& h) {
    if (&h.parent() != &q) throw Error(Errc::mismatch, "subloop belongs to another loop");
    int n = q.order();
    for (int t : h.members()) {
        for (int x = 0; x < n; ++x)
            if (!h.contains(q.t_map(x, t))) return false;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (!h.contains(q.r_map(x, y, t))) return false;
                if (!h.contains(q.l_map(x, y, t))) return false;
            }
    }
    return true;
}

SubloopRef center(const FiniteLoop& q) {
    int n = q.order();
    std::vector<int> out;
    for (int x = 0; x < n; ++x) {
        bool commutes = true;
        for (int y = 0; y < n && commutes; ++y) commutes = q.mul(x, y) == q.mul(y, x);
        if (!commutes) continue;
        bool associates = true;
        for (int y = 0; y < n && associates; ++y)
            for (int z = 0; z < n && associates; ++z) {
                if (q.mul(x, q.mul(y, z)) != q.mul(q.mul(x, y), z)) associates = false;
                else if (q.mul(q.mul(z, y), x) != q.mul(z, q.mul(y, x))) associates = false;
            }
        if (associates) out.push_back(x);
    }
    return SubloopRef(q, std::move(out));
}

bool is_homomorphism(const FiniteLoop& src, const FiniteLoop& tgt, const LoopMap& map) {
    if (map.images.size() != std::size_t(src.order())) return false;
    for (int v : map.images)
        if (v < 0 || v >= tgt.order()) return false;
    if (map.images[0] != 0) return false;
    for (int x = 0; x < src.order(); ++x)
        for (int y = 0; y < src.order(); ++y)
            if (map.images[src.mul(x, y)] != tgt.mul(map.images[x], map.images[y])) return false;
    return true;
}

Quotient quotient(const FiniteLoop& q, const SubloopRef& h) {
    CosetData d = coset_partition(q, h);
    if (!d.normal) throw Error(Errc::not_normal, "subloop is not normal");
    int m = static_cast<int>(d.reps.size());
    std::vector<std::uint16_t> table(std::size_t(m) * m);
    for (int b1 = 0; b1 < m; ++b1)
        for (int b2 = 0; b2 < m; ++b2)
            table[std::size_t(b1) * m + b2] =
                static_cast<std::uint16_t>(d.bid[q.mul(d.reps[b1], d.reps[b2])]);
    Quotient out{FiniteLoop::from_flat(m, std::move(table)), LoopMap{std::move(d.bid)}};
    return out;
}

int element_order(const FiniteLoop& q, int g) {
    if (g < 0 || g >= q.order()) throw Error(Errc::bad_input, "element index out of range");
    int x = g, k = 1;
    while (x != 0) {
        x = q.mul(x, g); // left-normed powers; meaningful for power-associative inputs
        ++k;
    }
    return k;
}

bool is_simple(const FiniteLoop& q) {
    if (q.order() == 1) return false;
    for (int g = 1; g < q.order(); ++g)
        if (normal_closure(q, {g}).size() != std::size_t(q.order())) return false;
    return true;
}

bool is_simple_sampled(const FiniteLoop& q, std::size_t count, std::uint64_t seed) {
    if (q.order() == 1) return false;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        int g = 1 + static_cast<int>(rng() % (q.order() - 1));
        if (normal_closure(q, {g}).size() != std::size_t(q.order())) return false;
    }
    return true;
}

SeriesReport upper_central_series(const FiniteLoop& q) {
    SeriesReport rep;
    rep.kind = SeriesKind::upper;
    SubloopRef z = trivial_subloop(q);
    rep.chain.push_back(z);
    if (z.is_whole()) {
        rep.cls = 0;
        return rep;
    }
    while (true) {
        Quotient qt = quotient(q, z);
        SubloopRef zq = center(qt.loop);
        std::vector<int> lifted;
        for (int x = 0; x < q.order(); ++x)
            if (zq.contains(qt.projection.images[x])) lifted.push_back(x);
        SubloopRef next(q, std::move(lifted));
        if (next.size() == z.size()) break; // stalled strictly below Q
        rep.chain.push_back(next);
        z = rep.chain.back();
        if (z.is_whole()) {
            rep.cls = static_cast<int>(rep.chain.size()) - 1;
            break;
        }
    }
    return rep;
}

SeriesReport lower_central_series(const FiniteLoop& q, LcsMode mode, CheckPolicy policy) {
    if (mode == LcsMode::moufang && !is_moufang(q, policy))
        throw Error(Errc::not_moufang, "moufang-mode series requires a Moufang loop");

    SeriesReport rep;
    rep.kind = SeriesKind::lower;
    rep.chain.push_back(whole_loop(q));
    if (q.order() == 1) {
        rep.cls = 0;
        return rep;
    }
    int n = q.order();
    while (static_cast<int>(rep.chain.size()) <= n + 1) {
        const SubloopRef& cur = rep.chain.back();
        std::vector<char> gen(n, 0);
        for (int m : cur.members()) {
            for (int x = 0; x < n; ++x) {
                gen[mode == LcsMode::general ? commutator(q, m, x) : bracket_comm(q, m, x)] = 1;
                for (int y = 0; y < n; ++y) {
                    if (mode == LcsMode::general) {
                        gen[assoc_alpha(q, m, x, y)] = 1;
                        gen[assoc_beta(q, m, x, y)] = 1;
                    } else {
                        gen[bracket_assoc(q, m, x, y)] = 1;
                    }
                }
            }
        }
        std::vector<int> seeds;
        for (int i = 0; i < n; ++i)
            if (gen[i]) seeds.push_back(i);
        SubloopRef next = normal_closure(q, seeds);
        if (next == cur) break; // stalled strictly above {1}
        rep.chain.push_back(next);
        if (rep.chain.back().size() == 1) {
            rep.cls = static_cast<int>(rep.chain.size()) - 1;
            break;
        }
    }
    return rep;
}

std::optional<int> nilpotency_class(const FiniteLoop& q) {
    SeriesReport up = upper_central_series(q);
    SeriesReport low = lower_central_series(q, LcsMode::general);
    if (up.cls.has_value() != low.cls.has_value())
        throw std::logic_error("central series disagree on termination");
    if (up.cls && *up.cls != *low.cls)
        throw std::logic_error("central series lengths differ");
    return up.cls;
}

bool is_central_series(const FiniteLoop& q, const std::vector<SubloopRef>& chain) {
    if (chain.empty()) return false;
    if (!chain.front().is_whole() || chain.back().size() != 1) return false;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!chain[i + 1].subset_of(chain[i])) return false;
    for (const SubloopRef& c : chain)
        if (!is_normal(q, c)) return false;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        Quotient qt = quotient(q, chain[i + 1]);
        SubloopRef zq = center(qt.loop);
        for (int g : chain[i].members())
            if (!zq.contains(qt.projection.images[g])) return false;
    }
    return true;
}

std::string series_to_json(const SeriesReport& report) {
    nlohmann::ordered_json j;
    switch (report.kind) {
        case SeriesKind::upper: j["kind"] = "upper"; break;
        case SeriesKind::lower: j["kind"] = "lower"; break;
        case SeriesKind::custom: j["kind"] = "custom"; break;
    }
    if (report.cls)
        j["class"] = *report.cls;
    else
        j["class"] = nullptr;
    j["terms"] = nlohmann::ordered_json::array();
    for (const SubloopRef& s : report.chain) j["terms"].push_back(s.members());
    return j.dump();
}

FiniteLoop read_table(std::istream& in) {
    std::string word;
    if (!(in >> word) || word != "order") throw Error(Errc::bad_input, "expected 'order n' header");
    long long n = 0;
    if (!(in >> n) || n < 1 || n > kMaxOrder) throw Error(Errc::bad_input, "bad order");
    std::vector<std::uint16_t> flat;
    flat.reserve(std::size_t(n) * n);
    for (long long i = 0; i < n * n; ++i) {
        long long v;
        if (!(in >> v)) throw Error(Errc::bad_input, "truncated table");
        if (v < 0 || v >= n) throw Error(Errc::bad_input, "entry out of range");
        flat.push_back(static_cast<std::uint16_t>(v));
    }
    return FiniteLoop::from_flat(static_cast<int>(n), std::move(flat));
}

void write_table(std::ostream& out, const FiniteLoop& q) {
    out << "order " << q.order() << "\n";
    for (int x = 0; x < q.order(); ++x) {
        for (int y = 0; y < q.order(); ++y) {
            if (y) out << ' ';
            out << q.mul(x, y);
        }
        out << "\n";
    }
}

} // namespace mfl
