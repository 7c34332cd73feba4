#include "unlearn/geometry.hpp"

#include <algorithm>
#include <cstdint>

namespace unlearn {

Rational parse_rational(const std::string& s) {
    Rational r;
    try {
        if (s.find('.') != std::string::npos) {
            // decimal literal: shift into an integer ratio
            auto dot = s.find('.');
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            mpz_class num(digits, 10);
            mpz_class den = 1;
            for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
            r = Rational(num, den);
        } else {
            r = Rational(s, 10);
        }
    } catch (const std::invalid_argument&) {
        throw InvalidInput("not a rational: '" + s + "'");
    }
    if (r.get_den() == 0) throw InvalidInput("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

namespace {

struct Row {
    std::vector<Rational> a;
    Rational c;  // a . z >= c
    std::vector<std::uint64_t> hist;
};

int hist_count(const std::vector<std::uint64_t>& h) {
    int n = 0;
    for (auto w : h) n += __builtin_popcountll(w);
    return n;
}

// Scale so the first nonzero coefficient has magnitude one.
void normalize(Row& r) {
    for (const auto& v : r.a) {
        if (v != 0) {
            Rational s = abs(v);
            for (auto& x : r.a) x /= s;
            r.c /= s;
            return;
        }
    }
}

bool all_zero(const Row& r) {
    return std::all_of(r.a.begin(), r.a.end(), [](const Rational& v) { return v == 0; });
}

Rational dot(const std::vector<Rational>& w, const RationalPoint& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
    return s;
}

}  // namespace

std::optional<Separator> strictly_separable(const std::vector<RationalPoint>& pos, const std::vector<RationalPoint>& neg,
                                            std::size_t cap) {
    std::size_t d = 0;
    if (!pos.empty()) d = pos.front().size();
    else if (!neg.empty()) d = neg.front().size();
    for (const auto& p : pos) if (p.size() != d) throw InvalidInput("points of mixed dimension");
    for (const auto& p : neg) if (p.size() != d) throw InvalidInput("points of mixed dimension");

    const std::size_t nv = d + 1;  // w_0..w_{d-1}, b
    const std::size_t words = (pos.size() + neg.size() + 63) / 64;
    std::vector<Row> rows;
    std::size_t origin = 0;
    auto add = [&](const RationalPoint& x, int sign) {
        Row r;
        r.a.resize(nv);
        for (std::size_t i = 0; i < d; ++i) r.a[i] = sign * x[i];
        r.a[d] = -sign;
        r.c = 1;
        r.hist.assign(words, 0);
        r.hist[origin / 64] |= (1ULL << (origin % 64));
        ++origin;
        rows.push_back(std::move(r));
    };
    for (const auto& p : pos) add(p, 1);
    for (const auto& q : neg) add(q, -1);

    // eliminate b first, then w from the back
    std::vector<std::size_t> order;
    for (std::size_t j = nv; j-- > 0;) order.push_back(j);

    std::vector<std::vector<Row>> levels;
    for (std::size_t t = 0; t < order.size(); ++t) {
        levels.push_back(rows);
        const std::size_t j = order[t];
        std::vector<const Row*> up, down;
        std::vector<Row> next;
        for (const auto& r : rows) {
            if (r.a[j] > 0) up.push_back(&r);
            else if (r.a[j] < 0) down.push_back(&r);
            else next.push_back(r);
        }
        const int max_hist = static_cast<int>(t) + 2;  // Chernikov: more origins means redundant
        for (const Row* p : up) {
            for (const Row* n : down) {
                Row r;
                r.hist.resize(words);
                for (std::size_t w = 0; w < words; ++w) r.hist[w] = p->hist[w] | n->hist[w];
                if (hist_count(r.hist) > max_hist) continue;
                const Rational fp = -n->a[j], fn = p->a[j];
                r.a.resize(nv);
                for (std::size_t i = 0; i < nv; ++i) r.a[i] = fp * p->a[i] + fn * n->a[i];
                r.a[j] = 0;
                r.c = fp * p->c + fn * n->c;
                next.push_back(std::move(r));
                if (next.size() > cap) throw CapExceeded("Fourier-Motzkin system exceeded the constraint cap");
            }
        }
        rows.clear();
        // duplicates keep the smaller history so the pruning rule stays sharp
        std::map<std::pair<std::vector<Rational>, Rational>, std::size_t> seen;
        for (auto& r : next) {
            normalize(r);
            if (all_zero(r)) {
                if (r.c > 0) return std::nullopt;
                continue;
            }
            auto key = std::make_pair(r.a, r.c);
            auto [it, fresh] = seen.emplace(key, rows.size());
            if (fresh) {
                rows.push_back(std::move(r));
            } else if (hist_count(r.hist) < hist_count(rows[it->second].hist)) {
                rows[it->second] = std::move(r);
            }
        }
    }

    // back-substitute in reverse elimination order
    std::vector<Rational> z(nv, 0);
    for (std::size_t t = order.size(); t-- > 0;) {
        const std::size_t j = order[t];
        std::optional<Rational> lo, hi;
        for (const auto& r : levels[t]) {
            if (r.a[j] == 0) continue;
            Rational rest = 0;
            for (std::size_t i = 0; i < nv; ++i) {
                if (i != j) rest += r.a[i] * z[i];
            }
            Rational bound = (r.c - rest) / r.a[j];
            if (r.a[j] > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else {
                if (!hi || bound < *hi) hi = bound;
            }
        }
        if (lo) z[j] = *lo;
        else if (hi) z[j] = *hi;
        else z[j] = 0;
    }
    Separator s;
    s.w.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(d));
    s.b = z[d];
    if (!separates(s, pos, neg)) throw Error("internal: Fourier-Motzkin witness does not separate");
    return s;
}

bool separates(const Separator& s, const std::vector<RationalPoint>& pos, const std::vector<RationalPoint>& neg) {
    for (const auto& p : pos) {
        if (p.size() != s.w.size() || !(dot(s.w, p) > s.b)) return false;
    }
    for (const auto& q : neg) {
        if (q.size() != s.w.size() || !(dot(s.w, q) < s.b)) return false;
    }
    return true;
}

Rational margin(const Separator& s, const std::vector<RationalPoint>& pos, const std::vector<RationalPoint>& neg, Norm norm) {
    if (!separates(s, pos, neg)) throw InvalidInput("separator does not strictly separate the points");
    std::optional<Rational> best;
    for (const auto& p : pos) {
        Rational v = dot(s.w, p) - s.b;
        if (!best || v < *best) best = v;
    }
    for (const auto& q : neg) {
        Rational v = s.b - dot(s.w, q);
        if (!best || v < *best) best = v;
    }
    if (!best) throw InvalidInput("margin of an empty point set");
    Rational scale = 0;
    switch (norm) {
        case Norm::l1:
            for (const auto& v : s.w) scale += abs(v);
            break;
        case Norm::linf:
            for (const auto& v : s.w) scale = std::max(scale, Rational(abs(v)));
            break;
        case Norm::l2: {
            Rational sq = 0;
            for (const auto& v : s.w) sq += v * v;
            mpz_class num = sq.get_num(), den = sq.get_den();
            mpz_class rn = sqrt(num), rd = sqrt(den);
            if (rn * rn != num || rd * rd != den) throw InvalidInput("l2 norm of w is irrational");
            scale = Rational(rn, rd);
            break;
        }
    }
    if (scale == 0) throw InvalidInput("zero normal vector");
    return *best / scale;
}

std::vector<std::vector<int>> k_subsets(int d, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < d; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<RationalPoint> simplex_face_domain(int d, int k) {
    if (d < 2 || k < 1 || k > d - 1) throw InvalidInput("face domain needs 1 <= k <= d-1");
    std::vector<RationalPoint> pts;
    for (int i = 0; i < d; ++i) {
        RationalPoint e(static_cast<std::size_t>(d), Rational(0));
        e[static_cast<std::size_t>(i)] = 1;
        pts.push_back(e);
    }
    for (const auto& L : k_subsets(d, k)) {
        RationalPoint c(static_cast<std::size_t>(d), Rational(1, d - k));
        for (int i : L) c[static_cast<std::size_t>(i)] = 0;
        pts.push_back(c);
    }
    return pts;
}

Dataset halfspace_family_dataset(int d, int k, const std::vector<std::vector<int>>& family) {
    auto subsets = k_subsets(d, k);
    if (faces_degenerate(d, k) && !family.empty()) {
        throw PreconditionViolation("k = d-1 puts every face centroid on a vertex");
    }
    std::vector<LabeledPair> items;
    for (int i = 0; i < d; ++i) items.push_back({i, 1});
    for (const auto& L : family) {
        auto it = std::find(subsets.begin(), subsets.end(), L);
        if (it == subsets.end()) throw InvalidInput("family member is not a sorted k-subset");
        items.push_back({d + static_cast<int>(it - subsets.begin()), 0});
    }
    return Dataset(items);
}

Separator family_separator(int d, int k, const std::vector<int>& L) {
    Separator s;
    s.w.assign(static_cast<std::size_t>(d), Rational(1));
    for (int i : L) s.w[static_cast<std::size_t>(i)] = 0;
    s.b = 1 - Rational(1, 2 * (d - k));
    return s;
}

HalfspaceOracle::HalfspaceOracle(int dim, std::vector<RationalPoint> domain, std::size_t cap)
    : dim_(dim), domain_(std::move(domain)), cap_(cap) {
    if (dim_ < 1) throw InvalidInput("dimension must be positive");
    if (domain_.empty()) throw InvalidInput("empty domain");
    for (const auto& p : domain_) {
        if (static_cast<int>(p.size()) != dim_) throw InvalidInput("domain point has wrong dimension");
    }
}

bool HalfspaceOracle::realizable(const std::vector<LabeledPair>& pairs) const {
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = cache_.find(pairs);
        if (it != cache_.end()) return it->second;
    }
    std::vector<RationalPoint> pos, neg;
    for (const auto& z : pairs) (z.y ? pos : neg).push_back(domain_.at(static_cast<std::size_t>(z.x)));
    bool ok = strictly_separable(pos, neg, cap_).has_value();
    std::lock_guard<std::mutex> g(mu_);
    cache_.emplace(pairs, ok);
    return ok;
}

std::string HalfspaceOracle::describe() const {
    return "halfspace(d=" + std::to_string(dim_) + ",m=" + std::to_string(domain_.size()) + ")";
}

}  // namespace unlearn
