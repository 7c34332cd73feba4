#include "unlearn/dimensions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace unlearn {

namespace {

struct Stop {};

std::vector<LabeledPair> with(std::vector<LabeledPair> s, LabeledPair z) {
    s.push_back(z);
    return s;
}

bool all_flips_realizable(const ClassHandle& cls, std::vector<LabeledPair>& s) {
    for (auto& z : s) {
        z = flip(z);
        bool ok = cls.realizable(s);
        z = flip(z);
        if (!ok) return false;
    }
    return true;
}

// Walks star sets in increasing point order. `on_extension` sees every
// one-point extension S = T + (x, y) together with its classification.
void walk_star_sets(const ClassHandle& cls, std::vector<LabeledPair>& t, int max_size,
                    const std::function<void(std::vector<LabeledPair>&, bool realizable, bool flips)>& on_ext) {
    if (static_cast<int>(t.size()) >= max_size) return;
    const int m = cls.domain_size();
    const int start = t.empty() ? 0 : t.back().x + 1;
    for (int x = start; x < m; ++x) {
        for (int y = 0; y <= 1; ++y) {
            t.push_back({x, y});
            const bool real = cls.realizable(t);
            const bool flips = all_flips_realizable(cls, t);
            on_ext(t, real, flips);
            if (real && flips) walk_star_sets(cls, t, max_size, on_ext);
            t.pop_back();
        }
    }
}

}  // namespace

std::vector<Point> points_of(const std::vector<LabeledPair>& w) {
    std::vector<Point> p;
    for (const auto& z : w) p.push_back(z.x);
    return p;
}

bool is_shattered(const ClassHandle& cls, const std::vector<Point>& pts) {
    const std::size_t k = pts.size();
    if (k >= 30) return false;
    std::vector<LabeledPair> s(k);
    for (std::uint64_t lab = 0; lab < (1ULL << k); ++lab) {
        for (std::size_t i = 0; i < k; ++i) s[i] = {pts[i], static_cast<int>((lab >> i) & 1U)};
        if (!cls.realizable(s)) return false;
    }
    return true;
}

bool is_star_set(const ClassHandle& cls, const std::vector<LabeledPair>& s) {
    auto v = s;
    auto pts = points_of(v);
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) return false;
    return cls.realizable(v) && all_flips_realizable(cls, v);
}

bool is_hollow_star_set(const ClassHandle& cls, const std::vector<LabeledPair>& s) {
    auto v = s;
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
    if (v.empty()) return false;
    return !cls.realizable(v) && all_flips_realizable(cls, v);
}

bool is_eluder_sequence(const ClassHandle& cls, const std::vector<LabeledPair>& seq) {
    std::vector<LabeledPair> prefix;
    for (const auto& z : seq) {
        if (!cls.realizable(with(prefix, {z.x, 0})) || !cls.realizable(with(prefix, {z.x, 1}))) return false;
        prefix.push_back(z);
    }
    return true;
}

bool is_injective_set(const FiniteClass& cls, const std::vector<Point>& pts) {
    std::uint64_t mask = 0;
    for (Point x : pts) mask |= (1ULL << x);
    std::vector<std::uint64_t> proj;
    for (auto r : cls.rows()) proj.push_back(r & mask);
    std::sort(proj.begin(), proj.end());
    return std::adjacent_find(proj.begin(), proj.end()) == proj.end();
}

bool is_mistake_tree(const ClassHandle& cls, const std::vector<Point>& tree, int depth) {
    if (static_cast<std::size_t>((1ULL << depth) - 1) != tree.size()) return false;
    // every root-to-leaf labeling must be realizable
    for (std::uint64_t path = 0; path < (1ULL << depth); ++path) {
        std::vector<LabeledPair> s;
        std::size_t node = 0;
        for (int level = 0; level < depth; ++level) {
            int y = static_cast<int>((path >> level) & 1U);
            s.push_back({tree[node], y});
            node = 2 * node + 1 + static_cast<std::size_t>(y);
        }
        if (!cls.realizable(s)) return false;
    }
    return true;
}

DimValue vc_dimension(const ClassHandle& cls, int cap) {
    DimValue best;
    std::vector<Point> cur;
    const int m = cls.domain_size();
    std::function<void(int)> dfs = [&](int start) {
        for (int x = start; x < m; ++x) {
            cur.push_back(x);
            if (is_shattered(cls, cur)) {
                if (static_cast<int>(cur.size()) > best.value) {
                    best.value = static_cast<int>(cur.size());
                    best.witness.clear();
                    for (Point p : cur) best.witness.push_back({p, 0});
                }
                if (static_cast<int>(cur.size()) > cap) throw Stop{};
                dfs(x + 1);
            }
            cur.pop_back();
        }
    };
    try {
        dfs(0);
    } catch (const Stop&) {
        best.cap_exceeded = true;
    }
    return best;
}

DimValue star_number(const ClassHandle& cls, int cap) {
    DimValue best;
    std::vector<LabeledPair> t;
    try {
        walk_star_sets(cls, t, cap + 1, [&](std::vector<LabeledPair>& s, bool real, bool flips) {
            if (!(real && flips)) return;
            if (static_cast<int>(s.size()) > best.value) {
                best.value = static_cast<int>(s.size());
                best.witness = s;
            }
            if (best.value > cap) throw Stop{};
        });
    } catch (const Stop&) {
        best.cap_exceeded = true;
    }
    return best;
}

DimValue hollow_star_number(const ClassHandle& cls, int cap) {
    DimValue best;
    // A point carrying both labels is a hollow star set on its own.
    if (cap >= 2) {
        for (int x = 0; x < cls.domain_size(); ++x) {
            std::vector<LabeledPair> s{{x, 0}, {x, 1}};
            if (is_hollow_star_set(cls, s)) {
                best.value = 2;
                best.witness = s;
                break;
            }
        }
    }
    // Otherwise every proper subset of a hollow star set is a star set, so
    // extending star sets by one point reaches all of them.
    std::vector<LabeledPair> t;
    try {
        walk_star_sets(cls, t, cap + 1, [&](std::vector<LabeledPair>& s, bool real, bool flips) {
            if (real || !flips) return;
            if (static_cast<int>(s.size()) > best.value) {
                best.value = static_cast<int>(s.size());
                best.witness = s;
            }
            if (best.value > cap) throw Stop{};
        });
    } catch (const Stop&) {
        best.cap_exceeded = true;
    }
    return best;
}

DimValue eluder_dimension(const ClassHandle& cls, int cap) {
    const int m = cls.domain_size();
    // longest continuation from a prefix depends only on its constraint set
    std::map<std::vector<LabeledPair>, std::pair<int, LabeledPair>> memo;
    std::function<int(const std::vector<LabeledPair>&)> longest = [&](const std::vector<LabeledPair>& p) -> int {
        auto it = memo.find(p);
        if (it != memo.end()) return it->second.first;
        int best = 0;
        LabeledPair choice{-1, 0};
        for (int x = 0; x < m; ++x) {
            if (!cls.realizable(with(p, {x, 0})) || !cls.realizable(with(p, {x, 1}))) continue;
            if (static_cast<int>(p.size()) + 1 > cap) throw Stop{};
            for (int y = 1; y >= 0; --y) {
                auto next = with(p, {x, y});
                std::sort(next.begin(), next.end());
                int len = 1 + longest(next);
                if (len > best) {
                    best = len;
                    choice = {x, y};
                }
            }
        }
        memo[p] = {best, choice};
        return best;
    };
    DimValue out;
    try {
        out.value = longest({});
    } catch (const Stop&) {
        out.value = cap + 1;
        out.cap_exceeded = true;
        return out;
    }
    std::vector<LabeledPair> p;
    while (true) {
        auto [len, z] = memo.at(p);
        if (len == 0) break;
        out.witness.push_back(z);
        p.push_back(z);
        std::sort(p.begin(), p.end());
    }
    return out;
}

DimValue littlestone_dimension(const FiniteClass& cls) {
    const int m = cls.domain_size();
    std::unordered_map<HypMask, int> memo;
    auto split = [&](HypMask v, int x, int y) {
        HypMask out = 0;
        for (int h : members(v)) {
            if (cls.label(h, x) == y) out |= (1ULL << h);
        }
        return out;
    };
    std::function<int(HypMask)> ldim = [&](HypMask v) -> int {
        auto it = memo.find(v);
        if (it != memo.end()) return it->second;
        int best = 0;
        for (int x = 0; x < m; ++x) {
            HypMask v0 = split(v, x, 0), v1 = split(v, x, 1);
            if (!v0 || !v1) continue;
            best = std::max(best, 1 + std::min(ldim(v0), ldim(v1)));
        }
        memo[v] = best;
        return best;
    };
    DimValue out;
    out.value = ldim(cls.all());
    out.tree.assign((1ULL << out.value) - 1, -1);
    std::function<void(HypMask, int, std::size_t)> build = [&](HypMask v, int depth, std::size_t node) {
        if (depth == 0) return;
        for (int x = 0; x < m; ++x) {
            HypMask v0 = split(v, x, 0), v1 = split(v, x, 1);
            if (!v0 || !v1) continue;
            if (ldim(v0) >= depth - 1 && ldim(v1) >= depth - 1) {
                out.tree[node] = x;
                build(v0, depth - 1, 2 * node + 1);
                build(v1, depth - 1, 2 * node + 2);
                return;
            }
        }
    };
    build(cls.all(), out.value, 0);
    return out;
}

DimValue mis_size(const FiniteClass& cls) {
    const int m = cls.domain_size();
    DimValue out;
    std::vector<Point> cur;
    std::function<bool(int, int)> choose = [&](int start, int k) -> bool {
        if (k == 0) return is_injective_set(cls, cur);
        for (int x = start; x <= m - k; ++x) {
            cur.push_back(x);
            if (choose(x + 1, k - 1)) return true;
            cur.pop_back();
        }
        return false;
    };
    for (int k = 0; k <= m; ++k) {
        cur.clear();
        if (choose(0, k)) {
            out.value = k;
            for (Point x : cur) out.witness.push_back({x, 0});
            return out;
        }
    }
    throw Error("no injective set; class rows must be distinct");
}

FiniteClass materialize(const ClassHandle& cls, int limit) {
    if (cls.is_finite()) return cls.finite();
    const int m = cls.domain_size();
    if (m > FiniteClass::kMaxDomain) throw CapExceeded("domain too large to materialize");
    std::vector<std::uint64_t> rows;
    std::vector<LabeledPair> s;
    std::function<void(int)> dfs = [&](int x) {
        if (x == m) {
            std::uint64_t r = 0;
            for (const auto& z : s) {
                if (z.y) r |= (1ULL << z.x);
            }
            rows.push_back(r);
            if (static_cast<int>(rows.size()) > limit) throw CapExceeded("class has more hypotheses than the limit");
            return;
        }
        for (int y = 0; y <= 1; ++y) {
            s.push_back({x, y});
            if (cls.realizable(s)) dfs(x + 1);
            s.pop_back();
        }
    };
    dfs(0);
    return FiniteClass::from_masks(m, rows);
}

DimReport compute_dimensions(const ClassHandle& cls, int cap) {
    DimReport r;
    r.vc = vc_dimension(cls, cap);
    r.star = star_number(cls, cap);
    r.hollow_star = hollow_star_number(cls, cap);
    r.eluder = eluder_dimension(cls, cap);
    std::optional<FiniteClass> fc;
    if (cls.is_finite()) {
        fc = cls.finite();
    } else {
        try {
            fc = materialize(cls);
        } catch (const CapExceeded&) {
        }
    }
    if (fc) {
        r.littlestone = littlestone_dimension(*fc);
        r.mis = mis_size(*fc);
    }
    return r;
}

bool verify(const ClassHandle& cls, const DimReport& r) {
    auto sized = [](const DimValue& v) { return static_cast<int>(v.witness.size()) == v.value; };
    if (!r.vc.cap_exceeded && !(sized(r.vc) && is_shattered(cls, points_of(r.vc.witness)))) return false;
    if (!r.star.cap_exceeded && !(sized(r.star) && is_star_set(cls, r.star.witness))) return false;
    if (!r.hollow_star.cap_exceeded && r.hollow_star.value > 0 &&
        !(sized(r.hollow_star) && is_hollow_star_set(cls, r.hollow_star.witness))) {
        return false;
    }
    if (!r.eluder.cap_exceeded && !(sized(r.eluder) && is_eluder_sequence(cls, r.eluder.witness))) return false;
    if (r.littlestone && !is_mistake_tree(cls, r.littlestone->tree, r.littlestone->value)) return false;
    if (r.mis) {
        const FiniteClass fc = materialize(cls);
        if (!sized(*r.mis) || !is_injective_set(fc, points_of(r.mis->witness))) return false;
    }
    return true;
}

}  // namespace unlearn
