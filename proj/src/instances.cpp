#include "unlearn/instances.hpp"

#include <algorithm>
#include <memory>

#include "unlearn/dimensions.hpp"
#include "unlearn/geometry.hpp"

namespace unlearn {

FiniteClass thresholds_1d(int m) {
    if (m < 1 || m > 63) throw InvalidInput("thresholds need 1 <= m <= 63");
    std::vector<std::uint64_t> rows;
    for (int t = 1; t <= m + 1; ++t) {
        std::uint64_t r = 0;
        for (int x = t - 1; x < m; ++x) r |= (1ULL << x);
        rows.push_back(r);
    }
    return FiniteClass::from_masks(m, rows);
}

FiniteClass parity_class(int d) {
    if (d < 1 || d > 6) throw InvalidInput("parity needs 1 <= d <= 6");
    const int m = 1 << d;
    std::vector<std::uint64_t> rows;
    for (int a = 0; a < m; ++a) {
        std::uint64_t r = 0;
        for (int x = 0; x < m; ++x) {
            if (__builtin_popcount(static_cast<unsigned>(a & x)) & 1) r |= (1ULL << x);
        }
        rows.push_back(r);
    }
    return FiniteClass::from_masks(m, rows);
}

FiniteClass all_labelings(int m) {
    if (m < 1 || m > 6) throw InvalidInput("explicit all-labelings class needs 1 <= m <= 6");
    std::vector<std::uint64_t> rows;
    for (std::uint64_t r = 0; r < (1ULL << m); ++r) rows.push_back(r);
    return FiniteClass::from_masks(m, rows);
}

FiniteClass tilu_ub_class(int d, int domain) {
    if (d < 1 || d > 4 || domain < d) throw InvalidInput("chain class needs 1 <= d <= 4 and |X| >= d");
    std::vector<std::uint64_t> rows;
    for (std::uint64_t r = 0; r < (1ULL << d); ++r) rows.push_back(r);
    return FiniteClass::from_masks(domain, rows);
}

FiniteClass random_class(int m, int h, std::mt19937_64& rng) {
    if (m < 1 || m > 64 || h < 1) throw InvalidInput("random class needs 1 <= m <= 64 and h >= 1");
    const std::uint64_t valid = m == 64 ? ~0ULL : ((1ULL << m) - 1);
    std::vector<std::uint64_t> rows;
    for (int i = 0; i < h; ++i) rows.push_back(rng() & valid);
    return FiniteClass::from_masks(m, rows);
}

// ---- recipes

namespace {

std::vector<int> identity(int p) {
    std::vector<int> v(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
}

// Ids of planted copies: base first, then `copies` items per present position.
ItemId planted_first_id(const Recipe& r, const Secret& z, int pos, int copies) {
    ItemId id = static_cast<ItemId>(r.base.size()) + 1;
    for (int q = 0; q < pos; ++q) {
        if (z[static_cast<std::size_t>(r.secret_index[static_cast<std::size_t>(q)])] == 1) id += copies;
    }
    return id;
}

Dataset recipe_dataset(const Recipe& r, const Secret& z, int copies) {
    std::vector<LabeledPair> items = r.base;
    for (std::size_t pos = 0; pos < r.planted.size(); ++pos) {
        if (z[static_cast<std::size_t>(r.secret_index[pos])] == 1) {
            for (int c = 0; c < copies; ++c) items.push_back(r.planted[pos]);
        }
    }
    return Dataset(items);
}

Query recipe_query(const Recipe& r, const Secret& known, int pos, bool drop_earlier, int copies) {
    std::vector<ItemId> ids = r.queries[static_cast<std::size_t>(pos)];
    if (drop_earlier) {
        for (int q = 0; q < pos; ++q) {
            if (known[static_cast<std::size_t>(r.secret_index[static_cast<std::size_t>(q)])] != 1) continue;
            ItemId first = planted_first_id(r, known, q, copies);
            for (int c = 0; c < copies; ++c) ids.push_back(first + c);
        }
    }
    return Query(ids);
}

void check_secret(const Secret& z, int p) {
    if (static_cast<int>(z.size()) != p) throw InvalidInput("secret must have " + std::to_string(p) + " bits");
    for (int b : z) {
        if (b != 0 && b != 1) throw InvalidInput("secret bits must be 0 or 1");
    }
}

LbInstance from_recipe(std::string name, ClassHandle cls, Recipe r) {
    LbInstance inst;
    inst.name = std::move(name);
    inst.task = Task::realizability;
    inst.cls = std::move(cls);
    inst.p = static_cast<int>(r.planted.size());
    inst.order = r.secret_index;
    inst.fixed.assign(static_cast<std::size_t>(inst.p), -1);
    auto shared = std::make_shared<const Recipe>(r);
    const int p = inst.p;
    inst.dataset_of = [shared, p](const Secret& z) {
        check_secret(z, p);
        return recipe_dataset(*shared, z, 1);
    };
    inst.query = [shared](int step, const Secret& known) {
        return recipe_query(*shared, known, step, shared->drop_earlier, 1);
    };
    inst.decode = [](int, const Answer& a) {
        if (!std::holds_alternative<bool>(a)) throw PreconditionViolation("instance expects a yes/no answer");
        return std::get<bool>(a) ? 0 : 1;
    };
    inst.recipe = std::move(r);
    return inst;
}

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace

int vclb_code_size(int inv_beta, int m) {
    if (inv_beta < 1 || m < 1) throw InvalidInput("vclb needs 1/beta >= 1 and m >= 1");
    // ceil(m^beta / beta): smallest s with s^t >= m * t^t
    const int t = inv_beta;
    long double target = static_cast<long double>(m);
    for (int i = 0; i < t; ++i) target *= t;
    int s = 1;
    while (true) {
        long double pw = 1;
        for (int i = 0; i < t; ++i) pw *= s;
        if (pw >= target) break;
        ++s;
    }
    while (binom(s, t) < static_cast<std::uint64_t>(m)) ++s;
    return s;
}

LbInstance vclb_instance(int inv_beta, int m) {
    const int s = vclb_code_size(inv_beta, m);
    if (m + s > FiniteClass::kMaxDomain) throw InvalidInput("vclb domain exceeds 64 points");
    auto codes = k_subsets(s, inv_beta);
    std::vector<std::uint64_t> rows;
    for (int i = 0; i < m; ++i) {
        std::uint64_t r = 1ULL << i;
        for (int c : codes[static_cast<std::size_t>(i)]) r |= 1ULL << (m + c);
        rows.push_back(r);
    }
    Recipe r;
    for (int c = 0; c < s; ++c) r.base.push_back({m + c, 0});
    for (int i = 0; i < m; ++i) {
        r.planted.push_back({i, 0});
        std::vector<ItemId> q;
        for (int c : codes[static_cast<std::size_t>(i)]) q.push_back(c + 1);
        r.queries.push_back(q);
    }
    r.drop_earlier = false;
    r.secret_index = identity(m);
    return from_recipe("vclb", FiniteClass::from_masks(m + s, rows), std::move(r));
}

LbInstance eluder_lb_instance(const ClassHandle& cls, const std::vector<LabeledPair>& witness, int n) {
    if (!is_eluder_sequence(cls, witness)) throw PreconditionViolation("witness is not an eluder sequence");
    const int p = std::min(n / 2, static_cast<int>(witness.size()));
    if (p < 1) throw InvalidInput("eluder instance needs n >= 2 and a nonempty witness");
    Recipe r;
    for (int i = 0; i < p; ++i) r.base.push_back(flip(witness[static_cast<std::size_t>(i)]));
    // recover from the back of the sequence
    for (int i = p - 1; i >= 0; --i) {
        r.planted.push_back(witness[static_cast<std::size_t>(i)]);
        std::vector<ItemId> q;
        for (int j = 0; j < p; ++j) {
            if (j != i) q.push_back(j + 1);
        }
        r.queries.push_back(q);
        r.secret_index.push_back(i);
    }
    r.drop_earlier = true;
    return from_recipe("eluder", cls, std::move(r));
}

LbInstance shatter_lb_instance(const ClassHandle& cls, const std::vector<Point>& shattered) {
    if (shattered.empty() || !is_shattered(cls, shattered)) throw PreconditionViolation("points are not shattered");
    const int d = static_cast<int>(shattered.size());
    LbInstance inst;
    inst.name = "shatter";
    inst.cls = cls;
    inst.p = d;
    inst.order = identity(d);
    inst.fixed.assign(static_cast<std::size_t>(d), -1);
    inst.dataset_of = [shattered, d](const Secret& z) {
        check_secret(z, d);
        std::vector<LabeledPair> items;
        for (int i = 0; i < d; ++i) items.push_back({shattered[static_cast<std::size_t>(i)], 1});
        for (int i = 0; i < d; ++i) items.push_back({shattered[static_cast<std::size_t>(i)], z[static_cast<std::size_t>(i)]});
        return Dataset(items);
    };
    inst.query = [d](int step, const Secret&) {
        std::vector<ItemId> ids;
        for (int j = 0; j < d; ++j) {
            if (j != step) ids.push_back(j + 1);
        }
        return Query(ids);
    };
    inst.decode = [](int, const Answer& a) {
        if (!std::holds_alternative<bool>(a)) throw PreconditionViolation("instance expects a yes/no answer");
        return std::get<bool>(a) ? 1 : 0;
    };
    return inst;
}

LbInstance halfspace_lb_instance(int d, int k) {
    if (k < 2 || k > d - 2) throw InvalidInput("halfspace instance needs 2 <= k <= d-2");
    auto subsets = k_subsets(d, k);
    auto oracle = std::make_shared<HalfspaceOracle>(d, simplex_face_domain(d, k));
    Recipe r;
    for (int i = 0; i < d; ++i) r.base.push_back({i, 1});
    for (std::size_t li = 0; li < subsets.size(); ++li) {
        r.planted.push_back({d + static_cast<int>(li), 0});
        std::vector<ItemId> q;
        for (int i : subsets[li]) q.push_back(i + 1);
        r.queries.push_back(q);
    }
    r.drop_earlier = false;
    r.secret_index = identity(static_cast<int>(subsets.size()));
    return from_recipe("halfspace", ClassHandle(std::shared_ptr<const RealizabilityOracle>(oracle)), std::move(r));
}

bool verify_recipe(const ClassHandle& cls, const Recipe& r, bool drop_earlier) {
    const int p = static_cast<int>(r.planted.size());
    if (p > 12) throw PreconditionViolation("recipe too large to verify exhaustively");
    for (std::uint64_t bits = 0; bits < (1ULL << p); ++bits) {
        Secret z(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) z[static_cast<std::size_t>(i)] = static_cast<int>((bits >> i) & 1U);
        Dataset data = recipe_dataset(r, z, 1);
        for (int pos = 0; pos < p; ++pos) {
            Dataset rest = remove(data, recipe_query(r, z, pos, drop_earlier, 1));
            const int zi = z[static_cast<std::size_t>(r.secret_index[static_cast<std::size_t>(pos)])];
            if (is_realizable(cls, rest) != (zi == 0)) return false;
        }
    }
    return true;
}

bool verify_recipe(const ClassHandle& cls, const Recipe& r) { return verify_recipe(cls, r, r.drop_earlier); }

LbInstance whitebox_erm_reduction(const LbInstance& base) {
    if (!base.recipe) throw PreconditionViolation("instance has no planted structure to reduce");
    if (base.task != Task::realizability) throw PreconditionViolation("reduction starts from a realizability instance");
    const FiniteClass cls = base.cls.finite();
    const Recipe& src = *base.recipe;
    const int p = static_cast<int>(src.planted.size());
    if (p < 2) throw PreconditionViolation("reduction needs at least two planted pairs");
    if (!verify_recipe(base.cls, src, true)) throw PreconditionViolation("recipe fails once earlier planted pairs are removed");

    auto as_set = [](std::vector<ItemId> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto u1 = as_set(src.queries[0]);
    int L = 0;
    for (int i = 1; i < p; ++i) {
        auto ui = as_set(src.queries[static_cast<std::size_t>(i)]);
        std::vector<ItemId> diff;
        std::set_difference(ui.begin(), ui.end(), u1.begin(), u1.end(), std::back_inserter(diff));
        L = std::max(L, static_cast<int>(diff.size()));
    }
    // the first query's hypothesis pays for the items it no longer has removed
    for (int i = 1; i < p; ++i) {
        auto ui = as_set(src.queries[static_cast<std::size_t>(i)]);
        std::vector<ItemId> diff;
        std::set_difference(u1.begin(), u1.end(), ui.begin(), ui.end(), std::back_inserter(diff));
        if (static_cast<int>(diff.size()) > L) throw PreconditionViolation("queries are not balanced enough for the reduction");
    }

    // the reduced secret is indexed by recovery position
    Recipe r = src;
    r.secret_index = identity(p);
    const int copies = L + 1;
    auto shared = std::make_shared<const Recipe>(r);

    LbInstance inst;
    inst.name = "erm-whitebox(" + base.name + ")";
    inst.task = Task::erm;
    inst.cls = cls;
    inst.p = p;
    inst.order = identity(p);
    inst.fixed.assign(static_cast<std::size_t>(p), -1);
    inst.fixed[0] = 0;
    inst.dataset_of = [shared, p, copies](const Secret& z) {
        check_secret(z, p);
        if (z[0] != 0) throw PreconditionViolation("the reduction fixes the first secret bit to 0");
        return recipe_dataset(*shared, z, copies);
    };
    inst.query = [shared, copies](int step, const Secret& known) {
        return recipe_query(*shared, known, step, true, copies);
    };
    inst.decode = [shared, cls](int step, const Answer& a) {
        if (!std::holds_alternative<HypothesisId>(a)) throw PreconditionViolation("reduction expects an ERM answer");
        const LabeledPair z = shared->planted[static_cast<std::size_t>(step)];
        return cls.label(std::get<HypothesisId>(a).index, z.x) == z.y ? 1 : 0;
    };
    return inst;
}

}  // namespace unlearn
