#include "gen.hpp"

#include <algorithm>
#include <numeric>

namespace gen {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<LabeledPair> random_pairs(int m, int n, std::mt19937_64& rng) {
    std::vector<LabeledPair> out;
    for (int i = 0; i < n; ++i) out.push_back({uniform(rng, 0, m - 1), uniform(rng, 0, 1)});
    return out;
}

Dataset random_dataset(int m, int n, std::mt19937_64& rng) { return Dataset(random_pairs(m, n, rng)); }

Dataset realizable_dataset(const FiniteClass& c, int n, std::mt19937_64& rng) {
    const int h = uniform(rng, 0, c.size() - 1);
    std::vector<LabeledPair> out;
    for (int i = 0; i < n; ++i) {
        int x = uniform(rng, 0, c.domain_size() - 1);
        out.push_back({x, c.label(h, x)});
    }
    return Dataset(out);
}

unlearn::Query random_query(int n, int kmax, std::mt19937_64& rng) {
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 1);
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(static_cast<std::size_t>(uniform(rng, 1, std::min(n, kmax))));
    return unlearn::Query(ids);
}

std::vector<unlearn::Query> all_queries(int n, int kmax) {
    std::vector<unlearn::Query> out;
    for (std::uint64_t s = 1; s < (1ULL << n); ++s) {
        if (__builtin_popcountll(s) > kmax) continue;
        std::vector<int> ids;
        for (int i = 0; i < n; ++i) {
            if ((s >> i) & 1U) ids.push_back(i + 1);
        }
        out.push_back(unlearn::Query(ids));
    }
    return out;
}

}  // namespace gen
