#pragma once

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "unlearn/core.hpp"

namespace unlearn {

using Rational = mpq_class;
using RationalPoint = std::vector<Rational>;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

// w . x > b on positives, w . x < b on negatives
struct Separator {
    std::vector<Rational> w;
    Rational b;
};

constexpr std::size_t kDefaultConstraintCap = 200000;

// Fourier-Motzkin on w.x - b >= 1 (positives), w.x - b <= -1 (negatives).
// Returns a witness when feasible; throws CapExceeded when the system grows past `cap`.
std::optional<Separator> strictly_separable(const std::vector<RationalPoint>& pos, const std::vector<RationalPoint>& neg,
                                            std::size_t cap = kDefaultConstraintCap);
bool separates(const Separator& s, const std::vector<RationalPoint>& pos, const std::vector<RationalPoint>& neg);

enum class Norm { l1, l2, linf };
// Smallest label-signed (w.x - b) divided by the norm of w. The l2 case only
// succeeds when the norm is rational.
Rational margin(const Separator& s, const std::vector<RationalPoint>& pos, const std::vector<RationalPoint>& neg,
                Norm norm = Norm::l1);

// k-subsets of {0..d-1} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int d, int k);
// Basis vectors e_0..e_{d-1}, then the centroid of the face opposite each L.
std::vector<RationalPoint> simplex_face_domain(int d, int k);
// Faces coincide with vertices when d - k == 1.
inline bool faces_degenerate(int d, int k) { return d - k == 1; }
// (e_i, 1) for every i, then (centroid(L), 0) for each L in `family` (ids into the domain above).
Dataset halfspace_family_dataset(int d, int k, const std::vector<std::vector<int>>& family);
// The separator that isolates the face opposite L.
Separator family_separator(int d, int k, const std::vector<int>& L);

class HalfspaceOracle : public RealizabilityOracle {
public:
    HalfspaceOracle(int dim, std::vector<RationalPoint> domain, std::size_t cap = kDefaultConstraintCap);
    int domain_size() const override { return static_cast<int>(domain_.size()); }
    bool realizable(const std::vector<LabeledPair>& pairs) const override;
    std::string describe() const override;
    int dim() const { return dim_; }
    const std::vector<RationalPoint>& domain() const { return domain_; }

private:
    int dim_;
    std::vector<RationalPoint> domain_;
    std::size_t cap_;
    mutable std::mutex mu_;
    mutable std::map<std::vector<LabeledPair>, bool> cache_;
};

}  // namespace unlearn
