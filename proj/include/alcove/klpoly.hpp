#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "alcove/intpoly.hpp"
#include "alcove/weylaff.hpp"

namespace alcove {

/*
  Kazhdan-Lusztig and R-polynomials of (W_p, S_p). The polynomials depend only
  on the Coxeter system, so memo entries and cache files are keyed by alcove
  tuples and are valid for every p.

  P_{y,w} is computed by the recursion on a right descent s of w, v = ws,
  c = [ys < y]:
    P_{y,w} = q^{1-c} P_{ys,v} + q^c P_{y,v}
              - sum_{y <= z < v, zs < z} mu(z,v) q^{(l(w)-l(z))/2} P_{y,z}.
*/
class KLTable {
public:
    explicit KLTable(std::shared_ptr<const AffineWeylGroup> group);

    const AffineWeylGroup& group() const { return *group_; }

    IntPoly kl_poly(const AffineElement& y, const AffineElement& w) const;
    /// Same value, with the top step of the recursion taken along the descent s in R(w).
    IntPoly kl_poly_via(const AffineElement& y, const AffineElement& w, Generator s) const;
    std::int64_t kl_eval_minus_one(const AffineElement& y, const AffineElement& w) const;
    std::int64_t kl_eval_one(const AffineElement& y, const AffineElement& w) const;
    /// Coefficient of q^{(l(w)-l(y)-1)/2} in P_{y,w}, zero when l(w)-l(y) is even.
    std::int64_t mu(const AffineElement& y, const AffineElement& w) const;

    IntPoly r_poly(const AffineElement& y, const AffineElement& w) const;

    std::size_t size() const;
    /// {"version", "type", "rank", "pairs": [{"y": [...], "w": [...], "coeffs": [...]}]}
    void save(const std::string& path) const;
    /// Merges entries from a cache file; returns the number loaded. Missing files load nothing.
    std::size_t load(const std::string& path);

private:
    IntPoly compute(const AffineElement& y, const AffineElement& w, Generator s) const;

    struct PairHash {
        std::size_t operator()(const std::pair<Alcove, Alcove>& k) const {
            return AlcoveHash{}(k.first) * 31u ^ AlcoveHash{}(k.second);
        }
    };

    std::shared_ptr<const AffineWeylGroup> group_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::pair<Alcove, Alcove>, IntPoly, PairHash> p_memo_;
    mutable std::unordered_map<std::pair<Alcove, Alcove>, IntPoly, PairHash> r_memo_;
};

}  // namespace alcove
