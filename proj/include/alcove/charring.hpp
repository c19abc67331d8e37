#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "alcove/report.hpp"
#include "alcove/rootsys.hpp"
#include "alcove/weylaff.hpp"

namespace alcove {

enum class Basis { Weyl, Weight };

/// Finite integer combination of Weyl characters chi(nu) or of weight monomials e^nu.
struct CharElem {
    Basis basis = Basis::Weyl;
    std::map<Weight, std::int64_t> terms;

    static CharElem zero(Basis b) { return {b, {}}; }
    std::int64_t coeff(const Weight& v) const {
        auto it = terms.find(v);
        return it == terms.end() ? 0 : it->second;
    }
    void add(const Weight& v, std::int64_t c) {
        if (c == 0) return;
        auto [it, inserted] = terms.emplace(v, c);
        if (!inserted && (it->second += c) == 0) terms.erase(it);
    }
    bool is_zero() const { return terms.empty(); }

    CharElem& operator+=(const CharElem& o);
    CharElem& operator-=(const CharElem& o);
    CharElem& operator*=(std::int64_t k);
    friend CharElem operator+(CharElem a, const CharElem& b) { return a += b; }
    friend CharElem operator-(CharElem a, const CharElem& b) { return a -= b; }
    friend CharElem operator*(std::int64_t k, CharElem a) { return a *= k; }
    friend bool operator==(const CharElem& a, const CharElem& b) = default;

    std::string str() const;
};

/// {"basis": "weyl"|"weight", "terms": [{"weight": [...], "coeff": n}, ...]}
json char_json(const CharElem& c);
CharElem char_from_json(const json& j, int rank);

/*
  The Weyl character ring of a root system. Weyl characters are computed by
  Freudenthal's formula in exact integers and memoized; the memo is safe for
  concurrent readers.
*/
class CharRing {
public:
    explicit CharRing(std::shared_ptr<const RootSystem> rs);

    const RootSystem& roots() const { return *rs_; }

    /// Weight multiplicities of chi(nu), nu dominant.
    CharElem weyl_character(const Weight& nu) const;
    /// Multiplicities of the dominant weights of chi(nu) only.
    const std::map<Weight, std::int64_t>& dominant_multiplicities(const Weight& nu) const;

    /// chi(v) for arbitrary v, straightened by the dot action of W_f: 0 on walls, +-chi(dominant) otherwise.
    CharElem chi(const Weight& v) const;

    /// Throws std::invalid_argument if the input is not W_f-invariant.
    CharElem to_weyl_basis(const CharElem& c) const;
    CharElem to_weight_basis(const CharElem& c) const;
    CharElem in_weyl_basis(const CharElem& c) const { return c.basis == Basis::Weyl ? c : to_weyl_basis(c); }

    /// Product in the Weyl basis (Brauer-Klimyk).
    CharElem product(const CharElem& a, const CharElem& b) const;

    /// Evaluation at the identity.
    std::int64_t dim(const CharElem& c) const;

    /// Weight-basis character with every weight multiplied by p.
    CharElem frobenius_twist(const CharElem& c, int p) const;

private:
    std::shared_ptr<const RootSystem> rs_;
    mutable std::shared_mutex mutex_;
    mutable std::map<Weight, std::shared_ptr<const std::map<Weight, std::int64_t>>> memo_;
};

/// Keeps the Weyl-basis terms chi(nu) with nu in W_p.mu; mu must lie in the closure of C^-.
CharElem project_orbit(const AffineWeylGroup& g, const CharElem& c, const Weight& mu);

struct TranslateResult {
    CharElem value;
    CharElem dropped;  // input terms outside the orbit of lambda, ignored
};

/// pr_mu(c * chi(nu)) with nu the dominant W_f-conjugate of mu - lambda.
TranslateResult translate(const CharRing& ring, const AffineWeylGroup& g, const Weight& lambda, const Weight& mu,
                          const CharElem& c);

}  // namespace alcove
