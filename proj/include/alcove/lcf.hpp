#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include "alcove/charring.hpp"
#include "alcove/klpoly.hpp"
#include "alcove/report.hpp"
#include "alcove/weylaff.hpp"

namespace alcove {

/// Raised when an output depends on Lusztig's conjecture and the regime was not asserted,
/// or when a decomposition leaves the regime (negative coefficients).
class RegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Point at which the Kazhdan-Lusztig polynomials are evaluated in the character formula.
enum class KLEval { AtOne, AtMinusOne };

struct RestrictedDecomp {
    Weight gamma;
    Weight gamma0;  // 0 <= <gamma0, alpha^vee> <= p - 1
    Weight gamma1;
};

RestrictedDecomp restricted_decompose(const Weight& gamma, int p);

struct DecompTerm {
    Weight gamma;
    AffineElement x;  // gamma = x.lambda
    std::int64_t coeff = 0;
};

struct DecompReport {
    AffineElement w;
    Weight lambda;
    std::vector<DecompTerm> coefficients;  // by decreasing height
    bool descent_ok = true;
    bool regime_ok = true;
    json witnesses = json::array();

    std::int64_t coeff(const Weight& gamma) const;
};

struct LcfOptions {
    bool assume_lcf = false;
    KLEval eval = KLEval::AtOne;
};

/*
  Quantum and modular irreducible characters on one affine Weyl group.
  Quantum characters come from the Lusztig character formula
    ch L_zeta(w.lambda) = sum_{y <= w, y in W+} (-1)^{l(w)-l(y)} P_{y,w} chi(y.lambda),
  modular ones from the Steinberg tensor product theorem with restricted
  factors ch L(gamma0) = ch L_zeta(gamma0), which needs the LCF regime.
*/
class LcfEngine {
public:
    LcfEngine(std::shared_ptr<const AffineWeylGroup> group, LcfOptions options);

    const AffineWeylGroup& group() const { return *group_; }
    const CharRing& ring() const { return ring_; }
    KLTable& kl() { return kl_; }
    const LcfOptions& options() const { return options_; }

    /// lambda regular in C^-, w in W+.
    CharElem quantum_irred_char(const AffineElement& w, const Weight& lambda) const;
    /// ch L_zeta(gamma) = ch Delta^0(gamma) for any dominant gamma; singular orbits via translation.
    CharElem delta0_char(const Weight& gamma) const;
    /// Requires assume_lcf.
    CharElem modular_irred_char(const Weight& gamma) const;

    /// Expresses a Weyl-basis character in the basis ch L(gamma); requires assume_lcf.
    std::map<Weight, std::int64_t> modular_decompose(const CharElem& c) const;

    DecompReport decompose_c(const AffineElement& w, const Weight& lambda) const;

    /// ch L_zeta(gamma0) * Fr(chi(gamma1)). The restricted factor is chi(gamma0) when
    /// gamma0 lies in the closure of the lowest alcove (independent = true) and
    /// comes from the character formula otherwise.
    CharElem quantum_steinberg_char(const Weight& gamma, bool* independent = nullptr) const;

private:
    void require_regime() const;
    void require_regular(const Weight& lambda) const;
    bool in_lowest_alcove_closure(const Weight& gamma) const;

    std::shared_ptr<const AffineWeylGroup> group_;
    CharRing ring_;
    mutable KLTable kl_;
    LcfOptions options_;

    mutable std::shared_mutex mutex_;
    mutable std::map<Weight, CharElem> modular_memo_;
};

/// For w in W+ with l(w) <= max_len and every nonzero c_{x,w}: R(w) subset of R(x).
CheckReport verify_mult(const LcfEngine& e, const Weight& lambda, int max_len, int jobs = 1);
/// Same range, asserting R(x) = R(w); groups the w by descent class.
CheckReport verify_newlinkage(const LcfEngine& e, const Weight& lambda, int max_len, int jobs = 1);
/// translate(lambda, mu, ch Delta^0(w.lambda)) = ch Delta^0(w.mu) for w in W^J, else 0.
CheckReport verify_tothe(const LcfEngine& e, const Weight& lambda, const Weight& mu, int max_len, int jobs = 1);
/// Character forms of the translation identities onto and off the wall through mu.
CheckReport verify_tr(const LcfEngine& e, const Weight& lambda, const Weight& mu, int max_len, int jobs = 1);
/// dim of the LCF sum against the quantum Steinberg product for all w in W+ with l(w) <= max_len.
CheckReport verify_steinberg_dims(const LcfEngine& e, const Weight& lambda, int max_len);

/// Elements of the finite parabolic subgroup W_J.
std::vector<AffineElement> parabolic_elements(const AffineWeylGroup& g, const GeneratorSet& J);

std::string descent_class_key(const AffineWeylGroup& g, const GeneratorSet& s);

}  // namespace alcove
