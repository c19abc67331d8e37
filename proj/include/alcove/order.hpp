#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>

#include "alcove/report.hpp"
#include "alcove/weylaff.hpp"

namespace alcove {

/// Thrown when the uparrow search exceeds its node budget.
class SearchBoundExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Base alcove C = base.C^- for the orders <=_C and the counts d_C, d'_C.
struct OrderContext {
    std::shared_ptr<const AffineWeylGroup> group;
    AffineElement base;

    static OrderContext cminus(std::shared_ptr<const AffineWeylGroup> g);
    static OrderContext cplus(std::shared_ptr<const AffineWeylGroup> g);
};

/// d(C') = sum (m'_beta - m_beta).
int d_signed(const Alcove& other, const OrderContext& ctx);
/// d'(C') = sum |m'_beta - m_beta|, the number of separating hyperplanes.
int d_abs(const Alcove& other, const OrderContext& ctx);

inline constexpr std::int64_t kUparrowBudget = 4'000'000;

/*
  gamma ^ gamma' in the order generated by raising reflections
  gamma -> s_{beta,mp}.gamma > gamma. Every step raises gamma in the dominance
  order, so the search never leaves the interval [gamma, gamma'].
*/
bool uparrow_leq(const AffineWeylGroup& g, const Weight& gamma, const Weight& target,
                 std::int64_t budget = kUparrowBudget);

/// lambda <=_C mu: both in the orbit of one nu in the closure of C, compared by Bruhat order.
bool leq_C(const Weight& lambda, const Weight& mu, const OrderContext& ctx);

/// gamma lies in X^+ + closure(C).
bool in_shifted_dominant_region(const Weight& gamma, const OrderContext& ctx);

/*
  Compares <=_C with the uparrow order on all ordered pairs of distinct,
  linked weights in the box [-radius, radius]^rank. Pairs inside X^+ + C
  that disagree are violations; disagreeing pairs outside are boundary cases.
*/
CheckReport check_ordersame(int box_radius, const OrderContext& ctx, int jobs = 1);

/// For w in W+ with l(w) <= max_len and t_{p nu} w in W+, checks R(w) = R(t w).
CheckReport translation_descent_check(const AffineWeylGroup& g, const Weight& nu, int max_len);

/// l(w) = d'(w.C^-) for every w with l(w) <= max_len, via the hyperplane count.
CheckReport check_length_law(const AffineWeylGroup& g, int max_len);

}  // namespace alcove
