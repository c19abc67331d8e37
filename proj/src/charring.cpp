#include "alcove/charring.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>

namespace alcove {

CharElem& CharElem::operator+=(const CharElem& o) {
    if (o.basis != basis && !o.is_zero()) throw std::invalid_argument("adding characters in different bases");
    for (const auto& [v, c] : o.terms) add(v, c);
    return *this;
}

CharElem& CharElem::operator-=(const CharElem& o) {
    if (o.basis != basis && !o.is_zero()) throw std::invalid_argument("subtracting characters in different bases");
    for (const auto& [v, c] : o.terms) add(v, -c);
    return *this;
}

CharElem& CharElem::operator*=(std::int64_t k) {
    if (k == 0) terms.clear();
    for (auto& [v, c] : terms) c *= k;
    return *this;
}

std::string CharElem::str() const {
    if (terms.empty()) return "0";
    const char* sym = basis == Basis::Weyl ? "chi" : "e";
    std::string s;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto c = it->second;
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        const auto m = c < 0 ? -c : c;
        if (m != 1) s += std::to_string(m) + "*";
        s += sym + it->first.str();
    }
    return s;
}

json char_json(const CharElem& c) {
    json j;
    j["basis"] = c.basis == Basis::Weyl ? "weyl" : "weight";
    json terms = json::array();
    for (const auto& [v, k] : c.terms) terms.push_back({{"weight", weight_json(v)}, {"coeff", k}});
    j["terms"] = std::move(terms);
    return j;
}

CharElem char_from_json(const json& j, int rank) {
    CharElem c;
    const auto b = j.at("basis").get<std::string>();
    if (b == "weyl") c.basis = Basis::Weyl;
    else if (b == "weight") c.basis = Basis::Weight;
    else throw std::invalid_argument("unknown basis '" + b + "'");
    for (const auto& t : j.at("terms")) c.add(weight_from_json(t.at("weight"), rank), t.at("coeff").get<std::int64_t>());
    return c;
}

CharRing::CharRing(std::shared_ptr<const RootSystem> rs) : rs_(std::move(rs)) {
    if (!rs_) throw std::invalid_argument("null root system");
}

const std::map<Weight, std::int64_t>& CharRing::dominant_multiplicities(const Weight& nu) const {
    if (!nu.is_dominant()) throw std::invalid_argument("Weyl character needs a dominant weight, got " + nu.str());
    {
        std::shared_lock lock(mutex_);
        auto it = memo_.find(nu);
        if (it != memo_.end()) return *it->second;
    }
    const auto& rs = *rs_;
    const int nr = rs.num_positive_roots();

    // dominant weights below nu, reached by subtracting positive roots
    std::vector<Weight> dom{nu};
    std::set<Weight> seen{nu};
    for (std::size_t k = 0; k < dom.size(); ++k)
        for (int b = 0; b < nr; ++b) {
            Weight m = dom[k] - rs.positive_roots()[b].root;
            if (m.is_dominant() && seen.insert(m).second) dom.push_back(m);
        }
    std::stable_sort(dom.begin(), dom.end(),
                     [&](const Weight& a, const Weight& b) { return rs.scaled_height(a) > rs.scaled_height(b); });

    std::map<Weight, std::int64_t> mult;
    auto lookup = [&](const Weight& v) -> std::int64_t {
        auto it = mult.find(rs.dominant_conjugate(v));
        return it == mult.end() ? 0 : it->second;
    };
    const Weight top = nu + rs.rho();
    const std::int64_t norm_top = rs.scaled_form(top, top);
    for (const auto& mu : dom) {
        if (mu == nu) {
            mult[mu] = 1;
            continue;
        }
        // Freudenthal: ((nu+rho)^2 - (mu+rho)^2) m(mu) = 2 sum_{beta>0} sum_{k>=1} m(mu + k beta) (mu + k beta, beta)
        std::int64_t num = 0;
        for (int b = 0; b < nr; ++b) {
            const Weight& beta = rs.positive_roots()[b].root;
            Weight v = mu + beta;
            for (;;) {
                const std::int64_t m = lookup(v);
                if (m == 0) break;
                num += m * rs.scaled_form(v, beta);
                v += beta;
            }
        }
        const Weight shifted = mu + rs.rho();
        const std::int64_t den = norm_top - rs.scaled_form(shifted, shifted);
        if (den <= 0 || (2 * num) % den != 0) throw std::logic_error("Freudenthal recursion produced a non-integer");
        if (const std::int64_t m = 2 * num / den; m != 0) mult[mu] = m;
    }

    auto ptr = std::make_shared<const std::map<Weight, std::int64_t>>(std::move(mult));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = memo_.emplace(nu, std::move(ptr));
    return *it->second;
}

CharElem CharRing::weyl_character(const Weight& nu) const {
    CharElem out = CharElem::zero(Basis::Weight);
    for (const auto& [mu, m] : dominant_multiplicities(nu))
        for (const auto& v : rs_->finite_orbit(mu)) out.add(v, m);
    return out;
}

CharElem CharRing::chi(const Weight& v) const {
    CharElem out = CharElem::zero(Basis::Weyl);
    const auto r = rs_->dominant_representative(v);
    if (r.sign != 0) out.add(r.weight, r.sign);
    return out;
}

CharElem CharRing::to_weyl_basis(const CharElem& c) const {
    if (c.basis == Basis::Weyl) return c;
    const auto& rs = *rs_;
    for (const auto& [v, m] : c.terms)
        for (int i = 0; i < rs.rank(); ++i)
            if (c.coeff(v - v[i] * rs.simple_root(i)) != m)
                throw std::invalid_argument("character is not W-invariant at weight " + v.str());
    // c_gamma = sum_w sign(w) M(gamma + rho - w rho)
    const Weight rho = rs.rho();
    std::set<Weight> candidates;
    for (const auto& [v, m] : c.terms)
        for (const auto& e : rs.finite_weyl_group()) {
            const Weight gamma = v + e.rho_image - rho;
            if (gamma.is_dominant()) candidates.insert(gamma);
        }
    CharElem out = CharElem::zero(Basis::Weyl);
    for (const auto& gamma : candidates) {
        std::int64_t k = 0;
        for (const auto& e : rs.finite_weyl_group()) k += e.sign * c.coeff(gamma + rho - e.rho_image);
        out.add(gamma, k);
    }
    return out;
}

CharElem CharRing::to_weight_basis(const CharElem& c) const {
    if (c.basis == Basis::Weight) return c;
    CharElem out = CharElem::zero(Basis::Weight);
    for (const auto& [nu, k] : c.terms)
        for (const auto& [mu, m] : dominant_multiplicities(nu))
            for (const auto& v : rs_->finite_orbit(mu)) out.add(v, k * m);
    return out;
}

CharElem CharRing::product(const CharElem& a, const CharElem& b) const {
    CharElem x = in_weyl_basis(a);
    CharElem y = in_weyl_basis(b);
    // expand the factor with fewer weights
    CharElem yw = to_weight_basis(y);
    if (const CharElem xw = to_weight_basis(x); xw.terms.size() < yw.terms.size()) {
        std::swap(x, y);
        yw = xw;
    }
    CharElem out = CharElem::zero(Basis::Weyl);
    for (const auto& [lambda, c] : x.terms)
        for (const auto& [nu, m] : yw.terms) {
            const auto r = rs_->dominant_representative(lambda + nu);
            if (r.sign != 0) out.add(r.weight, r.sign * c * m);
        }
    return out;
}

std::int64_t CharRing::dim(const CharElem& c) const {
    std::int64_t d = 0;
    if (c.basis == Basis::Weight) {
        for (const auto& [v, m] : c.terms) d += m;
    } else {
        for (const auto& [v, k] : c.terms) d += k * rs_->weyl_dimension(v);
    }
    return d;
}

CharElem CharRing::frobenius_twist(const CharElem& c, int p) const {
    CharElem out = CharElem::zero(Basis::Weight);
    for (const auto& [v, m] : to_weight_basis(c).terms) out.add(p * v, m);
    return out;
}

CharElem project_orbit(const AffineWeylGroup& g, const CharElem& c, const Weight& mu) {
    if (!g.in_cminus_closure(mu)) throw std::invalid_argument("orbit representative " + mu.str() + " is not in the closure of C^-");
    if (c.basis != Basis::Weyl) throw std::invalid_argument("project_orbit expects a Weyl-basis character");
    CharElem out = CharElem::zero(Basis::Weyl);
    for (const auto& [nu, k] : c.terms)
        if (g.orbit_rep(nu) == mu) out.add(nu, k);
    return out;
}

TranslateResult translate(const CharRing& ring, const AffineWeylGroup& g, const Weight& lambda, const Weight& mu,
                          const CharElem& c) {
    if (!g.in_cminus_closure(lambda)) throw std::invalid_argument("lambda " + lambda.str() + " is not in the closure of C^-");
    if (!g.in_cminus_closure(mu)) throw std::invalid_argument("mu " + mu.str() + " is not in the closure of C^-");
    const CharElem in = ring.in_weyl_basis(c);
    TranslateResult r{CharElem::zero(Basis::Weyl), CharElem::zero(Basis::Weyl)};
    CharElem on = CharElem::zero(Basis::Weyl);
    for (const auto& [nu, k] : in.terms) (g.orbit_rep(nu) == lambda ? on : r.dropped).add(nu, k);
    const Weight nu = ring.roots().dominant_conjugate(mu - lambda);
    CharElem factor = CharElem::zero(Basis::Weyl);
    factor.add(nu, 1);
    r.value = project_orbit(g, ring.product(on, factor), mu);
    return r;
}

}  // namespace alcove
