#include "alcove/lcf.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <unordered_set>

namespace alcove {

RestrictedDecomp restricted_decompose(const Weight& gamma, int p) {
    if (!gamma.is_dominant()) throw std::invalid_argument("restricted decomposition needs a dominant weight, got " + gamma.str());
    RestrictedDecomp r{gamma, Weight(gamma.rank()), Weight(gamma.rank())};
    for (int i = 0; i < gamma.rank(); ++i) {
        r.gamma0[i] = gamma[i] % p;
        r.gamma1[i] = gamma[i] / p;
    }
    return r;
}

std::int64_t DecompReport::coeff(const Weight& gamma) const {
    for (const auto& t : coefficients)
        if (t.gamma == gamma) return t.coeff;
    return 0;
}

LcfEngine::LcfEngine(std::shared_ptr<const AffineWeylGroup> group, LcfOptions options)
    : group_(std::move(group)), ring_(group_->roots_ptr()), kl_(group_), options_(options) {}

void LcfEngine::require_regime() const {
    if (!options_.assume_lcf)
        throw RegimeError("modular characters rely on Lusztig's character formula; pass --assume-lcf to assert the regime");
}

void LcfEngine::require_regular(const Weight& lambda) const {
    if (!group_->in_cminus(lambda)) throw std::invalid_argument("lambda " + lambda.str() + " is not a regular weight of C^-");
}

bool LcfEngine::in_lowest_alcove_closure(const Weight& gamma) const {
    const auto& rs = group_->roots();
    return gamma.is_dominant() && rs.pairing(gamma + rs.rho(), rs.highest_coroot_index()) <= group_->p();
}

CharElem LcfEngine::quantum_irred_char(const AffineElement& w, const Weight& lambda) const {
    require_regular(lambda);
    const auto& g = *group_;
    if (!g.in_wplus(w)) throw std::invalid_argument("w = " + g.word_string(g.reduced_word(w)) + " is not in W+");
    CharElem out = CharElem::zero(Basis::Weyl);
    for (const auto& y : g.lower_ideal(w)) {
        if (!g.in_wplus(y)) continue;
        const std::int64_t pv = options_.eval == KLEval::AtOne ? kl_.kl_eval_one(y, w) : kl_.kl_eval_minus_one(y, w);
        if (pv == 0) continue;
        const std::int64_t sign = (w.length() - y.length()) % 2 ? -1 : 1;
        out += (sign * pv) * ring_.chi(g.dot(y, lambda));
    }
    return out;
}

CharElem LcfEngine::delta0_char(const Weight& gamma) const {
    if (!gamma.is_dominant()) throw std::invalid_argument("gamma " + gamma.str() + " is not dominant");
    const auto& g = *group_;
    const auto lc = g.linkage_class(gamma);
    if (g.in_cminus(lc.mu)) return quantum_irred_char(lc.w, lc.mu);
    if (g.cminus_points().empty())
        throw RegimeError("singular weight " + gamma.str() + " needs a regular weight in C^-, which requires p >= h");
    const Weight lambda = g.auto_lambda();
    auto out = translate(ring_, g, lambda, lc.mu, quantum_irred_char(lc.w, lambda)).value;
    if (out.coeff(gamma) != 1 || ring_.dim(out) <= 0)
        throw std::logic_error("translated character of " + gamma.str() + " does not have leading term chi(gamma)");
    return out;
}

CharElem LcfEngine::quantum_steinberg_char(const Weight& gamma, bool* independent) const {
    const auto rd = restricted_decompose(gamma, group_->p());
    const bool low = in_lowest_alcove_closure(rd.gamma0);
    if (independent) *independent = low;
    CharElem first = low ? ring_.chi(rd.gamma0) : delta0_char(rd.gamma0);
    CharElem second = CharElem::zero(Basis::Weyl);
    second.add(rd.gamma1, 1);
    return ring_.product(first, ring_.frobenius_twist(second, group_->p()));
}

CharElem LcfEngine::modular_irred_char(const Weight& gamma) const {
    require_regime();
    if (!gamma.is_dominant()) throw std::invalid_argument("gamma " + gamma.str() + " is not dominant");
    {
        std::shared_lock lock(mutex_);
        if (auto it = modular_memo_.find(gamma); it != modular_memo_.end()) return it->second;
    }
    const auto rd = restricted_decompose(gamma, group_->p());
    CharElem out = in_lowest_alcove_closure(rd.gamma0) ? ring_.chi(rd.gamma0) : delta0_char(rd.gamma0);
    if (!rd.gamma1.is_zero())
        out = ring_.product(out, ring_.frobenius_twist(modular_irred_char(rd.gamma1), group_->p()));
    std::unique_lock lock(mutex_);
    modular_memo_.emplace(gamma, out);
    return out;
}

std::map<Weight, std::int64_t> LcfEngine::modular_decompose(const CharElem& c) const {
    require_regime();
    const auto& rs = group_->roots();
    CharElem rest = ring_.in_weyl_basis(c);
    std::map<Weight, std::int64_t> out;
    while (!rest.is_zero()) {
        auto top = std::max_element(rest.terms.begin(), rest.terms.end(), [&](const auto& a, const auto& b) {
            const auto ha = rs.scaled_height(a.first), hb = rs.scaled_height(b.first);
            return ha != hb ? ha < hb : a.first < b.first;
        });
        const Weight gamma = top->first;
        const std::int64_t k = top->second;
        out[gamma] = k;
        rest -= k * modular_irred_char(gamma);
        if (rest.coeff(gamma) != 0) throw std::logic_error("ch L(" + gamma.str() + ") does not have leading term chi(gamma)");
    }
    return out;
}

DecompReport LcfEngine::decompose_c(const AffineElement& w, const Weight& lambda) const {
    require_regime();
    require_regular(lambda);
    const auto& g = *group_;
    const auto& rs = g.roots();
    DecompReport r{w, lambda, {}, true, true, json::array()};
    const auto coeffs = modular_decompose(quantum_irred_char(w, lambda));
    const auto rw = g.right_descent(w);
    for (const auto& [gamma, k] : coeffs) {
        const auto lc = g.linkage_class(gamma);
        if (lc.mu != lambda) throw std::logic_error("composition factor " + gamma.str() + " left the linkage class");
        r.coefficients.push_back({gamma, lc.w, k});
    }
    std::stable_sort(r.coefficients.begin(), r.coefficients.end(), [&](const DecompTerm& a, const DecompTerm& b) {
        const auto ha = rs.scaled_height(a.gamma), hb = rs.scaled_height(b.gamma);
        return ha != hb ? ha > hb : b.gamma < a.gamma;
    });
    for (const auto& t : r.coefficients) {
        if (t.coeff < 0) {
            r.regime_ok = false;
            r.witnesses.push_back({{"kind", "negative_coefficient"}, {"gamma", weight_json(t.gamma)}, {"coeff", t.coeff}});
        }
        const auto rx = g.right_descent(t.x);
        if (rx != rw) {
            r.descent_ok = false;
            r.witnesses.push_back({{"kind", "descent_mismatch"},
                                   {"gamma", weight_json(t.gamma)},
                                   {"x", element_json(g, t.x)},
                                   {"R(x)", generator_set_json(g, rx)},
                                   {"R(w)", generator_set_json(g, rw)}});
        }
    }
    return r;
}

std::vector<AffineElement> parabolic_elements(const AffineWeylGroup& g, const GeneratorSet& J) {
    if (static_cast<int>(J.size()) >= g.num_generators()) throw std::invalid_argument("W_J must be a proper parabolic subgroup");
    std::vector<AffineElement> out{g.identity()};
    std::unordered_set<AffineElement, AffineElementHash> seen{g.identity()};
    for (std::size_t k = 0; k < out.size(); ++k)
        for (Generator s : J) {
            auto x = g.right_multiply(out[k], s);
            if (seen.insert(x).second) out.push_back(x);
        }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return g.canonical_less(a, b); });
    return out;
}

std::string descent_class_key(const AffineWeylGroup& g, const GeneratorSet& s) { return generator_set_string(g, s); }

namespace {

bool subset(const GeneratorSet& a, const GeneratorSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

struct Slot {
    CheckReport part;
    std::string key;
};

void merge(CheckReport& into, const CheckReport& part) {
    into.checked += part.checked;
    into.skipped += part.skipped;
    for (const auto& v : part.violations) into.violations.push_back(v);
    for (const auto& v : part.boundary_cases) into.boundary_cases.push_back(v);
    for (const auto& v : part.errors) into.errors.push_back(v);
    into.cases.insert(into.cases.end(), part.cases.begin(), part.cases.end());
}

std::string word_of(const AffineWeylGroup& g, const AffineElement& w) { return g.word_string(g.reduced_word(w)); }

CheckReport descent_check(const LcfEngine& e, const Weight& lambda, int max_len, int jobs, bool equal) {
    const auto& g = e.group();
    const auto ws = g.enumerate_wplus(lambda, max_len);
    std::vector<Slot> slots(ws.size());
    parallel_for(ws.size(), jobs, [&](std::size_t i) {
        const auto& w = ws[i];
        auto& part = slots[i].part;
        const auto rw = g.right_descent(w);
        slots[i].key = descent_class_key(g, rw);
        const auto rep = e.decompose_c(w, lambda);
        for (const auto& t : rep.coefficients) {
            const auto rx = g.right_descent(t.x);
            const bool good = equal ? rx == rw : subset(rw, rx);
            part.cases.push_back({word_of(g, w), t.gamma.str(), std::to_string(t.coeff), generator_set_string(g, rw),
                                  generator_set_string(g, rx), t.coeff < 0 ? "regime" : good ? "ok" : "violation"});
            if (t.coeff < 0) {
                part.errors.push_back({{"w", element_json(g, w)}, {"gamma", weight_json(t.gamma)}, {"coeff", t.coeff},
                                       {"error", "negative coefficient"}});
                continue;
            }
            ++part.checked;
            if (!good)
                part.violations.push_back({{"w", element_json(g, w)},
                                           {"x", element_json(g, t.x)},
                                           {"gamma", weight_json(t.gamma)},
                                           {"coeff", t.coeff},
                                           {"R(w)", generator_set_json(g, rw)},
                                           {"R(x)", generator_set_json(g, rx)}});
        }
    });
    CheckReport r;
    r.case_columns = {"w", "gamma", "coeff", "R_w", "R_x", "status"};
    for (const auto& s : slots) {
        merge(r, s.part);
        if (equal) {
            auto& cls = r.classes[s.key];
            if (cls.is_null()) cls = {{"elements", 0}, {"checked", 0}, {"violations", 0}};
            cls["elements"] = cls["elements"].get<int>() + 1;
            cls["checked"] = cls["checked"].get<int>() + static_cast<int>(s.part.checked);
            cls["violations"] = cls["violations"].get<int>() + static_cast<int>(s.part.violations.size());
        }
    }
    r.notes["elements"] = ws.size();
    return r;
}

}  // namespace

CheckReport verify_mult(const LcfEngine& e, const Weight& lambda, int max_len, int jobs) {
    return descent_check(e, lambda, max_len, jobs, false);
}

CheckReport verify_newlinkage(const LcfEngine& e, const Weight& lambda, int max_len, int jobs) {
    return descent_check(e, lambda, max_len, jobs, true);
}

CheckReport verify_tothe(const LcfEngine& e, const Weight& lambda, const Weight& mu, int max_len, int jobs) {
    const auto& g = e.group();
    const auto& ring = e.ring();
    if (!g.in_cminus(lambda)) throw std::invalid_argument("lambda " + lambda.str() + " is not a regular weight of C^-");
    const auto J = g.stabilizer_j(mu).J;
    const auto ws = g.enumerate_wplus(lambda, max_len);
    std::vector<Slot> slots(ws.size());
    std::vector<int> steinberg(ws.size(), 0);
    parallel_for(ws.size(), jobs, [&](std::size_t i) {
        const auto& w = ws[i];
        auto& part = slots[i].part;
        const auto image = translate(ring, g, lambda, mu, e.quantum_irred_char(w, lambda)).value;
        CharElem expected = CharElem::zero(Basis::Weyl);
        const char* source = "zero";
        if (g.is_min_coset_rep(w, J)) {
            const Weight gamma = g.dot(w, mu);
            bool independent = false;
            expected = e.quantum_steinberg_char(gamma, &independent);
            source = independent ? "steinberg" : "steinberg_lcf_restricted";
            steinberg[i] = independent ? 1 : 0;
        }
        ++part.checked;
        part.cases.push_back({word_of(g, w), source, image.str(), expected.str(), image == expected ? "ok" : "violation"});
        if (image != expected)
            part.violations.push_back({{"w", element_json(g, w)},
                                       {"translated", char_json(image)},
                                       {"expected", char_json(expected)},
                                       {"source", source}});
    });
    CheckReport r;
    r.case_columns = {"w", "target", "translated", "expected", "status"};
    for (const auto& s : slots) merge(r, s.part);
    int independent = 0;
    for (int k : steinberg) independent += k;
    r.notes["J"] = generator_set_json(g, J);
    r.notes["independent_targets"] = independent;
    return r;
}

CheckReport verify_tr(const LcfEngine& e, const Weight& lambda, const Weight& mu, int max_len, int jobs) {
    const auto& g = e.group();
    const auto& ring = e.ring();
    if (!g.in_cminus(lambda)) throw std::invalid_argument("lambda " + lambda.str() + " is not a regular weight of C^-");
    const auto J = g.stabilizer_j(mu).J;
    const auto wj = parabolic_elements(g, J);
    std::vector<AffineElement> ys;
    for (const auto& y : g.enumerate_wplus(lambda, max_len))
        if (g.is_min_coset_rep(y, J)) ys.push_back(y);
    std::vector<Slot> slots(ys.size());
    parallel_for(ys.size(), jobs, [&](std::size_t i) {
        const auto& y = ys[i];
        auto& part = slots[i].part;
        const auto target = ring.chi(g.dot(y, mu));
        CharElem sum = CharElem::zero(Basis::Weyl);
        for (const auto& x : wj) {
            const auto yx = g.multiply(y, x);
            const auto term = ring.chi(g.dot(yx, lambda));
            sum += term;
            const auto image = translate(ring, g, lambda, mu, term).value;
            ++part.checked;
            part.cases.push_back({"tr1", word_of(g, y), word_of(g, x), image == target ? "ok" : "violation"});
            if (image != target)
                part.violations.push_back({{"identity", "tr1"},
                                           {"y", element_json(g, y)},
                                           {"x", element_json(g, x)},
                                           {"translated", char_json(image)},
                                           {"expected", char_json(target)}});
        }
        const auto back = translate(ring, g, mu, lambda, target).value;
        ++part.checked;
        part.cases.push_back({"tr2", word_of(g, y), "", back == sum ? "ok" : "violation"});
        if (back != sum)
            part.violations.push_back({{"identity", "tr2"},
                                       {"y", element_json(g, y)},
                                       {"translated", char_json(back)},
                                       {"expected", char_json(sum)}});
    });
    CheckReport r;
    r.case_columns = {"identity", "y", "x", "status"};
    for (const auto& s : slots) merge(r, s.part);
    r.notes["J"] = generator_set_json(g, J);
    r.notes["W_J"] = wj.size();
    r.notes["cosets"] = ys.size();
    return r;
}

CheckReport verify_steinberg_dims(const LcfEngine& e, const Weight& lambda, int max_len) {
    const auto& g = e.group();
    const auto& ring = e.ring();
    CheckReport r;
    r.case_columns = {"w", "gamma", "dim_lcf", "dim_steinberg", "restricted_factor", "status"};
    int restricted_from_lcf = 0;
    for (const auto& w : g.enumerate_wplus(lambda, max_len)) {
        const Weight gamma = g.dot(w, lambda);
        const auto lcf = e.quantum_irred_char(w, lambda);
        bool independent = false;
        const auto st = e.quantum_steinberg_char(gamma, &independent);
        if (independent) ++r.checked;
        else ++restricted_from_lcf;
        const auto dl = ring.dim(lcf), ds = ring.dim(st);
        r.cases.push_back({word_of(g, w), gamma.str(), std::to_string(dl), std::to_string(ds), independent ? "weyl" : "lcf",
                           dl == ds && lcf == st ? "ok" : "violation"});
        if (dl != ds || lcf != st)
            r.violations.push_back({{"w", element_json(g, w)},
                                    {"gamma", weight_json(gamma)},
                                    {"dim_lcf", dl},
                                    {"dim_steinberg", ds},
                                    {"same_character", lcf == st},
                                    {"restricted_factor", independent ? "weyl" : "lcf"}});
    }
    r.notes["restricted_from_lcf"] = restricted_from_lcf;
    r.notes["eval"] = e.options().eval == KLEval::AtOne ? "P(1)" : "P(-1)";
    return r;
}

}  // namespace alcove
