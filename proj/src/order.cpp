#include "alcove/order.hpp"

#include <array>
#include <deque>
#include <map>
#include <unordered_set>

namespace alcove {

OrderContext OrderContext::cminus(std::shared_ptr<const AffineWeylGroup> g) {
    auto base = g->identity();
    return {std::move(g), std::move(base)};
}

OrderContext OrderContext::cplus(std::shared_ptr<const AffineWeylGroup> g) {
    auto base = g->longest_finite();
    return {std::move(g), std::move(base)};
}

namespace {

void check_alcove(const Alcove& a, const OrderContext& ctx) {
    if (a.size() != ctx.base.alcove().size())
        throw std::invalid_argument("alcove has " + std::to_string(a.size()) + " entries, base alcove has " +
                                    std::to_string(ctx.base.alcove().size()));
}

struct KeyHash {
    std::size_t operator()(const std::array<int, 4>& a) const {
        std::size_t h = 0;
        for (int x : a) h = h * 1000003u ^ static_cast<std::size_t>(static_cast<unsigned>(x));
        return h;
    }
};

int positive_mod(int a, int p) {
    const int r = a % p;
    return r < 0 ? r + p : r;
}

}  // namespace

int d_signed(const Alcove& other, const OrderContext& ctx) {
    check_alcove(other, ctx);
    int d = 0;
    for (std::size_t b = 0; b < other.size(); ++b) d += other[b] - ctx.base.alcove()[b];
    return d;
}

int d_abs(const Alcove& other, const OrderContext& ctx) {
    check_alcove(other, ctx);
    int d = 0;
    for (std::size_t b = 0; b < other.size(); ++b) d += std::abs(other[b] - ctx.base.alcove()[b]);
    return d;
}

bool uparrow_leq(const AffineWeylGroup& g, const Weight& gamma, const Weight& target, std::int64_t budget) {
    if (gamma == target) return true;
    const auto& rs = g.roots();
    const auto diff = rs.root_coordinates(target - gamma);
    if (!diff) return false;
    const int n = rs.rank();
    for (int i = 0; i < n; ++i)
        if ((*diff)[i] < 0) return false;

    // search in simple-root coordinates a, with delta = gamma + sum a_i alpha_i
    const int nr = rs.num_positive_roots();
    const int p = g.p();
    std::vector<int> base(nr);
    std::vector<std::array<int, 4>> shift(nr);
    for (int b = 0; b < nr; ++b) {
        base[b] = rs.pairing_unchecked(gamma + rs.rho(), b);
        for (int i = 0; i < n; ++i) shift[b][i] = rs.pairing_unchecked(rs.simple_root(i), b);
    }
    std::array<int, 4> goal{};
    for (int i = 0; i < n; ++i) goal[i] = (*diff)[i];

    std::unordered_set<std::array<int, 4>, KeyHash> seen;
    std::deque<std::array<int, 4>> queue{std::array<int, 4>{}};
    seen.insert(queue.front());
    std::int64_t expanded = 0;
    while (!queue.empty()) {
        const auto a = queue.front();
        queue.pop_front();
        if (++expanded > budget)
            throw SearchBoundExceeded("uparrow search from " + gamma.str() + " to " + target.str() + " exceeded " +
                                      std::to_string(budget) + " nodes");
        for (int b = 0; b < nr; ++b) {
            int c = base[b];
            for (int i = 0; i < n; ++i) c += a[i] * shift[b][i];
            // s_{beta,mp}.delta = delta + k beta with k = mp - <delta + rho, beta^vee> > 0
            int k = positive_mod(-c, p);
            if (k == 0) k = p;
            const auto& coeff = rs.positive_roots()[b].simple;
            for (;; k += p) {
                std::array<int, 4> next = a;
                bool inside = true;
                for (int i = 0; i < n; ++i) {
                    next[i] += k * coeff[i];
                    inside &= next[i] <= goal[i];
                }
                if (!inside) break;
                if (next == goal) return true;
                if (seen.insert(next).second) queue.push_back(next);
            }
        }
    }
    return false;
}

bool leq_C(const Weight& lambda, const Weight& mu, const OrderContext& ctx) {
    const auto& g = *ctx.group;
    // conjugating by the base element identifies (W_p, S_p(C)) with (W_p, S_p(C^-))
    const auto cinv = g.inverse(ctx.base);
    const auto a = g.linkage_class(g.dot(cinv, lambda));
    const auto b = g.linkage_class(g.dot(cinv, mu));
    if (a.mu != b.mu) return false;
    return g.bruhat_leq(a.w, b.w);
}

bool in_shifted_dominant_region(const Weight& gamma, const OrderContext& ctx) {
    for (const auto& c : ctx.group->alcove_points(ctx.base, true))
        if ((gamma - c).is_dominant()) return true;
    return false;
}

CheckReport check_ordersame(int box_radius, const OrderContext& ctx, int jobs) {
    CheckReport report;
    if (box_radius < 0) return report;
    const auto& g = *ctx.group;
    const int n = g.rank();
    const auto cinv = g.inverse(ctx.base);

    struct Point {
        Weight v;
        LinkageClass lc;
        bool inside;
    };
    std::map<Weight, std::vector<Point>> orbits;
    Weight v(n);
    for (int i = 0; i < n; ++i) v[i] = -box_radius;
    while (true) {
        auto lc = g.linkage_class(g.dot(cinv, v));
        auto rep = lc.mu;
        orbits[rep].push_back({v, std::move(lc), in_shifted_dominant_region(v, ctx)});
        int i = n - 1;
        while (i >= 0 && v[i] == box_radius) v[i--] = -box_radius;
        if (i < 0) break;
        ++v[i];
    }

    std::vector<std::pair<const Point*, const Point*>> pairs;
    for (const auto& [rep, pts] : orbits)
        for (const auto& a : pts)
            for (const auto& b : pts)
                if (a.v != b.v) pairs.emplace_back(&a, &b);

    struct Outcome {
        bool leq = false, up = false;
    };
    std::vector<Outcome> out(pairs.size());
    parallel_for(pairs.size(), jobs, [&](std::size_t i) {
        const auto& [a, b] = pairs[i];
        out[i].leq = g.bruhat_leq(a->lc.w, b->lc.w);
        out[i].up = uparrow_leq(g, a->v, b->v);
    });

    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::tie(pairs[x].first->v, pairs[x].second->v) < std::tie(pairs[y].first->v, pairs[y].second->v);
    });
    report.case_columns = {"lambda", "mu", "leq_C", "uparrow", "status"};
    for (std::size_t i : order) {
        const auto& [a, b] = pairs[i];
        const bool inside = a->inside && b->inside;
        if (inside) ++report.checked;
        else ++report.skipped;
        const bool same = out[i].leq == out[i].up;
        report.cases.push_back({a->v.str(), b->v.str(), out[i].leq ? "1" : "0", out[i].up ? "1" : "0",
                                !inside ? (same ? "skipped" : "boundary") : (same ? "ok" : "violation")});
        if (same) continue;
        json entry;
        entry["lambda"] = weight_json(a->v);
        entry["mu"] = weight_json(b->v);
        entry["leq_C"] = out[i].leq;
        entry["uparrow"] = out[i].up;
        (inside ? report.violations : report.boundary_cases).push_back(std::move(entry));
    }
    return report;
}

CheckReport translation_descent_check(const AffineWeylGroup& g, const Weight& nu, int max_len) {
    CheckReport report;
    const auto t = g.translation(nu);
    if (nu.is_zero()) return report;
    const Weight lambda = g.auto_lambda();
    report.case_columns = {"w", "tw", "R_w", "R_tw", "status"};
    for (const auto& w : g.enumerate_wplus(lambda, max_len)) {
        const auto tw = g.multiply(t, w);
        const auto ww = g.word_string(g.reduced_word(w)), tww = g.word_string(g.reduced_word(tw));
        if (!g.in_wplus(tw)) {
            ++report.skipped;
            report.cases.push_back({ww, tww, "", "", "skipped"});
            continue;
        }
        ++report.checked;
        const auto rw = g.right_descent(w);
        const auto rtw = g.right_descent(tw);
        report.cases.push_back({ww, tww, generator_set_string(g, rw), generator_set_string(g, rtw), rw == rtw ? "ok" : "violation"});
        if (rw == rtw) continue;
        json entry;
        entry["w"] = element_json(g, w);
        entry["tw"] = element_json(g, tw);
        entry["weight"] = weight_json(g.dot(w, lambda));
        entry["translated_weight"] = weight_json(g.dot(tw, lambda));
        entry["R_w"] = generator_set_json(g, rw);
        entry["R_tw"] = generator_set_json(g, rtw);
        report.violations.push_back(std::move(entry));
    }
    return report;
}

CheckReport check_length_law(const AffineWeylGroup& g, int max_len) {
    CheckReport report;
    if (max_len < 0) return report;
    const auto ctx = OrderContext{nullptr, g.identity()};
    // word length by breadth-first search in the Cayley graph, keyed by the affine map itself
    auto key = [&](const AffineElement& w) {
        std::vector<int> k;
        for (int i = 0; i < g.rank(); ++i)
            for (int j = 0; j < g.rank(); ++j) k.push_back(w.linear()(i, j));
        for (int i = 0; i < g.rank(); ++i) k.push_back(w.translation()[i]);
        return k;
    };
    std::map<std::vector<int>, int> dist;
    std::vector<AffineElement> frontier{g.identity()};
    dist[key(frontier.front())] = 0;
    report.case_columns = {"word", "length", "d_prime", "status"};
    for (int d = 0; d <= max_len; ++d) {
        std::vector<AffineElement> next;
        for (const auto& w : frontier) {
            ++report.checked;
            const int dp = d_abs(w.alcove(), ctx);
            report.cases.push_back({g.word_string(g.reduced_word(w)), std::to_string(d), std::to_string(dp), dp == d ? "ok" : "violation"});
            if (dp != d) {
                json entry;
                entry["element"] = element_json(g, w);
                entry["word_length"] = d;
                entry["d_prime"] = dp;
                report.violations.push_back(std::move(entry));
            }
            if (d == max_len) continue;
            for (Generator s = 0; s < g.num_generators(); ++s) {
                auto ws = g.right_multiply(w, s);
                if (dist.emplace(key(ws), d + 1).second) next.push_back(std::move(ws));
            }
        }
        frontier = std::move(next);
    }
    return report;
}

}  // namespace alcove
