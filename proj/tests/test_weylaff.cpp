#include "doctest.h"

#include <memory>
#include <set>

#include "alcove/weylaff.hpp"
#include "oracles.hpp"

using namespace alcove;

namespace {

std::shared_ptr<const RootSystem> rs_of(Series s, int n) { return std::make_shared<const RootSystem>(RootSystem::build(s, n)); }

AffineWeylGroup group(Series s, int n, int p) { return AffineWeylGroup(rs_of(s, n), p); }

std::vector<Generator> W(std::initializer_list<Generator> w) { return w; }

// Coxeter exponent m(s, t) from the product of the pairings of the two reflection roots
int coxeter_m(int a) {
    switch (a) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
        default: return 0;
    }
}

}  // namespace

TEST_CASE("generators of A1 and A2") {
    auto g = group(Series::A, 1, 3);
    REQUIRE(g.generators().size() == 2);
    CHECK(g.dot(g.generator(1), Weight{-1}) == Weight{-1});
    CHECK(g.dot(g.generator(0), Weight{-4}) == Weight{-4});
    CHECK(g.dot(g.generator(0), Weight{-1}) == Weight{-7});
    auto g2 = group(Series::A, 2, 5);
    CHECK(g2.generators().size() == 3);
    for (const auto* gr : {&g, &g2})
        for (const auto& s : gr->generators()) {
            CHECK(s.length() == 1);
            CHECK(gr->multiply(s, s).is_identity());
        }
    CHECK_THROWS_AS(group(Series::A, 1, 1), std::invalid_argument);
}

TEST_CASE("dot action examples") {
    auto g = group(Series::A, 1, 3);
    CHECK(g.dot(W({1}), Weight{-3}) == Weight{1});
    CHECK(g.dot(W({1, 0, 1, 0}), Weight{-3}) == Weight{9});
    CHECK(g.dot(g.from_word(W({1, 0, 1, 0})), Weight{-3}) == Weight{9});
    // stepwise -3 -> -5 -> 3 -> -11 -> 9, applying s0 first
    CHECK(g.dot(W({0}), Weight{-3}) == Weight{-5});
    CHECK(g.dot(W({1, 0}), Weight{-3}) == Weight{3});
    CHECK(g.dot(W({0, 1, 0}), Weight{-3}) == Weight{-11});
}

TEST_CASE("multiply, inverse and alcoves") {
    auto g = group(Series::A, 1, 3);
    const auto s1s0 = g.from_word(W({1, 0}));
    CHECK(s1s0.alcove() == Alcove{2});
    CHECK(g.multiply(s1s0, g.identity()) == s1s0);
    CHECK(g.multiply(g.generator(0), g.generator(0)) == g.identity());
    CHECK(g.identity().alcove() == Alcove{0});
    CHECK(g.longest_finite().alcove() == Alcove{1});
    const auto pts = g.alcove_points(s1s0, false);
    // shifted coordinates strictly inside (3, 6)
    CHECK(pts == std::vector<Weight>{Weight{3}, Weight{4}});

    auto other = group(Series::A, 1, 5);
    CHECK_THROWS_AS(g.multiply(s1s0, other.generator(0)), std::invalid_argument);
    auto a2 = group(Series::A, 2, 3);
    CHECK_THROWS_AS(g.multiply(s1s0, a2.generator(0)), std::invalid_argument);
}

TEST_CASE("group laws and Coxeter relations") {
    for (auto [s, n, p] : {std::tuple{Series::A, 2, 3}, {Series::B, 2, 5}, {Series::G, 2, 7}, {Series::C, 3, 7},
                           {Series::A, 3, 5}}) {
        auto g = group(s, n, p);
        CAPTURE(g.roots().name());
        const auto els = g.elements_up_to(4);
        for (std::size_t i = 0; i < els.size(); i += 3)
            for (std::size_t j = 0; j < els.size(); j += 5) {
                const auto& a = els[i];
                const auto& b = els[j];
                const auto& c = els[(i + j) % els.size()];
                CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
                CHECK(g.multiply(a, g.inverse(a)).is_identity());
                const Weight v = (static_cast<int>(j) - 3) * g.roots().rho();
                CHECK(g.dot(g.multiply(a, b), v) == g.dot(a, g.dot(b, v)));
                CHECK(g.dot(a, g.dot(g.inverse(a), v)) == v);
            }
        // Coxeter exponents of the affine Dynkin diagram
        const auto& rs = g.roots();
        auto reflection_root = [&](Generator t) {
            return t == 0 ? rs.highest_coroot_index() : t - 1;
        };
        for (Generator a = 0; a < g.num_generators(); ++a)
            for (Generator b = a + 1; b < g.num_generators(); ++b) {
                const int ra = reflection_root(a), rb = reflection_root(b);
                const int prod = rs.pairing(rs.positive_roots()[ra].root, rb) * rs.pairing(rs.positive_roots()[rb].root, ra);
                const int m = coxeter_m(prod);
                REQUIRE(m > 0);
                const auto st = g.multiply(g.generator(a), g.generator(b));
                AffineElement power = g.identity();
                int order = 0;
                do {
                    power = g.multiply(power, st);
                    ++order;
                } while (!power.is_identity() && order < 20);
                CHECK(order == m);
            }
    }
}

TEST_CASE("length examples and d-prime") {
    auto g = group(Series::A, 1, 3);
    CHECK(g.identity().length() == 0);
    CHECK(g.from_word(W({1, 0})).length() == 2);
    for (const auto& s : g.generators()) CHECK(s.length() == 1);
}

TEST_CASE("length is Cayley-graph distance and counts separating hyperplanes") {
    for (auto [s, n, p] : {std::tuple{Series::A, 1, 3}, {Series::A, 2, 3}, {Series::B, 2, 5}, {Series::G, 2, 7},
                           {Series::A, 3, 5}, {Series::C, 3, 7}}) {
        auto g = group(s, n, p);
        CAPTURE(g.roots().name());
        const int max_len = n <= 2 ? 10 : 6;
        const auto dist = oracle::cayley_distances(g, max_len);
        const auto els = g.elements_up_to(max_len);
        CHECK(els.size() == dist.size());
        const int h = g.roots().coxeter_number();
        for (const auto& w : els) {
            auto it = dist.find(oracle::raw_key(w));
            REQUIRE(it != dist.end());
            CHECK(w.length() == it->second);
            CHECK(static_cast<int>(g.reduced_word(w).size()) == w.length());
            CHECK(g.from_word(g.reduced_word(w)) == w);
            // an interior point of C^-, scaled by h, transported by w
            const Weight a = (-p) * g.roots().rho();
            const Weight b = w.linear().apply(a) + (h * p) * w.translation();
            CHECK(oracle::hyperplanes_between(g.roots(), p, a, b, h) == w.length());
            for (Generator t = 0; t < g.num_generators(); ++t) {
                const int d = g.right_multiply(w, t).length() - w.length();
                CHECK((d == 1 || d == -1));
            }
        }
    }
}

TEST_CASE("right descent sets") {
    auto g = group(Series::A, 1, 3);
    CHECK(g.right_descent(g.identity()).empty());
    CHECK(g.right_descent(g.from_word(W({1, 0, 1, 0}))) == GeneratorSet{0});
    for (auto [s, n, p] : {std::tuple{Series::A, 1, 3}, {Series::A, 2, 3}, {Series::B, 2, 5}, {Series::G, 2, 7}}) {
        auto gr = group(s, n, p);
        // the longest finite element has the finite generators as descents
        GeneratorSet finite;
        for (int i = 1; i <= n; ++i) finite.push_back(i);
        CHECK(gr.right_descent(gr.longest_finite()) == finite);
        CHECK(gr.longest_finite().length() == gr.roots().num_positive_roots());
    }
}

TEST_CASE("Bruhat order agrees with the subword property") {
    auto g = group(Series::A, 1, 3);
    CHECK(g.bruhat_leq(g.generator(1), g.from_word(W({1, 0, 1}))));
    CHECK_FALSE(g.bruhat_leq(g.from_word(W({0, 1})), g.from_word(W({1, 0}))));
    for (auto [s, n, p, max_len] : {std::tuple{Series::A, 1, 3, 8}, {Series::A, 2, 3, 8}, {Series::B, 2, 5, 8},
                                    {Series::G, 2, 7, 8}, {Series::A, 3, 5, 5}}) {
        auto gr = group(s, n, p);
        CAPTURE(gr.roots().name());
        const auto els = gr.elements_up_to(max_len);
        const std::size_t stride = els.size() > 200 ? els.size() / 120 : 1;
        for (std::size_t i = 0; i < els.size(); i += stride) {
            const auto& w = els[i];
            const auto ideal = oracle::subword_ideal(gr, gr.reduced_word(w));
            for (const auto& y : els) {
                const bool expect = ideal.count(y.alcove()) > 0;
                CHECK(gr.bruhat_leq(y, w) == expect);
                if (expect) CHECK(y.length() <= w.length());
            }
            const auto& lower = gr.lower_ideal(w);
            std::set<Alcove> got;
            for (const auto& y : lower) got.insert(y.alcove());
            CHECK(got == ideal);
            CHECK(gr.bruhat_leq(gr.identity(), w));
        }
    }
}

TEST_CASE("W+ enumeration") {
    auto g = group(Series::A, 1, 3);
    const Weight lambda{-3};
    const auto wp = g.enumerate_wplus(lambda, 4);
    REQUIRE(wp.size() == 4);
    std::vector<Weight> images;
    for (std::size_t i = 0; i < wp.size(); ++i) {
        CHECK(wp[i].length() == static_cast<int>(i) + 1);
        images.push_back(g.dot(wp[i], lambda));
    }
    CHECK(images == std::vector<Weight>{Weight{1}, Weight{3}, Weight{7}, Weight{9}});
    CHECK_FALSE(g.in_wplus(g.identity()));
    CHECK_THROWS_AS(g.enumerate_wplus(Weight{-1}, 3), std::invalid_argument);

    auto small = group(Series::A, 2, 2);
    CHECK_THROWS_AS(small.enumerate_wplus(Weight{-1, -1}, 3), std::domain_error);

    // W+ elements send every point of C^- into the dominant chamber
    auto a2 = group(Series::A, 2, 5);
    for (const auto& w : a2.enumerate_wplus(a2.auto_lambda(), 6))
        for (const auto& gamma : a2.cminus_points()) CHECK(a2.dot(w, gamma).is_dominant());
}

TEST_CASE("stabilizers and minimal coset representatives") {
    auto g = group(Series::A, 1, 3);
    CHECK(g.stabilizer_j(Weight{-3}).J.empty());
    CHECK(g.stabilizer_j(Weight{-1}).J == GeneratorSet{1});
    CHECK(g.stabilizer_j(Weight{-4}).J == GeneratorSet{0});
    CHECK_THROWS_AS(g.stabilizer_j(Weight{0}), std::invalid_argument);
    const GeneratorSet J{1};
    CHECK(g.is_min_coset_rep(g.identity(), J));
    CHECK(g.is_min_coset_rep(g.from_word(W({1, 0})), J));
    CHECK_FALSE(g.is_min_coset_rep(g.generator(1), J));

    for (auto [s, n, p] : {std::tuple{Series::A, 2, 3}, {Series::B, 2, 5}, {Series::G, 2, 7}}) {
        auto gr = group(s, n, p);
        for (const auto& mu : gr.cminus_closure_points()) {
            const auto d = gr.stabilizer_j(mu);
            CHECK(static_cast<int>(d.J.size()) < gr.num_generators());
            for (Generator t = 0; t < gr.num_generators(); ++t) {
                const bool fixes = gr.dot(gr.generator(t), mu) == mu;
                CHECK(fixes == std::binary_search(d.J.begin(), d.J.end(), t));
            }
            if (d.J.size() != 1) continue;
            const auto& x = gr.generator(d.J.front());
            for (const auto& w : gr.elements_up_to(5))
                if (gr.is_min_coset_rep(w, d.J)) CHECK(gr.multiply(w, x).length() == w.length() + 1);
        }
    }
}

TEST_CASE("linkage classes") {
    auto g = group(Series::A, 1, 3);
    auto lc = g.linkage_class(Weight{9});
    CHECK(lc.mu == Weight{-3});
    CHECK(lc.w == g.from_word(W({1, 0, 1, 0})));
    lc = g.linkage_class(Weight{5});
    CHECK(lc.mu == Weight{-1});
    CHECK(lc.w == g.from_word(W({1, 0})));
    CHECK(g.reduced_word(lc.w) == W({1, 0}));

    for (auto [s, n, p] : {std::tuple{Series::A, 2, 3}, {Series::B, 2, 5}, {Series::G, 2, 7}, {Series::A, 3, 5}}) {
        auto gr = group(s, n, p);
        CAPTURE(gr.roots().name());
        // partition: the orbit walk from each closure point reaches only weights classified back to it
        std::set<Weight> covered;
        for (const auto& mu : gr.cminus_closure_points()) {
            const auto J = gr.stabilizer_j(mu).J;
            for (const auto& w : gr.elements_up_to(n <= 2 ? 6 : 4)) {
                const Weight gamma = gr.dot(w, mu);
                const auto c = gr.linkage_class(gamma);
                CHECK(c.mu == mu);
                CHECK(gr.dot(c.w, mu) == gamma);
                CHECK(gr.is_min_coset_rep(c.w, J));
                CHECK(c.w.length() <= w.length());
                if (gr.is_min_coset_rep(w, J)) CHECK(c.w == w);
            }
        }
        CHECK(gr.orbit_rep(gr.roots().zero()) == gr.linkage_class(gr.roots().zero()).mu);
    }
}

TEST_CASE("word parsing and printing") {
    auto g = group(Series::A, 2, 3);
    CHECK(g.parse_word("s1,s0, s2") == W({1, 0, 2}));
    CHECK(g.parse_word("e").empty());
    CHECK(g.parse_word("").empty());
    CHECK(g.word_string(W({1, 0})) == "s1,s0");
    CHECK(g.word_string(W({})) == "e");
    CHECK_THROWS_AS(g.parse_word("s3"), std::invalid_argument);
    CHECK_THROWS_AS(g.parse_word("t1"), std::invalid_argument);
    CHECK_THROWS_AS(g.from_alcove(Alcove{1, 0}), std::invalid_argument);
    for (const auto& w : g.elements_up_to(5)) CHECK(g.from_alcove(w.alcove()) == w);
    CHECK_THROWS_AS(g.from_alcove(Alcove{1, 1, -1}), std::invalid_argument);
}

TEST_CASE("auto lambda") {
    CHECK(group(Series::A, 1, 3).auto_lambda() == Weight{-3});
    auto a2 = group(Series::A, 2, 5);
    CHECK(a2.in_cminus(a2.auto_lambda()));
    CHECK_THROWS_AS(group(Series::G, 2, 5).auto_lambda(), std::domain_error);
}
