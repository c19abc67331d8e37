#include "doctest.h"

#include <cstdio>
#include <memory>
#include <thread>

#include "alcove/klpoly.hpp"
#include "oracles.hpp"

using namespace alcove;

namespace {

std::shared_ptr<const AffineWeylGroup> group(Series s, int n, int p) {
    return std::make_shared<const AffineWeylGroup>(std::make_shared<const RootSystem>(RootSystem::build(s, n)), p);
}

}  // namespace

TEST_CASE("IntPoly arithmetic") {
    const IntPoly a{1, 2};
    const IntPoly b{-1, 0, 3};
    CHECK((a * b) == IntPoly{-1, -2, 3, 6});
    CHECK((a - a).is_zero());
    CHECK((a - a).degree() == -1);
    CHECK(IntPoly{0, 0, 0}.coeffs().empty());
    CHECK(b.eval(-1) == 2);
    CHECK(a.shifted(2) == IntPoly{0, 0, 1, 2});
    CHECK(a.reflected(3) == IntPoly{0, 0, 2, 1});
    CHECK(b.str() == "3q^2 - 1");
    CHECK(IntPoly{}.str() == "0");
}

TEST_CASE("KL examples") {
    auto g = group(Series::A, 1, 3);
    KLTable kl(g);
    for (const auto& w : g->elements_up_to(10)) {
        CHECK(kl.kl_poly(w, w) == IntPoly{1});
        for (const auto& y : g->elements_up_to(10)) {
            if (g->bruhat_leq(y, w)) {
                CHECK(kl.kl_poly(y, w) == IntPoly{1});
                CHECK(kl.kl_eval_minus_one(y, w) == 1);
            } else {
                CHECK(kl.kl_poly(y, w).is_zero());
                CHECK(kl.kl_eval_minus_one(y, w) == 0);
            }
        }
    }
}

TEST_CASE("R-polynomial examples") {
    auto g = group(Series::A, 2, 5);
    KLTable kl(g);
    for (const auto& w : g->elements_up_to(5))
        for (const auto& y : g->elements_up_to(5)) {
            const auto r = kl.r_poly(y, w);
            if (y == w) CHECK(r == IntPoly{1});
            else if (!g->bruhat_leq(y, w)) CHECK(r.is_zero());
            else if (w.length() - y.length() == 1) CHECK(r == IntPoly{-1, 1});
        }
}

TEST_CASE("KL polynomials agree with inversion of the R-polynomials") {
    for (auto [s, n, p, max_len] : {std::tuple{Series::A, 1, 3, 8}, {Series::A, 2, 3, 7}, {Series::B, 2, 5, 6},
                                    {Series::G, 2, 7, 6}}) {
        auto g = group(s, n, p);
        CAPTURE(g->roots().name());
        KLTable kl(g);
        oracle::KLFromR ref(*g);
        oracle::LeftR left(*g);
        const auto els = g->elements_up_to(max_len);
        for (const auto& w : els)
            for (const auto& y : g->lower_ideal(w)) {
                const auto P = kl.kl_poly(y, w);
                CHECK(P == ref(y, w));
                CHECK(kl.r_poly(y, w) == left(y, w));
                if (y != w) CHECK(P.degree() <= (w.length() - y.length() - 1) / 2);
                CHECK(P.coeff(0) == 1);
                for (auto c : P.coeffs()) CHECK(c >= 0);
                if (w.length() - y.length() <= 2) CHECK(P == IntPoly{1});
                for (Generator t : g->right_descent(w)) CHECK(kl.kl_poly_via(y, w, t) == P);
            }
    }
}

TEST_CASE("KL-R identity") {
    auto g = group(Series::A, 2, 3);
    KLTable kl(g);
    for (const auto& w : g->elements_up_to(6))
        for (const auto& y : g->lower_ideal(w)) {
            const int l = w.length() - y.length();
            IntPoly rhs;
            for (const auto& x : g->lower_ideal(w))
                if (x.length() > y.length() && g->bruhat_leq(y, x)) rhs += kl.r_poly(y, x) * kl.kl_poly(x, w);
            const auto P = kl.kl_poly(y, w);
            CHECK(P.reflected(l) - P == rhs);
        }
}

TEST_CASE("a non-trivial KL polynomial appears in affine A2") {
    auto g = group(Series::A, 2, 3);
    KLTable kl(g);
    bool found = false;
    for (const auto& w : g->elements_up_to(7))
        for (const auto& y : g->lower_ideal(w)) found |= kl.kl_poly(y, w).degree() >= 1;
    CHECK(found);
}

TEST_CASE("concurrent queries agree") {
    auto g = group(Series::B, 2, 5);
    KLTable shared(g), serial(g);
    const auto els = g->elements_up_to(7);
    std::vector<std::thread> pool;
    std::vector<std::vector<IntPoly>> got(4);
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (const auto& w : els)
                for (const auto& y : els) got[t].push_back(shared.kl_poly(y, w));
        });
    for (auto& th : pool) th.join();
    std::size_t i = 0;
    for (const auto& w : els)
        for (const auto& y : els) {
            const auto expect = serial.kl_poly(y, w);
            for (int t = 0; t < 4; ++t) CHECK(got[t][i] == expect);
            ++i;
        }
}

TEST_CASE("cache round trip") {
    auto g = group(Series::A, 2, 5);
    KLTable kl(g);
    for (const auto& w : g->elements_up_to(6))
        for (const auto& y : g->lower_ideal(w)) kl.kl_poly(y, w);
    const std::string path = "test_klpoly_cache.json";
    kl.save(path);
    KLTable fresh(group(Series::A, 2, 7));
    CHECK(fresh.load(path) == kl.size());
    for (const auto& w : g->elements_up_to(6))
        for (const auto& y : g->lower_ideal(w)) {
            const auto yy = fresh.group().from_alcove(y.alcove());
            const auto ww = fresh.group().from_alcove(w.alcove());
            CHECK(fresh.kl_poly(yy, ww) == kl.kl_poly(y, w));
        }
    KLTable other(group(Series::B, 2, 5));
    CHECK_THROWS_AS(other.load(path), std::runtime_error);
    CHECK(fresh.load("does_not_exist.json") == 0);
    std::remove(path.c_str());
}
