#include "alcove/rootsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace alcove {

char series_letter(Series s) {
    switch (s) {
        case Series::A: return 'A';
        case Series::B: return 'B';
        case Series::C: return 'C';
        case Series::D: return 'D';
        case Series::E: return 'E';
        case Series::F: return 'F';
        case Series::G: return 'G';
    }
    return '?';
}

Series parse_series(const std::string& s) {
    if (s.size() == 1) {
        switch (s[0]) {
            case 'A': case 'a': return Series::A;
            case 'B': case 'b': return Series::B;
            case 'C': case 'c': return Series::C;
            case 'D': case 'd': return Series::D;
            case 'E': case 'e': return Series::E;
            case 'F': case 'f': return Series::F;
            case 'G': case 'g': return Series::G;
            default: break;
        }
    }
    throw std::invalid_argument("unknown root system series '" + s + "'");
}

namespace {

IntMatrix cartan_matrix(Series series, int n) {
    auto bad = [&] {
        return std::invalid_argument(std::string("unsupported root system ") + series_letter(series) +
                                     std::to_string(n) + " (rank must be at most " + std::to_string(kMaxRank) + ")");
    };
    if (n < 1 || n > kMaxRank) throw bad();
    IntMatrix a(n);
    for (int i = 0; i < n; ++i) a(i, i) = 2;
    auto chain = [&](int upto) {
        for (int i = 0; i + 1 < upto; ++i) a(i, i + 1) = a(i + 1, i) = -1;
    };
    switch (series) {
        case Series::A:
            chain(n);
            break;
        case Series::B:  // alpha_n short
            if (n < 2) throw bad();
            chain(n);
            a(n - 1, n - 2) = -2;
            break;
        case Series::C:  // alpha_n long
            if (n < 2) throw bad();
            chain(n);
            a(n - 2, n - 1) = -2;
            break;
        case Series::D:  // node 2 (index 1) is the branch point for D4
            if (n != 4) throw bad();
            a(0, 1) = a(1, 0) = -1;
            a(1, 2) = a(2, 1) = -1;
            a(1, 3) = a(3, 1) = -1;
            break;
        case Series::F:  // alpha_1, alpha_2 long
            if (n != 4) throw bad();
            chain(4);
            a(2, 1) = -2;
            break;
        case Series::G:  // alpha_1 short
            if (n != 2) throw bad();
            a(0, 1) = -3;
            a(1, 0) = -1;
            break;
        case Series::E:
            throw bad();
    }
    return a;
}

// d_i with d_i a_ij = d_j a_ji, smallest entry 1.
std::vector<int> symmetrize(const IntMatrix& a) {
    const int n = a.size();
    std::vector<std::int64_t> num(n, 0), den(n, 1);
    num[0] = 1;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int i = q.front();
        q.pop();
        for (int j = 0; j < n; ++j) {
            if (j == i || a(i, j) == 0 || num[j] != 0) continue;
            num[j] = num[i] * a(i, j);
            den[j] = den[i] * a(j, i);
            auto g = std::gcd(num[j], den[j]);
            num[j] /= g;
            den[j] /= g;
            if (den[j] < 0) { num[j] = -num[j]; den[j] = -den[j]; }
            q.push(j);
        }
    }
    std::int64_t l = 1;
    for (auto d : den) l = std::lcm(l, d);
    std::vector<std::int64_t> d(n);
    for (int i = 0; i < n; ++i) d[i] = num[i] * (l / den[i]);
    std::int64_t g = 0;
    for (auto x : d) g = std::gcd(g, x);
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = static_cast<int>(d[i] / g);
    return out;
}

}  // namespace

RootSystem RootSystem::build(Series series, int rank) {
    RootSystem rs;
    rs.series_ = series;
    rs.rank_ = rank;
    rs.cartan_ = cartan_matrix(series, rank);
    rs.adj_ = rs.cartan_.adjugate();
    rs.det_ = rs.cartan_.determinant();
    rs.symmetrizer_ = symmetrize(rs.cartan_);
    rs.enumerate_roots();
    rs.enumerate_weyl_group();
    return rs;
}

void RootSystem::enumerate_roots() {
    const int n = rank_;
    std::set<std::vector<int>> known;
    std::vector<std::vector<int>> all;
    std::vector<std::vector<int>> layer;
    for (int i = 0; i < n; ++i) {
        std::vector<int> k(n, 0);
        k[i] = 1;
        known.insert(k);
        layer.push_back(k);
    }
    auto weight_of = [&](const std::vector<int>& k) {
        Weight w(n);
        for (int i = 0; i < n; ++i) {
            int s = 0;
            for (int j = 0; j < n; ++j) s += cartan_(i, j) * k[j];
            w[i] = s;
        }
        return w;
    };
    while (!layer.empty()) {
        std::set<std::vector<int>> next;
        for (const auto& k : layer) {
            all.push_back(k);
            const Weight w = weight_of(k);
            for (int i = 0; i < n; ++i) {
                int r = 0;
                auto down = k;
                while (true) {
                    down[i] -= 1;
                    if (!known.count(down)) break;
                    ++r;
                }
                if (r - w[i] > 0) {
                    auto up = k;
                    up[i] += 1;
                    if (!known.count(up)) next.insert(up);
                }
            }
        }
        layer.assign(next.begin(), next.end());
        for (const auto& k : layer) known.insert(k);
    }

    std::sort(all.begin(), all.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        const int ha = std::accumulate(a.begin(), a.end(), 0);
        const int hb = std::accumulate(b.begin(), b.end(), 0);
        if (ha != hb) return ha < hb;
        return a > b;
    });

    roots_.clear();
    int best_coroot_height = -1;
    for (const auto& k : all) {
        PositiveRoot pr;
        pr.simple = k;
        pr.root = weight_of(k);
        pr.height = std::accumulate(k.begin(), k.end(), 0);
        // (beta, beta) / 2 in units where short roots have d = 1
        std::int64_t twice_d = 0;
        for (int j = 0; j < n; ++j) twice_d += static_cast<std::int64_t>(k[j]) * pr.root[j] * symmetrizer_[j];
        if (twice_d % 2 != 0) throw std::logic_error("root length not integral");
        const std::int64_t d_beta = twice_d / 2;
        pr.coroot.resize(n);
        int coroot_height = 0;
        for (int j = 0; j < n; ++j) {
            const std::int64_t c = static_cast<std::int64_t>(k[j]) * symmetrizer_[j];
            if (c % d_beta != 0) throw std::logic_error("coroot coefficients not integral");
            pr.coroot[j] = static_cast<int>(c / d_beta);
            coroot_height += pr.coroot[j];
        }
        if (coroot_height > best_coroot_height) {
            best_coroot_height = coroot_height;
            highest_coroot_ = static_cast<int>(roots_.size());
        }
        roots_.push_back(std::move(pr));
    }
    coxeter_number_ = 2 * num_positive_roots() / n;
}

void RootSystem::enumerate_weyl_group() {
    // elements are determined by w(rho); BFS by length over simple reflections
    weyl_group_.clear();
    std::unordered_set<Weight, WeightHash> seen;
    std::vector<FiniteWeylEntry> frontier{{rho(), 1, 0}};
    seen.insert(rho());
    while (!frontier.empty()) {
        std::vector<FiniteWeylEntry> next;
        for (const auto& e : frontier) {
            weyl_group_.push_back(e);
            for (int i = 0; i < rank_; ++i) {
                // left multiplication by s_i: w(rho) -> s_i w(rho)
                Weight img = e.rho_image - e.rho_image[i] * simple_root(i);
                if (seen.insert(img).second) next.push_back({img, -e.sign, e.length + 1});
            }
        }
        frontier = std::move(next);
    }
}

int RootSystem::pairing(const Weight& v, int beta) const {
    if (beta < 0 || beta >= num_positive_roots())
        throw std::out_of_range("positive root index " + std::to_string(beta) + " out of range");
    if (v.rank() != rank_) throw std::invalid_argument("weight rank does not match root system");
    return pairing_unchecked(v, beta);
}

IntMatrix RootSystem::simple_reflection_matrix(int i) const {
    // s_i(v) = v - v_i alpha_i
    IntMatrix m = IntMatrix::identity(rank_);
    const Weight a = simple_root(i);
    for (int r = 0; r < rank_; ++r) m(r, i) -= a[r];
    return m;
}

Weight RootSystem::reflect(const Weight& v, int beta) const {
    return v - pairing_unchecked(v, beta) * roots_[beta].root;
}

DominantRep RootSystem::dominant_representative(const Weight& v) const {
    Weight x = v + rho();
    int sign = 1;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 0; i < rank_; ++i) {
            if (x[i] < 0) {
                x -= x[i] * simple_root(i);
                sign = -sign;
                moved = true;
            }
        }
    }
    for (int i = 0; i < rank_; ++i)
        if (x[i] == 0) return {x - rho(), 0};
    return {x - rho(), sign};
}

Weight RootSystem::dominant_conjugate(const Weight& v) const {
    Weight x = v;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 0; i < rank_; ++i)
            if (x[i] < 0) {
                x -= x[i] * simple_root(i);
                moved = true;
            }
    }
    return x;
}

std::vector<Weight> RootSystem::finite_orbit(const Weight& v) const {
    std::vector<Weight> out{v};
    std::unordered_set<Weight, WeightHash> seen{v};
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (int i = 0; i < rank_; ++i) {
            const Weight x = out[k];
            if (x[i] == 0) continue;
            Weight y = x - x[i] * simple_root(i);
            if (seen.insert(y).second) out.push_back(y);
        }
    }
    return out;
}

std::optional<std::vector<int>> RootSystem::root_coordinates(const Weight& v) const {
    std::vector<int> k(rank_);
    for (int i = 0; i < rank_; ++i) {
        std::int64_t s = 0;
        for (int j = 0; j < rank_; ++j) s += static_cast<std::int64_t>(adj_(i, j)) * v[j];
        if (s % det_ != 0) return std::nullopt;
        k[i] = static_cast<int>(s / det_);
    }
    return k;
}

std::int64_t RootSystem::scaled_height(const Weight& v) const {
    std::int64_t s = 0;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) s += static_cast<std::int64_t>(adj_(i, j)) * v[j];
    return det_ > 0 ? s : -s;
}

bool RootSystem::dominance_leq(const Weight& a, const Weight& b) const {
    auto k = root_coordinates(b - a);
    if (!k) return false;
    return std::all_of(k->begin(), k->end(), [](int c) { return c >= 0; });
}

std::int64_t RootSystem::scaled_form(const Weight& a, const Weight& b) const {
    // (a, b) = sum_j k_j(b) a_j d_j with k(b) = cartan^{-1} b
    std::int64_t s = 0;
    for (int j = 0; j < rank_; ++j) {
        std::int64_t kb = 0;
        for (int l = 0; l < rank_; ++l) kb += static_cast<std::int64_t>(adj_(j, l)) * b[l];
        s += kb * a[j] * symmetrizer_[j];
    }
    return det_ > 0 ? s : -s;
}

std::int64_t RootSystem::weyl_dimension(const Weight& nu) const {
    if (!nu.is_dominant()) throw std::invalid_argument("weyl_dimension needs a dominant weight, got " + nu.str());
    __int128 num = 1, den = 1;
    const Weight shifted = nu + rho();
    const Weight r = rho();
    for (int b = 0; b < num_positive_roots(); ++b) {
        num *= pairing_unchecked(shifted, b);
        den *= pairing_unchecked(r, b);
        __int128 x = num, y = den;
        while (y != 0) {
            __int128 t = x % y;
            x = y;
            y = t;
        }
        num /= x;
        den /= x;
    }
    if (den != 1) throw std::logic_error("Weyl dimension not integral");
    return static_cast<std::int64_t>(num);
}

}  // namespace alcove
