#include "alcove/weylaff.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace alcove {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

AffineWeylGroup::AffineWeylGroup(std::shared_ptr<const RootSystem> rs, int p) : rs_(std::move(rs)), p_(p) {
    if (!rs_) throw std::invalid_argument("null root system");
    if (p_ < 2) throw std::invalid_argument("p must be at least 2, got " + std::to_string(p_));
    const int n = rs_->rank();

    const int theta = rs_->highest_coroot_index();
    IntMatrix s0 = IntMatrix::identity(n);
    const Weight th = rs_->positive_roots()[theta].root;
    const auto& cv = rs_->positive_roots()[theta].coroot;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) s0(r, c) -= th[r] * cv[c];
    generators_.push_back(make(s0, -th));
    for (int i = 0; i < n; ++i) generators_.push_back(make(rs_->simple_reflection_matrix(i), rs_->zero()));

    // integral points of the closure of C^-: shifted coordinates x_i in [-p, 0]
    Weight x(n);
    for (int i = 0; i < n; ++i) x[i] = -p_;
    while (true) {
        const Weight v = x - rs_->rho();
        if (in_cminus_closure(v)) {
            cminus_closure_points_.push_back(v);
            if (in_cminus(v)) cminus_points_.push_back(v);
        }
        int i = n - 1;
        while (i >= 0 && x[i] == 0) x[i--] = -p_;
        if (i < 0) break;
        ++x[i];
    }
    std::sort(cminus_points_.begin(), cminus_points_.end());
    std::sort(cminus_closure_points_.begin(), cminus_closure_points_.end());
}

bool AffineWeylGroup::p_is_prime() const {
    if (p_ < 2) return false;
    for (int d = 2; d * d <= p_; ++d)
        if (p_ % d == 0) return false;
    return true;
}

Alcove AffineWeylGroup::alcove_of(const IntMatrix& linear, const Weight& translation) const {
    // image of the interior point -rho/h of C^- (at p = 1), scaled by h
    const int h = rs_->coxeter_number();
    const Weight y = linear.apply(-rs_->rho()) + h * translation;
    const int nr = rs_->num_positive_roots();
    Alcove a(nr);
    for (int b = 0; b < nr; ++b) a[b] = floor_div(rs_->pairing_unchecked(y, b), h) + 1;
    return a;
}

AffineElement AffineWeylGroup::make(const IntMatrix& linear, const Weight& translation) const {
    AffineElement e;
    e.linear_ = linear;
    e.translation_ = translation;
    e.alcove_ = alcove_of(linear, translation);
    e.p_ = p_;
    int l = 0;
    for (int m : e.alcove_) l += m < 0 ? -m : m;
    e.length_ = l;
    return e;
}

void AffineWeylGroup::check_same(const AffineElement& a) const {
    if (a.p_ != p_ || static_cast<int>(a.alcove_.size()) != rs_->num_positive_roots())
        throw std::invalid_argument("affine element belongs to a different group (p or root system mismatch)");
}

AffineElement AffineWeylGroup::identity() const { return make(IntMatrix::identity(rank()), rs_->zero()); }

const AffineElement& AffineWeylGroup::generator(Generator s) const {
    if (s < 0 || s >= num_generators()) throw std::out_of_range("generator index " + std::to_string(s));
    return generators_[s];
}

AffineElement AffineWeylGroup::multiply(const AffineElement& a, const AffineElement& b) const {
    check_same(a);
    check_same(b);
    return make(a.linear_ * b.linear_, a.linear_.apply(b.translation_) + a.translation_);
}

AffineElement AffineWeylGroup::right_multiply(const AffineElement& w, Generator s) const {
    return multiply(w, generator(s));
}

AffineElement AffineWeylGroup::inverse(const AffineElement& w) const {
    check_same(w);
    // (L, t)^{-1} = (L^{-1}, -L^{-1} t); det L = +-1
    const IntMatrix adj = w.linear_.adjugate();
    const auto det = w.linear_.determinant();
    IntMatrix inv(rank());
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) inv(i, j) = static_cast<int>(adj(i, j) * det);
    return make(inv, -inv.apply(w.translation_));
}

AffineElement AffineWeylGroup::from_word(std::span<const Generator> word) const {
    AffineElement w = identity();
    for (Generator s : word) w = right_multiply(w, s);
    return w;
}

AffineElement AffineWeylGroup::from_alcove(const Alcove& target) const {
    if (static_cast<int>(target.size()) != rs_->num_positive_roots())
        throw std::invalid_argument("alcove tuple has " + std::to_string(target.size()) + " entries, expected " +
                                    std::to_string(rs_->num_positive_roots()));
    auto distance = [&](const Alcove& a) {
        long d = 0;
        for (std::size_t i = 0; i < a.size(); ++i) d += std::labs(static_cast<long>(a[i]) - target[i]);
        return d;
    };
    // walk a gallery towards the target, crossing one separating wall per step
    AffineElement w = identity();
    long d = distance(w.alcove_);
    while (d > 0) {
        bool moved = false;
        for (Generator s = 0; s < num_generators(); ++s) {
            AffineElement ws = right_multiply(w, s);
            const long ds = distance(ws.alcove_);
            if (ds < d) {
                w = std::move(ws);
                d = ds;
                moved = true;
                break;
            }
        }
        if (!moved) throw std::invalid_argument("tuple is not a valid alcove");
    }
    return w;
}

AffineElement AffineWeylGroup::translation(const Weight& nu) const {
    if (!rs_->in_root_lattice(nu)) throw std::invalid_argument("translation " + nu.str() + " is not in the root lattice");
    return make(IntMatrix::identity(rank()), nu);
}

AffineElement AffineWeylGroup::longest_finite() const {
    AffineElement w = identity();
    bool grew = true;
    while (grew) {
        grew = false;
        for (Generator s = 1; s < num_generators(); ++s) {
            AffineElement ws = right_multiply(w, s);
            if (ws.length_ > w.length_) {
                w = std::move(ws);
                grew = true;
            }
        }
    }
    return w;
}

Weight AffineWeylGroup::shifted_apply(const AffineElement& w, const Weight& x) const {
    return w.linear_.apply(x) + p_ * w.translation_;
}

Weight AffineWeylGroup::dot(const AffineElement& w, const Weight& v) const {
    check_same(w);
    return shifted_apply(w, v + rs_->rho()) - rs_->rho();
}

Weight AffineWeylGroup::dot(std::span<const Generator> word, const Weight& v) const {
    Weight x = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) x = dot(generator(*it), x);
    return x;
}

bool AffineWeylGroup::is_right_descent(const AffineElement& w, Generator s) const {
    return right_multiply(w, s).length_ < w.length_;
}

GeneratorSet AffineWeylGroup::right_descent(const AffineElement& w) const {
    GeneratorSet out;
    for (Generator s = 0; s < num_generators(); ++s)
        if (is_right_descent(w, s)) out.push_back(s);
    return out;
}

std::vector<Generator> AffineWeylGroup::reduced_word(const AffineElement& w0) const {
    std::vector<Generator> word;
    AffineElement w = w0;
    while (w.length_ > 0) {
        for (Generator s = 0; s < num_generators(); ++s) {
            AffineElement ws = right_multiply(w, s);
            if (ws.length_ < w.length_) {
                word.push_back(s);
                w = std::move(ws);
                break;
            }
        }
    }
    std::reverse(word.begin(), word.end());
    return word;
}

bool AffineWeylGroup::canonical_less(const AffineElement& a, const AffineElement& b) const {
    if (a.length_ != b.length_) return a.length_ < b.length_;
    return reduced_word(a) < reduced_word(b);
}

bool AffineWeylGroup::bruhat_leq(const AffineElement& y, const AffineElement& w) const {
    check_same(y);
    check_same(w);
    if (y.length_ > w.length_) return false;
    if (y.length_ == w.length_) return y.alcove_ == w.alcove_;
    if (y.length_ == 0) return true;
    auto key = std::make_pair(y.alcove_, w.alcove_);
    {
        std::shared_lock lock(memo_mutex_);
        auto it = bruhat_memo_.find(key);
        if (it != bruhat_memo_.end()) return it->second;
    }
    // for s in R(w): y <= w iff min(y, ys) <= ws
    bool result = false;
    for (Generator s = 0; s < num_generators(); ++s) {
        AffineElement ws = right_multiply(w, s);
        if (ws.length_ > w.length_) continue;
        AffineElement ys = right_multiply(y, s);
        result = (ys.length_ < y.length_) ? bruhat_leq(ys, ws) : bruhat_leq(y, ws);
        break;
    }
    std::unique_lock lock(memo_mutex_);
    bruhat_memo_.emplace(std::move(key), result);
    return result;
}

const std::vector<AffineElement>& AffineWeylGroup::lower_ideal(const AffineElement& w) const {
    check_same(w);
    {
        std::shared_lock lock(memo_mutex_);
        auto it = ideal_memo_.find(w.alcove_);
        if (it != ideal_memo_.end()) return *it->second;
    }
    std::vector<AffineElement> out;
    if (w.length_ == 0) {
        out.push_back(w);
    } else {
        // {z <= w} = {z, zs : z <= ws} for s in R(w)
        Generator s = right_descent(w).front();
        const auto& below = lower_ideal(right_multiply(w, s));
        std::unordered_set<Alcove, AlcoveHash> seen;
        for (const auto& z : below) {
            if (seen.insert(z.alcove_).second) out.push_back(z);
            AffineElement zs = right_multiply(z, s);
            if (seen.insert(zs.alcove_).second) out.push_back(std::move(zs));
        }
        std::sort(out.begin(), out.end(), [](const AffineElement& a, const AffineElement& b) {
            if (a.length_ != b.length_) return a.length_ < b.length_;
            return a.alcove_ < b.alcove_;
        });
    }
    auto ptr = std::make_shared<const std::vector<AffineElement>>(std::move(out));
    std::unique_lock lock(memo_mutex_);
    auto [it, inserted] = ideal_memo_.emplace(w.alcove_, std::move(ptr));
    return *it->second;
}

std::vector<AffineElement> AffineWeylGroup::elements_up_to(int max_len) const {
    std::vector<AffineElement> all;
    if (max_len < 0) return all;
    std::unordered_set<Alcove, AlcoveHash> seen;
    std::vector<AffineElement> frontier{identity()};
    seen.insert(frontier.front().alcove_);
    for (int len = 0; len <= max_len && !frontier.empty(); ++len) {
        std::vector<AffineElement> next;
        for (const auto& w : frontier) {
            all.push_back(w);
            if (len == max_len) continue;
            for (Generator s = 0; s < num_generators(); ++s) {
                AffineElement ws = right_multiply(w, s);
                if (ws.length_ == len + 1 && seen.insert(ws.alcove_).second) next.push_back(std::move(ws));
            }
        }
        frontier = std::move(next);
    }
    std::vector<std::pair<std::vector<Generator>, std::size_t>> keys;
    keys.reserve(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) keys.emplace_back(reduced_word(all[i]), i);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    std::vector<AffineElement> sorted;
    sorted.reserve(all.size());
    for (const auto& k : keys) sorted.push_back(all[k.second]);
    return sorted;
}

bool AffineWeylGroup::in_cminus(const Weight& v) const {
    const Weight x = v + rs_->rho();
    for (int b = 0; b < rs_->num_positive_roots(); ++b) {
        const int c = rs_->pairing_unchecked(x, b);
        if (c <= -p_ || c >= 0) return false;
    }
    return true;
}

bool AffineWeylGroup::in_cminus_closure(const Weight& v) const {
    const Weight x = v + rs_->rho();
    for (int b = 0; b < rs_->num_positive_roots(); ++b) {
        const int c = rs_->pairing_unchecked(x, b);
        if (c < -p_ || c > 0) return false;
    }
    return true;
}

std::vector<Weight> AffineWeylGroup::alcove_points(const AffineElement& c, bool closed) const {
    check_same(c);
    const int n = rank();
    std::vector<Weight> out;
    Weight lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = (c.alcove_[i] - 1) * p_;
        hi[i] = c.alcove_[i] * p_;
    }
    Weight x = lo;
    while (true) {
        bool ok = true;
        for (int b = 0; b < rs_->num_positive_roots() && ok; ++b) {
            const int v = rs_->pairing_unchecked(x, b);
            const int l = (c.alcove_[b] - 1) * p_, u = c.alcove_[b] * p_;
            ok = closed ? (l <= v && v <= u) : (l < v && v < u);
        }
        if (ok) out.push_back(x - rs_->rho());
        int i = n - 1;
        while (i >= 0 && x[i] == hi[i]) {
            x[i] = lo[i];
            --i;
        }
        if (i < 0) break;
        ++x[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

Weight AffineWeylGroup::auto_lambda() const {
    if (cminus_points_.empty())
        throw std::domain_error("C^- contains no integral weights for p = " + std::to_string(p_) + " < h = " +
                                std::to_string(rs_->coxeter_number()));
    const int theta = rs_->highest_coroot_index();
    int best_depth = std::numeric_limits<int>::min();
    Weight best;
    for (const auto& v : cminus_points_) {  // sorted ascending, so the first maximum wins
        const Weight x = v + rs_->rho();
        int depth = rs_->pairing_unchecked(x, theta) + p_;
        for (int i = 0; i < rank(); ++i) depth = std::min(depth, -x[i]);
        if (depth > best_depth) {
            best_depth = depth;
            best = v;
        }
    }
    return best;
}

bool AffineWeylGroup::in_wplus(const AffineElement& w) const {
    check_same(w);
    if (cminus_points_.empty())
        throw std::domain_error("W+ is tested on C^- integral points, which need p >= h");
    {
        std::shared_lock lock(memo_mutex_);
        auto it = wplus_memo_.find(w.alcove_);
        if (it != wplus_memo_.end()) return it->second;
    }
    bool ok = std::all_of(cminus_points_.begin(), cminus_points_.end(),
                          [&](const Weight& g) { return dot(w, g).is_dominant(); });
    std::unique_lock lock(memo_mutex_);
    wplus_memo_.emplace(w.alcove_, ok);
    return ok;
}

std::vector<AffineElement> AffineWeylGroup::enumerate_wplus(const Weight& lambda, int max_len) const {
    if (cminus_points_.empty())
        throw std::domain_error("C^- contains no integral weights for p = " + std::to_string(p_) + " < h = " +
                                std::to_string(rs_->coxeter_number()));
    if (!in_cminus(lambda)) throw std::invalid_argument("lambda " + lambda.str() + " is not a regular weight in C^-");
    std::vector<AffineElement> out;
    for (auto& w : elements_up_to(max_len))
        if (in_wplus(w)) out.push_back(std::move(w));
    return out;
}

WallDescriptor AffineWeylGroup::stabilizer_j(const Weight& mu) const {
    if (!in_cminus_closure(mu)) throw std::invalid_argument("weight " + mu.str() + " is not in the closure of C^-");
    WallDescriptor d{mu, {}};
    for (Generator s = 0; s < num_generators(); ++s)
        if (dot(generator(s), mu) == mu) d.J.push_back(s);
    return d;
}

bool AffineWeylGroup::is_min_coset_rep(const AffineElement& w, const GeneratorSet& J) const {
    for (Generator s : J)
        if (is_right_descent(w, s)) return false;
    return true;
}

std::vector<WallDescriptor> AffineWeylGroup::single_walls() const {
    std::vector<WallDescriptor> out;
    for (Generator s = 0; s < num_generators(); ++s) {
        for (const auto& mu : cminus_closure_points_) {
            auto d = stabilizer_j(mu);
            if (d.J.size() == 1 && d.J.front() == s) {
                out.push_back(std::move(d));
                break;
            }
        }
    }
    return out;
}

Weight AffineWeylGroup::orbit_rep(const Weight& gamma) const {
    return linkage_class(gamma).mu;
}

LinkageClass AffineWeylGroup::linkage_class(const Weight& gamma) const {
    // reflect the shifted point through violated walls of C^- until it lies in the closure
    const int theta = rs_->highest_coroot_index();
    Weight x = gamma + rs_->rho();
    std::vector<Generator> word;
    while (true) {
        Generator hit = -1;
        for (int i = 0; i < rank(); ++i)
            if (x[i] > 0) {
                hit = i + 1;
                break;
            }
        if (hit < 0 && rs_->pairing_unchecked(x, theta) < -p_) hit = 0;
        if (hit < 0) break;
        x = shifted_apply(generators_[hit], x);
        word.push_back(hit);
    }
    LinkageClass lc{x - rs_->rho(), from_word(word)};
    const auto J = stabilizer_j(lc.mu).J;
    bool reduced = true;
    while (reduced) {
        reduced = false;
        for (Generator s : J) {
            AffineElement ws = right_multiply(lc.w, s);
            if (ws.length_ < lc.w.length_) {
                lc.w = std::move(ws);
                reduced = true;
            }
        }
    }
    return lc;
}

std::string AffineWeylGroup::word_string(std::span<const Generator> word) const {
    if (word.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) s += ",";
        s += generator_name(word[i]);
    }
    return s;
}

std::vector<Generator> AffineWeylGroup::parse_word(const std::string& text) const {
    std::vector<Generator> word;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                    token.end());
        if (token.empty() || token == "e") continue;
        // a token may hold several letters, as in "s1s0"
        std::size_t i = 0;
        while (i < token.size()) {
            if (token[i] != 's' && token[i] != 'S') throw std::invalid_argument("bad generator token '" + token + "'");
            std::size_t j = i + 1;
            int idx = 0;
            while (j < token.size() && std::isdigit(static_cast<unsigned char>(token[j]))) idx = idx * 10 + (token[j++] - '0');
            if (j == i + 1) throw std::invalid_argument("bad generator token '" + token + "'");
            if (idx >= num_generators())
                throw std::invalid_argument("generator s" + std::to_string(idx) + " out of range for " + rs_->name());
            word.push_back(idx);
            i = j;
        }
    }
    return word;
}

}  // namespace alcove
