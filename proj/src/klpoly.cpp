#include "alcove/klpoly.hpp"

#include <fstream>
#include <mutex>
#include <stdexcept>

#include "alcove/report.hpp"

namespace alcove {

namespace {
constexpr int kCacheVersion = 1;
}

KLTable::KLTable(std::shared_ptr<const AffineWeylGroup> group) : group_(std::move(group)) {
    if (!group_) throw std::invalid_argument("null group");
}

IntPoly KLTable::kl_poly(const AffineElement& y, const AffineElement& w) const {
    const auto& g = *group_;
    if (!g.bruhat_leq(y, w)) return {};
    if (y.length() == w.length()) return IntPoly::constant(1);
    auto key = std::make_pair(y.alcove(), w.alcove());
    {
        std::shared_lock lock(mutex_);
        auto it = p_memo_.find(key);
        if (it != p_memo_.end()) return it->second;
    }
    const auto desc = g.right_descent(w);
    IntPoly result;
    // P_{y,w} = P_{ys,w} for s in R(w) with ys > y
    Generator up = -1;
    for (Generator s : desc)
        if (!g.is_right_descent(y, s)) {
            up = s;
            break;
        }
    if (up >= 0) result = kl_poly(g.right_multiply(y, up), w);
    else result = compute(y, w, desc.front());
    std::unique_lock lock(mutex_);
    p_memo_.emplace(std::move(key), result);
    return result;
}

IntPoly KLTable::kl_poly_via(const AffineElement& y, const AffineElement& w, Generator s) const {
    if (!group_->is_right_descent(w, s)) throw std::invalid_argument("generator is not a right descent of w");
    if (!group_->bruhat_leq(y, w)) return {};
    if (y.length() == w.length()) return IntPoly::constant(1);
    return compute(y, w, s);
}

IntPoly KLTable::compute(const AffineElement& y, const AffineElement& w, Generator s) const {
    const auto& g = *group_;
    const auto v = g.right_multiply(w, s);
    const auto ys = g.right_multiply(y, s);
    const int c = ys.length() < y.length() ? 1 : 0;
    IntPoly result = kl_poly(ys, v).shifted(1 - c) + kl_poly(y, v).shifted(c);
    for (const auto& z : g.lower_ideal(v)) {
        if (z.length() >= v.length() || z.length() < y.length()) continue;
        if (!g.is_right_descent(z, s)) continue;
        const std::int64_t m = mu(z, v);
        if (m == 0 || !g.bruhat_leq(y, z)) continue;
        result -= m * kl_poly(y, z).shifted((w.length() - z.length()) / 2);
    }
    return result;
}

std::int64_t KLTable::mu(const AffineElement& y, const AffineElement& w) const {
    const int d = w.length() - y.length();
    if (d <= 0 || d % 2 == 0) return 0;
    return kl_poly(y, w).coeff((d - 1) / 2);
}

std::int64_t KLTable::kl_eval_minus_one(const AffineElement& y, const AffineElement& w) const {
    return kl_poly(y, w).eval(-1);
}

std::int64_t KLTable::kl_eval_one(const AffineElement& y, const AffineElement& w) const { return kl_poly(y, w).eval(1); }

IntPoly KLTable::r_poly(const AffineElement& y, const AffineElement& w) const {
    const auto& g = *group_;
    if (!g.bruhat_leq(y, w)) return {};
    if (y.length() == w.length()) return IntPoly::constant(1);
    auto key = std::make_pair(y.alcove(), w.alcove());
    {
        std::shared_lock lock(mutex_);
        auto it = r_memo_.find(key);
        if (it != r_memo_.end()) return it->second;
    }
    const Generator s = g.right_descent(w).front();
    const auto ws = g.right_multiply(w, s);
    const auto ys = g.right_multiply(y, s);
    IntPoly result;
    if (ys.length() < y.length()) result = r_poly(ys, ws);
    else result = IntPoly{-1, 1} * r_poly(y, ws) + r_poly(ys, ws).shifted(1);
    std::unique_lock lock(mutex_);
    r_memo_.emplace(std::move(key), result);
    return result;
}

std::size_t KLTable::size() const {
    std::shared_lock lock(mutex_);
    return p_memo_.size();
}

void KLTable::save(const std::string& path) const {
    json j;
    j["version"] = kCacheVersion;
    j["type"] = std::string(1, series_letter(group_->roots().series()));
    j["rank"] = group_->rank();
    std::vector<std::pair<std::pair<Alcove, Alcove>, IntPoly>> entries;
    {
        std::shared_lock lock(mutex_);
        entries.assign(p_memo_.begin(), p_memo_.end());
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    json pairs = json::array();
    for (const auto& [k, poly] : entries) pairs.push_back({{"y", k.first}, {"w", k.second}, {"coeffs", poly.coeffs()}});
    j["pairs"] = std::move(pairs);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write cache file " + path);
    out << j.dump() << '\n';
}

std::size_t KLTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return 0;
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error("corrupt cache file " + path + ": " + e.what());
    }
    if (j.value("version", 0) != kCacheVersion) throw std::runtime_error("unsupported cache version in " + path);
    if (j.at("type").get<std::string>() != std::string(1, series_letter(group_->roots().series())) ||
        j.at("rank").get<int>() != group_->rank())
        throw std::runtime_error("cache file " + path + " belongs to a different root system");
    const std::size_t nr = static_cast<std::size_t>(group_->roots().num_positive_roots());
    std::size_t loaded = 0;
    std::unique_lock lock(mutex_);
    for (const auto& e : j.at("pairs")) {
        auto y = e.at("y").get<Alcove>();
        auto w = e.at("w").get<Alcove>();
        if (y.size() != nr || w.size() != nr) throw std::runtime_error("cache entry has the wrong alcove size");
        p_memo_.insert_or_assign({std::move(y), std::move(w)}, IntPoly(e.at("coeffs").get<std::vector<std::int64_t>>()));
        ++loaded;
    }
    return loaded;
}

}  // namespace alcove
