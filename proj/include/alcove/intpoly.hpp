#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace alcove {

/// Integer polynomial in q; coeffs[i] is the coefficient of q^i, no trailing zeros.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<std::int64_t> c) : c_(c) { trim(); }
    explicit IntPoly(std::vector<std::int64_t> c) : c_(std::move(c)) { trim(); }

    static IntPoly constant(std::int64_t a) { return IntPoly(std::vector<std::int64_t>{a}); }
    static IntPoly monomial(std::int64_t a, int degree) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
        c.back() = a;
        return IntPoly(std::move(c));
    }

    const std::vector<std::int64_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::int64_t coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }

    std::int64_t eval(std::int64_t x) const {
        std::int64_t r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    /// Multiplication by q^k.
    IntPoly shifted(int k) const {
        if (is_zero()) return {};
        std::vector<std::int64_t> c(static_cast<std::size_t>(k), 0);
        c.insert(c.end(), c_.begin(), c_.end());
        return IntPoly(std::move(c));
    }

    /// q^d P(1/q); requires d >= degree().
    IntPoly reflected(int d) const {
        std::vector<std::int64_t> c(static_cast<std::size_t>(d) + 1, 0);
        for (int i = 0; i <= degree(); ++i) c[d - i] = c_[i];
        return IntPoly(std::move(c));
    }

    IntPoly& operator+=(const IntPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    IntPoly& operator-=(const IntPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<std::int64_t> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(c));
    }
    friend IntPoly operator*(std::int64_t k, const IntPoly& a) { return IntPoly::constant(k) * a; }
    friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const std::int64_t a = c_[i];
            if (a == 0) continue;
            if (!s.empty()) s += a < 0 ? " - " : " + ";
            else if (a < 0) s += "-";
            const std::int64_t m = a < 0 ? -a : a;
            if (m != 1 || i == 0) s += std::to_string(m);
            if (i >= 1) s += "q";
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<std::int64_t> c_;
};

}  // namespace alcove
