#pragma once

#include <array>
#include <cstdint>

#include "alcove/weight.hpp"

namespace alcove {

/// Square integer matrix of size at most kMaxRank, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int n) : n_(n) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int size() const { return n_; }
    int operator()(int i, int j) const { return a_[i * kMaxRank + j]; }
    int& operator()(int i, int j) { return a_[i * kMaxRank + j]; }

    Weight apply(const Weight& v) const {
        Weight out(n_);
        for (int i = 0; i < n_; ++i) {
            int s = 0;
            for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        IntMatrix out(x.n_);
        for (int i = 0; i < x.n_; ++i)
            for (int j = 0; j < x.n_; ++j) {
                int s = 0;
                for (int k = 0; k < x.n_; ++k) s += x(i, k) * y(k, j);
                out(i, j) = s;
            }
        return out;
    }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

    std::int64_t determinant() const { return det_of(*this, n_); }

    /// adj(M) with M * adj(M) = det(M) * I.
    IntMatrix adjugate() const {
        IntMatrix out(n_);
        if (n_ == 1) {
            out(0, 0) = 1;
            return out;
        }
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                IntMatrix minor(n_ - 1);
                for (int r = 0, rr = 0; r < n_; ++r) {
                    if (r == j) continue;
                    for (int c = 0, cc = 0; c < n_; ++c) {
                        if (c == i) continue;
                        minor(rr, cc++) = (*this)(r, c);
                    }
                    ++rr;
                }
                const auto d = det_of(minor, n_ - 1);
                out(i, j) = static_cast<int>(((i + j) % 2 == 0) ? d : -d);
            }
        return out;
    }

private:
    static std::int64_t det_of(const IntMatrix& m, int n) {
        if (n == 1) return m(0, 0);
        if (n == 2) return static_cast<std::int64_t>(m(0, 0)) * m(1, 1) - static_cast<std::int64_t>(m(0, 1)) * m(1, 0);
        std::int64_t total = 0;
        for (int c = 0; c < n; ++c) {
            IntMatrix minor(n - 1);
            for (int r = 1; r < n; ++r)
                for (int k = 0, kk = 0; k < n; ++k) {
                    if (k == c) continue;
                    minor(r - 1, kk++) = m(r, k);
                }
            const auto term = m(0, c) * det_of(minor, n - 1);
            total += (c % 2 == 0) ? term : -term;
        }
        return total;
    }

    std::array<int, kMaxRank * kMaxRank> a_{};
    int n_ = 0;
};

}  // namespace alcove
