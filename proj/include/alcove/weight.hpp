#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace alcove {

inline constexpr int kMaxRank = 4;

/// Integral weight in the fundamental-weight basis.
class Weight {
public:
    Weight() = default;
    explicit Weight(int rank) : rank_(check_rank(rank)) {}
    Weight(std::initializer_list<int> coords) : rank_(check_rank(static_cast<int>(coords.size()))) {
        int i = 0;
        for (int c : coords) c_[i++] = c;
    }
    explicit Weight(std::span<const int> coords) : rank_(check_rank(static_cast<int>(coords.size()))) {
        for (int i = 0; i < rank_; ++i) c_[i] = coords[i];
    }

    static Weight filled(int rank, int value) {
        Weight w(rank);
        for (int i = 0; i < rank; ++i) w.c_[i] = value;
        return w;
    }

    int rank() const { return rank_; }
    int operator[](int i) const { return c_[i]; }
    int& operator[](int i) { return c_[i]; }
    std::span<const int> coords() const { return {c_.data(), static_cast<std::size_t>(rank_)}; }
    std::vector<int> to_vector() const { return {c_.begin(), c_.begin() + rank_}; }

    bool is_dominant() const {
        for (int i = 0; i < rank_; ++i)
            if (c_[i] < 0) return false;
        return true;
    }
    bool is_zero() const {
        for (int i = 0; i < rank_; ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    Weight& operator+=(const Weight& o) {
        for (int i = 0; i < rank_; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        for (int i = 0; i < rank_; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Weight& operator*=(int k) {
        for (int i = 0; i < rank_; ++i) c_[i] *= k;
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(int k, Weight a) { return a *= k; }
    friend Weight operator-(Weight a) { return a *= -1; }

    friend bool operator==(const Weight& a, const Weight& b) {
        return a.rank_ == b.rank_ && a.c_ == b.c_;
    }
    friend auto operator<=>(const Weight& a, const Weight& b) {
        if (auto r = a.rank_ <=> b.rank_; r != 0) return r;
        return a.c_ <=> b.c_;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < rank_; ++i) {
            if (i) s += ",";
            s += std::to_string(c_[i]);
        }
        return s + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.str(); }

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(rank_);
        for (int i = 0; i < rank_; ++i)
            h = h * 1000003u ^ static_cast<std::size_t>(static_cast<std::uint32_t>(c_[i]));
        return h;
    }

private:
    static int check_rank(int r) {
        if (r < 1 || r > kMaxRank) throw std::invalid_argument("weight rank out of range: " + std::to_string(r));
        return r;
    }

    std::array<int, kMaxRank> c_{};
    int rank_ = 0;
};

struct WeightHash {
    std::size_t operator()(const Weight& w) const { return w.hash(); }
};

}  // namespace alcove
