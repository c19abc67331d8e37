#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alcove/intmat.hpp"
#include "alcove/weight.hpp"

namespace alcove {

enum class Series { A, B, C, D, E, F, G };

char series_letter(Series s);
Series parse_series(const std::string& s);

/// A positive root together with its coroot.
struct PositiveRoot {
    Weight root;                   // fundamental-weight coordinates
    std::vector<int> simple;       // coefficients on the simple roots
    std::vector<int> coroot;       // coefficients on the simple coroots
    int height = 0;
};

struct DominantRep {
    Weight weight;
    int sign = 0;  // 0 when v + rho lies on a wall of the finite Weyl group
};

/// Finite Weyl group element recorded by its action on rho.
struct FiniteWeylEntry {
    Weight rho_image;  // w(rho)
    int sign = 1;      // det(w)
    int length = 0;
};

/*
  Crystallographic root system of rank at most four, built from its Cartan
  matrix in the convention cartan(i, j) = <alpha_i^vee, alpha_j>, so column j
  holds the fundamental-weight coordinates of alpha_j.

  Positive roots are ordered by height, ties broken by their simple-root
  coefficient vectors in decreasing lexicographic order. In particular the
  first rank() entries are alpha_1, ..., alpha_rank.
*/
class RootSystem {
public:
    /// Throws std::invalid_argument for unsupported (series, rank).
    static RootSystem build(Series series, int rank);

    Series series() const { return series_; }
    int rank() const { return rank_; }
    std::string name() const { return std::string(1, series_letter(series_)) + std::to_string(rank_); }
    const IntMatrix& cartan() const { return cartan_; }
    const std::vector<PositiveRoot>& positive_roots() const { return roots_; }
    int num_positive_roots() const { return static_cast<int>(roots_.size()); }
    int coxeter_number() const { return coxeter_number_; }
    Weight rho() const { return Weight::filled(rank_, 1); }
    Weight zero() const { return Weight(rank_); }
    Weight simple_root(int i) const { return roots_[i].root; }
    const std::vector<int>& symmetrizer() const { return symmetrizer_; }

    /// <v, beta^vee>; throws std::out_of_range for a bad index.
    int pairing(const Weight& v, int beta) const;
    int pairing_unchecked(const Weight& v, int beta) const {
        const auto& c = roots_[beta].coroot;
        int s = 0;
        for (int j = 0; j < rank_; ++j) s += c[j] * v[j];
        return s;
    }

    /// Index of the positive root whose coroot is highest; its wall bounds C^-.
    int highest_coroot_index() const { return highest_coroot_; }
    int highest_root_index() const { return num_positive_roots() - 1; }

    IntMatrix simple_reflection_matrix(int i) const;
    Weight reflect(const Weight& v, int beta) const;

    /// w(v + rho) - rho made dominant, with sign det(w); sign 0 on a wall.
    DominantRep dominant_representative(const Weight& v) const;
    /// Dominant element of the (linear) W_f-orbit of v.
    Weight dominant_conjugate(const Weight& v) const;
    std::vector<Weight> finite_orbit(const Weight& v) const;

    std::optional<std::vector<int>> root_coordinates(const Weight& v) const;
    bool in_root_lattice(const Weight& v) const { return root_coordinates(v).has_value(); }
    /// det(cartan) times the height of v; strictly monotone in the dominance order.
    std::int64_t scaled_height(const Weight& v) const;
    /// a <= b in the dominance order: b - a is a nonnegative integer sum of simple roots.
    bool dominance_leq(const Weight& a, const Weight& b) const;

    /// det(cartan) times the invariant form normalised so short roots have squared length 2.
    std::int64_t scaled_form(const Weight& a, const Weight& b) const;

    std::int64_t weyl_dimension(const Weight& dominant) const;

    const std::vector<FiniteWeylEntry>& finite_weyl_group() const { return weyl_group_; }
    std::int64_t determinant() const { return det_; }

private:
    RootSystem() = default;
    void enumerate_roots();
    void enumerate_weyl_group();

    Series series_ = Series::A;
    int rank_ = 0;
    IntMatrix cartan_;
    IntMatrix adj_;
    std::int64_t det_ = 1;
    std::vector<int> symmetrizer_;
    std::vector<PositiveRoot> roots_;
    std::vector<FiniteWeylEntry> weyl_group_;
    int coxeter_number_ = 0;
    int highest_coroot_ = 0;
};

}  // namespace alcove
