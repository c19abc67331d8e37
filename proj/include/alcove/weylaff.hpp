#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "alcove/intmat.hpp"
#include "alcove/rootsys.hpp"
#include "alcove/weight.hpp"

namespace alcove {

/// Alcove tuple (m_beta) indexed by the positive roots of the root system.
using Alcove = std::vector<int>;

struct AlcoveHash {
    std::size_t operator()(const Alcove& a) const {
        std::size_t h = a.size();
        for (int m : a) h = h * 1000003u ^ static_cast<std::size_t>(static_cast<unsigned>(m));
        return h;
    }
};

/// Generator index: 0 is the affine reflection, 1..rank the finite simple reflections.
using Generator = int;

/*
  Element of the affine Weyl group W_p. Acting on shifted coordinates
  x = v + rho it is x -> linear * x + p * translation, with translation in the
  root lattice. The canonical identity of the element is its alcove tuple
  w.C^-, which does not depend on p.
*/
class AffineElement {
public:
    int p() const { return p_; }
    const Alcove& alcove() const { return alcove_; }
    int length() const { return length_; }
    const IntMatrix& linear() const { return linear_; }
    const Weight& translation() const { return translation_; }
    bool is_identity() const { return length_ == 0; }

    friend bool operator==(const AffineElement& a, const AffineElement& b) {
        return a.p_ == b.p_ && a.alcove_ == b.alcove_;
    }

private:
    friend class AffineWeylGroup;
    IntMatrix linear_;
    Weight translation_;
    Alcove alcove_;
    int p_ = 0;
    int length_ = 0;
};

struct AffineElementHash {
    std::size_t operator()(const AffineElement& w) const { return AlcoveHash{}(w.alcove()); }
};

/// Sorted generator subset.
using GeneratorSet = std::vector<Generator>;

struct WallDescriptor {
    Weight mu;
    GeneratorSet J;  // S_p(mu) = {s : s.mu = mu}
};

struct LinkageClass {
    Weight mu;          // orbit representative in the closure of C^-
    AffineElement w;    // minimal length element with w.mu = gamma
};

/*
  The affine Weyl group (W_p, S_p) for a root system and an integer p >= 2,
  with generators the reflections in the walls of the top antidominant alcove
  C^- = { v : -p < <v + rho, beta^vee> < 0 for all beta > 0 }.

  Memo tables (Bruhat order, lower Bruhat ideals, W+ membership) are guarded
  by a shared mutex; concurrent readers may duplicate work but always agree.
*/
class AffineWeylGroup {
public:
    AffineWeylGroup(std::shared_ptr<const RootSystem> rs, int p);

    const RootSystem& roots() const { return *rs_; }
    std::shared_ptr<const RootSystem> roots_ptr() const { return rs_; }
    int p() const { return p_; }
    int rank() const { return rs_->rank(); }
    int num_generators() const { return rs_->rank() + 1; }
    bool p_is_prime() const;
    bool p_at_least_coxeter() const { return p_ >= rs_->coxeter_number(); }

    AffineElement identity() const;
    const std::vector<AffineElement>& generators() const { return generators_; }
    const AffineElement& generator(Generator s) const;

    AffineElement from_word(std::span<const Generator> word) const;
    /// Throws std::invalid_argument if the tuple is not an alcove.
    AffineElement from_alcove(const Alcove& alcove) const;
    AffineElement translation(const Weight& nu) const;  // t_{p nu}, nu in the root lattice
    AffineElement longest_finite() const;               // w_0 of W_f

    AffineElement multiply(const AffineElement& a, const AffineElement& b) const;
    AffineElement inverse(const AffineElement& w) const;
    AffineElement right_multiply(const AffineElement& w, Generator s) const;

    /// w.(v) = w(v + rho) - rho.
    Weight dot(const AffineElement& w, const Weight& v) const;
    Weight dot(std::span<const Generator> word, const Weight& v) const;

    int length(const AffineElement& w) const { return w.length(); }
    GeneratorSet right_descent(const AffineElement& w) const;
    bool is_right_descent(const AffineElement& w, Generator s) const;

    /// Reduced word built by repeatedly stripping the smallest right descent.
    std::vector<Generator> reduced_word(const AffineElement& w) const;
    /// Order by length, then lexicographically by reduced word.
    bool canonical_less(const AffineElement& a, const AffineElement& b) const;

    bool bruhat_leq(const AffineElement& y, const AffineElement& w) const;
    /// All z <= w, sorted canonically.
    const std::vector<AffineElement>& lower_ideal(const AffineElement& w) const;
    /// All elements of length at most max_len, sorted canonically.
    std::vector<AffineElement> elements_up_to(int max_len) const;

    /// Integral points of C^-; empty when p < h.
    const std::vector<Weight>& cminus_points() const { return cminus_points_; }
    /// Integral points in the closure of C^-.
    const std::vector<Weight>& cminus_closure_points() const { return cminus_closure_points_; }
    bool in_cminus(const Weight& v) const;
    bool in_cminus_closure(const Weight& v) const;
    /// Integral points of the (closed or open) alcove c.C^-.
    std::vector<Weight> alcove_points(const AffineElement& c, bool closed) const;

    /// Deepest integral point of C^-, lexicographically smallest on ties.
    Weight auto_lambda() const;

    bool in_wplus(const AffineElement& w) const;
    /// W+ elements of length at most max_len for a regular lambda in C^-.
    std::vector<AffineElement> enumerate_wplus(const Weight& lambda, int max_len) const;

    WallDescriptor stabilizer_j(const Weight& mu) const;
    bool is_min_coset_rep(const AffineElement& w, const GeneratorSet& J) const;
    /// Walls of C^-: for each generator s, the first integral point mu of the
    /// closure with S_p(mu) = {s}, if any.
    std::vector<WallDescriptor> single_walls() const;

    Weight orbit_rep(const Weight& gamma) const;
    LinkageClass linkage_class(const Weight& gamma) const;

    std::string generator_name(Generator s) const { return "s" + std::to_string(s); }
    std::string word_string(std::span<const Generator> word) const;
    std::vector<Generator> parse_word(const std::string& text) const;

private:
    AffineElement make(const IntMatrix& linear, const Weight& translation) const;
    Alcove alcove_of(const IntMatrix& linear, const Weight& translation) const;
    Weight shifted_apply(const AffineElement& w, const Weight& x) const;
    void check_same(const AffineElement& a) const;

    struct PairHash {
        std::size_t operator()(const std::pair<Alcove, Alcove>& k) const {
            return AlcoveHash{}(k.first) * 31u ^ AlcoveHash{}(k.second);
        }
    };

    std::shared_ptr<const RootSystem> rs_;
    int p_;
    std::vector<AffineElement> generators_;
    std::vector<Weight> cminus_points_;
    std::vector<Weight> cminus_closure_points_;

    mutable std::shared_mutex memo_mutex_;
    mutable std::unordered_map<std::pair<Alcove, Alcove>, bool, PairHash> bruhat_memo_;
    mutable std::unordered_map<Alcove, std::shared_ptr<const std::vector<AffineElement>>, AlcoveHash> ideal_memo_;
    mutable std::unordered_map<Alcove, bool, AlcoveHash> wplus_memo_;
};

}  // namespace alcove
