#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ulat/enumerate.hpp"
#include "ulat/linalg.hpp"
#include "ulat/local_field.hpp"

namespace ulat {

// One factor E'_i of a window: the quotient varpi^upper O_{E'_i} / varpi^lower O_{E'_i}.
struct WindowFactor {
    const TorusElement* torus = nullptr;
    int upper = 0;
    int lower = 0;
    int dim() const { return lower - upper; }
    const RamifiedExtension& ext() const { return *torus->ext; }
};

// Finite k'_e-model of a space of lattices. Coordinates are ordered by factor, then by
// descending exponent; the coefficient field K is level `level` of the tower (it contains k').
class Window {
public:
    Window(FieldTower& tower, unsigned level, std::vector<WindowFactor> factors);

    const Field& field() const { return *K_; }
    unsigned level() const { return level_; }
    FieldTower& tower() const { return *tower_; }
    std::size_t dim() const { return dim_; }
    std::size_t num_factors() const { return factors_.size(); }
    const WindowFactor& factor(std::size_t f) const { return factors_[f]; }
    const std::vector<WindowFactor>& factors() const { return factors_; }

    std::size_t offset(std::size_t f) const { return offsets_[f]; }
    std::size_t index(std::size_t f, int e) const;
    std::size_t factor_of(std::size_t coord) const;
    int exponent(std::size_t coord) const;
    bool contains_exponent(std::size_t f, int e) const { return e >= factors_[f].upper && e < factors_[f].lower; }

    // k' -> K.
    Elem embed(Elem x) const { return kp_to_K_.at(x); }
    // Multiplication by the given series (one per factor, valuation >= 0, coefficients in k').
    Mat mult_matrix(const std::vector<Series>& per_factor) const;
    const Mat& nu() const { return nu_; }
    const Mat& u() const { return u_; }
    // Multiplication by varpi_{E_f}^k on factor f, zero elsewhere.
    Mat uniformizer_power(std::size_t f, int k) const;
    std::vector<Elem> u_eigenvalues() const;
    std::vector<StableOp> stable_ops() const;

    // ind(L) = dim - sum of lower exponents.
    int ref_offset() const;
    int index_of(const Subspace& L) const { return static_cast<int>(L.dim()) - ref_offset(); }

    // Coordinates of factor f as a subspace.
    Subspace factor_space(std::size_t f) const;
    // The window of factor f alone, with the same bounds.
    Window factor_window(std::size_t f) const;
    // L meet factor f, and the projection of L to factor f, in factor_window(f) coordinates.
    Subspace meet_factor(const Subspace& L, std::size_t f) const;
    Subspace project_factor(const Subspace& L, std::size_t f) const;
    // varpi^e O_{E'_f} (e inside the window range) as a subspace.
    Subspace power_lattice(std::size_t f, int e) const;

    std::string describe() const;

private:
    FieldTower* tower_;
    unsigned level_;
    const Field* K_;
    std::vector<WindowFactor> factors_;
    std::vector<std::size_t> offsets_;
    std::size_t dim_ = 0;
    std::vector<Elem> kp_to_K_;
    Mat nu_, u_;
};

// Window of X^{+/-}[mu1, mu2]: varpi^{mu2-m1-delta}O + varpi^{mu1-m2-delta}O over
// varpi^{m1-mu1}O + varpi^{m2-mu2}O.
Window x_window(FieldTower& tower, unsigned level, const TorusElement& t1, const TorusElement& t2, int m1, int m2,
                int mu1, int mu2, int delta);
// Window of Y_i: varpi^{-m}O / varpi^{m}O.
Window y_window(FieldTower& tower, unsigned level, const TorusElement& t, int m);

struct Strata {
    int ind = 0;
    std::array<int, 2> b{0, 0};
    std::array<int, 2> c{0, 0};
};

// b_i = ind(L meet E'_i), c_i = ind(projection of L to E'_i).
Strata strata_invariants(const Window& w, const Subspace& L);

struct LatticePoint {
    Subspace space;
    Strata strata;
};

// Stable subspaces of dimension target_dim (index delta in an X-window), optionally filtered by
// b_i >= mu_i. Sorted canonically.
std::vector<LatticePoint> enumerate_points(const Window& w, std::size_t target_dim, const EnumOptions& base = {},
                                           EnumStats* stats = nullptr);

// Image of the lattice L (in window `from`) under multiplication by varpi_{E_f}^{shift[f]} on factor f,
// represented in window `to` (same factors in the same order). nullopt if the image leaves `to`.
std::optional<Subspace> relocate(const Window& from, const Subspace& L, const Window& to, const std::vector<int>& shift);

// tau^n = (varpi_{E1} + varpi_{E2}^{-1})^n; alpha_1 = varpi_{E1} + 1; alpha_2 = 1 + varpi_{E2}.
std::optional<Subspace> translate_tau(const Window& from, const Subspace& L, const Window& to, int n);
std::optional<Subspace> alpha_map(const Window& from, const Subspace& L, const Window& to, int which, bool inverse = false);

// Remark-3.14 ambient: is M (an m-dimensional subspace of varpi^{-m}O/varpi^{m}O) stable under N^{m+j}, j >= 0?
bool check_Z_membership(const Window& y, const Subspace& M, int m);
// Both halves of the nilpotent-subspace lemma for F stable under N^{m+j}, j >= 0, in a single-factor
// window with N = multiplication by varpi_E; returns the number of violated implications.
int nilpotent_lemma_violations(const Window& y, const Subspace& F, int m);

// Sandwich varpi^{m-ind}O <= L <= varpi^{-m-ind}O for a single-factor lattice.
bool sandwich_holds(const Window& single, const Subspace& L, int m);

// One dump line: echelon rows as coefficient tuples, then ind b1 c1 b2 c2.
std::string dump_line(const Window& w, const LatticePoint& p);

}  // namespace ulat
