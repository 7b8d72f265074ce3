#pragma once

#include <vector>

#include "ulat/window.hpp"

namespace ulat {

// alpha = varpi_E^{parity - delta} * unit, with unit in O_E^x (coefficients in k).
Series hermitian_alpha(const RamifiedExtension& ext, int parity, const Series& unit);
// Class of N(alpha) varpi_F^delta in F^x / N(F'^x), i.e. its valuation mod 2.
int discriminant_class(const RamifiedExtension& ext, const Series& alpha);

// Pairings attached to Phi_(alpha) on a window. B_t(x, y) is the coefficient of varpi_F^{-t} in
// tr(alpha x y) (k-bilinear on window coordinates); Phi_t(x, y) = B_t(sigma x, y).
class HermitianStructure {
public:
    // units[f] defaults to 1 for every factor.
    HermitianStructure(const Window& w, int parity, std::vector<Series> units = {});

    const Window& window() const { return *w_; }
    int parity() const { return parity_; }
    const std::vector<Series>& alphas() const { return alpha_; }
    const std::vector<Mat>& gram() const { return gram_; }  // gram()[t-1] = B_t
    bool self_dual_compatible() const;

    // {x : B_t(x, L) = 0 for all t}.
    Subspace dual_bilinear(const Subspace& L) const;
    // Hermitian dual {x : Phi_t(x, L) = 0}, sigma = q-th power on K.
    Subspace dual_lattice(const Subspace& L) const;
    // F_X(L) = dual_bilinear(sigma L).
    Subspace frobenius_step(const Subspace& L) const;
    Subspace frobenius_power(const Subspace& L, unsigned f) const;
    // <x, y> = B_1(x, Fr_{q^f} y); its Lagrangian stable subspaces are the F_X^f-fixed points
    // when f is odd and K = k_{2f}.
    SesquilinearForm lagrangian_form(unsigned f) const;

private:
    const Window* w_;
    int parity_;
    std::vector<Series> alpha_;
    std::vector<Mat> gram_;
};

Subspace frob_subspace(const Field& K, const Subspace& L, unsigned p_power);

// Points of the window of dimension dim/2 fixed by F_X^f. For even f the window must be over
// k_f (all points are fixed); for odd f over k_{2f} (isotropic search).
std::vector<LatticePoint> fixed_points(const HermitianStructure& h, unsigned f, const EnumOptions& base = {},
                                       EnumStats* stats = nullptr);
// Reference route: enumerate every point over the window field and keep F_X^f(L) == L.
std::vector<LatticePoint> fixed_points_by_filter(const HermitianStructure& h, unsigned f, const EnumOptions& base = {});

}  // namespace ulat
