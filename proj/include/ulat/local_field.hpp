#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ulat/finite_field.hpp"
#include "ulat/series.hpp"

namespace ulat {

// Polynomial in T whose coefficients are series, least significant first.
using SeriesPoly = std::vector<Series>;

// Residue fields k = level 1 and k' = level 2 of a tower, with sigma on k'.
class ResidueFields {
public:
    explicit ResidueFields(FieldTower& tower);

    const FieldTower& tower() const { return *tower_; }
    const Field& k() const { return *k_; }
    const Field& kp() const { return *kp_; }
    std::uint64_t q() const { return tower_->q(); }
    Elem sigma(Elem x) const { return kp_->frob(x, tower_->a()); }
    Elem embed_k(Elem x) const { return k_to_kp_.at(x); }
    bool in_k(Elem x) const { return sigma(x) == x; }
    Series sigma(const Series& s) const;

private:
    const FieldTower* tower_;
    const Field* k_;
    const Field* kp_;
    std::vector<Elem> k_to_kp_;
};

// Eisenstein polynomial g(T) = T^n + a_{n-1}(w) T^{n-1} + ... + a_0(w) over O_F, where each
// a_j is a polynomial in w = varpi_F with coefficients in k (encoded in k').
struct EisensteinPoly {
    unsigned n = 1;
    std::vector<std::vector<Elem>> a;  // a[j][t] = coefficient of w^t in a_j, j < n

    void validate(const ResidueFields& R) const;
};

// Totally ramified E/F of degree n together with E' = E (x) F'. Elements of E' are series in
// varpi_E with k' coefficients; varpi_F is stored as a series h(varpi_E) known to a fixed precision.
class RamifiedExtension {
public:
    RamifiedExtension(const ResidueFields& R, EisensteinPoly g, int label, int prec);
    // varpi_F = alpha varpi_E^n with alpha in k^x (tame normalization).
    static RamifiedExtension tame(const ResidueFields& R, unsigned n, Elem alpha, int label, int prec);

    unsigned degree() const { return g_.n; }
    int label() const { return label_; }
    int precision() const { return prec_; }
    const ResidueFields& residue() const { return *R_; }
    const Field& kp() const { return R_->kp(); }
    const EisensteinPoly& eisenstein() const { return g_; }
    std::optional<Elem> tame_alpha() const { return tame_alpha_; }

    // varpi_F as a series in varpi_E.
    const Series& pi_F() const { return h_; }
    // Image of an F'-series (in varpi_F) inside E'.
    Series lift(const Series& f) const;
    Series lift(const Series& f, int prec) const;

    // x = sum_{k<n} varpi_E^k f_k(varpi_F); the f_k are F'-series.
    std::vector<Series> F_coords(const Series& x) const;
    // Matrix of multiplication by x on the F'-basis 1, varpi_E, ..., varpi_E^{n-1}.
    std::vector<std::vector<Series>> mult_matrix(const Series& x) const;
    Series trace(const Series& x) const;
    // det(T - mult(x)), monic of degree n over F'.
    SeriesPoly char_poly(const Series& x) const;
    Series norm(const Series& x) const;
    // P(x) for P with F' coefficients.
    Series eval(const SeriesPoly& P, const Series& x) const;

    // v_E(g'(varpi_E)).
    int different_exponent() const;

    // varpi_E^k as an exact series.
    Series monomial(int k, Elem c = 1) const { return Series::monomial(&kp(), c, k); }

private:
    void solve_uniformizer();

    const ResidueFields* R_;
    EisensteinPoly g_;
    int label_;
    int prec_;
    std::optional<Elem> tame_alpha_;
    Series h_;
};

// Norm-one unit gamma = beta / sigma(beta) of E' with its characteristic polynomial over F'.
struct TorusElement {
    const RamifiedExtension* ext = nullptr;
    Series beta;
    Series gamma;
    SeriesPoly min_poly;

    unsigned degree() const { return ext->degree(); }
    // Constant term of gamma in k'.
    Elem residue() const { return gamma.coeff(0); }
};

TorusElement make_norm_one(const RamifiedExtension& ext, const Series& beta);

// Derivative of a polynomial with series coefficients.
SeriesPoly derivative(const SeriesPoly& P);

struct ResultantOrders {
    int sylvester;  // v_F(Res(P1, P2))
    int via_gamma1;  // v_{E1}(P2(gamma1))
    int via_gamma2;  // v_{E2}(P1(gamma2))
    bool agree() const { return sylvester == via_gamma1 && sylvester == via_gamma2; }
};
ResultantOrders resultant_order(const TorusElement& t1, const TorusElement& t2);
int resultant_order_value(const TorusElement& t1, const TorusElement& t2);

struct ConductorResult {
    int by_search;
    int by_formula;  // v_E(P'(gamma)) - delta
    int search_depth;  // truncation exponent T at which the search was accepted
    bool agree() const { return by_search == by_formula; }
};
ConductorResult conductor(const TorusElement& t);
int conductor_value(const TorusElement& t);

struct TransferFactor {
    int sign;  // (-1)^r
    int q_exponent;  // -r
};
TransferFactor transfer_factor(int r);

// Division-free characteristic polynomial (Berkowitz). Returns c_0..c_n of det(T - A), c_n = 1.
template <class R, class Ops>
std::vector<R> berkowitz(const std::vector<std::vector<R>>& A, const Ops& ops) {
    std::size_t n = A.size();
    // C holds coefficients from the highest degree down.
    std::vector<R> C{ops.one(), ops.neg(A[0][0])};
    for (std::size_t r = 1; r < n; ++r) {
        // Leading r x r block M, row R = A[r][0..r), column S = A[0..r)[r].
        std::vector<R> col(r + 2, ops.zero());
        col[0] = ops.one();
        col[1] = ops.neg(A[r][r]);
        std::vector<R> MS(r);  // M^k S, starting with k = 0
        for (std::size_t i = 0; i < r; ++i) MS[i] = A[i][r];
        for (std::size_t k = 0; k < r; ++k) {
            R acc = ops.zero();
            for (std::size_t i = 0; i < r; ++i) acc = ops.add(acc, ops.mul(A[r][i], MS[i]));
            col[k + 2] = ops.neg(acc);
            if (k + 1 < r) {
                std::vector<R> next(r, ops.zero());
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j) next[i] = ops.add(next[i], ops.mul(A[i][j], MS[j]));
                MS = std::move(next);
            }
        }
        // New C = Toeplitz(col) * C, lengths (r+2) = (r+2) x (r+1) times (r+1).
        std::vector<R> D(r + 2, ops.zero());
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= i && j < C.size(); ++j) D[i] = ops.add(D[i], ops.mul(col[i - j], C[j]));
        C = std::move(D);
    }
    std::reverse(C.begin(), C.end());
    return C;
}

struct SeriesOps {
    const Field* F;
    int prec;
    Series zero() const { return Series::zero(F); }
    Series one() const { return Series::constant(F, 1); }
    Series neg(const Series& a) const { return -a; }
    Series add(const Series& a, const Series& b) const { return (a + b).truncated(prec); }
    Series mul(const Series& a, const Series& b) const { return (a * b).truncated(prec); }
};

struct FieldOps {
    const Field* F;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem neg(Elem a) const { return F->neg(a); }
    Elem add(Elem a, Elem b) const { return F->add(a, b); }
    Elem mul(Elem a, Elem b) const { return F->mul(a, b); }
};

}  // namespace ulat
