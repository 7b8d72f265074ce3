#include "ulat/local_field.hpp"

#include <map>
#include <stdexcept>

#include "ulat/linalg.hpp"

namespace ulat {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int ceil_div(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a > 0) == (b > 0))) ++q;
    return static_cast<int>(q);
}

Series poly_series(const Field* F, const std::vector<Elem>& c) { return Series(F, 0, c, Series::kExact); }

}  // namespace

ResidueFields::ResidueFields(FieldTower& tower) : tower_(&tower) {
    k_ = &tower.level(1);
    kp_ = &tower.level(2);
    k_to_kp_ = tower.embedding_table(1, 2);
}

Series ResidueFields::sigma(const Series& s) const {
    return s.transform([this](Elem x) { return sigma(x); });
}

void EisensteinPoly::validate(const ResidueFields& R) const {
    if (n == 0) throw std::invalid_argument("Eisenstein polynomial must have degree >= 1");
    if (a.size() != n) throw std::invalid_argument("Eisenstein polynomial needs exactly n lower coefficients");
    for (std::size_t j = 0; j < n; ++j) {
        const auto& aj = a[j];
        if (!aj.empty() && aj[0] != 0)
            throw std::invalid_argument("Eisenstein coefficient a_" + std::to_string(j) + " is not divisible by varpi_F");
        for (Elem c : aj)
            if (!R.in_k(c)) throw std::invalid_argument("Eisenstein coefficients must lie in k");
    }
    if (a[0].size() < 2 || a[0][1] == 0)
        throw std::invalid_argument("Eisenstein constant term must have valuation exactly 1");
}

RamifiedExtension::RamifiedExtension(const ResidueFields& R, EisensteinPoly g, int label, int prec)
    : R_(&R), g_(std::move(g)), label_(label), prec_(prec) {
    g_.validate(R);
    solve_uniformizer();
}

RamifiedExtension RamifiedExtension::tame(const ResidueFields& R, unsigned n, Elem alpha, int label, int prec) {
    if (alpha == 0 || !R.in_k(alpha)) throw std::invalid_argument("tame normalization needs alpha in k^x");
    if (n % R.kp().p() == 0) throw std::invalid_argument("tame normalization needs n prime to p");
    // g(T) = T^n - alpha^{-1} varpi_F.
    EisensteinPoly g;
    g.n = n;
    g.a.assign(n, {});
    g.a[0] = {0, R.kp().neg(R.kp().inv(alpha))};
    RamifiedExtension ext(R, g, label, prec);
    ext.tame_alpha_ = alpha;
    ext.h_ = Series::monomial(&R.kp(), alpha, static_cast<int>(n));
    return ext;
}

void RamifiedExtension::solve_uniformizer() {
    const Field& K = kp();
    int n = static_cast<int>(g_.n);
    Elem a01 = g_.a[0][1];
    Elem inv_a01 = K.inv(a01);
    std::vector<Elem> tail0 = g_.a[0];
    tail0[1] = 0;
    Series Xn = Series::monomial(&K, 1, n);
    Series h = Xn.scaled(K.neg(inv_a01));
    // h <- -(X^n + sum_j a_j(h) X^j + a_0^{(>=2)}(h)) / a_{0,1}; each pass fixes one more coefficient.
    for (int it = 0; it < prec_ + 2; ++it) {
        Series acc = Xn;
        for (int j = 1; j < n; ++j) {
            if (g_.a[j].empty()) continue;
            acc = acc + poly_series(&K, g_.a[j]).compose(h, prec_).shifted(j);
        }
        acc = acc + poly_series(&K, tail0).compose(h, prec_);
        Series next = acc.scaled(K.neg(inv_a01)).truncated(prec_);
        bool same = (next - h).truncated(prec_).is_zero_to_prec();
        h = next;
        if (same && it > 0) break;
    }
    h_ = h.truncated(prec_);
}

Series RamifiedExtension::lift(const Series& f) const { return lift(f, prec_); }

Series RamifiedExtension::lift(const Series& f, int prec) const {
    if (f.is_exact_zero()) return Series::zero(&kp());
    if (tame_alpha_ && f.exact()) {
        // Exact substitution varpi_F = alpha varpi_E^n.
        int n = static_cast<int>(g_.n);
        std::vector<Elem> c(static_cast<std::size_t>((f.hi() - f.lo() - 1) * n + 1), 0);
        for (int e = f.lo(); e < f.hi(); ++e) {
            Elem ae = e >= 0 ? kp().pow(*tame_alpha_, static_cast<std::uint64_t>(e))
                             : kp().inv(kp().pow(*tame_alpha_, static_cast<std::uint64_t>(-e)));
            c[static_cast<std::size_t>((e - f.lo()) * n)] = kp().mul(f.coeff(e), ae);
        }
        return Series(&kp(), f.lo() * n, std::move(c), Series::kExact);
    }
    return f.compose(h_, prec);
}

std::vector<Series> RamifiedExtension::F_coords(const Series& x) const {
    const Field& K = kp();
    int n = static_cast<int>(g_.n);
    int P = std::min(x.prec(), h_.prec());
    Series res = x.truncated(P);
    Elem lead = h_.coeff(n);
    std::map<int, Series> hpow;
    auto power = [&](int t) -> const Series& {
        auto it = hpow.find(t);
        if (it != hpow.end()) return it->second;
        Series v = Series::constant(&K, 1);
        if (h_.exact() && h_.hi() == h_.lo() + 1) {
            Elem c = t >= 0 ? K.pow(lead, static_cast<std::uint64_t>(t)) : K.inv(K.pow(lead, static_cast<std::uint64_t>(-t)));
            v = Series::monomial(&K, c, n * t);
        } else if (t > 0) {
            for (int i = 0; i < t; ++i) v = (v * h_).truncated(P);
        } else if (t < 0) {
            Series hi = h_.inverse(P);
            for (int i = 0; i < -t; ++i) v = (v * hi).truncated(P);
        }
        return hpow.emplace(t, std::move(v)).first->second;
    };
    std::vector<std::map<int, Elem>> fk(static_cast<std::size_t>(n));
    while (!res.is_zero_to_prec()) {
        int e = res.lo();
        Elem c = res.coeff(e);
        int t = floor_div(e, n);
        int k = e - n * t;
        Elem lt = t >= 0 ? K.pow(lead, static_cast<std::uint64_t>(t)) : K.inv(K.pow(lead, static_cast<std::uint64_t>(-t)));
        Elem d = K.div(c, lt);
        auto& slot = fk[static_cast<std::size_t>(k)][t];
        slot = K.add(slot, d);
        res = (res - power(t).shifted(k).scaled(d)).truncated(P);
        if (res.lo() <= e && !res.is_zero_to_prec()) throw std::logic_error("F-coordinate reduction did not progress");
    }
    int Pf = res.prec();
    std::vector<Series> out;
    for (int k = 0; k < n; ++k) {
        const auto& m = fk[static_cast<std::size_t>(k)];
        int fprec = Pf >= Series::kExact ? Series::kExact : ceil_div(static_cast<long long>(Pf) - k, n);
        if (m.empty()) {
            out.push_back(Series::zero(&K, fprec));
            continue;
        }
        int lo = m.begin()->first;
        int hi = m.rbegin()->first + 1;
        std::vector<Elem> c(static_cast<std::size_t>(hi - lo), 0);
        for (const auto& [t, v] : m) c[static_cast<std::size_t>(t - lo)] = v;
        out.push_back(Series(&K, lo, std::move(c), fprec).truncated(fprec));
    }
    return out;
}

std::vector<std::vector<Series>> RamifiedExtension::mult_matrix(const Series& x) const {
    std::size_t n = g_.n;
    std::vector<std::vector<Series>> M(n, std::vector<Series>(n));
    for (std::size_t j = 0; j < n; ++j) {
        auto col = F_coords(x.shifted(static_cast<int>(j)));
        for (std::size_t k = 0; k < n; ++k) M[k][j] = col[k];
    }
    return M;
}

Series RamifiedExtension::trace(const Series& x) const {
    auto M = mult_matrix(x);
    Series t = Series::zero(&kp());
    for (std::size_t i = 0; i < M.size(); ++i) t = t + M[i][i];
    return t;
}

SeriesPoly RamifiedExtension::char_poly(const Series& x) const {
    auto M = mult_matrix(x);
    int prec = Series::kExact;
    for (const auto& row : M)
        for (const auto& s : row) prec = std::min(prec, s.prec());
    return berkowitz(M, SeriesOps{&kp(), prec});
}

Series RamifiedExtension::norm(const Series& x) const {
    auto P = char_poly(x);
    return g_.n % 2 == 0 ? P[0] : -P[0];
}

Series RamifiedExtension::eval(const SeriesPoly& P, const Series& x) const {
    if (P.empty()) return Series::zero(&kp());
    Series acc = lift(P.back());
    for (std::size_t i = P.size() - 1; i-- > 0;) acc = (acc * x + lift(P[i])).truncated(prec_);
    return acc;
}

int RamifiedExtension::different_exponent() const {
    const Field& K = kp();
    int n = static_cast<int>(g_.n);
    Series d = Series::monomial(&K, K.from_int(n), n - 1);
    for (int j = 1; j < n; ++j) {
        if (g_.a[j].empty()) continue;
        Series aj = lift(poly_series(&K, g_.a[j]));
        d = d + aj.shifted(j - 1).scaled(K.from_int(j));
    }
    auto v = d.truncated(prec_).valuation();
    if (!v) throw std::domain_error("inseparable extension: g'(varpi_E) vanishes");
    return *v;
}

SeriesPoly derivative(const SeriesPoly& P) {
    SeriesPoly D;
    for (std::size_t i = 1; i < P.size(); ++i) {
        const Field* F = P[i].field();
        D.push_back(P[i].scaled(F->from_int(static_cast<std::int64_t>(i))));
    }
    return D;
}

TorusElement make_norm_one(const RamifiedExtension& ext, const Series& beta) {
    const ResidueFields& R = ext.residue();
    int P = ext.precision();
    Series b = beta.truncated(P);
    auto vb = b.valuation();
    if (!vb || *vb != 0) throw std::invalid_argument("beta is not a unit of O_E'");
    Series sb = R.sigma(b);
    Series gamma = (b * sb.inverse(P)).truncated(P);
    Series check = (gamma * R.sigma(gamma) - Series::constant(&ext.kp(), 1)).truncated(P);
    if (!check.is_zero_to_prec()) throw std::logic_error("gamma sigma(gamma) != 1 to working precision");
    TorusElement t;
    t.ext = &ext;
    t.beta = beta;
    t.gamma = gamma;
    t.min_poly = ext.char_poly(gamma);
    if (t.min_poly.size() != ext.degree() + 1) throw std::logic_error("characteristic polynomial has wrong degree");
    // P(gamma) = 0 and P'(gamma) != 0, i.e. E' = F'[gamma].
    Series pg = ext.eval(t.min_poly, gamma);
    if (!pg.is_zero_to_prec()) throw std::logic_error("characteristic polynomial does not vanish at gamma");
    Series dp = ext.eval(derivative(t.min_poly), gamma);
    if (dp.is_zero_to_prec())
        throw PrecisionError("P'(gamma) vanishes to working precision: gamma may generate a proper subextension");
    return t;
}

ResultantOrders resultant_order(const TorusElement& t1, const TorusElement& t2) {
    const auto& P1 = t1.min_poly;
    const auto& P2 = t2.min_poly;
    std::size_t n1 = P1.size() - 1, n2 = P2.size() - 1, N = n1 + n2;
    const Field* K = &t1.ext->kp();
    std::vector<std::vector<Series>> S(N, std::vector<Series>(N, Series::zero(K)));
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j <= n1; ++j) S[i][i + j] = P1[n1 - j];
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j <= n2; ++j) S[n2 + i][i + j] = P2[n2 - j];
    int prec = Series::kExact;
    for (const auto& row : S)
        for (const auto& s : row) prec = std::min(prec, s.prec());
    auto cp = berkowitz(S, SeriesOps{K, prec});
    ResultantOrders out{};
    auto v = cp[0].valuation();
    if (!v) throw std::domain_error("not coprime: Res(P1, P2) = 0");
    out.sylvester = *v;
    auto v1 = t1.ext->eval(P2, t1.gamma).valuation();
    auto v2 = t2.ext->eval(P1, t2.gamma).valuation();
    if (!v1 || !v2) throw std::domain_error("not coprime: P_j(gamma_i) = 0");
    out.via_gamma1 = *v1;
    out.via_gamma2 = *v2;
    return out;
}

int resultant_order_value(const TorusElement& t1, const TorusElement& t2) {
    auto r = resultant_order(t1, t2);
    if (!r.agree()) throw std::logic_error("resultant order routes disagree");
    return r.sylvester;
}

ConductorResult conductor(const TorusElement& t) {
    const RamifiedExtension& ext = *t.ext;
    const Field& K = ext.kp();
    int n = static_cast<int>(ext.degree());
    ConductorResult out{};
    auto dv = ext.eval(derivative(t.min_poly), t.gamma).valuation();
    if (!dv) throw std::domain_error("P'(gamma) = 0");
    out.by_formula = *dv - ext.different_exponent();
    for (int T = 2 * n + 2;; T *= 2) {
        if (T > ext.precision()) throw PrecisionError("conductor search exceeds working precision");
        // k'-span of varpi_F^a gamma^j modulo varpi_E^T.
        std::vector<Vec> gens;
        Series gj = Series::constant(&K, 1);
        for (int j = 0; j < n; ++j) {
            Series v = gj.truncated(T);
            for (int a = 0; n * a < T; ++a) {
                Vec row(static_cast<std::size_t>(T), 0);
                for (int e = 0; e < T; ++e) row[static_cast<std::size_t>(e)] = v.coeff(e);
                gens.push_back(std::move(row));
                v = (v * ext.pi_F()).truncated(T);
            }
            gj = (gj * t.gamma).truncated(ext.precision());
        }
        Subspace S = Subspace::span(K, static_cast<std::size_t>(T), gens);
        int m = T;
        while (m > 0) {
            Vec unit(static_cast<std::size_t>(T), 0);
            unit[static_cast<std::size_t>(m - 1)] = 1;
            if (!S.contains(K, unit)) break;
            --m;
        }
        if (m <= T - n) {
            out.by_search = m;
            out.search_depth = T;
            return out;
        }
    }
}

int conductor_value(const TorusElement& t) {
    auto c = conductor(t);
    if (!c.agree()) throw std::logic_error("conductor routes disagree");
    return c.by_search;
}

TransferFactor transfer_factor(int r) {
    if (r < 0) throw std::invalid_argument("resultant order must be nonnegative");
    return {r % 2 == 0 ? 1 : -1, -r};
}

}  // namespace ulat
