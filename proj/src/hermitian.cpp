#include "ulat/hermitian.hpp"

#include <algorithm>
#include <stdexcept>

namespace ulat {

Series hermitian_alpha(const RamifiedExtension& ext, int parity, const Series& unit) {
    const auto& R = ext.residue();
    auto v = unit.valuation();
    if (!v || *v != 0) throw std::invalid_argument("alpha: unit part is not a unit");
    for (int e = unit.lo(); e < unit.hi(); ++e)
        if (!R.in_k(unit.coeff(e))) throw std::invalid_argument("alpha: unit part must lie in E (coefficients in k)");
    return unit.shifted(parity - ext.different_exponent());
}

int discriminant_class(const RamifiedExtension& ext, const Series& alpha) {
    auto v = alpha.valuation();
    if (!v) throw std::invalid_argument("discriminant of zero form");
    int s = -*v;  // alpha varpi_E^s is a unit
    Series N = ext.norm(alpha.shifted(s));
    auto vn = N.valuation();
    int cls = *vn - s + ext.different_exponent();
    return ((cls % 2) + 2) % 2;
}

HermitianStructure::HermitianStructure(const Window& w, int parity, std::vector<Series> units)
    : w_(&w), parity_(parity) {
    if (parity != 0 && parity != 1) throw std::invalid_argument("parity must be 0 (+) or 1 (-)");
    const Field& kp = w.factor(0).ext().kp();
    if (units.empty()) units.assign(w.num_factors(), Series::constant(&kp, 1));
    int M = 1;
    for (std::size_t f = 0; f < w.num_factors(); ++f) {
        const auto& ext = w.factor(f).ext();
        alpha_.push_back(hermitian_alpha(ext, parity, units.at(f)));
        int n = static_cast<int>(ext.degree());
        M = std::max(M, (-2 * w.factor(f).upper + parity) / n + 2);
    }
    const Field& K = w.field();
    gram_.assign(static_cast<std::size_t>(M), Mat(w.dim(), w.dim()));
    for (std::size_t f = 0; f < w.num_factors(); ++f) {
        const auto& wf = w.factor(f);
        const auto& ext = wf.ext();
        for (int k = 2 * wf.upper; k <= 2 * (wf.lower - 1); ++k) {
            Series tr = ext.trace(alpha_[f].shifted(k));
            for (int t = 1; t <= M; ++t) {
                Elem c = tr.coeff(-t);
                if (c == 0) continue;
                Elem cK = w.embed(c);
                for (int e1 = std::max(wf.upper, k - wf.lower + 1); e1 < wf.lower && k - e1 >= wf.upper; ++e1)
                    gram_[static_cast<std::size_t>(t - 1)](w.index(f, e1), w.index(f, k - e1)) = cK;
            }
        }
    }
}

bool HermitianStructure::self_dual_compatible() const {
    for (const auto& f : w_->factors())
        if (f.lower != -f.upper - parity_) return false;
    return true;
}

Subspace HermitianStructure::dual_bilinear(const Subspace& L) const {
    if (!self_dual_compatible()) throw std::logic_error("duality needs a self-dual-compatible window");
    const Field& K = w_->field();
    std::size_t n = w_->dim();
    Mat M(gram_.size() * L.dim(), n);
    std::size_t r = 0;
    for (const auto& G : gram_)
        for (const auto& y : L.rows()) {
            Vec gy = mat_vec(K, G, y);
            for (std::size_t c = 0; c < n; ++c) M(r, c) = gy[c];
            ++r;
        }
    if (L.dim() == 0) return Subspace::whole(n);
    return Subspace::span(K, n, kernel(K, std::move(M)));
}

Subspace frob_subspace(const Field& K, const Subspace& L, unsigned p_power) {
    std::vector<Vec> rows;
    for (const auto& r : L.rows()) {
        Vec v(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) v[i] = K.frob(r[i], p_power);
        rows.push_back(std::move(v));
    }
    return Subspace::span(K, L.ambient(), rows);
}

Subspace HermitianStructure::dual_lattice(const Subspace& L) const {
    unsigned a = w_->tower().a();
    // sigma^{-1} = sigma^{level-1} on K = GF(q^level)
    return dual_bilinear(frob_subspace(w_->field(), L, a * (w_->level() - 1)));
}

Subspace HermitianStructure::frobenius_step(const Subspace& L) const {
    return dual_bilinear(frob_subspace(w_->field(), L, w_->tower().a()));
}

Subspace HermitianStructure::frobenius_power(const Subspace& L, unsigned f) const {
    Subspace x = L;
    for (unsigned i = 0; i < f; ++i) x = frobenius_step(x);
    return x;
}

SesquilinearForm HermitianStructure::lagrangian_form(unsigned f) const {
    return {gram_.at(0), w_->tower().a() * f};
}

std::vector<LatticePoint> fixed_points(const HermitianStructure& h, unsigned f, const EnumOptions& base, EnumStats* stats) {
    const Window& w = h.window();
    if (!h.self_dual_compatible()) throw std::logic_error("fixed points need a self-dual-compatible window");
    std::size_t N = w.dim() / 2;
    if (f % 2 == 0) {
        if (w.level() != f) throw std::invalid_argument("even f: window must be over k_f");
        return enumerate_points(w, N, base, stats);
    }
    if (w.level() != 2 * f) throw std::invalid_argument("odd f: window must be over k_{2f}");
    EnumOptions opt = base;
    opt.target_dim = N;
    opt.all_dims = false;
    opt.isotropic = h.lagrangian_form(f);
    auto spaces = enumerate_stable(w.field(), w.dim(), w.stable_ops(), opt, stats);
    std::vector<LatticePoint> out;
    for (auto& S : spaces) {
        if (S.dim() != N) continue;
        Strata st = strata_invariants(w, S);
        out.push_back({std::move(S), st});
    }
    return out;
}

std::vector<LatticePoint> fixed_points_by_filter(const HermitianStructure& h, unsigned f, const EnumOptions& base) {
    const Window& w = h.window();
    auto all = enumerate_points(w, w.dim() / 2, base);
    std::vector<LatticePoint> out;
    for (auto& p : all)
        if (h.frobenius_power(p.space, f) == p.space) out.push_back(std::move(p));
    return out;
}

}  // namespace ulat
