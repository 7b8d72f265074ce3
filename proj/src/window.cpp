#include "ulat/window.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ulat {

Window::Window(FieldTower& tower, unsigned level, std::vector<WindowFactor> factors)
    : tower_(&tower), level_(level), factors_(std::move(factors)) {
    if (level % 2 != 0) throw std::invalid_argument("window coefficient field must contain k'");
    K_ = &tower.level(level);
    kp_to_K_ = tower.embedding_table(2, level);
    for (const auto& f : factors_) {
        if (f.dim() < 0) throw std::invalid_argument("window factor with upper > lower");
        offsets_.push_back(dim_);
        dim_ += static_cast<std::size_t>(f.dim());
    }
    std::vector<Series> h, g;
    for (const auto& f : factors_) {
        h.push_back(f.ext().pi_F());
        g.push_back(f.torus->gamma);
    }
    nu_ = mult_matrix(h);
    u_ = mult_matrix(g);
}

std::size_t Window::index(std::size_t f, int e) const {
    if (!contains_exponent(f, e)) throw std::out_of_range("exponent outside window");
    return offsets_[f] + static_cast<std::size_t>(factors_[f].lower - 1 - e);
}

std::size_t Window::factor_of(std::size_t coord) const {
    for (std::size_t f = factors_.size(); f-- > 0;)
        if (coord >= offsets_[f]) return f;
    throw std::out_of_range("coordinate outside window");
}

int Window::exponent(std::size_t coord) const {
    std::size_t f = factor_of(coord);
    return factors_[f].lower - 1 - static_cast<int>(coord - offsets_[f]);
}

Mat Window::mult_matrix(const std::vector<Series>& per_factor) const {
    Mat M(dim_, dim_);
    for (std::size_t f = 0; f < factors_.size(); ++f) {
        const Series& x = per_factor.at(f);
        if (x.valuation_lower_bound() < 0) throw std::invalid_argument("window operator must be integral");
        const auto& wf = factors_[f];
        for (int e = wf.upper; e < wf.lower; ++e)
            for (int e2 = e; e2 < wf.lower; ++e2) {
                Elem c = x.coeff(e2 - e);
                if (c != 0) M(index(f, e2), index(f, e)) = embed(c);
            }
    }
    return M;
}

Mat Window::uniformizer_power(std::size_t f, int k) const {
    Mat M(dim_, dim_);
    const auto& wf = factors_[f];
    for (int e = wf.upper; e < wf.lower; ++e)
        if (e + k < wf.lower) M(index(f, e + k), index(f, e)) = 1;
    return M;
}

std::vector<Elem> Window::u_eigenvalues() const {
    std::vector<Elem> ev;
    for (const auto& f : factors_) {
        if (f.dim() == 0) continue;
        Elem l = embed(f.torus->residue());
        if (std::find(ev.begin(), ev.end(), l) == ev.end()) ev.push_back(l);
    }
    return ev;
}

std::vector<StableOp> Window::stable_ops() const { return {{nu_, {0}}, {u_, u_eigenvalues()}}; }

int Window::ref_offset() const {
    int s = 0;
    for (const auto& f : factors_) s += f.lower;
    return s;
}

Subspace Window::factor_space(std::size_t f) const {
    std::vector<Vec> rows;
    for (int e = factors_[f].upper; e < factors_[f].lower; ++e) {
        Vec v(dim_, 0);
        v[index(f, e)] = 1;
        rows.push_back(std::move(v));
    }
    return Subspace::span(*K_, dim_, rows);
}

Window Window::factor_window(std::size_t f) const { return Window(*tower_, level_, {factors_[f]}); }

namespace {

Subspace slice(const Field& K, const Subspace& L, std::size_t off, std::size_t len) {
    std::vector<Vec> rows;
    for (const auto& r : L.rows()) rows.emplace_back(r.begin() + static_cast<long>(off), r.begin() + static_cast<long>(off + len));
    return Subspace::span(K, len, rows);
}

}  // namespace

Subspace Window::meet_factor(const Subspace& L, std::size_t f) const {
    return slice(*K_, L.intersect(*K_, factor_space(f)), offsets_[f], static_cast<std::size_t>(factors_[f].dim()));
}

Subspace Window::project_factor(const Subspace& L, std::size_t f) const {
    return slice(*K_, L, offsets_[f], static_cast<std::size_t>(factors_[f].dim()));
}

Subspace Window::power_lattice(std::size_t f, int e) const {
    std::vector<Vec> rows;
    for (int x = std::max(e, factors_[f].upper); x < factors_[f].lower; ++x) {
        Vec v(dim_, 0);
        v[index(f, x)] = 1;
        rows.push_back(std::move(v));
    }
    return Subspace::span(*K_, dim_, rows);
}

std::string Window::describe() const {
    std::ostringstream os;
    os << "window over level " << level_ << ":";
    for (const auto& f : factors_) os << " [" << f.upper << "," << f.lower << ")";
    return os.str();
}

Window x_window(FieldTower& tower, unsigned level, const TorusElement& t1, const TorusElement& t2, int m1, int m2,
                int mu1, int mu2, int delta) {
    return Window(tower, level,
                  {WindowFactor{&t1, mu2 - m1 - delta, m1 - mu1}, WindowFactor{&t2, mu1 - m2 - delta, m2 - mu2}});
}

Window y_window(FieldTower& tower, unsigned level, const TorusElement& t, int m) {
    return Window(tower, level, {WindowFactor{&t, -m, m}});
}

Strata strata_invariants(const Window& w, const Subspace& L) {
    Strata s;
    s.ind = w.index_of(L);
    for (std::size_t f = 0; f < w.num_factors() && f < 2; ++f) {
        int lo = w.factor(f).lower;
        s.b[f] = static_cast<int>(w.meet_factor(L, f).dim()) - lo;
        s.c[f] = static_cast<int>(w.project_factor(L, f).dim()) - lo;
    }
    return s;
}

std::vector<LatticePoint> enumerate_points(const Window& w, std::size_t target_dim, const EnumOptions& base,
                                           EnumStats* stats) {
    EnumOptions opt = base;
    opt.target_dim = target_dim;
    opt.all_dims = false;
    auto spaces = enumerate_stable(w.field(), w.dim(), w.stable_ops(), opt, stats);
    std::vector<LatticePoint> out;
    out.reserve(spaces.size());
    for (auto& S : spaces) {
        if (S.dim() != target_dim) continue;
        Strata st = strata_invariants(w, S);
        out.push_back({std::move(S), st});
    }
    return out;
}

std::optional<Subspace> relocate(const Window& from, const Subspace& L, const Window& to, const std::vector<int>& shift) {
    if (from.num_factors() != to.num_factors() || shift.size() != from.num_factors())
        throw std::invalid_argument("relocate: window mismatch");
    const Field& K = from.field();
    std::vector<Vec> gens;
    for (const auto& row : L.rows()) {
        Vec v(to.dim(), 0);
        for (std::size_t c = 0; c < from.dim(); ++c) {
            if (row[c] == 0) continue;
            std::size_t f = from.factor_of(c);
            int e = from.exponent(c) + shift[f];
            if (e < to.factor(f).upper) return std::nullopt;
            if (e >= to.factor(f).lower) continue;
            v[to.index(f, e)] = row[c];
        }
        gens.push_back(std::move(v));
    }
    for (std::size_t f = 0; f < from.num_factors(); ++f) {
        int lo = from.factor(f).lower + shift[f];
        const auto& tf = to.factor(f);
        if (lo < tf.upper) return std::nullopt;
        for (int e = lo; e < tf.lower; ++e) {
            Vec v(to.dim(), 0);
            v[to.index(f, e)] = 1;
            gens.push_back(std::move(v));
        }
        // the image must contain varpi^e for tf.lower <= e < lo
        for (int e = tf.lower; e < lo; ++e) {
            int src = e - shift[f];
            if (!from.contains_exponent(f, src)) return std::nullopt;
            Vec v(from.dim(), 0);
            v[from.index(f, src)] = 1;
            if (!L.contains(K, v)) return std::nullopt;
        }
    }
    return Subspace::span(K, to.dim(), gens);
}

std::optional<Subspace> translate_tau(const Window& from, const Subspace& L, const Window& to, int n) {
    return relocate(from, L, to, {n, -n});
}

std::optional<Subspace> alpha_map(const Window& from, const Subspace& L, const Window& to, int which, bool inverse) {
    int s = inverse ? -1 : 1;
    return relocate(from, L, to, which == 1 ? std::vector<int>{s, 0} : std::vector<int>{0, s});
}

bool check_Z_membership(const Window& y, const Subspace& M, int m) {
    if (static_cast<int>(M.dim()) != m) return false;
    for (int k = m; k < static_cast<int>(y.dim()); ++k)
        if (!M.stable_under(y.field(), y.uniformizer_power(0, k))) return false;
    return true;
}

int nilpotent_lemma_violations(const Window& y, const Subspace& F, int m) {
    const Field& K = y.field();
    const auto& wf = y.factor(0);
    int e = wf.dim();
    int bad = 0;
    auto img = [&](int l) { return y.power_lattice(0, wf.upper + l); };  // Im(N^l)
    auto ker = [&](int l) { return y.power_lattice(0, wf.lower - l); };  // Ker(N^l)
    for (int l = 1; l <= e; ++l) {
        if (!img(l).contains(K, F) && !F.contains(K, img(m + l - 1))) ++bad;
        if (!F.contains(K, ker(l)) && !ker(m + l - 1).contains(K, F)) ++bad;
    }
    return bad;
}

bool sandwich_holds(const Window& single, const Subspace& L, int m) {
    const Field& K = single.field();
    const auto& wf = single.factor(0);
    int ind = single.index_of(L);
    int low = m - ind, high = -m - ind;
    if (low < wf.upper) return false;
    if (!L.contains(K, single.power_lattice(0, low))) return false;
    if (high > wf.lower) return false;
    return single.power_lattice(0, high).contains(K, L);
}

std::string dump_line(const Window& w, const LatticePoint& p) {
    std::ostringstream os;
    for (const auto& r : p.space.rows()) {
        os << '(';
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << ") ";
    }
    (void)w;
    os << p.strata.ind << ' ' << p.strata.b[0] << ' ' << p.strata.c[0] << ' ' << p.strata.b[1] << ' ' << p.strata.c[1];
    return os.str();
}

}  // namespace ulat
