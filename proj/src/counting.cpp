#include "ulat/counting.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ulat {

using boost::multiprecision::cpp_rational;

std::int64_t checked_pow(std::int64_t base, unsigned exp) {
    std::int64_t r = 1;
    for (unsigned i = 0; i < exp; ++i)
        if (__builtin_mul_overflow(r, base, &r)) throw std::overflow_error("integer overflow in power");
    return r;
}

namespace {

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

bool in_domain(const Strata& s, int mu) { return s.b[0] >= mu && s.b[1] >= mu; }

Mat mat_pow(const Field& K, const Mat& A, int k) {
    Mat R = Mat::identity(A.rows);
    for (int i = 0; i < k; ++i) R = mat_mul(K, R, A);
    return R;
}

// A/B for subspaces B <= A, with the induced action of endomorphisms preserving both.
struct Quotient {
    const Field* K;
    Subspace B, C;  // C: complement basis reduced against B

    Quotient(const Field& F, const Subspace& A, const Subspace& Bs) : K(&F), B(Bs) {
        std::vector<Vec> red;
        for (const auto& r : A.rows()) red.push_back(B.reduce(F, r));
        C = Subspace::span(F, A.ambient(), red);
    }
    std::size_t dim() const { return C.dim(); }
    Vec coords(const Vec& x) const {
        Vec y = B.reduce(*K, x);
        Vec c(C.dim());
        for (std::size_t i = 0; i < C.dim(); ++i) c[i] = y[C.pivots()[i]];
        return c;
    }
    Mat action(const Mat& op) const {
        Mat M(dim(), dim());
        for (std::size_t k = 0; k < dim(); ++k) {
            Vec col = coords(mat_vec(*K, op, C.rows()[k]));
            for (std::size_t i = 0; i < dim(); ++i) M(i, k) = col[i];
        }
        return M;
    }
};

}  // namespace

Models theorem_models(const Invariants& inv) {
    int rp = inv.r_prime;
    if (inv.r_even()) return {{"X+[-r',-r']", 0, -rp}, {"X-[1-r',1-r']", 1, 1 - rp}};
    return {{"X-[-r',-r']", 1, -rp}, {"X+[-r',-r']", 0, -rp}};
}

bool model_is_empty(const ModelSpec& m) {
    // b1 + c2 = delta and c2 >= b2 force mu1 + mu2 <= delta
    return 2 * m.mu > m.delta;
}

Window model_window(const Instance& inst, const ModelSpec& m, unsigned level) {
    const Invariants& inv = inst.inv();
    if (model_is_empty(m)) {
        // no points; keep a well-formed zero-width window so callers need no special case
        int u1 = m.mu - inv.mm(0) - m.delta, u2 = m.mu - inv.mm(1) - m.delta;
        return Window(inst.tower(), level, {WindowFactor{&inst.torus(0), u1, std::max(u1, inv.mm(0) - m.mu)},
                                            WindowFactor{&inst.torus(1), u2, std::max(u2, inv.mm(1) - m.mu)}});
    }
    return x_window(inst.tower(), level, inst.torus(0), inst.torus(1), inv.mm(0), inv.mm(1), m.mu, m.mu, m.delta);
}

Window shifted_window(const Window& w, const std::vector<int>& shift) {
    std::vector<WindowFactor> fs = w.factors();
    for (std::size_t f = 0; f < fs.size(); ++f) {
        fs[f].upper += shift.at(f);
        fs[f].lower += shift.at(f);
    }
    return Window(w.tower(), w.level(), fs);
}

void PointSet::build_index() {
    index.clear();
    for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i].space.key(), i);
}

PointSet model_points(const Instance& inst, const ModelSpec& m, unsigned level, std::uint64_t cap) {
    PointSet s(model_window(inst, m, level));
    if (model_is_empty(m)) return s;
    EnumOptions opt;
    opt.cap = cap;
    auto all = enumerate_points(s.window, s.window.dim() / 2, opt, &s.stats);
    for (auto& p : all)
        if (in_domain(p.strata, m.mu)) s.points.push_back(std::move(p));
    s.build_index();
    return s;
}

PointSet y_points(const Instance& inst, int i, unsigned level, std::uint64_t cap) {
    int m = inst.inv().mm(i);
    PointSet s(y_window(inst.tower(), level, inst.torus(i), m));
    EnumOptions opt;
    opt.cap = cap;
    s.points = enumerate_points(s.window, static_cast<std::size_t>(m), opt, &s.stats);
    s.build_index();
    return s;
}

StrataHistogram histogram(const PointSet& s) {
    StrataHistogram h;
    for (const auto& p : s.points) ++h[{p.strata.b[0], p.strata.b[1]}];
    return h;
}

Theorem42Row verify_theorem_4_2(const Instance& inst, unsigned e, std::uint64_t cap) {
    Models M = theorem_models(inst.inv());
    unsigned level = 2 * e;
    PointSet X = model_points(inst, M.X, level, cap);
    PointSet Xp = model_points(inst, M.Xp, level, cap);
    PointSet Y1 = y_points(inst, 0, level, cap);
    PointSet Y2 = y_points(inst, 1, level, cap);
    Theorem42Row row;
    row.e = e;
    row.X = static_cast<std::int64_t>(X.points.size());
    row.Xp = static_cast<std::int64_t>(Xp.points.size());
    row.Y1 = static_cast<std::int64_t>(Y1.points.size());
    row.Y2 = static_cast<std::int64_t>(Y2.points.size());
    row.rhs = checked_pow(static_cast<std::int64_t>(inst.q()), 2 * e * static_cast<unsigned>(inst.inv().r)) * row.Y1 * row.Y2;
    row.residual = row.X - row.Xp - row.rhs;
    row.strata_X = histogram(X);
    row.strata_Xp = histogram(Xp);
    row.visited = X.stats.visited + Xp.stats.visited + Y1.stats.visited + Y2.stats.visited;
    return row;
}

bool StratumReport::ok() const {
    return partition_ok && complement_ok && std::all_of(rows.begin(), rows.end(), [](const StratumRow& r) { return r.ok(); });
}

StratumReport verify_stratum_law(const Instance& inst, unsigned e, std::uint64_t cap) {
    const Invariants& inv = inst.inv();
    Models M = theorem_models(inv);
    unsigned level = 2 * e;
    StratumReport rep;
    rep.e = e;
    PointSet Y1 = y_points(inst, 0, level, cap);
    PointSet Y2 = y_points(inst, 1, level, cap);
    std::int64_t Q = checked_pow(static_cast<std::int64_t>(inst.q()), 2 * e);
    std::int64_t fiber = checked_pow(Q, static_cast<unsigned>(inv.r));
    std::int64_t expected = fiber * static_cast<std::int64_t>(Y1.points.size() * Y2.points.size());
    PointSet X = model_points(inst, M.X, level, cap);
    PointSet Xp = model_points(inst, M.Xp, level, cap);

    for (const auto* model : {&M.X, &M.Xp}) {
        const PointSet& D = model == &M.X ? X : Xp;
        int delta = model->delta;
        for (int i = 0; i < 2; ++i) {
            std::map<int, std::uint64_t> by_j;
            for (const auto& p : D.points) ++by_j[p.strata.b[static_cast<std::size_t>(i)]];
            std::uint64_t total = 0;
            for (const auto& [j, cnt] : by_j) total += cnt;
            if (total != D.points.size()) rep.partition_ok = false;
            for (const auto& [j, cnt] : by_j) {
                StratumRow row;
                row.model = model->name;
                row.i = i + 1;
                row.j = j;
                row.in_domain = cnt;
                row.expected = expected;
                // the whole stratum b_i = j lies in X[j, delta - j - r] (resp. its mirror)
                int other = delta - j - inv.r;
                int mu1 = i == 0 ? j : other, mu2 = i == 0 ? other : j;
                Window w = x_window(inst.tower(), level, inst.torus(0), inst.torus(1), inv.mm(0), inv.mm(1), mu1, mu2, delta);
                EnumOptions opt;
                opt.cap = cap;
                int N = inv.mm(0) + inv.mm(1) - mu1 - mu2 + delta;
                auto pts = enumerate_points(w, static_cast<std::size_t>(N), opt);
                Window fw1 = w.factor_window(0), fw2 = w.factor_window(1);
                std::map<std::pair<std::vector<Elem>, std::vector<Elem>>, std::uint64_t> fibers;
                for (const auto& p : pts) {
                    if (p.strata.b[static_cast<std::size_t>(i)] != j || p.strata.b[static_cast<std::size_t>(1 - i)] < other) continue;
                    ++row.full;
                    // pi_{1,j} = (varpi^j B1, varpi^{delta-j} C2); pi_{2,j} = (varpi^{delta-j} C1, varpi^j B2)
                    Subspace A1 = i == 0 ? w.meet_factor(p.space, 0) : w.project_factor(p.space, 0);
                    Subspace A2 = i == 0 ? w.project_factor(p.space, 1) : w.meet_factor(p.space, 1);
                    int s1 = i == 0 ? j : delta - j, s2 = i == 0 ? delta - j : j;
                    auto M1 = relocate(fw1, A1, Y1.window, {s1});
                    auto M2 = relocate(fw2, A2, Y2.window, {s2});
                    if (!M1 || !M2 || !Y1.contains(*M1) || !Y2.contains(*M2)) {
                        ++row.off_target;
                        continue;
                    }
                    ++fibers[{M1->key(), M2->key()}];
                }
                row.fibers = fibers.size();
                for (const auto& [k, c] : fibers)
                    if (static_cast<std::int64_t>(c) != fiber) ++row.bad_fibers;
                row.missing_pairs = Y1.points.size() * Y2.points.size() - fibers.size();
                rep.rows.push_back(row);
            }
        }
    }

    // X minus i_k(X') is exactly the stratum b_k = -r' of X.
    std::vector<std::vector<int>> emb = inv.r_even() ? std::vector<std::vector<int>>{{0, 1}, {1, 0}}
                                                     : std::vector<std::vector<int>>{{-1, 0}, {0, -1}};
    for (int k = 0; k < 2; ++k) {
        std::set<std::vector<Elem>> image;
        for (const auto& p : Xp.points) {
            auto L = relocate(Xp.window, p.space, X.window, emb[static_cast<std::size_t>(k)]);
            if (!L || !X.contains(*L)) {
                rep.complement_ok = false;
                rep.notes.push_back("embedding i" + std::to_string(k + 1) + " leaves X");
                continue;
            }
            image.insert(L->key());
        }
        if (image.size() != Xp.points.size()) rep.complement_ok = false;
        for (const auto& p : X.points) {
            bool in_U = p.strata.b[static_cast<std::size_t>(k)] == -inv.r_prime;
            bool in_image = image.count(p.space.key()) != 0;
            if (in_U == in_image) {
                rep.complement_ok = false;
                rep.notes.push_back("complement of i" + std::to_string(k + 1) + "(X') differs from U_" + std::to_string(k + 1));
                break;
            }
        }
    }
    return rep;
}

OrbitalRow orbital_integrals(const Instance& inst, unsigned f, std::uint64_t cap) {
    const Invariants& inv = inst.inv();
    Models M = theorem_models(inv);
    unsigned level = f % 2 == 0 ? f : 2 * f;
    EnumOptions opt;
    opt.cap = cap;
    OrbitalRow row;
    row.f = f;
    auto count_model = [&](const ModelSpec& m) -> std::int64_t {
        if (model_is_empty(m)) return 0;
        Window w = model_window(inst, m, level);
        HermitianStructure h(w, m.delta);
        auto pts = fixed_points(h, f, opt);
        std::int64_t n = 0;
        for (const auto& p : pts) {
            if (in_domain(p.strata, m.mu))
                ++n;
            else
                ++row.out_of_domain;
        }
        return n;
    };
    auto count_y = [&](int i) {
        Window w = y_window(inst.tower(), level, inst.torus(i), inv.mm(i));
        HermitianStructure h(w, 0);
        return static_cast<std::int64_t>(fixed_points(h, f, opt).size());
    };
    row.fixed_X = count_model(M.X);
    row.fixed_Xp = count_model(M.Xp);
    row.Y1 = count_y(0);
    row.Y2 = count_y(1);
    row.SO = row.Y1 * row.Y2;
    // X^F is the + side for even r and the - side for odd r
    row.O_kappa = inv.r_even() ? row.fixed_X - row.fixed_Xp : row.fixed_Xp - row.fixed_X;
    std::int64_t sign = inv.r_even() ? 1 : -1;
    row.predicted = sign * checked_pow(static_cast<std::int64_t>(inst.q()), f * static_cast<unsigned>(inv.r)) * row.SO;
    row.asserted = f % 2 == 0 || (inv.n[0] == 1 && inv.n[1] == 1);
    return row;
}

int hom_dimension(const Instance& inst, const Window& w1, const Subspace& M1, const Window& w2, const Subspace& M2) {
    const Field& K = w1.field();
    int r = inst.inv().r;
    const WindowFactor& f1 = w1.factor(0);
    const WindowFactor& f2 = w2.factor(0);
    // kernel of P2(gamma1) on E'_1/M1 lies in varpi^{-r} varpi^{upper} O / M1
    Window V(w1.tower(), w1.level(), {WindowFactor{f1.torus, f1.upper - r, f1.lower}});
    auto M1v = relocate(w1, M1, V, {0});
    int n1 = static_cast<int>(f1.ext().degree()), n2 = static_cast<int>(f2.ext().degree());
    int N = ceil_div(f1.lower - f1.upper + r, n1);  // varpi_F^N kills V
    Window Qw(w2.tower(), w2.level(), {WindowFactor{f2.torus, f2.upper, f2.lower + n2 * N}});
    auto M2q = relocate(w2, M2, Qw, {0});
    if (!M1v || !M2q) throw std::logic_error("hom_dimension: lattice does not fit its window");
    Subspace nuN = M2q->image(K, mat_pow(K, Qw.nu(), N));
    Quotient Qs(K, *M2q, nuN);
    Quotient Vs(K, Subspace::whole(V.dim()), *M1v);
    std::size_t dq = Qs.dim(), dv = Vs.dim();
    std::vector<std::pair<Mat, Mat>> ops{{Qs.action(Qw.nu()), Vs.action(V.nu())}, {Qs.action(Qw.u()), Vs.action(V.u())}};
    std::size_t nv = dq * dv;
    if (nv == 0) return 0;
    Mat S(ops.size() * nv, nv);
    std::size_t row = 0;
    for (const auto& [Aq, Av] : ops)
        for (std::size_t a = 0; a < dv; ++a)
            for (std::size_t c = 0; c < dq; ++c, ++row) {
                // (X Aq - Av X)[a][c]
                for (std::size_t b = 0; b < dq; ++b) S(row, a * dq + b) = K.add(S(row, a * dq + b), Aq(b, c));
                for (std::size_t a2 = 0; a2 < dv; ++a2) S(row, a2 * dq + c) = K.sub(S(row, a2 * dq + c), Av(a, a2));
            }
    return static_cast<int>(nv - rank(K, std::move(S)));
}

bool HomReport::ok() const {
    return !samples.empty() && std::all_of(samples.begin(), samples.end(), [&](const HomSample& s) { return s.dim == r; });
}

HomReport verify_hom_dimension(const Instance& inst, std::size_t samples, std::uint64_t seed, std::uint64_t cap) {
    PointSet Y1 = y_points(inst, 0, 2, cap);
    PointSet Y2 = y_points(inst, 1, 2, cap);
    std::vector<HomSample> cand;
    for (std::size_t a = 0; a < Y1.points.size(); ++a)
        for (std::size_t b = 0; b < Y2.points.size(); ++b)
            for (int s1 = -2; s1 <= 2; ++s1)
                for (int s2 = -2; s2 <= 2; ++s2) cand.push_back({a, b, s1, s2, 0});
    std::mt19937_64 rng(seed);
    std::shuffle(cand.begin(), cand.end(), rng);
    if (cand.size() > samples) cand.resize(samples);
    HomReport rep;
    rep.r = inst.inv().r;
    for (auto s : cand) {
        Window w1 = shifted_window(Y1.window, {s.s1});
        Window w2 = shifted_window(Y2.window, {s.s2});
        auto M1 = relocate(Y1.window, Y1.points[s.y1].space, w1, {s.s1});
        auto M2 = relocate(Y2.window, Y2.points[s.y2].space, w2, {s.s2});
        s.dim = hom_dimension(inst, w1, *M1, w2, *M2);
        rep.samples.push_back(s);
    }
    return rep;
}

PolyFit polynomiality_probe(const std::vector<std::pair<std::int64_t, std::int64_t>>& points) {
    if (points.size() < 2) throw std::invalid_argument("interpolation underdetermined: need at least two degrees");
    std::size_t n = points.size();
    std::vector<cpp_rational> x(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = points[i].first;
        c[i] = points[i].second;
    }
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - k]);
    // Newton form to monomial coefficients
    std::vector<cpp_rational> p{c[n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
        std::vector<cpp_rational> q(p.size() + 1, cpp_rational(0));
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= p[i] * x[k];
        }
        q[0] += c[k];
        p = std::move(q);
    }
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    PolyFit fit;
    fit.overdetermined = p.size() < n;
    fit.nonneg_integer = true;
    std::ostringstream text;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        fit.nonneg_integer = fit.nonneg_integer && p[i] >= 0 && denominator(p[i]) == 1;
        if (p[i] == 0) continue;
        text << (first ? "" : " + ") << p[i];
        if (i >= 1) text << "*Q";
        if (i >= 2) text << "^" << i;
        first = false;
    }
    for (const auto& v : p) fit.coeffs.push_back(v.str());
    fit.text = first ? "0" : text.str();
    return fit;
}

void CheckTally::record(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
        ++violations;
        if (examples.size() < 5) examples.push_back(what);
    }
}

InvariantReport check_invariants(const Instance& inst, unsigned level, std::uint64_t cap) {
    const Invariants& inv = inst.inv();
    Models M = theorem_models(inv);
    InvariantReport rep;
    const Field* K = nullptr;
    unsigned a = inst.tower().a();
    for (const auto* model : {&M.X, &M.Xp}) {
        if (model_is_empty(*model)) continue;
        PointSet D = model_points(inst, *model, level, cap);
        const Window& w = D.window;
        K = &w.field();
        int delta = model->delta;
        HermitianStructure h(w, delta);
        Window fw[2] = {w.factor_window(0), w.factor_window(1)};
        // tau^{+} = alpha1 o alpha2^{-1} on X+, tau^{-} = alpha2^{-1} o alpha1 on X-
        Window tau_w = shifted_window(w, {1, -1});
        std::vector<std::vector<int>> steps = delta == 0 ? std::vector<std::vector<int>>{{0, -1}, {1, 0}}
                                                         : std::vector<std::vector<int>>{{1, 0}, {0, -1}};
        Window mid = shifted_window(w, steps[0]);
        for (const auto& p : D.points) {
            const Strata& s = p.strata;
            std::string tag = model->name + " point";
            rep["strata_index_relation"].record(s.b[0] + s.c[1] == delta && s.b[1] + s.c[0] == delta && s.ind == delta, tag);
            for (int i = 0; i < 2; ++i) {
                auto ii = static_cast<std::size_t>(i);
                rep["strata_inequalities"].record(s.b[ii] <= s.c[ii] && s.c[ii] <= s.b[ii] + inv.r, tag);
                rep["sandwich"].record(sandwich_holds(fw[i], w.meet_factor(p.space, ii), inv.mm(i)), tag + " B_i");
                rep["sandwich"].record(sandwich_holds(fw[i], w.project_factor(p.space, ii), inv.mm(i)), tag + " C_i");
            }
            Subspace d = h.dual_bilinear(p.space);
            rep["biduality"].record(h.dual_bilinear(d) == p.space, tag);
            Subspace dh = h.dual_lattice(p.space);
            if (level == 2) rep["biduality"].record(h.dual_lattice(dh) == p.space, tag + " (hermitian)");
            rep[delta == 0 ? "index_law_plus" : "index_law_minus"].record(w.index_of(dh) == -s.ind + 2 * delta, tag);
            Subspace F = h.frobenius_step(p.space);
            Strata fs = strata_invariants(w, F);
            rep["frobenius_strata_relation"].record(fs.b[0] == delta - s.c[0] && fs.b[1] == delta - s.c[1], tag);
            rep["frobenius_domain_stability"].record(D.contains(F), tag);
            rep["frobenius_square"].record(h.frobenius_step(F) == frob_subspace(*K, p.space, 2 * a), tag);
            auto direct = relocate(w, p.space, tau_w, {1, -1});
            auto m1 = relocate(w, p.space, mid, steps[0]);
            auto viaalpha = m1 ? relocate(mid, *m1, tau_w, steps[1]) : std::nullopt;
            rep[delta == 0 ? "tau_plus_is_alpha1_alpha2inv" : "tau_minus_is_alpha2inv_alpha1"].record(
                direct && viaalpha && *direct == *viaalpha, tag);
            for (int n = -inv.r - 1; n <= inv.r + 1; ++n) {
                if (std::abs(n) <= inv.r) continue;
                auto t = relocate(w, p.space, w, {n, -n});
                bool inside = t && D.contains(*t);
                rep["tau_translates_disjoint_beyond_r"].record(!inside, tag);
            }
        }
    }
    for (int i = 0; i < 2; ++i) {
        PointSet Y = y_points(inst, i, level, cap);
        int m = inv.mm(i);
        for (const auto& p : Y.points) {
            rep["Y_in_Z"].record(check_Z_membership(Y.window, p.space, m), "Y point");
            rep["sandwich"].record(sandwich_holds(Y.window, p.space, m), "Y point");
        }
        if (m > 0 && Y.window.dim() <= 8 && level == 2) {
            std::vector<StableOp> ops;
            for (int k = m; k < 2 * m; ++k) ops.push_back({Y.window.uniformizer_power(0, k), {0}});
            EnumOptions opt;
            opt.cap = cap;
            opt.all_dims = true;
            opt.target_dim = Y.window.dim();
            for (const auto& F : enumerate_stable(Y.window.field(), Y.window.dim(), ops, opt))
                rep["nilpotent_lemma"].record(nilpotent_lemma_violations(Y.window, F, m) == 0, "Z-family subspace");
        }
    }
    return rep;
}

}  // namespace ulat
