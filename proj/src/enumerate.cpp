#include "ulat/enumerate.hpp"

#include <algorithm>
#include <unordered_set>

namespace ulat {

namespace {

Vec frob_vec(const Field& K, const Vec& v, unsigned twist) {
    if (twist == 0) return v;
    Vec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = K.frob(v[i], twist);
    return w;
}

// Calls fn on one representative of every line in the span of basis (first nonzero coordinate 1).
template <class Fn>
void for_each_line(const Field& K, const std::vector<Vec>& basis, Fn fn) {
    std::size_t k = basis.size();
    if (k == 0) return;
    std::size_t len = basis[0].size();
    std::uint32_t Q = K.size();
    for (std::size_t lead = 0; lead < k; ++lead) {
        // coefficients: 0 before lead, 1 at lead, anything after
        std::vector<Elem> c(k - lead - 1, 0);
        while (true) {
            Vec v = basis[lead];
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] == 0) continue;
                const Vec& b = basis[lead + 1 + i];
                for (std::size_t j = 0; j < len; ++j)
                    if (b[j] != 0) v[j] = K.add(v[j], K.mul(c[i], b[j]));
            }
            fn(v);
            std::size_t i = 0;
            while (i < c.size() && ++c[i] == Q) c[i++] = 0;
            if (i == c.size()) break;
        }
    }
}

}  // namespace

Elem pairing(const Field& K, const SesquilinearForm& f, const Vec& x, const Vec& y) {
    Vec fy = frob_vec(K, y, f.twist);
    Elem acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        Elem s = 0;
        for (std::size_t j = 0; j < fy.size(); ++j)
            if (fy[j] != 0 && f.G(i, j) != 0) s = K.add(s, K.mul(f.G(i, j), fy[j]));
        acc = K.add(acc, K.mul(x[i], s));
    }
    return acc;
}

std::vector<Subspace> enumerate_stable(const Field& K, std::size_t n, const std::vector<StableOp>& ops,
                                       const EnumOptions& opt, EnumStats* stats) {
    std::size_t target = std::min(opt.target_dim, n);
    std::vector<Subspace> out;
    std::vector<Subspace> layer{Subspace(n)};
    EnumStats st;
    st.visited = 1;
    st.per_dim.push_back(1);

    // eigenvalue tuples, one entry per op
    std::vector<std::vector<Elem>> tuples{{}};
    for (const auto& op : ops) {
        std::vector<std::vector<Elem>> next;
        for (const auto& t : tuples)
            for (Elem l : op.eigenvalues) {
                auto u = t;
                u.push_back(l);
                next.push_back(std::move(u));
            }
        tuples = std::move(next);
    }

    for (std::size_t d = 0;; ++d) {
        if (opt.all_dims || d == target) out.insert(out.end(), layer.begin(), layer.end());
        if (d == target) break;
        std::unordered_set<std::vector<Elem>, KeyHash> seen;
        std::vector<Subspace> next;
        for (const Subspace& S : layer) {
            auto J = S.non_pivots();
            std::size_t m = J.size();
            // ops on W/S in the non-pivot coordinates
            std::vector<Mat> bar;
            for (const auto& op : ops) {
                Mat B(m, m);
                for (std::size_t c = 0; c < m; ++c) {
                    Vec col(n);
                    for (std::size_t r = 0; r < n; ++r) col[r] = op.A(r, J[c]);
                    col = S.reduce(K, std::move(col));
                    for (std::size_t r = 0; r < m; ++r) B(r, c) = col[J[r]];
                }
                bar.push_back(std::move(B));
            }
            std::vector<Vec> ortho;  // rows c with c . v = 0 iff v is orthogonal to S
            if (opt.isotropic) {
                for (const auto& s : S.rows()) {
                    Vec fs = frob_vec(K, s, opt.isotropic->twist);
                    Vec c(m, 0);
                    for (std::size_t a = 0; a < m; ++a) {
                        Elem acc = 0;
                        for (std::size_t b = 0; b < n; ++b)
                            if (fs[b] != 0) acc = K.add(acc, K.mul(opt.isotropic->G(J[a], b), fs[b]));
                        c[a] = acc;
                    }
                    ortho.push_back(std::move(c));
                }
            }
            for (const auto& lam : tuples) {
                Mat M(ops.size() * m + ortho.size(), m);
                for (std::size_t o = 0; o < ops.size(); ++o) {
                    Mat B = mat_scale_sub_identity(K, bar[o], lam[o]);
                    std::copy(B.a.begin(), B.a.end(), M.a.begin() + static_cast<long>(o * m * m));
                }
                for (std::size_t i = 0; i < ortho.size(); ++i)
                    std::copy(ortho[i].begin(), ortho[i].end(), M.a.begin() + static_cast<long>((ops.size() * m + i) * m));
                auto ker = kernel(K, std::move(M));
                for_each_line(K, ker, [&](const Vec& w) {
                    Vec v(n, 0);
                    for (std::size_t a = 0; a < m; ++a) v[J[a]] = w[a];
                    if (opt.isotropic && pairing(K, *opt.isotropic, v, v) != 0) return;
                    Subspace T = S.plus(K, {v});
                    auto key = T.key();
                    if (!seen.insert(std::move(key)).second) return;
                    if (++st.visited > opt.cap)
                        throw CapExceeded("enumeration cap exceeded (" + std::to_string(opt.cap) + " subspaces)");
                    next.push_back(std::move(T));
                });
            }
        }
        st.per_dim.push_back(next.size());
        layer = std::move(next);
        if (layer.empty()) break;
    }
    std::sort(out.begin(), out.end());
    if (stats) *stats = st;
    return out;
}

std::vector<Subspace> brute_force_stable(const Field& K, std::size_t n, const std::vector<Mat>& ops,
                                         std::size_t max_dim) {
    std::vector<Subspace> out;
    std::uint32_t Q = K.size();
    for (std::size_t d = 0; d <= std::min(max_dim, n); ++d) {
        // choose pivot columns, then free entries right of each pivot that are not pivot columns
        std::vector<std::size_t> piv(d);
        for (std::size_t i = 0; i < d; ++i) piv[i] = i;
        while (true) {
            std::vector<std::pair<std::size_t, std::size_t>> free;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t c = piv[i] + 1; c < n; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(i, c);
            std::vector<Elem> val(free.size(), 0);
            while (true) {
                std::vector<Vec> rows(d, Vec(n, 0));
                for (std::size_t i = 0; i < d; ++i) rows[i][piv[i]] = 1;
                for (std::size_t f = 0; f < free.size(); ++f) rows[free[f].first][free[f].second] = val[f];
                Subspace S = Subspace::span(K, n, rows);
                bool ok = std::all_of(ops.begin(), ops.end(), [&](const Mat& A) { return S.stable_under(K, A); });
                if (ok) out.push_back(std::move(S));
                std::size_t f = 0;
                while (f < val.size() && ++val[f] == Q) val[f++] = 0;
                if (f == val.size()) break;
            }
            // next combination of pivots
            std::size_t i = d;
            while (i > 0 && piv[i - 1] == n - d + i - 1) --i;
            if (i == 0) break;
            ++piv[i - 1];
            for (std::size_t j = i; j < d; ++j) piv[j] = piv[j - 1] + 1;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ulat
