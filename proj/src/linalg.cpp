#include "ulat/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ulat {

Mat Mat::identity(std::size_t n) {
    Mat I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Mat M(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
        std::copy(rows[i].begin(), rows[i].end(), M.a.begin() + static_cast<long>(i * cols));
    }
    return M;
}

Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch");
    Mat C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            Elem x = A(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j) {
                Elem y = B(k, j);
                if (y != 0) C(i, j) = F.add(C(i, j), F.mul(x, y));
            }
        }
    return C;
}

Mat mat_add(const Field& F, const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matrix shape mismatch");
    Mat C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(C.a[i], B.a[i]);
    return C;
}

Mat mat_scale_sub_identity(const Field& F, const Mat& A, Elem lambda) {
    Mat C = A;
    Elem m = F.neg(lambda);
    for (std::size_t i = 0; i < std::min(C.rows, C.cols); ++i) C(i, i) = F.add(C(i, i), m);
    return C;
}

Vec mat_vec(const Field& F, const Mat& A, const Vec& x) {
    Vec y(A.rows, 0);
    for (std::size_t i = 0; i < A.rows; ++i) {
        Elem acc = 0;
        for (std::size_t j = 0; j < A.cols; ++j)
            if (x[j] != 0 && A(i, j) != 0) acc = F.add(acc, F.mul(A(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

Mat transpose(const Mat& A) {
    Mat T(A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

Mat map_entries(const Mat& A, const std::function<Elem(Elem)>& fn) {
    Mat B = A;
    for (auto& x : B.a) x = fn(x);
    return B;
}

std::vector<std::size_t> rref(const Field& F, Mat& A) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
        std::size_t p = r;
        while (p < A.rows && A(p, c) == 0) ++p;
        if (p == A.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < A.cols; ++j) std::swap(A(p, j), A(r, j));
        Elem inv = F.inv(A(r, c));
        for (std::size_t j = c; j < A.cols; ++j) A(r, j) = F.mul(A(r, j), inv);
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i == r || A(i, c) == 0) continue;
            Elem f = F.neg(A(i, c));
            for (std::size_t j = c; j < A.cols; ++j)
                if (A(r, j) != 0) A(i, j) = F.add(A(i, j), F.mul(f, A(r, j)));
        }
        piv.push_back(c);
        ++r;
    }
    A.rows = r;
    A.a.resize(r * A.cols);
    return piv;
}

std::size_t rank(const Field& F, Mat A) { return rref(F, A).size(); }

std::vector<Vec> kernel(const Field& F, Mat A) {
    std::size_t n = A.cols;
    auto piv = rref(F, A);
    std::vector<bool> is_piv(n, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_piv[free]) continue;
        Vec v(n, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(A(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

Subspace Subspace::span(const Field& F, std::size_t n, const std::vector<Vec>& gens) {
    Subspace S(n);
    if (gens.empty()) return S;
    Mat M = Mat::from_rows(gens, n);
    S.pivots_ = rref(F, M);
    for (std::size_t i = 0; i < M.rows; ++i) S.rows_.push_back(M.row(i));
    return S;
}

Subspace Subspace::whole(std::size_t n) {
    Subspace S(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec v(n, 0);
        v[i] = 1;
        S.rows_.push_back(std::move(v));
        S.pivots_.push_back(i);
    }
    return S;
}

std::vector<std::size_t> Subspace::non_pivots() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < n_; ++c) {
        if (k < pivots_.size() && pivots_[k] == c) {
            ++k;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

Vec Subspace::reduce(const Field& F, Vec v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Elem c = v[pivots_[i]];
        if (c == 0) continue;
        Elem f = F.neg(c);
        const Vec& r = rows_[i];
        for (std::size_t j = pivots_[i]; j < n_; ++j)
            if (r[j] != 0) v[j] = F.add(v[j], F.mul(f, r[j]));
    }
    return v;
}

bool Subspace::contains(const Field& F, const Vec& v) const {
    Vec w = reduce(F, v);
    return std::all_of(w.begin(), w.end(), [](Elem x) { return x == 0; });
}

bool Subspace::contains(const Field& F, const Subspace& o) const {
    return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const Vec& v) { return contains(F, v); });
}

Subspace Subspace::plus(const Field& F, const std::vector<Vec>& gens) const {
    std::vector<Vec> all = rows_;
    all.insert(all.end(), gens.begin(), gens.end());
    return span(F, n_, all);
}

Subspace Subspace::intersect(const Field& F, const Subspace& o) const {
    // Solve sum a_i r_i = sum b_j s_j; the intersection is spanned by sum a_i r_i.
    std::size_t d1 = dim(), d2 = o.dim();
    if (d1 == 0 || d2 == 0) return Subspace(n_);
    Mat M(n_, d1 + d2);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t c = 0; c < n_; ++c) M(c, i) = rows_[i][c];
    for (std::size_t j = 0; j < d2; ++j)
        for (std::size_t c = 0; c < n_; ++c) M(c, d1 + j) = F.neg(o.rows_[j][c]);
    std::vector<Vec> gens;
    for (const auto& k : kernel(F, M)) {
        Vec v(n_, 0);
        for (std::size_t i = 0; i < d1; ++i)
            if (k[i] != 0)
                for (std::size_t c = 0; c < n_; ++c) v[c] = F.add(v[c], F.mul(k[i], rows_[i][c]));
        gens.push_back(std::move(v));
    }
    return span(F, n_, gens);
}

Subspace Subspace::image(const Field& F, const Mat& A) const {
    std::vector<Vec> gens;
    for (const auto& r : rows_) gens.push_back(mat_vec(F, A, r));
    return span(F, A.rows, gens);
}

bool Subspace::stable_under(const Field& F, const Mat& A) const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const Vec& r) { return contains(F, mat_vec(F, A, r)); });
}

std::vector<Elem> Subspace::key() const {
    std::vector<Elem> k;
    k.reserve(1 + rows_.size() * n_);
    k.push_back(static_cast<Elem>(rows_.size()));
    for (const auto& r : rows_) k.insert(k.end(), r.begin(), r.end());
    return k;
}

bool Subspace::operator<(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    return rows_ < o.rows_;
}

std::size_t KeyHash::operator()(const std::vector<Elem>& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Elem x : k) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

}  // namespace ulat
