#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ulat/finite_field.hpp"

namespace ulat {

using Vec = std::vector<Elem>;

// Dense row-major matrix over a finite field.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<Elem> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    Elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    Vec row(std::size_t i) const { return Vec(a.begin() + static_cast<long>(i * cols), a.begin() + static_cast<long>((i + 1) * cols)); }
    bool operator==(const Mat& o) const = default;

    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
};

Mat mat_mul(const Field& F, const Mat& A, const Mat& B);
Mat mat_add(const Field& F, const Mat& A, const Mat& B);
Mat mat_scale_sub_identity(const Field& F, const Mat& A, Elem lambda);  // A - lambda I
Vec mat_vec(const Field& F, const Mat& A, const Vec& x);
Mat transpose(const Mat& A);
Mat map_entries(const Mat& A, const std::function<Elem(Elem)>& fn);

// In-place reduced row echelon form; returns the pivot columns. Zero rows are removed.
std::vector<std::size_t> rref(const Field& F, Mat& A);
std::size_t rank(const Field& F, Mat A);
// Basis (as rows) of {x : A x = 0}.
std::vector<Vec> kernel(const Field& F, Mat A);

// A k'-subspace of K^n in canonical reduced echelon form (rows sorted by pivot).
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t n) : n_(n) {}
    static Subspace span(const Field& F, std::size_t n, const std::vector<Vec>& gens);
    static Subspace whole(std::size_t n);

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    std::vector<std::size_t> non_pivots() const;

    // Clears the pivot coordinates of v using the rows.
    Vec reduce(const Field& F, Vec v) const;
    bool contains(const Field& F, const Vec& v) const;
    bool contains(const Field& F, const Subspace& o) const;
    Subspace plus(const Field& F, const std::vector<Vec>& gens) const;
    Subspace intersect(const Field& F, const Subspace& o) const;
    Subspace image(const Field& F, const Mat& A) const;
    bool stable_under(const Field& F, const Mat& A) const;

    // Flattened echelon rows; equal keys iff equal subspaces.
    std::vector<Elem> key() const;
    bool operator==(const Subspace& o) const { return n_ == o.n_ && rows_ == o.rows_; }
    bool operator<(const Subspace& o) const;

private:
    std::size_t n_ = 0;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

struct KeyHash {
    std::size_t operator()(const std::vector<Elem>& k) const noexcept;
};

}  // namespace ulat
