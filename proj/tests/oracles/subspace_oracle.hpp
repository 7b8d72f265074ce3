#pragma once

// Independent subspace enumeration for cross-checking the closure BFS.
//
// Echelon forms are built with the pivot as the LAST nonzero entry. For operators that are upper
// triangular in the given basis, the span of the rows with pivot <= p is S ∩ <e_0..e_p>, which must
// itself be stable; that prefix test is the only pruning.

#include <algorithm>
#include <vector>

#include "ulat/finite_field.hpp"
#include "ulat/linalg.hpp"

namespace oracle {

using ulat::Elem;
using ulat::Field;
using ulat::Mat;
using Row = std::vector<Elem>;

inline bool upper_triangular(const Mat& A) {
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (A(i, j) != 0) return false;
    return true;
}

// Standard reduced echelon form (leftmost pivot), computed without the library routines.
inline std::vector<Row> canonical(const Field& K, std::vector<Row> rows, std::size_t n) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Elem inv = K.inv(rows[r][c]);
        for (auto& x : rows[r]) x = K.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Elem f = rows[i][c];
            for (std::size_t j = 0; j < n; ++j) rows[i][j] = K.sub(rows[i][j], K.mul(f, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

class StableSubspaces {
public:
    StableSubspaces(const Field& K, std::size_t n, std::vector<Mat> ops) : K_(K), n_(n), ops_(std::move(ops)) {}

    // Every stable subspace (all dimensions), each as canonical rows; sorted.
    std::vector<std::vector<Row>> run() {
        out_.clear();
        std::vector<Row> rows;
        std::vector<std::size_t> piv;
        out_.push_back({});
        extend(rows, piv);
        std::sort(out_.begin(), out_.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        return out_;
    }

    // Plain filter over every echelon form, no pruning. Only for tiny n.
    std::vector<std::vector<Row>> run_unpruned() {
        std::vector<std::vector<Row>> out;
        std::uint64_t total = 1ull << n_;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            std::vector<std::size_t> piv;
            for (std::size_t c = 0; c < n_; ++c)
                if (mask >> c & 1) piv.push_back(c);
            std::vector<std::pair<std::size_t, std::size_t>> free;
            for (std::size_t i = 0; i < piv.size(); ++i)
                for (std::size_t c = 0; c < piv[i]; ++c)
                    if (!(mask >> c & 1)) free.emplace_back(i, c);
            std::vector<Elem> val(free.size(), 0);
            while (true) {
                std::vector<Row> rows(piv.size(), Row(n_, 0));
                for (std::size_t i = 0; i < piv.size(); ++i) rows[i][piv[i]] = 1;
                for (std::size_t f = 0; f < free.size(); ++f) rows[free[f].first][free[f].second] = val[f];
                if (stable(rows, piv)) out.push_back(canonical(K_, rows, n_));
                std::size_t f = 0;
                while (f < val.size() && ++val[f] == K_.size()) val[f++] = 0;
                if (f == val.size()) break;
            }
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        return out;
    }

private:
    // rows reduced against each other: row i has 1 at piv[i], 0 right of it and 0 at other pivots
    bool in_span(const std::vector<Row>& rows, const std::vector<std::size_t>& piv, Row v) const {
        for (std::size_t i = rows.size(); i-- > 0;) {
            Elem c = v[piv[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= piv[i]; ++j) v[j] = K_.sub(v[j], K_.mul(c, rows[i][j]));
        }
        return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
    }

    bool stable(const std::vector<Row>& rows, const std::vector<std::size_t>& piv) const {
        for (const auto& A : ops_)
            for (const auto& r : rows) {
                Row img(n_, 0);
                for (std::size_t i = 0; i < n_; ++i)
                    for (std::size_t j = 0; j < n_; ++j)
                        if (A(i, j) != 0 && r[j] != 0) img[i] = K_.add(img[i], K_.mul(A(i, j), r[j]));
                if (!in_span(rows, piv, img)) return false;
            }
        return true;
    }

    void extend(std::vector<Row>& rows, std::vector<std::size_t>& piv) {
        std::size_t start = piv.empty() ? 0 : piv.back() + 1;
        for (std::size_t p = start; p < n_; ++p) {
            std::vector<std::size_t> free;
            for (std::size_t c = 0; c < p; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.push_back(c);
            std::vector<Elem> val(free.size(), 0);
            while (true) {
                Row r(n_, 0);
                r[p] = 1;
                for (std::size_t f = 0; f < free.size(); ++f) r[free[f]] = val[f];
                // clear this pivot column in earlier rows is unnecessary: they vanish right of their pivots
                rows.push_back(r);
                piv.push_back(p);
                if (stable(rows, piv)) {
                    out_.push_back(canonical(K_, rows, n_));
                    extend(rows, piv);
                }
                rows.pop_back();
                piv.pop_back();
                std::size_t f = 0;
                while (f < val.size() && ++val[f] == K_.size()) val[f++] = 0;
                if (f == val.size()) break;
            }
        }
    }

    const Field& K_;
    std::size_t n_;
    std::vector<Mat> ops_;
    std::vector<std::vector<Row>> out_;
};

}  // namespace oracle
