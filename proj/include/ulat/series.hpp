#pragma once

#include <climits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulat/finite_field.hpp"

namespace ulat {

// Thrown when a truncated computation cannot decide the requested quantity.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Truncated Laurent series sum_{e >= lo} c_e X^e over a finite field.
// Coefficients are known for exponents in [lo, prec); an exact series has
// prec == kExact and vanishes beyond lo + c.size().
class Series {
public:
    static constexpr int kExact = INT_MAX / 4;

    Series() = default;
    explicit Series(const Field* f) : F_(f) {}
    Series(const Field* f, int lo, std::vector<Elem> c, int prec);

    static Series zero(const Field* f, int prec = kExact) { return Series(f, 0, {}, prec); }
    static Series constant(const Field* f, Elem a, int prec = kExact) { return Series(f, 0, {a}, prec); }
    static Series monomial(const Field* f, Elem a, int e, int prec = kExact) { return Series(f, e, {a}, prec); }

    const Field* field() const { return F_; }
    int lo() const { return lo_; }
    int prec() const { return prec_; }
    bool exact() const { return prec_ >= kExact; }
    // One past the last stored coefficient.
    int hi() const { return lo_ + static_cast<int>(c_.size()); }

    Elem coeff(int e) const;
    // Known to be zero to its precision (possibly not exactly zero).
    bool is_zero_to_prec() const;
    bool is_exact_zero() const { return exact() && c_.empty(); }

    // Valuation if determined; throws PrecisionError when all known
    // coefficients vanish (and the series is not exact).
    std::optional<int> valuation() const;
    // Lower bound on the valuation (exact zero gives kExact).
    int valuation_lower_bound() const;

    Series truncated(int prec) const;
    Series shifted(int k) const;  // multiply by X^k
    Series scaled(Elem a) const;
    Series operator-() const;
    Series map_coeffs(const std::vector<Elem>& table, const Field* target) const;
    template <class Fn>
    Series transform(Fn fn) const {
        Series r = *this;
        for (auto& x : r.c_) x = fn(x);
        r.normalize();
        return r;
    }

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);

    // Multiplicative inverse. For exact inputs the result is truncated at want_prec.
    Series inverse(int want_prec = kExact) const;

    // sum_e c_e h^e for a series h of positive valuation.
    Series compose(const Series& h, int want_prec) const;

    const std::vector<Elem>& coeffs() const { return c_; }
    std::string to_string() const;

private:
    void normalize();

    const Field* F_ = nullptr;
    int lo_ = 0;
    std::vector<Elem> c_;
    int prec_ = kExact;
};

}  // namespace ulat
