#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

namespace ulat {

using Elem = std::uint32_t;
using Poly = std::vector<std::uint32_t>;  // coefficients over GF(p), least significant first

bool is_prime(std::uint64_t n);

namespace gfp {

// Arithmetic on polynomials over GF(p). Results are trimmed (no trailing zeros).
Poly trim(Poly f);
Poly mul(const Poly& f, const Poly& g, std::uint32_t p);
Poly mod(Poly f, const Poly& m, std::uint32_t p);
Poly gcd(Poly f, Poly g, std::uint32_t p);
Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p);

// Ben-Or test; f must be monic of degree >= 1.
bool is_irreducible(const Poly& f, std::uint32_t p);

// Lexicographically smallest monic irreducible of the given degree, comparing
// coefficient vectors from the constant term upwards.
Poly smallest_irreducible(unsigned degree, std::uint32_t p);

}  // namespace gfp

// GF(p^d) with elements encoded as integers sum c_i p^i over the power basis of
// the defining polynomial. Multiplication uses log tables, addition a table for
// small fields and Zech logarithms otherwise.
class Field {
public:
    Field(std::uint32_t p, Poly modulus);

    std::uint32_t p() const { return p_; }
    unsigned degree() const { return deg_; }
    std::uint32_t size() const { return q_; }
    const Poly& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const {
        if (small_) return add_tab_[static_cast<std::size_t>(a) * q_ + b];
        if (a == 0) return b;
        if (b == 0) return a;
        std::uint32_t la = log_[a], lb = log_[b];
        std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
        std::uint32_t z = zech_[d];
        if (z == kNone) return 0;
        return exp_[la + z];
    }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("inverse of zero in finite field");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;
    // a -> a^(p^k)
    Elem frob(Elem a, unsigned k) const;

    Elem from_int(std::int64_t v) const;
    Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
    std::vector<std::uint32_t> coeffs(Elem a) const;

    // Generator of the multiplicative group used for the log tables.
    Elem generator() const { return exp_[1]; }
    // Discrete log base generator(); a must be nonzero.
    std::uint32_t log(Elem a) const { return log_[a]; }

private:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    std::uint32_t p_;
    unsigned deg_;
    std::uint32_t q_;
    Poly modulus_;
    bool small_;
    std::vector<std::uint32_t> exp_;  // length 2(q-1)
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> zech_;
    std::vector<Elem> neg_;
    std::vector<Elem> add_tab_;
    std::vector<Elem> frob1_;  // a -> a^p
};

// Element of some level of a FieldTower, given by GF(p)-coordinates.
struct ExtFieldElement {
    unsigned level;  // degree over k
    std::vector<std::uint32_t> coeffs;
};

// k = GF(q), q = p^a, together with extensions k_d = GF(q^d) for the requested
// degrees d and embeddings k_d -> k_d' whenever d | d'.
class FieldTower {
public:
    FieldTower(std::uint32_t p, unsigned a, const std::vector<unsigned>& degrees,
               const std::map<unsigned, Poly>& pinned = {});

    std::uint32_t p() const { return p_; }
    unsigned a() const { return a_; }
    std::uint64_t q() const { return q_; }

    bool has_level(unsigned d) const { return levels_.count(d) != 0; }
    // Adds k_d if missing; embeddings into and out of existing levels are computed lazily.
    const Field& level(unsigned d);
    const Field& level(unsigned d) const;
    std::vector<unsigned> levels() const;

    // sigma: x -> x^q on level d.
    Elem frobenius(unsigned d, Elem x) const;
    ExtFieldElement frobenius(const ExtFieldElement& x) const;

    // Field embedding k_d -> k_d2 (d | d2); deterministic: the image of the
    // class of X is the smallest encoded root of k_d's modulus in k_d2.
    Elem embed(unsigned d, unsigned d2, Elem x);
    const std::vector<Elem>& embedding_table(unsigned d, unsigned d2);

private:
    std::uint32_t p_;
    unsigned a_;
    std::uint64_t q_;
    std::map<unsigned, std::unique_ptr<Field>> levels_;
    std::map<unsigned, Poly> pinned_;
    std::map<std::pair<unsigned, unsigned>, std::vector<Elem>> embeddings_;
};

FieldTower build_tower(std::uint32_t p, unsigned a, const std::vector<unsigned>& degrees,
                       const std::map<unsigned, Poly>& pinned = {});

}  // namespace ulat
