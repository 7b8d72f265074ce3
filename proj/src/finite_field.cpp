#include "ulat/finite_field.hpp"

#include <algorithm>
#include <string>

namespace ulat {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace gfp {

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        std::int64_t qq = r / nr;
        std::int64_t tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = r - qq * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("non-invertible residue");
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

Poly sub(const Poly& f, const Poly& g, std::uint32_t p) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint32_t a = i < f.size() ? f[i] : 0;
        std::uint32_t b = i < g.size() ? g[i] : 0;
        r[i] = (a + p - b) % p;
    }
    return trim(r);
}

}  // namespace

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly mul(const Poly& f, const Poly& g, std::uint32_t p) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(f[i]) * g[j]) % p);
    return trim(r);
}

Poly mod(Poly f, const Poly& m, std::uint32_t p) {
    Poly mm = trim(m);
    if (mm.empty()) throw std::domain_error("polynomial division by zero");
    f = trim(std::move(f));
    std::uint32_t lead_inv = inv_mod(mm.back(), p);
    while (f.size() >= mm.size()) {
        std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t(f.back()) * lead_inv % p);
        std::size_t shift = f.size() - mm.size();
        for (std::size_t i = 0; i < mm.size(); ++i)
            f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - std::uint64_t(c) * mm[i] % p) % p);
        f = trim(std::move(f));
    }
    return f;
}

Poly gcd(Poly f, Poly g, std::uint32_t p) {
    f = trim(std::move(f));
    g = trim(std::move(g));
    while (!g.empty()) {
        Poly r = mod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) {
        std::uint32_t li = inv_mod(f.back(), p);
        for (auto& c : f) c = static_cast<std::uint32_t>(std::uint64_t(c) * li % p);
    }
    return f;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
    Poly result{1};
    base = mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) result = mod(mul(result, base, p), m, p);
        base = mod(mul(base, base, p), m, p);
        e >>= 1;
    }
    return mod(result, m, p);
}

bool is_irreducible(const Poly& f0, std::uint32_t p) {
    Poly f = trim(f0);
    if (f.size() < 2) return false;
    if (f.back() != 1) return false;
    const std::size_t n = f.size() - 1;
    Poly x{0, 1};
    Poly xp = x;
    for (std::size_t i = 1; i <= n / 2; ++i) {
        xp = powmod(xp, p, f, p);
        Poly g = gcd(f, sub(xp, x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

Poly smallest_irreducible(unsigned degree, std::uint32_t p) {
    if (degree == 0) throw std::invalid_argument("degree must be positive");
    Poly f(degree + 1, 0);
    f[degree] = 1;
    // Counter over the low coefficients, constant term varying slowest.
    while (true) {
        if (is_irreducible(f, p)) return f;
        std::size_t i = degree;
        bool carried = true;
        while (carried && i > 0) {
            --i;
            f[i] += 1;
            if (f[i] == p) {
                f[i] = 0;
            } else {
                carried = false;
            }
        }
        if (carried) throw std::logic_error("no irreducible polynomial found");
    }
}

}  // namespace gfp

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(static_cast<std::uint32_t>(d));
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
    return out;
}

}  // namespace

Field::Field(std::uint32_t p, Poly modulus) : p_(p), modulus_(gfp::trim(std::move(modulus))) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    if (modulus_.size() < 2) throw std::invalid_argument("defining polynomial must have positive degree");
    if (!gfp::is_irreducible(modulus_, p_)) throw std::invalid_argument("defining polynomial is reducible");
    deg_ = static_cast<unsigned>(modulus_.size() - 1);
    std::uint64_t q = ipow(p_, deg_);
    if (q > (1u << 24)) throw std::invalid_argument("field too large for table arithmetic");
    q_ = static_cast<std::uint32_t>(q);

    auto encode = [&](const Poly& f) {
        std::uint32_t v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = v * p_ + f[i];
        return v;
    };
    auto decode = [&](std::uint32_t v) {
        Poly f(deg_, 0);
        for (unsigned i = 0; i < deg_; ++i) {
            f[i] = v % p_;
            v /= p_;
        }
        return gfp::trim(f);
    };

    // Smallest encoded element of multiplicative order q-1.
    auto factors = prime_factors(q_ - 1);
    std::uint32_t gen = 0;
    for (std::uint32_t cand = 1; cand < q_; ++cand) {
        Poly g = decode(cand);
        bool ok = true;
        for (auto l : factors) {
            Poly h = gfp::powmod(g, (q_ - 1) / l, modulus_, p_);
            if (h.size() == 1 && h[0] == 1) {
                ok = false;
                break;
            }
        }
        if (q_ == 2 || ok) {
            gen = cand;
            break;
        }
    }
    if (gen == 0) throw std::logic_error("no multiplicative generator found");

    exp_.assign(2 * (q_ - 1) + 1, 0);
    log_.assign(q_, 0);
    Poly cur{1};
    Poly g = decode(gen);
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        std::uint32_t v = encode(cur);
        exp_[i] = v;
        log_[v] = i;
        cur = gfp::mod(gfp::mul(cur, g, p_), modulus_, p_);
    }
    for (std::uint32_t i = q_ - 1; i < exp_.size(); ++i) exp_[i] = exp_[i - (q_ - 1)];

    neg_.assign(q_, 0);
    for (std::uint32_t v = 0; v < q_; ++v) {
        Poly f = decode(v);
        for (auto& c : f) c = (p_ - c) % p_;
        neg_[v] = encode(f);
    }

    auto add_slow = [&](std::uint32_t a, std::uint32_t b) {
        std::uint32_t r = 0, mulp = 1;
        while (a > 0 || b > 0) {
            r += ((a % p_ + b % p_) % p_) * mulp;
            a /= p_;
            b /= p_;
            mulp *= p_;
        }
        return r;
    };

    zech_.assign(q_ - 1, kNone);
    for (std::uint32_t d = 0; d < q_ - 1; ++d) {
        std::uint32_t s = add_slow(1, exp_[d]);
        zech_[d] = s == 0 ? kNone : log_[s];
    }

    small_ = q_ <= 1024;
    if (small_) {
        add_tab_.assign(static_cast<std::size_t>(q_) * q_, 0);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b) add_tab_[static_cast<std::size_t>(a) * q_ + b] = add_slow(a, b);
    }

    frob1_.assign(q_, 0);
    for (std::uint32_t v = 0; v < q_; ++v) frob1_[v] = pow(v, p_);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    std::uint64_t l = (static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
    return exp_[l];
}

Elem Field::frob(Elem a, unsigned k) const {
    k %= deg_;
    for (unsigned i = 0; i < k; ++i) a = frob1_[a];
    return a;
}

Elem Field::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

Elem Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() > deg_) throw std::invalid_argument("too many coordinates for field element");
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] >= p_) throw std::invalid_argument("coordinate out of range");
        v = v * p_ + c[i];
    }
    return v;
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
    std::vector<std::uint32_t> c(deg_, 0);
    for (unsigned i = 0; i < deg_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

FieldTower::FieldTower(std::uint32_t p, unsigned a, const std::vector<unsigned>& degrees,
                       const std::map<unsigned, Poly>& pinned)
    : p_(p), a_(a), pinned_(pinned) {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (p == 2) throw std::invalid_argument("characteristic 2 is excluded");
    if (a == 0) throw std::invalid_argument("a must be positive");
    q_ = ipow(p, a);
    for (auto& [d, f] : pinned_) {
        if (gfp::trim(f).size() != static_cast<std::size_t>(a * d) + 1)
            throw std::invalid_argument("pinned polynomial for level " + std::to_string(d) + " has wrong degree");
        if (!gfp::is_irreducible(f, p)) throw std::invalid_argument("pinned polynomial is reducible");
    }
    level(1);
    for (unsigned d : degrees) level(d);
}

const Field& FieldTower::level(unsigned d) {
    if (d == 0) throw std::invalid_argument("level must be positive");
    auto it = levels_.find(d);
    if (it != levels_.end()) return *it->second;
    Poly f;
    auto pit = pinned_.find(d);
    if (pit != pinned_.end()) {
        f = pit->second;
    } else {
        f = gfp::smallest_irreducible(a_ * d, p_);
    }
    auto fld = std::make_unique<Field>(p_, f);
    const Field& ref = *fld;
    levels_.emplace(d, std::move(fld));
    return ref;
}

const Field& FieldTower::level(unsigned d) const {
    auto it = levels_.find(d);
    if (it == levels_.end()) throw std::out_of_range("tower level " + std::to_string(d) + " not built");
    return *it->second;
}

std::vector<unsigned> FieldTower::levels() const {
    std::vector<unsigned> out;
    for (auto& kv : levels_) out.push_back(kv.first);
    return out;
}

Elem FieldTower::frobenius(unsigned d, Elem x) const { return level(d).frob(x, a_); }

ExtFieldElement FieldTower::frobenius(const ExtFieldElement& x) const {
    const Field& f = level(x.level);
    return {x.level, f.coeffs(f.frob(f.from_coeffs(x.coeffs), a_))};
}

const std::vector<Elem>& FieldTower::embedding_table(unsigned d, unsigned d2) {
    if (d2 % d != 0) throw std::invalid_argument("embedding requires d | d2");
    auto key = std::make_pair(d, d2);
    auto it = embeddings_.find(key);
    if (it != embeddings_.end()) return it->second;
    const Field& small = level(d);
    const Field& big = level(d2);
    const Poly& f = small.modulus();
    Elem root = 0;
    bool found = false;
    for (Elem x = 0; x < big.size() && !found; ++x) {
        Elem acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = big.add(big.mul(acc, x), big.from_int(f[i]));
        if (acc == 0) {
            root = x;
            found = true;
        }
    }
    if (!found) throw std::logic_error("no root of defining polynomial in extension");
    std::vector<Elem> table(small.size(), 0);
    std::vector<Elem> powers(small.degree(), 1);
    for (unsigned i = 1; i < small.degree(); ++i) powers[i] = big.mul(powers[i - 1], root);
    for (Elem v = 0; v < small.size(); ++v) {
        auto c = small.coeffs(v);
        Elem acc = 0;
        for (unsigned i = 0; i < small.degree(); ++i) acc = big.add(acc, big.mul(big.from_int(c[i]), powers[i]));
        table[v] = acc;
    }
    return embeddings_.emplace(key, std::move(table)).first->second;
}

Elem FieldTower::embed(unsigned d, unsigned d2, Elem x) {
    if (d == d2) return x;
    return embedding_table(d, d2)[x];
}

FieldTower build_tower(std::uint32_t p, unsigned a, const std::vector<unsigned>& degrees,
                       const std::map<unsigned, Poly>& pinned) {
    for (unsigned d : degrees)
        if (d == 0) throw std::invalid_argument("degrees must be positive");
    return FieldTower(p, a, degrees, pinned);
}

}  // namespace ulat
