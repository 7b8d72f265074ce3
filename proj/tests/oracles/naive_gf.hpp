#pragma once

// Schoolbook GF(p^d) arithmetic on coefficient vectors, independent of the table-driven Field.

#include <cstdint>
#include <vector>

namespace oracle {

struct NaiveGF {
    std::uint32_t p;
    std::vector<std::uint32_t> modulus;  // monic, least significant first

    std::size_t degree() const { return modulus.size() - 1; }

    std::vector<std::uint32_t> add(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
        std::vector<std::uint32_t> r(degree(), 0);
        for (std::size_t i = 0; i < degree(); ++i) r[i] = (a[i] + b[i]) % p;
        return r;
    }

    std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
        std::size_t d = degree();
        std::vector<std::uint64_t> t(2 * d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) t[i + j] = (t[i + j] + std::uint64_t(a[i]) * b[j]) % p;
        for (std::size_t k = 2 * d - 1; k >= d; --k) {
            std::uint64_t c = t[k];
            if (c == 0) continue;
            t[k] = 0;
            for (std::size_t i = 0; i < d; ++i) t[k - d + i] = (t[k - d + i] + (p - modulus[i]) * c) % p;
        }
        return std::vector<std::uint32_t>(t.begin(), t.begin() + static_cast<long>(d));
    }

    std::vector<std::uint32_t> pow(std::vector<std::uint32_t> a, std::uint64_t e) const {
        std::vector<std::uint32_t> r(degree(), 0);
        r[0] = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // Element with integer code sum c_i p^i.
    std::vector<std::uint32_t> decode(std::uint32_t code) const {
        std::vector<std::uint32_t> c(degree(), 0);
        for (std::size_t i = 0; i < degree(); ++i) {
            c[i] = code % p;
            code /= p;
        }
        return c;
    }
};

}  // namespace oracle
