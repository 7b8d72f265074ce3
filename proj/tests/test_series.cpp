#include <random>

#include "doctest.h"
#include "ulat/series.hpp"

using namespace ulat;

namespace {

Series random_series(const Field* F, std::mt19937& rng, int lo, int len, int prec) {
    std::vector<Elem> c(static_cast<std::size_t>(len));
    for (auto& x : c) x = rng() % F->size();
    if (c[0] == 0) c[0] = 1;
    return Series(F, lo, c, prec);
}

}  // namespace

TEST_CASE("series precision bookkeeping") {
    Field F(5, {2, 0, 1});  // GF(25)? x^2 + 2 over GF(5)
    Series a(&F, 0, {1, 2, 3}, 10);
    Series b(&F, 2, {4}, Series::kExact);
    CHECK(a.prec() == 10);
    CHECK((a * b).prec() == 12);
    CHECK((a + b).prec() == 10);
    CHECK(*(a * b).valuation() == 2);
    Series z(&F, 0, {0, 0}, 2);
    CHECK(z.is_zero_to_prec());
    CHECK_THROWS_AS(z.valuation(), PrecisionError);
    CHECK_THROWS_AS(a.coeff(10), PrecisionError);
    CHECK(b.coeff(100) == 0);
    CHECK(!Series::zero(&F).valuation().has_value());
}

TEST_CASE("inverse agrees with the product identity and the geometric series") {
    Field F(3, {2, 2, 1});
    std::mt19937 rng(3);
    for (int s = 0; s < 50; ++s) {
        Series a = random_series(&F, rng, static_cast<int>(rng() % 5) - 2, 8, Series::kExact);
        Series inv = a.inverse(20);
        Series prod = (a * inv).truncated(20 + *a.valuation());
        CHECK((prod - Series::constant(&F, 1)).truncated(20 + *a.valuation()).is_zero_to_prec());
    }
    // 1 / (1 - c X) = sum c^k X^k
    Elem c = 5;
    Series g = Series(&F, 0, {1, F.neg(c)}, Series::kExact).inverse(12);
    for (int k = 0; k < 12; ++k) CHECK(g.coeff(k) == F.pow(c, static_cast<std::uint64_t>(k)));
}

TEST_CASE("composition agrees with term-by-term substitution") {
    Field F(5, {2, 0, 1});
    std::mt19937 rng(11);
    for (int s = 0; s < 20; ++s) {
        Series f = random_series(&F, rng, static_cast<int>(rng() % 3) - 1, 5, Series::kExact);
        Series h = random_series(&F, rng, 1 + static_cast<int>(rng() % 2), 6, 30);
        Series direct = Series::zero(&F);
        for (int e = f.lo(); e < f.hi(); ++e) {
            Series hp = Series::constant(&F, 1);
            if (e >= 0)
                for (int i = 0; i < e; ++i) hp = hp * h;
            else
                for (int i = 0; i < -e; ++i) hp = hp * h.inverse(40);
            direct = direct + hp.scaled(f.coeff(e));
        }
        Series c = f.compose(h, 15);
        int P = std::min(c.prec(), direct.prec());
        CHECK((c - direct).truncated(P).is_zero_to_prec());
        CHECK(P >= 10);
    }
}
