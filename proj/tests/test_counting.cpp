#include "doctest.h"
#include "support.hpp"
#include "ulat/counting.hpp"
#include "ulat/hermitian.hpp"

using namespace ulat;

namespace {

std::int64_t geometric(std::int64_t Q, int r) {
    std::int64_t s = 0;
    for (int d = 0; d <= r; ++d) s += checked_pow(Q, static_cast<unsigned>(d));
    return s;
}

}  // namespace

TEST_CASE("golden counts and strata inventory at q = 5") {
    auto inst = testsupport::fixture("ex_10_4_q5");
    const std::int64_t q = 25;  // q'
    REQUIRE(inst->inv().r == 2);
    REQUIRE(inst->inv().mm(1) == 2);
    Theorem42Row row = verify_theorem_4_2(*inst, 1, 1ull << 22);
    CHECK(row.X == q * q * q + 3 * q * q + q + 1);
    CHECK(row.X == 17526);
    CHECK(row.Xp == 2 * q * q + q + 1);
    CHECK(row.Xp == 1276);
    CHECK(row.X - row.Xp == q * q * (q + 1));
    CHECK(row.Y1 == 1);
    CHECK(row.Y2 == q + 1);
    CHECK(row.residual == 0);

    StrataHistogram X{{{-1, -1}, q * q * (q - 1)}, {{0, -1}, (q - 1) * (2 * q + 1)}, {{-1, 0}, (q - 1) * (2 * q + 1)},
                      {{0, 0}, q + 1},            {{1, -1}, q + 1},                 {{-1, 1}, q + 1}};
    StrataHistogram Xp{{{1, 0}, q + 1}, {{0, 1}, q + 1}, {{0, 0}, (q - 1) * (2 * q + 1)}};
    CHECK(row.strata_X == X);
    CHECK(row.strata_Xp == Xp);
}

TEST_CASE("U(1,1): |X(k'_e)| is the sum of Q^d for d = 0..r") {
    for (const char* name : {"u11_r0_q3", "u11_r1_q3", "u11_r2_q3", "u11_r3_q3"}) {
        auto inst = testsupport::fixture(name);
        int r = inst->inv().r;
        for (unsigned e = 1; e <= (r == 3 ? 1u : 2u); ++e) {
            Theorem42Row row = verify_theorem_4_2(*inst, e, 1ull << 22);
            std::int64_t Q = checked_pow(9, e);
            CAPTURE(name);
            CAPTURE(e);
            CHECK(row.X == geometric(Q, r));
            CHECK(row.residual == 0);
        }
    }
}

TEST_CASE("r = 0: X is Y1 x Y2 and X' is empty") {
    auto inst = testsupport::fixture("u11_r0_q3");
    REQUIRE(inst->inv().r == 0);
    Theorem42Row row = verify_theorem_4_2(*inst, 1, 1ull << 22);
    CHECK(row.X == row.Y1 * row.Y2);
    CHECK(row.Xp == 0);
    StratumReport sr = verify_stratum_law(*inst, 1, 1ull << 22);
    CHECK(sr.ok());
}

TEST_CASE("stratum law: every fiber has q'^{er} points") {
    for (const char* name : {"u11_r1_q3", "q3_n2_r1", "q3_n2_r2_m2"}) {
        auto inst = testsupport::fixture(name);
        StratumReport sr = verify_stratum_law(*inst, 1, 1ull << 22);
        CAPTURE(name);
        CHECK(sr.partition_ok);
        CHECK(sr.complement_ok);
        for (const auto& r : sr.rows) {
            CHECK(r.full == r.expected);
            CHECK(r.bad_fibers == 0);
            CHECK(r.missing_pairs == 0);
        }
    }
}

TEST_CASE("U(1,1) orbital integrals for all f") {
    struct Case {
        const char* name;
        unsigned f;
        std::int64_t O;
    };
    for (auto c : {Case{"u11_r2_q3", 1, 9}, Case{"u11_r1_q3", 1, -3}, Case{"u11_r2_q3", 2, 81}, Case{"u11_r2_q3", 3, 729}}) {
        auto inst = testsupport::fixture(c.name);
        OrbitalRow row = orbital_integrals(*inst, c.f, 1ull << 22);
        CAPTURE(c.name);
        CAPTURE(c.f);
        CHECK(row.O_kappa == c.O);
        CHECK(row.SO == 1);
        CHECK(row.asserted);
        CHECK(row.holds());
    }
}

TEST_CASE("orbital rows beyond U(1,1) at odd f are not asserted") {
    auto inst = testsupport::fixture("q3_n2_r1");
    OrbitalRow row = orbital_integrals(*inst, 1, 1ull << 22);
    CHECK_FALSE(row.asserted);
    CHECK(orbital_integrals(*inst, 2, 1ull << 22).asserted);
}

TEST_CASE("hom dimension") {
    SUBCASE("r = 0 gives no intertwiners") {
        auto inst = testsupport::fixture("u11_r0_q3");
        CHECK(verify_hom_dimension(*inst, 20, 7, 1ull << 22).ok());
        for (const auto& s : verify_hom_dimension(*inst, 20, 7, 1ull << 22).samples) CHECK(s.dim == 0);
    }
    SUBCASE("n1 = n2 = 1 with M_i = O gives r") {
        for (const char* name : {"u11_r1_q3", "u11_r2_q3", "u11_r3_q3"}) {
            auto inst = testsupport::fixture(name);
            Window w1 = y_window(inst->tower(), 2, inst->torus(0), 0);
            Window w2 = y_window(inst->tower(), 2, inst->torus(1), 0);
            CHECK(hom_dimension(*inst, w1, Subspace(w1.dim()), w2, Subspace(w2.dim())) == inst->inv().r);
        }
    }
    SUBCASE("sampled lattice pairs at q = 5") {
        auto inst = testsupport::fixture("ex_10_4_q5");
        HomReport hr = verify_hom_dimension(*inst, 20, 3, 1ull << 22);
        CHECK(hr.samples.size() == 20);
        CHECK(hr.ok());
    }
}

TEST_CASE("polynomiality probe") {
    auto value = [](std::int64_t Q) { return Q * Q * Q + 3 * Q * Q + Q + 1; };
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    for (std::int64_t Q : {25, 625, 15625, 390625}) pts.emplace_back(Q, value(Q));
    PolyFit fit = polynomiality_probe(pts);
    CHECK(fit.coeffs == std::vector<std::string>{"1", "1", "3", "1"});
    CHECK(fit.nonneg_integer);
    CHECK_FALSE(fit.overdetermined);
    pts.emplace_back(5, value(5));
    CHECK(polynomiality_probe(pts).overdetermined);
    CHECK_FALSE(polynomiality_probe({{1, 0}, {3, 1}}).nonneg_integer);  // (Q - 1) / 2
    CHECK_THROWS_AS(polynomiality_probe({{9, 10}}), std::invalid_argument);
}

TEST_CASE("randomized small instances satisfy the even-f identity") {
    int accepted = 0;
    for (std::uint64_t seed = 1; seed <= 40 && accepted < 6; ++seed) {
        InstanceSpec spec = load_instance(testsupport::fixture_path("q3_n2_r1"));
        spec.beta[0] = BetaSpec{};
        spec.beta[0].seed = seed;
        spec.beta[0].random_terms = 3;
        spec.beta[1] = BetaSpec{};
        spec.beta[1].seed = 1000 + seed;
        spec.beta[1].random_terms = 4;
        std::unique_ptr<Instance> inst;
        try {
            inst = Instance::build(spec);
        } catch (const ValidationError&) {
            continue;
        }
        const Invariants& v = inst->inv();
        if (v.r > 2 || v.mm(0) > 2 || v.mm(1) > 2) continue;
        CAPTURE(seed);
        CHECK(v.r_all.agree());
        CHECK(verify_theorem_4_2(*inst, 1, 1ull << 22).residual == 0);
        ++accepted;
    }
    CHECK(accepted >= 3);
}
