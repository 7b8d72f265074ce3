#include <set>

#include "doctest.h"
#include "support.hpp"
#include "ulat/counting.hpp"
#include "ulat/hermitian.hpp"

using namespace ulat;

namespace {

std::set<std::vector<Elem>> keys(const std::vector<LatticePoint>& pts) {
    std::set<std::vector<Elem>> out;
    for (const auto& p : pts) out.insert(p.space.key());
    return out;
}

}  // namespace

TEST_CASE("two-factor windows are self-dual compatible exactly when mu1 = mu2") {
    auto inst = testsupport::fixture("q3_n2_r1");
    for (int delta = 0; delta <= 1; ++delta)
        for (int mu1 = -1; mu1 <= 1; ++mu1)
            for (int mu2 = -1; mu2 <= 1; ++mu2) {
                if (mu1 + mu2 > delta) continue;
                Window w = x_window(inst->tower(), 2, inst->torus(0), inst->torus(1), 0, 0, mu1, mu2, delta);
                HermitianStructure h(w, delta);
                CHECK(h.self_dual_compatible() == (mu1 == mu2));
            }
}

TEST_CASE("single factor: dual of varpi^e O is varpi^{-e-parity} O") {
    // alpha = varpi_E^{parity - delta} cancels the inverse different, so O_E' is self-dual for parity 0.
    for (const char* name : {"u11_r2_q3", "q3_n2_r1", "ex_10_4_q5"}) {
        auto inst = testsupport::fixture(name);
        for (int i = 0; i < 2; ++i)
            for (int parity = 0; parity <= 1; ++parity) {
                int m = 2;
                Window w(inst->tower(), 2, {WindowFactor{&inst->torus(i), -m - parity, m}});
                HermitianStructure h(w, parity);
                REQUIRE(h.self_dual_compatible());
                for (int e = -m - parity; e <= m; ++e) {
                    CAPTURE(name);
                    CAPTURE(e);
                    Subspace L = w.power_lattice(0, e);
                    CHECK(h.dual_lattice(L) == w.power_lattice(0, -e - parity));
                    CHECK(h.dual_bilinear(L) == w.power_lattice(0, -e - parity));
                }
            }
    }
}

TEST_CASE("discriminant class of the chosen alpha is the parity") {
    for (const char* name : {"u11_r1_q3", "q3_n2_r2_m2", "ex_10_4_q5"}) {
        auto inst = testsupport::fixture(name);
        for (int i = 0; i < 2; ++i)
            for (int parity = 0; parity <= 1; ++parity) {
                const auto& ext = inst->ext(i);
                CHECK(discriminant_class(ext, hermitian_alpha(ext, parity, Series::constant(&ext.kp(), 1))) == parity);
            }
    }
}

TEST_CASE("F_X squared is the q^2-Frobenius on every point") {
    for (const char* name : {"u11_r2_q3", "q3_n2_r2_m2"}) {
        auto inst = testsupport::fixture(name);
        Models M = theorem_models(inst->inv());
        for (const auto* m : {&M.X, &M.Xp}) {
            PointSet P = model_points(*inst, *m, 4, 1ull << 22);
            HermitianStructure h(P.window, m->delta);
            unsigned a = inst->tower().a();
            for (const auto& p : P.points)
                REQUIRE(h.frobenius_step(h.frobenius_step(p.space)) == frob_subspace(P.window.field(), p.space, 2 * a));
        }
    }
}

TEST_CASE("fixed-point counts do not depend on the unit in alpha") {
    for (const char* name : {"u11_r1_q3", "u11_r2_q3", "q3_n2_r1", "q3_n2_r2_m2"}) {
        auto inst = testsupport::fixture(name);
        Models M = theorem_models(inst->inv());
        for (unsigned f : {1u, 2u}) {
            unsigned level = f % 2 ? 2 * f : f;
            for (const auto* m : {&M.X, &M.Xp}) {
                if (model_is_empty(*m)) continue;
                Window w = model_window(*inst, *m, level);
                const Field& kp = inst->residue().kp();
                // -1 and 1 + varpi_E: units of O_E with coefficients in k
                std::vector<Series> units{Series::constant(&kp, kp.from_int(-1)),
                                          Series(&kp, 0, {1, 1}, Series::kExact)};
                HermitianStructure h1(w, m->delta);
                HermitianStructure h2(w, m->delta, units);
                CAPTURE(name);
                CAPTURE(f);
                CHECK(fixed_points(h1, f).size() == fixed_points(h2, f).size());
            }
        }
    }
}

TEST_CASE("odd f: isotropic search equals filtering all points by F_X^f") {
    struct Case {
        const char* name;
        unsigned f;
    };
    for (auto c : {Case{"u11_r1_q3", 1}, Case{"u11_r2_q3", 1}, Case{"q3_n2_r1", 1}, Case{"q3_n2_r2_m2", 1},
                   Case{"u11_r1_q3", 3}}) {
        auto inst = testsupport::fixture(c.name);
        Models M = theorem_models(inst->inv());
        for (const auto* m : {&M.X, &M.Xp}) {
            if (model_is_empty(*m)) continue;
            Window w = model_window(*inst, *m, 2 * c.f);
            HermitianStructure h(w, m->delta);
            CAPTURE(c.name);
            CAPTURE(c.f);
            CHECK(keys(fixed_points(h, c.f)) == keys(fixed_points_by_filter(h, c.f)));
        }
    }
}
