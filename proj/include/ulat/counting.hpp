#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ulat/hermitian.hpp"
#include "ulat/instance.hpp"
#include "ulat/window.hpp"

namespace ulat {

std::int64_t checked_pow(std::int64_t base, unsigned exp);

// X^{+/-}[mu, mu] with delta = 0 (+) or 1 (-).
struct ModelSpec {
    std::string name;
    int delta = 0;
    int mu = 0;
};
struct Models {
    ModelSpec X, Xp;
};
// (X, X') = (X+[-r',-r'], X-[1-r',1-r']) for even r, (X-[-r',-r'], X+[-r',-r']) for odd r.
Models theorem_models(const Invariants& inv);

bool model_is_empty(const ModelSpec& m);
Window model_window(const Instance& inst, const ModelSpec& m, unsigned level);
Window shifted_window(const Window& w, const std::vector<int>& shift);

struct PointSet {
    Window window;
    std::vector<LatticePoint> points;
    EnumStats stats;
    std::map<std::vector<Elem>, std::size_t> index;  // key -> position
    PointSet(Window w) : window(std::move(w)) {}
    void build_index();
    bool contains(const Subspace& S) const { return index.count(S.key()) != 0; }
};

// Points of the model over k_level (level even), i.e. X(k'_{level/2}).
PointSet model_points(const Instance& inst, const ModelSpec& m, unsigned level, std::uint64_t cap);
// Y_i(k'_{level/2}); i is 0 or 1.
PointSet y_points(const Instance& inst, int i, unsigned level, std::uint64_t cap);

using StrataHistogram = std::map<std::pair<int, int>, std::uint64_t>;  // (b1, b2) -> count
StrataHistogram histogram(const PointSet& s);

struct Theorem42Row {
    unsigned e = 1;
    std::int64_t X = 0, Xp = 0, Y1 = 0, Y2 = 0;
    std::int64_t rhs = 0;       // q^{2er} |Y1| |Y2|
    std::int64_t residual = 0;  // X - X' - rhs
    StrataHistogram strata_X, strata_Xp;
    std::uint64_t visited = 0;
};
Theorem42Row verify_theorem_4_2(const Instance& inst, unsigned e, std::uint64_t cap);

struct StratumRow {
    std::string model;
    int i = 1, j = 0;
    std::uint64_t in_domain = 0;
    std::int64_t full = 0, expected = 0;
    std::uint64_t fibers = 0, bad_fibers = 0, missing_pairs = 0, off_target = 0;
    bool ok() const { return full == expected && bad_fibers == 0 && missing_pairs == 0 && off_target == 0; }
};
struct StratumReport {
    unsigned e = 1;
    std::vector<StratumRow> rows;
    bool partition_ok = true;
    bool complement_ok = true;
    std::vector<std::string> notes;
    bool ok() const;
};
StratumReport verify_stratum_law(const Instance& inst, unsigned e, std::uint64_t cap);

struct OrbitalRow {
    unsigned f = 1;
    std::int64_t fixed_X = 0, fixed_Xp = 0;
    std::uint64_t out_of_domain = 0;
    std::int64_t Y1 = 0, Y2 = 0;
    std::int64_t O_kappa = 0, SO = 0, predicted = 0;
    bool asserted = false;  // even f, or U(1,1)
    bool holds() const { return O_kappa == predicted && out_of_domain == 0; }
};
OrbitalRow orbital_integrals(const Instance& inst, unsigned f, std::uint64_t cap);

// dim Hom_{O_F'[[T]]}(M2, E'_1 / M1) over the window field; M_i are single-factor lattices.
int hom_dimension(const Instance& inst, const Window& w1, const Subspace& M1, const Window& w2, const Subspace& M2);
struct HomSample {
    std::size_t y1 = 0, y2 = 0;
    int s1 = 0, s2 = 0;
    int dim = 0;
};
struct HomReport {
    int r = 0;
    std::vector<HomSample> samples;
    bool ok() const;
};
HomReport verify_hom_dimension(const Instance& inst, std::size_t samples, std::uint64_t seed, std::uint64_t cap);

struct PolyFit {
    std::vector<std::string> coeffs;  // exact rationals, constant term first
    bool nonneg_integer = false;
    bool overdetermined = false;  // fitted degree < number of points - 1
    std::string text;
};
PolyFit polynomiality_probe(const std::vector<std::pair<std::int64_t, std::int64_t>>& points);

struct CheckTally {
    std::uint64_t checked = 0, violations = 0;
    std::vector<std::string> examples;
    void record(bool ok, const std::string& what);
};
using InvariantReport = std::map<std::string, CheckTally>;
// Every invariant of the lattice models, quantified over all enumerated points at k_level.
InvariantReport check_invariants(const Instance& inst, unsigned level, std::uint64_t cap);

}  // namespace ulat
