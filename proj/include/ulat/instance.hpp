#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ulat/local_field.hpp"

namespace ulat {

// Element of k' in an instance file: GF(p)-coordinates, or a power of the multiplicative generator.
struct KpLiteral {
    std::vector<std::uint32_t> coords;
    std::optional<std::int64_t> gen_power;
};

struct ExtSpec {
    unsigned degree = 1;
    bool tame = true;
    std::vector<std::uint32_t> tame_alpha{1};  // coordinates of alpha in k
    // eisenstein[j][t]: coordinates (in k) of the coefficient of varpi_F^t in a_j
    std::vector<std::vector<std::vector<std::uint32_t>>> eisenstein;
};

struct BetaSpec {
    std::vector<std::pair<int, KpLiteral>> terms;  // (exponent of varpi_E, coefficient)
    std::optional<std::uint64_t> seed;              // random unit with `random_terms` coefficients
    int random_terms = 4;
};

struct RunSpec {
    std::vector<unsigned> f{2};
    std::vector<unsigned> e{1};
    std::vector<unsigned> poly_e;  // degrees for the polynomiality probe; empty: use e
    std::uint64_t cap = 1ull << 22;
    int precision = 0;  // 0: automatic
    int precision_cap = 4096;
    bool strata = false, hom = false, poly = false;
    std::uint64_t seed = 1;
};

struct InstanceSpec {
    std::string name, description;
    std::uint32_t p = 3;
    unsigned a = 1;
    std::map<unsigned, Poly> pinned;
    std::array<ExtSpec, 2> ext;
    std::array<BetaSpec, 2> beta;
    RunSpec run;
    nlohmann::json expect = nlohmann::json::object();
    nlohmann::json raw;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> failures);
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

InstanceSpec parse_instance(const nlohmann::json& j);
InstanceSpec load_instance(const std::string& path);

struct Invariants {
    std::array<int, 2> n{1, 1};
    std::array<int, 2> delta{0, 0};
    std::array<ConductorResult, 2> m{};
    ResultantOrders r_all{};
    int r = 0;
    int r_prime = 0;  // floor(r / 2)
    int precision = 0;
    bool r_even() const { return r % 2 == 0; }
    int mm(int i) const { return m[static_cast<std::size_t>(i)].by_search; }
};

// A validated instance: field tower, both extensions and norm-one elements, and the invariants.
class Instance {
public:
    Instance(const Instance&) = delete;
    Instance& operator=(const Instance&) = delete;

    // Validates the standing hypotheses (throws ValidationError naming each violated one) and picks
    // the working precision, doubling until every valuation is stable.
    static std::unique_ptr<Instance> build(const InstanceSpec& spec);
    static std::unique_ptr<Instance> build_at(const InstanceSpec& spec, int precision);

    const InstanceSpec& spec() const { return spec_; }
    FieldTower& tower() const { return *tower_; }
    const ResidueFields& residue() const { return *R_; }
    const RamifiedExtension& ext(int i) const { return *ext_[static_cast<std::size_t>(i)]; }
    const TorusElement& torus(int i) const { return torus_[static_cast<std::size_t>(i)]; }
    const Invariants& inv() const { return inv_; }
    std::uint64_t q() const { return tower_->q(); }

private:
    explicit Instance(InstanceSpec spec) : spec_(std::move(spec)) {}
    void construct(int precision, std::vector<std::string>& failures);

    InstanceSpec spec_;
    std::unique_ptr<FieldTower> tower_;
    std::unique_ptr<ResidueFields> R_;
    std::array<std::unique_ptr<RamifiedExtension>, 2> ext_;
    std::array<TorusElement, 2> torus_;
    Invariants inv_;
};

}  // namespace ulat
