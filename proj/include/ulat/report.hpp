#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ulat/counting.hpp"
#include "ulat/instance.hpp"

namespace ulat {

struct RunOptions {
    std::vector<unsigned> f{2};
    std::vector<unsigned> e{1};
    std::vector<unsigned> poly_e;  // empty: use e
    bool strata = false, hom = false, poly = false, invariants = true;
    std::uint64_t cap = 1ull << 22;
    std::uint64_t seed = 1;
    std::size_t hom_samples = 25;
};

RunOptions options_from_spec(const InstanceSpec& spec);

// One pass/fail line of a run. Conjecture-mode observations have asserted == false.
struct Check {
    std::string name;
    bool asserted = true;
    bool passed = false;
    std::string detail;
};

struct RunReport {
    nlohmann::json doc;
    std::vector<Check> checks;
    std::string text;  // aligned tables
    bool asserted_ok() const;
};

nlohmann::json invariants_json(const Instance& inst);
std::string invariants_table(const Instance& inst);
// Consistency of the independently computed invariants (r three ways, m two ways, tame different).
std::vector<Check> invariant_formula_checks(const Instance& inst);

RunReport run_verify(const Instance& inst, const RunOptions& opt);

// One line per point of X(k'_e), in enumeration order.
std::string dump_lattices(const Instance& inst, unsigned e, std::uint64_t cap);

// Minimal aligned-column table.
class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    std::string str() const;

private:
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace ulat
