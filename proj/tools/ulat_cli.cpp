// Command-line front end: invariants, verify, dump, list-fixtures.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ulat/report.hpp"

namespace fs = std::filesystem;
using namespace ulat;

namespace {

#ifndef ULAT_FIXTURE_DIR
#define ULAT_FIXTURE_DIR "fixtures"
#endif

// A bare name refers to a bundled fixture.
std::string resolve(const std::string& arg) {
    if (fs::exists(arg)) return arg;
    fs::path p = fs::path(ULAT_FIXTURE_DIR) / (arg + ".json");
    if (fs::exists(p)) return p.string();
    p = fs::path(ULAT_FIXTURE_DIR) / "invalid" / (arg + ".json");
    if (fs::exists(p)) return p.string();
    return arg;
}

std::unique_ptr<Instance> open_instance(const std::string& arg, int precision, InstanceSpec& spec) {
    spec = load_instance(resolve(arg));
    if (precision > 0) spec.run.precision = precision;
    return Instance::build(spec);
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice counts for unitary orbital integrals over local function fields"};
    app.require_subcommand(1);

    std::string instance, out, lattices, dir = ULAT_FIXTURE_DIR;
    std::vector<unsigned> f, e, poly_e;
    bool strata = false, hom = false, poly = false, no_invariants = false;
    int precision = 0;
    std::uint64_t cap = 0, seed = 0;
    std::size_t samples = 25;

    auto* inv = app.add_subcommand("invariants", "print n_i, delta_i, m_i, r and the transfer factor");
    inv->add_option("instance", instance, "instance file or bundled fixture name")->required();
    inv->add_option("--precision", precision, "working precision override");
    inv->add_option("--out", out, "write the invariants as JSON");

    auto* ver = app.add_subcommand("verify", "run the selected verifications");
    ver->add_option("instance", instance, "instance file or bundled fixture name")->required();
    ver->add_option("--f", f, "residue degrees f for the orbital identity");
    ver->add_option("--e", e, "extension degrees e for counts over k'_e");
    ver->add_flag("--strata", strata, "check the stratum law and the embedding complement law");
    ver->add_flag("--hom", hom, "check hom dimensions on sampled lattice pairs");
    ver->add_flag("--poly", poly, "interpolate |X(k'_e)| as a polynomial in Q");
    ver->add_option("--poly-e", poly_e, "extension degrees for --poly (default: --e)");
    ver->add_flag("--no-invariants", no_invariants, "skip the per-lattice invariant suites");
    ver->add_option("--samples", samples, "number of hom samples");
    ver->add_option("--precision", precision, "working precision override");
    ver->add_option("--cap", cap, "enumeration cap (stable subspaces per run)");
    ver->add_option("--seed", seed, "sampling seed");
    ver->add_option("--out", out, "write the JSON report here");

    auto* dump = app.add_subcommand("dump", "write the points of X(k'_e), one lattice per line");
    dump->add_option("instance", instance, "instance file or bundled fixture name")->required();
    dump->add_option("--lattices", lattices, "output path")->required();
    dump->add_option("--e", e, "extension degree (default 1)");
    dump->add_option("--precision", precision, "working precision override");
    dump->add_option("--cap", cap, "enumeration cap");

    auto* list = app.add_subcommand("list-fixtures", "list bundled instance files");
    list->add_option("--dir", dir, "fixture directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            std::vector<fs::path> files;
            for (const auto& sub : {fs::path(dir), fs::path(dir) / "invalid"})
                if (fs::is_directory(sub))
                    for (const auto& entry : fs::directory_iterator(sub))
                        if (entry.path().extension() == ".json") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            Table t({"name", "kind", "description"});
            for (const auto& p : files) {
                auto spec = load_instance(p.string());
                t.add({spec.name, p.parent_path().filename() == "invalid" ? "invalid" : "valid", spec.description});
            }
            std::cout << t.str();
            return 0;
        }

        InstanceSpec spec;
        auto inst = open_instance(instance, precision, spec);

        if (inv->parsed()) {
            std::cout << invariants_table(*inst);
            bool ok = true;
            for (const auto& c : invariant_formula_checks(*inst)) {
                std::cout << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
                ok = ok && c.passed;
            }
            if (!out.empty()) write_file(out, invariants_json(*inst).dump(2) + "\n");
            return ok ? 0 : 1;
        }

        if (dump->parsed()) {
            unsigned ee = e.empty() ? 1 : e.front();
            write_file(lattices, dump_lattices(*inst, ee, cap ? cap : spec.run.cap));
            return 0;
        }

        RunOptions opt = options_from_spec(spec);
        if (!f.empty()) opt.f = f;
        if (!e.empty()) opt.e = e;
        if (!poly_e.empty()) opt.poly_e = poly_e;
        opt.strata = opt.strata || strata;
        opt.hom = opt.hom || hom;
        opt.poly = opt.poly || poly;
        opt.invariants = !no_invariants;
        opt.hom_samples = samples;
        if (cap) opt.cap = cap;
        if (seed) opt.seed = seed;
        RunReport rep = run_verify(*inst, opt);
        std::cout << rep.text;
        if (!out.empty()) write_file(out, rep.doc.dump(2) + "\n");
        std::cout << (rep.asserted_ok() ? "all asserted checks pass" : "ASSERTED CHECK FAILED") << "\n";
        return rep.asserted_ok() ? 0 : 1;
    } catch (const ValidationError& ex) {
        std::cerr << "invalid instance:\n";
        for (const auto& fl : ex.failures()) std::cerr << "  - " << fl << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
