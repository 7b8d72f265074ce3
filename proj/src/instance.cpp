#include "ulat/instance.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace ulat {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
    return s;
}

KpLiteral parse_kp(const json& j) {
    KpLiteral k;
    if (j.is_number_integer()) {
        k.coords = {static_cast<std::uint32_t>(j.get<std::int64_t>())};
    } else if (j.is_array()) {
        k.coords = j.get<std::vector<std::uint32_t>>();
    } else if (j.is_object() && j.contains("gen_pow")) {
        k.gen_power = j.at("gen_pow").get<std::int64_t>();
    } else {
        throw std::invalid_argument("bad k' literal: " + j.dump());
    }
    return k;
}

std::vector<std::uint32_t> parse_k(const json& j) {
    if (j.is_number_integer()) return {static_cast<std::uint32_t>(j.get<std::int64_t>())};
    return j.get<std::vector<std::uint32_t>>();
}

Elem kp_value(const Field& kp, const KpLiteral& lit) {
    if (lit.gen_power) {
        std::int64_t e = *lit.gen_power % static_cast<std::int64_t>(kp.size() - 1);
        if (e < 0) e += kp.size() - 1;
        return kp.pow(kp.generator(), static_cast<std::uint64_t>(e));
    }
    for (auto c : lit.coords)
        if (c >= kp.p()) throw std::invalid_argument("coordinate out of range for GF(p)");
    return kp.from_coeffs(lit.coords);
}

// The resultant vanished to the working precision.
class ResultantUndetermined : public PrecisionError {
public:
    using PrecisionError::PrecisionError;
};

}  // namespace

ValidationError::ValidationError(std::vector<std::string> failures)
    : std::runtime_error("invalid instance: " + join(failures)), failures_(std::move(failures)) {}

InstanceSpec parse_instance(const json& j) {
    InstanceSpec s;
    s.raw = j;
    s.name = j.value("name", "unnamed");
    s.description = j.value("description", "");
    const json& fj = j.at("field");
    s.p = fj.at("p").get<std::uint32_t>();
    s.a = fj.value("a", 1u);
    if (fj.contains("defining_polys"))
        for (auto it = fj.at("defining_polys").begin(); it != fj.at("defining_polys").end(); ++it)
            s.pinned[static_cast<unsigned>(std::stoul(it.key()))] = it.value().get<Poly>();
    const json& ej = j.at("extensions");
    if (ej.size() != 2) throw std::invalid_argument("need exactly two extensions");
    for (std::size_t i = 0; i < 2; ++i) {
        ExtSpec& e = s.ext[i];
        e.degree = ej[i].at("degree").get<unsigned>();
        if (ej[i].contains("eisenstein")) {
            e.tame = false;
            for (const auto& aj : ej[i].at("eisenstein")) {
                std::vector<std::vector<std::uint32_t>> coeffs;
                for (const auto& c : aj) coeffs.push_back(parse_k(c));
                e.eisenstein.push_back(std::move(coeffs));
            }
        } else if (ej[i].contains("tame_alpha")) {
            e.tame_alpha = parse_k(ej[i].at("tame_alpha"));
        }
    }
    const json& tj = j.at("tori");
    if (tj.size() != 2) throw std::invalid_argument("need exactly two tori");
    for (std::size_t i = 0; i < 2; ++i) {
        const json& bj = tj[i].at("beta");
        BetaSpec& b = s.beta[i];
        if (bj.contains("seed")) {
            b.seed = bj.at("seed").get<std::uint64_t>();
            b.random_terms = bj.value("terms", 4);
        } else {
            for (const auto& t : bj.at("terms")) b.terms.emplace_back(t.at(0).get<int>(), parse_kp(t.at(1)));
        }
    }
    if (j.contains("run")) {
        const json& r = j.at("run");
        RunSpec& run = s.run;
        if (r.contains("f")) run.f = r.at("f").get<std::vector<unsigned>>();
        if (r.contains("e")) run.e = r.at("e").get<std::vector<unsigned>>();
        if (r.contains("poly_e")) run.poly_e = r.at("poly_e").get<std::vector<unsigned>>();
        run.cap = r.value("cap", run.cap);
        run.precision = r.value("precision", 0);
        run.precision_cap = r.value("precision_cap", run.precision_cap);
        run.strata = r.value("strata", false);
        run.hom = r.value("hom", false);
        run.poly = r.value("poly", false);
        run.seed = r.value("seed", run.seed);
    }
    if (j.contains("expect")) s.expect = j.at("expect");
    return s;
}

InstanceSpec load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("parse error in " + path + ": " + e.what());
    }
    return parse_instance(j);
}

void Instance::construct(int precision, std::vector<std::string>& failures) {
    if (!is_prime(spec_.p) || spec_.p == 2) {
        failures.push_back("p > 2 prime: p = " + std::to_string(spec_.p) + " is not an odd prime");
        return;
    }
    try {
        tower_ = std::make_unique<FieldTower>(build_tower(spec_.p, spec_.a, {1, 2}, spec_.pinned));
    } catch (const std::invalid_argument& e) {
        failures.push_back(std::string("field: ") + e.what());
        return;
    }
    R_ = std::make_unique<ResidueFields>(*tower_);
    const Field& k = R_->k();
    const Field& kp = R_->kp();
    auto k_elem = [&](const std::vector<std::uint32_t>& c) {
        for (auto x : c)
            if (x >= k.p()) throw std::invalid_argument("coordinate out of range for GF(p)");
        return R_->embed_k(k.from_coeffs(c));
    };
    for (int i = 0; i < 2; ++i) {
        const ExtSpec& es = spec_.ext[static_cast<std::size_t>(i)];
        std::string tag = "extension E" + std::to_string(i + 1) + ": ";
        try {
            if (es.degree == 0) throw std::invalid_argument("degree must be positive");
            if (es.tame) {
                if (es.degree % spec_.p == 0)
                    throw std::invalid_argument("tame shorthand varpi_F = alpha varpi_E^n needs p not dividing n");
                ext_[static_cast<std::size_t>(i)] = std::make_unique<RamifiedExtension>(
                    RamifiedExtension::tame(*R_, es.degree, k_elem(es.tame_alpha), i + 1, precision));
            } else {
                EisensteinPoly g;
                g.n = es.degree;
                for (const auto& aj : es.eisenstein) {
                    std::vector<Elem> row;
                    for (const auto& c : aj) row.push_back(k_elem(c));
                    g.a.push_back(std::move(row));
                }
                ext_[static_cast<std::size_t>(i)] = std::make_unique<RamifiedExtension>(*R_, g, i + 1, precision);
                if (ext_[static_cast<std::size_t>(i)]->different_exponent() < 0) throw std::logic_error("bad different");
            }
        } catch (const std::domain_error& e) {
            failures.push_back(tag + "separable (Eisenstein) extension: " + e.what());
        } catch (const std::invalid_argument& e) {
            failures.push_back(tag + "Eisenstein polynomial: " + e.what());
        }
    }
    if (!failures.empty()) return;
    for (int i = 0; i < 2; ++i) {
        const BetaSpec& bs = spec_.beta[static_cast<std::size_t>(i)];
        std::string tag = "torus " + std::to_string(i + 1) + ": ";
        Series beta;
        if (bs.seed) {
            std::mt19937_64 rng(*bs.seed);
            std::vector<Elem> c(static_cast<std::size_t>(std::max(1, bs.random_terms)));
            for (auto& x : c) x = static_cast<Elem>(rng() % kp.size());
            if (c[0] == 0) c[0] = 1;
            beta = Series(&kp, 0, c, Series::kExact);
        } else {
            beta = Series::zero(&kp);
            for (const auto& [e, lit] : bs.terms) beta = beta + Series::monomial(&kp, kp_value(kp, lit), e);
        }
        try {
            torus_[static_cast<std::size_t>(i)] = make_norm_one(*ext_[static_cast<std::size_t>(i)], beta);
        } catch (const PrecisionError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            failures.push_back(tag + "norm-one unit: " + e.what());
        } catch (const std::logic_error& e) {
            failures.push_back(tag + "E'_i = F'[gamma_i]: " + e.what());
        }
    }
    if (!failures.empty()) return;
    try {
        inv_.r_all = resultant_order(torus_[0], torus_[1]);
    } catch (const PrecisionError& e) {
        throw ResultantUndetermined(e.what());
    } catch (const std::domain_error&) {
        failures.push_back("P1, P2 coprime: not coprime (resultant vanishes)");
        return;
    }
    for (int i = 0; i < 2; ++i) {
        inv_.n[static_cast<std::size_t>(i)] = static_cast<int>(ext_[static_cast<std::size_t>(i)]->degree());
        inv_.delta[static_cast<std::size_t>(i)] = ext_[static_cast<std::size_t>(i)]->different_exponent();
        inv_.m[static_cast<std::size_t>(i)] = conductor(torus_[static_cast<std::size_t>(i)]);
    }
    inv_.r = inv_.r_all.sylvester;
    inv_.r_prime = inv_.r / 2;
    inv_.precision = precision;
}

std::unique_ptr<Instance> Instance::build_at(const InstanceSpec& spec, int precision) {
    std::unique_ptr<Instance> inst(new Instance(spec));
    std::vector<std::string> failures;
    inst->construct(precision, failures);
    if (!failures.empty()) throw ValidationError(failures);
    return inst;
}

std::unique_ptr<Instance> Instance::build(const InstanceSpec& spec) {
    int n1 = static_cast<int>(spec.ext[0].degree), n2 = static_cast<int>(spec.ext[1].degree);
    int P = spec.run.precision > 0 ? spec.run.precision : 4 * (n1 * n2 + 4);
    std::string last;
    bool resultant_stage = false;
    while (P <= spec.run.precision_cap) {
        try {
            auto inst = build_at(spec, P);
            const Invariants& v = inst->inv();
            int want = 4 * (n1 * n2 + v.r + v.mm(0) + v.mm(1) + v.delta[0] + v.delta[1] + 4);
            if (spec.run.precision == 0 && want > P) {
                P = want;
                continue;
            }
            // stability: the same valuations at doubled precision
            auto twice = build_at(spec, 2 * P);
            const Invariants& w = twice->inv();
            if (w.r != v.r || w.mm(0) != v.mm(0) || w.mm(1) != v.mm(1) || !v.r_all.agree() || !w.r_all.agree()) {
                P *= 2;
                continue;
            }
            return inst;
        } catch (const ResultantUndetermined& e) {
            last = e.what();
            resultant_stage = true;
            P *= 2;
        } catch (const PrecisionError& e) {
            last = e.what();
            resultant_stage = false;
            P *= 2;
        }
    }
    if (resultant_stage)
        throw ValidationError({"P1, P2 coprime: not coprime (resultant vanishes to the precision cap " +
                               std::to_string(spec.run.precision_cap) + ")"});
    throw ValidationError({"precision cap exhausted (" + std::to_string(spec.run.precision_cap) + "): " +
                           (last.empty() ? "valuations not stable" : last) +
                           "; for a torus this usually means E'_i != F'[gamma_i]"});
}

}  // namespace ulat
