#include "oscdict/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>

namespace oscdict {

namespace {

constexpr std::size_t kMaxListedViolations = 20;

double sqrt_p(const Dictionary& dict) { return std::sqrt(static_cast<double>(dict.meta.p)); }

void record_violation(CheckResult& r, Json item) {
    auto& count = r.details["violation_count"];
    count = count.is_null() ? 1 : count.get<std::uint64_t>() + 1;
    auto& list = r.details["violations"];
    if (list.is_null()) list = Json::array();
    if (list.size() < kMaxListedViolations) list.push_back(std::move(item));
    r.passed = false;
}

void check_lengths(const Dictionary& dict) {
    for (std::size_t i = 0; i < dict.entries.size(); ++i) {
        if (dict.entries[i].vector.size() != dict.meta.p) {
            throw std::invalid_argument("entry " + std::to_string(i) + " does not have length p");
        }
    }
}

// Max |A(tau, omega)| over the surface, skipping the origin when asked.
struct SurfaceMax {
    double value = -1.0;
    std::uint64_t tau = 0;
    std::uint64_t omega = 0;
};

SurfaceMax surface_max(const AmbiguitySurface& s, bool skip_origin) {
    SurfaceMax best;
    for (std::uint64_t tau = 0; tau < s.p; ++tau) {
        for (std::uint64_t omega = 0; omega < s.p; ++omega) {
            if (skip_origin && tau == 0 && omega == 0) continue;
            const double v = std::abs(s.at(tau, omega));
            if (v > best.value) best = {v, tau, omega};
        }
    }
    return best;
}

}  // namespace

std::vector<std::string> VerifyConfig::all_check_names() {
    return {"structure", "autocorrelation", "crosscorrelation", "supremum", "fourier"};
}

void validate_check_names(const std::vector<std::string>& names) {
    const auto known = VerifyConfig::all_check_names();
    for (const auto& n : names) {
        if (std::find(known.begin(), known.end(), n) == known.end()) {
            throw std::invalid_argument("unknown check: " + n);
        }
    }
}

Json to_json(const VerifyConfig& cfg) {
    return Json{{"tol", cfg.tol},
                {"unit_tol", cfg.unit_tol},
                {"gram_tol", cfg.gram_tol},
                {"residual_tol", cfg.residual_tol},
                {"sample_limit", cfg.sample_limit},
                {"seed", cfg.seed},
                {"timing", cfg.timing},
                {"checks", cfg.checks}};
}

// ---------------------------------------------------------------------------
// Ambiguity functions

Complex ambiguity(const CVec& phi, const CVec& psi, std::uint64_t tau, std::uint64_t omega) {
    const auto p = static_cast<std::uint64_t>(phi.size());
    if (psi.size() != p) throw std::invalid_argument("ambiguity of vectors of different length");
    const auto roots = unit_roots(p);
    Complex acc(0.0, 0.0);
    for (std::uint64_t t = 0; t < p; ++t) {
        acc += phi[t] * std::conj(roots[omega % p * t % p] * psi[(t + tau) % p]);
    }
    return acc;
}

AmbiguitySurface ambiguity_surface(const CVec& phi, const CVec& psi) {
    const auto p = static_cast<std::uint64_t>(phi.size());
    if (psi.size() != p) throw std::invalid_argument("ambiguity of vectors of different length");
    const auto roots = unit_roots(p);
    AmbiguitySurface s{p, std::vector<Complex>(p * p)};
    CVec u(p);
    for (std::uint64_t tau = 0; tau < p; ++tau) {
        for (std::uint64_t t = 0; t < p; ++t) u[t] = phi[t] * std::conj(psi[(t + tau) % p]);
        for (std::uint64_t omega = 0; omega < p; ++omega) {
            Complex acc(0.0, 0.0);
            for (std::uint64_t t = 0; t < p; ++t) acc += u[t] * std::conj(roots[omega * t % p]);
            s.values[tau * p + omega] = acc;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Checks

Json to_json(const CheckResult& r) {
    return Json{{"name", r.name},
                {"status", std::string(r.status())},
                {"worst_value", r.worst_value},
                {"worst_location", r.worst_location},
                {"tolerance", r.tolerance},
                {"count_checked", r.count_checked},
                {"details", r.details}};
}

CheckResult check_autocorrelation(const Dictionary& dict, const VerifyConfig& cfg) {
    check_lengths(dict);
    const auto p = dict.meta.p;
    const double bound = 2.0 / sqrt_p(dict);
    CheckResult r{.name = "autocorrelation", .tolerance = cfg.tol};
    r.details["bound"] = bound;
    r.details["unit_tolerance"] = cfg.unit_tol;

    double worst_origin = 0.0;
    std::uint64_t worst_origin_entry = 0;
    // Measured separately: x = (p-1)/2 corresponds to the eigenvalue +1 of S_alpha.
    double half_index_max = 0.0;
    for (std::size_t i = 0; i < dict.entries.size(); ++i) {
        const auto& e = dict.entries[i];
        const auto surface = ambiguity_surface(e.vector, e.vector);
        const auto best = surface_max(surface, true);
        const double origin_dev = std::abs(surface.at(0, 0) - Complex(1.0, 0.0));
        ++r.count_checked;

        if (i == 0 || best.value > r.worst_value) {
            r.worst_value = best.value;
            r.worst_location = Json{{"entry", i}, {"tau", best.tau}, {"omega", best.omega}};
        }
        if (origin_dev > worst_origin) {
            worst_origin = origin_dev;
            worst_origin_entry = i;
        }
        if (e.kind == TorusKind::split && e.char_index == (p - 1) / 2) {
            half_index_max = std::max(half_index_max, best.value);
        }
        if (best.value > bound + cfg.tol) {
            record_violation(r, Json{{"entry", i}, {"tau", best.tau}, {"omega", best.omega}, {"value", best.value}});
        }
        if (origin_dev > cfg.unit_tol) {
            record_violation(r, Json{{"entry", i}, {"tau", 0}, {"omega", 0}, {"origin_deviation", origin_dev}});
        }
    }
    r.details["origin_max_deviation"] = worst_origin;
    r.details["origin_worst_entry"] = worst_origin_entry;
    if (dict.meta.kind != DictKind::nonsplit) r.details["split_half_index_max"] = half_index_max;
    return r;
}

CheckResult check_crosscorrelation(const Dictionary& dict, const VerifyConfig& cfg) {
    check_lengths(dict);
    const double bound = 4.0 / sqrt_p(dict);
    CheckResult r{.name = "crosscorrelation", .tolerance = cfg.tol};
    r.details["bound"] = bound;

    const std::uint64_t n = dict.entries.size();
    const std::uint64_t pair_count = n < 2 ? 0 : n * (n - 1) / 2;
    const bool exhaustive = pair_count <= cfg.sample_limit;
    r.details["mode"] = exhaustive ? "exhaustive" : "sampled";
    r.details["pair_population"] = pair_count;
    if (!exhaustive) r.details["seed"] = cfg.seed;

    bool first = true;
    const auto visit = [&](std::uint64_t i, std::uint64_t j) {
        const auto surface = ambiguity_surface(dict.entries[i].vector, dict.entries[j].vector);
        const auto best = surface_max(surface, false);
        ++r.count_checked;
        if (first || best.value > r.worst_value) {
            first = false;
            r.worst_value = best.value;
            r.worst_location = Json{{"entry", i}, {"other", j}, {"tau", best.tau}, {"omega", best.omega}};
        }
        if (best.value > bound + cfg.tol) {
            record_violation(r, Json{{"entry", i}, {"other", j}, {"tau", best.tau}, {"omega", best.omega},
                                     {"value", best.value}});
        }
    };

    if (exhaustive) {
        for (std::uint64_t i = 0; i < n; ++i)
            for (std::uint64_t j = i + 1; j < n; ++j) visit(i, j);
    } else {
        // Plain modulo reduction keeps the draw sequence identical across standard libraries.
        std::mt19937_64 rng(cfg.seed);
        for (std::uint64_t k = 0; k < cfg.sample_limit; ++k) {
            std::uint64_t i = rng() % n;
            std::uint64_t j = rng() % n;
            while (j == i) j = rng() % n;
            if (i > j) std::swap(i, j);
            visit(i, j);
        }
    }
    return r;
}

CheckResult check_supremum(const Dictionary& dict, const VerifyConfig& cfg) {
    check_lengths(dict);
    const double bound = 2.0 / sqrt_p(dict);
    CheckResult r{.name = "supremum", .tolerance = cfg.tol};
    r.details["bound"] = bound;
    for (std::size_t i = 0; i < dict.entries.size(); ++i) {
        const auto& v = dict.entries[i].vector;
        std::size_t arg = 0;
        for (std::size_t t = 1; t < v.size(); ++t) {
            if (std::abs(v[t]) > std::abs(v[arg])) arg = t;
        }
        const double m = std::abs(v[arg]);
        ++r.count_checked;
        if (i == 0 || m > r.worst_value) {
            r.worst_value = m;
            r.worst_location = Json{{"entry", i}, {"t", arg}};
        }
        if (m > bound + cfg.tol) record_violation(r, Json{{"entry", i}, {"t", arg}, {"value", m}});
    }
    return r;
}

CheckResult check_fourier_invariance(const Dictionary& dict, const VerifyConfig& cfg) {
    check_lengths(dict);
    CheckResult r{.name = "fourier", .tolerance = cfg.tol};
    r.worst_value = 1.0;

    std::map<TorusKind, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < dict.entries.size(); ++i) groups[dict.entries[i].kind].push_back(i);

    Json permutation = Json::array();
    std::vector<std::int64_t> image(dict.entries.size(), -1);
    for (const auto& [kind, members] : groups) {
        std::vector<std::size_t> hits(dict.entries.size(), 0);
        for (auto i : members) {
            const CVec f = dft(dict.entries[i].vector);
            double best = -1.0, second = -1.0;
            std::size_t arg = i;
            for (auto j : members) {
                const double m = std::abs(inner(f, dict.entries[j].vector));
                if (m > best) {
                    second = best;
                    best = m;
                    arg = j;
                } else if (m > second) {
                    second = m;
                }
            }
            ++r.count_checked;
            image[i] = static_cast<std::int64_t>(arg);
            ++hits[arg];
            if (best < r.worst_value) {
                r.worst_value = best;
                r.worst_location = Json{{"entry", i}, {"match", arg}};
            }
            if (best < 1.0 - cfg.tol) {
                record_violation(r, Json{{"entry", i}, {"reason", "unmatched"}, {"best", best}, {"match", arg}});
            } else if (second >= 1.0 - cfg.tol) {
                record_violation(r, Json{{"entry", i}, {"reason", "ambiguous match"}, {"second", second}});
            }
        }
        for (auto j : members) {
            if (hits[j] > 1) record_violation(r, Json{{"entry", j}, {"reason", "matched more than once"}});
        }
    }
    for (auto v : image) permutation.push_back(v);
    r.details["permutation"] = std::move(permutation);
    return r;
}

CheckResult check_structure(const Dictionary& dict, const VerifyConfig& cfg) {
    const auto p = dict.meta.p;
    CheckResult r{.name = "structure", .tolerance = cfg.unit_tol};
    r.details["gram_tolerance"] = cfg.gram_tol;
    r.details["residual_tolerance"] = cfg.residual_tol;
    r.worst_location = Json{{"invariant", "none"}};

    const auto bump = [&r](double value, Json loc) {
        if (value > r.worst_value) {
            r.worst_value = value;
            r.worst_location = std::move(loc);
        }
    };

    // Sizes per kind.
    std::map<TorusKind, std::uint64_t> counts;
    for (const auto& e : dict.entries) ++counts[e.kind];
    std::vector<TorusKind> expected_kinds;
    if (dict.meta.kind != DictKind::nonsplit) expected_kinds.push_back(TorusKind::split);
    if (dict.meta.kind != DictKind::split) expected_kinds.push_back(TorusKind::nonsplit);
    for (auto kind : expected_kinds) {
        const auto want = dictionary_size(p, kind);
        r.details["size_" + std::string(to_string(kind))] = counts[kind];
        if (counts[kind] != want) {
            record_violation(r, Json{{"invariant", "size"}, {"kind", to_string(kind)}, {"count", counts[kind]},
                                     {"expected", want}});
        }
    }
    if (counts.size() > expected_kinds.size()) {
        record_violation(r, Json{{"invariant", "size"}, {"reason", "entry kind not declared in metadata"}});
    }

    // Per-entry invariants.
    double max_norm_dev = 0.0;
    for (std::size_t i = 0; i < dict.entries.size(); ++i) {
        const auto& v = dict.entries[i].vector;
        ++r.count_checked;
        if (v.size() != p) {
            record_violation(r, Json{{"invariant", "length"}, {"entry", i}});
            continue;
        }
        const double dev = std::abs(norm(v) - 1.0);
        max_norm_dev = std::max(max_norm_dev, dev);
        bump(dev, Json{{"invariant", "unit_norm"}, {"entry", i}});
        if (dev > cfg.unit_tol) record_violation(r, Json{{"invariant", "unit_norm"}, {"entry", i}, {"deviation", dev}});

        const auto lead = std::find_if(v.begin(), v.end(), [](const Complex& z) { return std::abs(z) > kPhaseFloor; });
        if (lead == v.end() || lead->real() <= 0.0 || std::abs(lead->imag()) > cfg.tol) {
            record_violation(r, Json{{"invariant", "canonical_phase"}, {"entry", i}});
        }
    }
    r.details["max_norm_deviation"] = max_norm_dev;

    // Per-torus orthonormality.
    std::map<std::tuple<int, Residue, Residue, bool>, std::vector<std::size_t>> tori;
    for (std::size_t i = 0; i < dict.entries.size(); ++i) {
        const auto& e = dict.entries[i];
        if (const auto* s = std::get_if<SplitRep>(&e.rep)) {
            tori[{0, s->y, s->z, false}].push_back(i);
        } else {
            const auto& n = std::get<NonsplitRep>(e.rep);
            tori[{1, n.a, n.c, n.weyl}].push_back(i);
        }
    }
    double max_gram_dev = 0.0;
    for (const auto& [key, members] : tori) {
        const bool split = std::get<0>(key) == 0;
        const std::size_t want = split ? p - 2 : p;
        const Json rep = split ? Json{{"y", std::get<1>(key)}, {"z", std::get<2>(key)}}
                               : Json{{"a", std::get<1>(key)}, {"c", std::get<2>(key)}, {"w", std::get<3>(key)}};
        if (members.size() != want) {
            record_violation(r, Json{{"invariant", "torus_group_size"}, {"rep", rep}, {"count", members.size()}});
        }
        for (std::size_t u = 0; u < members.size(); ++u) {
            for (std::size_t w = u; w < members.size(); ++w) {
                const auto& a = dict.entries[members[u]].vector;
                const auto& b = dict.entries[members[w]].vector;
                if (a.size() != p || b.size() != p) continue;
                const double target = u == w ? 1.0 : 0.0;
                const double dev = std::abs(inner(a, b) - target);
                if (dev > max_gram_dev) max_gram_dev = dev;
                bump(dev, Json{{"invariant", "orthonormality"}, {"entry", members[u]}, {"other", members[w]}});
                if (dev > cfg.gram_tol) {
                    record_violation(r, Json{{"invariant", "orthonormality"}, {"entry", members[u]},
                                             {"other", members[w]}, {"deviation", dev}});
                }
            }
        }
    }
    r.details["torus_groups"] = tori.size();
    r.details["max_gram_deviation"] = max_gram_dev;

    // Each non-split entry is an eigenvector of rho(g g_D g^-1) for its rep g.
    if (counts.count(TorusKind::nonsplit) != 0) {
        if (!dict.meta.D || !dict.meta.s || !dict.meta.t) {
            record_violation(r, Json{{"invariant", "eigenvector"}, {"reason", "metadata lacks D, s, t"}});
        } else {
            const auto elem = [p](Residue v) { return FpElem(static_cast<std::int64_t>(v), p); };
            const SL2 gD = build_gD(p, elem(*dict.meta.D), elem(*dict.meta.s), elem(*dict.meta.t));
            double max_residual = 0.0;
            std::map<std::tuple<Residue, Residue, bool>, Operator> conjugates;
            for (std::size_t i = 0; i < dict.entries.size(); ++i) {
                const auto& e = dict.entries[i];
                if (e.kind != TorusKind::nonsplit || e.vector.size() != p) continue;
                const auto& rep = std::get<NonsplitRep>(e.rep);
                const auto key = std::make_tuple(rep.a, rep.c, rep.weyl);
                auto it = conjugates.find(key);
                if (it == conjugates.end()) {
                    const SL2 g = nonsplit_rep_matrix(p, rep);
                    it = conjugates.emplace(key, rho(g * gD * g.inverse())).first;
                }
                const CVec Uv = it->second(e.vector);
                const double nv = norm(e.vector);
                if (nv == 0.0) continue;
                const Complex lambda = inner(Uv, e.vector) / (nv * nv);
                double res2 = 0.0;
                for (std::size_t t = 0; t < p; ++t) res2 += std::norm(Uv[t] - lambda * e.vector[t]);
                const double residual = std::sqrt(res2);
                max_residual = std::max(max_residual, residual);
                bump(residual, Json{{"invariant", "eigenvector"}, {"entry", i}});
                if (residual > cfg.residual_tol) {
                    record_violation(r, Json{{"invariant", "eigenvector"}, {"entry", i}, {"residual", residual}});
                }
            }
            r.details["max_eigen_residual"] = max_residual;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Report

Json meta_to_json(const DictionaryMeta& meta) {
    Json j{{"p", meta.p}, {"kind", std::string(to_string(meta.kind))}};
    j["D"] = meta.D ? Json(*meta.D) : Json(nullptr);
    j["alpha"] = meta.alpha;
    j["s"] = meta.s ? Json(*meta.s) : Json(nullptr);
    j["t"] = meta.t ? Json(*meta.t) : Json(nullptr);
    j["c_scalar"] = meta.c_scalar ? Json::array({meta.c_scalar->real(), meta.c_scalar->imag()}) : Json(nullptr);
    j["excluded_char"] = meta.excluded_char ? Json(*meta.excluded_char) : Json(nullptr);
    j["version"] = meta.version;
    j["ordering"] = meta.ordering;
    return j;
}

bool Report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Json Report::to_json() const {
    Json checks_json = Json::array();
    for (const auto& c : checks) checks_json.push_back(oscdict::to_json(c));
    return Json{{"config", config},
                {"dictionary_meta", dictionary_meta},
                {"checks", std::move(checks_json)},
                {"runtime_seconds", runtime_seconds ? Json(*runtime_seconds) : Json(nullptr)}};
}

Report verify(const Dictionary& dict, const VerifyConfig& cfg) {
    validate_check_names(cfg.checks);
    const auto start = std::chrono::steady_clock::now();
    Report report{to_json(cfg), meta_to_json(dict.meta), {}, std::nullopt};
    for (const auto& name : cfg.checks) {
        if (name == "structure") report.checks.push_back(check_structure(dict, cfg));
        else if (name == "autocorrelation") report.checks.push_back(check_autocorrelation(dict, cfg));
        else if (name == "crosscorrelation") report.checks.push_back(check_crosscorrelation(dict, cfg));
        else if (name == "supremum") report.checks.push_back(check_supremum(dict, cfg));
        else if (name == "fourier") report.checks.push_back(check_fourier_invariance(dict, cfg));
    }
    if (cfg.timing) {
        report.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return report;
}

}  // namespace oscdict
