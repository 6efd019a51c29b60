// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oscdict/cli.hpp"
#include "oscdict/dictionary.hpp"
#include "oscdict/serialize.hpp"
#include "oscdict/tori.hpp"
#include "oscdict/verifier.hpp"

#ifndef OSCDICT_CLI_PATH
#error "OSCDICT_CLI_PATH must point at the oscdict executable"
#endif

using namespace oscdict;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int g_failed = 0;

void report(int id, const std::string& name, Outcome& o, double secs) {
    std::printf("%s #%-2d %-30s%s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.str().c_str(),
                secs);
    std::fflush(stdout);
    if (!o.pass) ++g_failed;
}

void run(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& ex) {
        o.require(false, std::string("exception: ") + ex.what());
    }
    report(id, name, o, seconds_since(t0));
}

Dictionary only_kind(const Dictionary& d, TorusKind kind) {
    Dictionary out;
    out.meta = d.meta;
    out.meta.kind = kind == TorusKind::split ? DictKind::split : DictKind::nonsplit;
    for (const auto& e : d.entries)
        if (e.kind == kind) out.entries.push_back(e);
    return out;
}

double max_overlap_with(const CVec& v, const std::vector<CVec>& pool) {
    double best = 0.0;
    for (const auto& w : pool) best = std::max(best, std::abs(inner(v, w)));
    return best;
}

std::string file_bytes(const fs::path& p) { return read_file(p); }

}  // namespace

int main() {
    const std::vector<std::uint64_t> all_p{5, 7, 11, 13};
    std::map<std::uint64_t, Dictionary> dicts;

    run(1, "cardinalities", [&](Outcome& o) {
        for (auto p : all_p) {
            const auto t0 = Clock::now();
            dicts[p] = gen_dictionary(p, DictKind::both);
            const double secs = seconds_since(t0);
            std::uint64_t ns = 0, sp = 0;
            for (const auto& e : dicts[p].entries) (e.kind == TorusKind::split ? sp : ns) += 1;
            const auto want_s = p * (p + 1) * (p - 2) / 2;
            const auto want_ns = p * p * (p - 1) / 2;
            o.detail << " p=" << p << ":" << sp << "/" << ns;
            o.require(sp == want_s, "split size at p=" + std::to_string(p));
            o.require(ns == want_ns, "non-split size at p=" + std::to_string(p));
            o.require(secs < 10.0, "runtime at p=" + std::to_string(p));
        }
    });

    run(2, "torus structure", [&](Outcome& o) {
        const auto t0 = Clock::now();
        for (std::uint64_t p : {5, 7, 11}) {
            const FpElem D = find_nonsquare(p);
            const auto [s, t] = find_primitive_fp2(p, D);
            const SL2 g = build_gD(p, D, s, t);
            o.require(enumerate_TD(p, D).size() == p + 1, "|T_D| at p=" + std::to_string(p));
            bool exact = g.pow(p + 1).is_identity();
            for (std::uint64_t k = 1; k <= p; ++k) exact = exact && !g.pow(k).is_identity();
            o.require(exact, "order of g_D at p=" + std::to_string(p));
            const auto split = coset_reps_split(p).reps;
            const auto nonsplit = coset_reps_nonsplit(p, D).reps;
            o.require(split.size() == p * (p + 1) / 2, "split coset count");
            o.require(nonsplit.size() == p * (p - 1) / 2, "non-split coset count");
            if (p <= 7) {
                std::uint64_t nd = 0;
                for (const auto& h : enumerate_sl2(p)) nd += in_normalizer_ND(h, D) ? 1 : 0;
                o.require(nd == 2 * (p + 1), "|N_D| at p=" + std::to_string(p));
                o.detail << " |N_D|(" << p << ")=" << nd;
                bool distinct = true;
                for (std::size_t i = 0; i < split.size(); ++i)
                    for (std::size_t j = i + 1; j < split.size(); ++j)
                        distinct = distinct && !in_normalizer_NA(split[i].matrix.inverse() * split[j].matrix);
                for (std::size_t i = 0; i < nonsplit.size(); ++i)
                    for (std::size_t j = i + 1; j < nonsplit.size(); ++j)
                        distinct =
                            distinct && !in_normalizer_ND(nonsplit[i].matrix.inverse() * nonsplit[j].matrix, D);
                o.require(distinct, "pairwise inequivalence at p=" + std::to_string(p));
            }
        }
        o.require(seconds_since(t0) < 60.0, "runtime < 60 s");
    });

    run(3, "spectral correctness", [&](Outcome& o) {
        for (std::uint64_t p : {5, 7, 11}) {
            const auto basis = nonsplit_basis(p, find_nonsquare(p));
            std::uint64_t ones = 0, zeros = 0;
            for (double n : basis.projection_norms) {
                if (n < kRankZeroThreshold) ++zeros;
                else if (n > kRankOneThreshold && std::abs(n - 1.0) < 1e-9) ++ones;
            }
            o.require(ones == p && zeros == 1, "rank pattern at p=" + std::to_string(p));
            const CMatrix U = as_matrix(rho(basis.generator));
            double resid = 0.0;
            CMatrix V(p, p);
            for (std::size_t i = 0; i < basis.pairs.size(); ++i) {
                const auto v = to_eigen(basis.pairs[i].vector);
                resid = std::max(resid, (U * v - basis.pairs[i].eigenvalue * v).norm());
                V.col(static_cast<Eigen::Index>(i)) = v;
            }
            const double gram = (V.adjoint() * V - CMatrix::Identity(p, p)).cwiseAbs().maxCoeff();
            o.detail << " p=" << p << ": resid " << fmt("%.1e", resid) << " gram " << fmt("%.1e", gram);
            o.require(resid <= 1e-9, "eigen residual");
            o.require(gram <= 1e-9, "Gram deviation");
        }
    });

    run(4, "split oracle equivalence", [&](Outcome& o) {
        for (std::uint64_t p : {5, 7}) {
            const auto basis = split_basis(p);
            // oracle vectors rho(g) psi_x grouped by x
            std::vector<std::vector<CVec>> by_x(p - 2);
            for (const auto& rep : coset_reps_split(p).reps) {
                const auto U = rho(rep.matrix);
                for (std::size_t i = 0; i < basis.size(); ++i) by_x[i].push_back(U(basis[i]));
            }
            double worst = 1.0;
            for (const auto& e : only_kind(dicts.at(p), TorusKind::split).entries) {
                worst = std::min(worst, max_overlap_with(e.vector, by_x[e.char_index - 1]));
            }
            o.detail << " p=" << p << ": min match " << fmt("%.15f", worst);
            o.require(worst >= 1.0 - 1e-9, "closed form vs oracle at p=" + std::to_string(p));
        }
    });

    run(5, "autocorrelation (i)", [&](Outcome& o) {
        for (auto p : all_p) {
            const auto t0 = Clock::now();
            const auto r = check_autocorrelation(dicts.at(p));
            const double secs = seconds_since(t0);
            const auto rs = check_autocorrelation(only_kind(dicts.at(p), TorusKind::split));
            const auto rn = check_autocorrelation(only_kind(dicts.at(p), TorusKind::nonsplit));
            o.detail << " p=" << p << ": bound " << fmt("%.5f", 2.0 / std::sqrt(static_cast<double>(p)))
                     << " split " << fmt("%.5f", rs.worst_value) << " nonsplit " << fmt("%.5f", rn.worst_value)
                     << " origin dev " << fmt("%.1e", r.details["origin_max_deviation"].get<double>()) << ";";
            o.require(r.passed, "p=" + std::to_string(p));
            if (p == 13) o.require(secs < 300.0, "runtime at p=13");
        }
    });

    run(6, "crosscorrelation (ii)", [&](Outcome& o) {
        for (auto p : all_p) {
            VerifyConfig cfg;
            cfg.sample_limit = 100000;
            const auto r = check_crosscorrelation(dicts.at(p), cfg);
            const std::string mode = r.details["mode"].get<std::string>();
            o.detail << " p=" << p << ": " << mode << " " << r.count_checked << " pairs max "
                     << fmt("%.5f", r.worst_value) << " bound " << fmt("%.5f", 4.0 / std::sqrt(static_cast<double>(p)))
                     << ";";
            o.require(mode == (p <= 7 ? "exhaustive" : "sampled"), "sampling mode at p=" + std::to_string(p));
            o.require(r.passed, "p=" + std::to_string(p));
        }
    });

    run(7, "supremum (iii)", [&](Outcome& o) {
        for (auto p : all_p) {
            const auto r = check_supremum(dicts.at(p));
            const auto rs = check_supremum(only_kind(dicts.at(p), TorusKind::split));
            const auto rn = check_supremum(only_kind(dicts.at(p), TorusKind::nonsplit));
            o.detail << " p=" << p << ": bound " << fmt("%.5f", 2.0 / std::sqrt(static_cast<double>(p))) << " split "
                     << fmt("%.5f", rs.worst_value) << " nonsplit " << fmt("%.5f", rn.worst_value) << ";";
            o.require(r.passed, "p=" + std::to_string(p));
        }
    });

    run(8, "fourier invariance (iv)", [&](Outcome& o) {
        for (std::uint64_t p : {5, 7, 11}) {
            for (auto kind : {TorusKind::split, TorusKind::nonsplit}) {
                const auto r = check_fourier_invariance(only_kind(dicts.at(p), kind));
                o.require(r.passed, std::string(to_string(kind)) + " at p=" + std::to_string(p));
                o.require(r.worst_value >= 1.0 - 1e-8, "match quality");
                if (kind == TorusKind::nonsplit) o.detail << " p=" << p << ": min match " << fmt("%.12f", r.worst_value);
            }
        }
    });

    run(9, "ambiguity + negative controls", [&](Outcome& o) {
        const auto& d5 = dicts.at(5);
        double worst = 0.0;
        for (const auto& a : d5.entries)
            for (const auto& b : d5.entries) {
                const auto s = ambiguity_surface(a.vector, b.vector);
                for (std::uint64_t tau = 0; tau < 5; ++tau)
                    for (std::uint64_t omega = 0; omega < 5; ++omega)
                        worst = std::max(worst, std::abs(s.at(tau, omega) - ambiguity(a.vector, b.vector, tau, omega)));
            }
        o.detail << " fast/direct " << fmt("%.1e", worst);
        o.require(worst <= 1e-12, "fast/direct agreement");

        const auto random_dict = [](std::uint64_t p) {
            std::mt19937_64 rng(2024);
            std::normal_distribution<double> n(0.0, 1.0);
            Dictionary d;
            d.meta.p = p;
            d.meta.kind = DictKind::nonsplit;
            for (int i = 0; i < 100; ++i) {
                CVec v(p);
                double s = 0.0;
                for (auto& z : v) {
                    z = Complex(n(rng), n(rng));
                    s += std::norm(z);
                }
                for (auto& z : v) z /= std::sqrt(s);
                d.entries.push_back({v, TorusKind::nonsplit, 0, NonsplitRep{1, 0, false}});
            }
            return d;
        };
        const auto r31 = check_autocorrelation(random_dict(31));
        const auto r13 = check_autocorrelation(random_dict(13));
        const auto v31 = r31.details.value("violation_count", std::uint64_t{0});
        o.detail << " random p=31: " << v31 << "/100 violate (p=13: "
                 << r13.details.value("violation_count", std::uint64_t{0}) << ")";
        o.require(!r31.passed && v31 > 90, "random vectors fail autocorrelation");

        Dictionary spikes;
        spikes.meta.p = 5;
        spikes.meta.kind = DictKind::nonsplit;
        for (std::uint64_t t = 0; t < 5; ++t)
            spikes.entries.push_back({delta(5, t), TorusKind::nonsplit, 0, NonsplitRep{1, 0, false}});
        const auto rs = check_supremum(spikes);
        o.detail << "; delta spikes max " << fmt("%.1f", rs.worst_value);
        o.require(!rs.passed, "delta spikes fail supremum");
    });

    run(10, "determinism", [&](Outcome& o) {
        const fs::path root = fs::temp_directory_path() / ("oscdict_acceptance_" + std::to_string(std::random_device{}()));
        std::vector<std::string> dict_bytes, report_bytes;
        for (int k = 0; k < 2; ++k) {
            const fs::path dir = root / ("run" + std::to_string(k));
            fs::create_directories(dir);
            const auto dict = dir / "p7.json";
            const auto rep = dir / "p7.report.json";
            const std::string cli = OSCDICT_CLI_PATH;
            const std::string gen = "\"" + cli + "\" generate --p 7 -o \"" + dict.string() + "\" > /dev/null";
            const std::string ver =
                "\"" + cli + "\" verify \"" + dict.string() + "\" --report \"" + rep.string() + "\" > /dev/null";
            o.require(std::system(gen.c_str()) == 0, "generate exit status");
            const int vs = std::system(ver.c_str());
            o.require(vs != -1 && WIFEXITED(vs) && WEXITSTATUS(vs) <= 1, "verify exit status");
            dict_bytes.push_back(file_bytes(dict));
            report_bytes.push_back(file_bytes(rep));
        }
        fs::remove_all(root);
        o.detail << " dictionary " << dict_bytes[0].size() << " bytes, report " << report_bytes[0].size() << " bytes";
        o.require(dict_bytes[0] == dict_bytes[1], "dictionary bytes differ");
        o.require(report_bytes[0] == report_bytes[1], "report bytes differ");
    });

    std::printf("%d of 10 criteria passed\n", 10 - g_failed);
    return g_failed == 0 ? 0 : 1;
}
