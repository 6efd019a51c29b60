#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "oscdict/verifier.hpp"

using namespace oscdict;

namespace {

Dictionary from_vectors(std::uint64_t p, const std::vector<CVec>& vs) {
    Dictionary d;
    d.meta.p = p;
    d.meta.kind = DictKind::nonsplit;
    for (const auto& v : vs) d.entries.push_back({v, TorusKind::nonsplit, 0, NonsplitRep{1, 0, false}});
    return d;
}

double surface_energy(const AmbiguitySurface& s) {
    double e = 0.0;
    for (const auto& z : s.values) e += std::norm(z);
    return e;
}

VerifyConfig only(std::string check) {
    VerifyConfig cfg;
    cfg.checks = {std::move(check)};
    return cfg;
}

}  // namespace

TEST_CASE("fast ambiguity surface agrees with the direct sum") {
    std::mt19937_64 rng(5);
    for (std::uint64_t p : {5, 7, 11}) {
        const auto phi = oracle::random_unit(p, rng);
        const auto psi = oracle::random_unit(p, rng);
        const auto s = ambiguity_surface(phi, psi);
        REQUIRE(s.values.size() == p * p);
        for (std::uint64_t tau = 0; tau < p; ++tau) {
            for (std::uint64_t omega = 0; omega < p; ++omega) {
                const auto want = oracle::direct_ambiguity(phi, psi, tau, omega);
                CHECK(std::abs(s.at(tau, omega) - want) <= 1e-12);
                CHECK(std::abs(ambiguity(phi, psi, tau, omega) - want) <= 1e-12);
            }
        }
    }
}

TEST_CASE("fast and direct ambiguity agree on every pair at p = 5") {
    const auto dict = gen_dictionary(5, DictKind::both);
    double worst = 0.0;
    for (const auto& a : dict.entries) {
        for (const auto& b : dict.entries) {
            const auto s = ambiguity_surface(a.vector, b.vector);
            for (std::uint64_t tau = 0; tau < 5; ++tau)
                for (std::uint64_t omega = 0; omega < 5; ++omega)
                    worst = std::max(worst, std::abs(s.at(tau, omega) - ambiguity(a.vector, b.vector, tau, omega)));
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("ambiguity energy identity") {
    // sum over (tau, omega) of |A|^2 = p |phi|^2 |psi|^2
    std::mt19937_64 rng(17);
    for (std::uint64_t p : {5, 7, 13}) {
        for (int trial = 0; trial < 5; ++trial) {
            auto phi = oracle::random_unit(p, rng);
            const auto psi = oracle::random_unit(p, rng);
            for (auto& z : phi) z *= 2.0;
            CHECK(surface_energy(ambiguity_surface(phi, psi)) == doctest::Approx(4.0 * static_cast<double>(p)).epsilon(1e-12));
        }
    }
    const auto dict = gen_nonsplit_dict(7);
    for (std::size_t i = 0; i < 10; ++i) {
        const auto s = ambiguity_surface(dict.entries[i].vector, dict.entries[i + 7].vector);
        CHECK(surface_energy(s) == doctest::Approx(7.0).epsilon(1e-12));
    }
}

TEST_CASE("ambiguity of time-frequency shifts") {
    const std::uint64_t p = 7;
    std::mt19937_64 rng(3);
    const auto psi = oracle::random_unit(p, rng);
    const auto phi = modulation(FpElem(2, p), time_shift(FpElem(4, p), psi));
    CHECK(std::abs(std::abs(ambiguity(phi, psi, 4, 2)) - 1.0) < 1e-12);
    CHECK(std::abs(ambiguity(psi, psi, 0, 0) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("autocorrelation on generated dictionaries") {
    for (std::uint64_t p : {5, 7, 11, 13}) {
        const auto r = check_autocorrelation(gen_nonsplit_dict(p));
        CHECK(r.passed);
        CHECK(r.count_checked == dictionary_size(p, TorusKind::nonsplit));
        CHECK(r.details["origin_max_deviation"].get<double>() <= 1e-10);
        CHECK_FALSE(r.details.contains("split_half_index_max"));
    }
    const auto r5 = check_autocorrelation(gen_split_dict(5));
    CHECK(r5.passed);
    CHECK(r5.details.contains("split_half_index_max"));
    CHECK(r5.worst_value <= 2.0 / std::sqrt(5.0));
}

TEST_CASE("negative control: random unit vectors fail autocorrelation") {
    // 2/sqrt(p) is loose at small p: random vectors pass it at p = 5
    const std::uint64_t p = 31;
    std::mt19937_64 rng(2024);
    std::vector<CVec> vs;
    for (int i = 0; i < 100; ++i) vs.push_back(oracle::random_unit(p, rng));
    const auto r = check_autocorrelation(from_vectors(p, vs));
    CHECK_FALSE(r.passed);
    CHECK(r.details["violation_count"].get<std::uint64_t>() > 90);
    CHECK(r.details["violations"].size() <= 20);
}

TEST_CASE("negative control: delta spikes fail supremum") {
    for (std::uint64_t p : {5, 7, 11}) {
        const auto r = check_supremum(from_vectors(p, {delta(p, 0), delta(p, 3)}));
        CHECK_FALSE(r.passed);
        CHECK(r.worst_value == 1.0);
        CHECK(r.details["violation_count"].get<std::uint64_t>() == 2);
    }
}

TEST_CASE("supremum on generated dictionaries") {
    for (std::uint64_t p : {5, 7, 11, 13}) CHECK(check_supremum(gen_nonsplit_dict(p)).passed);
    CHECK(check_supremum(gen_split_dict(5)).passed);
    CHECK(check_supremum(gen_split_dict(13)).passed);
}

TEST_CASE("crosscorrelation: exhaustive and sampled modes") {
    const auto d5 = gen_dictionary(5, DictKind::both);
    const auto r5 = check_crosscorrelation(d5);
    CHECK(r5.passed);
    CHECK(r5.details["mode"] == "exhaustive");
    CHECK(r5.count_checked == 95 * 94 / 2);

    const auto d7 = gen_dictionary(7, DictKind::both);
    VerifyConfig cfg;
    cfg.sample_limit = 2000;
    const auto a = check_crosscorrelation(d7, cfg);
    const auto b = check_crosscorrelation(d7, cfg);
    CHECK(a.details["mode"] == "sampled");
    CHECK(a.details["seed"] == kDefaultSeed);
    CHECK(a.count_checked == 2000);
    CHECK(to_json(a).dump() == to_json(b).dump());
    cfg.seed = 1;
    const auto c = check_crosscorrelation(d7, cfg);
    CHECK(c.count_checked == 2000);
    CHECK(to_json(a).dump() != to_json(c).dump());
    CHECK(a.passed);
}

TEST_CASE("crosscorrelation catches a repeated vector") {
    const auto base = gen_nonsplit_dict(13);
    // 4/sqrt(13) > 1, so the duplicate passes the bound; its peak still sits at the origin
    auto d = from_vectors(13, {base.entries[0].vector, base.entries[0].vector});
    VerifyConfig cfg;
    const auto r = check_crosscorrelation(d, cfg);
    CHECK(r.worst_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.worst_location["tau"] == 0);
    CHECK(r.worst_location["omega"] == 0);
}

TEST_CASE("fourier invariance") {
    for (std::uint64_t p : {5, 7, 11}) {
        const auto dict = gen_dictionary(p, DictKind::both);
        const auto r = check_fourier_invariance(dict);
        CHECK(r.passed);
        CHECK(r.worst_value >= 1.0 - 1e-8);
        const auto perm = r.details["permutation"].get<std::vector<std::int64_t>>();
        REQUIRE(perm.size() == dict.entries.size());
        std::vector<int> seen(perm.size(), 0);
        for (std::size_t i = 0; i < perm.size(); ++i) {
            ++seen[static_cast<std::size_t>(perm[i])];
            CHECK(dict.entries[static_cast<std::size_t>(perm[i])].kind == dict.entries[i].kind);
            // F^4 = Id
            auto j = static_cast<std::int64_t>(i);
            for (int k = 0; k < 4; ++k) j = perm[static_cast<std::size_t>(j)];
            CHECK(j == static_cast<std::int64_t>(i));
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    }
}

TEST_CASE("fourier invariance fails on a non-invariant set") {
    std::mt19937_64 rng(8);
    const auto r = check_fourier_invariance(from_vectors(7, {oracle::random_unit(7, rng), oracle::random_unit(7, rng)}));
    CHECK_FALSE(r.passed);
}

TEST_CASE("structure check") {
    for (std::uint64_t p : {5, 7, 11}) {
        const auto r = check_structure(gen_dictionary(p, DictKind::both));
        CHECK(r.passed);
        CHECK(r.details["max_eigen_residual"].get<double>() <= 1e-8);
        CHECK(r.details["max_gram_deviation"].get<double>() <= 1e-9);
    }

    auto zeroed = gen_dictionary(5, DictKind::both);
    zeroed.entries[50].vector.assign(5, Complex(0.0, 0.0));
    CHECK_FALSE(check_structure(zeroed).passed);

    auto rotated = gen_dictionary(5, DictKind::both);
    for (auto& z : rotated.entries[3].vector) z *= Complex(0.0, 1.0);
    CHECK_FALSE(check_structure(rotated).passed);

    auto short_dict = gen_dictionary(5, DictKind::both);
    short_dict.entries.pop_back();
    CHECK_FALSE(check_structure(short_dict).passed);
}

TEST_CASE("report") {
    const auto dict = gen_dictionary(5, DictKind::both);
    const auto rep = verify(dict);
    CHECK(rep.all_passed());
    REQUIRE(rep.checks.size() == 5);
    const auto j = rep.to_json();
    CHECK(j["runtime_seconds"].is_null());
    CHECK(j["checks"].size() == 5);
    CHECK(verify(dict).to_json().dump() == j.dump());

    VerifyConfig timed;
    timed.timing = true;
    timed.checks = {"supremum"};
    const auto tj = verify(dict, timed).to_json();
    CHECK(tj["runtime_seconds"].is_number());
    CHECK(tj["checks"].size() == 1);

    CHECK_THROWS_AS(validate_check_names({"structure", "bogus"}), std::invalid_argument);
    CHECK_NOTHROW(validate_check_names(VerifyConfig::all_check_names()));

    auto bad = dict;
    bad.entries[0].vector[1] += 0.5;
    const auto failed = verify(bad, only("structure"));
    CHECK_FALSE(failed.all_passed());
}
