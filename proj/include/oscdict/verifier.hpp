#pragma once

/**
 * Certification of dictionary properties by exhaustive computation.
 *
 * Each check returns a CheckResult; violations are recorded in the result
 * rather than thrown, so near-misses and measured maxima can be reported.
 * All comparisons use absolute tolerances on magnitudes.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "oscdict/dictionary.hpp"
#include "oscdict/weil_rep.hpp"

namespace oscdict {

using Json = nlohmann::ordered_json;

inline constexpr std::uint64_t kDefaultSeed = 0x05C1D1C7;
inline constexpr std::uint64_t kDefaultSampleLimit = 100000;

struct VerifyConfig {
    /// Slack on the correlation, supremum and Fourier-match bounds.
    double tol = 1e-8;
    /// Allowed deviation of unit norms and of A(0, 0) from 1.
    double unit_tol = 1e-10;
    /// Allowed deviation of per-torus Gram matrices from the identity.
    double gram_tol = 1e-9;
    /// Allowed eigenvector residual for non-split entries.
    double residual_tol = 1e-8;
    /// Cross-correlation pairs are enumerated exhaustively up to this count,
    /// otherwise this many pairs are drawn with `seed`.
    std::uint64_t sample_limit = kDefaultSampleLimit;
    std::uint64_t seed = kDefaultSeed;
    /// Record wall-clock time in the report. Off by default so reports are a
    /// pure function of (dictionary, config).
    bool timing = false;
    std::vector<std::string> checks = all_check_names();

    static std::vector<std::string> all_check_names();
};

Json to_json(const VerifyConfig& cfg);

/// Throws std::invalid_argument naming the first unknown check.
void validate_check_names(const std::vector<std::string>& names);

/// A(tau, omega) = <phi, M_omega L_tau psi> for all (tau, omega), row-major in tau.
struct AmbiguitySurface {
    std::uint64_t p = 0;
    std::vector<Complex> values;

    Complex at(std::uint64_t tau, std::uint64_t omega) const { return values[tau * p + omega]; }
};

/// sum_t phi(t) conj(chi(omega t) psi(t + tau)).
Complex ambiguity(const CVec& phi, const CVec& psi, std::uint64_t tau, std::uint64_t omega);

/// Row tau is the conjugated Fourier transform of phi(t) conj(psi(t + tau)).
AmbiguitySurface ambiguity_surface(const CVec& phi, const CVec& psi);

struct CheckResult {
    std::string name;
    bool passed = true;
    bool skipped = false;
    double worst_value = 0.0;
    Json worst_location = Json::object();
    double tolerance = 0.0;
    std::uint64_t count_checked = 0;
    /// Check-specific data: bounds, violation lists, sampling mode, permutation.
    Json details = Json::object();

    std::string_view status() const { return skipped ? "skipped" : (passed ? "pass" : "fail"); }
};

Json to_json(const CheckResult& r);

/// Property (i): |A(phi, phi)| <= 2/sqrt(p) away from the origin, A(0, 0) = 1.
CheckResult check_autocorrelation(const Dictionary& dict, const VerifyConfig& cfg = {});
/// Property (ii): |A(phi, psi)| <= 4/sqrt(p) for distinct entries.
CheckResult check_crosscorrelation(const Dictionary& dict, const VerifyConfig& cfg = {});
/// Property (iii): max_t |phi(t)| <= 2/sqrt(p).
CheckResult check_supremum(const Dictionary& dict, const VerifyConfig& cfg = {});
/// Property (iv): dft permutes each kind's entries up to phase.
CheckResult check_fourier_invariance(const Dictionary& dict, const VerifyConfig& cfg = {});
/// Sizes, unit norms, canonical phase, per-torus orthonormality, eigenvector residuals.
CheckResult check_structure(const Dictionary& dict, const VerifyConfig& cfg = {});

Json meta_to_json(const DictionaryMeta& meta);

struct Report {
    Json config;
    Json dictionary_meta;
    std::vector<CheckResult> checks;
    std::optional<double> runtime_seconds;

    bool all_passed() const;
    Json to_json() const;
};

/// Runs cfg.checks in the order given.
Report verify(const Dictionary& dict, const VerifyConfig& cfg = {});

}  // namespace oscdict
