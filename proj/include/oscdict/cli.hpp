#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oscdict/dictionary.hpp"
#include "oscdict/serialize.hpp"
#include "oscdict/verifier.hpp"

namespace oscdict::cli {

/// Exit-code contract.
enum ExitCode : int {
    kPass = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kInternal = 3,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "OSCDICT_OUTPUT_DIR";

struct Config {
    std::uint64_t p = 0;
    DictKind kind = DictKind::both;
    std::optional<std::int64_t> D;
    std::optional<std::filesystem::path> output;
    Format format = Format::json;
    double tol = 1e-8;
    std::uint64_t sample_limit = kDefaultSampleLimit;
    std::uint64_t seed = kDefaultSeed;
};

/// Throws std::invalid_argument when p is not an odd prime > 3, D is not a
/// non-square, or tol <= 0.
void validate(const Config& cfg);

/// Default file name, placed under $OSCDICT_OUTPUT_DIR when set.
std::filesystem::path default_output_path(const Config& cfg);

int cmd_generate(const Config& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const std::filesystem::path& dict_path, const VerifyConfig& vcfg,
               const std::optional<std::filesystem::path>& report_path, std::ostream& out, std::ostream& err);
int cmd_inspect(std::uint64_t p, std::optional<std::int64_t> D, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oscdict::cli
