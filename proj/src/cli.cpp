#include "oscdict/cli.hpp"

#include <cstdlib>
#include <sstream>

#include "CLI11.hpp"

namespace oscdict::cli {

namespace {

std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::optional<FpElem> override_D(const Config& cfg) {
    if (!cfg.D) return std::nullopt;
    return FpElem(*cfg.D, cfg.p);
}

template <typename T>
std::string join(const std::vector<T>& xs) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
    os << '}';
    return os.str();
}

}  // namespace

void validate(const Config& cfg) {
    require_odd_prime(cfg.p);
    if (cfg.D && legendre(FpElem(*cfg.D, cfg.p)) != -1) {
        throw std::invalid_argument("D = " + std::to_string(*cfg.D) + " is not a non-square mod " +
                                    std::to_string(cfg.p));
    }
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
}

std::filesystem::path default_output_path(const Config& cfg) {
    std::filesystem::path dir;
    if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') dir = env;
    return dir / ("oscdict_p" + std::to_string(cfg.p) + "_" + std::string(to_string(cfg.kind)) +
                  std::string(file_extension(cfg.format)));
}

int cmd_generate(const Config& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    }

    Dictionary dict;
    try {
        dict = gen_dictionary(cfg.p, cfg.kind, override_D(cfg));
    } catch (const std::exception& ex) {
        err << "internal error during generation: " << ex.what() << '\n';
        return kInternal;
    }

    const auto path = cfg.output.value_or(default_output_path(cfg));
    try {
        write_file(path, serialize(dict, cfg.format));
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    }
    out << "wrote " << dict.entries.size() << " vectors (p=" << cfg.p << ", kind=" << to_string(cfg.kind)
        << ", format=" << to_string(cfg.format) << ") to " << path.string() << '\n';
    return kPass;
}

int cmd_verify(const std::filesystem::path& dict_path, const VerifyConfig& vcfg,
               const std::optional<std::filesystem::path>& report_path, std::ostream& out, std::ostream& err) {
    try {
        validate_check_names(vcfg.checks);
        if (!(vcfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    }

    Dictionary dict;
    try {
        dict = read_dictionary(dict_path);
        require_odd_prime(dict.meta.p);
    } catch (const std::exception& ex) {
        err << "error: cannot read dictionary: " << ex.what() << '\n';
        return kUsage;
    }

    Report report;
    try {
        report = verify(dict, vcfg);
    } catch (const std::invalid_argument& ex) {
        err << "error: malformed dictionary: " << ex.what() << '\n';
        return kUsage;
    } catch (const std::exception& ex) {
        err << "internal error during verification: " << ex.what() << '\n';
        return kInternal;
    }

    std::filesystem::path rpath;
    if (report_path) {
        rpath = *report_path;
    } else {
        rpath = dict_path;
        rpath.replace_extension(".report.json");
    }
    try {
        write_file(rpath, report.to_json().dump(1) + "\n");
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    }

    for (const auto& c : report.checks) {
        out << c.status() << "  " << c.name << "  worst=" << c.worst_value << "  checked=" << c.count_checked;
        if (!c.passed) out << "  at " << c.worst_location.dump();
        if (!c.passed && c.details.contains("violations")) out << "  violations=" << c.details["violations"].dump();
        out << '\n';
    }
    out << "report written to " << rpath.string() << '\n';
    return report.all_passed() ? kPass : kCheckFailed;
}

int cmd_inspect(std::uint64_t p, std::optional<std::int64_t> D_override, std::ostream& out, std::ostream& err) {
    Config cfg;
    cfg.p = p;
    cfg.D = D_override;
    try {
        validate(cfg);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    }
    try {
        const FpElem D = D_override ? FpElem(*D_override, p) : find_nonsquare(p);
        const auto [s, t] = find_primitive_fp2(p, D);
        const SL2 gD = build_gD(p, D, s, t);
        const auto split_reps = coset_reps_split(p);
        const auto ns_reps = coset_reps_nonsplit(p, D);
        std::uint64_t normalizer = 0;
        for (const auto& g : enumerate_sl2(p)) normalizer += in_normalizer_ND(g, D) ? 1 : 0;

        out << "p = " << p << " (p = " << p % 4 << " mod 4)\n";
        out << "alpha (generator of F_p^*) = " << primitive_root(p) << '\n';
        out << "D (non-square) = " << D << '\n';
        out << "(s, t) primitive in F_{p^2} = (" << s << ", " << t << ")\n";
        out << "g_D = " << gD << "  (order " << p + 1 << ")\n";
        out << "|T_D| = " << enumerate_TD(p, D).size() << '\n';
        out << "|N_D| = " << normalizer << " (expected 2(p+1) = " << 2 * (p + 1) << ")\n";
        out << "split tori: " << torus_count(p, TorusKind::split) << " (coset reps: " << split_reps.reps.size()
            << ")\n";
        out << "non-split tori: " << torus_count(p, TorusKind::nonsplit) << " (coset reps: " << ns_reps.reps.size()
            << ")\n";
        if (p % 4 == 1) out << "S = " << join(ns_reps.aux) << '\n';
        out << "dictionary sizes: split " << dictionary_size(p, TorusKind::split) << ", non-split "
            << dictionary_size(p, TorusKind::nonsplit) << '\n';
    } catch (const std::exception& ex) {
        err << "internal error: " << ex.what() << '\n';
        return kInternal;
    }
    return kPass;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite oscillator dictionary generator and verifier", "oscdict"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Config gen;
    std::string gen_kind = "both";
    std::string gen_format = "json";
    std::string gen_output;
    std::int64_t gen_D = 0;
    auto* generate = app.add_subcommand("generate", "Generate a dictionary file");
    generate->add_option("--p", gen.p, "Odd prime > 3")->required();
    generate->add_option("--kind", gen_kind, "split | nonsplit | both");
    auto* gen_D_opt = generate->add_option("--D", gen_D, "Non-square override for the non-split torus");
    generate->add_option("-o,--output", gen_output, "Output path (default under $OSCDICT_OUTPUT_DIR)");
    generate->add_option("--format", gen_format, "json | csv | raw-f64");

    std::string verify_path;
    std::string verify_checks;
    std::string verify_report;
    VerifyConfig vcfg;
    auto* verify_cmd = app.add_subcommand("verify", "Verify a dictionary file");
    verify_cmd->add_option("dictionary", verify_path, "Dictionary file (json or csv)")->required();
    verify_cmd->add_option("--checks", verify_checks,
                           "Comma-separated subset of structure,autocorrelation,crosscorrelation,supremum,fourier");
    verify_cmd->add_option("--report", verify_report, "Report path (default: dictionary path with extension .report.json)");
    verify_cmd->add_option("--tol", vcfg.tol, "Absolute tolerance on bounds");
    verify_cmd->add_option("--sample-limit", vcfg.sample_limit, "Cross-correlation pair budget");
    verify_cmd->add_option("--seed", vcfg.seed, "Seed for sampled cross-correlation");
    verify_cmd->add_flag("--timing", vcfg.timing, "Record runtime in the report");

    std::uint64_t inspect_p = 0;
    std::int64_t inspect_D = 0;
    auto* inspect = app.add_subcommand("inspect", "Print torus and coset data for p");
    inspect->add_option("--p", inspect_p, "Odd prime > 3")->required();
    auto* inspect_D_opt = inspect->add_option("--D", inspect_D, "Non-square override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    if (generate->parsed()) {
        try {
            gen.kind = parse_dict_kind(gen_kind);
            gen.format = parse_format(gen_format);
        } catch (const std::exception& ex) {
            err << "error: " << ex.what() << '\n';
            return kUsage;
        }
        if (gen_D_opt->count() > 0) gen.D = gen_D;
        if (!gen_output.empty()) gen.output = gen_output;
        return cmd_generate(gen, out, err);
    }
    if (verify_cmd->parsed()) {
        if (!verify_checks.empty()) vcfg.checks = split_csv_list(verify_checks);
        std::optional<std::filesystem::path> rpath;
        if (!verify_report.empty()) rpath = verify_report;
        return cmd_verify(verify_path, vcfg, rpath, out, err);
    }
    if (inspect->parsed()) {
        std::optional<std::int64_t> D;
        if (inspect_D_opt->count() > 0) D = inspect_D;
        return cmd_inspect(inspect_p, D, out, err);
    }
    return kUsage;
}

}  // namespace oscdict::cli
