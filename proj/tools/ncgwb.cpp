// ncgwb: exact-arithmetic workbench for finite spectral triples on
// weighted graphs. Subcommands: calculus, classify, integrability,
// kahler, verify-certificate.
//
// Exit codes: 0 success, 1 input error, 2 mathematical inconsistency,
// 3 certificate verification failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ncg/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMath = 2;
constexpr int kExitCertificate = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string builtin;
    std::string triple_file;
    int max_degree = 3;
    std::string output = "text";
    bool compare_paper = false;
    std::string cert_dir = ".";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ncg::GraphTripleSpec load_spec(const RunConfig& cfg) {
    if (!cfg.builtin.empty() && !cfg.triple_file.empty())
        throw InputError("--builtin and --triple are mutually exclusive");
    if (cfg.builtin.empty() && cfg.triple_file.empty())
        throw InputError("one of --builtin or --triple is required");
    if (!cfg.builtin.empty()) return ncg::GraphTripleSpec::builtin(cfg.builtin);
    return ncg::GraphTripleSpec::from_json_text(read_file(cfg.triple_file));
}

ncg::DifferentialCalculus make_calculus(const RunConfig& cfg, int min_degree) {
    auto triple = std::make_shared<ncg::SpectralTriple>(load_spec(cfg));
    return ncg::DifferentialCalculus(triple, std::max(min_degree, cfg.max_degree));
}

ncg::ReportFormat format_of(const RunConfig& cfg) {
    return ncg::ReportFormat{cfg.output == "json", cfg.compare_paper};
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_degree = true) {
    cmd->add_option("--builtin", cfg.builtin, "Name of a builtin triple (three-point)");
    cmd->add_option("--triple", cfg.triple_file, "Path to a triple spec file");
    if (with_degree)
        cmd->add_option("--max-degree", cfg.max_degree, "Maximum form degree")
            ->default_val(3)
            ->check(CLI::NonNegativeNumber);
    cmd->add_option("--output", cfg.output, "Report format")
        ->default_val("text")
        ->check(CLI::IsMember({"text", "json"}));
}

int cmd_calculus(const RunConfig& cfg) {
    ncg::DifferentialCalculus calc = make_calculus(cfg, 0);
    ncg::TripleReport tr = ncg::verify_spectral_triple(calc.triple());
    std::cout << ncg::render_calculus_report(calc, tr, format_of(cfg));
    return kExitOk;
}

int cmd_classify(const RunConfig& cfg) {
    ncg::DifferentialCalculus calc = make_calculus(cfg, 3);
    ncg::ClassificationData data = ncg::classify_with_integrability(calc);
    std::cout << ncg::render_classification_report(calc, data, format_of(cfg));
    return kExitOk;
}

int cmd_integrability(const RunConfig& cfg) {
    ncg::DifferentialCalculus calc = make_calculus(cfg, 3);
    ncg::ClassificationData data = ncg::classify_with_integrability(calc);
    std::cout << ncg::render_integrability_report(calc, data, format_of(cfg));
    return kExitOk;
}

int cmd_kahler(const RunConfig& cfg) {
    ncg::DifferentialCalculus calc = make_calculus(cfg, 3);
    ncg::ClassificationData data = ncg::classify_with_integrability(calc);
    ncg::KahlerRun run = ncg::run_kahler(calc, data);

    std::vector<std::string> files(run.certificate_json.size());
    bool verify_failed = false;
    for (size_t s = 0; s < run.certificate_json.size(); ++s) {
        if (run.certificate_json[s].empty()) continue;
        files[s] = cfg.cert_dir + "/no-kahler-cert-" + std::to_string(s + 1) + ".json";
        std::ofstream out(files[s]);
        if (!out) throw InputError("cannot write certificate file: " + files[s]);
        out << run.certificate_json[s];
        out.close();
        // Immediate independent re-check of the emitted file.
        ncg::CertificateVerification v =
            ncg::verify_certificate_json(read_file(files[s]));
        if (!v.ok) {
            verify_failed = true;
            std::cerr << "certificate " << files[s] << " failed re-verification:\n";
            for (const std::string& f : v.failures) std::cerr << "  " << f << "\n";
        }
    }
    std::cout << ncg::render_kahler_report(calc, data, run, files, format_of(cfg));
    return verify_failed ? kExitCertificate : kExitOk;
}

int cmd_verify_certificate(const std::string& path) {
    ncg::CertificateVerification v = ncg::verify_certificate_json(read_file(path));
    if (v.ok) {
        std::cout << path << ": certificate verified\n";
        return kExitOk;
    }
    std::cout << path << ": certificate verification FAILED\n";
    for (const std::string& f : v.failures) std::cout << "  " << f << "\n";
    return kExitCertificate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact workbench for spectral triples on finite weighted graphs"};
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* calculus = app.add_subcommand("calculus", "Differential calculus summary");
    add_common(calculus, cfg);
    CLI::App* classify =
        app.add_subcommand("classify", "Classify almost complex structures");
    add_common(classify, cfg);
    classify->add_flag("--compare-paper", cfg.compare_paper,
                       "Compare against the published three-point classification");
    CLI::App* integrability =
        app.add_subcommand("integrability", "Integrability and (p,q) decomposition");
    add_common(integrability, cfg);
    CLI::App* kahler =
        app.add_subcommand("kahler", "Search for compatible Kahler metrics");
    add_common(kahler, cfg);
    kahler->add_option("--cert-dir", cfg.cert_dir,
                       "Directory for emitted certificate files")
        ->default_val(".");

    std::string cert_path;
    CLI::App* verify =
        app.add_subcommand("verify-certificate", "Re-check an emitted certificate file");
    verify->add_option("file", cert_path, "Certificate JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (calculus->parsed()) return cmd_calculus(cfg);
        if (classify->parsed()) return cmd_classify(cfg);
        if (integrability->parsed()) return cmd_integrability(cfg);
        if (kahler->parsed()) return cmd_kahler(cfg);
        if (verify->parsed()) return cmd_verify_certificate(cert_path);
    } catch (const ncg::MathInconsistency& e) {
        std::cerr << "mathematical inconsistency: " << e.what() << "\n";
        return kExitMath;
    } catch (const ncg::NotFreeError& e) {
        std::cerr << "mathematical inconsistency: " << e.what() << "\n";
        return kExitMath;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
