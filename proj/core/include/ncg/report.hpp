#pragma once

// Deterministic report rendering (text and JSON) shared by the CLI:
// calculus summaries, classification with integrability, Kähler runs
// with certificates, and the paper-comparison fixture for the builtin
// three-point triple.

#include <string>
#include <vector>

#include "ncg/kahler.hpp"

namespace ncg {

struct ReportFormat {
    bool json = false;
    bool compare_paper = false;
};

std::string render_calculus_report(const DifferentialCalculus& calc,
                                   const TripleReport& tr, const ReportFormat& fmt);

// The classification pipeline shared by classify / integrability / kahler.
struct ClassificationData {
    std::vector<AcsMatrix> solutions;
    std::vector<PqSpace> pqs;                       // one per solution
    std::vector<IntegrabilityResult> integrability;  // one per solution
};

ClassificationData classify_with_integrability(const DifferentialCalculus& calc);

std::string render_classification_report(const DifferentialCalculus& calc,
                                         const ClassificationData& data,
                                         const ReportFormat& fmt);

std::string render_integrability_report(const DifferentialCalculus& calc,
                                        const ClassificationData& data,
                                        const ReportFormat& fmt);

struct KahlerRun {
    // Parallel to data.solutions.
    std::vector<MetricFamily> families;
    std::vector<std::variant<NoKahlerCertificate, MetricMatrix>> outcomes;
    std::vector<std::string> certificate_json;  // empty string when a metric was found
};

KahlerRun run_kahler(const DifferentialCalculus& calc, const ClassificationData& data);

std::string render_kahler_report(const DifferentialCalculus& calc,
                                 const ClassificationData& data, const KahlerRun& run,
                                 const std::vector<std::string>& certificate_files,
                                 const ReportFormat& fmt);

// The eight expected three-point structures: the paper's pairs 1-3
// verbatim plus the corrected fourth pair, canonically comparable to
// solve_acs output; and the pair-4 matrix as printed, which fails
// verification.
struct PaperFixture {
    std::vector<AcsMatrix> expected;  // 8 matrices
    AcsMatrix printed_pair4;
    AcsMatrix corrected_pair4;

    explicit PaperFixture(const PointSetPtr& base);
};

}  // namespace ncg
