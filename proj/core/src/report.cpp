#include "ncg/report.hpp"

#include <sstream>

#include "json.hpp"

namespace ncg {

namespace {

using nlohmann::json;

const char* yesno(bool b) { return b ? "yes" : "no"; }

json algebra_json(const AlgebraElement& f) {
    json vals = json::array();
    for (int k = 1; k <= f.size(); ++k) vals.push_back(f(k).str());
    return vals;
}

json acs_json(const AcsMatrix& J) {
    json out;
    for (int j = 1; j <= J.rank(); ++j)
        for (int i = 1; i <= J.rank(); ++i)
            out["J" + std::to_string(j) + std::to_string(i)] = algebra_json(J.entry(j, i));
    return out;
}

void acs_text(std::ostringstream& os, const AcsMatrix& J, const std::string& indent) {
    for (int j = 1; j <= J.rank(); ++j)
        for (int i = 1; i <= J.rank(); ++i)
            os << indent << "J" << j << i << " = " << J.entry(j, i).str() << "\n";
}

json triple_json(const DifferentialCalculus& calc) {
    const GraphTripleSpec& spec = *calc.triple().spec();
    json out;
    out["points"] = spec.base()->labels();
    json edges = json::array();
    for (const Edge& e : spec.edges())
        edges.push_back({{"i", e.i}, {"j", e.j}, {"weight", e.weight.str()}});
    out["edges"] = std::move(edges);
    return out;
}

// First entry of J^2 + 1 that fails, as an algebraic witness string.
std::string square_witness(const AcsMatrix& J) {
    const int r = J.rank();
    for (int k = 1; k <= r; ++k)
        for (int i = 1; i <= r; ++i) {
            AlgebraElement sq = AlgebraElement::zero(J.base());
            for (int j = 1; j <= r; ++j) sq = sq + J.entry(k, j) * J.entry(j, i);
            AlgebraElement target = k == i ? -AlgebraElement::one(J.base())
                                           : AlgebraElement::zero(J.base());
            if (!(sq == target))
                return "(J^2)_" + std::to_string(k) + std::to_string(i) + " = " +
                       sq.str() + ", expected " + target.str();
        }
    return "";
}

}  // namespace

// --- Paper fixture --------------------------------------------------------

PaperFixture::PaperFixture(const PointSetPtr& base)
    : printed_pair4(2, base), corrected_pair4(2, base) {
    if (base->size() != 3)
        throw std::invalid_argument("paper fixture is specific to the three-point space");
    const Scalar I = Scalar::i();
    auto chi = [&](int k) { return AlgebraElement::chi(base, k); };
    auto one = AlgebraElement::one(base);
    auto zero = AlgebraElement::zero(base);

    auto mk = [&](const AlgebraElement& j11, const AlgebraElement& j12,
                  const AlgebraElement& j21, const AlgebraElement& j22) {
        AcsMatrix J(2, base);
        J.entry(1, 1) = I * j11;
        J.entry(1, 2) = I * j12;
        J.entry(2, 1) = I * j21;
        J.entry(2, 2) = I * j22;
        return J;
    };

    // Theorem statement, pairs 1-3 verbatim.
    AcsMatrix p1 = mk(one - Scalar(2) * chi(3), zero, Scalar(2) * chi(1),
                      Scalar(2) * chi(2) - one);
    AcsMatrix p2 = mk(one - Scalar(2) * chi(3), -Scalar(2) * chi(2), Scalar(2) * chi(1),
                      Scalar(2) * chi(3) - one);
    AcsMatrix p3 = mk(Scalar(2) * chi(1) - one, Scalar(2) * chi(2), zero,
                      one - Scalar(2) * chi(3));
    // The printed fourth pair is not an almost complex structure; the
    // corrected matrix (with the -1 restored in the first entry) is.
    printed_pair4 = mk(Scalar(2) * chi(1), zero, zero, one - Scalar(2) * chi(2));
    corrected_pair4 = mk(Scalar(2) * chi(1) - one, zero, zero, one - Scalar(2) * chi(2));

    for (const AcsMatrix& p : {p1, p2, p3, corrected_pair4}) {
        expected.push_back(p);
        expected.push_back(p.negated());
    }
}

// --- Calculus report --------------------------------------------------------

std::string render_calculus_report(const DifferentialCalculus& calc,
                                   const TripleReport& tr, const ReportFormat& fmt) {
    const int maxdeg = calc.max_degree();
    json out;
    out["command"] = "calculus";
    out["triple"] = triple_json(calc);
    out["spectral_triple"] = {{"self_adjoint", tr.self_adjoint},
                              {"faithful", tr.faithful},
                              {"star_homomorphism", tr.star_homomorphism},
                              {"finite_dimensional", tr.finite_dimensional}};
    json degrees = json::array();
    for (int p = 0; p <= maxdeg; ++p)
        degrees.push_back({{"degree", p}, {"dim", calc.dim(p)}, {"junk", calc.junk_dim(p)}});
    out["degrees"] = std::move(degrees);

    bool have_table = false;
    if (maxdeg >= 1) {
        auto check = calc.free_basis_check();
        if (std::holds_alternative<NotFree>(check)) {
            const NotFree& nf = std::get<NotFree>(check);
            json witness = json::array();
            for (const auto& w : nf.witness) witness.push_back(algebra_json(w));
            out["free_basis"] = {{"free", false}, {"rank", nf.rank}, {"witness", witness}};
        } else {
            const auto& fb = std::get<DifferentialCalculus::FreeBasis>(check);
            out["free_basis"] = {{"free", true},
                                 {"rank", static_cast<int>(fb.basis.size())}};
            const BimoduleTable& table = calc.bimodule_table();
            json rows = json::array();
            for (int k = 1; k <= calc.base()->size(); ++k)
                for (int j = 1; j <= table.rank(); ++j) {
                    json coeffs = json::array();
                    for (int m = 1; m <= table.rank(); ++m)
                        coeffs.push_back(algebra_json(table.entry(m, k, j)));
                    rows.push_back({{"k", k}, {"j", j}, {"coeffs", coeffs}});
                }
            out["bimodule_table"] = std::move(rows);
            have_table = true;
        }
    }

    if (fmt.json) return out.dump(2) + "\n";

    std::ostringstream os;
    const GraphTripleSpec& spec = *calc.triple().spec();
    os << "triple: " << spec.base()->size() << " points, " << spec.edge_count()
       << " edges\n";
    os << "spectral triple: self-adjoint=" << yesno(tr.self_adjoint)
       << " faithful=" << yesno(tr.faithful)
       << " star-homomorphism=" << yesno(tr.star_homomorphism) << "\n";
    for (int p = 0; p <= maxdeg; ++p)
        os << "degree " << p << ": dim " << calc.dim(p) << ", junk " << calc.junk_dim(p)
           << "\n";
    if (maxdeg >= 1) {
        if (!have_table) {
            os << "Omega^1 right module: NOT FREE (rank "
               << out["free_basis"]["rank"].get<int>() << ")\n";
        } else {
            const BimoduleTable& table = calc.bimodule_table();
            os << "Omega^1 free right module: rank " << table.rank() << "\n";
            os << "bimodule table (chi_k * e_j = sum_m e_m * c_mkj):\n";
            for (int k = 1; k <= calc.base()->size(); ++k)
                for (int j = 1; j <= table.rank(); ++j) {
                    os << "  chi_" << k << " * e_" << j << " =";
                    for (int m = 1; m <= table.rank(); ++m)
                        os << (m > 1 ? " + e_" : " e_") << m << "*"
                           << table.entry(m, k, j).str();
                    os << "\n";
                }
        }
    }
    return os.str();
}

// --- Classification ----------------------------------------------------------

ClassificationData classify_with_integrability(const DifferentialCalculus& calc) {
    auto res = solve_acs(calc);
    if (std::holds_alternative<InfiniteSolutionFamily>(res))
        throw MathInconsistency("classification found an infinite family: " +
                                std::get<InfiniteSolutionFamily>(res).description);
    ClassificationData data;
    data.solutions = std::get<std::vector<AcsMatrix>>(res);
    for (const AcsMatrix& J : data.solutions) {
        data.pqs.push_back(extend_and_pq(calc, J, 3));
        data.integrability.push_back(integrability_check(calc, data.pqs.back()));
    }
    return data;
}

namespace {

json comparison_json(const DifferentialCalculus& calc, const ClassificationData& data) {
    PaperFixture fixture(calc.base());
    json out;
    int matched = 0;
    json per = json::array();
    for (size_t k = 0; k < fixture.expected.size(); ++k) {
        bool found = false;
        for (const AcsMatrix& J : data.solutions)
            if (J == fixture.expected[k]) found = true;
        matched += found;
        per.push_back(found);
    }
    out["expected_matched"] = matched;
    out["expected_total"] = static_cast<int>(fixture.expected.size());
    out["matches"] = std::move(per);

    auto bad = verify_acs(calc, fixture.printed_pair4);
    out["printed_pair4_rejected"] = bad.has_value();
    if (bad) {
        out["printed_pair4_violation"] = bad->condition;
        out["printed_pair4_witness"] = square_witness(fixture.printed_pair4);
    }
    bool corr = false;
    for (const AcsMatrix& J : data.solutions)
        if (J == fixture.corrected_pair4 || J == fixture.corrected_pair4.negated())
            corr = true;
    out["corrected_pair4_present"] = corr;
    return out;
}

}  // namespace

std::string render_classification_report(const DifferentialCalculus& calc,
                                         const ClassificationData& data,
                                         const ReportFormat& fmt) {
    json out;
    out["command"] = "classify";
    out["triple"] = triple_json(calc);
    out["count"] = static_cast<int>(data.solutions.size());
    json sols = json::array();
    for (size_t s = 0; s < data.solutions.size(); ++s) {
        json j = acs_json(data.solutions[s]);
        j["integrable"] = data.integrability[s].integrable;
        sols.push_back(std::move(j));
    }
    out["solutions"] = std::move(sols);
    if (fmt.compare_paper) out["paper_comparison"] = comparison_json(calc, data);

    if (fmt.json) return out.dump(2) + "\n";

    std::ostringstream os;
    os << "almost complex structures: " << data.solutions.size() << "\n";
    for (size_t s = 0; s < data.solutions.size(); ++s) {
        os << "J #" << s + 1 << "\n";
        acs_text(os, data.solutions[s], "  ");
        os << "  integrable: " << yesno(data.integrability[s].integrable) << "\n";
    }
    if (fmt.compare_paper) {
        const json& cmp = out["paper_comparison"];
        os << "paper comparison:\n";
        os << "  expected matrices matched: " << cmp["expected_matched"].get<int>() << "/"
           << cmp["expected_total"].get<int>() << "\n";
        os << "  printed fourth pair rejected: "
           << yesno(cmp["printed_pair4_rejected"].get<bool>());
        if (cmp.contains("printed_pair4_witness"))
            os << " (" << cmp["printed_pair4_witness"].get<std::string>() << ")";
        os << "\n";
        os << "  corrected fourth pair present: "
           << yesno(cmp["corrected_pair4_present"].get<bool>()) << "\n";
    }
    return os.str();
}

std::string render_integrability_report(const DifferentialCalculus& calc,
                                        const ClassificationData& data,
                                        const ReportFormat& fmt) {
    json out;
    out["command"] = "integrability";
    out["triple"] = triple_json(calc);
    json sols = json::array();
    for (size_t s = 0; s < data.solutions.size(); ++s) {
        json j = acs_json(data.solutions[s]);
        j["integrable"] = data.integrability[s].integrable;
        json dims = json::array();
        for (int deg = 0; deg <= 3; ++deg)
            for (const PqComponent& comp : data.pqs[s].by_degree[deg])
                dims.push_back({{"p", comp.p},
                                {"q", comp.q},
                                {"dim", static_cast<int>(comp.basis.size())}});
        j["pq_dimensions"] = std::move(dims);
        if (!data.integrability[s].integrable) {
            json w = json::array();
            for (const Scalar& c : *data.integrability[s].witness_leak)
                w.push_back(c.str());
            j["witness_leak"] = std::move(w);
        }
        sols.push_back(std::move(j));
    }
    out["solutions"] = std::move(sols);

    if (fmt.json) return out.dump(2) + "\n";

    std::ostringstream os;
    os << "integrability of " << data.solutions.size() << " almost complex structures\n";
    for (size_t s = 0; s < data.solutions.size(); ++s) {
        os << "J #" << s + 1 << ": "
           << (data.integrability[s].integrable ? "integrable" : "NOT integrable") << "\n";
        for (int deg = 0; deg <= 3; ++deg) {
            os << "  degree " << deg << ":";
            for (const PqComponent& comp : data.pqs[s].by_degree[deg])
                os << " dim(" << comp.p << "," << comp.q << ")=" << comp.basis.size();
            os << "\n";
        }
    }
    return os.str();
}

// --- Kähler ------------------------------------------------------------------

KahlerRun run_kahler(const DifferentialCalculus& calc, const ClassificationData& data) {
    KahlerRun run;
    for (size_t s = 0; s < data.solutions.size(); ++s) {
        run.families.push_back(solve_compatible_metrics(calc, data.solutions[s]));
        run.outcomes.push_back(
            kahler_search_certificate(calc, data.solutions[s], data.pqs[s]));
        if (std::holds_alternative<NoKahlerCertificate>(run.outcomes.back()))
            run.certificate_json.push_back(certificate_to_json(
                std::get<NoKahlerCertificate>(run.outcomes.back()), *calc.triple().spec()));
        else
            run.certificate_json.emplace_back();
    }
    return run;
}

std::string render_kahler_report(const DifferentialCalculus& calc,
                                 const ClassificationData& data, const KahlerRun& run,
                                 const std::vector<std::string>& certificate_files,
                                 const ReportFormat& fmt) {
    json out;
    out["command"] = "kahler";
    out["triple"] = triple_json(calc);
    json sols = json::array();
    for (size_t s = 0; s < data.solutions.size(); ++s) {
        json j = acs_json(data.solutions[s]);
        j["metric_family_dim"] = static_cast<int>(run.families[s].basis.size());
        j["det_conditions"] = run.families[s].det_conditions;
        if (std::holds_alternative<NoKahlerCertificate>(run.outcomes[s])) {
            const auto& cert = std::get<NoKahlerCertificate>(run.outcomes[s]);
            j["outcome"] = "no-kahler";
            j["witness_point"] = cert.witness_point;
            j["combined_solution_dim"] = static_cast<int>(cert.solution_basis.size());
            if (s < certificate_files.size() && !certificate_files[s].empty())
                j["certificate_file"] = certificate_files[s];
        } else {
            // Should never happen on the three-point space; flagged loudly.
            j["outcome"] = "KAHLER-METRIC-FOUND";
            json m;
            const auto& g = std::get<MetricMatrix>(run.outcomes[s]);
            for (int a = 1; a <= g.rank(); ++a)
                for (int b = 1; b <= g.rank(); ++b)
                    m["g" + std::to_string(a) + std::to_string(b)] =
                        algebra_json(g.entry(a, b));
            j["metric"] = std::move(m);
        }
        sols.push_back(std::move(j));
    }
    out["solutions"] = std::move(sols);

    if (fmt.json) return out.dump(2) + "\n";

    std::ostringstream os;
    os << "kahler search over " << data.solutions.size() << " complex structures\n";
    for (size_t s = 0; s < data.solutions.size(); ++s) {
        os << "J #" << s + 1 << ": compatible metric family dim "
           << run.families[s].basis.size() << "\n";
        if (std::holds_alternative<NoKahlerCertificate>(run.outcomes[s])) {
            const auto& cert = std::get<NoKahlerCertificate>(run.outcomes[s]);
            os << "  no compatible Kahler metric: det of the inverse components"
               << " vanishes identically at point " << cert.witness_point
               << " on the combined solution space (dim " << cert.solution_basis.size()
               << ")\n";
            if (s < certificate_files.size() && !certificate_files[s].empty())
                os << "  certificate: " << certificate_files[s] << "\n";
        } else {
            os << "  *** KAHLER METRIC FOUND (contradicts the expected nonexistence;"
               << " inspect the metric in the JSON report) ***\n";
        }
    }
    return os.str();
}

}  // namespace ncg
