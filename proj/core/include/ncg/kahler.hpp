#pragma once

// Metrics compatible with a complex structure, the inverse tensor and
// fundamental form, the Kähler condition, and machine-checkable
// nonexistence certificates.

#include <string>
#include <variant>
#include <vector>

#include "ncg/acs.hpp"

namespace ncg {

// g(e_i (x) e_j) = entry(i, j); also used for the inverse components
// g^{ji} and for hermitian metrics h(e_i (x) conj(e_j)).
class MetricMatrix {
public:
    MetricMatrix(int rank, PointSetPtr base);

    int rank() const { return rank_; }
    const PointSetPtr& base() const { return base_; }
    const AlgebraElement& entry(int i, int j) const { return entries_[(i - 1) * rank_ + (j - 1)]; }
    AlgebraElement& entry(int i, int j) { return entries_[(i - 1) * rank_ + (j - 1)]; }

    bool is_zero() const;
    std::string key() const;

    friend bool operator==(const MetricMatrix& a, const MetricMatrix& b) {
        return a.rank_ == b.rank_ && a.entries_ == b.entries_;
    }

private:
    int rank_;
    PointSetPtr base_;
    std::vector<AlgebraElement> entries_;
};

// Solution space of a homogeneous linear system on metric components;
// family members are sum_a t_a * basis[a] for free parameters t.
struct MetricFamily {
    Matrix system;                    // rows over the flattened components
    std::vector<MetricMatrix> basis;  // kernel basis, deterministic order
    // Nondegeneracy side condition: det at each point, as a polynomial in
    // the parameters t_a (reported, not imposed — it is not linear).
    std::vector<std::string> det_conditions;

    bool empty() const { return basis.empty(); }
};

// Bimodule-morphism constraints on g_{ij}: g(chi_k e_i (x) e_j) expanded
// through the conversion table must equal chi_k g_{ij}.
Matrix metric_constraints(const DifferentialCalculus& calc);

// g(J e_i (x) J e_j) = g(e_i (x) e_j), J coefficients moved through the
// middle leg by the bimodule rule.
Matrix compatibility_constraints(const DifferentialCalculus& calc, const AcsMatrix& J);

MetricFamily solve_compatible_metrics(const DifferentialCalculus& calc,
                                      const AcsMatrix& J);

// Pointwise determinant of [g_{ij}] over A.
AlgebraElement metric_det(const MetricMatrix& g);

// [g^{ji}] = matrix inverse over A (pointwise), or the vanishing points
// of det(g). The NotAUnit value is the core of the nonexistence result.
std::variant<MetricMatrix, NotAUnit> metric_inverse(const MetricMatrix& g);

// omega = wedge (J (x) id) (pi^{1,0} (x) pi^{0,1}) (inverse tensor).
// The from_inverse variant takes the already-inverted components g^{ji}
// (in which omega is linear); the plain variant inverts g first.
Form fundamental_form_from_inverse(const DifferentialCalculus& calc,
                                   const MetricMatrix& ginv, const PqSpace& pq);
std::variant<Form, NotAUnit> fundamental_form(const DifferentialCalculus& calc,
                                              const MetricMatrix& g,
                                              const PqSpace& pq);

// d omega in Omega^3 coordinates; zero iff the metric is Kähler.
Vec kahler_check(const Form& omega);

// A machine-checkable proof that no compatible Kähler metric exists:
// every inverse tensor of such a metric satisfies the combined linear
// system (bimodule centrality + J-invariance + d omega = 0), yet the
// determinant of the inverse components vanishes identically at
// witness_point on that whole solution space — contradicting unit
// determinant. Identical vanishing of the quadratic det is certified by
// its values on the basis plus the polarized cross terms.
struct NoKahlerCertificate {
    AcsMatrix J;
    Matrix combined_system;          // rows over the h^{ji}(k) components
    std::vector<Vec> solution_basis;  // full kernel of combined_system
    int witness_point = 0;            // 1-based, det_k == 0 on the kernel
    std::vector<std::string> det_conditions;  // det per point over the family
};

std::variant<NoKahlerCertificate, MetricMatrix>
kahler_search_certificate(const DifferentialCalculus& calc, const AcsMatrix& J,
                          const PqSpace& pq);

// Certificate file round trip (JSON) and independent re-verification:
// the verifier regenerates the combined system from the embedded triple
// and J, checks the basis is a complete kernel, and recomputes the
// det-vanishing witnesses, all without rerunning the solver.
std::string certificate_to_json(const NoKahlerCertificate& cert,
                                const GraphTripleSpec& spec);

struct CertificateVerification {
    bool ok = true;
    std::vector<std::string> failures;
};

CertificateVerification verify_certificate_json(const std::string& text);

// --- Hermitian metrics over Omega^1 (x) conj(Omega^1) ------------------

Matrix hermitian_constraints(const DifferentialCalculus& calc);
Matrix hermitian_compatibility(const DifferentialCalculus& calc, const AcsMatrix& J);
MetricFamily solve_hermitian_metrics(const DifferentialCalculus& calc,
                                     const AcsMatrix& J);

// g = h o (id (x) star): the metric induced by a hermitian metric.
MetricMatrix hermitian_induce(const DifferentialCalculus& calc, const MetricMatrix& h);

}  // namespace ncg
