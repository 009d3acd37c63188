#pragma once

// Almost complex structures on Omega^1: constraint generation
// (left-linearity, J^2 = -1, star-preservation), exact enumeration of
// the solutions, derivation extension to higher degrees, and the
// (p,q) eigenspace decomposition with integrability checking.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ncg/calculus.hpp"

namespace ncg {

// Raised when a computation contradicts a structural theorem (e.g. the
// extended J fails to be diagonalizable); the CLI maps this to exit 2.
struct MathInconsistency : std::runtime_error {
    explicit MathInconsistency(const std::string& what) : std::runtime_error(what) {}
};

// J(e_i) = sum_j e_j * entry(j, i), extended right-linearly.
class AcsMatrix {
public:
    AcsMatrix(int rank, PointSetPtr base);

    int rank() const { return rank_; }
    const PointSetPtr& base() const { return base_; }
    const AlgebraElement& entry(int j, int i) const { return entries_[(j - 1) * rank_ + (i - 1)]; }
    AlgebraElement& entry(int j, int i) { return entries_[(j - 1) * rank_ + (i - 1)]; }

    AcsMatrix negated() const;

    // Right-basis action: J(sum_m e_m a_m) has component sum_m entry(l,m) a_m.
    std::vector<AlgebraElement> apply(const std::vector<AlgebraElement>& a) const;

    // Deterministic serialization, also the canonical sort key.
    std::string key() const;

    friend bool operator==(const AcsMatrix& a, const AcsMatrix& b) {
        return a.rank_ == b.rank_ && a.entries_ == b.entries_;
    }

private:
    int rank_;
    PointSetPtr base_;
    std::vector<AlgebraElement> entries_;
};

// --- Constraint system -------------------------------------------------

// The unknowns are the components J_{ji}(k), flattened complex index
// (j, i, k) -> ((j-1)*r + (i-1))*n + (k-1), and split into real pairs
// (Re, Im) at columns 2*idx, 2*idx+1 of the real matrices.
struct AcsSystem {
    int rank = 0;
    int points = 0;
    int complex_unknowns = 0;  // r * r * n
    Matrix left_linearity;     // (L): real-split rows
    Matrix star_condition;     // (S): real-split rows

    Matrix combined() const;  // (L) stacked over (S)
};

AcsSystem acs_constraints(const DifferentialCalculus& calc);

struct InfiniteSolutionFamily {
    std::string description;
};

// Exact enumeration of all first-order almost complex structures:
// eliminate (L)+(S), case-split the residual quadratics from J^2 = -1,
// re-verify every candidate, and return them canonically sorted.
std::variant<std::vector<AcsMatrix>, InfiniteSolutionFamily>
solve_acs(const DifferentialCalculus& calc);

// --- Verification (independent oracle path) ----------------------------

struct AcsViolation {
    std::string condition;  // which axiom failed
    std::string lhs;
    std::string rhs;
};

// Checks J^2 = -1 on every coordinate direction of Omega^1,
// left-linearity against multiplication operators, and the star
// condition, all at the operator/coordinate level.
std::optional<AcsViolation> verify_acs(const DifferentialCalculus& calc,
                                       const AcsMatrix& J);

// --- Derivation extension and (p,q) decomposition ----------------------

struct PqComponent {
    int p = 0;
    int q = 0;
    std::vector<Vec> basis;  // coordinate basis of Omega^{p,q}
    Matrix projection;       // pi^{p,q} on Omega^{p+q} coordinates
};

struct PqSpace {
    const DifferentialCalculus* calc = nullptr;
    std::vector<Matrix> j_matrices;                   // J on each degree
    std::vector<std::vector<PqComponent>> by_degree;  // components per degree

    const PqComponent& component(int p, int q) const;
    const Matrix& j_matrix(int degree) const { return j_matrices.at(degree); }
};

// Extends a verified J to all computed degrees by the derivation rule,
// checking well-definedness on the product-map kernel, and diagonalizes
// it into (p,q) eigenspaces. Throws MathInconsistency when the
// extension is ill-defined or an eigen decomposition is incomplete.
PqSpace extend_and_pq(const DifferentialCalculus& calc, const AcsMatrix& J,
                      int max_degree);

struct NotHomogeneous : std::invalid_argument {
    NotHomogeneous() : std::invalid_argument("form is not homogeneous of the stated bidegree") {}
};

// (del x, delbar x) = (pi^{p+1,q} dx, pi^{p,q+1} dx) for x in Omega^{p,q}.
std::pair<Form, Form> del_delbar(const Form& x, int p, int q, const PqSpace& pq);

struct IntegrabilityResult {
    bool integrable = false;
    // First basis direction of Omega^{1,0} whose differential leaks into
    // Omega^{0,2}, when not integrable.
    std::optional<Vec> witness_direction;
    std::optional<Vec> witness_leak;
};

IntegrabilityResult integrability_check(const DifferentialCalculus& calc,
                                        const PqSpace& pq);

}  // namespace ncg
