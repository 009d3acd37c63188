#pragma once

// Connes forms Omega_D = Omega_u / junk, degree by degree, with exact
// canonical coordinates: deterministic echelon bases over the fixed
// lexicographic path order, the junk ideal from kernel bases one degree
// down, and the free right-basis / bimodule machinery on Omega^1.

#include <optional>
#include <variant>
#include <vector>

#include "ncg/linalg.hpp"
#include "ncg/triple.hpp"
#include "ncg/universal.hpp"

namespace ncg {

class DifferentialCalculus;

// An element of Omega_D^p in quotient coordinates, carrying a universal
// preimage so it can be differentiated. Forms keep a pointer to the
// calculus that produced them; the calculus must outlive its forms.
class Form {
public:
    int degree() const { return degree_; }
    const Vec& coords() const { return coords_; }
    const UniversalForm& preimage() const { return preimage_; }
    const DifferentialCalculus& calculus() const { return *calc_; }

    bool is_zero() const;
    BlockOperator represent() const;  // pi_u of the preimage

    friend bool operator==(const Form& a, const Form& b) {
        return a.degree_ == b.degree_ && a.coords_ == b.coords_;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    friend Form operator+(const Form& a, const Form& b);
    friend Form operator-(const Form& a, const Form& b);
    friend Form operator-(const Form& a);
    friend Form operator*(const Scalar& c, const Form& a);
    // Module actions of A and the wedge product.
    friend Form operator*(const AlgebraElement& a, const Form& x);
    friend Form operator*(const Form& x, const AlgebraElement& a);

private:
    friend class DifferentialCalculus;
    Form(const DifferentialCalculus* calc, int degree, Vec coords, UniversalForm preimage)
        : calc_(calc), degree_(degree), coords_(std::move(coords)),
          preimage_(std::move(preimage)) {}

    const DifferentialCalculus* calc_;
    int degree_;
    Vec coords_;
    UniversalForm preimage_;
};

struct FormSpace {
    int degree = 0;
    int image_dim = 0;  // dim pi_u(Omega_u^p)
    int junk_dim = 0;   // dim pi_u(J^p)
    int dim = 0;        // quotient dimension

    SpanBasis junk;                 // echelon span of the junk operators
    SpanBasis full;                 // junk generators first, then quotient reps
    std::vector<Path> basis_paths;  // path preimage of each quotient basis vector
    std::vector<UniversalForm> pi_kernel;  // basis of ker pi_u on degree-p paths

    FormSpace() : junk(0), full(0) {}
};

struct NotFree {
    // A nontrivial right relation sum_m e_m * witness[m] = 0, or short rank.
    std::vector<AlgebraElement> witness;
    int rank = 0;
};

struct NotFreeError : std::runtime_error {
    explicit NotFreeError(NotFree nf)
        : std::runtime_error("Omega^1 is not a free right module (rank " +
                             std::to_string(nf.rank) + ")"),
          details(std::move(nf)) {}
    NotFree details;
};

// chi_k * e_j = sum_m e_m * entry(m, k, j), plus the induced rule for a
// general left factor f.
class BimoduleTable {
public:
    BimoduleTable(int rank, PointSetPtr base);

    const AlgebraElement& entry(int m, int k, int j) const;
    AlgebraElement& entry(int m, int k, int j);
    int rank() const { return rank_; }
    const PointSetPtr& base() const { return base_; }

    // Right-basis coordinates of f * e_j: component m is
    // sum_k f(k) * entry(m, k, j).
    std::vector<AlgebraElement> left_convert(const AlgebraElement& f, int j) const;

private:
    int rank_;
    PointSetPtr base_;
    std::vector<AlgebraElement> entries_;  // dense (m, k, j)
};

class DifferentialCalculus {
public:
    explicit DifferentialCalculus(SpectralTriplePtr triple, int max_degree = 3);

    const SpectralTriple& triple() const { return *triple_; }
    const PointSetPtr& base() const { return triple_->base(); }
    int max_degree() const { return max_degree_; }

    const FormSpace& space(int p) const;
    int dim(int p) const { return space(p).dim; }
    int junk_dim(int p) const { return space(p).junk_dim; }

    // Constructors of forms.
    Form zero(int degree) const;
    Form from_algebra(const AlgebraElement& f) const;
    Form from_universal(const UniversalForm& u) const;
    Form from_coords(int degree, const Vec& coords) const;
    Form one() const { return from_algebra(AlgebraElement::one(base())); }
    Form e(int i) const;  // class of d(chi_i), the candidate basis of Omega^1

    // The differential, wedge, involution and the conjugate-module star.
    Form d(const Form& x) const;
    Form wedge(const Form& x, const Form& y) const;
    Form star(const Form& x) const;
    Conj<Form> star_map(const Form& x) const { return Conj<Form>{star(x)}; }

    // Quotient coordinates of an operator known to lie in pi_u(Omega_u^p).
    Vec coords_of(const BlockOperator& op, int degree) const;

    // --- Free right module structure of Omega^1 ---

    struct FreeBasis {
        std::vector<Form> basis;  // e_1 .. e_r
        int rank = 0;
        Matrix phi;      // right-coordinate map A^r -> Omega^1 (scalar coords)
        Matrix phi_inv;  // its inverse
    };

    std::variant<FreeBasis, NotFree> free_basis_check() const;

    // Require a free basis; throw NotFreeError otherwise.
    const FreeBasis& free_basis() const;
    const BimoduleTable& bimodule_table() const;

    // Conversions Omega^1 <-> right-basis coordinates over A.
    std::vector<AlgebraElement> right_coords(const Form& x) const;
    Form from_right_coords(const std::vector<AlgebraElement>& a) const;

private:
    void build_space(int p);
    std::vector<Path> paths_of_degree(int p) const;

    SpectralTriplePtr triple_;
    int max_degree_;
    int ambient_dim_;
    std::vector<FormSpace> spaces_;
    mutable std::optional<std::variant<FreeBasis, NotFree>> free_check_;
    mutable std::optional<BimoduleTable> table_;
};

}  // namespace ncg
