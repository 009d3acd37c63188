#include "ncg/acs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace ncg {

namespace {

// Flattened complex unknown index for J_{j,i}(k), all 1-based inputs.
int cidx(int j, int i, int k, int r, int n) {
    return ((j - 1) * r + (i - 1)) * n + (k - 1);
}

// A complex-linear functional in the unknowns and their conjugates:
// sum_I (lin[I] x_I + cj[I] conj(x_I)).
struct ComplexRow {
    std::map<int, Scalar> lin;
    std::map<int, Scalar> cj;
};

// Splits a complex functional over x = u + iv into its real and
// imaginary parts as rows over the interleaved real unknowns (u, v).
void append_real_split(Matrix& m, const ComplexRow& row, int complex_unknowns) {
    Vec re(2 * complex_unknowns, Scalar(0));
    Vec im(2 * complex_unknowns, Scalar(0));
    for (const auto& [idx, a] : row.lin) {
        re[2 * idx] += Scalar(a.re());
        re[2 * idx + 1] -= Scalar(a.im());
        im[2 * idx] += Scalar(a.im());
        im[2 * idx + 1] += Scalar(a.re());
    }
    for (const auto& [idx, b] : row.cj) {
        re[2 * idx] += Scalar(b.re());
        re[2 * idx + 1] += Scalar(b.im());
        im[2 * idx] += Scalar(b.im());
        im[2 * idx + 1] -= Scalar(b.re());
    }
    m.data.push_back(std::move(re));
    m.data.push_back(std::move(im));
    m.rows += 2;
}

// --- Rational polynomials in the real kernel parameters ----------------

using Monomial = std::vector<int>;  // sorted variable indices
using Poly = std::map<Monomial, Rational>;

void add_term(Poly& p, Monomial m, const Rational& c) {
    if (c == 0) return;
    std::sort(m.begin(), m.end());
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(std::move(m), c);
    } else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            add_term(out, std::move(m), ca * cb);
        }
    return out;
}

Poly poly_substitute(const Poly& p, int var, const Poly& affine) {
    Poly out;
    for (const auto& [mono, c] : p) {
        Monomial rest;
        int count = 0;
        for (int v : mono) {
            if (v == var) ++count;
            else rest.push_back(v);
        }
        if (count == 0) {
            add_term(out, mono, c);
            continue;
        }
        Poly factor{{rest, c}};
        for (int t = 0; t < count; ++t) factor = poly_mul(factor, affine);
        for (const auto& [m2, c2] : factor) add_term(out, m2, c2);
    }
    return out;
}

std::set<int> poly_vars(const Poly& p) {
    std::set<int> vars;
    for (const auto& [mono, c] : p) vars.insert(mono.begin(), mono.end());
    return vars;
}

bool is_linear(const Poly& p) {
    for (const auto& [mono, c] : p)
        if (mono.size() > 1) return false;
    return true;
}

// Exact rational square root, if one exists.
std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    Integer num = boost::multiprecision::numerator(r);
    Integer den = boost::multiprecision::denominator(r);
    Integer sn = boost::multiprecision::sqrt(num);
    Integer sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rational(sn, sd);
}

// Recursive exact solver for the residual quadratic system: propagate
// linear equations, then case-split on the recognizable quadratic shapes
// (univariate quadratics, a single square, a single cross term).
struct QuadSolver {
    std::vector<std::map<int, Rational>> solutions;
    bool infinite = false;
    int nodes = 0;

    struct State {
        std::vector<Poly> eqs;
        std::map<int, Poly> assign;  // var -> affine in live vars
        std::set<int> live;
    };

    static void do_assign(State& st, int var, const Poly& affine) {
        st.live.erase(var);
        for (auto& eq : st.eqs) eq = poly_substitute(eq, var, affine);
        for (auto& [v, a] : st.assign) a = poly_substitute(a, var, affine);
        st.assign[var] = affine;
    }

    void run(State st) {
        if (++nodes > 20000)
            throw MathInconsistency("acs solver: case split did not terminate");
        for (;;) {
            // Normalize: drop satisfied equations, detect contradictions.
            std::vector<Poly> kept;
            for (auto& eq : st.eqs) {
                if (eq.empty()) continue;
                if (eq.size() == 1 && eq.begin()->first.empty()) return;  // dead branch
                kept.push_back(std::move(eq));
            }
            st.eqs = std::move(kept);

            // Propagate a linear equation if one is available.
            const Poly* linear = nullptr;
            for (const auto& eq : st.eqs)
                if (is_linear(eq)) { linear = &eq; break; }
            if (!linear) break;
            Poly eq = *linear;
            int var = -1;
            Rational pivot;
            for (const auto& [mono, c] : eq)
                if (mono.size() == 1) { var = mono[0]; pivot = c; break; }
            Poly affine;
            for (const auto& [mono, c] : eq)
                if (!(mono.size() == 1 && mono[0] == var))
                    add_term(affine, mono, -c / pivot);
            do_assign(st, var, affine);
        }

        if (st.eqs.empty()) {
            if (!st.live.empty()) { infinite = true; return; }
            std::map<int, Rational> sol;
            for (const auto& [v, a] : st.assign) {
                Rational c = 0;
                if (!a.empty()) c = a.begin()->second;  // constant (no live vars left)
                sol[v] = c;
            }
            solutions.push_back(std::move(sol));
            return;
        }

        // Real positivity: sum_a c_a t_a^2 + k = 0 with all c_a of one
        // sign. The parameters are real, so this either kills the branch
        // or forces every participating variable to zero.
        for (const auto& eq : st.eqs) {
            bool squares = true;
            int sign = 0;
            Rational k = 0;
            for (const auto& [mono, c] : eq) {
                if (mono.empty()) { k = c; continue; }
                if (mono.size() != 2 || mono[0] != mono[1]) { squares = false; break; }
                int s = c > 0 ? 1 : -1;
                if (sign == 0) sign = s;
                else if (sign != s) { squares = false; break; }
            }
            if (!squares || sign == 0) continue;
            if (sign > 0 ? k > 0 : k < 0) return;  // dead branch
            if (k != 0) continue;                  // opposite-sign constant: no conclusion
            State next = st;
            for (const auto& [mono, c] : eq)
                if (!mono.empty()) do_assign(next, mono[0], Poly{});
            run(std::move(next));
            return;
        }

        // Univariate quadratic: branch on its rational roots.
        for (const auto& eq : st.eqs) {
            auto vars = poly_vars(eq);
            if (vars.size() != 1) continue;
            int v = *vars.begin();
            Rational a, b, c;
            for (const auto& [mono, coeff] : eq) {
                if (mono.size() == 2) a = coeff;
                else if (mono.size() == 1) b = coeff;
                else c = coeff;
            }
            auto s = rational_sqrt(b * b - 4 * a * c);
            if (!s) return;  // no rational root: dead branch
            std::vector<Rational> roots{(-b + *s) / (2 * a)};
            if (*s != 0) roots.push_back((-b - *s) / (2 * a));
            for (const Rational& root : roots) {
                State next = st;
                do_assign(next, v, Poly{{Monomial{}, root}});
                run(std::move(next));
            }
            return;
        }

        // Common factor: when every monomial of an equation is divisible
        // by some variable v, the equation factors as v * quotient and we
        // branch exactly on v = 0 | quotient = 0.
        for (const auto& eq : st.eqs) {
            auto common = poly_vars(eq);
            for (const auto& [mono, c] : eq) {
                std::set<int> in(mono.begin(), mono.end());
                std::set<int> keep;
                for (int v : common)
                    if (in.count(v)) keep.insert(v);
                common = std::move(keep);
            }
            if (common.empty()) continue;
            int v = *common.begin();
            Poly quotient;
            for (const auto& [mono, c] : eq) {
                Monomial m = mono;
                m.erase(std::find(m.begin(), m.end(), v));
                add_term(quotient, std::move(m), c);
            }
            State a = st;
            do_assign(a, v, Poly{});
            run(std::move(a));
            State b = st;
            b.eqs.push_back(std::move(quotient));
            run(std::move(b));
            return;
        }

        std::ostringstream os;
        os << "acs solver: residual quadratic system has an unsupported shape:";
        for (const auto& eq : st.eqs) {
            os << "\n  ";
            for (const auto& [mono, c] : eq) {
                os << " + " << rational_str(c);
                for (int v : mono) os << "*t" << v;
            }
            os << " = 0";
        }
        throw MathInconsistency(os.str());
    }
};

Form apply_acs(const DifferentialCalculus& calc, const AcsMatrix& J, const Form& x) {
    return calc.from_right_coords(J.apply(calc.right_coords(x)));
}

Matrix acs_coordinate_matrix(const DifferentialCalculus& calc, const AcsMatrix& J) {
    int dim = calc.dim(1);
    Matrix m(dim, dim);
    for (int c = 0; c < dim; ++c) {
        Vec unit(dim, Scalar(0));
        unit[c] = Scalar(1);
        Vec col = apply_acs(calc, J, calc.from_coords(1, unit)).coords();
        for (int r = 0; r < dim; ++r) m.at(r, c) = col[r];
    }
    return m;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (int k = 0; k < b.rows; ++k)
                for (int l = 0; l < b.cols; ++l)
                    out.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
        }
    return out;
}

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::string vec_str(const Vec& v) {
    std::ostringstream os;
    os << "[";
    for (size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v[k].str();
    os << "]";
    return os.str();
}

}  // namespace

// --- AcsMatrix ----------------------------------------------------------

AcsMatrix::AcsMatrix(int rank, PointSetPtr base)
    : rank_(rank), base_(std::move(base)),
      entries_(rank * rank, AlgebraElement::zero(base_)) {}

AcsMatrix AcsMatrix::negated() const {
    AcsMatrix out(rank_, base_);
    for (size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = -entries_[k];
    return out;
}

std::vector<AlgebraElement> AcsMatrix::apply(const std::vector<AlgebraElement>& a) const {
    if (static_cast<int>(a.size()) != rank_)
        throw std::invalid_argument("AcsMatrix::apply: coordinate count mismatch");
    std::vector<AlgebraElement> out(rank_, AlgebraElement::zero(base_));
    for (int l = 1; l <= rank_; ++l)
        for (int m = 1; m <= rank_; ++m)
            out[l - 1] = out[l - 1] + entry(l, m) * a[m - 1];
    return out;
}

std::string AcsMatrix::key() const {
    std::ostringstream os;
    for (int j = 1; j <= rank_; ++j)
        for (int i = 1; i <= rank_; ++i) {
            os << "J" << j << i << "=(";
            for (int k = 1; k <= base_->size(); ++k)
                os << (k > 1 ? "," : "") << entry(j, i)(k).str();
            os << ");";
        }
    return os.str();
}

// --- Constraint generation ----------------------------------------------

Matrix AcsSystem::combined() const {
    Matrix m(0, 2 * complex_unknowns);
    for (const auto& row : left_linearity.data) m.data.push_back(row);
    for (const auto& row : star_condition.data) m.data.push_back(row);
    m.rows = static_cast<int>(m.data.size());
    return m;
}

AcsSystem acs_constraints(const DifferentialCalculus& calc) {
    const BimoduleTable& table = calc.bimodule_table();
    const int r = table.rank();
    const int n = calc.base()->size();

    AcsSystem sys;
    sys.rank = r;
    sys.points = n;
    sys.complex_unknowns = r * r * n;
    sys.left_linearity = Matrix(0, 2 * sys.complex_unknowns);
    sys.star_condition = Matrix(0, 2 * sys.complex_unknowns);

    // (L): J(chi_k e_j) = chi_k J(e_j), componentwise in m and pointwise
    // in t: sum_l J_{ml}(t) c_{lkj}(t) = sum_l c_{mkl}(t) J_{lj}(t).
    for (int m = 1; m <= r; ++m)
        for (int j = 1; j <= r; ++j)
            for (int k = 1; k <= n; ++k)
                for (int t = 1; t <= n; ++t) {
                    ComplexRow row;
                    for (int l = 1; l <= r; ++l) {
                        row.lin[cidx(m, l, t, r, n)] += table.entry(l, k, j)(t);
                        row.lin[cidx(l, j, t, r, n)] -= table.entry(m, k, l)(t);
                    }
                    append_real_split(sys.left_linearity, row, sys.complex_unknowns);
                }

    // (S): J(e_i^*) = J(e_i)^*, reduced through the bimodule table:
    // J_{mi}(t) = sum_{j,k} conj(J_{ji}(k)) c_{mkj}(t).
    for (int m = 1; m <= r; ++m)
        for (int i = 1; i <= r; ++i)
            for (int t = 1; t <= n; ++t) {
                ComplexRow row;
                row.lin[cidx(m, i, t, r, n)] += Scalar(1);
                for (int j = 1; j <= r; ++j)
                    for (int k = 1; k <= n; ++k)
                        row.cj[cidx(j, i, k, r, n)] -= table.entry(m, k, j)(t);
                append_real_split(sys.star_condition, row, sys.complex_unknowns);
            }

    return sys;
}

// --- Solving -------------------------------------------------------------

std::variant<std::vector<AcsMatrix>, InfiniteSolutionFamily>
solve_acs(const DifferentialCalculus& calc) {
    const AcsSystem sys = acs_constraints(calc);
    const int r = sys.rank;
    const int n = sys.points;
    const int N = sys.complex_unknowns;

    std::vector<Vec> K = kernel_basis(sys.combined());
    const int d = static_cast<int>(K.size());

    // Complex-affine expression of each unknown in the real parameters:
    // x_I = sum_a (K_a[2I] + i K_a[2I+1]) t_a.
    auto coeff = [&](int I, int a) {
        return Scalar(K[a][2 * I].re(), K[a][2 * I + 1].re());
    };

    // Residual quadratics from (J^2)_{ki}(t) = -delta_{ki}, split into
    // real and imaginary rational polynomials in the parameters t.
    QuadSolver solver;
    QuadSolver::State root;
    for (int a = 0; a < d; ++a) root.live.insert(a);
    for (int k = 1; k <= r; ++k)
        for (int i = 1; i <= r; ++i)
            for (int t = 1; t <= n; ++t) {
                Poly re_eq, im_eq;
                for (int j = 1; j <= r; ++j) {
                    int I1 = cidx(k, j, t, r, n);
                    int I2 = cidx(j, i, t, r, n);
                    for (int a = 0; a < d; ++a)
                        for (int b = 0; b < d; ++b) {
                            Scalar c = coeff(I1, a) * coeff(I2, b);
                            add_term(re_eq, Monomial{a, b}, c.re());
                            add_term(im_eq, Monomial{a, b}, c.im());
                        }
                }
                if (k == i) add_term(re_eq, Monomial{}, 1);
                if (!re_eq.empty()) root.eqs.push_back(std::move(re_eq));
                if (!im_eq.empty()) root.eqs.push_back(std::move(im_eq));
            }

    solver.run(std::move(root));
    if (solver.infinite)
        return InfiniteSolutionFamily{
            "the (L)+(S)+(Q) system admits a positive-dimensional solution family"};

    std::vector<AcsMatrix> out;
    std::set<std::string> seen;
    for (const auto& sol : solver.solutions) {
        AcsMatrix J(r, calc.base());
        for (int j = 1; j <= r; ++j)
            for (int i = 1; i <= r; ++i) {
                std::vector<Scalar> vals(n, Scalar(0));
                for (int k = 1; k <= n; ++k) {
                    int I = cidx(j, i, k, r, n);
                    Scalar x(0);
                    for (int a = 0; a < d; ++a) {
                        auto it = sol.find(a);
                        Rational ta = (it == sol.end()) ? Rational(0) : it->second;
                        x += Scalar(ta) * coeff(I, a);
                    }
                    vals[k - 1] = x;
                }
                J.entry(j, i) = AlgebraElement(calc.base(), std::move(vals));
            }
        if (!seen.insert(J.key()).second) continue;
        if (auto bad = verify_acs(calc, J))
            throw MathInconsistency("acs solver produced a candidate violating " +
                                    bad->condition);
        out.push_back(std::move(J));
    }

    std::sort(out.begin(), out.end(),
              [](const AcsMatrix& a, const AcsMatrix& b) { return a.key() < b.key(); });
    return out;
}

// --- Verification --------------------------------------------------------

std::optional<AcsViolation> verify_acs(const DifferentialCalculus& calc,
                                       const AcsMatrix& J) {
    const int dim = calc.dim(1);
    const int n = calc.base()->size();

    for (int c = 0; c < dim; ++c) {
        Vec unit(dim, Scalar(0));
        unit[c] = Scalar(1);
        Form b = calc.from_coords(1, unit);
        Form jb = apply_acs(calc, J, b);

        Form sq = apply_acs(calc, J, jb);
        if (sq != -b)
            return AcsViolation{"J^2 = -1", vec_str(sq.coords()), vec_str((-b).coords())};

        for (int k = 1; k <= n; ++k) {
            AlgebraElement chi = AlgebraElement::chi(calc.base(), k);
            Form lhs = apply_acs(calc, J, chi * b);
            Form rhs = chi * jb;
            if (lhs != rhs)
                return AcsViolation{"left A-linearity", vec_str(lhs.coords()),
                                    vec_str(rhs.coords())};
        }

        Form lhs = apply_acs(calc, J, calc.star(b));
        Form rhs = calc.star(jb);
        if (lhs != rhs)
            return AcsViolation{"star condition J(x^*) = J(x)^*", vec_str(lhs.coords()),
                                vec_str(rhs.coords())};
    }
    return std::nullopt;
}

// --- Derivation extension and (p,q) decomposition ------------------------

const PqComponent& PqSpace::component(int p, int q) const {
    for (const auto& comp : by_degree.at(p + q))
        if (comp.p == p && comp.q == q) return comp;
    throw std::out_of_range("no (p,q) component of that bidegree");
}

PqSpace extend_and_pq(const DifferentialCalculus& calc, const AcsMatrix& J,
                      int max_degree) {
    if (max_degree > calc.max_degree())
        throw std::invalid_argument("extend_and_pq: degree exceeds the computed calculus");

    PqSpace pq;
    pq.calc = &calc;
    pq.j_matrices.resize(max_degree + 1);

    // J vanishes on Omega^0 = A and acts by the given matrix on Omega^1.
    pq.j_matrices[0] = Matrix(calc.dim(0), calc.dim(0));
    if (max_degree >= 1) pq.j_matrices[1] = acs_coordinate_matrix(calc, J);

    // Extend by the derivation rule through the product map
    // m : Omega^1 (x) Omega^{p-1} -> Omega^p.
    for (int deg = 2; deg <= max_degree; ++deg) {
        const int d1 = calc.dim(1);
        const int dp = calc.dim(deg - 1);
        const int dm = calc.dim(deg);

        Matrix M(dm, d1 * dp);
        for (int a = 0; a < d1; ++a) {
            Vec ua(d1, Scalar(0));
            ua[a] = Scalar(1);
            Form fa = calc.from_coords(1, ua);
            for (int b = 0; b < dp; ++b) {
                Vec ub(dp, Scalar(0));
                ub[b] = Scalar(1);
                Vec w = calc.wedge(fa, calc.from_coords(deg - 1, ub)).coords();
                for (int rrow = 0; rrow < dm; ++rrow) M.at(rrow, a * dp + b) = w[rrow];
            }
        }
        if (rank(M) != dm)
            throw MathInconsistency("products do not span Omega^" + std::to_string(deg));

        Matrix D = kronecker(pq.j_matrices[1], Matrix::identity(dp));
        Matrix D2 = kronecker(Matrix::identity(d1), pq.j_matrices[deg - 1]);
        for (int rrow = 0; rrow < D.rows; ++rrow)
            for (int ccol = 0; ccol < D.cols; ++ccol)
                D.at(rrow, ccol) += D2.at(rrow, ccol);

        // Well-definedness: the derivation action must preserve ker m.
        for (const Vec& kv : kernel_basis(M)) {
            if (!vec_is_zero(mat_vec(M, mat_vec(D, kv))))
                throw MathInconsistency(
                    "derivation extension of J is ill-defined on Omega^" +
                    std::to_string(deg) + "; kernel witness " + vec_str(kv));
        }

        Matrix Jm(dm, dm);
        for (int c = 0; c < dm; ++c) {
            Vec unit(dm, Scalar(0));
            unit[c] = Scalar(1);
            auto pre = solve(M, unit);
            Vec col = mat_vec(M, mat_vec(D, *pre));
            for (int rrow = 0; rrow < dm; ++rrow) Jm.at(rrow, c) = col[rrow];
        }
        pq.j_matrices[deg] = std::move(Jm);
    }

    // Diagonalize each degree into (p,q) eigenspaces of eigenvalue (p-q)i.
    pq.by_degree.resize(max_degree + 1);
    for (int deg = 0; deg <= max_degree; ++deg) {
        const Matrix& Jm = pq.j_matrices[deg];
        const int dm = calc.dim(deg);

        std::vector<PqComponent> comps;
        int total = 0;
        for (int p = deg; p >= 0; --p) {
            int q = deg - p;
            Scalar lambda = Scalar(Rational(p - q)) * Scalar::i();
            Matrix shifted = Jm;
            for (int k = 0; k < dm; ++k) shifted.at(k, k) -= lambda;
            PqComponent comp;
            comp.p = p;
            comp.q = q;
            comp.basis = kernel_basis(shifted);
            total += static_cast<int>(comp.basis.size());
            comps.push_back(std::move(comp));
        }
        if (total != dm)
            throw MathInconsistency("J on Omega^" + std::to_string(deg) +
                                    " is not diagonalizable over the bidegree "
                                    "eigenvalues");

        // Projections through the assembled eigenbasis.
        Matrix B(dm, dm);
        int col = 0;
        for (const auto& comp : comps)
            for (const Vec& v : comp.basis) {
                for (int k = 0; k < dm; ++k) B.at(k, col) = v[k];
                ++col;
            }
        auto Binv = inverse(B);
        if (!Binv) throw MathInconsistency("eigenbasis assembly failed");
        col = 0;
        for (auto& comp : comps) {
            Matrix sel(dm, dm);
            for (size_t k = 0; k < comp.basis.size(); ++k)
                sel.at(col + static_cast<int>(k), col + static_cast<int>(k)) = Scalar(1);
            comp.projection = B * sel * *Binv;
            col += static_cast<int>(comp.basis.size());
        }
        pq.by_degree[deg] = std::move(comps);
    }

    return pq;
}

std::pair<Form, Form> del_delbar(const Form& x, int p, int q, const PqSpace& pq) {
    const DifferentialCalculus& calc = *pq.calc;
    const int deg = p + q;
    if (p < 0 || q < 0 || x.degree() != deg) throw NotHomogeneous();

    // x must be an actual eigenvector of bidegree (p,q).
    Scalar lambda = Scalar(Rational(p - q)) * Scalar::i();
    Vec jx = mat_vec(pq.j_matrix(deg), x.coords());
    for (size_t k = 0; k < jx.size(); ++k)
        if (jx[k] != lambda * x.coords()[k]) throw NotHomogeneous();

    Form dx = calc.d(x);
    Vec del = mat_vec(pq.component(p + 1, q).projection, dx.coords());
    Vec dbar = mat_vec(pq.component(p, q + 1).projection, dx.coords());
    return {calc.from_coords(deg + 1, del), calc.from_coords(deg + 1, dbar)};
}

IntegrabilityResult integrability_check(const DifferentialCalculus& calc,
                                        const PqSpace& pq) {
    IntegrabilityResult result;
    result.integrable = true;
    const Matrix& leak_proj = pq.component(0, 2).projection;
    for (const Vec& v : pq.component(1, 0).basis) {
        Form dx = calc.d(calc.from_coords(1, v));
        Vec leak = mat_vec(leak_proj, dx.coords());
        if (!vec_is_zero(leak)) {
            result.integrable = false;
            result.witness_direction = v;
            result.witness_leak = leak;
            return result;
        }
    }
    return result;
}

}  // namespace ncg
