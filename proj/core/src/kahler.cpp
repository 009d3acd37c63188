#include "ncg/kahler.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace ncg {

namespace {

using nlohmann::json;

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

// Flattened component index: entry (a, b) of an r x r metric-shaped
// matrix, at point k, all 1-based.
int flat(int a, int b, int k, int r, int n) {
    return ((a - 1) * r + (b - 1)) * n + (k - 1);
}

// L_{lj}(f): right-basis component l of f * e_j.
AlgebraElement conv(const BimoduleTable& table, int l, int j, const AlgebraElement& f) {
    return table.left_convert(f, j)[l - 1];
}

Scalar det_of(Matrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    Scalar det(1);
    for (int col = 0; col < m.cols; ++col) {
        int pivot = -1;
        for (int row = col; row < m.rows; ++row)
            if (!m.at(row, col).is_zero()) { pivot = row; break; }
        if (pivot < 0) return Scalar(0);
        if (pivot != col) {
            std::swap(m.data[pivot], m.data[col]);
            det = -det;
        }
        det *= m.at(col, col);
        Scalar inv = m.at(col, col).inverse();
        for (int row = col + 1; row < m.rows; ++row) {
            Scalar factor = m.at(row, col) * inv;
            if (factor.is_zero()) continue;
            for (int c2 = col; c2 < m.cols; ++c2)
                m.at(row, c2) -= factor * m.at(col, c2);
        }
    }
    return det;
}

MetricMatrix from_flat(const Vec& v, int r, const PointSetPtr& base) {
    const int n = base->size();
    MetricMatrix m(r, base);
    for (int a = 1; a <= r; ++a)
        for (int b = 1; b <= r; ++b) {
            std::vector<Scalar> vals(n);
            for (int k = 1; k <= n; ++k) vals[k - 1] = v[flat(a, b, k, r, n)];
            m.entry(a, b) = AlgebraElement(base, std::move(vals));
        }
    return m;
}

// det at a point, and its polarization, for rank-2 component vectors;
// the quadratic form whose identical vanishing the certificate claims.
Scalar det_quadratic(const Vec& x, int k, int r, int n) {
    return x[flat(1, 1, k, r, n)] * x[flat(2, 2, k, r, n)] -
           x[flat(1, 2, k, r, n)] * x[flat(2, 1, k, r, n)];
}

Scalar det_polarized(const Vec& x, const Vec& y, int k, int r, int n) {
    return x[flat(1, 1, k, r, n)] * y[flat(2, 2, k, r, n)] +
           y[flat(1, 1, k, r, n)] * x[flat(2, 2, k, r, n)] -
           x[flat(1, 2, k, r, n)] * y[flat(2, 1, k, r, n)] -
           y[flat(1, 2, k, r, n)] * x[flat(2, 1, k, r, n)];
}

// det per point over the family sum_a t_a basis[a], rendered as
// quadratic polynomials in the deterministic parameter names t1, t2, ...
std::vector<std::string> render_det_conditions(const std::vector<Vec>& basis, int r,
                                               int n) {
    std::vector<std::string> out;
    if (r != 2) {
        out.push_back("det condition rendered only for rank 2");
        return out;
    }
    const int d = static_cast<int>(basis.size());
    for (int k = 1; k <= n; ++k) {
        std::ostringstream os;
        os << "det@point" << k << ":";
        bool any = false;
        for (int a = 0; a < d; ++a)
            for (int b = a; b < d; ++b) {
                Scalar c = (a == b) ? det_quadratic(basis[a], k, r, n)
                                    : det_polarized(basis[a], basis[b], k, r, n);
                if (c.is_zero()) continue;
                os << (any ? " + " : " ") << "(" << c.str() << ")*t" << a + 1 << "*t"
                   << b + 1;
                any = true;
            }
        if (!any) os << " 0";
        out.push_back(os.str());
    }
    return out;
}

// The combined linear system of the certificate, over the inverse
// components h^{ji}(k) at flat index (j, i, k): bimodule centrality of
// the tensor, (J (x) J) invariance, and d omega = 0.
Matrix inverse_side_system(const DifferentialCalculus& calc, const AcsMatrix& J,
                           const PqSpace& pq) {
    const BimoduleTable& table = calc.bimodule_table();
    const int r = table.rank();
    const int n = calc.base()->size();
    const int unknowns = r * r * n;

    Matrix sys(0, unknowns);
    auto add_row = [&](Vec row) {
        sys.data.push_back(std::move(row));
        ++sys.rows;
    };

    // chi_c * tensor = tensor * chi_c, component (m, l) at point t.
    for (int c = 1; c <= n; ++c)
        for (int m = 1; m <= r; ++m)
            for (int l = 1; l <= r; ++l)
                for (int t = 1; t <= n; ++t) {
                    Vec row(unknowns, Scalar(0));
                    for (int i = 1; i <= r; ++i) {
                        AlgebraElement cmci = table.entry(m, c, i);
                        for (int j = 1; j <= r; ++j)
                            row[flat(j, i, t, r, n)] += conv(table, l, j, cmci)(t);
                    }
                    row[flat(l, m, t, r, n)] -= AlgebraElement::chi(calc.base(), c)(t);
                    if (!vec_is_zero(row)) add_row(std::move(row));
                }

    // (J (x) J) tensor = tensor, component (k, m) at point t.
    for (int k = 1; k <= r; ++k)
        for (int m = 1; m <= r; ++m)
            for (int t = 1; t <= n; ++t) {
                Vec row(unknowns, Scalar(0));
                for (int i = 1; i <= r; ++i)
                    for (int j = 1; j <= r; ++j)
                        for (int l = 1; l <= r; ++l)
                            row[flat(j, i, t, r, n)] +=
                                conv(table, m, l, J.entry(k, i))(t) * J.entry(l, j)(t);
                row[flat(m, k, t, r, n)] -= Scalar(1);
                if (!vec_is_zero(row)) add_row(std::move(row));
            }

    // d omega = 0, one row per Omega^3 coordinate; omega is linear in the
    // inverse components.
    const int dim3 = calc.dim(3);
    Matrix dmat(dim3, unknowns);
    for (int j = 1; j <= r; ++j)
        for (int i = 1; i <= r; ++i)
            for (int k = 1; k <= n; ++k) {
                MetricMatrix h(r, calc.base());
                h.entry(j, i) = AlgebraElement::chi(calc.base(), k);
                Vec dcol = kahler_check(fundamental_form_from_inverse(calc, h, pq));
                for (int row = 0; row < dim3; ++row)
                    dmat.at(row, flat(j, i, k, r, n)) = dcol[row];
            }
    for (int row = 0; row < dim3; ++row)
        if (!vec_is_zero(dmat.data[row])) add_row(dmat.data[row]);

    return sys;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (const auto& row : m.data) {
        json r = json::array();
        for (const auto& s : row) r.push_back(s.str());
        rows.push_back(std::move(r));
    }
    return rows;
}

Matrix matrix_from_json(const json& rows, int cols) {
    Matrix m(0, cols);
    for (const auto& row : rows) {
        Vec v;
        for (const auto& s : row) v.push_back(Scalar::parse(s.get<std::string>()));
        if (static_cast<int>(v.size()) != cols)
            throw ParseError("certificate matrix row has wrong width");
        m.data.push_back(std::move(v));
        ++m.rows;
    }
    return m;
}

json acs_to_json(const AcsMatrix& J) {
    json rows = json::array();
    for (int j = 1; j <= J.rank(); ++j) {
        json row = json::array();
        for (int i = 1; i <= J.rank(); ++i) {
            json vals = json::array();
            for (int k = 1; k <= J.base()->size(); ++k)
                vals.push_back(J.entry(j, i)(k).str());
            row.push_back(std::move(vals));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

AcsMatrix acs_from_json(const json& rows, const PointSetPtr& base) {
    const int r = static_cast<int>(rows.size());
    AcsMatrix J(r, base);
    for (int j = 1; j <= r; ++j)
        for (int i = 1; i <= r; ++i) {
            std::vector<Scalar> vals;
            for (const auto& s : rows[j - 1][i - 1])
                vals.push_back(Scalar::parse(s.get<std::string>()));
            if (static_cast<int>(vals.size()) != base->size())
                throw ParseError("certificate J entry has wrong point count");
            J.entry(j, i) = AlgebraElement(base, std::move(vals));
        }
    return J;
}

// Left-basis machinery: x = sum_l a_l * e_l with left coefficients a_l.
struct LeftBasis {
    int r = 0;
    int n = 0;
    Matrix psi_inv;  // inverse of the coordinate map (a_l(k)) -> coords
};

LeftBasis make_left_basis(const DifferentialCalculus& calc) {
    const int r = calc.bimodule_table().rank();
    const int n = calc.base()->size();
    const int dim = calc.dim(1);
    if (dim != r * n)
        throw MathInconsistency("Omega^1 left-coordinate map is not square");
    Matrix psi(dim, r * n);
    for (int l = 1; l <= r; ++l)
        for (int k = 1; k <= n; ++k) {
            Vec col = (AlgebraElement::chi(calc.base(), k) * calc.e(l)).coords();
            for (int row = 0; row < dim; ++row)
                psi.at(row, (l - 1) * n + (k - 1)) = col[row];
        }
    auto inv = inverse(psi);
    if (!inv) throw MathInconsistency("Omega^1 is not free as a left module");
    return LeftBasis{r, n, std::move(*inv)};
}

std::vector<AlgebraElement> left_coords(const LeftBasis& lb, const DifferentialCalculus& calc,
                                        const Form& x) {
    Vec a = mat_vec(lb.psi_inv, x.coords());
    std::vector<AlgebraElement> out;
    for (int l = 1; l <= lb.r; ++l) {
        std::vector<Scalar> vals(lb.n);
        for (int k = 1; k <= lb.n; ++k) vals[k - 1] = a[(l - 1) * lb.n + (k - 1)];
        out.emplace_back(calc.base(), std::move(vals));
    }
    return out;
}

}  // namespace

// --- MetricMatrix ---------------------------------------------------------

MetricMatrix::MetricMatrix(int rank, PointSetPtr base)
    : rank_(rank), base_(std::move(base)),
      entries_(rank * rank, AlgebraElement::zero(base_)) {}

bool MetricMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const AlgebraElement& e) { return e.is_zero(); });
}

std::string MetricMatrix::key() const {
    std::ostringstream os;
    for (int a = 1; a <= rank_; ++a)
        for (int b = 1; b <= rank_; ++b) {
            os << "g" << a << b << "=(";
            for (int k = 1; k <= base_->size(); ++k)
                os << (k > 1 ? "," : "") << entry(a, b)(k).str();
            os << ");";
        }
    return os.str();
}

// --- Constraint systems on g_{ij} ------------------------------------------

Matrix metric_constraints(const DifferentialCalculus& calc) {
    const BimoduleTable& table = calc.bimodule_table();
    const int r = table.rank();
    const int n = calc.base()->size();
    Matrix sys(0, r * r * n);

    // g(chi_k e_i (x) e_j) = chi_k g_{ij}:
    // sum_{m,l} L_{lj}(c_{mki}) g_{ml} = chi_k g_{ij}, pointwise in t.
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= r; ++j)
                for (int t = 1; t <= n; ++t) {
                    Vec row(r * r * n, Scalar(0));
                    for (int m = 1; m <= r; ++m) {
                        AlgebraElement cmki = table.entry(m, k, i);
                        for (int l = 1; l <= r; ++l)
                            row[flat(m, l, t, r, n)] += conv(table, l, j, cmki)(t);
                    }
                    row[flat(i, j, t, r, n)] -= AlgebraElement::chi(calc.base(), k)(t);
                    if (!vec_is_zero(row)) {
                        sys.data.push_back(std::move(row));
                        ++sys.rows;
                    }
                }
    return sys;
}

Matrix compatibility_constraints(const DifferentialCalculus& calc, const AcsMatrix& J) {
    const BimoduleTable& table = calc.bimodule_table();
    const int r = table.rank();
    const int n = calc.base()->size();
    Matrix sys(0, r * r * n);

    // g(J e_i (x) J e_j) = g_{ij}:
    // sum_{k,l,m} L_{ml}(J_{ki}) J_{lj} g_{km} = g_{ij}, pointwise in t.
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
            for (int t = 1; t <= n; ++t) {
                Vec row(r * r * n, Scalar(0));
                for (int k = 1; k <= r; ++k)
                    for (int l = 1; l <= r; ++l)
                        for (int m = 1; m <= r; ++m)
                            row[flat(k, m, t, r, n)] +=
                                conv(table, m, l, J.entry(k, i))(t) * J.entry(l, j)(t);
                row[flat(i, j, t, r, n)] -= Scalar(1);
                if (!vec_is_zero(row)) {
                    sys.data.push_back(std::move(row));
                    ++sys.rows;
                }
            }
    return sys;
}

MetricFamily solve_compatible_metrics(const DifferentialCalculus& calc,
                                      const AcsMatrix& J) {
    const int r = calc.bimodule_table().rank();
    const int n = calc.base()->size();

    MetricFamily family;
    family.system = metric_constraints(calc);
    for (const auto& row : compatibility_constraints(calc, J).data) {
        family.system.data.push_back(row);
        ++family.system.rows;
    }

    std::vector<Vec> kern = kernel_basis(family.system);
    for (const Vec& v : kern) family.basis.push_back(from_flat(v, r, calc.base()));
    family.det_conditions = render_det_conditions(kern, r, n);
    return family;
}

// --- Determinant and inverse over A ----------------------------------------

AlgebraElement metric_det(const MetricMatrix& g) {
    const int r = g.rank();
    const int n = g.base()->size();
    std::vector<Scalar> vals(n);
    for (int k = 1; k <= n; ++k) {
        Matrix p(r, r);
        for (int a = 1; a <= r; ++a)
            for (int b = 1; b <= r; ++b) p.at(a - 1, b - 1) = g.entry(a, b)(k);
        vals[k - 1] = det_of(p);
    }
    return AlgebraElement(g.base(), std::move(vals));
}

std::variant<MetricMatrix, NotAUnit> metric_inverse(const MetricMatrix& g) {
    const int r = g.rank();
    const int n = g.base()->size();

    // A is a product of fields, so the matrix over A inverts pointwise.
    std::vector<Matrix> pointwise;
    NotAUnit bad;
    for (int k = 1; k <= n; ++k) {
        Matrix p(r, r);
        for (int a = 1; a <= r; ++a)
            for (int b = 1; b <= r; ++b) p.at(a - 1, b - 1) = g.entry(a, b)(k);
        auto inv = inverse(p);
        if (!inv) {
            bad.vanishing_points.push_back(k);
            pointwise.emplace_back();
        } else {
            pointwise.push_back(std::move(*inv));
        }
    }
    if (!bad.vanishing_points.empty()) return bad;

    MetricMatrix h(r, g.base());
    for (int a = 1; a <= r; ++a)
        for (int b = 1; b <= r; ++b) {
            std::vector<Scalar> vals(n);
            for (int k = 1; k <= n; ++k) vals[k - 1] = pointwise[k - 1].at(a - 1, b - 1);
            h.entry(a, b) = AlgebraElement(g.base(), std::move(vals));
        }
    return h;
}

// --- Fundamental form and the Kähler condition ------------------------------

Form fundamental_form_from_inverse(const DifferentialCalculus& calc,
                                   const MetricMatrix& ginv, const PqSpace& pq) {
    const int r = ginv.rank();
    const Matrix& p10 = pq.component(1, 0).projection;
    const Matrix& p01 = pq.component(0, 1).projection;

    Form omega = calc.zero(2);
    for (int i = 1; i <= r; ++i) {
        Form first = calc.from_coords(1, mat_vec(p10, calc.e(i).coords()));
        for (int j = 1; j <= r; ++j) {
            Form second = calc.from_coords(1, mat_vec(p01, calc.e(j).coords()));
            omega = omega + calc.wedge(Scalar::i() * first, second * ginv.entry(j, i));
        }
    }

    // omega must land in the (1,1) eigenspace: J(omega) = 0.
    if (!vec_is_zero(mat_vec(pq.j_matrix(2), omega.coords())))
        throw MathInconsistency("fundamental form is not of bidegree (1,1)");
    return omega;
}

std::variant<Form, NotAUnit> fundamental_form(const DifferentialCalculus& calc,
                                              const MetricMatrix& g, const PqSpace& pq) {
    auto inv = metric_inverse(g);
    if (std::holds_alternative<NotAUnit>(inv)) return std::get<NotAUnit>(inv);
    return fundamental_form_from_inverse(calc, std::get<MetricMatrix>(inv), pq);
}

Vec kahler_check(const Form& omega) {
    return omega.calculus().d(omega).coords();
}

// --- Certificate search ------------------------------------------------------

std::variant<NoKahlerCertificate, MetricMatrix>
kahler_search_certificate(const DifferentialCalculus& calc, const AcsMatrix& J,
                          const PqSpace& pq) {
    const int r = calc.bimodule_table().rank();
    const int n = calc.base()->size();
    if (r != 2)
        throw std::invalid_argument(
            "kahler_search_certificate requires a rank-2 module (2x2 determinant)");

    Matrix sys = inverse_side_system(calc, J, pq);
    std::vector<Vec> basis = kernel_basis(sys);
    const int d = static_cast<int>(basis.size());

    // Look for a point where det of the inverse components vanishes
    // identically on the solution space: all diagonal values of the
    // quadratic form plus all polarized cross terms are zero.
    int witness = 0;
    for (int k = 1; k <= n && witness == 0; ++k) {
        bool vanishes = true;
        for (int a = 0; a < d && vanishes; ++a) {
            if (!det_quadratic(basis[a], k, r, n).is_zero()) vanishes = false;
            for (int b = a + 1; b < d && vanishes; ++b)
                if (!det_polarized(basis[a], basis[b], k, r, n).is_zero())
                    vanishes = false;
        }
        if (vanishes) witness = k;
    }

    if (witness != 0) {
        NoKahlerCertificate cert{J, std::move(sys), std::move(basis), witness,
                                 render_det_conditions({}, r, n)};
        cert.det_conditions = render_det_conditions(cert.solution_basis, r, n);
        return cert;
    }

    // No vanishing witness: hunt for an actual Kähler metric among small
    // deterministic combinations of the basis.
    std::vector<Vec> candidates = basis;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            Vec s = basis[a], t = basis[a];
            for (int c = 0; c < static_cast<int>(s.size()); ++c) {
                s[c] += basis[b][c];
                t[c] -= basis[b][c];
            }
            candidates.push_back(std::move(s));
            candidates.push_back(std::move(t));
        }
    if (d > 0) {
        Vec all = basis[0];
        for (int a = 1; a < d; ++a)
            for (int c = 0; c < static_cast<int>(all.size()); ++c) all[c] += basis[a][c];
        candidates.push_back(std::move(all));
    }

    for (const Vec& v : candidates) {
        MetricMatrix h = from_flat(v, r, calc.base());
        if (std::holds_alternative<NotAUnit>(try_invert(metric_det(h)))) continue;
        auto ginv = metric_inverse(h);
        MetricMatrix g = std::get<MetricMatrix>(ginv);  // unit det: must invert
        // Confirm it really is a compatible Kähler metric before claiming
        // a contradiction with the paper.
        Vec gvec(r * r * n, Scalar(0));
        for (int a = 1; a <= r; ++a)
            for (int b = 1; b <= r; ++b)
                for (int k = 1; k <= n; ++k)
                    gvec[flat(a, b, k, r, n)] = g.entry(a, b)(k);
        Matrix gc = metric_constraints(calc);
        for (const auto& row : compatibility_constraints(calc, J).data)
            gc.data.push_back(row), ++gc.rows;
        if (!vec_is_zero(mat_vec(gc, gvec))) continue;
        if (!vec_is_zero(kahler_check(fundamental_form_from_inverse(calc, h, pq))))
            continue;
        return g;
    }

    throw MathInconsistency(
        "kahler search inconclusive: no det-vanishing point and no "
        "unit-determinant solution found");
}

// --- Certificate serialization and verification ------------------------------

std::string certificate_to_json(const NoKahlerCertificate& cert,
                                const GraphTripleSpec& spec) {
    json out;
    out["type"] = "no-kahler-certificate";
    out["triple"]["points"] = spec.base()->labels();
    json edges = json::array();
    for (const Edge& e : spec.edges())
        edges.push_back({{"i", e.i}, {"j", e.j}, {"weight", e.weight.str()}});
    out["triple"]["edges"] = std::move(edges);
    out["j"] = acs_to_json(cert.J);
    out["unknowns"] = "inverse components h^{ji}(k), flat index ((j-1)*r+(i-1))*n+(k-1)";
    out["combined_system"] = matrix_to_json(cert.combined_system);
    json basis = json::array();
    for (const Vec& v : cert.solution_basis) {
        json row = json::array();
        for (const Scalar& s : v) row.push_back(s.str());
        basis.push_back(std::move(row));
    }
    out["solution_basis"] = std::move(basis);
    out["witness_point"] = cert.witness_point;
    out["det_conditions"] = cert.det_conditions;
    return out.dump(2);
}

CertificateVerification verify_certificate_json(const std::string& text) {
    CertificateVerification result;
    auto fail = [&](const std::string& msg) {
        result.ok = false;
        result.failures.push_back(msg);
    };

    json cert;
    try {
        cert = json::parse(text);
    } catch (const std::exception& ex) {
        fail(std::string("certificate is not valid JSON: ") + ex.what());
        return result;
    }

    try {
        if (cert.value("type", "") != "no-kahler-certificate") {
            fail("unrecognized certificate type");
            return result;
        }
        GraphTripleSpec spec = GraphTripleSpec::from_json_text(cert["triple"].dump());
        auto triple = std::make_shared<SpectralTriple>(spec);
        DifferentialCalculus calc(triple, 3);
        const int r = calc.bimodule_table().rank();
        const int n = calc.base()->size();
        const int unknowns = r * r * n;

        AcsMatrix J = acs_from_json(cert["j"], calc.base());
        if (auto bad = verify_acs(calc, J)) {
            fail("embedded J is not an almost complex structure: " + bad->condition);
            return result;
        }

        Matrix sys = matrix_from_json(cert["combined_system"], unknowns);
        PqSpace pq = extend_and_pq(calc, J, 3);
        if (!(inverse_side_system(calc, J, pq) == sys))
            fail("combined system does not match the one generated from J");

        std::vector<Vec> basis;
        for (const auto& row : cert["solution_basis"]) {
            Vec v;
            for (const auto& s : row) v.push_back(Scalar::parse(s.get<std::string>()));
            if (static_cast<int>(v.size()) != unknowns) {
                fail("solution basis vector has wrong length");
                return result;
            }
            basis.push_back(std::move(v));
        }

        // Every claimed solution actually solves the system.
        for (size_t a = 0; a < basis.size(); ++a)
            if (!vec_is_zero(mat_vec(sys, basis[a])))
                fail("basis vector " + std::to_string(a + 1) +
                     " does not satisfy the combined system");

        // The basis spans the whole kernel: independent, with
        // rank(system) + |basis| = #unknowns.
        SpanBasis span(unknowns);
        for (const Vec& v : basis)
            if (!span.add(v)) {
                fail("solution basis is linearly dependent");
                break;
            }
        if (rank(sys) + static_cast<int>(basis.size()) != unknowns)
            fail("solution basis does not span the full kernel");

        const int witness = cert.value("witness_point", 0);
        if (witness < 1 || witness > n) {
            fail("witness point index out of range");
            return result;
        }
        if (r != 2) {
            fail("certificate verification requires rank 2");
            return result;
        }
        for (size_t a = 0; a < basis.size(); ++a) {
            if (!det_quadratic(basis[a], witness, r, n).is_zero())
                fail("det does not vanish on basis vector " + std::to_string(a + 1));
            for (size_t b = a + 1; b < basis.size(); ++b)
                if (!det_polarized(basis[a], basis[b], witness, r, n).is_zero())
                    fail("polarized det cross term is nonzero for pair " +
                         std::to_string(a + 1) + "," + std::to_string(b + 1));
        }
    } catch (const std::exception& ex) {
        fail(std::string("verification aborted: ") + ex.what());
    }
    return result;
}

// --- Hermitian metrics --------------------------------------------------------

Matrix hermitian_constraints(const DifferentialCalculus& calc) {
    const BimoduleTable& table = calc.bimodule_table();
    const LeftBasis lb = make_left_basis(calc);
    const int r = table.rank();
    const int n = calc.base()->size();
    Matrix sys(0, r * r * n);
    auto add_row = [&](Vec row) {
        if (vec_is_zero(row)) return;
        sys.data.push_back(std::move(row));
        ++sys.rows;
    };

    // h(chi_c e_i (x) conj(e_j)) = chi_c H_{ij}: the coefficient crosses
    // the conjugate leg, so it comes back conjugated through the left
    // expansion of e_j * conj(c_{mci}).
    for (int c = 1; c <= n; ++c)
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= r; ++j)
                for (int t = 1; t <= n; ++t) {
                    Vec row(r * r * n, Scalar(0));
                    for (int m = 1; m <= r; ++m) {
                        auto nu = left_coords(
                            lb, calc, calc.e(j) * table.entry(m, c, i).involution());
                        for (int l = 1; l <= r; ++l)
                            row[flat(m, l, t, r, n)] += nu[l - 1](t).conj();
                    }
                    row[flat(i, j, t, r, n)] -= AlgebraElement::chi(calc.base(), c)(t);
                    add_row(std::move(row));
                }

    // Middle linearity across the tensor: h(e_i chi_c (x) conj(e_j)) =
    // h(e_i (x) chi_c conj(e_j)), both sides expanded in the left basis.
    for (int c = 1; c <= n; ++c) {
        AlgebraElement chi = AlgebraElement::chi(calc.base(), c);
        for (int i = 1; i <= r; ++i) {
            auto nu = left_coords(lb, calc, calc.e(i) * chi);
            for (int j = 1; j <= r; ++j) {
                auto mu = left_coords(lb, calc, calc.e(j) * chi);
                for (int t = 1; t <= n; ++t) {
                    Vec row(r * r * n, Scalar(0));
                    for (int l = 1; l <= r; ++l) {
                        row[flat(l, j, t, r, n)] += nu[l - 1](t);
                        row[flat(i, l, t, r, n)] -= mu[l - 1](t).conj();
                    }
                    add_row(std::move(row));
                }
            }
        }
    }
    return sys;
}

Matrix hermitian_compatibility(const DifferentialCalculus& calc, const AcsMatrix& J) {
    const LeftBasis lb = make_left_basis(calc);
    const int r = J.rank();
    const int n = calc.base()->size();
    Matrix sys(0, r * r * n);

    // h(J e_i (x) conj(J e_j)) = H_{ij}. The conjugate leg carries the
    // tagged coefficient conj(J_{lj}) on the left, which crosses the
    // tensor middle back onto the first leg.
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
            for (int t = 1; t <= n; ++t) {
                Vec row(r * r * n, Scalar(0));
                for (int k = 1; k <= r; ++k)
                    for (int l = 1; l <= r; ++l) {
                        auto nu = left_coords(
                            lb, calc,
                            calc.e(k) * (J.entry(k, i) * J.entry(l, j).involution()));
                        for (int p = 1; p <= r; ++p)
                            row[flat(p, l, t, r, n)] += nu[p - 1](t);
                    }
                row[flat(i, j, t, r, n)] -= Scalar(1);
                if (!vec_is_zero(row)) {
                    sys.data.push_back(std::move(row));
                    ++sys.rows;
                }
            }
    return sys;
}

MetricFamily solve_hermitian_metrics(const DifferentialCalculus& calc,
                                     const AcsMatrix& J) {
    const int r = calc.bimodule_table().rank();
    const int n = calc.base()->size();

    MetricFamily family;
    family.system = hermitian_constraints(calc);
    for (const auto& row : hermitian_compatibility(calc, J).data) {
        family.system.data.push_back(row);
        ++family.system.rows;
    }
    std::vector<Vec> kern = kernel_basis(family.system);
    for (const Vec& v : kern) family.basis.push_back(from_flat(v, r, calc.base()));
    family.det_conditions = render_det_conditions(kern, r, n);
    return family;
}

MetricMatrix hermitian_induce(const DifferentialCalculus& calc, const MetricMatrix& h) {
    const int r = h.rank();
    const int n = calc.base()->size();

    // Pre: h satisfies the hermitian bimodule constraints.
    Vec hvec(r * r * n, Scalar(0));
    for (int a = 1; a <= r; ++a)
        for (int b = 1; b <= r; ++b)
            for (int k = 1; k <= n; ++k) hvec[flat(a, b, k, r, n)] = h.entry(a, b)(k);
    if (!vec_is_zero(mat_vec(hermitian_constraints(calc), hvec)))
        throw std::invalid_argument(
            "hermitian_induce: h violates the hermitian bimodule constraints");

    const LeftBasis lb = make_left_basis(calc);
    MetricMatrix g(r, calc.base());

    // g_{ij} = h(e_i (x) star_map(e_j)): expand star(e_j) in the right
    // basis, push each coefficient through the conjugate leg.
    for (int j = 1; j <= r; ++j) {
        auto s = calc.right_coords(calc.star(calc.e(j)));
        for (int i = 1; i <= r; ++i) {
            AlgebraElement gij = AlgebraElement::zero(calc.base());
            for (int m = 1; m <= r; ++m) {
                auto nu = left_coords(lb, calc, calc.e(i) * s[m - 1].involution());
                for (int l = 1; l <= r; ++l) gij = gij + nu[l - 1] * h.entry(l, m);
            }
            g.entry(i, j) = gij;
        }
    }
    return g;
}

}  // namespace ncg
