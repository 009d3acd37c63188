#include "ncg/calculus.hpp"

#include <algorithm>

namespace ncg {

bool Form::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Scalar& s) { return s.is_zero(); });
}

BlockOperator Form::represent() const { return pi_u(preimage_, calc_->triple()); }

namespace {
void check_same_calc(const Form& a, const Form& b) {
    if (&a.calculus() != &b.calculus())
        throw std::invalid_argument("forms from different calculi");
}
}  // namespace

Form operator+(const Form& a, const Form& b) {
    check_same_calc(a, b);
    if (a.degree_ != b.degree_) throw std::invalid_argument("degree mismatch in form sum");
    Vec coords = a.coords_;
    for (size_t k = 0; k < coords.size(); ++k) coords[k] += b.coords_[k];
    return Form(a.calc_, a.degree_, std::move(coords), a.preimage_ + b.preimage_);
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form operator-(const Form& a) { return Scalar(-1) * a; }

Form operator*(const Scalar& c, const Form& a) {
    Vec coords = a.coords_;
    for (auto& x : coords) x *= c;
    return Form(a.calc_, a.degree_, std::move(coords), c * a.preimage_);
}

Form operator*(const AlgebraElement& f, const Form& x) {
    return x.calc_->from_universal(UniversalForm::from_algebra(f) * x.preimage_);
}

Form operator*(const Form& x, const AlgebraElement& f) {
    return x.calc_->from_universal(x.preimage_ * UniversalForm::from_algebra(f));
}

BimoduleTable::BimoduleTable(int rank, PointSetPtr base)
    : rank_(rank), base_(std::move(base)),
      entries_(static_cast<size_t>(rank) * base_->size() * rank,
               AlgebraElement::zero(base_)) {}

const AlgebraElement& BimoduleTable::entry(int m, int k, int j) const {
    return entries_[((m - 1) * base_->size() + (k - 1)) * rank_ + (j - 1)];
}

AlgebraElement& BimoduleTable::entry(int m, int k, int j) {
    return entries_[((m - 1) * base_->size() + (k - 1)) * rank_ + (j - 1)];
}

std::vector<AlgebraElement> BimoduleTable::left_convert(const AlgebraElement& f,
                                                        int j) const {
    std::vector<AlgebraElement> out(rank_, AlgebraElement::zero(base_));
    for (int m = 1; m <= rank_; ++m)
        for (int k = 1; k <= base_->size(); ++k)
            out[m - 1] = out[m - 1] + f(k) * entry(m, k, j);
    return out;
}

DifferentialCalculus::DifferentialCalculus(SpectralTriplePtr triple, int max_degree)
    : triple_(std::move(triple)), max_degree_(max_degree),
      ambient_dim_(triple_->spec()->edge_count() * 4) {
    if (max_degree_ < 0) throw std::invalid_argument("max_degree must be >= 0");
    spaces_.resize(max_degree_ + 1);
    for (int p = 0; p <= max_degree_; ++p) build_space(p);
}

std::vector<Path> DifferentialCalculus::paths_of_degree(int p) const {
    const int n = base()->size();
    std::vector<Path> out;
    Path cur;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == p + 1) {
            out.push_back(cur);
            return;
        }
        for (int i = 1; i <= n; ++i) {
            if (!cur.empty() && cur.back() == i) continue;
            cur.push_back(i);
            self(self, depth + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

void DifferentialCalculus::build_space(int p) {
    FormSpace fs;
    fs.degree = p;
    fs.junk = SpanBasis(ambient_dim_);
    fs.full = SpanBasis(ambient_dim_);

    // Junk at degree p: pi_u(d k) over a kernel basis of pi_u at p-1.
    if (p > 0) {
        for (const auto& k : spaces_[p - 1].pi_kernel)
            fs.junk.add(pi_u(universal_d(k), *triple_).vectorize());
    }
    fs.junk_dim = fs.junk.size();
    for (const auto& g : fs.junk.generators()) fs.full.add(g);

    // Image span and quotient representatives, in path order.
    std::vector<Path> paths = paths_of_degree(p);
    SpanBasis image(ambient_dim_);
    Matrix pi_matrix(ambient_dim_, static_cast<int>(paths.size()));
    for (size_t c = 0; c < paths.size(); ++c) {
        UniversalForm u(base(), p);
        u.add_term(paths[c], Scalar(1));
        Vec v = pi_u(u, *triple_).vectorize();
        for (int r = 0; r < ambient_dim_; ++r) pi_matrix.at(r, static_cast<int>(c)) = v[r];
        image.add(v);
        if (fs.full.add(v)) fs.basis_paths.push_back(paths[c]);
    }
    fs.image_dim = image.size();
    fs.dim = fs.full.size() - fs.junk_dim;

    // Kernel of pi_u on the path space, kept for the next degree's junk.
    for (const auto& coeffs : kernel_basis(pi_matrix)) {
        UniversalForm k(base(), p);
        for (size_t c = 0; c < paths.size(); ++c) k.add_term(paths[c], coeffs[c]);
        fs.pi_kernel.push_back(std::move(k));
    }

    spaces_[p] = std::move(fs);
}

const FormSpace& DifferentialCalculus::space(int p) const {
    if (p < 0 || p > max_degree_)
        throw std::out_of_range("form degree " + std::to_string(p) +
                                " outside computed range 0.." +
                                std::to_string(max_degree_));
    return spaces_[p];
}

Vec DifferentialCalculus::coords_of(const BlockOperator& op, int degree) const {
    const FormSpace& fs = space(degree);
    auto all = fs.full.coordinates(op.vectorize());
    if (!all)
        throw std::logic_error("operator does not lie in pi_u(Omega_u^" +
                               std::to_string(degree) + ")");
    return Vec(all->begin() + fs.junk_dim, all->end());
}

Form DifferentialCalculus::zero(int degree) const {
    return Form(this, degree, Vec(space(degree).dim, Scalar(0)),
                UniversalForm(base(), degree));
}

Form DifferentialCalculus::from_algebra(const AlgebraElement& f) const {
    return from_universal(UniversalForm::from_algebra(f));
}

Form DifferentialCalculus::from_universal(const UniversalForm& u) const {
    return Form(this, u.degree(), coords_of(pi_u(u, *triple_), u.degree()), u);
}

Form DifferentialCalculus::from_coords(int degree, const Vec& coords) const {
    const FormSpace& fs = space(degree);
    if (static_cast<int>(coords.size()) != fs.dim)
        throw std::invalid_argument("coordinate length mismatch");
    UniversalForm u(base(), degree);
    for (size_t k = 0; k < coords.size(); ++k) u.add_term(fs.basis_paths[k], coords[k]);
    return Form(this, degree, coords, std::move(u));
}

Form DifferentialCalculus::e(int i) const {
    return from_universal(UniversalForm::dchi(base(), i));
}

Form DifferentialCalculus::d(const Form& x) const {
    return from_universal(universal_d(x.preimage()));
}

Form DifferentialCalculus::wedge(const Form& x, const Form& y) const {
    return from_universal(x.preimage() * y.preimage());
}

Form DifferentialCalculus::star(const Form& x) const {
    return from_universal(universal_star(x.preimage()));
}

std::variant<DifferentialCalculus::FreeBasis, NotFree>
DifferentialCalculus::free_basis_check() const {
    const int n = base()->size();
    const int r = n - 1;
    const int d1 = dim(1);

    FreeBasis fb;
    fb.basis.reserve(r);
    for (int i = 1; i <= r; ++i) fb.basis.push_back(e(i));

    // Scalar matrix of the right-coordinate map A^r -> Omega^1,
    // column (m, k) the class of e_m * chi_k.
    Matrix phi(d1, r * n);
    for (int m = 1; m <= r; ++m)
        for (int k = 1; k <= n; ++k) {
            Form col = fb.basis[m - 1] * AlgebraElement::chi(base(), k);
            for (int row = 0; row < d1; ++row)
                phi.at(row, (m - 1) * n + (k - 1)) = col.coords()[row];
        }
    fb.rank = rank(phi);
    fb.phi = phi;

    if (fb.rank < r * n) {
        // A relation sum_m e_m a_m = 0 with nonzero a.
        Vec rel = kernel_basis(phi).front();
        NotFree nf;
        nf.rank = fb.rank;
        for (int m = 0; m < r; ++m)
            nf.witness.emplace_back(base(), Vec(rel.begin() + m * n, rel.begin() + (m + 1) * n));
        return nf;
    }
    if (d1 != r * n) {
        NotFree nf;  // injective but not generating
        nf.rank = fb.rank;
        return nf;
    }
    auto inv = inverse(phi);
    if (!inv) {
        NotFree nf;
        nf.rank = fb.rank;
        return nf;
    }
    fb.phi_inv = *inv;
    return fb;
}

const DifferentialCalculus::FreeBasis& DifferentialCalculus::free_basis() const {
    if (!free_check_) free_check_ = free_basis_check();
    if (auto* nf = std::get_if<NotFree>(&*free_check_)) throw NotFreeError(*nf);
    return std::get<FreeBasis>(*free_check_);
}

const BimoduleTable& DifferentialCalculus::bimodule_table() const {
    if (table_) return *table_;
    const FreeBasis& fb = free_basis();
    const int n = base()->size();
    BimoduleTable table(fb.rank == 0 ? 0 : static_cast<int>(fb.basis.size()), base());
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= static_cast<int>(fb.basis.size()); ++j) {
            Form lhs = AlgebraElement::chi(base(), k) * fb.basis[j - 1];
            auto coords = right_coords(lhs);
            for (int m = 1; m <= static_cast<int>(fb.basis.size()); ++m)
                table.entry(m, k, j) = coords[m - 1];
        }
    table_ = std::move(table);
    return *table_;
}

std::vector<AlgebraElement> DifferentialCalculus::right_coords(const Form& x) const {
    if (x.degree() != 1) throw std::invalid_argument("right coordinates only on Omega^1");
    const FreeBasis& fb = free_basis();
    const int n = base()->size();
    Vec flat = mat_vec(fb.phi_inv, x.coords());
    std::vector<AlgebraElement> out;
    for (size_t m = 0; m < fb.basis.size(); ++m)
        out.emplace_back(base(), Vec(flat.begin() + m * n, flat.begin() + (m + 1) * n));
    return out;
}

Form DifferentialCalculus::from_right_coords(const std::vector<AlgebraElement>& a) const {
    const FreeBasis& fb = free_basis();
    if (a.size() != fb.basis.size())
        throw std::invalid_argument("right coordinate count mismatch");
    Form out = zero(1);
    for (size_t m = 0; m < a.size(); ++m) out = out + fb.basis[m] * a[m];
    return out;
}

}  // namespace ncg
