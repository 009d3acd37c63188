#include "ncg/triple.hpp"

#include <set>

#include "json.hpp"

namespace ncg {

GraphTripleSpec::GraphTripleSpec(PointSetPtr base, std::vector<Edge> edges)
    : base_(std::move(base)), edges_(std::move(edges)) {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges_) {
        if (e.i < 1 || e.j < 1 || e.i > base_->size() || e.j > base_->size())
            throw InvalidSpec("edge endpoint out of range");
        if (e.i == e.j) throw InvalidSpec("loop edge not allowed");
        if (e.i > e.j) throw InvalidSpec("edges must be listed with i < j");
        if (!seen.insert({e.i, e.j}).second) throw InvalidSpec("repeated edge");
        if (e.weight.is_zero()) throw InvalidSpec("zero edge weight");
    }
}

GraphTripleSpec GraphTripleSpec::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidSpec(std::string("triple spec is not valid JSON: ") + ex.what());
    }
    std::vector<std::string> labels;
    for (const auto& p : j.at("points")) labels.push_back(p.get<std::string>());
    PointSetPtr base = make_points(labels);
    auto endpoint = [&](const nlohmann::json& v) -> int {
        if (v.is_number_integer()) return v.get<int>();
        std::string label = v.get<std::string>();
        for (int k = 0; k < base->size(); ++k)
            if (base->labels()[k] == label) return k + 1;
        throw InvalidSpec("unknown point label '" + label + "'");
    };
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        Edge edge;
        edge.i = endpoint(e.at("i"));
        edge.j = endpoint(e.at("j"));
        if (edge.i > edge.j) std::swap(edge.i, edge.j);
        edge.weight = e.contains("weight") ? Scalar::parse(e.at("weight").get<std::string>())
                                           : Scalar(1);
        edges.push_back(edge);
    }
    return GraphTripleSpec(base, std::move(edges));
}

GraphTripleSpec GraphTripleSpec::builtin(const std::string& name) {
    if (name == "three-point") {
        PointSetPtr base = make_points(3);
        return GraphTripleSpec(base, {{1, 2, Scalar(1)}, {2, 3, Scalar(1)}, {1, 3, Scalar(1)}});
    }
    throw InvalidSpec("unknown builtin triple '" + name + "'");
}

BlockOperator::BlockOperator(TripleSpecPtr spec)
    : spec_(std::move(spec)),
      blocks_(spec_->edge_count(), Block{{{Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0)}}}) {}

BlockOperator::BlockOperator(TripleSpecPtr spec, std::vector<Block> blocks)
    : spec_(std::move(spec)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != spec_->edge_count())
        throw InvalidSpec("block count does not match edge count");
}

bool BlockOperator::is_zero() const {
    for (const auto& b : blocks_)
        for (const auto& row : b)
            for (const auto& s : row)
                if (!s.is_zero()) return false;
    return true;
}

BlockOperator BlockOperator::adjoint() const {
    std::vector<Block> out(blocks_.size());
    for (size_t e = 0; e < blocks_.size(); ++e)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) out[e][r][c] = blocks_[e][c][r].conj();
    return BlockOperator(spec_, std::move(out));
}

namespace {
void check_spec(const BlockOperator& a, const BlockOperator& b) {
    if (!(*a.spec() == *b.spec()))
        throw InvalidSpec("block operators over different triple specs");
}
}  // namespace

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
    check_spec(a, b);
    std::vector<BlockOperator::Block> out(a.blocks_.size());
    for (size_t e = 0; e < a.blocks_.size(); ++e)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) out[e][r][c] = a.blocks_[e][r][c] + b.blocks_[e][r][c];
    return BlockOperator(a.spec_, std::move(out));
}

BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
    check_spec(a, b);
    std::vector<BlockOperator::Block> out(a.blocks_.size());
    for (size_t e = 0; e < a.blocks_.size(); ++e)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) out[e][r][c] = a.blocks_[e][r][c] - b.blocks_[e][r][c];
    return BlockOperator(a.spec_, std::move(out));
}

BlockOperator operator-(const BlockOperator& a) {
    std::vector<BlockOperator::Block> out(a.blocks_.size());
    for (size_t e = 0; e < a.blocks_.size(); ++e)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) out[e][r][c] = -a.blocks_[e][r][c];
    return BlockOperator(a.spec_, std::move(out));
}

BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
    check_spec(a, b);
    std::vector<BlockOperator::Block> out(a.blocks_.size());
    for (size_t e = 0; e < a.blocks_.size(); ++e)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                out[e][r][c] = a.blocks_[e][r][0] * b.blocks_[e][0][c] +
                               a.blocks_[e][r][1] * b.blocks_[e][1][c];
    return BlockOperator(a.spec_, std::move(out));
}

BlockOperator operator*(const Scalar& c, const BlockOperator& a) {
    std::vector<BlockOperator::Block> out(a.blocks_.size());
    for (size_t e = 0; e < a.blocks_.size(); ++e)
        for (int r = 0; r < 2; ++r)
            for (int k = 0; k < 2; ++k) out[e][r][k] = c * a.blocks_[e][r][k];
    return BlockOperator(a.spec_, std::move(out));
}

bool operator==(const BlockOperator& a, const BlockOperator& b) {
    return *a.spec_ == *b.spec_ && a.blocks_ == b.blocks_;
}

Vec BlockOperator::vectorize() const {
    Vec v;
    v.reserve(blocks_.size() * 4);
    for (const auto& b : blocks_)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) v.push_back(b[r][c]);
    return v;
}

BlockOperator BlockOperator::from_vector(const TripleSpecPtr& spec, const Vec& v) {
    if (static_cast<int>(v.size()) != spec->edge_count() * 4)
        throw InvalidSpec("vector length does not match 4 * edge count");
    std::vector<Block> blocks(spec->edge_count());
    size_t k = 0;
    for (auto& b : blocks)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) b[r][c] = v[k++];
    return BlockOperator(spec, std::move(blocks));
}

SpectralTriple::SpectralTriple(GraphTripleSpec spec)
    : spec_(std::make_shared<const GraphTripleSpec>(std::move(spec))), dirac_(spec_) {
    for (int e = 0; e < spec_->edge_count(); ++e) {
        const Scalar& w = spec_->edges()[e].weight;
        dirac_.block(e)[0][1] = w;
        dirac_.block(e)[1][0] = w.conj();
    }
}

BlockOperator SpectralTriple::represent(const AlgebraElement& f) const {
    if (!(*f.base() == *base())) throw BaseMismatch();
    BlockOperator op(spec_);
    for (int e = 0; e < spec_->edge_count(); ++e) {
        const Edge& edge = spec_->edges()[e];
        op.block(e)[0][0] = f(edge.i);
        op.block(e)[1][1] = f(edge.j);
    }
    return op;
}

BlockOperator SpectralTriple::commutator(const AlgebraElement& f) const {
    BlockOperator rep = represent(f);
    return dirac_ * rep - rep * dirac_;
}

TripleReport verify_spectral_triple(const SpectralTriple& triple) {
    TripleReport report;
    report.self_adjoint = (triple.dirac() == triple.dirac().adjoint());

    // pi is diagonal, so faithfulness is point coverage by edge endpoints.
    const auto& spec = *triple.spec();
    std::vector<bool> covered(spec.base()->size(), false);
    for (const auto& e : spec.edges()) {
        covered[e.i - 1] = true;
        covered[e.j - 1] = true;
    }
    for (int k = 0; k < spec.base()->size(); ++k)
        if (!covered[k]) report.uncovered_points.push_back(k + 1);
    report.faithful = report.uncovered_points.empty();

    // *-homomorphism on the chi basis: pi(chi_i chi_j) = pi(chi_i)pi(chi_j)
    // and pi(chi_i*) = pi(chi_i)*.
    report.star_homomorphism = true;
    const PointSetPtr& base = spec.base();
    for (int i = 1; i <= base->size() && report.star_homomorphism; ++i) {
        AlgebraElement ci = AlgebraElement::chi(base, i);
        if (triple.represent(ci.involution()) != triple.represent(ci).adjoint())
            report.star_homomorphism = false;
        for (int j = 1; j <= base->size(); ++j) {
            AlgebraElement cj = AlgebraElement::chi(base, j);
            if (triple.represent(ci * cj) != triple.represent(ci) * triple.represent(cj)) {
                report.star_homomorphism = false;
                break;
            }
        }
    }
    return report;
}

}  // namespace ncg
