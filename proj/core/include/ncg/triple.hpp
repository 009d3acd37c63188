#pragma once

// Finite spectral triples on weighted graphs: H is a direct sum of C^2
// edge spaces, pi is the diagonal endpoint representation and D flips
// each edge block with the edge weight.

#include <array>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/linalg.hpp"

namespace ncg {

struct InvalidSpec : std::invalid_argument {
    explicit InvalidSpec(const std::string& what) : std::invalid_argument(what) {}
};

struct Edge {
    int i = 0;  // 1-based endpoints, i < j
    int j = 0;
    Scalar weight{1};
};

class GraphTripleSpec {
public:
    GraphTripleSpec(PointSetPtr base, std::vector<Edge> edges);

    const PointSetPtr& base() const { return base_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    friend bool operator==(const GraphTripleSpec& a, const GraphTripleSpec& b) {
        return *a.base_ == *b.base_ && a.edges_.size() == b.edges_.size() &&
               std::equal(a.edges_.begin(), a.edges_.end(), b.edges_.begin(),
                          [](const Edge& x, const Edge& y) {
                              return x.i == y.i && x.j == y.j && x.weight == y.weight;
                          });
    }

    // Parses the triple spec file format:
    //   {"points": ["1","2","3"], "edges": [{"i":1,"j":2,"weight":"1"}, ...]}
    // Endpoints may be 1-based indices or point labels; weight defaults to 1.
    static GraphTripleSpec from_json_text(const std::string& text);

    // The triangle on 3 points with unit weights (named "three-point").
    static GraphTripleSpec builtin(const std::string& name);

private:
    PointSetPtr base_;
    std::vector<Edge> edges_;
};

using TripleSpecPtr = std::shared_ptr<const GraphTripleSpec>;

// 2x2 block per edge; the exact matrix form of everything represented on H.
class BlockOperator {
public:
    using Block = std::array<std::array<Scalar, 2>, 2>;

    explicit BlockOperator(TripleSpecPtr spec);
    BlockOperator(TripleSpecPtr spec, std::vector<Block> blocks);

    const TripleSpecPtr& spec() const { return spec_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    Block& block(int e) { return blocks_[e]; }
    const Block& block(int e) const { return blocks_[e]; }

    bool is_zero() const;
    BlockOperator adjoint() const;

    friend BlockOperator operator+(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator operator-(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator operator-(const BlockOperator& a);
    friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator operator*(const Scalar& c, const BlockOperator& a);

    friend bool operator==(const BlockOperator& a, const BlockOperator& b);
    friend bool operator!=(const BlockOperator& a, const BlockOperator& b) {
        return !(a == b);
    }

    // Flattened entries (4 per edge, row-major), the coordinate vector
    // used by all form-space linear algebra.
    Vec vectorize() const;
    static BlockOperator from_vector(const TripleSpecPtr& spec, const Vec& v);

private:
    TripleSpecPtr spec_;
    std::vector<Block> blocks_;
};

class SpectralTriple {
public:
    explicit SpectralTriple(GraphTripleSpec spec);

    const TripleSpecPtr& spec() const { return spec_; }
    const PointSetPtr& base() const { return spec_->base(); }

    const BlockOperator& dirac() const { return dirac_; }
    BlockOperator represent(const AlgebraElement& f) const;
    BlockOperator commutator(const AlgebraElement& f) const;  // [D, f]

private:
    TripleSpecPtr spec_;
    BlockOperator dirac_;
};

using SpectralTriplePtr = std::shared_ptr<const SpectralTriple>;

struct TripleReport {
    bool self_adjoint = false;
    bool faithful = false;
    std::vector<int> uncovered_points;  // witnesses for unfaithfulness
    bool star_homomorphism = false;
    // Compactness of the resolvent and boundedness of [D,a] hold
    // automatically in finite dimension; recorded for the report.
    bool finite_dimensional = true;

    bool pass() const { return self_adjoint && faithful && star_homomorphism; }
};

TripleReport verify_spectral_triple(const SpectralTriple& triple);

}  // namespace ncg
