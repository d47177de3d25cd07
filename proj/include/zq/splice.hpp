#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zq/plumbing.hpp"
#include "zq/qseries.hpp"

namespace zq {

/// Splice data of a plumbing tree. The weight stored at an edge end (v,e)
/// is the determinant of the negated plumbing matrix of the branch hanging
/// off v along e (the component of the cut edge on the far side of v); for
/// negative-definite trees all weights are positive. The determinant of the
/// empty branch is 1.
struct MaximalSpliceDiagram {
    struct EdgeWeights {
        int u, v;       // edge endpoints (vertex indices)
        Int at_u, at_v; // weight stored near u resp. v
    };
    int vertex_count = 0;
    std::vector<EdgeWeights> edges;

    const EdgeWeights* find(int u, int v) const {
        for (const auto& e : edges)
            if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return &e;
        return nullptr;
    }
};

MaximalSpliceDiagram maximal_splice(const PlumbingGraph& g);

/// The contracted diagram on nodes and leaves only: joints are absorbed
/// into the connecting edges and weights survive only at node ends.
struct SpliceDiagram {
    struct Edge {
        int a, b;                    // indices into `vertices`
        std::optional<Int> at_a, at_b;  // present iff that end is a node
    };
    std::vector<int> vertices;  // original vertex indices (nodes and leaves)
    std::vector<VertexKind> kinds;
    std::vector<Edge> edges;

    /// Weights around a node, sorted ascending (for a star graph these are
    /// the multiplicities of the singular fibers).
    std::vector<Int> node_weights(int node_position) const;
};

SpliceDiagram splice_of(const PlumbingGraph& g);

/// Text rendering of the splice diagram (adjacency list with weights).
std::string render_splice(const SpliceDiagram& d);

/// Edge-by-edge witness check of N = -adj(M): N_ab is the product, over the
/// vertices on the a-b path, of the weights on their off-path edges. Both
/// sides are computed independently (path products vs cofactor adjugate).
struct AdjugateCheck {
    bool ok = true;
    int bad_a = -1, bad_b = -1;  // first violating pair if any
    Int expected, got;
};

AdjugateCheck verify_adjugate(const PlumbingGraph& g);

/// Casson-Walker invariant of the plumbed rational homology sphere:
/// -24/|H| * lambda = sum_v m_v + 3s + sum_v (2 - deg v) * (M^{-1})_vv.
Rat casson_walker(const PlumbingGraph& g);

/// q^{-6 lambda} Z_0(q^{|H|}), the splice-diagram invariant normalization.
/// `order` is in exponent units of the output series.
QSeries normalized_z0(const PlumbingGraph& g, const Rat& order);

}  // namespace zq
