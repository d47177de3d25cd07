#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "zq/error.hpp"
#include "zq/intlinalg.hpp"
#include "zq/numbers.hpp"

namespace zq {

/// A plumbing tree: integer framing per vertex, unordered edges forming a
/// tree. Vertices carry stable labels that survive the blow-up/blow-down
/// rewrites, so a test can address "the same leg" across a move; fresh
/// vertices get fresh labels.
class PlumbingGraph {
public:
    PlumbingGraph(std::vector<long long> framings, std::vector<std::pair<int, int>> edges);

    int size() const { return static_cast<int>(framings_.size()); }
    const std::vector<long long>& framings() const { return framings_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<long long>& labels() const { return labels_; }

    int degree(int v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
    const std::vector<int>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    std::vector<int> degree_vector() const;

    int index_of_label(long long label) const;
    bool has_edge(int u, int v) const;

    void relabel(std::vector<long long> labels);

    /// Canonical one-line description (framings + sorted edge list); used for
    /// hashing and deterministic output.
    std::string canonical_string() const;
    std::string content_hash() const;  // FNV-1a over canonical_string

private:
    std::vector<long long> framings_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<long long> labels_;
    std::vector<std::vector<int>> adjacency_;
};

enum class VertexKind { Isolated, Leaf, Joint, Node };

struct VertexClassification {
    std::vector<VertexKind> kinds;
    std::vector<int> degrees;
    int leaves = 0;
    int joints = 0;
    int nodes = 0;
};

/// degree 1 -> leaf, degree 2 -> joint, degree >= 3 -> node.
VertexClassification classify(const PlumbingGraph& g);

/// Plumbing matrix together with its exact cached linear algebra.
class PlumbingMatrix {
public:
    explicit PlumbingMatrix(const PlumbingGraph& g);
    explicit PlumbingMatrix(IntMat entries);

    int size() const { return entries_.rows(); }
    const IntMat& entries() const { return entries_; }
    const Int& det() const { return det_; }
    Int trace() const;

    /// Exact rational inverse; throws precondition_error if det = 0.
    const RatMat& inverse() const;
    /// Adjugate from independent cofactor determinants.
    const IntMat& adj() const;

    bool negative_definite() const { return negative_definite_; }

private:
    IntMat entries_;
    Int det_;
    bool negative_definite_;
    mutable RatMat inverse_;
    mutable bool have_inverse_ = false;
    mutable IntMat adjugate_;
    mutable bool have_adjugate_ = false;
};

PlumbingMatrix matrix_of(const PlumbingGraph& g);

/// True iff -M is positive definite (all Bareiss pivots of -M positive).
bool is_negative_definite(const IntMat& m);

// --- Neumann moves -------------------------------------------------------
//
// The two local rewrite families that preserve the plumbed 3-manifold, each
// in a +1 and a -1 framed variant: splitting an edge with a new sign-framed
// vertex, and sprouting a new sign-framed leaf at a vertex. Blowing down is
// the inverse: a (+-1)-framed vertex of degree one or two is removed.

/// Edge (u,v) -> u - w - v with new vertex w framed `sign`; the framings of
/// u and v both change by +sign. Labels given; throws `inapplicable` if the
/// edge is absent or sign is not +-1.
PlumbingGraph blow_up_edge(const PlumbingGraph& g, long long label_u, long long label_v, int sign);

/// New leaf framed `sign` attached at v; framing of v changes by +sign.
PlumbingGraph blow_up_vertex(const PlumbingGraph& g, long long label_v, int sign);

/// Remove a (+-1)-framed vertex of degree <= 2, reconnecting its neighbors
/// and undoing the framing shifts. Throws `inapplicable` when the local
/// pattern does not match.
PlumbingGraph blow_down(const PlumbingGraph& g, long long label);

// --- graph file format ---------------------------------------------------
// line 1: vertex count s
// line 2: s framings
// following lines: "u v" edge pairs, 0-indexed
PlumbingGraph parse_graph(std::istream& in);
PlumbingGraph parse_graph_string(const std::string& text);
std::string format_graph(const PlumbingGraph& g);

}  // namespace zq
