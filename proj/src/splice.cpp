#include "zq/splice.hpp"

#include <map>
#include <sstream>

#include "zq/zhat.hpp"

namespace zq {

namespace {

/// Determinants of negated branches, one per directed edge. D(u,w) is the
/// determinant of -M restricted to the subtree rooted at w when the edge
/// back to u is cut; E(u,w) is the same subtree with w itself removed.
/// Computed leaves-inward with the tree expansion
///   D(u,w) = (-m_w) prod_x D(w,x) - sum_x E(w,x) prod_{x' != x} D(w,x')
/// so every directed edge costs one pass and long legs stay quadratic-free.
class BranchDeterminants {
public:
    explicit BranchDeterminants(const PlumbingGraph& g) : g_(g) {}

    /// u = -1 roots the whole tree at w.
    const Int& subtree(int u, int w) {
        auto key = std::make_pair(u, w);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::vector<int> children;
        for (int x : g_.neighbors(w))
            if (x != u) children.push_back(x);
        std::vector<Int> d(children.size());
        for (std::size_t i = 0; i < children.size(); ++i) d[i] = subtree(w, children[i]);
        std::vector<Int> prefix(children.size() + 1), suffix(children.size() + 1);
        prefix[0] = 1;
        for (std::size_t i = 0; i < children.size(); ++i) prefix[i + 1] = prefix[i] * d[i];
        suffix[children.size()] = 1;
        for (std::size_t i = children.size(); i-- > 0;) suffix[i] = suffix[i + 1] * d[i];
        Int det = make_int(-g_.framings()[static_cast<std::size_t>(w)]) * prefix[children.size()];
        for (std::size_t i = 0; i < children.size(); ++i) {
            Int removed = removed_root(w, children[i]);
            det -= removed * prefix[i] * suffix[i + 1];
        }
        return memo_.emplace(key, std::move(det)).first->second;
    }

private:
    Int removed_root(int u, int w) {  // det of the branch at w, with w deleted
        Int prod = 1;
        for (int y : g_.neighbors(w))
            if (y != u) prod *= subtree(w, y);
        return prod;
    }

    const PlumbingGraph& g_;
    std::map<std::pair<int, int>, Int> memo_;
};

}  // namespace

MaximalSpliceDiagram maximal_splice(const PlumbingGraph& g) {
    BranchDeterminants dets(g);
    MaximalSpliceDiagram out;
    out.vertex_count = g.size();
    for (const auto& [u, v] : g.edges()) {
        MaximalSpliceDiagram::EdgeWeights w;
        w.u = u;
        w.v = v;
        w.at_u = dets.subtree(u, v);  // branch on the far side of u
        w.at_v = dets.subtree(v, u);
        out.edges.push_back(std::move(w));
    }
    return out;
}

std::vector<Int> SpliceDiagram::node_weights(int node_position) const {
    std::vector<Int> out;
    for (const auto& e : edges) {
        if (e.a == node_position && e.at_a) out.push_back(*e.at_a);
        if (e.b == node_position && e.at_b) out.push_back(*e.at_b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SpliceDiagram splice_of(const PlumbingGraph& g) {
    MaximalSpliceDiagram maximal = maximal_splice(g);
    VertexClassification c = classify(g);
    SpliceDiagram out;
    std::vector<int> position(static_cast<std::size_t>(g.size()), -1);
    for (int v = 0; v < g.size(); ++v) {
        if (c.kinds[static_cast<std::size_t>(v)] == VertexKind::Joint) continue;
        position[static_cast<std::size_t>(v)] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(v);
        out.kinds.push_back(c.kinds[static_cast<std::size_t>(v)]);
    }
    for (std::size_t p = 0; p < out.vertices.size(); ++p) {
        int a = out.vertices[p];
        for (int first : g.neighbors(a)) {
            // walk through joints until the next kept vertex
            int prev = a, cur = first;
            while (c.kinds[static_cast<std::size_t>(cur)] == VertexKind::Joint) {
                int next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
                prev = cur;
                cur = next;
            }
            if (a > cur) continue;  // record each contracted edge once
            SpliceDiagram::Edge e;
            e.a = static_cast<int>(p);
            e.b = position[static_cast<std::size_t>(cur)];
            if (c.kinds[static_cast<std::size_t>(a)] == VertexKind::Node)
                e.at_a = maximal.find(a, first)->u == a ? maximal.find(a, first)->at_u
                                                        : maximal.find(a, first)->at_v;
            if (c.kinds[static_cast<std::size_t>(cur)] == VertexKind::Node)
                e.at_b = maximal.find(prev, cur)->u == cur ? maximal.find(prev, cur)->at_u
                                                           : maximal.find(prev, cur)->at_v;
            out.edges.push_back(std::move(e));
        }
    }
    return out;
}

std::string render_splice(const SpliceDiagram& d) {
    std::ostringstream out;
    auto kind_name = [](VertexKind k) {
        switch (k) {
            case VertexKind::Node: return "node";
            case VertexKind::Leaf: return "leaf";
            case VertexKind::Joint: return "joint";
            default: return "vertex";
        }
    };
    for (std::size_t p = 0; p < d.vertices.size(); ++p) {
        out << kind_name(d.kinds[p]) << " v" << d.vertices[p];
        bool first = true;
        for (const auto& e : d.edges) {
            if (e.a != static_cast<int>(p) && e.b != static_cast<int>(p)) continue;
            int other = e.a == static_cast<int>(p) ? e.b : e.a;
            const auto& w = e.a == static_cast<int>(p) ? e.at_a : e.at_b;
            out << (first ? ":  " : ",  ");
            first = false;
            out << "--";
            if (w) out << "(" << w->get_str() << ")";
            out << "-- v" << d.vertices[static_cast<std::size_t>(other)];
        }
        out << "\n";
    }
    return out.str();
}

AdjugateCheck verify_adjugate(const PlumbingGraph& g) {
    MaximalSpliceDiagram maximal = maximal_splice(g);
    PlumbingMatrix m = matrix_of(g);
    const RatMat& inv = m.inverse();
    Int habs = abs(m.det());
    int s = g.size();

    // weight at (vertex, incident edge index into maximal.edges)
    auto weight_at = [&](int v, const MaximalSpliceDiagram::EdgeWeights& e) -> const Int& {
        return e.u == v ? e.at_u : e.at_v;
    };

    // parents for the unique tree paths, rooted at each a in turn
    AdjugateCheck result;
    for (int a = 0; a < s; ++a) {
        std::vector<int> parent(static_cast<std::size_t>(s), -2);
        std::vector<int> queue{a};
        parent[static_cast<std::size_t>(a)] = -1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int w : g.neighbors(v))
                if (parent[static_cast<std::size_t>(w)] == -2) {
                    parent[static_cast<std::size_t>(w)] = v;
                    queue.push_back(w);
                }
        }
        for (int b = 0; b < s; ++b) {
            std::vector<char> on_path(static_cast<std::size_t>(s), 0);
            for (int v = b; v != -1; v = parent[static_cast<std::size_t>(v)]) on_path[static_cast<std::size_t>(v)] = 1;
            Int product = 1;
            for (const auto& e : maximal.edges) {
                bool u_on = on_path[static_cast<std::size_t>(e.u)];
                bool v_on = on_path[static_cast<std::size_t>(e.v)];
                if (u_on && v_on) continue;  // the edge lies on the path
                if (u_on) product *= weight_at(e.u, e);
                if (v_on) product *= weight_at(e.v, e);
            }
            // N = |det M| * (-M^{-1}); the entries are integers exactly
            Rat expected = -Rat(habs) * inv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            expected.canonicalize();
            if (expected.get_den() != 1 || expected.get_num() != product) {
                result.ok = false;
                result.bad_a = a;
                result.bad_b = b;
                result.expected = expected.get_num();
                result.got = product;
                return result;
            }
        }
    }
    return result;
}

Rat casson_walker(const PlumbingGraph& g) {
    PlumbingMatrix m = matrix_of(g);
    if (m.det() == 0) throw precondition_error("singular_matrix", "Casson-Walker needs a rational homology sphere");
    const RatMat& inv = m.inverse();
    int s = g.size();
    Rat acc(0);
    for (int v = 0; v < s; ++v) {
        acc += Rat(make_int(g.framings()[static_cast<std::size_t>(v)]));
        acc += Rat(make_int(2 - g.degree(v))) * inv[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)];
    }
    acc += Rat(make_int(3LL * s));
    Rat lambda = -Rat(abs(m.det())) * acc / 24;
    lambda.canonicalize();
    return lambda;
}

QSeries normalized_z0(const PlumbingGraph& g, const Rat& order) {
    Rat lambda = casson_walker(g);
    Int habs = abs(matrix_of(g).det());
    Rat internal_order = (order + 6 * lambda) / Rat(habs);
    QSeries base = z0(g, internal_order);
    return base.scale_exponents(Rat(habs)).shifted(-6 * lambda);
}

}  // namespace zq
