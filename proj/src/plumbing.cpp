#include "zq/plumbing.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace zq {

PlumbingGraph::PlumbingGraph(std::vector<long long> framings, std::vector<std::pair<int, int>> edges)
    : framings_(std::move(framings)), edges_(std::move(edges)) {
    int s = static_cast<int>(framings_.size());
    if (s < 1) throw input_error("plumbing graph needs at least one vertex");
    if (static_cast<int>(edges_.size()) != s - 1)
        throw input_error("plumbing graph must be a tree: expected " + std::to_string(s - 1) +
                          " edges, got " + std::to_string(edges_.size()));
    adjacency_.assign(static_cast<std::size_t>(s), {});
    for (auto& [u, v] : edges_) {
        if (u < 0 || v < 0 || u >= s || v >= s) throw input_error("edge endpoint out of range");
        if (u == v) throw input_error("self-loops are not allowed");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw input_error("multi-edges are not allowed");
    for (const auto& [u, v] : edges_) {
        adjacency_[static_cast<std::size_t>(u)].push_back(v);
        adjacency_[static_cast<std::size_t>(v)].push_back(u);
    }
    // connectivity: s-1 edges + connected = tree
    std::vector<char> seen(static_cast<std::size_t>(s), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adjacency_[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != s) throw input_error("plumbing graph must be connected");
    labels_.resize(static_cast<std::size_t>(s));
    std::iota(labels_.begin(), labels_.end(), 0LL);
}

std::vector<int> PlumbingGraph::degree_vector() const {
    std::vector<int> d(static_cast<std::size_t>(size()));
    for (int v = 0; v < size(); ++v) d[static_cast<std::size_t>(v)] = degree(v);
    return d;
}

int PlumbingGraph::index_of_label(long long label) const {
    for (int v = 0; v < size(); ++v)
        if (labels_[static_cast<std::size_t>(v)] == label) return v;
    throw precondition_error("inapplicable", "no vertex with label " + std::to_string(label));
}

bool PlumbingGraph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

void PlumbingGraph::relabel(std::vector<long long> labels) {
    if (labels.size() != framings_.size()) throw input_error("relabel: size mismatch");
    labels_ = std::move(labels);
}

std::string PlumbingGraph::canonical_string() const {
    std::ostringstream out;
    out << size() << ";";
    for (long long m : framings_) out << m << ",";
    out << ";";
    for (const auto& [u, v] : edges_) out << u << "-" << v << ",";
    return out.str();
}

std::string PlumbingGraph::content_hash() const {
    std::string s = canonical_string();
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

VertexClassification classify(const PlumbingGraph& g) {
    VertexClassification c;
    c.degrees = g.degree_vector();
    c.kinds.resize(static_cast<std::size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v) {
        int d = c.degrees[static_cast<std::size_t>(v)];
        VertexKind k = d == 0   ? VertexKind::Isolated
                       : d == 1 ? VertexKind::Leaf
                       : d == 2 ? VertexKind::Joint
                                : VertexKind::Node;
        c.kinds[static_cast<std::size_t>(v)] = k;
        if (k == VertexKind::Leaf) ++c.leaves;
        if (k == VertexKind::Joint) ++c.joints;
        if (k == VertexKind::Node) ++c.nodes;
    }
    return c;
}

PlumbingMatrix::PlumbingMatrix(const PlumbingGraph& g) : PlumbingMatrix([&] {
    int s = g.size();
    IntMat m(s, s);
    for (int v = 0; v < s; ++v) m(v, v) = make_int(g.framings()[static_cast<std::size_t>(v)]);
    for (const auto& [u, v] : g.edges()) {
        m(u, v) = 1;
        m(v, u) = 1;
    }
    return m;
}()) {}

PlumbingMatrix::PlumbingMatrix(IntMat entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw input_error("plumbing matrix must be square");
    det_ = bareiss_det(entries_);
    negative_definite_ = is_negative_definite(entries_);
}

Int PlumbingMatrix::trace() const {
    Int t = 0;
    for (int i = 0; i < size(); ++i) t += entries_(i, i);
    return t;
}

const RatMat& PlumbingMatrix::inverse() const {
    if (!have_inverse_) {
        if (det_ == 0) throw precondition_error("singular_matrix", "plumbing matrix is singular");
        inverse_ = rat_inverse(entries_);
        have_inverse_ = true;
    }
    return inverse_;
}

const IntMat& PlumbingMatrix::adj() const {
    if (!have_adjugate_) {
        adjugate_ = adjugate(entries_);
        have_adjugate_ = true;
    }
    return adjugate_;
}

PlumbingMatrix matrix_of(const PlumbingGraph& g) { return PlumbingMatrix(g); }

bool is_negative_definite(const IntMat& m) {
    if (m.rows() != m.cols()) return false;
    IntMat neg(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) neg(i, j) = -m(i, j);
    auto minors = leading_principal_minors(std::move(neg));
    if (!minors) return false;
    for (const Int& d : *minors)
        if (d <= 0) return false;
    return true;
}

namespace {

long long fresh_label(const PlumbingGraph& g) {
    long long mx = -1;
    for (long long l : g.labels()) mx = std::max(mx, l);
    return mx + 1;
}

void require_sign(int sign) {
    if (sign != 1 && sign != -1)
        throw precondition_error("inapplicable", "framing of the new vertex must be +1 or -1");
}

}  // namespace

PlumbingGraph blow_up_edge(const PlumbingGraph& g, long long label_u, long long label_v, int sign) {
    require_sign(sign);
    int u = g.index_of_label(label_u);
    int v = g.index_of_label(label_v);
    if (!g.has_edge(u, v))
        throw precondition_error("inapplicable", "no edge between the given vertices");
    std::vector<long long> framings = g.framings();
    framings[static_cast<std::size_t>(u)] += sign;
    framings[static_cast<std::size_t>(v)] += sign;
    framings.push_back(sign);
    int w = g.size();
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : g.edges())
        if (!(a == std::min(u, v) && b == std::max(u, v))) edges.emplace_back(a, b);
    edges.emplace_back(u, w);
    edges.emplace_back(v, w);
    PlumbingGraph out(std::move(framings), std::move(edges));
    std::vector<long long> labels = g.labels();
    labels.push_back(fresh_label(g));
    out.relabel(std::move(labels));
    return out;
}

PlumbingGraph blow_up_vertex(const PlumbingGraph& g, long long label_v, int sign) {
    require_sign(sign);
    int v = g.index_of_label(label_v);
    std::vector<long long> framings = g.framings();
    framings[static_cast<std::size_t>(v)] += sign;
    framings.push_back(sign);
    std::vector<std::pair<int, int>> edges = g.edges();
    edges.emplace_back(v, g.size());
    PlumbingGraph out(std::move(framings), std::move(edges));
    std::vector<long long> labels = g.labels();
    labels.push_back(fresh_label(g));
    out.relabel(std::move(labels));
    return out;
}

PlumbingGraph blow_down(const PlumbingGraph& g, long long label) {
    int u = g.index_of_label(label);
    long long f = g.framings()[static_cast<std::size_t>(u)];
    if (f != 1 && f != -1)
        throw precondition_error("inapplicable",
                                 "blow-down needs framing +1 or -1, vertex has " + std::to_string(f));
    int deg = g.degree(u);
    if (deg > 2) throw precondition_error("inapplicable", "blow-down needs degree <= 2");
    if (g.size() == 1) throw precondition_error("inapplicable", "cannot blow down the last vertex");
    if (deg == 0) throw precondition_error("inapplicable", "isolated vertex in a connected graph");

    auto nbrs = g.neighbors(u);
    std::vector<long long> framings;
    std::vector<long long> labels;
    std::vector<int> remap(static_cast<std::size_t>(g.size()), -1);
    for (int v = 0; v < g.size(); ++v) {
        if (v == u) continue;
        remap[static_cast<std::size_t>(v)] = static_cast<int>(framings.size());
        long long fv = g.framings()[static_cast<std::size_t>(v)];
        bool adjacent = std::find(nbrs.begin(), nbrs.end(), v) != nbrs.end();
        framings.push_back(adjacent ? fv - f : fv);
        labels.push_back(g.labels()[static_cast<std::size_t>(v)]);
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : g.edges()) {
        if (a == u || b == u) continue;
        edges.emplace_back(remap[static_cast<std::size_t>(a)], remap[static_cast<std::size_t>(b)]);
    }
    if (deg == 2) {
        int a = remap[static_cast<std::size_t>(nbrs[0])];
        int b = remap[static_cast<std::size_t>(nbrs[1])];
        edges.emplace_back(a, b);
    }
    PlumbingGraph out(std::move(framings), std::move(edges));
    out.relabel(std::move(labels));
    return out;
}

PlumbingGraph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> std::string {
        while (std::getline(in, line)) {
            ++lineno;
            auto pos = line.find('#');
            if (pos != std::string::npos) line = line.substr(0, pos);
            bool blank = line.find_first_not_of(" \t\r\n") == std::string::npos;
            if (!blank) return line;
        }
        return {};
    };
    std::string first = next_line();
    if (first.empty()) throw input_error("graph file: missing vertex count (line 1)");
    std::istringstream fs(first);
    int s = 0;
    if (!(fs >> s) || s < 1)
        throw input_error("graph file line " + std::to_string(lineno) + ": bad vertex count");
    std::string second = next_line();
    std::istringstream ms(second);
    std::vector<long long> framings(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i)
        if (!(ms >> framings[static_cast<std::size_t>(i)]))
            throw input_error("graph file line " + std::to_string(lineno) + ": expected " +
                              std::to_string(s) + " framings");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < s - 1; ++i) {
        std::string e = next_line();
        if (e.empty())
            throw input_error("graph file: expected " + std::to_string(s - 1) + " edges, got " +
                              std::to_string(i));
        std::istringstream es(e);
        int u = 0, v = 0;
        if (!(es >> u >> v))
            throw input_error("graph file line " + std::to_string(lineno) + ": expected 'u v'");
        edges.emplace_back(u, v);
    }
    return PlumbingGraph(std::move(framings), std::move(edges));
}

PlumbingGraph parse_graph_string(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

std::string format_graph(const PlumbingGraph& g) {
    std::ostringstream out;
    out << g.size() << "\n";
    for (int v = 0; v < g.size(); ++v) {
        if (v) out << " ";
        out << g.framings()[static_cast<std::size_t>(v)];
    }
    out << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

}  // namespace zq
