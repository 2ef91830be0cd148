#include "multiport/graph.hpp"

#include <algorithm>
#include <set>

namespace multiport {

Digraph::Digraph(std::vector<std::string> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.name < b.name; });
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
        if (edges_[i].name == edges_[i + 1].name) {
            throw Error("duplicate edge name: " + edges_[i].name);
        }
    }
    for (const auto& e : edges_) {
        if (!std::binary_search(nodes_.begin(), nodes_.end(), e.tail) ||
            !std::binary_search(nodes_.begin(), nodes_.end(), e.head)) {
            throw Error("edge " + e.name + " references an undeclared node");
        }
    }
}

std::vector<std::string> Digraph::edge_names() const {
    std::vector<std::string> names;
    names.reserve(edges_.size());
    for (const auto& e : edges_) names.push_back(e.name);
    return names;
}

const Edge& Digraph::edge(const std::string& name) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), name,
                               [](const Edge& e, const std::string& n) { return e.name < n; });
    if (it == edges_.end() || it->name != name) throw Error("no edge named " + name);
    return *it;
}

bool Digraph::has_edge(const std::string& name) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), name,
                               [](const Edge& e, const std::string& n) { return e.name < n; });
    return it != edges_.end() && it->name == name;
}

Eigen::MatrixXd Digraph::incidence() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nodes_.size()),
                                              static_cast<Eigen::Index>(edges_.size()));
    auto node_pos = [&](const std::string& n) {
        return static_cast<Eigen::Index>(
            std::lower_bound(nodes_.begin(), nodes_.end(), n) - nodes_.begin());
    };
    for (std::size_t j = 0; j < edges_.size(); ++j) {
        const Edge& e = edges_[j];
        if (e.tail == e.head) continue;  // self-loop
        a(node_pos(e.tail), static_cast<Eigen::Index>(j)) += 1.0;
        a(node_pos(e.head), static_cast<Eigen::Index>(j)) -= 1.0;
    }
    return a;
}

Digraph Digraph::disjoint_union(const Digraph& a, const Digraph& b) {
    std::vector<std::string> nodes = a.nodes_;
    nodes.insert(nodes.end(), b.nodes_.begin(), b.nodes_.end());
    {
        std::set<std::string> seen(a.nodes_.begin(), a.nodes_.end());
        for (const auto& n : b.nodes_) {
            if (seen.count(n)) throw Error("disjoint union: node name clash on " + n);
        }
    }
    std::vector<Edge> edges = a.edges_;
    edges.insert(edges.end(), b.edges_.begin(), b.edges_.end());
    return Digraph(std::move(nodes), std::move(edges));
}

Digraph Digraph::renamed(const std::string& suffix) const {
    std::vector<std::string> nodes;
    nodes.reserve(nodes_.size());
    for (const auto& n : nodes_) nodes.push_back(n + suffix);
    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    for (const auto& e : edges_) {
        edges.push_back({e.name + suffix, e.tail + suffix, e.head + suffix});
    }
    return Digraph(std::move(nodes), std::move(edges));
}

Subspace voltage_space(const Digraph& g, double tol) {
    Eigen::MatrixXd a = g.incidence();
    return Subspace::from_rows(IndexSet::voltages(g.edge_names()),
                               a.cast<Complex>(), tol);
}

Subspace current_space(const Digraph& g, double tol) {
    Eigen::MatrixXd a = g.incidence();
    Matrix rows = kernel_rows(a.cast<Complex>(), tol);
    return make_subspace_trusted(IndexSet::currents(g.edge_names()), std::move(rows));
}

PortTopology ports_contain_loop_or_cutset(const Digraph& g,
                                          const std::vector<std::string>& ports,
                                          double tol) {
    std::set<std::string> port_set(ports.begin(), ports.end());
    for (const auto& p : ports) {
        if (!g.has_edge(p)) throw Error("port edge " + p + " is not in the graph");
    }
    Eigen::MatrixXd a = g.incidence();
    std::vector<Eigen::Index> p_cols, s_cols;
    const auto& edges = g.edges();
    for (std::size_t j = 0; j < edges.size(); ++j) {
        if (port_set.count(edges[j].name)) {
            p_cols.push_back(static_cast<Eigen::Index>(j));
        } else {
            s_cols.push_back(static_cast<Eigen::Index>(j));
        }
    }
    auto cols_of = [&](const std::vector<Eigen::Index>& cols) {
        Eigen::MatrixXd m(a.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = a.col(cols[j]);
        return m;
    };
    Eigen::MatrixXd ap = cols_of(p_cols);
    // P contains a loop iff its incidence columns are dependent
    if (numeric_rank(ap.cast<Complex>(), tol) < static_cast<Eigen::Index>(p_cols.size())) {
        return PortTopology::Loop;
    }
    // P contains a cutset iff S = E - P no longer spans every component
    Eigen::MatrixXd as = cols_of(s_cols);
    if (numeric_rank(as.cast<Complex>(), tol) < numeric_rank(a.cast<Complex>(), tol)) {
        return PortTopology::Cutset;
    }
    return PortTopology::No;
}

}  // namespace multiport
