#pragma once

#include <string>
#include <vector>

#include "multiport/subspace.hpp"

namespace multiport {

struct Edge {
    std::string name;
    std::string tail;
    std::string head;
};

/// Directed multigraph; self-loops and parallel edges permitted.
/// Edges are kept sorted by name so column orderings are canonical.
class Digraph {
public:
    Digraph() = default;
    Digraph(std::vector<std::string> nodes, std::vector<Edge> edges);

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::vector<std::string> edge_names() const;
    const Edge& edge(const std::string& name) const;
    bool has_edge(const std::string& name) const;

    /// Node-edge incidence matrix, +1 at the tail, -1 at the head
    /// (self-loops contribute a zero column). Rows follow nodes(),
    /// columns follow edges().
    Eigen::MatrixXd incidence() const;

    /// Disjoint union of two graphs (node and edge names must not clash).
    static Digraph disjoint_union(const Digraph& a, const Digraph& b);
    /// Copy with every node and edge name suffixed.
    Digraph renamed(const std::string& suffix) const;

private:
    std::vector<std::string> nodes_;  // sorted, unique
    std::vector<Edge> edges_;         // sorted by name, names unique
};

/// KVL space V^v(G) on the voltage labels of E(G): the image of node
/// potentials under the incidence transpose. dim = |nodes| - #components.
Subspace voltage_space(const Digraph& g, double tol = kDefaultTol);

/// KCL space V^i(G) on the current labels of E(G): the null space of the
/// incidence matrix. Equals the orthogonal complement of the voltage space
/// after relabeling (Tellegen).
Subspace current_space(const Digraph& g, double tol = kDefaultTol);

enum class PortTopology { No, Loop, Cutset };

/// Reports whether the edge set P contains a circuit or a cutset of g.
/// Checked via incidence ranks: E \ P contains a spanning forest iff P has
/// no cutset; P has full column rank iff P contains no loop.
PortTopology ports_contain_loop_or_cutset(const Digraph& g,
                                          const std::vector<std::string>& ports,
                                          double tol = kDefaultTol);

}  // namespace multiport
