#pragma once

#include <optional>

#include "multiport/device.hpp"
#include "multiport/graph.hpp"

namespace multiport {

/// A multiport N_P: a directed graph on S (+) P whose port edges P are
/// norators, with an affine device characteristic on the internal edges S.
class Multiport {
public:
    Multiport() = default;
    /// Validates: ports are edges of the graph; devices sit on internal
    /// edges only and cover each exactly once.
    Multiport(Digraph graph, std::vector<std::string> ports,
              std::vector<Device> devices);

    const Digraph& graph() const { return graph_; }
    const std::vector<std::string>& ports() const { return ports_; }  // sorted
    const std::vector<Device>& devices() const { return devices_; }
    std::vector<std::string> internal_edges() const;

private:
    Digraph graph_;
    std::vector<std::string> ports_;
    std::vector<Device> devices_;
};

/// V^v(G) (+) V^i(G) on the full voltage/current pair set of the edges;
/// self-adjoint.
Subspace topological_space(const Multiport& m, double tol = kDefaultTol);

/// Assembled device characteristic A_SS" on the internal pair set.
AffineSpace device_characteristic(const Multiport& m, double tol = kDefaultTol);

/// All (v, i) satisfying topology and devices; nullopt when inconsistent.
std::optional<AffineSpace> solution_set(const Multiport& m, double tol = kDefaultTol);

/// The port behaviour computed by direct elimination: restriction of the
/// solution set to the port pairs, with the port currents flipped to the
/// entering convention. The brute-force oracle for the terminated-network
/// extraction path.
std::optional<AffineSpace> port_behaviour_oracle(const Multiport& m,
                                                 double tol = kDefaultTol);

/// Same graph and ports, device sources zeroed (N^hom). Idempotent.
Multiport homogeneous(const Multiport& m);

/// Same graph and ports, each device replaced by its adjoint (N^adj).
/// Edge names are preserved; terminated-network construction renames its
/// internal copy to keep the union disjoint.
Multiport adjoint_multiport(const Multiport& m, double tol = kDefaultTol);

struct RigidityVerdict {
    bool rigid = false;
    bool full_sum = false;
    bool zero_intersection = false;
    /// Full-sum failure: an internal source direction no source assignment
    /// can reach. Zero-intersection failure: an interior direction free at a
    /// fixed port condition.
    std::optional<LabeledVector> witness;
};

/// Rank tests of the two rigidity conditions on (topological space, device
/// translate): restriction-sum full and contraction-intersection zero.
RigidityVerdict rigidity(const Multiport& m, double tol = kDefaultTol);

/// The same verdict computed on the orthogonal-complement pair, whose
/// full-sum and zero-intersection roles interchange. Cross-validation path.
RigidityVerdict rigidity_dual(const Multiport& m, double tol = kDefaultTol);

}  // namespace multiport
