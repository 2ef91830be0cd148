#include "multiport/multiport.hpp"

#include <algorithm>
#include <set>

namespace multiport {

Multiport::Multiport(Digraph graph, std::vector<std::string> ports,
                     std::vector<Device> devices)
    : graph_(std::move(graph)), ports_(std::move(ports)), devices_(std::move(devices)) {
    std::sort(ports_.begin(), ports_.end());
    if (std::adjacent_find(ports_.begin(), ports_.end()) != ports_.end()) {
        throw Error("port declared twice");
    }
    for (const auto& p : ports_) {
        if (!graph_.has_edge(p)) throw Error("port " + p + " is not an edge");
    }
    std::set<std::string> port_set(ports_.begin(), ports_.end());
    for (const auto& d : devices_) {
        validate(d);
        for (const auto& e : d.edges) {
            if (port_set.count(e)) {
                throw Error("port edge " + e + " cannot carry a device");
            }
        }
    }
    // partition check happens against the internal edge list
    assemble_characteristic(devices_, internal_edges());
}

std::vector<std::string> Multiport::internal_edges() const {
    std::set<std::string> port_set(ports_.begin(), ports_.end());
    std::vector<std::string> internal;
    for (const auto& e : graph_.edge_names()) {
        if (!port_set.count(e)) internal.push_back(e);
    }
    return internal;
}

Subspace topological_space(const Multiport& m, double tol) {
    Subspace v = voltage_space(m.graph(), tol);
    Subspace i = current_space(m.graph(), tol);
    IndexSet all = v.index().set_union(i.index());
    Matrix basis = Matrix::Zero(v.dim() + i.dim(), static_cast<Eigen::Index>(all.size()));
    auto place = [&](const Subspace& s, Eigen::Index row0) {
        for (std::size_t j = 0; j < s.index().size(); ++j) {
            basis.block(row0, static_cast<Eigen::Index>(*all.position(s.index().at(j))),
                        s.dim(), 1) = s.basis().col(static_cast<Eigen::Index>(j));
        }
    };
    place(v, 0);
    place(i, v.dim());
    return make_subspace_trusted(all, std::move(basis));
}

AffineSpace device_characteristic(const Multiport& m, double tol) {
    return assemble_characteristic(m.devices(), m.internal_edges(), tol);
}

std::optional<AffineSpace> solution_set(const Multiport& m, double tol) {
    AffineSpace topo = AffineSpace::subspace(topological_space(m, tol));
    AffineSpace dev = device_characteristic(m, tol);
    // extended intersection pads the missing port coordinates with F_PP"
    return intersect_affine(topo, dev, tol);
}

std::optional<AffineSpace> port_behaviour_oracle(const Multiport& m, double tol) {
    auto sols = solution_set(m, tol);
    if (!sols) return std::nullopt;
    AffineSpace at_ports = restriction(*sols, IndexSet::pair_set(m.ports()), tol);
    return sign_flip(at_ports, IndexSet::currents(m.ports()));
}

Multiport homogeneous(const Multiport& m) {
    std::vector<Device> devs;
    devs.reserve(m.devices().size());
    for (const auto& d : m.devices()) devs.push_back(source_zeroed(d));
    return Multiport(m.graph(), m.ports(), std::move(devs));
}

Multiport adjoint_multiport(const Multiport& m, double tol) {
    std::vector<Device> devs;
    devs.reserve(m.devices().size());
    for (const auto& d : m.devices()) devs.push_back(device_adjoint(d, tol));
    return Multiport(m.graph(), m.ports(), std::move(devs));
}

namespace {

RigidityVerdict verdict_from_pair(const Subspace& top, const Subspace& dev,
                                  const IndexSet& internal, double tol) {
    RigidityVerdict v;
    Subspace reach = sum(restriction(top, internal, tol), dev, tol);
    v.full_sum = reach.dim() == static_cast<Eigen::Index>(internal.size());
    Subspace interior = intersection(contraction(top, internal, tol), dev, tol);
    v.zero_intersection = interior.dim() == 0;
    v.rigid = v.full_sum && v.zero_intersection;
    if (!v.full_sum) {
        Subspace unreachable = orthogonal_complement(reach, tol);
        if (unreachable.dim() > 0) {
            v.witness = LabeledVector{internal, unreachable.basis().row(0).transpose()};
        }
    } else if (!v.zero_intersection) {
        v.witness = LabeledVector{internal, interior.basis().row(0).transpose()};
    }
    return v;
}

}  // namespace

RigidityVerdict rigidity(const Multiport& m, double tol) {
    IndexSet internal = IndexSet::pair_set(m.internal_edges());
    return verdict_from_pair(topological_space(m, tol),
                             device_characteristic(m, tol).translate(), internal, tol);
}

RigidityVerdict rigidity_dual(const Multiport& m, double tol) {
    IndexSet internal = IndexSet::pair_set(m.internal_edges());
    Subspace top_dual = orthogonal_complement(topological_space(m, tol), tol);
    Subspace dev_dual =
        orthogonal_complement(device_characteristic(m, tol).translate(), tol);
    RigidityVerdict dual = verdict_from_pair(top_dual, dev_dual, internal, tol);
    // the complement pair swaps the two properties (Theorem 4.1 part 3)
    RigidityVerdict v;
    v.full_sum = dual.zero_intersection;
    v.zero_intersection = dual.full_sum;
    v.rigid = v.full_sum && v.zero_intersection;
    v.witness = dual.witness;
    return v;
}

}  // namespace multiport
