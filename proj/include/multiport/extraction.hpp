#pragma once

#include <optional>
#include <variant>

#include "multiport/multiport.hpp"

namespace multiport {

/// Port behaviour B v_P - Q i_P" = s in the entering-current convention,
/// together with the affine space it came from. The constraint form is the
/// reduced row echelon form over the block column order
/// [v of the port edges..., i of the port edges...], rows 0..2|P|.
struct PortBehaviour {
    std::vector<std::string> port_edges;  // canonical order
    AffineSpace space;                    // on pair set of the ports
    Matrix b, q;
    Vector s;

    enum class Representation { Impedance, Admittance, Hybrid, General };
    Representation representation = Representation::General;
    /// For Hybrid: the edges whose voltage is an input (the P1 block).
    std::vector<std::string> hybrid_voltage_inputs;

    Eigen::Index rows() const { return b.rows(); }
};

/// Build the canonical form from the affine port behaviour.
PortBehaviour make_port_behaviour(const std::vector<std::string>& port_edges,
                                  const AffineSpace& space, double tol = kDefaultTol);

/// A portless network: the multiport terminated by its adjoint copy through
/// a gyrator or ideal transformer, gyrator sources optionally shifted.
struct TerminatedNetwork {
    Digraph graph;
    std::vector<Device> devices;
};

enum class Termination { Gyrator, Transformer };

struct Excitation {
    enum class Kind { VoltageShift, CurrentShift };
    Kind kind = Kind::VoltageShift;
    std::size_t port = 0;  // index into the sorted port list
};

/// [N_P (+) N^adj_P~] routed through the termination. With an excitation the
/// multiport side is source-zeroed (N^hom) and the selected gyrator row is
/// shifted by one unit. Transformers take no excitation.
TerminatedNetwork build_large_network(const Multiport& m, Termination termination,
                                      std::optional<Excitation> excitation,
                                      double tol = kDefaultTol);

using SolveStatus = SystemStatus;

struct NetworkSolution {
    SolveStatus status = SolveStatus::Inconsistent;
    LabeledVector values;  // meaningful iff status == Unique
};

/// Solve the square topology+device system of a portless network, with
/// rank-based classification of the failure modes.
NetworkSolution solve_unique(const TerminatedNetwork& n, double tol = kDefaultTol);

struct NotRigid {
    SolveStatus reason = SolveStatus::NonUnique;
};

using ExtractionResult = std::variant<PortBehaviour, NotRigid>;

/// Generalized Thevenin-Norton: one solve of the gyrator-terminated network
/// with internal sources active, then 2|P| unit-shift solves on the
/// homogeneous network sharing the same coefficient matrix; the results span
/// the behaviour translate.
ExtractionResult extract_port_behaviour(const Multiport& m, double tol = kDefaultTol);

const char* representation_name(PortBehaviour::Representation r);

}  // namespace multiport
