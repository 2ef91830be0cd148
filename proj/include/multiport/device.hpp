#pragma once

#include <variant>
#include <vector>

#include "multiport/subspace.hpp"

namespace multiport {

// Device models. Each sits on an ordered list of edges; the order carries the
// roles (controlling edge, gyrator blocks, hybrid partition).

struct Impedance {
    Matrix z;  // v = Z i
};
struct Admittance {
    Matrix y;  // i = Y v
};
/// Mixed immittance form on a partition S1|S2 of the edges (|S1| = split):
/// i_{S1} = g11 v_{S1} + h12 i_{S2},  v_{S2} = h21 v_{S1} + r22 i_{S2}.
struct Hybrid {
    std::size_t split = 0;
    Matrix g11, h12, h21, r22;
};
struct VSource {
    Vector value;  // v = E, i free
};
struct ISource {
    Vector value;  // i = J, v free
};
struct Norator {};   // no constraints
struct Nullator {};  // v = 0, i = 0
/// 2k edges in two blocks (A = first k, B = last k):
/// v_A = -R i_B, v_B = R i_A with R positive diagonal.
struct Gyrator {
    Eigen::VectorXd r;
};
/// 1:1 pairs (A = first k, B = last k): v_A = v_B, i_A = -i_B.
struct IdealTransformer {};
/// Two-edge controlled sources; `control` picks the controlling edge.
struct ControlledSource {
    enum class Type { CCVS, VCCS, CCCS, VCVS };
    Type type = Type::CCVS;
    Complex gain;
    int control = 0;  // 0 or 1
};
/// Solution set of B v - Q i = s with independent rows of (B | -Q).
struct GenericAffine {
    Matrix b, q;
    Vector s;
};

using DeviceModel =
    std::variant<Impedance, Admittance, Hybrid, VSource, ISource, Norator, Nullator,
                 Gyrator, IdealTransformer, ControlledSource, GenericAffine>;

struct Device {
    std::vector<std::string> edges;
    DeviceModel model;
};

/// Constraint rows of a device over its local block column order
/// [v(edges[0]), ..., v(edges[k-1]), i(edges[0]), ..., i(edges[k-1])].
struct DeviceRows {
    Matrix lhs;
    Vector rhs;
};

/// Validates shape and parameter invariants; throws Error when malformed.
void validate(const Device& d);

DeviceRows constraint_rows(const Device& d);

/// The device characteristic as an affine space on the voltage/current pair
/// set of its edges.
AffineSpace characteristic(const Device& d, double tol = kDefaultTol);

/// Closed-form adjoint device: characteristic(device_adjoint(d)) equals
/// adjoint(characteristic(d)). Sources keep their kind with zero value;
/// controlled sources reverse the direction of control and conjugate the
/// gain (negated gain for the CCCS/VCVS pair); generic devices go through
/// the subspace adjoint.
Device device_adjoint(const Device& d, double tol = kDefaultTol);

/// Zero all source values, keeping the vector space translate.
Device source_zeroed(const Device& d);

/// Direct sum of the device characteristics. The device edge sets must
/// partition `internal_edges`.
AffineSpace assemble_characteristic(const std::vector<Device>& devices,
                                    const std::vector<std::string>& internal_edges,
                                    double tol = kDefaultTol);

const char* device_kind_name(const Device& d);

// Factories used by the parser and tests.
Device make_impedance(std::vector<std::string> edges, Matrix z);
Device make_admittance(std::vector<std::string> edges, Matrix y);
Device make_hybrid(std::vector<std::string> edges, std::size_t split, Matrix g11,
                   Matrix h12, Matrix h21, Matrix r22);
Device make_vsource(std::vector<std::string> edges, Vector value);
Device make_isource(std::vector<std::string> edges, Vector value);
Device make_norator(std::vector<std::string> edges);
Device make_nullator(std::vector<std::string> edges);
Device make_gyrator(std::vector<std::string> edges, Eigen::VectorXd r);
Device make_transformer(std::vector<std::string> edges);
Device make_controlled(ControlledSource::Type type, std::string controlling,
                       std::string controlled, Complex gain);
Device make_generic_affine(std::vector<std::string> edges, Matrix b, Matrix q,
                           Vector s);

}  // namespace multiport
