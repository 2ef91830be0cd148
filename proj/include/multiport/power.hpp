#pragma once

#include <cstdint>
#include <optional>

#include "multiport/extraction.hpp"

namespace multiport {

enum class StationarityClass { UniqueStationary, NoStationary, InfiniteStationary };
enum class PassivityClass { Strict, Passive, None };
enum class Maximality { Max, MinOrSaddle, Unknown };

/// Power absorbed by a port vector (v, i) on a behaviour pair set in the
/// entering-current convention: <v,i> + <i,v> = 2 Re sum v conj(i).
/// Unscaled, no 1/2 factor.
double power_absorbed(const LabeledVector& port_vector);
inline double power_delivered(const LabeledVector& port_vector) {
    return -power_absorbed(port_vector);
}

struct PowerReport {
    StationarityClass classification = StationarityClass::NoStationary;
    /// Present iff classification is unique-stationary.
    std::optional<LabeledVector> stationary;
    std::optional<double> power_delivered;  // unscaled convention
    PassivityClass passivity = PassivityClass::None;
    bool marginal_passivity = false;
    Maximality maximal = Maximality::Unknown;
};

/// Solve the stationarity system (B | -Q)(-Q*; B*) lambda = s and classify
/// by rank; the stationary port vector is lambda^T (-conj(Q) | conj(B)).
PowerReport stationarity_from_behaviour(const PortBehaviour& b,
                                        double tol = kDefaultTol);

/// Terminate the multiport by its adjoint through a 1:1 ideal transformer
/// and solve once; the stationarity system is never formed explicitly.
/// Unique solution -> the stationary port condition; no solution -> no
/// stationary point; non-unique -> infinitely many.
PowerReport stationarity_by_termination(const Multiport& m, double tol = kDefaultTol);

/// Passivity of the behaviour translate: the induced Hermitian power form,
/// parameterized by an orthonormal basis, is eigenvalue-classified. A
/// strictly passive device set with ports free of loops and cutsets is
/// accepted directly.
PassivityClass passivity_class(const PortBehaviour& b, const Multiport& m,
                               double tol = kDefaultTol, bool* marginal = nullptr);

/// Upgrade stationarity to maximality: passive and strictly passive
/// behaviours deliver maximum power at the stationary point; otherwise the
/// point is probed with signed basis perturbations plus random directions.
PowerReport maximality_upgrade(PowerReport report, PassivityClass passivity,
                               const PortBehaviour& b, std::uint64_t seed = 0,
                               double tol = kDefaultTol);

const char* stationarity_name(StationarityClass c);
const char* passivity_name(PassivityClass c);
const char* maximality_name(Maximality m);

}  // namespace multiport
