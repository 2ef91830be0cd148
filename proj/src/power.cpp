#include "multiport/power.hpp"

#include <Eigen/Eigenvalues>
#include <random>

namespace multiport {

namespace {

/// Hermitian matrix of the power form q(x) = 2 Re <v, i> restricted to the
/// translate, in the coordinates of its orthonormal basis.
Matrix power_form(const Subspace& translate) {
    const IndexSet& index = translate.index();
    const Eigen::Index n = static_cast<Eigen::Index>(index.size());
    Matrix pi = Matrix::Zero(n, n);
    for (const auto& e : index.edges()) {
        auto vi = static_cast<Eigen::Index>(*index.position(Label::voltage(e)));
        auto ii = static_cast<Eigen::Index>(*index.position(Label::current(e)));
        pi(vi, ii) = 1.0;
        pi(ii, vi) = 1.0;
    }
    const Matrix& w = translate.basis();
    // x = w^T c  =>  q = c^* (conj(w) Pi w^T) c
    return w.conjugate() * pi * w.transpose();
}

LabeledVector translate_direction(const Subspace& translate, const Vector& coeffs) {
    return {translate.index(), translate.basis().transpose() * coeffs};
}

}  // namespace

double power_absorbed(const LabeledVector& port_vector) {
    if (!port_vector.index.is_pair_set()) {
        throw Error("power needs a voltage/current pair set");
    }
    double acc = 0.0;
    for (const auto& e : port_vector.index.edges()) {
        Complex v = port_vector.at(Label::voltage(e));
        Complex i = port_vector.at(Label::current(e));
        acc += 2.0 * std::real(v * std::conj(i));
    }
    return acc;
}

PowerReport stationarity_from_behaviour(const PortBehaviour& b, double tol) {
    PowerReport report;
    const Eigen::Index k = b.rows();
    Matrix m = -(b.b * b.q.adjoint() + b.q * b.b.adjoint());
    SystemSolution sol = solve_classified(m, b.s, tol);
    switch (sol.status) {
        case SystemStatus::Inconsistent:
            report.classification = StationarityClass::NoStationary;
            return report;
        case SystemStatus::NonUnique:
            report.classification = StationarityClass::InfiniteStationary;
            return report;
        case SystemStatus::Unique:
            break;
    }
    report.classification = StationarityClass::UniqueStationary;
    const Eigen::Index np = static_cast<Eigen::Index>(b.port_edges.size());
    // (v^T | i^T) = lambda^T (-conj(Q) | conj(B))
    Vector v = -b.q.adjoint() * sol.x;
    Vector i = b.b.adjoint() * sol.x;
    IndexSet pair = IndexSet::pair_set(b.port_edges);
    Vector full(2 * np);
    for (Eigen::Index j = 0; j < np; ++j) {
        const auto& e = b.port_edges[static_cast<std::size_t>(j)];
        full(static_cast<Eigen::Index>(*pair.position(Label::voltage(e)))) = v(j);
        full(static_cast<Eigen::Index>(*pair.position(Label::current(e)))) = i(j);
    }
    report.stationary = LabeledVector{pair, full};
    report.power_delivered = power_delivered(*report.stationary);
    return report;
}

PowerReport stationarity_by_termination(const Multiport& m, double tol) {
    PowerReport report;
    TerminatedNetwork net =
        build_large_network(m, Termination::Transformer, std::nullopt, tol);
    NetworkSolution sol = solve_unique(net, tol);
    switch (sol.status) {
        case SystemStatus::Inconsistent:
            report.classification = StationarityClass::NoStationary;
            return report;
        case SystemStatus::NonUnique:
            report.classification = StationarityClass::InfiniteStationary;
            return report;
        case SystemStatus::Unique:
            break;
    }
    report.classification = StationarityClass::UniqueStationary;
    IndexSet pair = IndexSet::pair_set(m.ports());
    LabeledVector at = sol.values.restricted_to(pair);
    for (const auto& p : m.ports()) {
        auto pos = static_cast<Eigen::Index>(*pair.position(Label::current(p)));
        at.values(pos) = -at.values(pos);
    }
    report.stationary = std::move(at);
    report.power_delivered = power_delivered(*report.stationary);
    return report;
}

PassivityClass passivity_class(const PortBehaviour& b, const Multiport& m, double tol,
                               bool* marginal) {
    if (marginal) *marginal = false;

    // device-level certificate: strictly passive impedances with ports free
    // of loops and cutsets make the behaviour strictly passive
    bool all_strict_impedances = !m.devices().empty();
    for (const auto& d : m.devices()) {
        const auto* imp = std::get_if<Impedance>(&d.model);
        if (!imp) {
            all_strict_impedances = false;
            break;
        }
        Matrix h = imp->z + imp->z.adjoint();
        Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
        double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
        if (eig.eigenvalues().minCoeff() <= 10.0 * tol * scale) {
            all_strict_impedances = false;
            break;
        }
    }
    if (all_strict_impedances &&
        ports_contain_loop_or_cutset(m.graph(), m.ports(), tol) == PortTopology::No) {
        return PassivityClass::Strict;
    }

    const Subspace& translate = b.space.translate();
    if (translate.dim() == 0) return PassivityClass::Strict;  // vacuous
    Matrix h = power_form(translate);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    const double norm = eig.eigenvalues().cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, norm);
    const double lmin = eig.eigenvalues().minCoeff();
    if (lmin >= 10.0 * tol * scale) return PassivityClass::Strict;
    if (lmin >= -tol * scale) {
        if (marginal && lmin < 10.0 * tol * scale) *marginal = true;
        return PassivityClass::Passive;
    }
    return PassivityClass::None;
}

PowerReport maximality_upgrade(PowerReport report, PassivityClass passivity,
                               const PortBehaviour& b, std::uint64_t seed, double tol) {
    report.passivity = passivity;
    if (passivity == PassivityClass::Strict || passivity == PassivityClass::Passive) {
        report.maximal = Maximality::Max;
        return report;
    }
    report.maximal = Maximality::Unknown;
    if (report.classification != StationarityClass::UniqueStationary) return report;

    const Subspace& translate = b.space.translate();
    const Eigen::Index d = translate.dim();
    const LabeledVector& stat = *report.stationary;
    const double base = power_delivered(stat);
    const double flat = tol * std::max(1.0, std::abs(base));

    bool up = false;  // delivered power rises somewhere around the point
    auto probe = [&](const Vector& coeffs) {
        LabeledVector dir = translate_direction(translate, coeffs);
        LabeledVector probe_point{stat.index, stat.values + dir.values};
        double delta = power_delivered(probe_point) - base;
        if (delta > flat) up = true;
    };
    for (Eigen::Index j = 0; j < d; ++j) {
        Vector c = Vector::Zero(d);
        c(j) = 1.0;
        probe(c);
        c(j) = -1.0;
        probe(c);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 50 && d > 0; ++trial) {
        Vector c(d);
        for (Eigen::Index j = 0; j < d; ++j) c(j) = Complex(gauss(rng), gauss(rng));
        double norm = c.norm();
        if (norm > 0) c /= norm;
        probe(c);
    }
    report.maximal = up ? Maximality::MinOrSaddle : Maximality::Max;
    return report;
}

const char* stationarity_name(StationarityClass c) {
    switch (c) {
        case StationarityClass::UniqueStationary: return "unique-stationary";
        case StationarityClass::NoStationary: return "no-stationary";
        case StationarityClass::InfiniteStationary: return "infinite-stationary";
    }
    return "?";
}

const char* passivity_name(PassivityClass c) {
    switch (c) {
        case PassivityClass::Strict: return "strict";
        case PassivityClass::Passive: return "passive";
        case PassivityClass::None: return "none";
    }
    return "?";
}

const char* maximality_name(Maximality m) {
    switch (m) {
        case Maximality::Max: return "max";
        case Maximality::MinOrSaddle: return "min-or-saddle";
        case Maximality::Unknown: return "unknown";
    }
    return "?";
}

}  // namespace multiport
