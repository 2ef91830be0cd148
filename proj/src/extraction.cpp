#include "multiport/extraction.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace multiport {

namespace {

constexpr const char* kCopySuffix = "~";

/// Gyrator coupling rows for a port pair (p, p~), optionally source shifted:
///   v_p + i_p~ = sv      (sv = -1 under a voltage shift)
///   v_p~ - i_p = si      (si = +1 under a current shift)
Device coupling_gyrator(const std::string& p, double sv, double si) {
    Matrix b(2, 2), q(2, 2);
    b << 1.0, 0.0, 0.0, 1.0;
    q << 0.0, -1.0, 1.0, 0.0;
    Vector s(2);
    s << sv, si;
    return make_generic_affine({p, p + kCopySuffix}, b, q, s);
}

struct Assembled {
    Matrix a;
    Vector b;
    IndexSet vars;
    Eigen::Index topo_rows = 0;
    std::vector<Eigen::Index> device_row_start;  // aligned with devices
    std::vector<double> row_scale;               // factor each row was multiplied by
};

Assembled assemble_system(const TerminatedNetwork& net, double tol) {
    Assembled out;
    out.vars = IndexSet::pair_set(net.graph.edge_names());
    const Eigen::Index n = static_cast<Eigen::Index>(out.vars.size());

    Subspace vspace = voltage_space(net.graph, tol);
    Matrix kvl = orthogonal_complement(vspace, tol).basis().conjugate();
    Matrix kcl = vspace.basis().conjugate();

    Eigen::Index device_rows = 0;
    std::vector<DeviceRows> rows;
    rows.reserve(net.devices.size());
    for (const auto& d : net.devices) {
        rows.push_back(constraint_rows(d));
        device_rows += rows.back().lhs.rows();
    }
    out.topo_rows = kvl.rows() + kcl.rows();
    out.a = Matrix::Zero(out.topo_rows + device_rows, n);
    out.b = Vector::Zero(out.a.rows());
    out.row_scale.assign(static_cast<std::size_t>(out.a.rows()), 1.0);

    // KVL constraints live on the voltage columns, KCL on the current columns
    auto col_of = [&](const Label& l) {
        return static_cast<Eigen::Index>(*out.vars.position(l));
    };
    const auto edge_names = net.graph.edge_names();
    for (std::size_t j = 0; j < edge_names.size(); ++j) {
        out.a.block(0, col_of(Label::voltage(edge_names[j])), kvl.rows(), 1) =
            kvl.col(static_cast<Eigen::Index>(j));
        out.a.block(kvl.rows(), col_of(Label::current(edge_names[j])), kcl.rows(), 1) =
            kcl.col(static_cast<Eigen::Index>(j));
    }

    Eigen::Index row = out.topo_rows;
    for (std::size_t di = 0; di < net.devices.size(); ++di) {
        const Device& d = net.devices[di];
        const DeviceRows& dr = rows[di];
        out.device_row_start.push_back(row);
        const Eigen::Index k = static_cast<Eigen::Index>(d.edges.size());
        for (Eigen::Index i = 0; i < dr.lhs.rows(); ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                out.a(row, col_of(Label::voltage(d.edges[static_cast<std::size_t>(j)]))) =
                    dr.lhs(i, j);
                out.a(row, col_of(Label::current(d.edges[static_cast<std::size_t>(j)]))) =
                    dr.lhs(i, k + j);
            }
            out.b(row) = dr.rhs(i);
            double mag = out.a.row(row).cwiseAbs().maxCoeff();
            if (mag > 0.0) {
                out.a.row(row) /= mag;
                out.b(row) /= mag;
                out.row_scale[static_cast<std::size_t>(row)] = 1.0 / mag;
            }
            ++row;
        }
    }
    return out;
}

struct RankedSolve {
    Eigen::JacobiSVD<Matrix> svd;
    Eigen::Index rank = 0;
    double smax = 0.0;

    explicit RankedSolve(const Matrix& a, double tol)
        : svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV) {
        const auto& sv = svd.singularValues();
        if (sv.size() > 0) smax = sv(0);
        const double thresh =
            tol * static_cast<double>(std::max(a.rows(), a.cols())) * smax;
        while (rank < sv.size() && sv(rank) > thresh) ++rank;
    }

    /// Minimum-norm least-squares solution using the computed rank.
    Matrix solve(const Matrix& rhs) const {
        Matrix y = svd.matrixU().leftCols(rank).adjoint() * rhs;
        for (Eigen::Index i = 0; i < rank; ++i) y.row(i) /= svd.singularValues()(i);
        return svd.matrixV().leftCols(rank) * y;
    }
};

SolveStatus classify_column(const Matrix& a, const Vector& b, const Vector& x,
                            Eigen::Index rank, double smax, double tol) {
    double resid = (a * x - b).norm();
    double scale = std::max({1.0, b.norm(), smax * x.norm()});
    bool consistent =
        resid <= tol * static_cast<double>(std::max(a.rows(), a.cols())) * scale;
    if (!consistent) return SolveStatus::Inconsistent;
    return rank == a.cols() ? SolveStatus::Unique : SolveStatus::NonUnique;
}

}  // namespace

TerminatedNetwork build_large_network(const Multiport& m, Termination termination,
                                      std::optional<Excitation> excitation,
                                      double tol) {
    if (termination == Termination::Transformer && excitation) {
        throw Error("transformer termination takes no excitation");
    }
    if (excitation && excitation->port >= m.ports().size()) {
        throw Error("excitation port index out of range");
    }

    TerminatedNetwork net;
    net.graph = Digraph::disjoint_union(m.graph(), m.graph().renamed(kCopySuffix));

    const Multiport& base = excitation ? homogeneous(m) : m;
    net.devices = base.devices();
    for (const auto& d : m.devices()) {
        Device adj = device_adjoint(d, tol);
        for (auto& e : adj.edges) e += kCopySuffix;
        net.devices.push_back(std::move(adj));
    }
    const auto& ports = m.ports();
    for (std::size_t t = 0; t < ports.size(); ++t) {
        if (termination == Termination::Transformer) {
            net.devices.push_back(make_transformer({ports[t], ports[t] + kCopySuffix}));
            continue;
        }
        double sv = 0.0, si = 0.0;
        if (excitation && excitation->port == t) {
            if (excitation->kind == Excitation::Kind::VoltageShift) sv = -1.0;
            else si = 1.0;
        }
        net.devices.push_back(coupling_gyrator(ports[t], sv, si));
    }
    return net;
}

NetworkSolution solve_unique(const TerminatedNetwork& n, double tol) {
    Assembled sys = assemble_system(n, tol);
    RankedSolve solver(sys.a, tol);
    Matrix x = solver.solve(sys.b);
    NetworkSolution out;
    out.status = classify_column(sys.a, sys.b, x.col(0), solver.rank, solver.smax, tol);
    if (out.status == SolveStatus::Unique) {
        out.values = LabeledVector{sys.vars, x.col(0)};
    }
    return out;
}

PortBehaviour make_port_behaviour(const std::vector<std::string>& port_edges,
                                  const AffineSpace& space, double tol) {
    PortBehaviour pb;
    pb.port_edges = port_edges;
    std::sort(pb.port_edges.begin(), pb.port_edges.end());
    pb.space = space;
    const Eigen::Index np = static_cast<Eigen::Index>(pb.port_edges.size());

    ConstraintForm cf = constraints(space, tol);
    // block column order: voltages then currents, each in edge order
    Matrix aug(cf.lhs.rows(), 2 * np + 1);
    for (Eigen::Index j = 0; j < np; ++j) {
        const auto& e = pb.port_edges[static_cast<std::size_t>(j)];
        aug.col(j) = cf.lhs.col(static_cast<Eigen::Index>(*cf.index.position(Label::voltage(e))));
        aug.col(np + j) =
            cf.lhs.col(static_cast<Eigen::Index>(*cf.index.position(Label::current(e))));
    }
    aug.col(2 * np) = cf.rhs;
    Eigen::Index rank = reduced_row_echelon(aug, tol, 2 * np);
    pb.b = aug.block(0, 0, rank, np);
    pb.q = -aug.block(0, np, rank, np);
    pb.s = aug.block(0, 2 * np, rank, 1);

    pb.representation = PortBehaviour::Representation::General;
    if (rank == np && np > 0) {
        auto invertible = [&](const Matrix& m) { return numeric_rank(m, tol) == np; };
        if (invertible(pb.b)) {
            pb.representation = PortBehaviour::Representation::Impedance;
        } else if (invertible(pb.q)) {
            pb.representation = PortBehaviour::Representation::Admittance;
        } else {
            // mixed input partitions: voltages of P1 and currents of P2 drive
            // the outputs (i_{P1}, v_{P2}); need [-Q_{P1} | B_{P2}] invertible
            for (unsigned mask = 1; mask + 1 < (1u << np); ++mask) {
                Matrix cols(rank, np);
                Eigen::Index c = 0;
                for (Eigen::Index j = 0; j < np; ++j) {
                    if (mask & (1u << j)) cols.col(c++) = -pb.q.col(j);
                }
                for (Eigen::Index j = 0; j < np; ++j) {
                    if (!(mask & (1u << j))) cols.col(c++) = pb.b.col(j);
                }
                if (invertible(cols)) {
                    pb.representation = PortBehaviour::Representation::Hybrid;
                    for (Eigen::Index j = 0; j < np; ++j) {
                        if (mask & (1u << j)) {
                            pb.hybrid_voltage_inputs.push_back(
                                pb.port_edges[static_cast<std::size_t>(j)]);
                        }
                    }
                    break;
                }
            }
        }
    } else if (np == 0) {
        pb.representation = PortBehaviour::Representation::Impedance;
    }
    return pb;
}

ExtractionResult extract_port_behaviour(const Multiport& m, double tol) {
    const auto& ports = m.ports();
    const std::size_t np = ports.size();

    TerminatedNetwork net = build_large_network(m, Termination::Gyrator, std::nullopt, tol);
    Assembled sys = assemble_system(net, tol);

    // the couplings are the last |P| devices, two rows each; all 1 + 2|P|
    // solves share the coefficient matrix and differ in the right-hand side
    const std::size_t first_coupling = net.devices.size() - np;
    Matrix rhs = Matrix::Zero(sys.a.rows(), 1 + 2 * static_cast<Eigen::Index>(np));
    rhs.col(0) = sys.b;
    for (std::size_t t = 0; t < np; ++t) {
        Eigen::Index r0 = sys.device_row_start[first_coupling + t];
        rhs(r0, 1 + static_cast<Eigen::Index>(t)) =
            -1.0 * sys.row_scale[static_cast<std::size_t>(r0)];
        rhs(r0 + 1, 1 + static_cast<Eigen::Index>(np + t)) =
            1.0 * sys.row_scale[static_cast<std::size_t>(r0 + 1)];
    }

    RankedSolve solver(sys.a, tol);
    Matrix x = solver.solve(rhs);
    SolveStatus status =
        classify_column(sys.a, sys.b, x.col(0), solver.rank, solver.smax, tol);
    if (status != SolveStatus::Unique) return NotRigid{status};

    IndexSet pair = IndexSet::pair_set(ports);
    IndexSet currents = IndexSet::currents(ports);
    auto to_port_vector = [&](const Vector& full) {
        LabeledVector all{sys.vars, full};
        LabeledVector at = all.restricted_to(pair);
        for (const auto& l : currents.labels()) {
            at.values(static_cast<Eigen::Index>(*pair.position(l))) =
                -at.values(static_cast<Eigen::Index>(*pair.position(l)));
        }
        return at;
    };

    LabeledVector particular = to_port_vector(x.col(0));
    Matrix generators(2 * static_cast<Eigen::Index>(np), static_cast<Eigen::Index>(pair.size()));
    for (Eigen::Index t = 0; t < 2 * static_cast<Eigen::Index>(np); ++t) {
        generators.row(t) = to_port_vector(x.col(1 + t)).values.transpose();
    }
    AffineSpace behaviour(particular, Subspace::from_rows(pair, generators, tol));
    return make_port_behaviour(ports, behaviour, tol);
}

const char* representation_name(PortBehaviour::Representation r) {
    switch (r) {
        case PortBehaviour::Representation::Impedance: return "impedance";
        case PortBehaviour::Representation::Admittance: return "admittance";
        case PortBehaviour::Representation::Hybrid: return "hybrid";
        case PortBehaviour::Representation::General: return "general";
    }
    return "general";
}

}  // namespace multiport
