#include "multiport/device.hpp"

#include <algorithm>
#include <set>

namespace multiport {

namespace {

Eigen::Index k_of(const Device& d) { return static_cast<Eigen::Index>(d.edges.size()); }

struct Validator {
    const Device& d;
    Eigen::Index k;

    void require(bool ok, const char* what) const {
        if (!ok) throw Error(std::string(device_kind_name(d)) + ": " + what);
    }

    void operator()(const Impedance& m) const {
        require(m.z.rows() == k && m.z.cols() == k, "Z must be square on the edge count");
    }
    void operator()(const Admittance& m) const {
        require(m.y.rows() == k && m.y.cols() == k, "Y must be square on the edge count");
    }
    void operator()(const Hybrid& m) const {
        auto k1 = static_cast<Eigen::Index>(m.split);
        auto k2 = k - k1;
        require(k1 >= 0 && k1 <= k, "partition size out of range");
        require(m.g11.rows() == k1 && m.g11.cols() == k1, "g11 block shape");
        require(m.h12.rows() == k1 && m.h12.cols() == k2, "h12 block shape");
        require(m.h21.rows() == k2 && m.h21.cols() == k1, "h21 block shape");
        require(m.r22.rows() == k2 && m.r22.cols() == k2, "r22 block shape");
    }
    void operator()(const VSource& m) const {
        require(m.value.size() == k, "source value per edge");
    }
    void operator()(const ISource& m) const {
        require(m.value.size() == k, "source value per edge");
    }
    void operator()(const Norator&) const {}
    void operator()(const Nullator&) const {}
    void operator()(const Gyrator& m) const {
        require(k % 2 == 0, "gyrator needs an even number of edges");
        require(m.r.size() == k / 2, "one resistance per edge pair");
        require((m.r.array() > 0.0).all(), "gyrator R must be strictly positive");
    }
    void operator()(const IdealTransformer&) const {
        require(k % 2 == 0, "transformer needs an even number of edges");
    }
    void operator()(const ControlledSource& m) const {
        require(k == 2, "controlled source sits on exactly two edges");
        require(m.control == 0 || m.control == 1, "control index");
    }
    void operator()(const GenericAffine& m) const {
        require(m.b.cols() == k && m.q.cols() == k, "B and Q must have one column per edge");
        require(m.b.rows() == m.q.rows() && m.b.rows() == m.s.size(),
                "row counts of B, Q, s must agree");
        Matrix bq(m.b.rows(), 2 * k);
        bq << m.b, -m.q;
        require(numeric_rank(bq) == m.b.rows(), "rows of (B | -Q) must be independent");
    }
};

struct RowBuilder {
    Eigen::Index k;

    DeviceRows rows(Eigen::Index count) const {
        return {Matrix::Zero(count, 2 * k), Vector::Zero(count)};
    }

    DeviceRows operator()(const Impedance& m) const {
        DeviceRows r = rows(k);
        r.lhs.leftCols(k).setIdentity();
        r.lhs.rightCols(k) = -m.z;
        return r;
    }
    DeviceRows operator()(const Admittance& m) const {
        DeviceRows r = rows(k);
        r.lhs.leftCols(k) = -m.y;
        r.lhs.rightCols(k).setIdentity();
        return r;
    }
    DeviceRows operator()(const Hybrid& m) const {
        auto k1 = static_cast<Eigen::Index>(m.split);
        auto k2 = k - k1;
        DeviceRows r = rows(k);
        // i_{S1} - g11 v_{S1} - h12 i_{S2} = 0
        r.lhs.block(0, 0, k1, k1) = -m.g11;
        r.lhs.block(0, k + k1, k1, k2) = -m.h12;
        r.lhs.block(0, k, k1, k1).setIdentity();
        // v_{S2} - h21 v_{S1} - r22 i_{S2} = 0
        r.lhs.block(k1, 0, k2, k1) = -m.h21;
        r.lhs.block(k1, k1, k2, k2).setIdentity();
        r.lhs.block(k1, k + k1, k2, k2) = -m.r22;
        return r;
    }
    DeviceRows operator()(const VSource& m) const {
        DeviceRows r = rows(k);
        r.lhs.leftCols(k).setIdentity();
        r.rhs = m.value;
        return r;
    }
    DeviceRows operator()(const ISource& m) const {
        DeviceRows r = rows(k);
        r.lhs.rightCols(k).setIdentity();
        r.rhs = m.value;
        return r;
    }
    DeviceRows operator()(const Norator&) const { return rows(0); }
    DeviceRows operator()(const Nullator&) const {
        DeviceRows r = rows(2 * k);
        r.lhs.setIdentity();
        return r;
    }
    DeviceRows operator()(const Gyrator& m) const {
        auto half = k / 2;
        DeviceRows r = rows(k);
        // v_A + R i_B = 0
        r.lhs.block(0, 0, half, half).setIdentity();
        r.lhs.block(0, k + half, half, half) = m.r.cast<Complex>().asDiagonal();
        // v_B - R i_A = 0
        r.lhs.block(half, half, half, half).setIdentity();
        r.lhs.block(half, k, half, half) = (-m.r).cast<Complex>().asDiagonal();
        return r;
    }
    DeviceRows operator()(const IdealTransformer&) const {
        auto half = k / 2;
        DeviceRows r = rows(k);
        // v_A - v_B = 0
        r.lhs.block(0, 0, half, half).setIdentity();
        r.lhs.block(0, half, half, half) = -Matrix::Identity(half, half);
        // i_A + i_B = 0
        r.lhs.block(half, k, half, half).setIdentity();
        r.lhs.block(half, k + half, half, half).setIdentity();
        return r;
    }
    DeviceRows operator()(const ControlledSource& m) const {
        DeviceRows r = rows(2);
        const Eigen::Index c = m.control;      // controlling edge
        const Eigen::Index t = 1 - m.control;  // controlled edge
        using Type = ControlledSource::Type;
        switch (m.type) {
            case Type::CCVS:  // v_c = 0, v_t = gain * i_c
                r.lhs(0, c) = 1.0;
                r.lhs(1, t) = 1.0;
                r.lhs(1, k + c) = -m.gain;
                break;
            case Type::VCCS:  // i_c = 0, i_t = gain * v_c
                r.lhs(0, k + c) = 1.0;
                r.lhs(1, k + t) = 1.0;
                r.lhs(1, c) = -m.gain;
                break;
            case Type::CCCS:  // v_c = 0, i_t = gain * i_c
                r.lhs(0, c) = 1.0;
                r.lhs(1, k + t) = 1.0;
                r.lhs(1, k + c) = -m.gain;
                break;
            case Type::VCVS:  // i_c = 0, v_t = gain * v_c
                r.lhs(0, k + c) = 1.0;
                r.lhs(1, t) = 1.0;
                r.lhs(1, c) = -m.gain;
                break;
        }
        return r;
    }
    DeviceRows operator()(const GenericAffine& m) const {
        DeviceRows r = rows(m.b.rows());
        r.lhs.leftCols(k) = m.b;
        r.lhs.rightCols(k) = -m.q;
        r.rhs = m.s;
        return r;
    }
};

struct AdjointMap {
    const Device& d;
    double tol;

    DeviceModel operator()(const Impedance& m) const { return Impedance{m.z.adjoint()}; }
    DeviceModel operator()(const Admittance& m) const { return Admittance{m.y.adjoint()}; }
    DeviceModel operator()(const Hybrid& m) const {
        return Hybrid{m.split, m.g11.adjoint(), Matrix(-m.h21.adjoint()),
                      Matrix(-m.h12.adjoint()), m.r22.adjoint()};
    }
    DeviceModel operator()(const VSource& m) const {
        return VSource{Vector::Zero(m.value.size())};
    }
    DeviceModel operator()(const ISource& m) const {
        return ISource{Vector::Zero(m.value.size())};
    }
    DeviceModel operator()(const Norator&) const { return Nullator{}; }
    DeviceModel operator()(const Nullator&) const { return Norator{}; }
    DeviceModel operator()(const Gyrator& m) const { return m; /* handled below */ }
    DeviceModel operator()(const IdealTransformer& m) const { return m; }
    DeviceModel operator()(const ControlledSource& m) const {
        using Type = ControlledSource::Type;
        ControlledSource out = m;
        out.control = 1 - m.control;
        switch (m.type) {
            case Type::CCVS:
            case Type::VCCS:
                out.gain = std::conj(m.gain);
                break;
            case Type::CCCS:
                out.type = Type::VCVS;
                out.gain = -std::conj(m.gain);
                break;
            case Type::VCVS:
                out.type = Type::CCCS;
                out.gain = -std::conj(m.gain);
                break;
        }
        return out;
    }
    DeviceModel operator()(const GenericAffine& m) const {
        Subspace adj = adjoint(characteristic(d, tol), tol);
        // back to block-ordered constraint rows B v - Q i = 0
        ConstraintForm cf = constraints(adj, tol);
        const Eigen::Index k = k_of(d);
        Matrix b(cf.lhs.rows(), k), q(cf.lhs.rows(), k);
        for (Eigen::Index j = 0; j < k; ++j) {
            b.col(j) = cf.lhs.col(static_cast<Eigen::Index>(
                *cf.index.position(Label::voltage(d.edges[static_cast<std::size_t>(j)]))));
            q.col(j) = -cf.lhs.col(static_cast<Eigen::Index>(
                *cf.index.position(Label::current(d.edges[static_cast<std::size_t>(j)]))));
        }
        return GenericAffine{std::move(b), std::move(q), Vector::Zero(cf.lhs.rows())};
    }
};

struct SourceZero {
    DeviceModel operator()(const VSource& m) const {
        return VSource{Vector::Zero(m.value.size())};
    }
    DeviceModel operator()(const ISource& m) const {
        return ISource{Vector::Zero(m.value.size())};
    }
    DeviceModel operator()(const GenericAffine& m) const {
        return GenericAffine{m.b, m.q, Vector::Zero(m.s.size())};
    }
    template <class Other>
    DeviceModel operator()(const Other& m) const {
        return m;
    }
};

}  // namespace

void validate(const Device& d) {
    std::set<std::string> seen(d.edges.begin(), d.edges.end());
    if (seen.size() != d.edges.size()) {
        throw Error(std::string(device_kind_name(d)) + ": repeated edge in device");
    }
    std::visit(Validator{d, k_of(d)}, d.model);
}

DeviceRows constraint_rows(const Device& d) {
    validate(d);
    return std::visit(RowBuilder{k_of(d)}, d.model);
}

AffineSpace characteristic(const Device& d, double tol) {
    DeviceRows rows = constraint_rows(d);
    IndexSet index = IndexSet::pair_set(d.edges);
    const Eigen::Index k = k_of(d);
    // reorder local block columns onto the canonical label order
    Matrix lhs(rows.lhs.rows(), 2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto& e = d.edges[static_cast<std::size_t>(j)];
        lhs.col(static_cast<Eigen::Index>(*index.position(Label::voltage(e)))) =
            rows.lhs.col(j);
        lhs.col(static_cast<Eigen::Index>(*index.position(Label::current(e)))) =
            rows.lhs.col(k + j);
    }
    auto space = affine_from_constraints(index, lhs, rows.rhs, tol);
    if (!space) throw Error("inconsistent device constraints");  // unreachable for valid devices
    return *space;
}

Device device_adjoint(const Device& d, double tol) {
    validate(d);
    Device out = d;
    if (std::holds_alternative<Gyrator>(d.model)) {
        // same R, edge blocks exchanged
        auto half = d.edges.size() / 2;
        std::vector<std::string> swapped(d.edges.begin() + static_cast<std::ptrdiff_t>(half),
                                         d.edges.end());
        swapped.insert(swapped.end(), d.edges.begin(),
                       d.edges.begin() + static_cast<std::ptrdiff_t>(half));
        out.edges = std::move(swapped);
        return out;
    }
    out.model = std::visit(AdjointMap{d, tol}, d.model);
    return out;
}

Device source_zeroed(const Device& d) {
    Device out = d;
    out.model = std::visit(SourceZero{}, d.model);
    return out;
}

AffineSpace assemble_characteristic(const std::vector<Device>& devices,
                                    const std::vector<std::string>& internal_edges,
                                    double tol) {
    std::set<std::string> internal(internal_edges.begin(), internal_edges.end());
    std::set<std::string> covered;
    for (const auto& d : devices) {
        for (const auto& e : d.edges) {
            if (!internal.count(e)) {
                throw Error("device edge " + e + " is not an internal edge");
            }
            if (!covered.insert(e).second) {
                throw Error("edge " + e + " carries more than one device");
            }
        }
    }
    if (covered.size() != internal.size()) {
        for (const auto& e : internal) {
            if (!covered.count(e)) throw Error("internal edge " + e + " has no device");
        }
    }

    IndexSet index = IndexSet::pair_set(internal_edges);
    Eigen::Index total_dim = 0;
    std::vector<AffineSpace> parts;
    parts.reserve(devices.size());
    for (const auto& d : devices) {
        parts.push_back(characteristic(d, tol));
        total_dim += parts.back().translate().dim();
    }
    Matrix basis = Matrix::Zero(total_dim, static_cast<Eigen::Index>(index.size()));
    Vector particular = Vector::Zero(static_cast<Eigen::Index>(index.size()));
    Eigen::Index row = 0;
    for (const auto& part : parts) {
        std::vector<Eigen::Index> cols;
        cols.reserve(part.index().size());
        for (const auto& l : part.index().labels()) {
            cols.push_back(static_cast<Eigen::Index>(*index.position(l)));
        }
        for (std::size_t j = 0; j < cols.size(); ++j) {
            basis.block(row, cols[j], part.translate().dim(), 1) =
                part.translate().basis().col(static_cast<Eigen::Index>(j));
            particular(cols[j]) = part.particular()(static_cast<Eigen::Index>(j));
        }
        row += part.translate().dim();
    }
    // disjoint supports keep the stacked rows orthonormal
    return AffineSpace::from_parts(index, particular,
                                   make_subspace_trusted(index, std::move(basis)));
}

const char* device_kind_name(const Device& d) {
    struct Name {
        const char* operator()(const Impedance&) const { return "impedance"; }
        const char* operator()(const Admittance&) const { return "admittance"; }
        const char* operator()(const Hybrid&) const { return "hybrid"; }
        const char* operator()(const VSource&) const { return "vsource"; }
        const char* operator()(const ISource&) const { return "isource"; }
        const char* operator()(const Norator&) const { return "norator"; }
        const char* operator()(const Nullator&) const { return "nullator"; }
        const char* operator()(const Gyrator&) const { return "gyrator"; }
        const char* operator()(const IdealTransformer&) const { return "transformer"; }
        const char* operator()(const ControlledSource& c) const {
            using Type = ControlledSource::Type;
            switch (c.type) {
                case Type::CCVS: return "ccvs";
                case Type::VCCS: return "vccs";
                case Type::CCCS: return "cccs";
                case Type::VCVS: return "vcvs";
            }
            return "controlled";
        }
        const char* operator()(const GenericAffine&) const { return "affine"; }
    };
    return std::visit(Name{}, d.model);
}

Device make_impedance(std::vector<std::string> edges, Matrix z) {
    return {std::move(edges), Impedance{std::move(z)}};
}
Device make_admittance(std::vector<std::string> edges, Matrix y) {
    return {std::move(edges), Admittance{std::move(y)}};
}
Device make_hybrid(std::vector<std::string> edges, std::size_t split, Matrix g11,
                   Matrix h12, Matrix h21, Matrix r22) {
    return {std::move(edges),
            Hybrid{split, std::move(g11), std::move(h12), std::move(h21), std::move(r22)}};
}
Device make_vsource(std::vector<std::string> edges, Vector value) {
    return {std::move(edges), VSource{std::move(value)}};
}
Device make_isource(std::vector<std::string> edges, Vector value) {
    return {std::move(edges), ISource{std::move(value)}};
}
Device make_norator(std::vector<std::string> edges) {
    return {std::move(edges), Norator{}};
}
Device make_nullator(std::vector<std::string> edges) {
    return {std::move(edges), Nullator{}};
}
Device make_gyrator(std::vector<std::string> edges, Eigen::VectorXd r) {
    return {std::move(edges), Gyrator{std::move(r)}};
}
Device make_transformer(std::vector<std::string> edges) {
    return {std::move(edges), IdealTransformer{}};
}
Device make_controlled(ControlledSource::Type type, std::string controlling,
                       std::string controlled, Complex gain) {
    return {{std::move(controlling), std::move(controlled)},
            ControlledSource{type, gain, 0}};
}
Device make_generic_affine(std::vector<std::string> edges, Matrix b, Matrix q,
                           Vector s) {
    return {std::move(edges), GenericAffine{std::move(b), std::move(q), std::move(s)}};
}

}  // namespace multiport
