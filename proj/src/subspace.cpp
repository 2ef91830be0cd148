#include "multiport/subspace.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace multiport {

namespace {

double sv_threshold(const Eigen::VectorXd& sv, Eigen::Index rows, Eigen::Index cols,
                    double tol) {
    if (sv.size() == 0) return 0.0;
    return tol * static_cast<double>(std::max(rows, cols)) * sv(0);
}

Eigen::Index rank_of(const Eigen::VectorXd& sv, Eigen::Index rows, Eigen::Index cols,
                     double tol) {
    const double thresh = sv_threshold(sv, rows, cols, tol);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > thresh) ++r;
    return r;
}

/// Orthonormal rows spanning the row space of `rows`.
Matrix row_basis(const Matrix& rows, double tol) {
    if (rows.rows() == 0 || rows.cols() == 0) return Matrix(0, rows.cols());
    Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeThinV);
    const Eigen::Index r = rank_of(svd.singularValues(), rows.rows(), rows.cols(), tol);
    return svd.matrixV().leftCols(r).adjoint();
}

/// Index positions of `sub` inside `super`.
std::vector<Eigen::Index> positions(const IndexSet& super, const IndexSet& sub) {
    std::vector<Eigen::Index> pos;
    pos.reserve(sub.size());
    for (const auto& l : sub.labels()) {
        auto p = super.position(l);
        if (!p) throw Error("label " + l.str() + " not in index set");
        pos.push_back(static_cast<Eigen::Index>(*p));
    }
    return pos;
}

Matrix take_columns(const Matrix& m, const std::vector<Eigen::Index>& cols) {
    Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
    return out;
}

/// Zero-pad the rows of a basis from `from` onto `onto` (from must be a subset).
Matrix pad_columns(const Matrix& basis, const IndexSet& from, const IndexSet& onto) {
    Matrix out = Matrix::Zero(basis.rows(), static_cast<Eigen::Index>(onto.size()));
    auto pos = positions(onto, from);
    for (std::size_t j = 0; j < pos.size(); ++j) out.col(pos[j]) = basis.col(static_cast<Eigen::Index>(j));
    return out;
}

Vector pad_vector(const Vector& v, const IndexSet& from, const IndexSet& onto) {
    Vector out = Vector::Zero(static_cast<Eigen::Index>(onto.size()));
    auto pos = positions(onto, from);
    for (std::size_t j = 0; j < pos.size(); ++j) out(pos[j]) = v(static_cast<Eigen::Index>(j));
    return out;
}

/// Residual of a single row vector against an orthonormal row basis.
double row_residual(const Eigen::RowVectorXcd& x, const Matrix& w) {
    if (w.rows() == 0) return x.norm();
    Eigen::RowVectorXcd proj = (x * w.adjoint()) * w;
    return (x - proj).norm();
}

/// x minus its projection onto the space with orthonormal rows w.
Vector reject_from(const Vector& x, const Matrix& w) {
    if (w.rows() == 0) return x;
    return x - w.transpose() * (w.conjugate() * x);
}

}  // namespace

Complex LabeledVector::at(const Label& l) const {
    auto p = index.position(l);
    if (!p) throw Error("label " + l.str() + " not in vector index");
    return values(static_cast<Eigen::Index>(*p));
}

LabeledVector LabeledVector::restricted_to(const IndexSet& sub) const {
    auto pos = positions(index, sub);
    Vector out(static_cast<Eigen::Index>(pos.size()));
    for (std::size_t j = 0; j < pos.size(); ++j) out(static_cast<Eigen::Index>(j)) = values(pos[j]);
    return {sub, out};
}

Subspace make_subspace_trusted(IndexSet index, Matrix orthonormal_rows) {
    Subspace s;
    s.index_ = std::move(index);
    s.basis_ = std::move(orthonormal_rows);
    return s;
}

Subspace Subspace::from_rows(IndexSet index, const Matrix& rows, double tol) {
    if (rows.cols() != static_cast<Eigen::Index>(index.size())) {
        throw Error("basis column count does not match index set size");
    }
    return make_subspace_trusted(std::move(index), row_basis(rows, tol));
}

Subspace Subspace::zero(IndexSet index) {
    Matrix b(0, static_cast<Eigen::Index>(index.size()));
    return make_subspace_trusted(std::move(index), std::move(b));
}

Subspace Subspace::full(IndexSet index) {
    Matrix b = Matrix::Identity(static_cast<Eigen::Index>(index.size()),
                                static_cast<Eigen::Index>(index.size()));
    return make_subspace_trusted(std::move(index), std::move(b));
}

AffineSpace::AffineSpace(LabeledVector particular, Subspace translate)
    : translate_(std::move(translate)) {
    if (!(particular.index == translate_.index())) {
        throw Error("particular vector index does not match translate index");
    }
    particular_ = reject_from(particular.values, translate_.basis());
}

AffineSpace AffineSpace::from_parts(const IndexSet& index, const Vector& particular,
                                    const Subspace& translate) {
    return AffineSpace(LabeledVector{index, particular}, translate);
}

AffineSpace AffineSpace::subspace(Subspace v) {
    AffineSpace a;
    a.particular_ = Vector::Zero(static_cast<Eigen::Index>(v.index().size()));
    a.translate_ = std::move(v);
    return a;
}

AffineSpace AffineSpace::point(LabeledVector p) {
    Subspace zero = Subspace::zero(p.index);
    return AffineSpace(std::move(p), std::move(zero));
}

Subspace orthogonal_complement(const Subspace& v, double tol) {
    const Eigen::Index n = static_cast<Eigen::Index>(v.index().size());
    if (v.dim() == 0) return Subspace::full(v.index());
    if (n == 0) return Subspace::zero(v.index());
    Eigen::JacobiSVD<Matrix> svd(v.basis(), Eigen::ComputeFullV);
    const Eigen::Index r = rank_of(svd.singularValues(), v.basis().rows(), n, tol);
    // kernel columns nu satisfy B nu = 0; complement vectors are their conjugates
    Matrix rows = svd.matrixV().rightCols(n - r).adjoint();
    return make_subspace_trusted(v.index(), std::move(rows));
}

Subspace sum(const Subspace& v1, const Subspace& v2, double tol) {
    IndexSet u = v1.index().set_union(v2.index());
    Matrix stacked(v1.dim() + v2.dim(), static_cast<Eigen::Index>(u.size()));
    stacked.topRows(v1.dim()) = pad_columns(v1.basis(), v1.index(), u);
    stacked.bottomRows(v2.dim()) = pad_columns(v2.basis(), v2.index(), u);
    return Subspace::from_rows(std::move(u), stacked, tol);
}

Subspace intersection(const Subspace& v1, const Subspace& v2, double tol) {
    // (V1 ^ V2) = (V1* + V2*)*; the sum's zero padding matches the
    // intersection's full padding through the complement.
    return orthogonal_complement(
        sum(orthogonal_complement(v1, tol), orthogonal_complement(v2, tol), tol), tol);
}

Subspace restriction(const Subspace& v, const IndexSet& t, double tol) {
    if (!v.index().contains_all(t)) {
        throw Error("restriction target is not a subset of the index");
    }
    return Subspace::from_rows(t, take_columns(v.basis(), positions(v.index(), t)), tol);
}

AffineSpace restriction(const AffineSpace& a, const IndexSet& t, double tol) {
    LabeledVector p{a.index(), a.particular()};
    return AffineSpace(p.restricted_to(t), restriction(a.translate(), t, tol));
}

Subspace contraction(const Subspace& v, const IndexSet& t, double tol) {
    if (!v.index().contains_all(t)) {
        throw Error("contraction target is not a subset of the index");
    }
    IndexSet outside = v.index().set_difference(t);
    if (outside.empty()) return restriction(v, t, tol);
    Matrix b_out = take_columns(v.basis(), positions(v.index(), outside));
    // combinations c with c^T B vanishing outside t
    Matrix combos = kernel_rows(b_out.transpose(), tol);
    Matrix rows = combos * v.basis();
    return Subspace::from_rows(t, take_columns(rows, positions(v.index(), t)), tol);
}

std::optional<AffineSpace> contraction(const AffineSpace& a, const IndexSet& t,
                                       double tol) {
    if (!a.index().contains_all(t)) {
        throw Error("contraction target is not a subset of the index");
    }
    IndexSet outside = a.index().set_difference(t);
    if (outside.empty()) return restriction(a, t, tol);
    auto out_pos = positions(a.index(), outside);
    Matrix b_out = take_columns(a.translate().basis(), out_pos);
    Vector p_out(static_cast<Eigen::Index>(out_pos.size()));
    for (std::size_t j = 0; j < out_pos.size(); ++j) p_out(static_cast<Eigen::Index>(j)) = a.particular()(out_pos[j]);

    // member p + B^T c vanishing outside t:  B_out^T c = -p_out
    Vector c;
    double resid;
    if (b_out.rows() == 0) {
        c = Vector::Zero(0);
        resid = p_out.norm();
    } else {
        Eigen::JacobiSVD<Matrix> svd(b_out.transpose(),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
        c = svd.solve(-p_out);
        resid = (b_out.transpose() * c + p_out).norm();
    }
    if (resid > tol * static_cast<double>(a.index().size()) *
                    std::max(1.0, p_out.norm())) {
        return std::nullopt;  // no member vanishes outside t
    }
    Vector member = a.particular() + a.translate().basis().transpose() * c;
    LabeledVector full{a.index(), member};
    return AffineSpace(full.restricted_to(t), contraction(a.translate(), t, tol));
}

Subspace sign_flip(const Subspace& v, const IndexSet& t) {
    if (!v.index().contains_all(t)) {
        throw Error("sign flip labels not contained in index set");
    }
    Matrix b = v.basis();
    for (auto p : positions(v.index(), t)) b.col(p) = -b.col(p);
    return make_subspace_trusted(v.index(), std::move(b));
}

AffineSpace sign_flip(const AffineSpace& a, const IndexSet& t) {
    Vector p = a.particular();
    for (auto pos : positions(a.index(), t)) p(pos) = -p(pos);
    return AffineSpace::from_parts(a.index(), p, sign_flip(a.translate(), t));
}

Subspace sign_flip(const Subspace& v, const SignMap& m) {
    if (!(m.index == v.index())) throw Error("sign map index mismatch");
    std::vector<Label> flip;
    for (std::size_t i = 0; i < m.signs.size(); ++i) {
        if (m.signs[i] < 0) flip.push_back(m.index.at(i));
    }
    return sign_flip(v, IndexSet(std::move(flip)));
}

AffineSpace sign_flip(const AffineSpace& a, const SignMap& m) {
    if (!(m.index == a.index())) throw Error("sign map index mismatch");
    std::vector<Label> flip;
    for (std::size_t i = 0; i < m.signs.size(); ++i) {
        if (m.signs[i] < 0) flip.push_back(m.index.at(i));
    }
    return sign_flip(a, IndexSet(std::move(flip)));
}

Subspace relabel(const Subspace& v, const LabelMap& map) {
    map.validate_bijection_on(v.index());
    std::vector<Label> new_labels;
    new_labels.reserve(v.index().size());
    for (const auto& l : v.index().labels()) new_labels.push_back(map.apply(l));
    IndexSet target(new_labels);  // sorts canonically, checks distinct
    Matrix b(v.dim(), static_cast<Eigen::Index>(target.size()));
    for (std::size_t j = 0; j < new_labels.size(); ++j) {
        b.col(static_cast<Eigen::Index>(*target.position(new_labels[j]))) =
            v.basis().col(static_cast<Eigen::Index>(j));
    }
    return make_subspace_trusted(std::move(target), std::move(b));
}

AffineSpace relabel(const AffineSpace& a, const LabelMap& map) {
    map.validate_bijection_on(a.index());
    std::vector<Label> new_labels;
    new_labels.reserve(a.index().size());
    for (const auto& l : a.index().labels()) new_labels.push_back(map.apply(l));
    IndexSet target(new_labels);
    Vector p(static_cast<Eigen::Index>(target.size()));
    for (std::size_t j = 0; j < new_labels.size(); ++j) {
        p(static_cast<Eigen::Index>(*target.position(new_labels[j]))) =
            a.particular()(static_cast<Eigen::Index>(j));
    }
    return AffineSpace::from_parts(target, p, relabel(a.translate(), map));
}

Subspace matched_composition(const Subspace& k1, const Subspace& k2, double tol) {
    IndexSet result_index = k1.index().symmetric_difference(k2.index());
    return restriction(intersection(k1, k2, tol), result_index, tol);
}

std::optional<AffineSpace> matched_composition(const AffineSpace& k1,
                                               const AffineSpace& k2, double tol) {
    auto common = intersect_affine(k1, k2, tol);
    if (!common) return std::nullopt;
    IndexSet result_index = k1.index().symmetric_difference(k2.index());
    return restriction(*common, result_index, tol);
}

Subspace skewed_composition(const Subspace& k1, const Subspace& k2, double tol) {
    IndexSet shared = k1.index().set_intersection(k2.index());
    return matched_composition(k1, sign_flip(k2, shared), tol);
}

std::optional<AffineSpace> skewed_composition(const AffineSpace& k1,
                                              const AffineSpace& k2, double tol) {
    IndexSet shared = k1.index().set_intersection(k2.index());
    return matched_composition(k1, sign_flip(k2, shared), tol);
}

Subspace adjoint(const Subspace& v, double tol) {
    if (!v.index().is_pair_set()) {
        throw Error("adjoint requires a voltage/current pair set, got " +
                    v.index().str());
    }
    IndexSet currents = IndexSet::currents(v.index().edges());
    Subspace flipped = sign_flip(orthogonal_complement(v, tol), currents);
    return relabel(flipped, LabelMap::swap_kinds(v.index()));
}

Subspace adjoint(const AffineSpace& a, double tol) { return adjoint(a.translate(), tol); }

std::optional<AffineSpace> intersect_affine(const AffineSpace& a1,
                                            const AffineSpace& a2, double tol) {
    IndexSet u = a1.index().set_union(a2.index());
    // pad with the full space on missing coordinates
    auto pad_affine = [&](const AffineSpace& a) {
        IndexSet missing = u.set_difference(a.index());
        Matrix basis(a.translate().dim() + static_cast<Eigen::Index>(missing.size()),
                     static_cast<Eigen::Index>(u.size()));
        basis.topRows(a.translate().dim()) =
            pad_columns(a.translate().basis(), a.index(), u);
        Matrix free_rows = Matrix::Zero(static_cast<Eigen::Index>(missing.size()),
                                        static_cast<Eigen::Index>(u.size()));
        auto pos = positions(u, missing);
        for (std::size_t j = 0; j < pos.size(); ++j) free_rows(static_cast<Eigen::Index>(j), pos[j]) = 1.0;
        basis.bottomRows(free_rows.rows()) = free_rows;
        return AffineSpace::from_parts(u, pad_vector(a.particular(), a.index(), u),
                                       make_subspace_trusted(u, std::move(basis)));
    };
    AffineSpace p1 = pad_affine(a1);
    AffineSpace p2 = pad_affine(a2);

    // common point: p1 + W1^T a = p2 + W2^T b
    const Matrix& w1 = p1.translate().basis();
    const Matrix& w2 = p2.translate().basis();
    Vector d = p2.particular() - p1.particular();
    Matrix lhs(static_cast<Eigen::Index>(u.size()), w1.rows() + w2.rows());
    lhs.leftCols(w1.rows()) = w1.transpose();
    lhs.rightCols(w2.rows()) = -w2.transpose();
    Vector point;
    if (lhs.cols() == 0) {
        if (d.norm() > tol * static_cast<double>(u.size()) * std::max(1.0, p1.particular().norm() + p2.particular().norm())) {
            return std::nullopt;
        }
        point = p1.particular();
    } else {
        Eigen::JacobiSVD<Matrix> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Vector coeffs = svd.solve(d);
        double resid = (lhs * coeffs - d).norm();
        if (resid > tol * static_cast<double>(u.size()) * std::max(1.0, d.norm())) {
            return std::nullopt;
        }
        point = p1.particular() + w1.transpose() * coeffs.head(w1.rows());
    }
    Subspace v = intersection(p1.translate(), p2.translate(), tol);
    return AffineSpace::from_parts(u, point, v);
}

double subspace_residual(const Subspace& v1, const Subspace& v2) {
    if (!(v1.index() == v2.index())) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < v1.dim(); ++i) {
        worst = std::max(worst, row_residual(v1.basis().row(i), v2.basis()));
    }
    for (Eigen::Index i = 0; i < v2.dim(); ++i) {
        worst = std::max(worst, row_residual(v2.basis().row(i), v1.basis()));
    }
    return worst;
}

bool equal(const Subspace& v1, const Subspace& v2, double tol) {
    if (!(v1.index() == v2.index()) || v1.dim() != v2.dim()) return false;
    return subspace_residual(v1, v2) <=
           tol * static_cast<double>(std::max<std::size_t>(1, v1.index().size()));
}

double affine_residual(const AffineSpace& a1, const AffineSpace& a2) {
    if (!(a1.index() == a2.index())) return std::numeric_limits<double>::infinity();
    double r = subspace_residual(a1.translate(), a2.translate());
    Vector d = a1.particular() - a2.particular();
    double pr = reject_from(d, a1.translate().basis()).norm();
    pr = std::max(pr, reject_from(d, a2.translate().basis()).norm());
    double scale = std::max(1.0, std::max(a1.particular().norm(), a2.particular().norm()));
    return std::max(r, pr / scale);
}

bool equal(const AffineSpace& a1, const AffineSpace& a2, double tol) {
    if (!(a1.index() == a2.index()) || a1.translate().dim() != a2.translate().dim()) {
        return false;
    }
    return affine_residual(a1, a2) <=
           tol * static_cast<double>(std::max<std::size_t>(1, a1.index().size()));
}

double membership_residual(const Subspace& v, const LabeledVector& x) {
    if (!(v.index() == x.index)) throw Error("membership index mismatch");
    return reject_from(x.values, v.basis()).norm();
}

double membership_residual(const AffineSpace& a, const LabeledVector& x) {
    if (!(a.index() == x.index)) throw Error("membership index mismatch");
    return reject_from(x.values - a.particular(), a.translate().basis()).norm();
}

ConstraintForm constraints(const AffineSpace& a, double tol) {
    Matrix lhs = orthogonal_complement(a.translate(), tol).basis().conjugate();
    Vector rhs = lhs * a.particular();
    return {a.index(), std::move(lhs), std::move(rhs)};
}

ConstraintForm constraints(const Subspace& v, double tol) {
    Matrix lhs = orthogonal_complement(v, tol).basis().conjugate();
    Vector rhs = Vector::Zero(lhs.rows());
    return {v.index(), std::move(lhs), std::move(rhs)};
}

std::optional<AffineSpace> affine_from_constraints(const IndexSet& index,
                                                   const Matrix& lhs,
                                                   const Vector& rhs, double tol) {
    if (lhs.cols() != static_cast<Eigen::Index>(index.size())) {
        throw Error("constraint column count does not match index set size");
    }
    if (lhs.rows() != rhs.size()) throw Error("constraint row/rhs mismatch");
    Subspace translate = make_subspace_trusted(index, kernel_rows(lhs, tol));
    if (lhs.rows() == 0) return AffineSpace::subspace(std::move(translate));
    Eigen::JacobiSVD<Matrix> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vector p = svd.solve(rhs);
    double resid = (lhs * p - rhs).norm();
    double scale = std::max(1.0, rhs.norm());
    if (resid > tol * static_cast<double>(std::max(lhs.rows(), lhs.cols())) * scale) {
        return std::nullopt;
    }
    return AffineSpace::from_parts(index, p, translate);
}

Eigen::Index numeric_rank(const Matrix& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return rank_of(svd.singularValues(), m.rows(), m.cols(), tol);
}

SystemSolution solve_classified(const Matrix& a, const Vector& b, double tol) {
    SystemSolution out;
    if (a.cols() == 0) {
        // the empty vector is the only candidate; consistent iff b vanishes
        out.x = Vector::Zero(0);
        out.status = b.norm() <= tol * static_cast<double>(std::max<Eigen::Index>(1, a.rows()))
                         ? SystemStatus::Unique
                         : SystemStatus::Inconsistent;
        return out;
    }
    if (a.rows() == 0) {
        out.x = Vector::Zero(a.cols());
        out.status = SystemStatus::NonUnique;
        return out;
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const Eigen::Index rank = rank_of(sv, a.rows(), a.cols(), tol);
    Vector y = svd.matrixU().leftCols(rank).adjoint() * b;
    for (Eigen::Index i = 0; i < rank; ++i) y(i) /= sv(i);
    out.x = svd.matrixV().leftCols(rank) * y;
    const double smax = sv.size() ? sv(0) : 0.0;
    const double resid = (a * out.x - b).norm();
    const double scale = std::max({1.0, b.norm(), smax * out.x.norm()});
    const bool consistent =
        resid <= tol * static_cast<double>(std::max(a.rows(), a.cols())) * scale;
    if (!consistent) {
        out.status = SystemStatus::Inconsistent;
    } else {
        out.status = rank == a.cols() ? SystemStatus::Unique : SystemStatus::NonUnique;
    }
    return out;
}

Matrix kernel_rows(const Matrix& m, double tol) {
    const Eigen::Index n = m.cols();
    if (m.rows() == 0 || n == 0) return Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Eigen::Index r = rank_of(svd.singularValues(), m.rows(), n, tol);
    return svd.matrixV().rightCols(n - r).transpose();
}

Eigen::Index reduced_row_echelon(Matrix& m, double tol, Eigen::Index pivot_cols) {
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    if (pivot_cols < 0 || pivot_cols > cols) pivot_cols = cols;
    const double scale = m.cwiseAbs().maxCoeff();
    const double thresh =
        tol * static_cast<double>(std::max(rows, cols)) * std::max(scale, 1e-300);
    Eigen::Index r = 0;
    for (Eigen::Index col = 0; col < pivot_cols && r < rows; ++col) {
        Eigen::Index pivot = r;
        double best = std::abs(m(r, col));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            if (std::abs(m(i, col)) > best) {
                best = std::abs(m(i, col));
                pivot = i;
            }
        }
        if (best <= thresh) {
            m.block(r, col, rows - r, 1).setZero();
            continue;
        }
        m.row(r).swap(m.row(pivot));
        m.row(r) /= m(r, col);
        m(r, col) = 1.0;  // exact pivot
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r) continue;
            Complex f = m(i, col);
            if (f != Complex(0.0, 0.0)) {
                m.row(i) -= f * m.row(r);
                m(i, col) = 0.0;
            }
        }
        ++r;
    }
    return r;
}

}  // namespace multiport
