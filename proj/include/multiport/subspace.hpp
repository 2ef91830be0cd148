#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "multiport/labels.hpp"

namespace multiport {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Global relative rank tolerance: a singular value sigma is treated as zero
/// iff sigma <= tol * max(m, n) * sigma_max.
inline constexpr double kDefaultTol = 1e-10;

/// A complex vector on a labeled index set; values aligned with the canonical
/// column order of `index`.
struct LabeledVector {
    IndexSet index;
    Vector values;

    Complex at(const Label& l) const;
    LabeledVector restricted_to(const IndexSet& sub) const;
};

/// A vector space on a labeled finite index set, stored as a representative
/// matrix with orthonormal rows (inner product <f,g> = sum f(e) conj(g(e))).
/// Immutable after construction.
class Subspace {
public:
    Subspace() = default;
    /// Span of the given rows; rank-reduces via SVD with the global tolerance.
    static Subspace from_rows(IndexSet index, const Matrix& rows,
                              double tol = kDefaultTol);
    /// The zero space 0_X.
    static Subspace zero(IndexSet index);
    /// The full space F_X.
    static Subspace full(IndexSet index);

    const IndexSet& index() const { return index_; }
    /// Orthonormal representative matrix, dim() x index().size().
    const Matrix& basis() const { return basis_; }
    Eigen::Index dim() const { return basis_.rows(); }

private:
    friend Subspace make_subspace_trusted(IndexSet, Matrix);
    IndexSet index_;
    Matrix basis_;
};

/// Wrap rows already known to be orthonormal, skipping recompression.
Subspace make_subspace_trusted(IndexSet index, Matrix orthonormal_rows);

/// particular vector + vector space translate on the same index set.
/// (p1, V) and (p2, V) denote the same space iff p1 - p2 in V; the stored
/// particular is canonicalized to the minimum-norm member.
class AffineSpace {
public:
    AffineSpace() = default;
    AffineSpace(LabeledVector particular, Subspace translate);
    /// The affine space {p} + V with p given on V's index.
    static AffineSpace from_parts(const IndexSet& index, const Vector& particular,
                                  const Subspace& translate);
    /// Whole space / single point conveniences.
    static AffineSpace subspace(Subspace v);
    static AffineSpace point(LabeledVector p);

    const IndexSet& index() const { return translate_.index(); }
    const Subspace& translate() const { return translate_; }
    /// Minimum-norm particular vector.
    const Vector& particular() const { return particular_; }
    LabeledVector particular_vector() const { return {index(), particular_}; }

private:
    Vector particular_;
    Subspace translate_;
};

/// Constraint form M x = rhs of an affine space (rows of M independent).
struct ConstraintForm {
    IndexSet index;
    Matrix lhs;
    Vector rhs;
};

// ---------------------------------------------------------------------------
// Core operations (all pure; inputs never mutated)
// ---------------------------------------------------------------------------

/// V* = { g : <f,g> = 0 for all f in V }.
Subspace orthogonal_complement(const Subspace& v, double tol = kDefaultTol);

/// Extended sum on possibly overlapping index sets; missing coordinates are
/// padded with the zero space.
Subspace sum(const Subspace& v1, const Subspace& v2, double tol = kDefaultTol);

/// Extended intersection; missing coordinates are padded with the full space.
Subspace intersection(const Subspace& v1, const Subspace& v2,
                      double tol = kDefaultTol);

/// Coordinate projection onto T (T must be a subset of the index).
Subspace restriction(const Subspace& v, const IndexSet& t, double tol = kDefaultTol);
AffineSpace restriction(const AffineSpace& a, const IndexSet& t,
                        double tol = kDefaultTol);

/// Vectors of K that vanish outside T, projected onto T. For affine spaces
/// the result may be void (no member vanishes outside T).
Subspace contraction(const Subspace& v, const IndexSet& t, double tol = kDefaultTol);
std::optional<AffineSpace> contraction(const AffineSpace& a, const IndexSet& t,
                                       double tol = kDefaultTol);

/// Negate the coordinates in T; involution.
Subspace sign_flip(const Subspace& v, const IndexSet& t);
AffineSpace sign_flip(const AffineSpace& a, const IndexSet& t);
Subspace sign_flip(const Subspace& v, const SignMap& m);
AffineSpace sign_flip(const AffineSpace& a, const SignMap& m);

/// Rename labels via a bijection; columns are re-sorted canonically.
Subspace relabel(const Subspace& v, const LabelMap& map);
AffineSpace relabel(const AffineSpace& a, const LabelMap& map);

/// Matched composition K1 <-> K2 over the shared labels; the result lives on
/// the symmetric difference of the index sets.
Subspace matched_composition(const Subspace& k1, const Subspace& k2,
                             double tol = kDefaultTol);
std::optional<AffineSpace> matched_composition(const AffineSpace& k1,
                                               const AffineSpace& k2,
                                               double tol = kDefaultTol);

/// Skewed composition: matched composition after negating the shared
/// coordinates of the second operand.
Subspace skewed_composition(const Subspace& k1, const Subspace& k2,
                            double tol = kDefaultTol);
std::optional<AffineSpace> skewed_composition(const AffineSpace& k1,
                                              const AffineSpace& k2,
                                              double tol = kDefaultTol);

/// Adjoint of a space on a voltage/current pair set: orthogonal complement,
/// currents negated, then voltage and current roles interchanged per edge.
/// For an affine space this is the adjoint of its translate. Involution.
Subspace adjoint(const Subspace& v, double tol = kDefaultTol);
Subspace adjoint(const AffineSpace& a, double tol = kDefaultTol);

/// Intersection of affine spaces (extended padding); nullopt when empty.
std::optional<AffineSpace> intersect_affine(const AffineSpace& a1,
                                            const AffineSpace& a2,
                                            double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Comparisons and membership
// ---------------------------------------------------------------------------

/// Symmetric containment residual: the largest norm of a unit basis row of
/// either space orthogonal to the other's row space. Infinite when the index
/// sets differ; dimension mismatch shows up as a large residual.
double subspace_residual(const Subspace& v1, const Subspace& v2);
bool equal(const Subspace& v1, const Subspace& v2, double tol = kDefaultTol);

/// Residual of affine equality: translate residual plus membership residual
/// of each particular in the other space.
double affine_residual(const AffineSpace& a1, const AffineSpace& a2);
bool equal(const AffineSpace& a1, const AffineSpace& a2, double tol = kDefaultTol);

/// Distance from x to the subspace / affine space (2-norm of the component
/// outside the space).
double membership_residual(const Subspace& v, const LabeledVector& x);
double membership_residual(const AffineSpace& a, const LabeledVector& x);

// ---------------------------------------------------------------------------
// Constraint-form conversions
// ---------------------------------------------------------------------------

/// Rows M and rhs with A = { x : M x = rhs }; M has full row rank and
/// orthonormal rows.
ConstraintForm constraints(const AffineSpace& a, double tol = kDefaultTol);
ConstraintForm constraints(const Subspace& v, double tol = kDefaultTol);

/// Solution set of M x = rhs; nullopt when inconsistent.
std::optional<AffineSpace> affine_from_constraints(const IndexSet& index,
                                                   const Matrix& lhs,
                                                   const Vector& rhs,
                                                   double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Numeric helpers shared across modules
// ---------------------------------------------------------------------------

/// Rank by the global singular-value rule.
Eigen::Index numeric_rank(const Matrix& m, double tol = kDefaultTol);

/// Classified dense solve of a x = b. x is the minimum-norm least-squares
/// solution; the status is decided by the global rank rule and the residual.
enum class SystemStatus { Unique, NonUnique, Inconsistent };
struct SystemSolution {
    SystemStatus status = SystemStatus::Inconsistent;
    Vector x;
};
SystemSolution solve_classified(const Matrix& a, const Vector& b,
                                double tol = kDefaultTol);

/// Orthonormal basis of { x : m x = 0 }, rows as kernel vectors.
Matrix kernel_rows(const Matrix& m, double tol = kDefaultTol);

/// Reduced row echelon form over the given column order (in place);
/// deterministic, pivots normalized to one. Returns the rank. When
/// pivot_cols >= 0 only the leading pivot_cols columns may host pivots
/// (trailing columns ride along, e.g. an augmented right-hand side).
Eigen::Index reduced_row_echelon(Matrix& m, double tol = kDefaultTol,
                                 Eigen::Index pivot_cols = -1);

}  // namespace multiport
