#pragma once

// Shared helpers for building labeled spaces in tests: explicit label orders
// mapped onto the canonical column order, plus seeded random generators.

#include <random>
#include <string>
#include <vector>

#include "multiport/subspace.hpp"

namespace multiport::testing {

using Rng = std::mt19937_64;

inline Complex unit_disc(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> a(0.0, 2.0 * 3.14159265358979323846);
    double r = std::sqrt(u(rng));
    double th = a(rng);
    return {r * std::cos(th), r * std::sin(th)};
}

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = unit_disc(rng);
    }
    return m;
}

/// Subspace spanned by `dim` random rows on the given index.
inline Subspace random_subspace(Rng& rng, const IndexSet& index, Eigen::Index dim) {
    return Subspace::from_rows(index,
                               random_matrix(rng, dim, static_cast<Eigen::Index>(index.size())));
}

/// Build a subspace from rows given over an explicit label order.
inline Subspace make_space(const std::vector<Label>& order, const Matrix& rows,
                           double tol = kDefaultTol) {
    IndexSet index{order};
    Matrix canon(rows.rows(), rows.cols());
    for (std::size_t j = 0; j < order.size(); ++j) {
        canon.col(static_cast<Eigen::Index>(*index.position(order[j]))) =
            rows.col(static_cast<Eigen::Index>(j));
    }
    return Subspace::from_rows(index, canon, tol);
}

inline LabeledVector make_vector(const std::vector<Label>& order, const Vector& vals) {
    IndexSet index{order};
    Vector canon(vals.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
        canon(static_cast<Eigen::Index>(*index.position(order[j]))) =
            vals(static_cast<Eigen::Index>(j));
    }
    return {index, canon};
}

inline std::vector<Label> vlabels(const std::vector<std::string>& edges) {
    std::vector<Label> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(Label::voltage(e));
    return out;
}

/// Voltage labels then current labels for the same edges (block order).
inline std::vector<Label> pair_labels(const std::vector<std::string>& edges) {
    std::vector<Label> out;
    for (const auto& e : edges) out.push_back(Label::voltage(e));
    for (const auto& e : edges) out.push_back(Label::current(e));
    return out;
}

}  // namespace multiport::testing
