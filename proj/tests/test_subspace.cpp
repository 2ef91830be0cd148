#include <doctest.h>

#include "multiport/subspace.hpp"
#include "support/generators.hpp"

using namespace multiport;
using namespace multiport::testing;

namespace {

const std::vector<Label> ab = vlabels({"a", "b"});
const std::vector<Label> abc = vlabels({"a", "b", "c"});

Matrix rows1(std::initializer_list<Complex> r) {
    Matrix m(1, static_cast<Eigen::Index>(r.size()));
    Eigen::Index j = 0;
    for (auto c : r) m(0, j++) = c;
    return m;
}

}  // namespace

TEST_SUITE("subspace.complement") {
    TEST_CASE("axis aligned") {
        Subspace v = make_space(ab, rows1({1.0, 0.0}));
        Subspace expect = make_space(ab, rows1({0.0, 1.0}));
        CHECK(equal(orthogonal_complement(v), expect));
    }

    TEST_CASE("standard representative (I|K) -> (-K*|I)") {
        Rng rng(7);
        auto order = vlabels({"a", "b", "c", "d", "e"});
        Matrix k = random_matrix(rng, 2, 3);
        Matrix left(2, 5), right(3, 5);
        left << Matrix::Identity(2, 2), k;
        right << -k.adjoint(), Matrix::Identity(3, 3);
        Subspace v = make_space(order, left);
        Subspace expect = make_space(order, right);
        CHECK(equal(orthogonal_complement(v), expect));
    }

    TEST_CASE("complement of the full space is the zero space") {
        IndexSet x{abc};
        CHECK(equal(orthogonal_complement(Subspace::full(x)), Subspace::zero(x)));
        CHECK(equal(orthogonal_complement(Subspace::zero(x)), Subspace::full(x)));
    }

    TEST_CASE("dimension law and involution on random spaces") {
        Rng rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            std::uniform_int_distribution<int> nd(1, 8);
            int n = nd(rng);
            std::uniform_int_distribution<int> rd(0, n);
            std::vector<std::string> edges;
            for (int i = 0; i < n; ++i) edges.push_back("e" + std::to_string(i));
            IndexSet x = IndexSet::voltages(edges);
            Subspace v = random_subspace(rng, x, rd(rng));
            Subspace vp = orthogonal_complement(v);
            CHECK(v.dim() + vp.dim() == static_cast<Eigen::Index>(x.size()));
            CHECK(subspace_residual(orthogonal_complement(vp), v) < 1e-12);
        }
    }
}

TEST_SUITE("subspace.sum_intersection") {
    TEST_CASE("additive identity") {
        Rng rng(3);
        IndexSet x{abc};
        Subspace v = random_subspace(rng, x, 2);
        CHECK(equal(sum(v, Subspace::zero(x)), v));
    }

    TEST_CASE("disjoint sum is the direct sum") {
        Rng rng(5);
        IndexSet xa = IndexSet::voltages({"a1", "a2"});
        IndexSet xb = IndexSet::voltages({"b1", "b2", "b3"});
        Subspace va = random_subspace(rng, xa, 1);
        Subspace vb = random_subspace(rng, xb, 2);
        Subspace s = sum(va, vb);
        CHECK(s.dim() == va.dim() + vb.dim());
        CHECK(s.index() == xa.set_union(xb));
        // every padded generator of either side belongs to the sum
        CHECK(restriction(s, xa).dim() == va.dim());
    }

    TEST_CASE("spanning pair fills the plane") {
        Subspace v1 = make_space(ab, rows1({1.0, 1.0}));
        Subspace v2 = make_space(ab, rows1({1.0, -1.0}));
        CHECK(equal(sum(v1, v2), Subspace::full(IndexSet{ab})));
    }

    TEST_CASE("intersection identities") {
        Rng rng(9);
        IndexSet x{abc};
        Subspace v = random_subspace(rng, x, 2);
        CHECK(equal(intersection(v, Subspace::full(x)), v));

        Matrix both(2, 2);
        both << 1.0, 0.0, 0.0, 1.0;
        Subspace plane = make_space(ab, both);
        Subspace line = make_space(ab, rows1({1.0, 1.0}));
        CHECK(equal(intersection(plane, line), line));
    }

    TEST_CASE("complementary orthogonal pair meets only at zero") {
        Rng rng(13);
        for (int trial = 0; trial < 25; ++trial) {
            IndexSet x = IndexSet::voltages({"a", "b", "c", "d"});
            std::uniform_int_distribution<int> rd(0, 4);
            Subspace v = random_subspace(rng, x, rd(rng));
            Subspace meet = intersection(v, orthogonal_complement(v));
            CHECK(meet.dim() == 0);
        }
    }
}

TEST_SUITE("subspace.restriction_contraction") {
    TEST_CASE("restriction projects coordinates") {
        Subspace v = make_space(ab, rows1({1.0, 2.0}));
        Subspace r = restriction(v, IndexSet::voltages({"a"}));
        CHECK(equal(r, make_space(vlabels({"a"}), rows1({1.0}))));
        CHECK(equal(restriction(v, v.index()), v));
    }

    TEST_CASE("restriction outside the index throws") {
        Subspace v = make_space(ab, rows1({1.0, 2.0}));
        CHECK_THROWS_AS((void)restriction(v, IndexSet::voltages({"z"})), Error);
    }

    TEST_CASE("contraction keeps vectors vanishing outside") {
        Matrix both(2, 2);
        both << 1.0, 0.0, 0.0, 1.0;
        Subspace plane = make_space(ab, both);
        IndexSet a = IndexSet::voltages({"a"});
        CHECK(equal(contraction(plane, a), Subspace::full(a)));

        Subspace diag = make_space(ab, rows1({1.0, 1.0}));
        CHECK(equal(contraction(diag, a), Subspace::zero(a)));
    }

    TEST_CASE("rank splitting and duality of restriction/contraction") {
        Rng rng(17);
        for (int trial = 0; trial < 40; ++trial) {
            IndexSet s = IndexSet::voltages({"s1", "s2", "s3"});
            IndexSet p = IndexSet::voltages({"p1", "p2"});
            IndexSet sp = s.set_union(p);
            std::uniform_int_distribution<int> rd(0, 5);
            Subspace v = random_subspace(rng, sp, rd(rng));
            CHECK(v.dim() == restriction(v, s).dim() + contraction(v, p).dim());
            Subspace lhs = restriction(orthogonal_complement(v), p);
            Subspace rhs = orthogonal_complement(contraction(v, p));
            CHECK(subspace_residual(lhs, rhs) < 1e-10);
            Subspace lhs2 = contraction(orthogonal_complement(v), s);
            Subspace rhs2 = orthogonal_complement(restriction(v, s));
            CHECK(subspace_residual(lhs2, rhs2) < 1e-10);
        }
    }
}

TEST_SUITE("subspace.composition") {
    TEST_CASE("composition with full and zero spaces") {
        Rng rng(19);
        IndexSet st = IndexSet::voltages({"s1", "s2", "t1", "t2"});
        IndexSet t = IndexSet::voltages({"t1", "t2"});
        IndexSet s_only = IndexSet::voltages({"s1", "s2"});
        Subspace k = random_subspace(rng, st, 2);
        CHECK(equal(matched_composition(k, Subspace::full(t)), restriction(k, s_only)));
        CHECK(equal(matched_composition(k, Subspace::zero(t)), contraction(k, s_only)));
    }

    TEST_CASE("graphs of matrices compose to the graph of the product") {
        Rng rng(23);
        auto graph_of = [&](const Matrix& m, const std::vector<std::string>& in,
                            const std::vector<std::string>& out) {
            // vectors (x, Mx) on in (+) out
            std::vector<Label> order = vlabels(in);
            auto order_out = vlabels(out);
            order.insert(order.end(), order_out.begin(), order_out.end());
            Matrix rows(m.cols(), m.cols() + m.rows());
            rows << Matrix::Identity(m.cols(), m.cols()), m.transpose();
            return make_space(order, rows);
        };
        for (int trial = 0; trial < 10; ++trial) {
            Matrix m1 = random_matrix(rng, 3, 3);
            Matrix m2 = random_matrix(rng, 3, 3);
            Subspace g1 = graph_of(m1, {"s1", "s2", "s3"}, {"p1", "p2", "p3"});
            Subspace g2 = graph_of(m2, {"p1", "p2", "p3"}, {"q1", "q2", "q3"});
            Subspace composed = matched_composition(g1, g2);
            Subspace expect = graph_of(m2 * m1, {"s1", "s2", "s3"}, {"q1", "q2", "q3"});
            CHECK(subspace_residual(composed, expect) < 1e-10);
        }
    }

    TEST_CASE("skewed composition on disjoint indices is the direct sum") {
        Rng rng(29);
        IndexSet xs = IndexSet::voltages({"s1", "s2"});
        IndexSet xq = IndexSet::voltages({"q1", "q2"});
        Subspace a = random_subspace(rng, xs, 1);
        Subspace b = random_subspace(rng, xq, 1);
        CHECK(equal(skewed_composition(a, b), sum(a, b)));
        CHECK(equal(matched_composition(a, b), sum(a, b)));
    }

    TEST_CASE("matched equals skewed for a vector space fully shared") {
        Rng rng(31);
        IndexSet sp = IndexSet::voltages({"s1", "s2", "p1"});
        IndexSet p = IndexSet::voltages({"p1"});
        Subspace k = random_subspace(rng, sp, 2);
        Subspace kp = random_subspace(rng, p, 1);
        CHECK(equal(matched_composition(k, kp), skewed_composition(k, kp)));
    }

    TEST_CASE("implicit duality theorem") {
        Rng rng(37);
        for (int trial = 0; trial < 30; ++trial) {
            IndexSet s = IndexSet::voltages({"s1", "s2"});
            IndexSet p = IndexSet::voltages({"p1", "p2"});
            IndexSet q = IndexSet::voltages({"q1", "q2"});
            std::uniform_int_distribution<int> rd(0, 4);
            Subspace vsp = random_subspace(rng, s.set_union(p), rd(rng));
            Subspace vpq = random_subspace(rng, p.set_union(q), rd(rng));
            Subspace lhs = orthogonal_complement(matched_composition(vsp, vpq));
            Subspace rhs = skewed_composition(orthogonal_complement(vsp),
                                              orthogonal_complement(vpq));
            CHECK(subspace_residual(lhs, rhs) < 1e-9);
        }
    }
}

TEST_SUITE("subspace.flip_relabel") {
    TEST_CASE("sign flip examples") {
        Subspace v = make_space(ab, rows1({1.0, 2.0}));
        IndexSet b = IndexSet::voltages({"b"});
        CHECK(equal(sign_flip(v, b), make_space(ab, rows1({1.0, -2.0}))));
        CHECK(equal(sign_flip(sign_flip(v, b), b), v));
        CHECK(equal(sign_flip(v, IndexSet{}), v));
    }

    TEST_CASE("relabel identity and kind swap") {
        std::vector<Label> ve = {Label::voltage("e"), Label::current("e")};
        Subspace v = make_space(ve, rows1({1.0, 2.0}));
        LabelMap ident;
        ident.add(Label::voltage("e"), Label::voltage("e"));
        ident.add(Label::current("e"), Label::current("e"));
        CHECK(equal(relabel(v, ident), v));

        Subspace swapped = relabel(v, LabelMap::swap_kinds(v.index()));
        CHECK(equal(swapped, make_space(ve, rows1({2.0, 1.0}))));
    }

    TEST_CASE("relabel requires a bijection") {
        std::vector<Label> ve = {Label::voltage("e"), Label::current("e")};
        Subspace v = make_space(ve, rows1({1.0, 2.0}));
        LabelMap collapse;
        collapse.add(Label::voltage("e"), Label::voltage("x"));
        collapse.add(Label::current("e"), Label::voltage("x"));
        CHECK_THROWS_AS((void)relabel(v, collapse), Error);
    }
}

TEST_SUITE("subspace.adjoint") {
    TEST_CASE("nullator becomes norator") {
        IndexSet e = IndexSet::pair_set({"e"});
        CHECK(equal(adjoint(Subspace::zero(e)), Subspace::full(e)));
        CHECK(equal(adjoint(Subspace::full(e)), Subspace::zero(e)));
    }

    TEST_CASE("impedance conjugates") {
        Complex z{2.0, 3.0};
        std::vector<Label> order = {Label::voltage("e"), Label::current("e")};
        Subspace v = make_space(order, rows1({z, 1.0}));  // v = z i
        Subspace expect = make_space(order, rows1({std::conj(z), 1.0}));
        CHECK(equal(adjoint(v), expect));
    }

    TEST_CASE("involution on random pair-set spaces") {
        Rng rng(41);
        for (int trial = 0; trial < 25; ++trial) {
            IndexSet x = IndexSet::pair_set({"e1", "e2", "e3"});
            std::uniform_int_distribution<int> rd(0, 6);
            Subspace v = random_subspace(rng, x, rd(rng));
            CHECK(subspace_residual(adjoint(adjoint(v)), v) < 1e-10);
        }
    }

    TEST_CASE("adjoint requires a pair set") {
        Subspace v = make_space(ab, rows1({1.0, 2.0}));
        CHECK_THROWS_AS((void)adjoint(v), Error);
    }
}

TEST_SUITE("affine") {
    TEST_CASE("representation independence") {
        Rng rng(43);
        IndexSet x{abc};
        Subspace v = random_subspace(rng, x, 1);
        Vector p1 = random_matrix(rng, 3, 1);
        Vector shift = v.basis().transpose() * random_matrix(rng, v.dim(), 1);
        AffineSpace a1 = AffineSpace::from_parts(x, p1, v);
        AffineSpace a2 = AffineSpace::from_parts(x, p1 + shift, v);
        CHECK(equal(a1, a2));
        CHECK(affine_residual(a1, a2) < 1e-12);
    }

    TEST_CASE("affine contraction can be void") {
        IndexSet x{ab};
        Vector p(2);
        p << 1.0, 1.0;
        AffineSpace a = AffineSpace::from_parts(x, p, Subspace::zero(x));
        auto c = contraction(a, IndexSet::voltages({"a"}));
        CHECK(!c.has_value());
        auto keep = contraction(a, x);
        REQUIRE(keep.has_value());
        CHECK(equal(*keep, a));
    }

    TEST_CASE("translate law of matched composition") {
        Rng rng(47);
        int nonvoid = 0;
        for (int trial = 0; trial < 30; ++trial) {
            IndexSet sp = IndexSet::voltages({"s1", "p1", "p2"});
            IndexSet pq = IndexSet::voltages({"p1", "p2", "q1"});
            std::uniform_int_distribution<int> rd(1, 2);
            Subspace v1 = random_subspace(rng, sp, rd(rng));
            Subspace v2 = random_subspace(rng, pq, rd(rng));
            AffineSpace a1 = AffineSpace::from_parts(sp, random_matrix(rng, 3, 1), v1);
            AffineSpace a2 = AffineSpace::from_parts(pq, random_matrix(rng, 3, 1), v2);
            auto comp = matched_composition(a1, a2);
            if (!comp) continue;
            ++nonvoid;
            Subspace expect = matched_composition(v1, v2);
            CHECK(subspace_residual(comp->translate(), expect) < 1e-9);
            // and the particular really lies in the composition
            auto common = intersect_affine(a1, a2);
            REQUIRE(common.has_value());
        }
        CHECK(nonvoid > 0);
    }

    TEST_CASE("void intersection of parallel points") {
        IndexSet x{ab};
        Vector p1(2), p2(2);
        p1 << 1.0, 0.0;
        p2 << 2.0, 0.0;
        AffineSpace a1 = AffineSpace::from_parts(x, p1, Subspace::zero(x));
        AffineSpace a2 = AffineSpace::from_parts(x, p2, Subspace::zero(x));
        CHECK(!intersect_affine(a1, a2).has_value());
        CHECK(!matched_composition(a1, a2).has_value());
    }

    TEST_CASE("constraint round trip") {
        Rng rng(53);
        IndexSet x = IndexSet::voltages({"a", "b", "c", "d"});
        Subspace v = random_subspace(rng, x, 2);
        AffineSpace a = AffineSpace::from_parts(x, random_matrix(rng, 4, 1), v);
        ConstraintForm cf = constraints(a);
        auto back = affine_from_constraints(cf.index, cf.lhs, cf.rhs);
        REQUIRE(back.has_value());
        CHECK(equal(*back, a));

        Vector bad = cf.rhs;
        Matrix doubled(cf.lhs.rows() * 2, cf.lhs.cols());
        doubled << cf.lhs, cf.lhs;
        Vector bad2(cf.rhs.size() * 2);
        bad2 << cf.rhs, (cf.rhs.array() + 1.0).matrix();
        CHECK(!affine_from_constraints(cf.index, doubled, bad2).has_value());
    }
}

TEST_SUITE("linalg") {
    TEST_CASE("classified solve") {
        Matrix a(2, 2);
        a << 1.0, 0.0, 0.0, 1.0;
        Vector b(2);
        b << 2.0, 3.0;
        auto s = solve_classified(a, b);
        CHECK(s.status == SystemStatus::Unique);
        CHECK((s.x - b).norm() < 1e-14);

        Matrix sing(2, 2);
        sing << 1.0, 1.0, 1.0, 1.0;
        Vector consistent(2);
        consistent << 1.0, 1.0;
        CHECK(solve_classified(sing, consistent).status == SystemStatus::NonUnique);
        Vector inconsistent(2);
        inconsistent << 1.0, 2.0;
        CHECK(solve_classified(sing, inconsistent).status == SystemStatus::Inconsistent);
    }

    TEST_CASE("reduced row echelon is idempotent and normalized") {
        Rng rng(59);
        Matrix m = random_matrix(rng, 3, 5);
        Matrix m2 = m;
        Eigen::Index r = reduced_row_echelon(m2);
        CHECK(r == 3);
        Matrix m3 = m2;
        reduced_row_echelon(m3);
        CHECK((m3 - m2).norm() < 1e-12);
    }
}
