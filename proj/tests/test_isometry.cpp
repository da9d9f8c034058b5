#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace k3lat;

namespace {

QMat compose_reflections(const IntegerLattice& lat, const std::vector<QVec>& vectors) {
    QMat m = QMat::identity(lat.rank());
    for (const QVec& v : vectors) m = m * reflection_matrix(lat, v);
    return m;
}

}  // namespace

TEST_CASE("verify_isometry") {
    const IntegerLattice u = build_named(NamedLattice::U);
    REQUIRE_NOTHROW(verify_isometry(u, IMat::identity(2)));

    const IMat swap(2, 2, {Int(0), Int(1), Int(1), Int(0)});
    REQUIRE_NOTHROW(verify_isometry(u, swap));

    // the image of (0,1) acquires norm 2, showing up at entry (1,1)
    const IMat shear(2, 2, {Int(1), Int(1), Int(0), Int(1)});
    REQUIRE_THROWS_WITH(verify_isometry(u, shear),
                        Catch::Matchers::ContainsSubstring("(1,1)"));
    REQUIRE_THROWS_AS(verify_isometry(u, IMat(1, 1, {Int(1)})), std::invalid_argument);
}

TEST_CASE("group operations") {
    const IntegerLattice u = build_named(NamedLattice::U);
    const Isometry swap = verify_isometry(u, IMat(2, 2, {Int(0), Int(1), Int(1), Int(0)}));
    REQUIRE(compose(swap, inverse(swap)).matrix == IMat::identity(2));
    REQUIRE(determinant(swap) == -1);

    const Isometry s1 = reflection_isometry(u, Vec{1, -1});
    const Isometry s2 = reflection_isometry(direct_sum(u, u), Vec{1, -1, 0, 0});
    REQUIRE(determinant(s1) == -1);
    REQUIRE_THROWS_AS(compose(s1, s2), std::invalid_argument);

    const IntegerLattice uu = direct_sum(u, u);
    const Isometry a = reflection_isometry(uu, Vec{1, -1, 0, 0});
    const Isometry b = reflection_isometry(uu, Vec{0, 0, 1, -1});
    REQUIRE(determinant(compose(a, b)) == 1);
}

TEST_CASE("reflect") {
    const IntegerLattice u = build_named(NamedLattice::U);
    const QVec delta = to_rational(Vec{1, -1});
    REQUIRE(reflect(u, delta, delta) == to_rational(Vec{-1, 1}));
    REQUIRE(reflect(u, delta, to_rational(Vec{1, 0})) == to_rational(Vec{0, 1}));
    REQUIRE_THROWS_AS(reflect(u, to_rational(Vec{1, 0}), delta), std::invalid_argument);

    // norm preserved, involutive
    auto rng = oracles::make_rng(9001);
    for (int i = 0; i < 20; ++i) {
        const QVec a = to_rational(oracles::random_vector(rng, 2, 6));
        const QVec img = reflect(u, delta, a);
        REQUIRE(norm(u, img) == norm(u, a));
        REQUIRE(reflect(u, delta, img) == a);
    }
}

TEST_CASE("reflection_isometry") {
    const IntegerLattice u = build_named(NamedLattice::U);
    const Isometry s = reflection_isometry(u, Vec{1, -1});
    REQUIRE(s.matrix == IMat(2, 2, {Int(0), Int(1), Int(1), Int(0)}));

    const IntegerLattice m2 = build_named(NamedLattice::MINUS_TWO);
    REQUIRE(reflection_isometry(m2, Vec{1}).matrix == IMat(1, 1, {Int(-1)}));

    REQUIRE_THROWS_AS(reflection_isometry(u, Vec{1, 1}), std::invalid_argument);  // norm +2

    auto rng = oracles::make_rng(9002);
    const IntegerLattice l = parse_lattice("U+<-2>");
    const auto roots = enumerate_vectors_of_norm(l, Int(-2), 3);
    for (const Vec& d : roots) {
        const Isometry sd = reflection_isometry(l, d);
        REQUIRE(compose(sd, sd).matrix == IMat::identity(3));
        REQUIRE(determinant(sd) == -1);
        for (int i = 0; i < 5; ++i) {
            const Vec v = oracles::random_vector(rng, 3, 8);
            REQUIRE(sd.matrix.apply(sd.matrix.apply(v)) == v);
        }
    }
}

TEST_CASE("Cartan-Dieudonne factorization") {
    const IntegerLattice u = build_named(NamedLattice::U);

    REQUIRE(cartan_dieudonne_factor(identity_isometry(u)).vectors.empty());

    const IntegerLattice m2 = build_named(NamedLattice::MINUS_TWO);
    const Isometry negid = verify_isometry(m2, IMat(1, 1, {Int(-1)}));
    const ReflectionFactorization f2 = cartan_dieudonne_factor(negid);
    REQUIRE(f2.vectors == std::vector<QVec>{to_rational(Vec{1})});

    const Isometry swap = verify_isometry(u, IMat(2, 2, {Int(0), Int(1), Int(1), Int(0)}));
    const ReflectionFactorization fs = cartan_dieudonne_factor(swap);
    REQUIRE(compose_reflections(u, fs.vectors) == to_rational(swap.matrix));

    REQUIRE_THROWS_AS(cartan_dieudonne_factor(identity_isometry(IntegerLattice(IMat(1, 1, {Int(0)})))),
                      std::invalid_argument);

    // random words on U^2 + E8(-1): exact round-trip, length <= 2*rank,
    // spinor equal to the product over the generating word
    auto rng = oracles::make_rng(9003);
    const IntegerLattice big = parse_lattice("U+U+E8(-1)");
    const auto pool = minus_two_pool(big, 3);
    for (int trial = 0; trial < 10; ++trial) {
        const Isometry g = oracles::random_reflection_word(rng, big, pool, 10);
        const ReflectionFactorization f = cartan_dieudonne_factor(g);
        REQUIRE(f.vectors.size() <= 2u * static_cast<unsigned>(big.rank()));
        REQUIRE(compose_reflections(big, f.vectors) == to_rational(g.matrix));
        int prod = 1;
        for (int s : f.signs) prod *= s;
        REQUIRE(prod == spinor_norm(g));
        REQUIRE(prod == 1);  // words in (-2)-reflections are spinor-trivial
    }
}

TEST_CASE("Cartan-Dieudonne handles isotropic displacements") {
    // transvection on U + U: e1 -> e1, e2 -> e2 - e3, e3 -> e3, e4 -> e4 + e1.
    // The first diagonalized basis vector b = e1 + e2 moves by the isotropic
    // -e3, which forces the two-reflection branch.
    const IntegerLattice uu = parse_lattice("U+U");
    IMat t = IMat::identity(4);
    t(2, 1) = -1;
    t(0, 3) = 1;
    const Isometry g = verify_isometry(uu, t);
    const ReflectionFactorization f = cartan_dieudonne_factor(g);
    QMat prod = QMat::identity(4);
    for (const QVec& v : f.vectors) prod = prod * reflection_matrix(uu, v);
    REQUIRE(prod == to_rational(g.matrix));
    REQUIRE(f.vectors.size() <= 8);
    REQUIRE(determinant(g) == 1);
    REQUIRE(spinor_norm(g) == +1);  // transvections lie in the kernel
}

TEST_CASE("spinor norm") {
    const IntegerLattice u = build_named(NamedLattice::U);
    REQUIRE(spinor_norm(reflection_isometry(u, Vec{1, -1})) == +1);
    REQUIRE(spinor_norm(reflection_in_vector(u, to_rational(Vec{1, 1}))) == -1);  // norm +2

    // -id has spinor (-1)^p for signature (p,q)
    auto neg_id = [](const IntegerLattice& l) {
        IMat m = IMat::identity(l.rank());
        for (int i = 0; i < l.rank(); ++i) m(i, i) = -1;
        return verify_isometry(l, m);
    };
    REQUIRE(spinor_norm(neg_id(u)) == -1);                                      // p = 1
    REQUIRE(spinor_norm(neg_id(build_named(NamedLattice::E8_MINUS))) == +1);    // p = 0
    REQUIRE(spinor_norm(neg_id(parse_lattice("U+U+E8(-1)"))) == +1);            // p = 2

    // multiplicativity over random reflection pairs of mixed norms
    auto rng = oracles::make_rng(9004);
    const IntegerLattice l = parse_lattice("U+<-2>");
    std::vector<Isometry> gens;
    for (const Vec& d : enumerate_vectors_of_norm(l, Int(-2), 3))
        gens.push_back(reflection_isometry(l, d));
    for (const Vec& d : enumerate_vectors_of_norm(l, Int(2), 3))
        gens.push_back(reflection_in_vector(l, to_rational(d)));
    for (int i = 0; i < 30; ++i) {
        const Isometry& a = gens[static_cast<std::size_t>(oracles::rand_in(rng, 0, long(gens.size()) - 1))];
        const Isometry& b = gens[static_cast<std::size_t>(oracles::rand_in(rng, 0, long(gens.size()) - 1))];
        REQUIRE(spinor_norm(compose(a, b)) == spinor_norm(a) * spinor_norm(b));
    }
}

TEST_CASE("fixed sublattice") {
    const IntegerLattice u = build_named(NamedLattice::U);
    REQUIRE(fixed_sublattice(identity_isometry(u)).size() == 2);

    IMat neg = IMat::identity(2);
    neg(0, 0) = -1;
    neg(1, 1) = -1;
    REQUIRE(fixed_sublattice(verify_isometry(u, neg)).empty());

    // swap of the two U blocks inside U + U
    const IntegerLattice uu = direct_sum(u, u);
    IMat swap(4, 4);
    swap(0, 2) = swap(1, 3) = swap(2, 0) = swap(3, 1) = 1;
    const Isometry sw = verify_isometry(uu, swap);
    const auto basis = fixed_sublattice(sw);
    REQUIRE(static_cast<int>(basis.size()) == oracles::rational_fixed_dimension(sw.matrix));
    for (const Vec& v : basis) REQUIRE(sw.matrix.apply(v) == v);

    // primitivity: the stacked basis has unit elementary divisors
    IMat stack(4, static_cast<int>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (int i = 0; i < 4; ++i) stack(i, static_cast<int>(j)) = basis[j][i];
    const SmithResult snf = smith_normal_form(stack);
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) REQUIRE(snf.s(i, i) == 1);
}

TEST_CASE("orientation sign") {
    const IntegerLattice u = build_named(NamedLattice::U);
    const std::vector<QVec> ray{to_rational(Vec{1, 1})};  // norm +2
    REQUIRE(orientation_sign(identity_isometry(u), ray) == +1);

    IMat neg = IMat::identity(2);
    neg(0, 0) = -1;
    neg(1, 1) = -1;
    REQUIRE(orientation_sign(verify_isometry(u, neg), ray) == -1);

    REQUIRE_THROWS_AS(orientation_sign(identity_isometry(u), {to_rational(Vec{1, -1})}),
                      std::invalid_argument);  // negative plane
    REQUIRE_THROWS_AS(orientation_sign(identity_isometry(u), {to_rational(Vec{1, 0})}),
                      std::invalid_argument);  // isotropic plane
}
