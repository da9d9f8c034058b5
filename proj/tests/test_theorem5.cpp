#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace k3lat;

namespace {

// id on U, swap of the two E8(-1) blocks
IMat id_u_swap_e8() {
    IMat f(18, 18);
    f(0, 0) = f(1, 1) = 1;
    for (int i = 0; i < 8; ++i) {
        f(2 + i, 10 + i) = 1;
        f(10 + i, 2 + i) = 1;
    }
    return f;
}

}  // namespace

TEST_CASE("swap of the E8 blocks acts trivially on CH^2") {
    const IntegerLattice ns = parse_lattice("U+E8(-1)+E8(-1)");
    REQUIRE(p_rank(ns, 2) == 18);
    REQUIRE(p_rank(ns, 3) == 18);

    Theorem5Options opts;
    opts.enum_bound = 3;
    opts.factor_budget = 3000;
    const Theorem5Report rep = run_theorem5(ns, id_u_swap_e8(), opts);

    REQUIRE(rep.input_valid);
    REQUIRE(rep.ns_hyperbolic);
    REQUIRE(rep.disc_trivial_on_ns);
    REQUIRE(rep.hypotheses.hypotheses_met);
    REQUIRE(rep.hypotheses.rk2 == 20);  // rk2(ns) + 2
    REQUIRE(rep.hypotheses.rk3 == 20);
    REQUIRE(rep.spinor == +1);
    REQUIRE(rep.det == +1);
    REQUIRE(rep.is_weyl_member);
    REQUIRE(rep.conclusion == Theorem5Conclusion::TRIVIAL_ON_CH2);
    REQUIRE(exit_code_for(rep.conclusion) == 0);

    // the block swap cannot be written over the per-block reflection pool, so
    // the best-effort search reports exhaustion; membership stands regardless
    REQUIRE_FALSE(rep.factorization.has_value());
    REQUIRE(rep.budget_exhausted);
}

TEST_CASE("identity factorizes as the empty word") {
    const IntegerLattice ns = parse_lattice("U+E8(-1)");
    Theorem5Options opts;
    opts.enum_bound = 2;
    const Theorem5Report rep = run_theorem5(ns, IMat::identity(10), opts);
    REQUIRE(rep.conclusion == Theorem5Conclusion::TRIVIAL_ON_CH2);
    REQUIRE(rep.factorization.has_value());
    REQUIRE(rep.factorization->empty());
}

TEST_CASE("the symplectic-involution lattice is out of the criterion's range") {
    const IntegerLattice ns = parse_lattice("<-4>+E8(-1)(2)");
    Theorem5Options opts;
    opts.enum_bound = 2;
    const Theorem5Report rep = run_theorem5(ns, IMat::identity(9), opts);
    REQUIRE_FALSE(rep.ns_hyperbolic);
    REQUIRE(rep.hypotheses.rk2 == 2);
    REQUIRE_FALSE(rep.hypotheses.hypotheses_met);
    REQUIRE(rep.conclusion == Theorem5Conclusion::CRITERION_INAPPLICABLE);
    REQUIRE(exit_code_for(rep.conclusion) == 3);
}

TEST_CASE("nontrivial discriminant action is rejected as non-symplectomorphism-like") {
    const IntegerLattice ns = parse_lattice("<2>+<-4>");
    IMat f = IMat::identity(2);
    f(1, 1) = -1;  // moves the order-4 discriminant generator
    const Theorem5Report rep = run_theorem5(ns, f, {});
    REQUIRE_FALSE(rep.disc_trivial_on_ns);
    REQUIRE(rep.conclusion == Theorem5Conclusion::NOT_SYMPLECTOMORPHISM_LIKE);
    REQUIRE(exit_code_for(rep.conclusion) == 4);
}

TEST_CASE("spinor -1 with an ample class lands on the orientation side, never ANOMALY") {
    // -id on NS = U + E8(-1)^2: spinor (-1)^1 = -1 on the extension
    const IntegerLattice ns = parse_lattice("U+E8(-1)+E8(-1)");
    IMat f = IMat::identity(18);
    for (int i = 0; i < 18; ++i) f(i, i) = -1;
    Theorem5Options opts;
    opts.enum_bound = 2;
    opts.ample = Vec(18);
    (*opts.ample)[0] = 1;
    (*opts.ample)[1] = 1;  // (1,1) in the U block, norm 2
    const Theorem5Report rep = run_theorem5(ns, f, opts);
    REQUIRE(rep.disc_trivial_on_ns);
    REQUIRE(rep.hypotheses.hypotheses_met);
    REQUIRE(rep.spinor == -1);
    REQUIRE(rep.orientation.has_value());
    REQUIRE(*rep.orientation == -1);
    REQUIRE_FALSE(rep.is_weyl_member);
    REQUIRE(rep.conclusion == Theorem5Conclusion::NOT_SYMPLECTOMORPHISM_LIKE);
}

TEST_CASE("malformed inputs throw") {
    const IntegerLattice ns = parse_lattice("U");
    IMat shear(2, 2, {Int(1), Int(1), Int(0), Int(1)});
    REQUIRE_THROWS_AS(run_theorem5(ns, shear, {}), std::invalid_argument);   // not an isometry
    REQUIRE_THROWS_AS(run_theorem5(parse_lattice("<3>"), IMat::identity(1), {}),
                      std::invalid_argument);                                // odd lattice
}

TEST_CASE("reports are byte-stable") {
    const IntegerLattice ns = parse_lattice("U+E8(-1)+E8(-1)");
    Theorem5Options opts;
    opts.enum_bound = 2;
    opts.factor_budget = 500;
    const std::string a = encode(run_theorem5(ns, id_u_swap_e8(), opts)).dump(2);
    const std::string b = encode(run_theorem5(ns, id_u_swap_e8(), opts)).dump(2);
    REQUIRE(a == b);
}
