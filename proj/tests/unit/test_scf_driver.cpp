#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "detforge/errors.hpp"
#include "detforge/orbital_rotation.hpp"
#include "detforge/scf_driver.hpp"
#include "test_support.hpp"

using namespace detforge;
using namespace testsupport;

namespace {

const IntegralBundle& oh_bundle() {
    static const IntegralBundle b = load_bundle(fixture("oh_minus_631g_3.0.scfb.json"));
    return b;
}

const IntegralBundle& h2_bundle() {
    static const IntegralBundle b = load_bundle(fixture("h2_sto3g_0.74.scfb.json"));
    return b;
}

}  // namespace

TEST_CASE("spin-free 1-RDM") {
    CHECK(spin_free_rdm({1, 1, 0, 0}) == Eigen::Vector2d(2, 0).asDiagonal().toDenseMatrix());
    CHECK(spin_free_rdm({1, 0, 0, 1}) == Eigen::Vector2d(1, 1).asDiagonal().toDenseMatrix());
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 6;
        std::vector<int> a(m), c(m);
        for (int i = 0; i < m; ++i) a[i] = c[i] = i;
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(c.begin(), c.end(), rng);
        FockState b(2 * m, 0);
        for (int i = 0; i < 3; ++i) b[2 * a[i]] = 1;
        for (int i = 0; i < 2; ++i) b[2 * c[i] + 1] = 1;
        const Eigen::MatrixXd t = spin_free_rdm(b);
        CHECK(t.trace() == 5.0);
        CHECK((t - Eigen::MatrixXd(t.diagonal().asDiagonal())).isZero(0.0));
    }
    CHECK_THROWS_AS(spin_free_rdm({1, 0, 1}), LengthMismatch);
}

TEST_CASE("algorithm and gradient names") {
    CHECK(parse_algorithm("1") == Algorithm::One);
    CHECK(parse_algorithm("2") == Algorithm::Two);
    CHECK(parse_algorithm("boost") == Algorithm::Boost);
    CHECK(algorithm_name(Algorithm::Boost) == "boost");
    CHECK_THROWS_AS(parse_algorithm("3"), ConfigError);
}

TEST_CASE("inverse square root of the overlap") {
    const Eigen::MatrixXd& s = oh_bundle().overlap;
    const Eigen::MatrixXd a = inverse_sqrt_overlap(s);
    CHECK((a * s * a - Eigen::MatrixXd::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK_THROWS_AS(inverse_sqrt_overlap(Eigen::MatrixXd::Zero(2, 2)), LinearAlgebraFailure);
}

TEST_CASE("Algorithm 2 on OH-: consistency, monotonicity, spin, orthonormality") {
    ScfConfig cfg;
    const ScfResult r = run_algorithm2(oh_bundle(), cfg);
    REQUIRE(r.trace.converged);
    CHECK(std::abs(r.state.energy - (-75.113307)) <= 1e-5);
    CHECK(r.trace.records.size() <= 20);
    for (std::size_t i = 0; i < r.trace.records.size(); ++i) {
        const IterationRecord& rec = r.trace.records[i];
        CHECK(rec.consistency_error <= 1e-8);
        CHECK(std::isfinite(rec.energy));
        if (i >= 2) CHECK(rec.energy <= r.trace.records[i - 1].energy + 1e-10);
    }
    CHECK(r.state.s2_diag == 0.0);
    CHECK(orthonormality_error(r.state.c, oh_bundle().overlap) <= 1e-8);
    CHECK(r.trace.final_energy == r.state.energy);

    CHECK(r.trace.records.front().energy >= r.state.energy - 1e-10);
}

TEST_CASE("Algorithm 2 on H2 agrees with Algorithm 1 and the reference energy") {
    ScfConfig cfg;
    const ScfResult r2 = run_algorithm2(h2_bundle(), cfg);
    const ScfResult r1 = run_algorithm1(h2_bundle(), cfg);
    REQUIRE(r2.trace.converged);
    REQUIRE(r1.trace.converged);
    CHECK(std::abs(r1.state.energy - r2.state.energy) <= 1e-7);
    CHECK(std::abs(r2.state.energy - std::stod(h2_bundle().metadata.at("rhf_energy"))) <= 1e-6);
    for (const IterationRecord& rec : r2.trace.records) CHECK(rec.consistency_error <= 1e-8);
}

TEST_CASE("Algorithm 1 on OH- matches Algorithm 2") {
    ScfConfig cfg;
    const ScfResult r1 = run_algorithm1(oh_bundle(), cfg);
    REQUIRE(r1.trace.converged);
    CHECK(r1.trace.records.size() <= 5);
    CHECK(std::abs(r1.state.energy - (-75.113307)) <= 1e-5);
    CHECK(orthonormality_error(r1.state.c, oh_bundle().overlap) <= 1e-8);
    const ScfResult r2 = run_algorithm2(oh_bundle(), cfg);
    CHECK(std::abs(r1.state.energy - r2.state.energy) <= 1e-6);
}

TEST_CASE("Algorithm 1 at a fixed point converges immediately") {
    const MoHamiltonianData mo = load_fcidump(fixture("h2_sto3g_0.74_sorhf.fcidump"));
    ScfConfig cfg;
    const ScfResult r = run_algorithm1(mo, cfg);
    REQUIRE(r.trace.converged);
    CHECK(r.trace.records.size() == 1);
    const double aufbau = energy_of_state(build_diagonal_hamiltonian(mo), aufbau_state(2, 1, 1));
    CHECK(std::abs(r.state.energy - aufbau) <= 1e-10);
}

TEST_CASE("analytic orbital gradient matches finite differences") {
    std::mt19937_64 rng(52);
    MoHamiltonianData mo = random_mo(4, 2, 2, rng);
    const FockState b = {1, 1, 1, 0, 0, 1, 0, 0};
    const Eigen::VectorXd g = analytic_kappa_gradient(mo, b);
    const std::size_t m = 4;
    const double h = 1e-5;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        Eigen::VectorXd k = Eigen::VectorXd::Zero(kappa_length(m));
        k[i] = h;
        const double ep = rotated_energy(mo, rotation_matrix(skew_from_kappa(k, m)), b);
        k[i] = -h;
        const double em = rotated_energy(mo, rotation_matrix(skew_from_kappa(k, m)), b);
        CHECK(g[i] == doctest::Approx((ep - em) / (2 * h)).epsilon(1e-6).scale(1.0));
    }
    const double e0 = energy_of_state(build_diagonal_hamiltonian(mo), b);
    CHECK(rotated_energy(mo, Eigen::MatrixXd::Identity(4, 4), b) == doctest::Approx(e0).epsilon(1e-13));
}

TEST_CASE("Algorithm 1 with analytic gradients reaches the same energy") {
    ScfConfig cfg;
    cfg.gradient = GradientMode::Analytic;
    const ScfResult r = run_algorithm1(oh_bundle(), cfg);
    REQUIRE(r.trace.converged);
    CHECK(std::abs(r.state.energy - (-75.113307)) <= 1e-5);
}

TEST_CASE("iteration cap returns the best state unconverged") {
    ScfConfig cfg;
    cfg.max_iter = 3;
    const ScfResult r = run_algorithm2(oh_bundle(), cfg);
    CHECK_FALSE(r.trace.converged);
    CHECK(r.trace.records.size() == 3);
    double best = INFINITY;
    for (const IterationRecord& rec : r.trace.records) best = std::min(best, rec.energy);
    CHECK(r.state.energy == best);
}

TEST_CASE("heuristic inner solvers reach the same fixed point") {
    for (Method m : {Method::Tabu, Method::Gw, Method::Anneal}) {
        ScfConfig cfg;
        cfg.method = m;
        const ScfResult r = run_algorithm2(oh_bundle(), cfg);
        CHECK_MESSAGE(r.trace.converged, method_name(m));
        CHECK_MESSAGE(std::abs(r.state.energy - (-75.113307)) <= 1e-5, method_name(m));
    }
}

TEST_CASE("inner solve configuration") {
    const DiagonalHamiltonian hd =
        build_diagonal_hamiltonian(ao_to_mo(oh_bundle(), initial_orbitals(oh_bundle())));
    SUBCASE("spin penalty needs the number penalty") {
        ScfConfig cfg;
        cfg.number_penalty = false;
        CHECK_THROWS_AS(solve_inner(hd, cfg, 5, 5, nullptr), ConfigError);
    }
    SUBCASE("negligible penalty weight lets heuristics leave the sector") {
        ScfConfig cfg;
        cfg.method = Method::Tabu;
        cfg.lambda = 1e-9;
        CHECK_THROWS_AS(solve_inner(hd, cfg, 5, 5, nullptr), InnerSolverFailure);
    }
    SUBCASE("brute force respects the sector without relying on the weight") {
        ScfConfig cfg;
        cfg.lambda = 1e-9;
        const InnerSolution s = solve_inner(hd, cfg, 5, 5, nullptr);
        int na = 0, nb = 0;
        for (int p = 0; p < 11; ++p) {
            na += s.b[2 * p];
            nb += s.b[2 * p + 1];
        }
        CHECK(na == 5);
        CHECK(nb == 5);
    }
}

TEST_CASE("boost mode") {
    SUBCASE("converged OH- basis has no lower determinant") {
        ScfConfig cfg;
        const BoostReport r = run_boost(load_fcidump(fixture("oh_minus_631g_3.0_sorhf.fcidump")), cfg);
        CHECK_FALSE(r.instability);
        CHECK(r.best == r.aufbau);
        CHECK(r.energy == r.aufbau_energy);
    }
    SUBCASE("zero Hamiltonian") {
        MoHamiltonianData mo;
        mo.m_spatial = 3;
        mo.n_alpha = 1;
        mo.n_beta = 1;
        mo.h_mo = Eigen::MatrixXd::Zero(3, 3);
        mo.w_ppqq = Eigen::MatrixXd::Zero(3, 3);
        mo.w_pqqp = Eigen::MatrixXd::Zero(3, 3);
        mo.e_core = -0.25;
        ScfConfig cfg;
        const BoostReport r = run_boost(mo, cfg);
        CHECK(r.energy == -0.25);
        CHECK_FALSE(r.instability);
    }
}

TEST_CASE("trace CSV format") {
    ScfTrace t;
    IterationRecord a;
    a.iteration = 1;
    a.energy = -1.0 / 3.0;
    a.bitstring = "1100";
    a.solver_evals = 4;
    a.wall_ms = 12.5;
    t.records.push_back(a);
    const std::string plain = trace_csv(t, false);
    CHECK(plain == "iteration,energy_hartree,bitstring,solver_evals,wall_ms\n1,-0.3333333333,1100,4,\n");
    const std::string timed = trace_csv(t, true);
    CHECK(timed.find("1,-0.3333333333,1100,4,12.5") != std::string::npos);
    CHECK(bitstring({1, 0, 0, 1}) == "1001");
}
