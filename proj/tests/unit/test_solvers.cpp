#include <doctest.h>

#include "detforge/errors.hpp"
#include "detforge/hamiltonian_builder.hpp"
#include "detforge/problem_mappings.hpp"
#include "detforge/scf_driver.hpp"
#include "detforge/solvers.hpp"
#include "test_support.hpp"

using namespace detforge;
using namespace testsupport;

namespace {

double exhaustive_min(const QusoModel& m, Spins* arg = nullptr) {
    double best = INFINITY;
    for_each_spins(m.n, [&](const Spins& z) {
        const double v = m.value(z);
        if (v < best) {
            best = v;
            if (arg) *arg = z;
        }
    });
    return best;
}

MaxCutInstance triangle() {
    MaxCutInstance g;
    g.n_vertices = 3;
    g.add_edge(0, 1, 1.0);
    g.add_edge(0, 2, 1.0);
    g.add_edge(1, 2, 1.0);
    return g;
}

}  // namespace

TEST_CASE("brute force examples") {
    QusoModel m(2);
    m.linear = {1.0, -1.0};
    const SolverResult r = brute_force(m);
    CHECK(r.best_assignment == Spins{-1, 1});
    CHECK(r.best_value == -2.0);
    CHECK_THROWS_AS(brute_force(QusoModel(27)), TooLarge);
}

TEST_CASE("brute force ties break to the lexicographically smallest assignment") {
    QusoModel flat(3);
    CHECK(brute_force(flat).best_assignment == Spins{-1, -1, -1});
    QuboModel fq(3);
    CHECK(brute_force(fq).best_assignment == Bits{0, 0, 0});
    QusoModel sym(2);
    sym.add_quadratic(0, 1, -1.0);
    CHECK(brute_force(sym).best_assignment == Spins{-1, -1});
}

TEST_CASE("brute force matches exhaustive search on random models") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const QusoModel m = random_quso(10, rng, 0.6);
        Spins arg;
        const double ref = exhaustive_min(m, &arg);
        const SolverResult r = brute_force(m);
        CHECK(r.best_value == doctest::Approx(ref).epsilon(1e-12));
        CHECK(r.best_value == m.value(r.best_assignment));
        const QuboModel q = quso_to_qubo(m);
        const SolverResult rq = brute_force(q);
        CHECK(rq.best_value == doctest::Approx(ref).epsilon(1e-12));
        CHECK(rq.best_value == q.value(rq.best_assignment));
    }
}

TEST_CASE("sectored brute force") {
    std::mt19937_64 rng(42);
    const QusoModel m = random_quso(8, rng);
    const Sector s{alpha_indices(4), 2, beta_indices(4), 1};
    CHECK(sector_state_count(8, s) == 6.0 * 4.0);
    const SolverResult r = brute_force(m, s);
    double best = INFINITY;
    for_each_spins(8, [&](const Spins& z) {
        const Bits b = spins_to_bits(z);
        if (b[0] + b[2] + b[4] + b[6] != 2 || b[1] + b[3] + b[5] + b[7] != 1) return;
        best = std::min(best, m.value(z));
    });
    CHECK(r.best_value == doctest::Approx(best).epsilon(1e-12));
    CHECK(r.evaluations == 24);

    // Free variables outside both sets are enumerated in full.
    const Sector partial{{0, 1, 2}, 1, {3}, 1};
    const SolverResult rp = brute_force(m, partial);
    double best_p = INFINITY;
    for_each_spins(8, [&](const Spins& z) {
        const Bits b = spins_to_bits(z);
        if (b[0] + b[1] + b[2] != 1 || b[3] != 1) return;
        best_p = std::min(best_p, m.value(z));
    });
    CHECK(rp.best_value == doctest::Approx(best_p).epsilon(1e-12));
    CHECK_THROWS_AS(brute_force(QusoModel(40), Sector{alpha_indices(20), 10, beta_indices(20), 10}),
                    TooLarge);
}

TEST_CASE("OH- sectored optimum equals the penalized full-space optimum") {
    const IntegralBundle b = load_bundle(fixture("oh_minus_631g_3.0.scfb.json"));
    const QusoModel raw = jw_map(build_diagonal_hamiltonian(ao_to_mo(b, initial_orbitals(b))));
    PenaltySpec spec{5, 5, false, {}};
    const QusoModel pen = apply_penalties(raw, spec);
    const SolverResult full = brute_force(pen);
    const SolverResult sect = brute_force(pen, Sector{alpha_indices(11), 5, beta_indices(11), 5});
    CHECK(full.best_assignment == sect.best_assignment);
    CHECK(full.best_value == doctest::Approx(sect.best_value).epsilon(1e-13));
}

TEST_CASE("annealing and tabu basic contracts") {
    SolverBudget budget;
    SUBCASE("zero coupling") {
        QusoModel m(5);
        m.offset = 0.75;
        CHECK(simulated_annealing(m, budget).best_value == 0.75);
        CHECK(tabu_search(m, budget).best_value == 0.75);
    }
    SUBCASE("single spin") {
        QusoModel m(1);
        m.linear = {2.0};
        const SolverResult r = tabu_search(m, budget);
        CHECK(r.best_assignment == Spins{-1});
        CHECK(r.best_value == -2.0);
    }
    SUBCASE("results re-evaluate exactly and never lose to the initial state") {
        std::mt19937_64 rng(43);
        for (int trial = 0; trial < 10; ++trial) {
            const QusoModel m = random_quso(16, rng, 0.5);
            SolverBudget b;
            b.restarts = 2;
            b.sweeps = 5;
            b.tabu_iterations = 3;
            b.seed = trial;
            Spins init(16);
            for (int& v : init) v = uniform(rng) < 0 ? -1 : 1;
            b.initial = init;
            for (const SolverResult& r : {simulated_annealing(m, b), tabu_search(m, b)}) {
                CHECK(r.best_value == m.value(r.best_assignment));
                CHECK(r.best_value <= m.value(init));
                CHECK(r.history.size() == 2);
            }
        }
    }
    SUBCASE("QUBO front ends") {
        std::mt19937_64 rng(44);
        const QuboModel q = random_qubo(8, rng);
        const double opt = brute_force(q).best_value;
        const SolverResult a = simulated_annealing(q, budget);
        const SolverResult t = tabu_search(q, budget);
        CHECK(a.best_value == q.value(a.best_assignment));
        CHECK(t.best_value == q.value(t.best_assignment));
        CHECK(a.best_value == doctest::Approx(opt).epsilon(1e-12));
        CHECK(t.best_value == doctest::Approx(opt).epsilon(1e-12));
    }
    SUBCASE("invalid budgets") {
        QusoModel m(3);
        SolverBudget bad;
        bad.sweeps = 0;
        CHECK_THROWS_AS(simulated_annealing(m, bad), ConfigError);
        bad = SolverBudget{};
        bad.t_initial = 1.0;
        bad.t_final = 2.0;
        CHECK_THROWS_AS(simulated_annealing(m, bad), ConfigError);
        bad = SolverBudget{};
        bad.restarts = 0;
        CHECK_THROWS_AS(tabu_search(m, bad), ConfigError);
    }
}

TEST_CASE("heuristics match brute force on random 12-spin instances") {
    std::mt19937_64 rng(45);
    int sa_hits = 0, tabu_hits = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const QusoModel m = random_quso(12, rng);
        const double opt = brute_force(m).best_value;
        SolverBudget b;
        b.seed = 1000 + trial;
        sa_hits += simulated_annealing(m, b).best_value <= opt + 1e-9;
        tabu_hits += tabu_search(m, b).best_value <= opt + 1e-9;
    }
    CHECK(sa_hits >= 19);
    CHECK(tabu_hits >= 19);
}

TEST_CASE("seeded results do not depend on the thread count") {
    std::mt19937_64 rng(46);
    const QusoModel m = random_quso(30, rng, 0.3);
    SolverBudget b1;
    b1.seed = 99;
    b1.restarts = 12;
    SolverBudget b4 = b1;
    b4.threads = 4;
    const SolverResult a1 = simulated_annealing(m, b1), a4 = simulated_annealing(m, b4);
    CHECK(a1.best_assignment == a4.best_assignment);
    CHECK(a1.history == a4.history);
    CHECK(a1.evaluations == a4.evaluations);
    const SolverResult t1 = tabu_search(m, b1), t4 = tabu_search(m, b4);
    CHECK(t1.best_assignment == t4.best_assignment);
    CHECK(t1.history == t4.history);
    const MaxCutInstance g = quso_to_maxcut(m);
    const SolverResult g1 = gw_maxcut(g, b1), g4 = gw_maxcut(g, b4);
    CHECK(g1.best_assignment == g4.best_assignment);
    CHECK(*g1.sdp_bound == *g4.sdp_bound);
    SolverBudget other = b1;
    other.seed = 100;
    CHECK(simulated_annealing(m, other).history != a1.history);
}

TEST_CASE("split_seed is a fixed function of its inputs") {
    CHECK(split_seed(1, 0) == split_seed(1, 0));
    CHECK(split_seed(1, 0) != split_seed(1, 1));
    CHECK(split_seed(1, 0) != split_seed(2, 0));
}

TEST_CASE("GW MaxCut") {
    SolverBudget budget;
    SUBCASE("triangle") {
        const SolverResult r = gw_maxcut(triangle(), budget);
        CHECK(r.best_value == 2.0);
        CHECK(*r.sdp_bound >= 2.0);
        CHECK(*r.sdp_bound == doctest::Approx(2.25).epsilon(1e-5));
        CHECK(r.sdp_converged);
    }
    SUBCASE("single edge") {
        MaxCutInstance g;
        g.n_vertices = 2;
        g.add_edge(0, 1, 3.5);
        const SolverResult r = gw_maxcut(g, budget);
        CHECK(r.best_value == 3.5);
        CHECK(r.best_assignment[0] != r.best_assignment[1]);
    }
    SUBCASE("relaxation dominance on nonnegative graphs") {
        std::mt19937_64 rng(47);
        for (int trial = 0; trial < 10; ++trial) {
            const MaxCutInstance g = random_graph(12, 0.5, false, rng);
            const SolverResult r = gw_maxcut(g, budget);
            CHECK(r.best_value == g.cut_value(r.best_assignment));
            CHECK(r.best_value >= 0.0);
            CHECK(*r.sdp_bound >= r.best_value - 1e-6);
            CHECK(r.best_value <= brute_force_maxcut(g).best_value + 1e-12);
            CHECK(*r.ratio_certificate ==
                  doctest::Approx(0.878 * r.best_value + 0.122 * g.negative_weight_sum()));
        }
    }
    SUBCASE("ancilla normalisation") {
        std::mt19937_64 rng(48);
        const QusoModel m = random_quso(9, rng);
        const MaxCutInstance g = quso_to_maxcut(m);
        const SolverResult r = gw_maxcut(g, budget);
        CHECK(r.best_assignment[0] == 1);
        CHECK(g.cut_value(r.best_assignment) + m.value(maxcut_to_quso_spins(r.best_assignment, g)) ==
              doctest::Approx(g.value_offset));
    }
}

TEST_CASE("exact MaxCut enumeration") {
    CHECK(brute_force_maxcut(triangle()).best_value == 2.0);
    std::mt19937_64 rng(49);
    const MaxCutInstance g = random_graph(10, 0.6, true, rng);
    CHECK(brute_force_maxcut(g).best_value == doctest::Approx(brute_max_cut(g)).epsilon(1e-13));
}

TEST_CASE("uniform dispatch") {
    QusoModel m(2);
    m.linear = {0.3, -0.7};
    m.add_quadratic(0, 1, 0.4);
    SolverBudget budget;
    const SolverResult b = solve(m, Method::Brute, budget);
    for (Method meth : {Method::Anneal, Method::Tabu, Method::Gw}) {
        const SolverResult r = solve(m, meth, budget);
        CHECK(r.best_assignment == b.best_assignment);
        CHECK(r.best_value == b.best_value);
    }
    const SolverResult gw = solve(m, Method::Gw, budget);
    CHECK(gw.sdp_bound.has_value());
    CHECK(parse_method("tabu") == Method::Tabu);
    CHECK(method_name(Method::Gw) == "gw");
    CHECK_THROWS_AS(parse_method("qaoa"), ConfigError);
}
