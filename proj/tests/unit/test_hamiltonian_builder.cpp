#include <doctest.h>

#include <algorithm>

#include "detforge/errors.hpp"
#include "detforge/hamiltonian_builder.hpp"
#include "detforge/problem_mappings.hpp"
#include "detforge/scf_driver.hpp"
#include "detforge/solvers.hpp"
#include "test_support.hpp"

using namespace detforge;
using namespace testsupport;

namespace {

int count_in(const Bits& b, const std::vector<int>& set) {
    int c = 0;
    for (int i : set) c += b[i];
    return c;
}

bool closed_shell(const Bits& b) {
    for (std::size_t k = 0; k + 1 < b.size(); k += 2)
        if (b[k] != b[k + 1]) return false;
    return true;
}

}  // namespace

TEST_CASE("expansion rule on small cases") {
    SUBCASE("zero MO data") {
        MoHamiltonianData mo;
        mo.m_spatial = 2;
        mo.h_mo = Eigen::MatrixXd::Zero(2, 2);
        mo.w_ppqq = Eigen::MatrixXd::Zero(2, 2);
        mo.w_pqqp = Eigen::MatrixXd::Zero(2, 2);
        mo.e_core = 0.4;
        const DiagonalHamiltonian h = build_diagonal_hamiltonian(mo);
        CHECK(h.m_spin == 4);
        CHECK(h.diag.isZero(0.0));
        CHECK(h.pair.isZero(0.0));
        CHECK(h.shift == 0.4);
    }
    SUBCASE("single spatial orbital") {
        MoHamiltonianData mo;
        mo.m_spatial = 1;
        mo.h_mo = Eigen::MatrixXd::Constant(1, 1, -1.0);
        mo.w_ppqq = Eigen::MatrixXd::Constant(1, 1, 0.5);
        mo.w_pqqp = Eigen::MatrixXd::Constant(1, 1, 0.5);
        const DiagonalHamiltonian h = build_diagonal_hamiltonian(mo);
        CHECK(h.diag[0] == -1.0);
        CHECK(h.diag[1] == -1.0);
        CHECK(h.pair(0, 1) == 0.5);
        CHECK(h.pair(1, 0) == 0.5);
        CHECK(h.pair(0, 0) == 0.0);
        CHECK(energy_of_state(h, {1, 1}) == -1.5);
    }
}

TEST_CASE("pair matrix structure on random MO data") {
    std::mt19937_64 rng(1);
    const MoHamiltonianData mo = random_mo(4, 2, 2, rng);
    const DiagonalHamiltonian h = build_diagonal_hamiltonian(mo);
    for (int m = 0; m < 8; ++m) {
        CHECK(h.pair(m, m) == 0.0);
        CHECK(h.diag[m] == mo.h_mo(m / 2, m / 2));
        for (int n = 0; n < 8; ++n) {
            CHECK(h.pair(m, n) == h.pair(n, m));
            if (m == n) continue;
            const int p = m / 2, q = n / 2;
            const double expect =
                (m % 2 == n % 2) ? mo.w_ppqq(p, q) - mo.w_pqqp(p, q) : mo.w_ppqq(p, q);
            CHECK(h.pair(m, n) == doctest::Approx(expect).epsilon(1e-14));
        }
    }
}

TEST_CASE("energy_of_state basics") {
    std::mt19937_64 rng(2);
    const DiagonalHamiltonian h = random_diagonal(6, rng);
    CHECK(energy_of_state(h, Bits(6, 0)) == h.shift);
    for (int n = 0; n < 6; ++n) {
        Bits b(6, 0);
        b[n] = 1;
        CHECK(energy_of_state(h, b) == doctest::Approx(h.shift + h.diag[n]).epsilon(1e-15));
    }
    CHECK_THROWS_AS(energy_of_state(h, Bits(5, 0)), LengthMismatch);
}

TEST_CASE("jw_map examples") {
    SUBCASE("constant") {
        DiagonalHamiltonian h;
        h.m_spin = 2;
        h.diag = Eigen::VectorXd::Zero(2);
        h.pair = Eigen::MatrixXd::Zero(2, 2);
        h.shift = 2.0;
        const QusoModel q = jw_map(h);
        CHECK(q.offset == 2.0);
        CHECK(q.linear == std::vector<double>{0.0, 0.0});
        CHECK(q.quadratic.empty());
    }
    SUBCASE("one diagonal entry") {
        DiagonalHamiltonian h;
        h.m_spin = 2;
        h.diag = Eigen::Vector2d(1.0, 0.0);
        h.pair = Eigen::MatrixXd::Zero(2, 2);
        const QusoModel q = jw_map(h);
        CHECK(q.offset == 0.5);
        CHECK(q.linear == std::vector<double>{-0.5, 0.0});
        CHECK(q.quadratic.empty());
    }
}

TEST_CASE("jw_map equals energy_of_state exhaustively at M = 10") {
    std::mt19937_64 rng(3);
    const DiagonalHamiltonian h = random_diagonal(10, rng);
    const QusoModel q = jw_map(h);
    double worst = 0.0;
    for_each_spins(10, [&](const Spins& z) {
        const double e = energy_of_state(h, spins_to_bits(z));
        worst = std::max(worst, std::abs(q.value(z) - e) / std::max(1.0, std::abs(e)));
    });
    CHECK(worst <= 1e-12);
}

TEST_CASE("number penalty") {
    SUBCASE("one bit") {
        const QusoModel p = number_penalty({0}, 1, 1);
        CHECK(p.value({-1}) == 0.0);
        CHECK(p.value({1}) == 1.0);
    }
    SUBCASE("two bits, single occupancy") {
        const QusoModel p = number_penalty({0, 1}, 1, 2);
        for_each_spins(2, [&](const Spins& z) {
            const int occ = (z[0] < 0) + (z[1] < 0);
            CHECK(p.value(z) == (occ == 1 ? 0.0 : 1.0));
        });
    }
    SUBCASE("six of twelve spins, target three") {
        std::mt19937_64 rng(4);
        std::vector<int> all(12);
        for (int i = 0; i < 12; ++i) all[i] = i;
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<int> set(all.begin(), all.begin() + 6);
        const QusoModel p = number_penalty(set, 3, 12);
        for_each_spins(12, [&](const Spins& z) {
            const int c = count_in(spins_to_bits(z), set);
            CHECK(p.value(z) == doctest::Approx(double((c - 3) * (c - 3))).epsilon(1e-14));
        });
    }
    CHECK_THROWS_AS(number_penalty({0, 1}, 3, 2), TargetOutOfRange);
    CHECK_THROWS_AS(number_penalty({0, 4}, 1, 3), IndexOutOfRange);
}

TEST_CASE("closed-shell spin penalty") {
    const QusoModel p1 = spin_penalty_closed_shell(1, 1);
    CHECK(p1.value({-1, -1}) == 0.0);
    CHECK(p1.value(bits_to_spins({1, 0})) == 1.0);

    // 8 spins, 2 α and 2 β electrons: value is the number of unpaired β electrons.
    const QusoModel p = spin_penalty_closed_shell(4, 2);
    int visited = 0;
    for_each_bits(8, [&](const Bits& b) {
        if (count_in(b, alpha_indices(4)) != 2 || count_in(b, beta_indices(4)) != 2) return;
        ++visited;
        int unpaired_beta = 0;
        for (int k = 0; k < 4; ++k) unpaired_beta += b[2 * k + 1] && !b[2 * k];
        CHECK(p.value(bits_to_spins(b)) == doctest::Approx(double(unpaired_beta)).epsilon(1e-14));
    });
    CHECK(visited == 36);
}

TEST_CASE("combined penalties are non-negative and vanish exactly on the target set") {
    for (int m = 1; m <= 6; ++m)
        for (int na = 0; na <= m; ++na) {
            PenaltySpec spec;
            spec.n_alpha_target = na;
            spec.n_beta_target = na;
            spec.s2_zero = true;
            const QusoModel p = penalty_model(2 * m, spec);
            PenaltySpec num_only = spec;
            num_only.s2_zero = false;
            const QusoModel pn = penalty_model(2 * m, num_only);
            for_each_bits(2 * m, [&](const Bits& b) {
                const Spins z = bits_to_spins(b);
                const bool in_sector =
                    count_in(b, alpha_indices(m)) == na && count_in(b, beta_indices(m)) == na;
                const double v = p.value(z);
                CHECK(v >= -1e-12);
                CHECK((std::abs(v) <= 1e-12) == (in_sector && closed_shell(b)));
                const double vn = pn.value(z);
                CHECK(vn >= -1e-12);
                CHECK((std::abs(vn) <= 1e-12) == in_sector);
            });
        }
}

TEST_CASE("diagonal S squared") {
    CHECK(s2_diagonal(2).value(bits_to_spins({1, 1, 0, 0})) == doctest::Approx(0.0));
    CHECK(s2_diagonal(1).value(bits_to_spins({1, 0})) == doctest::Approx(0.75));
    CHECK(s2_diagonal(2).value(bits_to_spins({1, 0, 1, 0})) == doctest::Approx(2.0));
    CHECK(s2_diagonal(2).value(bits_to_spins({1, 0, 0, 1})) == doctest::Approx(1.0));
    // Term-by-term oracle: 3/4 Σ_p (n_pα − n_pβ)² + 1/4 Σ_{p≠m} (n_pα − n_pβ)(n_mα − n_mβ).
    const int m = 4;
    const QusoModel s2 = s2_diagonal(m);
    for_each_bits(2 * m, [&](const Bits& b) {
        double ref = 0.0;
        for (int p = 0; p < m; ++p) {
            const double sp = b[2 * p] - b[2 * p + 1];
            ref += 0.75 * sp * sp;
            for (int q = 0; q < m; ++q)
                if (q != p) ref += 0.25 * sp * (b[2 * q] - b[2 * q + 1]);
        }
        CHECK(s2.value(bits_to_spins(b)) == doctest::Approx(ref).epsilon(1e-13));
    });
}

TEST_CASE("apply_penalties and lambda resolution") {
    QusoModel q(2);
    q.linear = {1.0, -2.0};
    q.add_quadratic(0, 1, 0.5);
    q.offset = 100.0;
    CHECK(resolve_lambda(q, PenaltySpec{}) == 3.5);
    CHECK(apply_penalties(q, PenaltySpec{}) == q);

    PenaltySpec spec;
    spec.n_alpha_target = 1;
    const QusoModel pq = apply_penalties(q, spec);
    for_each_spins(2, [&](const Spins& z) {
        const double pen = z[0] < 0 ? 0.0 : 1.0;
        CHECK(pq.value(z) == doctest::Approx(q.value(z) + 3.5 * pen).epsilon(1e-14));
    });

    spec.lambda = 7.0;
    CHECK(resolve_lambda(q, spec) == 7.0);
    spec.lambda = -1.0;
    CHECK_THROWS_AS(resolve_lambda(q, spec), ConfigError);
    CHECK_THROWS_AS(penalty_model(3, PenaltySpec{1, 1, false, {}}), SizeMismatch);
}

TEST_CASE("H2 converged basis: lowest sector determinant doubly occupies orbital 0") {
    const MoHamiltonianData mo = load_fcidump(fixture("h2_sto3g_0.74_sorhf.fcidump"));
    const DiagonalHamiltonian h = build_diagonal_hamiltonian(mo);
    Bits best;
    double e_best = INFINITY;
    for_each_bits(4, [&](const Bits& b) {
        if (b[0] + b[2] != 1 || b[1] + b[3] != 1) return;
        const double e = energy_of_state(h, b);
        if (e < e_best) {
            e_best = e;
            best = b;
        }
    });
    CHECK(best == Bits{1, 1, 0, 0});
}

TEST_CASE("OH- converged basis: aufbau energy") {
    const MoHamiltonianData mo = load_fcidump(fixture("oh_minus_631g_3.0_sorhf.fcidump"));
    const DiagonalHamiltonian h = build_diagonal_hamiltonian(mo);
    CHECK(mo.m_spatial == 11);
    CHECK(std::abs(energy_of_state(h, aufbau_state(11, 5, 5)) - (-75.113307)) <= 1e-5);
}

TEST_CASE("exchange-corrected pair entries are non-negative on fixtures") {
    for (const char* name : {"oh_minus_631g_3.0_sorhf.fcidump", "n2_ccpvdz_3.0_rhf.fcidump",
                             "h2_sto3g_0.74_sorhf.fcidump"}) {
        const DiagonalHamiltonian h = build_diagonal_hamiltonian(load_fcidump(fixture(name)));
        CHECK_MESSAGE(h.pair.minCoeff() >= -1e-10, name);
        for (int k = 0; 2 * k + 1 < h.m_spin; ++k) CHECK(h.pair(2 * k, 2 * k + 1) >= -1e-10);
    }
}

TEST_CASE("OH- penalized global optimum equals the closed-shell sector optimum") {
    const IntegralBundle b = load_bundle(fixture("oh_minus_631g_3.0.scfb.json"));
    const MoHamiltonianData mo = ao_to_mo(b, initial_orbitals(b));
    const DiagonalHamiltonian h = build_diagonal_hamiltonian(mo);
    const QusoModel raw = jw_map(h);
    PenaltySpec spec{5, 5, true, {}};
    const QusoModel pen = apply_penalties(raw, spec);
    const SolverResult global = brute_force(pen);

    // Independent restricted enumeration of the raw model over closed-shell sector states.
    double best = INFINITY;
    Bits best_b;
    std::vector<int> c(5);
    for (int i = 0; i < 5; ++i) c[i] = i;
    while (true) {
        Bits bb(22, 0);
        for (int i : c) bb[2 * i] = bb[2 * i + 1] = 1;
        const double e = energy_of_state(h, bb);
        if (e < best) {
            best = e;
            best_b = bb;
        }
        int i = 4;
        while (i >= 0 && c[i] == 11 - 5 + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < 5; ++j) c[j] = c[j - 1] + 1;
    }
    CHECK(spins_to_bits(global.best_assignment) == best_b);
    CHECK(global.best_value == doctest::Approx(best).epsilon(1e-12));

    const SolverResult sectored =
        brute_force(pen, Sector{alpha_indices(11), 5, beta_indices(11), 5});
    CHECK(sectored.best_assignment == global.best_assignment);
}
