#include "detforge/hamiltonian_builder.hpp"

#include <cmath>

#include "detforge/errors.hpp"

namespace detforge {

DiagonalHamiltonian build_diagonal_hamiltonian(const MoHamiltonianData& mo) {
    const int m = mo.m_spatial;
    if (mo.h_mo.rows() != m || mo.h_mo.cols() != m || mo.w_ppqq.rows() != m ||
        mo.w_ppqq.cols() != m || mo.w_pqqp.rows() != m || mo.w_pqqp.cols() != m)
        throw ShapeMismatch("MO matrices do not match m_spatial=" + std::to_string(m));
    DiagonalHamiltonian h;
    h.m_spin = 2 * m;
    h.shift = mo.e_core;
    h.diag.resize(2 * m);
    h.pair = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (int s = 0; s < 2 * m; ++s) h.diag[s] = mo.h_mo(s / 2, s / 2);
    for (int s = 0; s < 2 * m; ++s)
        for (int t = 0; t < 2 * m; ++t) {
            if (s == t) continue;
            const int p = s / 2, q = t / 2;
            if (s % 2 == t % 2)
                h.pair(s, t) = mo.w_ppqq(p, q) - mo.w_pqqp(p, q);
            else
                h.pair(s, t) = mo.w_ppqq(p, q);
        }
    // Exact symmetry so the JW map sees a single coefficient per pair.
    const Eigen::MatrixXd sym = 0.5 * (h.pair + h.pair.transpose());
    h.pair = sym;
    return h;
}

double energy_of_state(const DiagonalHamiltonian& h, const FockState& b) {
    if (static_cast<int>(b.size()) != h.m_spin)
        throw LengthMismatch("state has " + std::to_string(b.size()) + " bits, Hamiltonian has " +
                             std::to_string(h.m_spin));
    double e = h.shift;
    for (int n = 0; n < h.m_spin; ++n)
        if (b[n]) e += h.diag[n];
    double two = 0.0;
    for (int m = 0; m < h.m_spin; ++m) {
        if (!b[m]) continue;
        for (int n = m + 1; n < h.m_spin; ++n)
            if (b[n]) two += h.pair(m, n);
    }
    return e + two;
}

QusoModel jw_map(const DiagonalHamiltonian& h) {
    const int n = h.m_spin;
    QusoModel q(n);
    q.offset = h.shift;
    for (int i = 0; i < n; ++i) {
        q.offset += 0.5 * h.diag[i];
        q.linear[i] -= 0.5 * h.diag[i];
    }
    // ½ Σ_{m≠n} pair/4 (1 - z_m - z_n + z_m z_n) over unordered pairs.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double c = 0.25 * h.pair(i, j);
            if (c == 0.0) continue;
            q.offset += c;
            q.linear[i] -= c;
            q.linear[j] -= c;
            q.quadratic[{i, j}] += c;
        }
    return q;
}

QusoModel number_penalty(const std::vector<int>& indices, int target, std::size_t n) {
    for (int i : indices)
        if (i < 0 || static_cast<std::size_t>(i) >= n)
            throw IndexOutOfRange("penalty index " + std::to_string(i) + " outside [0," +
                                  std::to_string(n) + ")");
    const int k = static_cast<int>(indices.size());
    if (target < 0 || target > k)
        throw TargetOutOfRange("target " + std::to_string(target) + " not in [0," + std::to_string(k) + "]");
    // S = k/2 - ½Σz, (S - t)² = (k/2 - t)² - (k/2 - t)Σz + ¼(k + 2Σ_{i<j} z_i z_j)
    QusoModel q(n);
    const double a = 0.5 * k - target;
    q.offset = a * a + 0.25 * k;
    for (int i : indices) q.linear[i] += -a;
    for (int x = 0; x < k; ++x)
        for (int y = x + 1; y < k; ++y) q.add_quadratic(indices[x], indices[y], 0.5);
    return q;
}

QusoModel spin_penalty_closed_shell(int m_spatial, int n_beta) {
    if (n_beta < 0 || n_beta > m_spatial)
        throw TargetOutOfRange("n_beta " + std::to_string(n_beta) + " not in [0," +
                               std::to_string(m_spatial) + "]");
    // n_α n_β = (1 - z_α - z_β + z_α z_β)/4 per spatial orbital
    QusoModel q(2 * m_spatial);
    q.offset = n_beta;
    for (int k = 0; k < m_spatial; ++k) {
        q.offset -= 0.25;
        q.linear[2 * k] += 0.25;
        q.linear[2 * k + 1] += 0.25;
        q.add_quadratic(2 * k, 2 * k + 1, -0.25);
    }
    return q;
}

QusoModel s2_diagonal(int m_spatial) {
    const int n = 2 * m_spatial;
    QuboModel x(n);
    // 3/4 Σ_p (n_pα + n_pβ - 2 n_pα n_pβ)
    for (int p = 0; p < m_spatial; ++p) {
        x.linear[2 * p] += 0.75;
        x.linear[2 * p + 1] += 0.75;
        x.add_quadratic(2 * p, 2 * p + 1, -1.5);
    }
    // 1/4 Σ_{p≠m} (n_pα n_mα - n_pα n_mβ - n_pβ n_mα + n_pβ n_mβ)
    for (int p = 0; p < m_spatial; ++p)
        for (int m = 0; m < m_spatial; ++m) {
            if (p == m) continue;
            x.add_quadratic(2 * p, 2 * m, 0.25);
            x.add_quadratic(2 * p, 2 * m + 1, -0.25);
            x.add_quadratic(2 * p + 1, 2 * m, -0.25);
            x.add_quadratic(2 * p + 1, 2 * m + 1, 0.25);
        }
    // x = (1 - z)/2
    QusoModel q(n);
    q.offset = x.offset;
    for (int i = 0; i < n; ++i) {
        q.offset += 0.5 * x.linear[i];
        q.linear[i] -= 0.5 * x.linear[i];
    }
    for (const auto& [key, c] : x.quadratic) {
        q.offset += 0.25 * c;
        q.linear[key.first] -= 0.25 * c;
        q.linear[key.second] -= 0.25 * c;
        q.add_quadratic(key.first, key.second, 0.25 * c);
    }
    q.prune_zeros();
    return q;
}

PuboModel spin_penalty_squared(int m_spatial, int n_beta) {
    PuboModel p;
    p.n = 2 * m_spatial;
    // (t - Σ_k d_k)² with d_k = x_{2k} x_{2k+1}, d_k² = d_k
    p.add_term({}, double(n_beta) * n_beta);
    for (int k = 0; k < m_spatial; ++k) p.add_term({2 * k, 2 * k + 1}, 1.0 - 2.0 * n_beta);
    for (int k = 0; k < m_spatial; ++k)
        for (int l = k + 1; l < m_spatial; ++l) p.add_term({2 * k, 2 * k + 1, 2 * l, 2 * l + 1}, 2.0);
    return p;
}

double resolve_lambda(const QusoModel& h_quso, const PenaltySpec& spec) {
    if (spec.lambda) {
        if (!(*spec.lambda > 0.0) || !std::isfinite(*spec.lambda))
            throw ConfigError("penalty weight must be positive and finite");
        return *spec.lambda;
    }
    const double l = h_quso.coefficient_one_norm();
    return l > 0.0 ? l : 1.0;
}

std::vector<int> alpha_indices(int m_spatial) {
    std::vector<int> v(m_spatial);
    for (int p = 0; p < m_spatial; ++p) v[p] = 2 * p;
    return v;
}

std::vector<int> beta_indices(int m_spatial) {
    std::vector<int> v(m_spatial);
    for (int p = 0; p < m_spatial; ++p) v[p] = 2 * p + 1;
    return v;
}

QusoModel penalty_model(std::size_t n, const PenaltySpec& spec) {
    if (n % 2 != 0) throw SizeMismatch("penalties need an even spin-orbital count");
    const int m = static_cast<int>(n / 2);
    QusoModel p(n);
    if (spec.n_alpha_target) p.add(number_penalty(alpha_indices(m), *spec.n_alpha_target, n));
    if (spec.n_beta_target) p.add(number_penalty(beta_indices(m), *spec.n_beta_target, n));
    if (spec.s2_zero) {
        if (!spec.n_beta_target) throw ConfigError("closed-shell spin penalty needs n_beta_target");
        p.add(spin_penalty_closed_shell(m, *spec.n_beta_target));
    }
    return p;
}

QusoModel apply_penalties(const QusoModel& h_quso, const PenaltySpec& spec) {
    if (spec.empty()) return h_quso;
    const QusoModel p = penalty_model(h_quso.n, spec);
    QusoModel out = h_quso;
    out.add(p, resolve_lambda(h_quso, spec));
    out.prune_zeros();
    return out;
}

FockState aufbau_state(int m_spatial, int n_alpha, int n_beta) {
    FockState b(2 * m_spatial, 0);
    for (int p = 0; p < n_alpha; ++p) b[2 * p] = 1;
    for (int p = 0; p < n_beta; ++p) b[2 * p + 1] = 1;
    return b;
}

}  // namespace detforge
