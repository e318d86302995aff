#include "detforge/scf_driver.hpp"

#include <chrono>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "detforge/errors.hpp"
#include "detforge/format.hpp"
#include "detforge/orbital_rotation.hpp"
#include "detforge/problem_mappings.hpp"

namespace detforge {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool in_sector(const FockState& b, const ScfConfig& cfg, int n_alpha, int n_beta) {
    int na = 0, nb = 0;
    for (std::size_t s = 0; s < b.size(); ++s) (s % 2 == 0 ? na : nb) += b[s];
    if (cfg.number_penalty && (na != n_alpha || nb != n_beta)) return false;
    if (cfg.spin_penalty)
        for (std::size_t p = 0; 2 * p + 1 < b.size(); ++p)
            if (b[2 * p] != b[2 * p + 1]) return false;
    return true;
}

Eigen::MatrixXd occupation_density(const Eigen::MatrixXd& c, const FockState& b, int sigma) {
    const Eigen::Index m = c.cols();
    Eigen::VectorXd n(m);
    for (Eigen::Index p = 0; p < m; ++p) n[p] = b[2 * p + sigma];
    return c * n.asDiagonal() * c.transpose();
}

double trace_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.cwiseProduct(b).sum();
}

FockState closed_aufbau(int m, int n_alpha, int n_beta) { return aufbau_state(m, n_alpha, n_beta); }

void append_record(ScfTrace& trace, int it, double e, const FockState& b, std::uint64_t evals,
                   double wall, double s2, double consistency) {
    IterationRecord r;
    r.iteration = it;
    r.energy = e;
    r.bitstring = bitstring(b);
    r.solver_evals = evals;
    r.wall_ms = wall;
    r.s2_diag = s2;
    r.consistency_error = consistency;
    trace.records.push_back(std::move(r));
}

// BFGS over orbital rotations in a re-anchored frame: every accepted step
// folds exp(-K(s)) into V and the next gradient is taken at κ = 0.
struct KappaOptimum {
    Eigen::MatrixXd v;
    double energy = 0.0;
    int iterations = 0;
};

KappaOptimum minimise_kappa(const MoHamiltonianData& mo, const FockState& b, const ScfConfig& cfg) {
    const int m = mo.m_spatial;
    const Eigen::Index nk = static_cast<Eigen::Index>(kappa_length(m));
    KappaOptimum out;
    out.v = Eigen::MatrixXd::Identity(m, m);
    out.energy = rotated_energy(mo, out.v, b);
    if (nk == 0) return out;

    auto step_matrix = [m](const Eigen::VectorXd& kappa) {
        return rotation_matrix(skew_from_kappa(kappa, m));
    };
    auto gradient = [&](const Eigen::MatrixXd& v) {
        if (cfg.gradient == GradientMode::Analytic)
            return analytic_kappa_gradient(rotate_mo(mo, v, true), b);
        Eigen::VectorXd g(nk);
        Eigen::VectorXd e = Eigen::VectorXd::Zero(nk);
        for (Eigen::Index i = 0; i < nk; ++i) {
            e[i] = cfg.fd_step;
            const double ep = rotated_energy(mo, step_matrix(e) * v, b);
            e[i] = -cfg.fd_step;
            const double em = rotated_energy(mo, step_matrix(e) * v, b);
            e[i] = 0.0;
            g[i] = (ep - em) / (2.0 * cfg.fd_step);
        }
        return g;
    };

    Eigen::VectorXd g = gradient(out.v);
    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(nk, nk);
    for (int it = 0; it < cfg.kappa_max_iter; ++it) {
        if (g.cwiseAbs().maxCoeff() < cfg.kappa_gtol) break;
        Eigen::VectorXd d = -hinv * g;
        double slope = g.dot(d);
        if (slope >= 0.0) {
            hinv.setIdentity();
            d = -g;
            slope = -g.squaredNorm();
        }
        // Cap the rotation angle of a single step.
        const double dmax = d.cwiseAbs().maxCoeff();
        if (dmax > 0.5) {
            d *= 0.5 / dmax;
            slope *= 0.5 / dmax;
        }
        double alpha = 1.0;
        Eigen::MatrixXd v_try;
        double e_try = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            v_try = step_matrix(alpha * d) * out.v;
            e_try = rotated_energy(mo, v_try, b);
            if (e_try <= out.energy + 1e-4 * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;
        const Eigen::VectorXd s = alpha * d;
        const double de = out.energy - e_try;
        out.v = v_try;
        out.energy = e_try;
        out.iterations = it + 1;
        const Eigen::VectorXd g_new = gradient(out.v);
        const Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-14) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(nk, nk);
            hinv = (ident - rho * s * y.transpose()) * hinv * (ident - rho * y * s.transpose()) +
                   rho * s * s.transpose();
        }
        g = g_new;
        if (de < 1e-14 && g.cwiseAbs().maxCoeff() < 10 * cfg.kappa_gtol) break;
    }
    return out;
}

}  // namespace

Algorithm parse_algorithm(const std::string& s) {
    if (s == "1") return Algorithm::One;
    if (s == "2") return Algorithm::Two;
    if (s == "boost") return Algorithm::Boost;
    throw ConfigError("unknown algorithm '" + s + "' (expected 1, 2 or boost)");
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::One: return "1";
        case Algorithm::Two: return "2";
        case Algorithm::Boost: return "boost";
    }
    return "unknown";
}

SolverBudget scf_default_budget() {
    SolverBudget b;
    b.sweeps = 3000;
    return b;
}

Eigen::MatrixXd spin_free_rdm(const FockState& b) {
    if (b.size() % 2 != 0) throw LengthMismatch("restricted states need an even spin-orbital count");
    const Eigen::Index m = b.size() / 2;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index p = 0; p < m; ++p) t(p, p) = b[2 * p] + b[2 * p + 1];
    return t;
}

PenaltySpec penalty_spec(const ScfConfig& cfg, int n_alpha, int n_beta) {
    PenaltySpec spec;
    spec.lambda = cfg.lambda;
    if (cfg.spin_penalty && !cfg.number_penalty)
        throw ConfigError("the closed-shell spin penalty requires the number penalty");
    if (cfg.number_penalty) {
        spec.n_alpha_target = n_alpha;
        spec.n_beta_target = n_beta;
    }
    spec.s2_zero = cfg.spin_penalty;
    return spec;
}

InnerSolution solve_inner(const DiagonalHamiltonian& hd, const ScfConfig& cfg, int n_alpha,
                          int n_beta, const FockState* warm) {
    const QusoModel raw = jw_map(hd);
    PenaltySpec spec = penalty_spec(cfg, n_alpha, n_beta);
    const int m = hd.m_spin / 2;
    InnerSolution out;

    if (cfg.method == Method::Brute) {
        const QusoModel model = apply_penalties(raw, spec);
        std::optional<Sector> sector;
        if (cfg.number_penalty) sector = Sector{alpha_indices(m), n_alpha, beta_indices(m), n_beta};
        const SolverResult r = brute_force(model, sector);
        out.b = spins_to_bits(r.best_assignment);
        out.evaluations = r.evaluations;
    } else {
        const double lambda = resolve_lambda(raw, spec);
        SolverBudget budget = cfg.budget;
        if (warm && cfg.warm_start) budget.initial = bits_to_spins(*warm);
        for (int attempt = 0; attempt < 2; ++attempt) {
            spec.lambda = attempt == 0 ? lambda : 10.0 * lambda;
            const QusoModel model = apply_penalties(raw, spec);
            const SolverResult r = solve(model, cfg.method, budget);
            out.b = spins_to_bits(r.best_assignment);
            out.evaluations += r.evaluations;
            if (in_sector(out.b, cfg, n_alpha, n_beta)) break;
            if (attempt == 1)
                throw InnerSolverFailure(method_name(cfg.method) +
                                         " returned a state outside the target sector after retry: " +
                                         bitstring(out.b));
        }
    }
    out.energy = energy_of_state(hd, out.b);
    return out;
}

Eigen::MatrixXd coulomb(const EriTensor& eri, const Eigen::MatrixXd& gamma) {
    const Eigen::Index n = eri.dim();
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> g(eri.data().data(), n * n, n * n);
    const RowMat gr = gamma;
    const Eigen::Map<const Eigen::VectorXd> gv(gr.data(), n * n);
    const Eigen::VectorXd jv = g * gv;
    Eigen::MatrixXd j(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) j(a, b) = jv[a * n + b];
    return j;
}

Eigen::MatrixXd exchange(const EriTensor& eri, const Eigen::MatrixXd& gamma) {
    const Eigen::Index n = eri.dim();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index mu = 0; mu < n; ++mu)
        for (Eigen::Index lam = 0; lam < n; ++lam)
            for (Eigen::Index sig = 0; sig < n; ++sig) {
                const double gls = gamma(lam, sig);
                if (gls == 0.0) continue;
                for (Eigen::Index nu = 0; nu < n; ++nu) k(mu, nu) += gls * eri(mu, lam, sig, nu);
            }
    return k;
}

Eigen::MatrixXd inverse_sqrt_overlap(const Eigen::MatrixXd& s) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv.size() == 0 || !(sv.minCoeff() > 1e-10))
        throw LinearAlgebraFailure("overlap matrix is singular (smallest singular value " +
                                   format_double(sv.size() ? sv.minCoeff() : 0.0) + ")");
    const Eigen::VectorXd inv = sv.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd a = svd.matrixU() * inv.asDiagonal() * svd.matrixU().transpose();
    return 0.5 * (a + a.transpose());
}

Eigen::MatrixXd orbitals_from_fock(const Eigen::MatrixXd& fock, const Eigen::MatrixXd& a) {
    Eigen::MatrixXd fp = a.transpose() * fock * a;
    fp = 0.5 * (fp + fp.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fp);
    if (es.info() != Eigen::Success) throw LinearAlgebraFailure("Fock diagonalisation failed");
    return a * es.eigenvectors();
}

Eigen::MatrixXd initial_density(const IntegralBundle& b) {
    if (b.gamma_init) return *b.gamma_init;
    const int m = b.m_spatial;
    const FockState occ = closed_aufbau(m, b.n_alpha, b.n_beta);
    const Eigen::MatrixXd c = b.c_init ? *b.c_init : orbitals_from_fock(b.hcore, inverse_sqrt_overlap(b.overlap));
    return occupation_density(c, occ, 0) + occupation_density(c, occ, 1);
}

Eigen::MatrixXd initial_orbitals(const IntegralBundle& b) {
    const Eigen::MatrixXd gamma = initial_density(b);
    const Eigen::MatrixXd f = b.hcore + coulomb(b.eri, gamma) - 0.5 * exchange(b.eri, gamma);
    return orbitals_from_fock(f, inverse_sqrt_overlap(b.overlap));
}

AoEnergy ao_energy(const IntegralBundle& b, const Eigen::MatrixXd& c, const FockState& occ) {
    const Eigen::MatrixXd ga = occupation_density(c, occ, 0);
    const Eigen::MatrixXd gb = occupation_density(c, occ, 1);
    AoEnergy out;
    out.gamma = ga + gb;
    const Eigen::MatrixXd j = coulomb(b.eri, out.gamma);
    const Eigen::MatrixXd fa = b.hcore + j - exchange(b.eri, ga);
    const Eigen::MatrixXd fb = b.hcore + j - exchange(b.eri, gb);
    out.energy = 0.5 * (trace_product(ga, b.hcore + fa) + trace_product(gb, b.hcore + fb)) + b.e_nuc;
    out.fock = 0.5 * (fa + fb);
    return out;
}

ScfResult run_algorithm2(const IntegralBundle& bundle, const ScfConfig& cfg) {
    if (cfg.max_iter < 1 || !(cfg.epsilon > 0.0)) throw ConfigError("need max_iter >= 1 and epsilon > 0");
    const auto t_start = Clock::now();
    const int m = bundle.m_spatial;
    const Eigen::MatrixXd a = inverse_sqrt_overlap(bundle.overlap);
    const QusoModel s2 = s2_diagonal(m);

    Eigen::MatrixXd gamma = initial_density(bundle);
    Eigen::MatrixXd fock = bundle.hcore + coulomb(bundle.eri, gamma) - 0.5 * exchange(bundle.eri, gamma);

    ScfResult res;
    res.trace.algorithm = "2";
    res.trace.solver = method_name(cfg.method);
    FockState warm = closed_aufbau(m, bundle.n_alpha, bundle.n_beta);
    double prev = 0.0;
    ScfState best;
    best.energy = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const auto t_it = Clock::now();
        const Eigen::MatrixXd c = orbitals_from_fock(fock, a);
        const MoHamiltonianData mo = ao_to_mo(bundle, c);
        const DiagonalHamiltonian hd = build_diagonal_hamiltonian(mo);
        const InnerSolution inner = solve_inner(hd, cfg, bundle.n_alpha, bundle.n_beta, &warm);
        const AoEnergy ae = ao_energy(bundle, c, inner.b);
        const double s2v = s2.value(bits_to_spins(inner.b));
        append_record(res.trace, it, ae.energy, inner.b, inner.evaluations, ms_since(t_it), s2v,
                      std::abs(ae.energy - inner.energy));

        ScfState st;
        st.iteration = it;
        st.c = c;
        st.gamma = ae.gamma;
        st.fock = ae.fock;
        st.energy = ae.energy;
        st.b_min = inner.b;
        st.s2_diag = s2v;
        const bool conv = it > 1 && std::abs(ae.energy - prev) < cfg.epsilon;
        st.converged = conv;
        if (conv) {
            res.state = std::move(st);
            res.trace.converged = true;
            break;
        }
        if (st.energy < best.energy) best = st;
        res.state = std::move(st);
        prev = ae.energy;
        fock = ae.fock;
        warm = inner.b;
    }
    if (!res.trace.converged) res.state = best;
    res.trace.final_energy = res.state.energy;
    res.trace.total_wall_ms = ms_since(t_start);
    return res;
}

double rotated_energy(const MoHamiltonianData& mo, const Eigen::MatrixXd& v, const FockState& b) {
    const int m = mo.m_spatial;
    if (static_cast<int>(b.size()) != 2 * m) throw LengthMismatch("state size does not match the basis");
    if (!mo.eri_mo) throw ShapeMismatch("rotated energies need the full MO tensor");
    std::vector<int> occ;
    for (int p = 0; p < m; ++p)
        if (b[2 * p] || b[2 * p + 1]) occ.push_back(p);
    const int r = static_cast<int>(occ.size());
    Eigen::MatrixXd vs(r, m);
    for (int i = 0; i < r; ++i) vs.row(i) = v.row(occ[i]);
    const Eigen::MatrixXd h = vs * mo.h_mo * vs.transpose();
    const DiagonalSlices w = transform_two_electron_diagonal(*mo.eri_mo, vs);
    double e = mo.e_core;
    for (int i = 0; i < r; ++i) e += h(i, i) * (b[2 * occ[i]] + b[2 * occ[i] + 1]);
    double two = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t) {
                    const int a = 2 * occ[i] + s, c = 2 * occ[j] + t;
                    if (a >= c || !b[a] || !b[c]) continue;
                    two += s == t ? w.w_ppqq(i, j) - w.w_pqqp(i, j) : w.w_ppqq(i, j);
                }
    return e + two;
}

Eigen::VectorXd analytic_kappa_gradient(const MoHamiltonianData& mo, const FockState& b) {
    if (!mo.eri_mo) throw ShapeMismatch("analytic gradients need the full MO tensor");
    const int m = mo.m_spatial;
    const EriTensor& g = *mo.eri_mo;
    Eigen::VectorXd na(m), nb(m);
    for (int p = 0; p < m; ++p) {
        na[p] = b[2 * p];
        nb[p] = b[2 * p + 1];
    }
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m, m), ka = j, kb = j;
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r) {
                j(p, q) += (na[r] + nb[r]) * g(p, q, r, r);
                ka(p, q) += na[r] * g(p, r, r, q);
                kb(p, q) += nb[r] * g(p, r, r, q);
            }
    const Eigen::MatrixXd fa = mo.h_mo + j - ka;
    const Eigen::MatrixXd fb = mo.h_mo + j - kb;
    Eigen::VectorXd grad(kappa_length(m));
    Eigen::Index pos = 0;
    for (int i = 1; i < m; ++i)
        for (int k = 0; k < i; ++k)
            grad[pos++] = 2.0 * (fa(i, k) * (na[i] - na[k]) + fb(i, k) * (nb[i] - nb[k]));
    return grad;
}

ScfResult run_algorithm1(const MoHamiltonianData& mo_in, const ScfConfig& cfg) {
    if (cfg.max_iter < 1 || !(cfg.epsilon > 0.0)) throw ConfigError("need max_iter >= 1 and epsilon > 0");
    if (!mo_in.eri_mo) throw ShapeMismatch("Algorithm 1 needs the full MO tensor");
    const auto t_start = Clock::now();
    const int m = mo_in.m_spatial;
    const QusoModel s2 = s2_diagonal(m);
    MoHamiltonianData ref = mo_in;
    if (ref.w_ppqq.rows() != m) fill_diagonal_slices(ref);
    Eigen::MatrixXd c_total = Eigen::MatrixXd::Identity(m, m);

    ScfResult res;
    res.trace.algorithm = "1";
    res.trace.solver = method_name(cfg.method);
    FockState warm = closed_aufbau(m, ref.n_alpha, ref.n_beta);
    double prev = 0.0;
    ScfState best;
    best.energy = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const auto t_it = Clock::now();
        const DiagonalHamiltonian hd = build_diagonal_hamiltonian(ref);
        const InnerSolution inner = solve_inner(hd, cfg, ref.n_alpha, ref.n_beta, &warm);
        if (it == 1) prev = inner.energy;
        const KappaOptimum opt = minimise_kappa(ref, inner.b, cfg);
        ref = rotate_mo(ref, opt.v, true);
        c_total = c_total * opt.v.transpose();
        const double s2v = s2.value(bits_to_spins(inner.b));
        append_record(res.trace, it, opt.energy, inner.b, inner.evaluations, ms_since(t_it), s2v, 0.0);

        ScfState st;
        st.iteration = it;
        st.c = c_total;
        st.gamma = spin_free_rdm(inner.b);
        st.energy = opt.energy;
        st.b_min = inner.b;
        st.s2_diag = s2v;
        const bool conv = std::abs(opt.energy - prev) < cfg.epsilon;
        st.converged = conv;
        if (conv) {
            res.state = std::move(st);
            res.trace.converged = true;
            break;
        }
        if (st.energy < best.energy) best = st;
        res.state = std::move(st);
        prev = opt.energy;
        warm = inner.b;
    }
    if (!res.trace.converged) res.state = best;
    // Fock matrix of the final determinant in the final MO basis.
    {
        const MoHamiltonianData fin = rotate_mo(mo_in, res.state.c.transpose(), true);
        const EriTensor& g = *fin.eri_mo;
        Eigen::MatrixXd f = fin.h_mo;
        for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q)
                for (int r = 0; r < m; ++r) {
                    const double nr = res.state.b_min[2 * r] + res.state.b_min[2 * r + 1];
                    f(p, q) += nr * (g(p, q, r, r) - 0.5 * g(p, r, r, q));
                }
        res.state.fock = f;
    }
    res.trace.final_energy = res.state.energy;
    res.trace.total_wall_ms = ms_since(t_start);
    return res;
}

ScfResult run_algorithm1(const IntegralBundle& bundle, const ScfConfig& cfg) {
    const Eigen::MatrixXd c0 = initial_orbitals(bundle);
    const MoHamiltonianData mo = ao_to_mo(bundle, c0, true);
    ScfResult res = run_algorithm1(mo, cfg);
    res.state.c = c0 * res.state.c;
    const AoEnergy ae = ao_energy(bundle, res.state.c, res.state.b_min);
    res.state.gamma = ae.gamma;
    res.state.fock = ae.fock;
    return res;
}

BoostReport run_boost(const MoHamiltonianData& mo, const ScfConfig& cfg) {
    const DiagonalHamiltonian hd = build_diagonal_hamiltonian(mo);
    BoostReport rep;
    rep.aufbau = closed_aufbau(mo.m_spatial, mo.n_alpha, mo.n_beta);
    rep.aufbau_energy = energy_of_state(hd, rep.aufbau);
    const InnerSolution inner = solve_inner(hd, cfg, mo.n_alpha, mo.n_beta, &rep.aufbau);
    rep.best = inner.b;
    rep.energy = inner.energy;
    rep.solver_evals = inner.evaluations;
    rep.instability = rep.energy < rep.aufbau_energy - 1e-9;
    return rep;
}

std::string bitstring(const FockState& b) {
    std::string s(b.size(), '0');
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i]) s[i] = '1';
    return s;
}

std::string trace_csv(const ScfTrace& t, bool with_timing) {
    std::ostringstream os;
    os << "iteration,energy_hartree,bitstring,solver_evals,wall_ms\n";
    for (const IterationRecord& r : t.records) {
        os << r.iteration << ',' << format_fixed(r.energy, 10) << ',' << r.bitstring << ','
           << r.solver_evals << ',';
        if (with_timing) os << format_fixed(r.wall_ms, 3);
        os << '\n';
    }
    return os.str();
}

std::string trace_summary_json(const ScfTrace& t, const ScfState& s) {
    nlohmann::json doc;
    doc["algorithm"] = t.algorithm;
    doc["solver"] = t.solver;
    doc["converged"] = t.converged;
    doc["iterations"] = t.records.size();
    doc["final_energy_hartree"] = t.final_energy;
    doc["final_bitstring"] = bitstring(s.b_min);
    doc["final_s2_diagonal"] = s.s2_diag;
    doc["total_wall_ms"] = t.total_wall_ms;
    nlohmann::json iters = nlohmann::json::array();
    for (const IterationRecord& r : t.records)
        iters.push_back({{"iteration", r.iteration},
                         {"energy_hartree", r.energy},
                         {"bitstring", r.bitstring},
                         {"solver_evals", r.solver_evals},
                         {"wall_ms", r.wall_ms},
                         {"s2_diagonal", r.s2_diag},
                         {"consistency_error", r.consistency_error}});
    doc["records"] = std::move(iters);
    return doc.dump(2);
}

}  // namespace detforge
