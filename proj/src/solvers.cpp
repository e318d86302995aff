#include "detforge/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <Eigen/Dense>
#include <limits>
#include <random>
#include <thread>

#include "detforge/errors.hpp"
#include "detforge/problem_mappings.hpp"

namespace detforge {

namespace {

constexpr int kBruteForceMaxSpins = 26;
constexpr double kSectorMaxStates = 1e8;

// Sparse symmetric coupling view of a QUSO model.
struct Ising {
    int n = 0;
    double offset = 0.0;
    std::vector<double> h;
    std::vector<int> start;  // CSR over neighbours
    std::vector<int> nbr;
    std::vector<double> coup;

    explicit Ising(const QusoModel& m) : n(static_cast<int>(m.n)), offset(m.offset), h(m.linear) {
        std::vector<int> deg(n, 0);
        for (const auto& [key, c] : m.quadratic) {
            if (c == 0.0) continue;
            ++deg[key.first];
            ++deg[key.second];
        }
        start.assign(n + 1, 0);
        for (int i = 0; i < n; ++i) start[i + 1] = start[i] + deg[i];
        nbr.resize(start[n]);
        coup.resize(start[n]);
        std::vector<int> fill(start.begin(), start.end() - 1);
        for (const auto& [key, c] : m.quadratic) {
            if (c == 0.0) continue;
            nbr[fill[key.first]] = key.second;
            coup[fill[key.first]++] = c;
            nbr[fill[key.second]] = key.first;
            coup[fill[key.second]++] = c;
        }
    }

    void fields(const std::vector<int>& z, std::vector<double>& f) const {
        f.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double s = h[i];
            for (int e = start[i]; e < start[i + 1]; ++e) s += coup[e] * z[nbr[e]];
            f[i] = s;
        }
    }

    double energy(const std::vector<int>& z) const {
        double e = offset;
        for (int i = 0; i < n; ++i) {
            double pair = 0.0;
            for (int p = start[i]; p < start[i + 1]; ++p)
                if (nbr[p] > i) pair += coup[p] * z[nbr[p]];
            e += z[i] * (h[i] + pair);
        }
        return e;
    }

    // Flip spin i, keeping the local fields current.
    void flip(std::vector<int>& z, std::vector<double>& f, int i) const {
        const int old = z[i];
        z[i] = -old;
        for (int e = start[i]; e < start[i + 1]; ++e) f[nbr[e]] -= 2.0 * coup[e] * old;
    }
};

double tie_tolerance(const QusoModel& m) {
    return 1e-12 * (1.0 + std::abs(m.offset) + m.coefficient_one_norm());
}

// Lexicographic order on the returned assignment. For spins -1 sorts first;
// for bits 0 sorts first, which is spin +1.
bool lex_less(const std::vector<int>& a, const std::vector<int>& b, bool bit_order) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        return bit_order ? a[i] > b[i] : a[i] < b[i];
    }
    return false;
}

struct Tracker {
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> z;
    double eps = 0.0;
    bool bit_order = false;

    void offer(double e, const std::vector<int>& cand) {
        if (e < best - eps) {
            best = e;
            z = cand;
        } else if (e <= best + eps && lex_less(cand, z, bit_order)) {
            best = std::min(best, e);
            z = cand;
        }
    }
};

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

// Advances a sorted k-subset of [0, n) to the next one; false at the end.
bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

void check_sector(std::size_t n, const Sector& s) {
    std::vector<int> seen(n, 0);
    for (const auto* set : {&s.alpha, &s.beta})
        for (int i : *set) {
            if (i < 0 || static_cast<std::size_t>(i) >= n)
                throw IndexOutOfRange("sector index " + std::to_string(i) + " outside the model");
            if (seen[i]++) throw ConfigError("sector index sets overlap at " + std::to_string(i));
        }
    if (s.n_alpha < 0 || s.n_alpha > static_cast<int>(s.alpha.size()) || s.n_beta < 0 ||
        s.n_beta > static_cast<int>(s.beta.size()))
        throw TargetOutOfRange("sector counts exceed their index sets");
}

SolverResult brute_unsectored(const QusoModel& m, bool bit_order) {
    const int n = static_cast<int>(m.n);
    if (n > kBruteForceMaxSpins)
        throw TooLarge("unsectored enumeration limited to " + std::to_string(kBruteForceMaxSpins) +
                       " spins, model has " + std::to_string(n));
    const Ising g(m);
    std::vector<int> z(n, 1);
    std::vector<double> f;
    g.fields(z, f);
    double e = g.energy(z);
    Tracker t;
    t.eps = tie_tolerance(m);
    t.bit_order = bit_order;
    t.offer(e, z);
    const std::uint64_t total = std::uint64_t(1) << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const int i = std::countr_zero(k);
        e += -2.0 * z[i] * f[i];
        g.flip(z, f, i);
        if ((k & 0xFFFF) == 0) e = g.energy(z);
        t.offer(e, z);
    }
    SolverResult r;
    r.best_assignment = t.z;
    r.best_value = m.value(t.z);
    r.evaluations = total;
    r.history = {r.best_value};
    return r;
}

SolverResult brute_sectored(const QusoModel& m, const Sector& sector, bool bit_order) {
    const int n = static_cast<int>(m.n);
    check_sector(m.n, sector);
    const double count = sector_state_count(m.n, sector);
    if (count > kSectorMaxStates)
        throw TooLarge("sector holds " + std::to_string(count) + " states, limit 1e8");

    std::vector<int> free_vars;
    {
        std::vector<int> used(n, 0);
        for (int i : sector.alpha) used[i] = 1;
        for (int i : sector.beta) used[i] = 1;
        for (int i = 0; i < n; ++i)
            if (!used[i]) free_vars.push_back(i);
    }
    if (free_vars.size() > 40) throw TooLarge("too many variables outside the sector sets");

    // The smaller combination set is enumerated innermost from a table.
    const std::vector<int>* inner_set = &sector.beta;
    int inner_k = sector.n_beta;
    const std::vector<int>* outer_set = &sector.alpha;
    int outer_k = sector.n_alpha;
    if (binomial(sector.alpha.size(), sector.n_alpha) < binomial(sector.beta.size(), sector.n_beta)) {
        std::swap(inner_set, outer_set);
        std::swap(inner_k, outer_k);
    }
    const int ni = static_cast<int>(inner_set->size());

    Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [key, c] : m.quadratic) {
        jm(key.first, key.second) += c;
        jm(key.second, key.first) += c;
    }

    // Inner table: spins and internal energy of each inner combination.
    std::vector<int> inner_z;
    std::vector<double> inner_e;
    {
        std::vector<int> c(inner_k);
        for (int i = 0; i < inner_k; ++i) c[i] = i;
        do {
            std::vector<int> zz(ni, 1);
            for (int i : c) zz[i] = -1;
            double e = 0.0;
            for (int a = 0; a < ni; ++a) {
                const int va = (*inner_set)[a];
                e += m.linear[va] * zz[a];
                for (int b = a + 1; b < ni; ++b) e += jm(va, (*inner_set)[b]) * zz[a] * zz[b];
            }
            inner_z.insert(inner_z.end(), zz.begin(), zz.end());
            inner_e.push_back(e);
        } while (inner_k > 0 && next_combination(c, ni));
    }
    const std::size_t n_inner = inner_e.size();

    std::vector<int> outer_vars = *outer_set;
    outer_vars.insert(outer_vars.end(), free_vars.begin(), free_vars.end());
    const int no = static_cast<int>(outer_set->size());
    const int nf = static_cast<int>(free_vars.size());

    Tracker t;
    t.eps = tie_tolerance(m);
    t.bit_order = bit_order;
    std::vector<int> z(n, 1);
    std::vector<double> field(ni);
    std::uint64_t evals = 0;

    std::vector<int> c(outer_k);
    for (int i = 0; i < outer_k; ++i) c[i] = i;
    do {
        for (int a = 0; a < no; ++a) z[(*outer_set)[a]] = 1;
        for (int i : c) z[(*outer_set)[i]] = -1;
        const std::uint64_t free_total = std::uint64_t(1) << nf;
        for (std::uint64_t mask = 0; mask < free_total; ++mask) {
            for (int a = 0; a < nf; ++a) z[free_vars[a]] = (mask >> a) & 1 ? -1 : 1;
            double e_out = m.offset;
            for (std::size_t a = 0; a < outer_vars.size(); ++a) {
                const int va = outer_vars[a];
                e_out += m.linear[va] * z[va];
                for (std::size_t b = a + 1; b < outer_vars.size(); ++b)
                    e_out += jm(va, outer_vars[b]) * z[va] * z[outer_vars[b]];
            }
            for (int j = 0; j < ni; ++j) {
                const int vj = (*inner_set)[j];
                double s = 0.0;
                for (int va : outer_vars) s += jm(vj, va) * z[va];
                field[j] = s;
            }
            for (std::size_t ci = 0; ci < n_inner; ++ci) {
                const int* zz = &inner_z[ci * ni];
                double e = e_out + inner_e[ci];
                for (int j = 0; j < ni; ++j) e += field[j] * zz[j];
                ++evals;
                if (e <= t.best + t.eps) {
                    for (int j = 0; j < ni; ++j) z[(*inner_set)[j]] = zz[j];
                    t.offer(e, z);
                }
            }
        }
    } while (outer_k > 0 && next_combination(c, no));

    SolverResult r;
    r.best_assignment = t.z;
    r.best_value = m.value(t.z);
    r.evaluations = evals;
    r.history = {r.best_value};
    return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<int> random_spins(int n, std::mt19937_64& rng) {
    std::vector<int> z(n);
    for (int i = 0; i < n; ++i) z[i] = (rng() >> 63) ? -1 : 1;
    return z;
}

template <class F>
void parallel_for(int count, int threads, F&& body) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) body(i);
        });
    for (auto& th : pool) th.join();
}

struct RestartOutcome {
    bool ran = false;
    std::vector<int> z;
    double value = 0.0;
    std::uint64_t evals = 0;
};

// Runs independent restarts and reduces them by an index-ordered argmin.
template <class Run>
SolverResult run_restarts(const QusoModel& m, const SolverBudget& budget, Run&& run) {
    if (budget.restarts < 1) throw ConfigError("restarts must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<RestartOutcome> out(budget.restarts);
    parallel_for(budget.restarts, budget.threads, [&](int r) {
        if (budget.time_limit && r > 0) {
            const double el =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (el > *budget.time_limit) return;
        }
        std::mt19937_64 rng(split_seed(budget.seed, r));
        std::vector<int> z;
        if (r == 0 && budget.initial) {
            if (budget.initial->size() != m.n) throw LengthMismatch("initial assignment size mismatch");
            z = *budget.initial;
            for (int& v : z) v = v < 0 ? -1 : 1;
        } else {
            z = random_spins(static_cast<int>(m.n), rng);
        }
        RestartOutcome o;
        o.ran = true;
        o.z = run(z, rng, o.evals);
        o.value = m.value(o.z);
        out[r] = std::move(o);
    });
    SolverResult res;
    int best = -1;
    for (int r = 0; r < budget.restarts; ++r) {
        if (!out[r].ran) continue;
        res.evaluations += out[r].evals;
        res.history.push_back(out[r].value);
        if (best < 0 || out[r].value < out[best].value) best = r;
    }
    res.best_assignment = out[best].z;
    res.best_value = out[best].value;
    return res;
}

SolverResult as_qubo_result(const QuboModel& q, SolverResult r) {
    r.best_assignment = spins_to_bits(r.best_assignment);
    r.best_value = q.value(r.best_assignment);
    return r;
}

SolverBudget to_spin_budget(const SolverBudget& b) {
    SolverBudget s = b;
    if (b.initial) s.initial = bits_to_spins(*b.initial);
    return s;
}

}  // namespace

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

Method parse_method(const std::string& name) {
    if (name == "brute") return Method::Brute;
    if (name == "anneal") return Method::Anneal;
    if (name == "tabu") return Method::Tabu;
    if (name == "gw") return Method::Gw;
    throw ConfigError("unknown solver method '" + name + "' (expected brute, anneal, tabu or gw)");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Brute: return "brute";
        case Method::Anneal: return "anneal";
        case Method::Tabu: return "tabu";
        case Method::Gw: return "gw";
    }
    return "unknown";
}

double sector_state_count(std::size_t n, const Sector& s) {
    const double free_vars = static_cast<double>(n) - s.alpha.size() - s.beta.size();
    return binomial(s.alpha.size(), s.n_alpha) * binomial(s.beta.size(), s.n_beta) *
           std::pow(2.0, free_vars);
}

SolverResult brute_force(const QusoModel& m, const std::optional<Sector>& sector) {
    return sector ? brute_sectored(m, *sector, false) : brute_unsectored(m, false);
}

SolverResult brute_force(const QuboModel& q, const std::optional<Sector>& sector) {
    const QusoModel m = qubo_to_quso(q);
    SolverResult r = sector ? brute_sectored(m, *sector, true) : brute_unsectored(m, true);
    r = as_qubo_result(q, std::move(r));
    r.history = {r.best_value};
    return r;
}

SolverResult simulated_annealing(const QusoModel& m, const SolverBudget& budget) {
    if (budget.sweeps < 1) throw ConfigError("sweeps must be positive");
    const Ising g(m);
    double t_hi = budget.t_initial.value_or(m.max_abs_coefficient());
    if (!(t_hi > 0.0)) t_hi = 1.0;
    const double t_lo = budget.t_final.value_or(1e-3 * t_hi);
    if (!(t_lo > 0.0) || t_lo > t_hi) throw ConfigError("annealing needs 0 < T_final <= T_initial");
    const int sweeps = budget.sweeps;
    std::vector<double> beta(sweeps);
    for (int s = 0; s < sweeps; ++s) {
        const double frac = sweeps == 1 ? 1.0 : double(s) / (sweeps - 1);
        beta[s] = 1.0 / (t_hi * std::pow(t_lo / t_hi, frac));
    }
    const int n = g.n;
    return run_restarts(m, budget, [&](std::vector<int> z, std::mt19937_64& rng, std::uint64_t& evals) {
        std::vector<double> f;
        g.fields(z, f);
        double e = g.energy(z);
        double best = e;
        std::vector<int> best_z = z;
        for (int s = 0; s < sweeps; ++s) {
            for (int i = 0; i < n; ++i) {
                const double de = -2.0 * z[i] * f[i];
                ++evals;
                if (de <= 0.0 || uniform01(rng) < std::exp(-de * beta[s])) {
                    g.flip(z, f, i);
                    e += de;
                    if (e < best) {
                        best = e;
                        best_z = z;
                    }
                }
            }
            e = g.energy(z);
        }
        return best_z;
    });
}

SolverResult simulated_annealing(const QuboModel& q, const SolverBudget& budget) {
    return as_qubo_result(q, simulated_annealing(qubo_to_quso(q), to_spin_budget(budget)));
}

SolverResult tabu_search(const QusoModel& m, const SolverBudget& budget) {
    const Ising g(m);
    const int n = g.n;
    const int iters = budget.tabu_iterations > 0 ? budget.tabu_iterations : std::max(100, 20 * n);
    const int tenure = budget.tabu_tenure > 0 ? budget.tabu_tenure : std::clamp(n / 4, 1, 20);
    const double eps = tie_tolerance(m);
    return run_restarts(m, budget, [&](std::vector<int> z, std::mt19937_64& rng, std::uint64_t& evals) {
        std::vector<double> f;
        g.fields(z, f);
        double e = g.energy(z);
        double best = e;
        std::vector<int> best_z = z;
        std::vector<long> tabu_until(n, -1);
        std::vector<int> ties;
        for (long it = 0; it < iters && n > 0; ++it) {
            double pick_de = std::numeric_limits<double>::infinity();
            ties.clear();
            for (int i = 0; i < n; ++i) {
                const double de = -2.0 * z[i] * f[i];
                ++evals;
                const bool allowed = tabu_until[i] < it || e + de < best - eps;
                if (!allowed) continue;
                if (de < pick_de - eps) {
                    pick_de = de;
                    ties.assign(1, i);
                } else if (de <= pick_de + eps) {
                    ties.push_back(i);
                }
            }
            if (ties.empty()) continue;
            const int i = ties.size() == 1 ? ties[0] : ties[rng() % ties.size()];
            g.flip(z, f, i);
            e += pick_de;
            tabu_until[i] = it + tenure;
            if (e < best - eps) {
                e = g.energy(z);
                if (e < best) {
                    best = e;
                    best_z = z;
                }
            }
        }
        return best_z;
    });
}

SolverResult tabu_search(const QuboModel& q, const SolverBudget& budget) {
    return as_qubo_result(q, tabu_search(qubo_to_quso(q), to_spin_budget(budget)));
}

SolverResult gw_maxcut(const MaxCutInstance& graph, const SolverBudget& budget) {
    const int n = static_cast<int>(graph.n_vertices);
    SolverResult res;
    if (n == 0) {
        res.sdp_bound = 0.0;
        res.ratio_certificate = 0.0;
        return res;
    }
    const int k = budget.sdp_rank > 0 ? budget.sdp_rank
                                      : static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    double w_abs = 0.0, w_total = 0.0;
    for (const auto& [key, c] : graph.weights) {
        w(key.first, key.second) = c;
        w(key.second, key.first) = c;
        w_abs += std::abs(c);
        w_total += c;
    }

    // Unit-norm columns v_i; minimise f = ½ tr(Vᵀ V W) = Σ_{i<j} w_ij v_i·v_j.
    std::mt19937_64 rng(split_seed(budget.seed, 0x5d9a7e11ULL));
    Eigen::MatrixXd v(k, n);
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < k; ++r) v(r, i) = standard_normal(rng);
        v.col(i).normalize();
    }
    auto objective = [&](const Eigen::MatrixXd& x) { return 0.5 * (x * w).cwiseProduct(x).sum(); };
    auto retract = [](Eigen::MatrixXd& x) {
        for (Eigen::Index i = 0; i < x.cols(); ++i) {
            const double nr = x.col(i).norm();
            if (nr > 0.0) x.col(i) /= nr;
        }
    };
    double fval = objective(v);
    const double step0 = 1.0 / (1.0 + w.cwiseAbs().rowwise().sum().maxCoeff());
    double step = step0;
    const double tol = budget.sdp_tol * std::max(1.0, w_abs);
    bool converged = false;
    int it = 0;
    auto riemannian_grad = [&](const Eigen::MatrixXd& x) {
        Eigen::MatrixXd gr = x * w;
        const Eigen::RowVectorXd radial = gr.cwiseProduct(x).colwise().sum();
        gr -= x * radial.asDiagonal();
        return gr;
    };
    Eigen::MatrixXd grad = riemannian_grad(v);
    Eigen::MatrixXd v_prev, g_prev;
    for (; it < budget.sdp_max_iter; ++it) {
        const double gnorm = grad.norm();
        if (gnorm < tol) {
            converged = true;
            break;
        }
        // Barzilai-Borwein trial step, safeguarded by Armijo backtracking.
        if (it > 0) {
            const Eigen::MatrixXd sv = v - v_prev;
            const Eigen::MatrixXd yv = grad - g_prev;
            const double sy = sv.cwiseProduct(yv).sum();
            step = sy > 0.0 ? sv.squaredNorm() / sy : step0;
            step = std::clamp(step, 1e-3 * step0, 1e6 * step0);
        }
        const double g2 = gnorm * gnorm;
        Eigen::MatrixXd trial;
        double ft = 0.0;
        for (int ls = 0; ls < 60; ++ls) {
            trial = v - step * grad;
            retract(trial);
            ft = objective(trial);
            if (ft <= fval - 1e-4 * step * g2) break;
            step *= 0.5;
        }
        if (!(ft < fval)) break;
        v_prev = std::move(v);
        g_prev = std::move(grad);
        v = std::move(trial);
        fval = ft;
        grad = riemannian_grad(v);
    }
    res.evaluations = static_cast<std::uint64_t>(it);
    res.sdp_converged = converged;
    res.sdp_bound = 0.5 * w_total - 0.5 * fval;

    // Hyperplane rounding; zero projections round to +1.
    double best_cut = -std::numeric_limits<double>::infinity();
    Spins best_z;
    Spins z(n);
    Eigen::VectorXd r(k);
    for (int h = 0; h < std::max(1, budget.hyperplanes); ++h) {
        std::mt19937_64 hr(split_seed(budget.seed, 0x100000000ULL + h));
        for (int a = 0; a < k; ++a) r[a] = standard_normal(hr);
        const Eigen::VectorXd proj = v.transpose() * r;
        for (int i = 0; i < n; ++i) z[i] = proj[i] < 0.0 ? -1 : 1;
        const double cut = graph.cut_value(z);
        ++res.evaluations;
        if (cut > best_cut) {
            best_cut = cut;
            best_z = z;
        }
    }
    if (graph.ancilla && best_z[*graph.ancilla] < 0)
        for (int& s : best_z) s = -s;
    res.best_assignment = best_z;
    res.best_value = graph.cut_value(best_z);
    res.ratio_certificate = 0.878 * res.best_value + 0.122 * graph.negative_weight_sum();
    return res;
}

SolverResult brute_force_maxcut(const MaxCutInstance& g) {
    const int n = static_cast<int>(g.n_vertices);
    if (n == 0) return SolverResult{};
    // Vertex 0 fixed to +1; minimise -cut over the rest.
    QusoModel q(n - 1);
    for (const auto& [key, w] : g.weights) {
        q.offset -= 0.5 * w;
        if (key.first == 0)
            q.linear[key.second - 1] += 0.5 * w;
        else
            q.add_quadratic(key.first - 1, key.second - 1, 0.5 * w);
    }
    SolverResult r = brute_force(q);
    Spins z(n, 1);
    for (int i = 1; i < n; ++i) z[i] = r.best_assignment[i - 1];
    r.best_assignment = z;
    r.best_value = g.cut_value(z);
    r.history = {r.best_value};
    return r;
}

SolverResult solve(const QusoModel& m, Method method, const SolverBudget& budget,
                   const std::optional<Sector>& sector) {
    switch (method) {
        case Method::Brute: return brute_force(m, sector);
        case Method::Anneal: return simulated_annealing(m, budget);
        case Method::Tabu: return tabu_search(m, budget);
        case Method::Gw: {
            const MaxCutInstance g = quso_to_maxcut(m);
            SolverResult r = gw_maxcut(g, budget);
            r.best_assignment = maxcut_to_quso_spins(r.best_assignment, g);
            r.best_value = m.value(r.best_assignment);
            return r;
        }
    }
    throw ConfigError("unknown solver method");
}

}  // namespace detforge
