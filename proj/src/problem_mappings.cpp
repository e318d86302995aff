#include "detforge/problem_mappings.hpp"

#include <cmath>
#include <sstream>

#include "detforge/errors.hpp"
#include "detforge/format.hpp"
#include "detforge/integral_io.hpp"

namespace detforge {

QuboModel quso_to_qubo(const QusoModel& m) {
    QuboModel q(m.n);
    std::vector<double> coupling_sum(m.n, 0.0);
    for (const auto& [key, c] : m.quadratic) {
        coupling_sum[key.first] += c;
        coupling_sum[key.second] += c;
    }
    double lin_total = 0.0, quad_total = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) lin_total += m.linear[i];
    for (const auto& kv : m.quadratic) quad_total += kv.second;
    q.offset = m.offset + lin_total + quad_total;
    for (std::size_t i = 0; i < m.n; ++i) q.linear[i] = -2.0 * (m.linear[i] + coupling_sum[i]);
    for (const auto& [key, c] : m.quadratic) q.quadratic[key] = 4.0 * c;
    return q;
}

QusoModel qubo_to_quso(const QuboModel& m) {
    QusoModel q(m.n);
    std::vector<double> coupling_sum(m.n, 0.0);
    for (const auto& [key, c] : m.quadratic) {
        coupling_sum[key.first] += 0.25 * c;
        coupling_sum[key.second] += 0.25 * c;
    }
    double lin_total = 0.0, quad_total = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) lin_total += m.linear[i];
    for (const auto& kv : m.quadratic) quad_total += kv.second;
    q.offset = m.offset + 0.5 * lin_total + 0.25 * quad_total;
    for (std::size_t i = 0; i < m.n; ++i) q.linear[i] = -0.5 * m.linear[i] - coupling_sum[i];
    for (const auto& [key, c] : m.quadratic) q.quadratic[key] = 0.25 * c;
    return q;
}

MaxCutInstance quso_to_maxcut(const QusoModel& m) {
    MaxCutInstance g;
    g.n_vertices = m.n + 1;
    g.ancilla = 0;
    double k = m.offset;
    for (std::size_t i = 0; i < m.n; ++i) {
        k += m.linear[i];
        if (m.linear[i] != 0.0) g.weights[{0, static_cast<int>(i) + 1}] = 2.0 * m.linear[i];
    }
    for (const auto& [key, c] : m.quadratic) {
        k += c;
        if (c != 0.0) g.weights[{key.first + 1, key.second + 1}] = 2.0 * c;
    }
    g.value_offset = k;
    return g;
}

Spins maxcut_to_quso_spins(const Spins& cut_assignment, const MaxCutInstance& g) {
    if (cut_assignment.size() != g.n_vertices) throw LengthMismatch("cut assignment size mismatch");
    if (!g.ancilla) return cut_assignment;
    const int w = *g.ancilla;
    const int flip = cut_assignment[w] < 0 ? -1 : 1;
    Spins z;
    z.reserve(g.n_vertices - 1);
    for (std::size_t i = 0; i < g.n_vertices; ++i)
        if (static_cast<int>(i) != w) z.push_back(flip * cut_assignment[i]);
    return z;
}

FockState recover_state(const Spins& cut_assignment) {
    if (cut_assignment.empty()) throw LengthMismatch("assignment must include the ancilla");
    const int flip = cut_assignment[0] < 0 ? -1 : 1;
    FockState b(cut_assignment.size() - 1);
    for (std::size_t i = 1; i < cut_assignment.size(); ++i) b[i - 1] = flip * cut_assignment[i] < 0 ? 1 : 0;
    return b;
}

QuadratizedModel rosenberg_quadratize(const PuboModel& p) {
    std::map<std::vector<int>, double> terms = p.terms;
    int next = static_cast<int>(p.n);
    int aux = 0;
    for (;;) {
        // Pick the pair shared by the most terms of degree ≥ 3 (ties: smallest pair).
        std::map<std::pair<int, int>, int> freq;
        for (const auto& [vars, c] : terms) {
            if (vars.size() < 3 || c == 0.0) continue;
            for (std::size_t a = 0; a < vars.size(); ++a)
                for (std::size_t b = a + 1; b < vars.size(); ++b) ++freq[{vars[a], vars[b]}];
        }
        if (freq.empty()) break;
        std::pair<int, int> best = freq.begin()->first;
        int best_count = freq.begin()->second;
        for (const auto& [key, cnt] : freq)
            if (cnt > best_count) {
                best = key;
                best_count = cnt;
            }
        const int i = best.first, j = best.second, y = next++;
        ++aux;

        std::map<std::vector<int>, double> updated;
        double weight = 1.0;
        for (const auto& [vars, c] : terms) {
            const bool has_i = std::binary_search(vars.begin(), vars.end(), i);
            const bool has_j = std::binary_search(vars.begin(), vars.end(), j);
            if (vars.size() >= 3 && has_i && has_j && c != 0.0) {
                std::vector<int> nv;
                for (int v : vars)
                    if (v != i && v != j) nv.push_back(v);
                nv.push_back(y);
                std::sort(nv.begin(), nv.end());
                updated[nv] += c;
                weight += std::abs(c);
            } else {
                updated[vars] += c;
            }
        }
        // weight · (x_i x_j - 2 x_i y - 2 x_j y + 3 y): zero iff y = x_i x_j, else ≥ weight.
        updated[{i, j}] += weight;
        updated[{i, y}] += -2.0 * weight;
        updated[{j, y}] += -2.0 * weight;
        updated[{y}] += 3.0 * weight;
        terms = std::move(updated);
    }

    QuadratizedModel out;
    out.aux_count = aux;
    out.qubo = QuboModel(next);
    for (const auto& [vars, c] : terms) {
        if (vars.size() > 2 && c == 0.0) continue;
        if (vars.empty())
            out.qubo.offset += c;
        else if (vars.size() == 1)
            out.qubo.linear[vars[0]] += c;
        else
            out.qubo.add_quadratic(vars[0], vars[1], c);
    }
    return out;
}

std::string xorsat_to_text(const MaxCutInstance& m) {
    std::ostringstream os;
    os << "# xorsat n=" << m.n_vertices << " clauses=" << m.weights.size()
       << " value_offset=" << format_double(m.value_offset) << '\n';
    for (const auto& [key, w] : m.weights)
        os << key.first << ' ' << key.second << ' ' << (w > 0.0 ? 1 : 0) << ' '
           << format_double(std::abs(w)) << '\n';
    return os.str();
}

void export_xorsat(const MaxCutInstance& m, const std::filesystem::path& path) {
    write_text_file(path, xorsat_to_text(m));
}

}  // namespace detforge
