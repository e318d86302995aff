#include "detforge/models.hpp"

#include <algorithm>
#include <cmath>

#include "detforge/errors.hpp"

namespace detforge {

namespace {

void check_length(std::size_t got, std::size_t want) {
    if (got != want)
        throw LengthMismatch("assignment has " + std::to_string(got) + " entries, model has " +
                             std::to_string(want));
}

}  // namespace

void QusoModel::add_quadratic(int i, int j, double c) {
    if (i == j) {
        offset += c;
        return;
    }
    if (i > j) std::swap(i, j);
    quadratic[{i, j}] += c;
}

QusoModel& QusoModel::add(const QusoModel& other, double scale) {
    if (other.n != n)
        throw SizeMismatch("cannot add a " + std::to_string(other.n) + "-spin model to a " +
                           std::to_string(n) + "-spin model");
    offset += scale * other.offset;
    for (std::size_t i = 0; i < n; ++i) linear[i] += scale * other.linear[i];
    for (const auto& [key, c] : other.quadratic) quadratic[key] += scale * c;
    return *this;
}

void QusoModel::prune_zeros() {
    std::erase_if(quadratic, [](const auto& kv) { return kv.second == 0.0; });
}

double QusoModel::value(const Spins& z) const {
    check_length(z.size(), n);
    double v = offset;
    for (std::size_t i = 0; i < n; ++i) v += linear[i] * z[i];
    for (const auto& [key, c] : quadratic) v += c * z[key.first] * z[key.second];
    return v;
}

double QusoModel::coefficient_one_norm() const {
    double s = 0.0;
    for (double c : linear) s += std::abs(c);
    for (const auto& kv : quadratic) s += std::abs(kv.second);
    return s;
}

double QusoModel::max_abs_coefficient() const {
    double m = 0.0;
    for (double c : linear) m = std::max(m, std::abs(c));
    for (const auto& kv : quadratic) m = std::max(m, std::abs(kv.second));
    return m;
}

void QuboModel::add_quadratic(int i, int j, double c) {
    if (i == j) {
        linear[i] += c;
        return;
    }
    if (i > j) std::swap(i, j);
    quadratic[{i, j}] += c;
}

void QuboModel::prune_zeros() {
    std::erase_if(quadratic, [](const auto& kv) { return kv.second == 0.0; });
}

double QuboModel::value(const Bits& x) const {
    check_length(x.size(), n);
    double v = offset;
    for (std::size_t i = 0; i < n; ++i)
        if (x[i]) v += linear[i];
    for (const auto& [key, c] : quadratic)
        if (x[key.first] && x[key.second]) v += c;
    return v;
}

void MaxCutInstance::add_edge(int i, int j, double w) {
    if (i == j) throw ShapeMismatch("self loop on vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
    weights[{i, j}] += w;
}

double MaxCutInstance::cut_value(const Spins& z) const {
    check_length(z.size(), n_vertices);
    double v = 0.0;
    for (const auto& [key, w] : weights)
        if (z[key.first] != z[key.second]) v += w;
    return v;
}

double MaxCutInstance::negative_weight_sum() const {
    double s = 0.0;
    for (const auto& kv : weights)
        if (kv.second < 0.0) s += kv.second;
    return s;
}

double MaxCutInstance::total_weight() const {
    double s = 0.0;
    for (const auto& kv : weights) s += kv.second;
    return s;
}

void PuboModel::add_term(std::vector<int> vars, double c) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    terms[vars] += c;
}

int PuboModel::degree() const {
    int d = 0;
    for (const auto& kv : terms) d = std::max<int>(d, kv.first.size());
    return d;
}

double PuboModel::value(const Bits& x) const {
    check_length(x.size(), n);
    double v = 0.0;
    for (const auto& [vars, c] : terms) {
        bool on = true;
        for (int i : vars) on = on && x[i];
        if (on) v += c;
    }
    return v;
}

Spins bits_to_spins(const Bits& b) {
    Spins z(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) z[i] = b[i] ? -1 : 1;
    return z;
}

Bits spins_to_bits(const Spins& z) {
    Bits b(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) b[i] = z[i] < 0 ? 1 : 0;
    return b;
}

}  // namespace detforge
