#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace detforge {

// ±1 spin assignments and {0,1} bit assignments.
using Spins = std::vector<int>;
using Bits = std::vector<int>;
using FockState = Bits;

using PairMap = std::map<std::pair<int, int>, double>;

struct QusoModel {
    std::size_t n = 0;
    double offset = 0.0;
    std::vector<double> linear;
    PairMap quadratic;  // keys i < j

    QusoModel() = default;
    explicit QusoModel(std::size_t n_) : n(n_), linear(n_, 0.0) {}

    // z_i z_i = 1, so a diagonal key is folded into the offset.
    void add_quadratic(int i, int j, double c);
    QusoModel& add(const QusoModel& other, double scale = 1.0);
    void prune_zeros();

    double value(const Spins& z) const;
    double coefficient_one_norm() const;
    double max_abs_coefficient() const;

    bool operator==(const QusoModel& o) const = default;
};

struct QuboModel {
    std::size_t n = 0;
    double offset = 0.0;
    std::vector<double> linear;
    PairMap quadratic;  // keys i < j

    QuboModel() = default;
    explicit QuboModel(std::size_t n_) : n(n_), linear(n_, 0.0) {}

    // x_i x_i = x_i, so a diagonal key is folded into linear.
    void add_quadratic(int i, int j, double c);
    void prune_zeros();

    double value(const Bits& x) const;

    bool operator==(const QuboModel& o) const = default;
};

struct MaxCutInstance {
    std::size_t n_vertices = 0;
    std::optional<int> ancilla;
    PairMap weights;  // keys i < j, no self loops
    double value_offset = 0.0;

    void add_edge(int i, int j, double w);

    double cut_value(const Spins& z) const;
    double negative_weight_sum() const;
    double total_weight() const;

    bool operator==(const MaxCutInstance& o) const = default;
};

struct PuboModel {
    std::size_t n = 0;
    std::map<std::vector<int>, double> terms;  // sorted distinct indices

    void add_term(std::vector<int> vars, double c);
    int degree() const;
    double value(const Bits& x) const;
};

Spins bits_to_spins(const Bits& b);
Bits spins_to_bits(const Spins& z);

}  // namespace detforge
