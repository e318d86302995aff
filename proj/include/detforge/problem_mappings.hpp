#pragma once

#include <filesystem>
#include <string>

#include "detforge/models.hpp"

namespace detforge {

// z = 1 - 2x
QuboModel quso_to_qubo(const QusoModel& m);
// x = (1 - z)/2
QusoModel qubo_to_quso(const QuboModel& m);

// Vertex 0 is the ancilla ω and spin i becomes vertex i + 1. For z_ω = +1,
// cut_value(z) = value_offset - QUSO(z).
MaxCutInstance quso_to_maxcut(const QusoModel& m);

// Inverse of the vertex layout above; applies the global flip when z_ω = -1.
Spins maxcut_to_quso_spins(const Spins& cut_assignment, const MaxCutInstance& g);
FockState recover_state(const Spins& cut_assignment);

struct QuadratizedModel {
    QuboModel qubo;
    int aux_count = 0;
};

QuadratizedModel rosenberg_quadratize(const PuboModel& p);

std::string xorsat_to_text(const MaxCutInstance& m);
void export_xorsat(const MaxCutInstance& m, const std::filesystem::path& path);

}  // namespace detforge
