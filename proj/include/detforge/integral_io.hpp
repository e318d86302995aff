#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "detforge/models.hpp"
#include "detforge/tensor.hpp"

namespace detforge {

struct IntegralBundle {
    int m_spatial = 0;
    int n_alpha = 0;
    int n_beta = 0;
    double e_nuc = 0.0;
    Eigen::MatrixXd overlap;
    Eigen::MatrixXd hcore;
    EriTensor eri;
    std::optional<Eigen::MatrixXd> c_init;
    std::optional<Eigen::MatrixXd> gamma_init;
    std::map<std::string, std::string> metadata;
};

struct MoHamiltonianData {
    int m_spatial = 0;
    int n_alpha = 0;
    int n_beta = 0;
    Eigen::MatrixXd h_mo;
    std::optional<EriTensor> eri_mo;
    Eigen::MatrixXd w_ppqq;
    Eigen::MatrixXd w_pqqp;
    double e_core = 0.0;
};

enum class EriLayout { Dense, Packed8 };

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
    std::string error_kind;  // exception raised by the strict loaders on failure
};

// Schema-level parse only; numeric invariants are left to validate_bundle.
IntegralBundle parse_bundle(const std::string& text);
IntegralBundle load_bundle_unchecked(const std::filesystem::path& path);
std::vector<ValidationCheck> validate_bundle(const IntegralBundle& b);

// Parses and enforces every bundle invariant.
IntegralBundle load_bundle(const std::filesystem::path& path);
void save_bundle(const IntegralBundle& b, const std::filesystem::path& path,
                 EriLayout layout = EriLayout::Dense);

MoHamiltonianData parse_fcidump(const std::string& text);
MoHamiltonianData load_fcidump(const std::filesystem::path& path);
void save_fcidump(const MoHamiltonianData& mo, const std::filesystem::path& path);
std::vector<ValidationCheck> validate_mo(const MoHamiltonianData& mo);

// Fills W_ppqq and W_pqqp from eri_mo.
void fill_diagonal_slices(MoHamiltonianData& mo);

void save_model(const QusoModel& m, const std::filesystem::path& path);
void save_model(const QuboModel& m, const std::filesystem::path& path);
void save_model(const MaxCutInstance& m, const std::filesystem::path& path);

std::variant<QusoModel, QuboModel> load_model(const std::filesystem::path& path);
MaxCutInstance load_maxcut(const std::filesystem::path& path);

std::string model_to_json(const QusoModel& m);
std::string model_to_json(const QuboModel& m);
std::variant<QusoModel, QuboModel> model_from_json(const std::string& text);
std::string maxcut_to_text(const MaxCutInstance& m);
MaxCutInstance maxcut_from_text(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

constexpr std::size_t packed8_length(std::size_t n) {
    const std::size_t npair = n * (n + 1) / 2;
    return npair * (npair + 1) / 2;
}

std::vector<double> pack8(const EriTensor& eri);
EriTensor unpack8(const std::vector<double>& data, std::size_t n);

}  // namespace detforge
