#include "detforge/integral_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "detforge/errors.hpp"
#include "detforge/format.hpp"

namespace detforge {

using nlohmann::json;

namespace {

constexpr double kMatrixSymTol = 1e-12;
constexpr double kEriSymTol = 1e-10;
constexpr double kOverlapMinEig = 1e-10;
constexpr double kOrthoTol = 1e-8;

Eigen::MatrixXd matrix_from_json(const json& j, int m, const char* name) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(m) * m)
        throw MalformedFile(std::string(name) + " must be a flat array of " +
                            std::to_string(m * m) + " numbers");
    Eigen::MatrixXd out(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            const json& v = j[r * m + c];
            if (!v.is_number()) throw MalformedFile(std::string(name) + " has a non-numeric entry");
            out(r, c) = v.get<double>();
        }
    return out;
}

json matrix_to_json(const Eigen::MatrixXd& a) {
    json out = json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) out.push_back(a(r, c));
    return out;
}

int int_field(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer())
        throw MalformedFile(std::string("missing integer field '") + key + "'");
    return doc[key].get<int>();
}

double max_asymmetry(const Eigen::MatrixXd& a, int& wi, int& wj) {
    double worst = 0.0;
    wi = wj = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j) {
            const double d = std::abs(a(i, j) - a(j, i));
            if (d > worst) {
                worst = d;
                wi = static_cast<int>(i);
                wj = static_cast<int>(j);
            }
        }
    return worst;
}

ValidationCheck symmetric_check(const std::string& name, const Eigen::MatrixXd& a, double tol) {
    int i = 0, j = 0;
    const double err = max_asymmetry(a, i, j);
    ValidationCheck c{name, err <= tol, "", "SymmetryViolation"};
    c.detail = "max |A - A^T| = " + format_double(err);
    if (err > 0.0) c.detail += " at [" + std::to_string(i) + "][" + std::to_string(j) + "]";
    return c;
}

[[noreturn]] void raise(const ValidationCheck& c) {
    const std::string msg = c.name + ": " + c.detail;
    if (c.error_kind == "SymmetryViolation") throw SymmetryViolation(msg);
    if (c.error_kind == "NonPositiveOverlap") throw NonPositiveOverlap(msg);
    if (c.error_kind == "NotOrthonormal") throw NotOrthonormal(msg);
    throw MalformedFile(msg);
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::toupper(ch); });
    return s;
}

std::optional<long> namelist_int(const std::string& header, const std::string& key) {
    std::size_t pos = 0;
    while ((pos = header.find(key, pos)) != std::string::npos) {
        const bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(header[pos - 1]));
        std::size_t q = pos + key.size();
        while (q < header.size() && std::isspace(static_cast<unsigned char>(header[q]))) ++q;
        if (left_ok && q < header.size() && header[q] == '=') {
            ++q;
            while (q < header.size() && std::isspace(static_cast<unsigned char>(header[q]))) ++q;
            std::size_t end = q;
            if (end < header.size() && (header[end] == '-' || header[end] == '+')) ++end;
            while (end < header.size() && std::isdigit(static_cast<unsigned char>(header[end]))) ++end;
            if (end == q) throw MalformedFile("FCIDUMP header key " + key + " has no integer value");
            return std::stol(header.substr(q, end - q));
        }
        pos += key.size();
    }
    return std::nullopt;
}

double parse_fortran_double(std::string tok) {
    for (char& ch : tok)
        if (ch == 'D' || ch == 'd') ch = 'E';
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw MalformedFile("bad numeric token '" + tok + "'");
    }
    if (used != tok.size()) throw MalformedFile("bad numeric token '" + tok + "'");
    return v;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoFailure("write failed for " + path.string());
}

std::vector<double> pack8(const EriTensor& eri) {
    const std::size_t n = eri.dim();
    std::vector<double> out;
    out.reserve(packed8_length(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const std::size_t ij = i * (i + 1) / 2 + j;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l <= k; ++l) {
                    if (k * (k + 1) / 2 + l > ij) continue;
                    out.push_back(eri(i, j, k, l));
                }
        }
    return out;
}

EriTensor unpack8(const std::vector<double>& data, std::size_t n) {
    if (data.size() != packed8_length(n))
        throw MalformedFile("packed8 ERI needs " + std::to_string(packed8_length(n)) +
                            " values, got " + std::to_string(data.size()));
    EriTensor eri(n);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const std::size_t ij = i * (i + 1) / 2 + j;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l <= k; ++l) {
                    if (k * (k + 1) / 2 + l > ij) continue;
                    eri.set_symmetric(i, j, k, l, data[pos++]);
                }
        }
    return eri;
}

IntegralBundle parse_bundle(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw MalformedFile(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw MalformedFile("top level must be an object");
    if (!doc.contains("format") || doc["format"] != "scfb-1")
        throw MalformedFile("format tag must be \"scfb-1\"");

    IntegralBundle b;
    b.m_spatial = int_field(doc, "m_spatial");
    if (b.m_spatial < 1) throw MalformedFile("m_spatial must be positive");
    b.n_alpha = int_field(doc, "n_alpha");
    b.n_beta = int_field(doc, "n_beta");
    if (!doc.contains("e_nuc") || !doc["e_nuc"].is_number())
        throw MalformedFile("missing numeric field 'e_nuc'");
    b.e_nuc = doc["e_nuc"].get<double>();

    const int m = b.m_spatial;
    if (!doc.contains("overlap")) throw MalformedFile("missing field 'overlap'");
    if (!doc.contains("hcore")) throw MalformedFile("missing field 'hcore'");
    b.overlap = matrix_from_json(doc["overlap"], m, "overlap");
    b.hcore = matrix_from_json(doc["hcore"], m, "hcore");

    if (!doc.contains("eri") || !doc["eri"].is_object()) throw MalformedFile("missing object 'eri'");
    const json& e = doc["eri"];
    if (!e.contains("layout") || !e["layout"].is_string() || !e.contains("data") ||
        !e["data"].is_array())
        throw MalformedFile("eri needs string 'layout' and array 'data'");
    std::vector<double> data;
    data.reserve(e["data"].size());
    for (const json& v : e["data"]) {
        if (!v.is_number()) throw MalformedFile("eri data has a non-numeric entry");
        data.push_back(v.get<double>());
    }
    const std::string layout = e["layout"].get<std::string>();
    const std::size_t mm = m;
    if (layout == "dense") {
        if (data.size() != mm * mm * mm * mm)
            throw MalformedFile("dense ERI needs " + std::to_string(mm * mm * mm * mm) +
                                " values, got " + std::to_string(data.size()));
        b.eri = EriTensor(mm);
        b.eri.data() = std::move(data);
    } else if (layout == "packed8") {
        b.eri = unpack8(data, mm);
    } else {
        throw MalformedFile("unknown eri layout '" + layout + "'");
    }

    if (doc.contains("c_init") && !doc["c_init"].is_null())
        b.c_init = matrix_from_json(doc["c_init"], m, "c_init");
    if (doc.contains("gamma_init") && !doc["gamma_init"].is_null())
        b.gamma_init = matrix_from_json(doc["gamma_init"], m, "gamma_init");
    if (doc.contains("metadata")) {
        if (!doc["metadata"].is_object()) throw MalformedFile("metadata must be an object");
        for (const auto& [k, v] : doc["metadata"].items())
            b.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    return b;
}

IntegralBundle load_bundle_unchecked(const std::filesystem::path& path) {
    return parse_bundle(read_text_file(path));
}

std::vector<ValidationCheck> validate_bundle(const IntegralBundle& b) {
    std::vector<ValidationCheck> out;
    const int m = b.m_spatial;

    {
        const bool ok = b.n_alpha >= 0 && b.n_beta >= 0 && b.n_alpha <= m && b.n_beta <= m;
        out.push_back({"electron_counts", ok,
                       "n_alpha=" + std::to_string(b.n_alpha) + " n_beta=" + std::to_string(b.n_beta) +
                           " m_spatial=" + std::to_string(m),
                       "MalformedFile"});
    }
    out.push_back(symmetric_check("overlap_symmetric", b.overlap, kMatrixSymTol));
    {
        Eigen::MatrixXd s = 0.5 * (b.overlap + b.overlap.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        out.push_back({"overlap_positive_definite", lo > kOverlapMinEig,
                       "smallest eigenvalue " + format_double(lo), "NonPositiveOverlap"});
    }
    out.push_back(symmetric_check("hcore_symmetric", b.hcore, kMatrixSymTol));
    {
        std::size_t idx[4];
        const double err = b.eri.max_symmetry_error(idx);
        std::ostringstream os;
        os << "max deviation " << format_double(err);
        if (err > 0.0) os << " at indices " << idx[0] << ',' << idx[1] << ',' << idx[2] << ',' << idx[3];
        out.push_back({"eri_8fold_symmetry", err <= kEriSymTol, os.str(), "SymmetryViolation"});
    }
    if (b.c_init) {
        const Eigen::MatrixXd& c = *b.c_init;
        const double dev = (c.transpose() * b.overlap * c - Eigen::MatrixXd::Identity(m, m))
                               .cwiseAbs()
                               .maxCoeff();
        out.push_back({"c_init_orthonormal", dev <= kOrthoTol,
                       "max |C^T S C - I| = " + format_double(dev), "NotOrthonormal"});
    }
    if (b.gamma_init) out.push_back(symmetric_check("gamma_init_symmetric", *b.gamma_init, kEriSymTol));
    return out;
}

IntegralBundle load_bundle(const std::filesystem::path& path) {
    IntegralBundle b = load_bundle_unchecked(path);
    for (const ValidationCheck& c : validate_bundle(b))
        if (!c.passed) raise(c);
    return b;
}

void save_bundle(const IntegralBundle& b, const std::filesystem::path& path, EriLayout layout) {
    json doc;
    doc["format"] = "scfb-1";
    doc["m_spatial"] = b.m_spatial;
    doc["n_alpha"] = b.n_alpha;
    doc["n_beta"] = b.n_beta;
    doc["e_nuc"] = b.e_nuc;
    doc["overlap"] = matrix_to_json(b.overlap);
    doc["hcore"] = matrix_to_json(b.hcore);
    json eri;
    if (layout == EriLayout::Dense) {
        eri["layout"] = "dense";
        eri["data"] = b.eri.data();
    } else {
        eri["layout"] = "packed8";
        eri["data"] = pack8(b.eri);
    }
    doc["eri"] = std::move(eri);
    if (b.c_init) doc["c_init"] = matrix_to_json(*b.c_init);
    if (b.gamma_init) doc["gamma_init"] = matrix_to_json(*b.gamma_init);
    doc["metadata"] = b.metadata;
    write_text_file(path, doc.dump());
}

void fill_diagonal_slices(MoHamiltonianData& mo) {
    const int m = mo.m_spatial;
    mo.w_ppqq = Eigen::MatrixXd::Zero(m, m);
    mo.w_pqqp = Eigen::MatrixXd::Zero(m, m);
    if (!mo.eri_mo) return;
    const EriTensor& g = *mo.eri_mo;
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            mo.w_ppqq(p, q) = g(p, p, q, q);
            mo.w_pqqp(p, q) = g(p, q, q, p);
        }
}

MoHamiltonianData parse_fcidump(const std::string& text) {
    const std::string up = upper(text);
    const std::size_t start = up.find("&FCI");
    if (start == std::string::npos) throw MalformedFile("FCIDUMP header '&FCI' not found");
    std::size_t end = up.find("&END", start);
    std::size_t body = std::string::npos;
    if (end != std::string::npos) {
        body = end + 4;
    } else {
        end = up.find('/', start);
        if (end == std::string::npos) throw MalformedFile("FCIDUMP header is not terminated");
        body = end + 1;
    }
    const std::string header = up.substr(start + 4, end - start - 4);
    const auto norb = namelist_int(header, "NORB");
    const auto nelec = namelist_int(header, "NELEC");
    if (!norb || !nelec) throw MalformedFile("FCIDUMP header needs NORB and NELEC");
    const long ms2 = namelist_int(header, "MS2").value_or(0);
    if (*norb < 1) throw MalformedFile("NORB must be positive");
    if (*nelec < 0 || ((*nelec + ms2) % 2) != 0 || std::abs(ms2) > *nelec)
        throw MalformedFile("inconsistent NELEC/MS2");

    MoHamiltonianData mo;
    mo.m_spatial = static_cast<int>(*norb);
    mo.n_alpha = static_cast<int>((*nelec + ms2) / 2);
    mo.n_beta = static_cast<int>((*nelec - ms2) / 2);
    const std::size_t n = mo.m_spatial;
    mo.h_mo = Eigen::MatrixXd::Zero(n, n);
    mo.eri_mo = EriTensor(n);

    std::istringstream in(text.substr(body));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 5)
            throw MalformedFile("record " + std::to_string(lineno) + " has " +
                                std::to_string(tok.size()) + " fields, expected 5");
        const double v = parse_fortran_double(tok[0]);
        long idx[4];
        for (int a = 0; a < 4; ++a) {
            try {
                std::size_t used = 0;
                idx[a] = std::stol(tok[a + 1], &used);
                if (used != tok[a + 1].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw MalformedFile("record " + std::to_string(lineno) + " has a bad index");
            }
            if (idx[a] < 0 || idx[a] > *norb)
                throw IndexOutOfRange("record " + std::to_string(lineno) + " index " +
                                      std::to_string(idx[a]) + " outside 0.." + std::to_string(*norb));
        }
        const long i = idx[0], j = idx[1], k = idx[2], l = idx[3];
        if (i == 0 && j == 0 && k == 0 && l == 0) {
            mo.e_core = v;
        } else if (i > 0 && j > 0 && k == 0 && l == 0) {
            mo.h_mo(i - 1, j - 1) = v;
            mo.h_mo(j - 1, i - 1) = v;
        } else if (i > 0 && j > 0 && k > 0 && l > 0) {
            mo.eri_mo->set_symmetric(i - 1, j - 1, k - 1, l - 1, v);
        } else if (i > 0 && j == 0 && k == 0 && l == 0) {
            // orbital energy record, not needed
        } else {
            throw MalformedFile("record " + std::to_string(lineno) + " has an unsupported index pattern");
        }
    }
    fill_diagonal_slices(mo);
    return mo;
}

MoHamiltonianData load_fcidump(const std::filesystem::path& path) {
    return parse_fcidump(read_text_file(path));
}

void save_fcidump(const MoHamiltonianData& mo, const std::filesystem::path& path) {
    if (!mo.eri_mo) throw ShapeMismatch("FCIDUMP output needs the full MO tensor");
    const int n = mo.m_spatial;
    std::ostringstream os;
    os << " &FCI NORB=" << n << ",NELEC=" << mo.n_alpha + mo.n_beta
       << ",MS2=" << mo.n_alpha - mo.n_beta << ",\n  ORBSYM=";
    for (int p = 0; p < n; ++p) os << "1,";
    os << "\n  ISYM=1,\n &END\n";
    const EriTensor& g = *mo.eri_mo;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k <= i; ++k)
                for (int l = 0; l <= k; ++l) {
                    if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
                    const double v = g(i, j, k, l);
                    if (v == 0.0) continue;
                    os << format_double(v) << ' ' << i + 1 << ' ' << j + 1 << ' ' << k + 1 << ' '
                       << l + 1 << '\n';
                }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (mo.h_mo(i, j) != 0.0)
                os << format_double(mo.h_mo(i, j)) << ' ' << i + 1 << ' ' << j + 1 << " 0 0\n";
    os << format_double(mo.e_core) << " 0 0 0 0\n";
    write_text_file(path, os.str());
}

std::vector<ValidationCheck> validate_mo(const MoHamiltonianData& mo) {
    std::vector<ValidationCheck> out;
    const int m = mo.m_spatial;
    out.push_back({"electron_counts",
                   mo.n_alpha >= 0 && mo.n_beta >= 0 && mo.n_alpha <= m && mo.n_beta <= m,
                   "n_alpha=" + std::to_string(mo.n_alpha) + " n_beta=" + std::to_string(mo.n_beta) +
                       " m_spatial=" + std::to_string(m),
                   "MalformedFile"});
    out.push_back(symmetric_check("h_mo_symmetric", mo.h_mo, kMatrixSymTol));
    if (mo.eri_mo) {
        std::size_t idx[4];
        const double err = mo.eri_mo->max_symmetry_error(idx);
        out.push_back({"eri_mo_8fold_symmetry", err <= kEriSymTol,
                       "max deviation " + format_double(err), "SymmetryViolation"});
    }
    out.push_back(symmetric_check("w_ppqq_symmetric", mo.w_ppqq, kEriSymTol));
    out.push_back(symmetric_check("w_pqqp_symmetric", mo.w_pqqp, kEriSymTol));
    {
        double dev = 0.0;
        for (int p = 0; p < m; ++p) dev = std::max(dev, std::abs(mo.w_ppqq(p, p) - mo.w_pqqp(p, p)));
        out.push_back({"w_diagonals_agree", dev <= kEriSymTol,
                       "max |W_ppqq[p][p] - W_pqqp[p][p]| = " + format_double(dev),
                       "SymmetryViolation"});
    }
    return out;
}

std::string model_to_json(const QusoModel& m) {
    json doc;
    doc["kind"] = "quso";
    doc["offset"] = m.offset;
    doc["linear"] = m.linear;
    json q = json::array();
    for (const auto& [key, c] : m.quadratic) q.push_back(json::array({key.first, key.second, c}));
    doc["quadratic"] = std::move(q);
    return doc.dump();
}

std::string model_to_json(const QuboModel& m) {
    json doc;
    doc["kind"] = "qubo";
    doc["offset"] = m.offset;
    doc["linear"] = m.linear;
    json q = json::array();
    for (const auto& [key, c] : m.quadratic) q.push_back(json::array({key.first, key.second, c}));
    doc["quadratic"] = std::move(q);
    return doc.dump();
}

namespace {

template <class Model>
Model fill_model(const json& doc) {
    if (!doc.contains("linear") || !doc["linear"].is_array())
        throw MalformedFile("model needs array 'linear'");
    Model m(doc["linear"].size());
    if (doc.contains("offset")) {
        if (!doc["offset"].is_number()) throw MalformedFile("offset must be a number");
        m.offset = doc["offset"].get<double>();
    }
    for (std::size_t i = 0; i < m.n; ++i) {
        if (!doc["linear"][i].is_number()) throw MalformedFile("linear has a non-numeric entry");
        m.linear[i] = doc["linear"][i].get<double>();
    }
    if (doc.contains("quadratic")) {
        if (!doc["quadratic"].is_array()) throw MalformedFile("quadratic must be an array");
        for (const json& t : doc["quadratic"]) {
            if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
                !t[1].is_number_integer() || !t[2].is_number())
                throw MalformedFile("quadratic entries must be [i, j, coefficient]");
            const long i = t[0].get<long>(), j = t[1].get<long>();
            if (i < 0 || j <= i || j >= static_cast<long>(m.n))
                throw MalformedFile("quadratic key (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") must satisfy 0 <= i < j < n");
            if (m.quadratic.count({int(i), int(j)}))
                throw MalformedFile("duplicate quadratic key");
            m.quadratic[{int(i), int(j)}] = t[2].get<double>();
        }
    }
    return m;
}

}  // namespace

std::variant<QusoModel, QuboModel> model_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw MalformedFile(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        throw MalformedFile("model needs a string 'kind'");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "quso") return fill_model<QusoModel>(doc);
    if (kind == "qubo") return fill_model<QuboModel>(doc);
    throw MalformedFile("unknown model kind '" + kind + "'");
}

std::string maxcut_to_text(const MaxCutInstance& m) {
    std::ostringstream os;
    os << "# maxcut ancilla=" << (m.ancilla ? std::to_string(*m.ancilla) : std::string("none"))
       << " value_offset=" << format_double(m.value_offset) << '\n';
    os << m.n_vertices << ' ' << m.weights.size() << '\n';
    for (const auto& [key, w] : m.weights)
        os << key.first << ' ' << key.second << ' ' << format_double(w) << '\n';
    return os.str();
}

MaxCutInstance maxcut_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# maxcut", 0) != 0)
        throw MalformedFile("MaxCut file must start with a '# maxcut' header line");
    MaxCutInstance m;
    {
        std::istringstream hs(line.substr(8));
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw MalformedFile("bad header token '" + tok + "'");
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "ancilla") {
                if (val != "none") {
                    try {
                        m.ancilla = std::stoi(val);
                    } catch (const std::exception&) {
                        throw MalformedFile("bad ancilla value '" + val + "'");
                    }
                }
            } else if (key == "value_offset") {
                m.value_offset = parse_fortran_double(val);
            } else {
                throw MalformedFile("unknown header key '" + key + "'");
            }
        }
    }
    long nv = 0, ne = 0;
    if (!(in >> nv >> ne) || nv < 0 || ne < 0) throw MalformedFile("bad 'n_vertices n_edges' line");
    m.n_vertices = nv;
    if (m.ancilla && (*m.ancilla < 0 || *m.ancilla >= nv)) throw MalformedFile("ancilla out of range");
    for (long e = 0; e < ne; ++e) {
        long i = 0, j = 0;
        std::string wtok;
        if (!(in >> i >> j >> wtok)) throw MalformedFile("edge list truncated at edge " + std::to_string(e));
        if (i < 0 || j < 0 || i >= nv || j >= nv || i == j)
            throw MalformedFile("bad edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if (i > j) std::swap(i, j);
        if (m.weights.count({int(i), int(j)})) throw MalformedFile("duplicate edge");
        m.weights[{int(i), int(j)}] = parse_fortran_double(wtok);
    }
    std::string rest;
    if (in >> rest) throw MalformedFile("trailing data after edge list");
    return m;
}

void save_model(const QusoModel& m, const std::filesystem::path& path) {
    write_text_file(path, model_to_json(m));
}

void save_model(const QuboModel& m, const std::filesystem::path& path) {
    write_text_file(path, model_to_json(m));
}

void save_model(const MaxCutInstance& m, const std::filesystem::path& path) {
    write_text_file(path, maxcut_to_text(m));
}

std::variant<QusoModel, QuboModel> load_model(const std::filesystem::path& path) {
    return model_from_json(read_text_file(path));
}

MaxCutInstance load_maxcut(const std::filesystem::path& path) {
    return maxcut_from_text(read_text_file(path));
}

}  // namespace detforge
