#include "detforge/orbital_rotation.hpp"

#include <cmath>
#include <complex>

#include "detforge/errors.hpp"
#include "detforge/format.hpp"

namespace detforge {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_square(const Eigen::MatrixXd& v, std::size_t n, const char* what) {
    if (v.rows() != static_cast<Eigen::Index>(n) || v.cols() != static_cast<Eigen::Index>(n))
        throw ShapeMismatch(std::string(what) + ": expected " + std::to_string(n) + "x" +
                            std::to_string(n) + ", got " + std::to_string(v.rows()) + "x" +
                            std::to_string(v.cols()));
}

}  // namespace

std::size_t kappa_length(std::size_t m) { return m * (m - (m > 0 ? 1 : 0)) / 2; }

Eigen::MatrixXd skew_from_kappa(const Eigen::VectorXd& kappa, std::size_t m) {
    if (static_cast<std::size_t>(kappa.size()) != kappa_length(m))
        throw LengthMismatch("kappa has " + std::to_string(kappa.size()) + " entries, expected " +
                             std::to_string(kappa_length(m)));
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(m, m);
    Eigen::Index pos = 0;
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const double x = kappa[pos++];
            k(i, j) = -x;
            k(j, i) = x;
        }
    return k;
}

Eigen::VectorXd kappa_from_skew(const Eigen::MatrixXd& k) {
    const std::size_t m = k.rows();
    Eigen::VectorXd kappa(kappa_length(m));
    Eigen::Index pos = 0;
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j) kappa[pos++] = -k(i, j);
    return kappa;
}

Eigen::MatrixXd rotation_matrix(const Eigen::MatrixXd& k) {
    if (k.rows() != k.cols()) throw ShapeMismatch("generator must be square");
    const Eigen::Index m = k.rows();
    const double asym = (k + k.transpose()).cwiseAbs().maxCoeff();
    if (m > 0 && !(asym <= 1e-12))
        throw NonAntisymmetric("max |K + K^T| = " + format_double(asym));
    if (m == 0 || k.cwiseAbs().maxCoeff() == 0.0) return Eigen::MatrixXd::Identity(m, m);

    // iK is Hermitian: iK = W Λ Wᴴ, so exp(-K) = W exp(iΛ) Wᴴ.
    const Eigen::MatrixXcd ik = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ik);
    if (es.info() != Eigen::Success) throw LinearAlgebraFailure("eigendecomposition of i*K failed");
    const Eigen::VectorXd lam = es.eigenvalues();
    Eigen::VectorXcd phase(m);
    for (Eigen::Index i = 0; i < m; ++i) phase[i] = std::polar(1.0, lam[i]);
    const Eigen::MatrixXcd w = es.eigenvectors();
    const Eigen::MatrixXcd e = w * phase.asDiagonal() * w.adjoint();
    return e.real();
}

Eigen::MatrixXd transform_one_electron(const Eigen::MatrixXd& h, const Eigen::MatrixXd& v) {
    require_square(h, h.rows(), "one-electron matrix");
    require_square(v, h.rows(), "rotation");
    return v * h * v.transpose();
}

EriTensor transform_two_electron_full(const EriTensor& eri, const Eigen::MatrixXd& v) {
    const std::size_t n = eri.dim();
    require_square(v, n, "rotation");
    if (n == 0) return eri;
    const Eigen::Index n3 = static_cast<Eigen::Index>(n * n * n);
    const Eigen::Index nn = static_cast<Eigen::Index>(n);
    std::vector<double> a = eri.data();
    std::vector<double> b(a.size());
    // Each pass contracts the leading index and rotates it to the back:
    // (p,q,r,s) -> (q,r,s,a).
    for (int pass = 0; pass < 4; ++pass) {
        Eigen::Map<const RowMat> d(a.data(), nn, n3);
        Eigen::Map<RowMat> o(b.data(), n3, nn);
        o.noalias() = d.transpose() * v.transpose();
        std::swap(a, b);
    }
    EriTensor out(n);
    out.data() = std::move(a);
    return out;
}

DiagonalSlices transform_two_electron_diagonal(const EriTensor& eri, const Eigen::MatrixXd& v) {
    const std::size_t n = eri.dim();
    if (v.cols() != static_cast<Eigen::Index>(n))
        throw ShapeMismatch("rotation has " + std::to_string(v.cols()) + " columns, tensor dimension " +
                            std::to_string(n));
    const Eigen::Index nn = static_cast<Eigen::Index>(n);
    const Eigen::Index nr = v.rows();
    DiagonalSlices out{Eigen::MatrixXd::Zero(nr, nr), Eigen::MatrixXd::Zero(nr, nr)};
    if (n == 0 || nr == 0) return out;

    Eigen::Map<const RowMat> g_pair(eri.data().data(), nn * nn, nn * nn);  // [(μν),(λσ)]
    Eigen::Map<const RowMat> g_last(eri.data().data(), nn * nn * nn, nn);  // [(μνλ),σ]
    RowMat x(1, nn * nn);
    RowMat u(nn, nn);
    Eigen::VectorXd t(nn * nn * nn);
    for (Eigen::Index p = 0; p < nr; ++p) {
        const auto vp = v.row(p);

        // (pp|qq): u[λ,σ] = Σ_{μν} V_pμ V_pν (μν|λσ)
        for (Eigen::Index mu = 0; mu < nn; ++mu)
            for (Eigen::Index nu = 0; nu < nn; ++nu) x(0, mu * nn + nu) = vp[mu] * vp[nu];
        Eigen::Map<RowMat>(u.data(), 1, nn * nn).noalias() = x * g_pair;
        out.w_ppqq.row(p) = (v * u).cwiseProduct(v).rowwise().sum().transpose();

        // (pq|qp): u[ν,λ] = Σ_{μσ} V_pμ V_pσ (μν|λσ)
        t.noalias() = g_last * vp.transpose();
        Eigen::Map<const RowMat> tm(t.data(), nn, nn * nn);
        Eigen::Map<RowMat>(u.data(), 1, nn * nn).noalias() = vp * tm;
        out.w_pqqp.row(p) = (v * u).cwiseProduct(v).rowwise().sum().transpose();
    }
    return out;
}

double orthonormality_error(const Eigen::MatrixXd& c, const Eigen::MatrixXd& s) {
    const Eigen::Index m = c.cols();
    return (c.transpose() * s * c - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
}

MoHamiltonianData ao_to_mo(const IntegralBundle& bundle, const Eigen::MatrixXd& c,
                           bool keep_full_tensor) {
    const std::size_t m = bundle.m_spatial;
    require_square(c, m, "coefficient matrix");
    const double dev = orthonormality_error(c, bundle.overlap);
    if (!(dev <= 1e-8)) throw NotOrthonormal("max |C^T S C - I| = " + format_double(dev));

    MoHamiltonianData mo;
    mo.m_spatial = bundle.m_spatial;
    mo.n_alpha = bundle.n_alpha;
    mo.n_beta = bundle.n_beta;
    mo.e_core = bundle.e_nuc;
    const Eigen::MatrixXd v = c.transpose();
    mo.h_mo = transform_one_electron(bundle.hcore, v);
    if (keep_full_tensor) {
        mo.eri_mo = transform_two_electron_full(bundle.eri, v);
        fill_diagonal_slices(mo);
    } else {
        DiagonalSlices w = transform_two_electron_diagonal(bundle.eri, v);
        mo.w_ppqq = std::move(w.w_ppqq);
        mo.w_pqqp = std::move(w.w_pqqp);
    }
    return mo;
}

MoHamiltonianData rotate_mo(const MoHamiltonianData& mo, const Eigen::MatrixXd& v, bool keep_full) {
    if (!mo.eri_mo) throw ShapeMismatch("rotation of MO data needs the full MO tensor");
    MoHamiltonianData out;
    out.m_spatial = mo.m_spatial;
    out.n_alpha = mo.n_alpha;
    out.n_beta = mo.n_beta;
    out.e_core = mo.e_core;
    out.h_mo = transform_one_electron(mo.h_mo, v);
    if (keep_full) {
        out.eri_mo = transform_two_electron_full(*mo.eri_mo, v);
        fill_diagonal_slices(out);
    } else {
        DiagonalSlices w = transform_two_electron_diagonal(*mo.eri_mo, v);
        out.w_ppqq = std::move(w.w_ppqq);
        out.w_pqqp = std::move(w.w_pqqp);
    }
    return out;
}

}  // namespace detforge
