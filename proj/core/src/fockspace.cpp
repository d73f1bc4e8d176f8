// Copyright 2026 The dhdcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dhdcert/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dhdcert/error.hpp"

namespace dhdcert {
namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;
constexpr double kTraceTolerance = 1e-9;
constexpr double kNormTolerance = 1e-12;

}  // namespace

double squeeze_r_from_db(double db) {
    return db * std::numbers::ln10 / 20.0;
}

GaussianUnitaryParams GaussianUnitaryParams::inverse() const {
    // G^dag = D(-beta) S(-xi) = S(-xi) D(-beta cosh r + conj(beta) sinh r e^{-i theta}).
    double c = std::cosh(squeeze_r);
    double s = std::sinh(squeeze_r);
    cplx phase = std::polar(1.0, -squeeze_theta);
    GaussianUnitaryParams inv;
    inv.squeeze_r = -squeeze_r;
    inv.squeeze_theta = squeeze_theta;
    inv.displacement = -displacement * c + std::conj(displacement) * s * phase;
    return inv.canonical();
}

GaussianUnitaryParams GaussianUnitaryParams::canonical() const {
    GaussianUnitaryParams out = *this;
    if (out.squeeze_r < 0.0) {
        out.squeeze_r = -out.squeeze_r;
        out.squeeze_theta += std::numbers::pi;
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    out.squeeze_theta = std::fmod(out.squeeze_theta, two_pi);
    if (out.squeeze_theta < 0.0) {
        out.squeeze_theta += two_pi;
    }
    if (out.squeeze_r == 0.0) {
        out.squeeze_theta = 0.0;
    }
    return out;
}

TruncatedState::TruncatedState(Eigen::MatrixXcd matrix, double trace_deficit)
    : matrix_(std::move(matrix)), trace_deficit_(trace_deficit) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw Error(ErrorCode::kConfig, "density matrix must be square and nonempty");
    }
    double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= kHermitianTolerance)) {
        throw Error(ErrorCode::kConfig,
                    "density matrix is not Hermitian (max asymmetry " + std::to_string(asym) + ")");
    }
    matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
    if (!(trace_deficit_ >= -kTraceTolerance)) {
        throw Error(ErrorCode::kConfig, "trace deficit must be nonnegative");
    }
    trace_deficit_ = std::max(0.0, trace_deficit_);
    if (std::abs(trace() + trace_deficit_ - 1.0) > kTraceTolerance) {
        throw Error(ErrorCode::kConfig, "trace (" + std::to_string(trace()) +
                                            ") plus trace deficit (" +
                                            std::to_string(trace_deficit_) + ") is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -kPsdTolerance) {
        throw Error(ErrorCode::kConfig,
                    "density matrix is not positive semidefinite (min eigenvalue " +
                        std::to_string(min_eig) + ")");
    }
}

double TruncatedState::trace() const {
    return matrix_.trace().real();
}

double TruncatedState::purity() const {
    return (matrix_ * matrix_).trace().real();
}

double TruncatedState::mean_photon_number() const {
    double n = 0.0;
    for (int k = 0; k < dim(); ++k) {
        n += k * matrix_(k, k).real();
    }
    return n / trace();
}

double TruncatedState::photon_number_variance() const {
    double mean = mean_photon_number();
    double second = 0.0;
    for (int k = 0; k < dim(); ++k) {
        second += static_cast<double>(k) * k * matrix_(k, k).real();
    }
    return std::max(0.0, second / trace() - mean * mean);
}

bool TruncatedState::is_diagonal(double tol) const {
    for (int k = 0; k < dim(); ++k) {
        for (int l = 0; l < dim(); ++l) {
            if (k != l && std::abs(matrix_(k, l)) > tol) {
                return false;
            }
        }
    }
    return true;
}

CoreState::CoreState(std::vector<cplx> coeffs, GaussianUnitaryParams frame)
    : coeffs_(std::move(coeffs)), frame_(frame) {
    if (coeffs_.empty()) {
        throw Error(ErrorCode::kConfig, "core state needs at least one coefficient");
    }
    double norm2 = 0.0;
    for (const cplx &c : coeffs_) {
        norm2 += std::norm(c);
    }
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw Error(ErrorCode::kConfig,
                    "core state coefficients are not normalised (norm^2 = " +
                        std::to_string(norm2) + ")");
    }
    if (coeffs_.back() == cplx{0.0, 0.0}) {
        throw Error(ErrorCode::kConfig, "leading core coefficient must be nonzero");
    }
}

CoreState CoreState::normalized(std::vector<cplx> coeffs, GaussianUnitaryParams frame) {
    while (!coeffs.empty() && std::abs(coeffs.back()) < 1e-14) {
        coeffs.pop_back();
    }
    if (coeffs.empty()) {
        throw Error(ErrorCode::kConfig, "core state coefficients are all zero");
    }
    double norm = 0.0;
    for (const cplx &c : coeffs) {
        norm += std::norm(c);
    }
    norm = std::sqrt(norm);
    for (cplx &c : coeffs) {
        c /= norm;
    }
    return CoreState(std::move(coeffs), frame);
}

CoreState CoreState::fock(int n) {
    if (n < 0) {
        throw Error(ErrorCode::kDomain, "Fock index must be nonnegative");
    }
    std::vector<cplx> coeffs(static_cast<std::size_t>(n) + 1, cplx{0.0, 0.0});
    coeffs.back() = 1.0;
    return CoreState(std::move(coeffs));
}

TargetOperator::TargetOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw Error(ErrorCode::kConfig, "target operator must be square and nonempty");
    }
}

TargetOperator TargetOperator::fock_projector(int n) {
    return element(n, n);
}

TargetOperator TargetOperator::element(int k, int l) {
    if (k < 0 || l < 0) {
        throw Error(ErrorCode::kDomain, "Fock indices must be nonnegative");
    }
    int dim = std::max(k, l) + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    m(k, l) = 1.0;
    return TargetOperator(std::move(m));
}

TargetOperator TargetOperator::from_core(const CoreState &core) {
    if (!core.frame().is_identity()) {
        throw Error(ErrorCode::kUnsupported,
                    "core states with a non-identity Gaussian frame have unbounded Fock support");
    }
    auto c = core.coeffs();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = c[i];
    }
    return TargetOperator(v * v.adjoint());
}

bool TargetOperator::is_diagonal() const {
    for (int k = 0; k < dim(); ++k) {
        for (int l = 0; l < dim(); ++l) {
            if (k != l && matrix_(k, l) != cplx{0.0, 0.0}) {
                return false;
            }
        }
    }
    return true;
}

bool TargetOperator::is_hermitian(double tol) const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<double> TargetOperator::diagonal_weights() const {
    std::vector<double> w(static_cast<std::size_t>(dim()));
    for (int k = 0; k < dim(); ++k) {
        w[k] = matrix_(k, k).real();
    }
    return w;
}

TruncatedState make_fock(int n, int dim) {
    if (n < 0 || n >= dim) {
        throw Error(ErrorCode::kCutoff,
                    "Fock state |" + std::to_string(n) + "> needs a cutoff above " +
                        std::to_string(n) + ", got " + std::to_string(dim));
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    m(n, n) = 1.0;
    return TruncatedState(std::move(m), 0.0);
}

TruncatedState make_lossy_fock(int n, double eta, int dim) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorCode::kDomain, "transmission eta must lie in [0, 1]");
    }
    if (n < 0 || n >= dim) {
        throw Error(ErrorCode::kCutoff, "lossy Fock state |" + std::to_string(n) +
                                            "> needs a cutoff above " + std::to_string(n));
    }
    const auto &ctx = default_poly_context();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k <= n; ++k) {
        m(k, k) = std::exp(ctx.log_binomial(n, k)) * std::pow(eta, k) * std::pow(1.0 - eta, n - k);
    }
    double trace = m.trace().real();
    return TruncatedState(std::move(m), std::max(0.0, 1.0 - trace));
}

TruncatedState make_squeezed_thermal(double r, double theta, double purity, int dim) {
    if (!(purity > 0.0 && purity <= 1.0)) {
        throw Error(ErrorCode::kDomain, "purity must lie in (0, 1]");
    }
    double nbar = 0.5 * (1.0 / purity - 1.0);
    double ratio = nbar / (1.0 + nbar);
    int thermal_dim = 1;
    double tail = ratio;
    while (tail > 1e-17 && thermal_dim < 512) {
        ++thermal_dim;
        tail *= ratio;
    }
    Eigen::MatrixXcd th = Eigen::MatrixXcd::Zero(thermal_dim, thermal_dim);
    double p = 1.0 / (1.0 + nbar);
    double mass = 0.0;
    for (int k = 0; k < thermal_dim; ++k) {
        th(k, k) = p;
        mass += p;
        p *= ratio;
    }
    TruncatedState thermal(std::move(th), std::max(0.0, 1.0 - mass));
    if (r == 0.0) {
        if (dim < thermal_dim) {
            return apply_gaussian(thermal, GaussianUnitaryParams::identity(), dim);
        }
        Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(dim, dim);
        padded.topLeftCorner(thermal_dim, thermal_dim) = thermal.matrix();
        return TruncatedState(std::move(padded), thermal.trace_deficit());
    }
    return apply_gaussian(thermal, GaussianUnitaryParams{r, theta, 0.0}, dim);
}

TruncatedState photon_subtract(const TruncatedState &state) {
    const auto &rho = state.matrix();
    int d = state.dim();
    double norm = 0.0;
    for (int k = 1; k < d; ++k) {
        norm += k * rho(k, k).real();
    }
    if (d < 2 || norm <= 1e-12) {
        throw Error(ErrorCode::kUndefinedSubtraction,
                    "photon subtraction is undefined: Tr(a rho a^dag) vanishes");
    }
    Eigen::MatrixXcd out(d - 1, d - 1);
    for (int k = 0; k < d - 1; ++k) {
        for (int l = 0; l < d - 1; ++l) {
            out(k, l) = std::sqrt(static_cast<double>(k + 1) * (l + 1)) * rho(k + 1, l + 1) / norm;
        }
    }
    return TruncatedState(std::move(out), 0.0);
}

TruncatedState photon_add(const TruncatedState &state) {
    const auto &rho = state.matrix();
    int d = state.dim();
    double norm = 0.0;
    for (int k = 0; k < d; ++k) {
        norm += (k + 1) * rho(k, k).real();
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    for (int k = 1; k <= d; ++k) {
        for (int l = 1; l <= d; ++l) {
            out(k, l) = std::sqrt(static_cast<double>(k) * l) * rho(k - 1, l - 1) / norm;
        }
    }
    return TruncatedState(std::move(out), 0.0);
}

Eigen::MatrixXcd gaussian_matrix(const GaussianUnitaryParams &g, int rows, int cols) {
    if (rows <= 0 || cols <= 0) {
        throw Error(ErrorCode::kConfig, "gaussian_matrix needs positive dimensions");
    }
    const double c = std::cosh(g.squeeze_r);
    const double s = std::sinh(g.squeeze_r);
    const double t = std::tanh(g.squeeze_r);
    const cplx e = std::polar(1.0, g.squeeze_theta);
    const cplx beta = g.displacement;

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(rows, cols);
    u(0, 0) = std::exp(0.5 * e * t * beta * beta - 0.5 * std::norm(beta)) / std::sqrt(c);
    // First column: the squeezed coherent state G|0>.
    for (int n = 0; n + 1 < rows; ++n) {
        cplx next = beta / c * u(n, 0);
        if (n > 0) {
            next -= t * std::conj(e) * std::sqrt(static_cast<double>(n)) * u(n - 1, 0);
        }
        u(n + 1, 0) = next / std::sqrt(static_cast<double>(n + 1));
    }
    // G_{n,m} = [sqrt(n) G_{n-1,m-1} + s e sqrt(m-1) G_{n,m-2}
    //            + (s e beta - c conj(beta)) G_{n,m-1}] / (c sqrt(m))
    const cplx mix = s * e * beta - c * std::conj(beta);
    for (int m = 1; m < cols; ++m) {
        const double inv = 1.0 / (c * std::sqrt(static_cast<double>(m)));
        for (int n = 0; n < rows; ++n) {
            cplx acc = mix * u(n, m - 1);
            if (n > 0) {
                acc += std::sqrt(static_cast<double>(n)) * u(n - 1, m - 1);
            }
            if (m > 1) {
                acc += s * e * std::sqrt(static_cast<double>(m - 1)) * u(n, m - 2);
            }
            u(n, m) = acc * inv;
        }
    }
    return u;
}

cplx gaussian_matrix_element(int n, int m, const GaussianUnitaryParams &g) {
    if (n < 0 || m < 0) {
        throw Error(ErrorCode::kDomain, "Fock indices must be nonnegative");
    }
    return gaussian_matrix(g, n + 1, m + 1)(n, m);
}

TruncatedState apply_gaussian(const TruncatedState &state, const GaussianUnitaryParams &g,
                              int out_dim, double tolerance) {
    Eigen::MatrixXcd u = gaussian_matrix(g, out_dim, state.dim());
    Eigen::MatrixXcd rho = u * state.matrix() * u.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    double deficit = std::max(0.0, 1.0 - rho.trace().real());
    if (deficit > tolerance) {
        int suggested = gaussian_output_dim(state, g, tolerance);
        throw Error(ErrorCode::kCutoff, "Gaussian operation loses " + std::to_string(deficit) +
                                            " of probability at cutoff " +
                                            std::to_string(out_dim) + "; try a cutoff of " +
                                            std::to_string(suggested));
    }
    return TruncatedState(std::move(rho), deficit);
}

int gaussian_output_dim(const TruncatedState &state, const GaussianUnitaryParams &g,
                        double tolerance, int max_dim) {
    Eigen::MatrixXcd u = gaussian_matrix(g, max_dim, state.dim());
    Eigen::MatrixXcd half = u * state.matrix();
    double kept = 0.0;
    for (int n = 0; n < max_dim; ++n) {
        kept += (half.row(n) * u.row(n).adjoint())(0, 0).real();
        if (n + 1 >= state.dim() && 1.0 - kept <= tolerance) {
            return n + 1;
        }
    }
    return max_dim;
}

Eigen::VectorXcd coherent_vector(cplx z, int dim) {
    Eigen::VectorXcd v(dim);
    v(0) = std::exp(-0.5 * std::norm(z));
    for (int k = 1; k < dim; ++k) {
        v(k) = v(k - 1) * z / std::sqrt(static_cast<double>(k));
    }
    return v;
}

double husimi_q(const TruncatedState &state, cplx z) {
    Eigen::VectorXcd v = coherent_vector(z, state.dim());
    return (v.adjoint() * state.matrix() * v)(0, 0).real() / std::numbers::pi;
}

DisplacedPopulations displaced_populations(const TruncatedState &state, cplx alpha,
                                           double tail_tolerance) {
    const double a = std::abs(alpha);
    int out = state.dim() + static_cast<int>(std::ceil(a * a + 8.0 * a)) + 16;
    const double trace = state.trace();
    DisplacedPopulations result;
    for (;;) {
        Eigen::MatrixXcd u = gaussian_matrix(GaussianUnitaryParams{0.0, 0.0, -alpha}, out, state.dim());
        Eigen::MatrixXcd half = u * state.matrix();
        result.populations.assign(static_cast<std::size_t>(out), 0.0);
        double kept = 0.0;
        for (int n = 0; n < out; ++n) {
            double p = (half.row(n) * u.row(n).adjoint())(0, 0).real();
            result.populations[n] = p;
            kept += p;
        }
        result.tail_mass = std::max(0.0, trace - kept);
        if (result.tail_mass <= tail_tolerance || out >= 1024) {
            return result;
        }
        out = std::min(1024, out + out / 2);
    }
}

WignerValue wigner_parity(const TruncatedState &state, cplx alpha) {
    DisplacedPopulations pops = displaced_populations(state, alpha);
    double parity = 0.0;
    for (std::size_t k = 0; k < pops.populations.size(); ++k) {
        parity += (k % 2 == 0 ? 1.0 : -1.0) * pops.populations[k];
    }
    return {2.0 / std::numbers::pi * parity, 2.0 / std::numbers::pi * pops.tail_mass};
}

double wigner(const TruncatedState &state, cplx alpha) {
    return wigner_parity(state, alpha).value;
}

Eigen::VectorXcd core_vector(const CoreState &core, int dim) {
    auto coeffs = core.coeffs();
    int support = static_cast<int>(coeffs.size());
    Eigen::VectorXcd c(support);
    for (int i = 0; i < support; ++i) {
        c(i) = coeffs[i];
    }
    if (core.frame().is_identity()) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        int n = std::min(dim, support);
        v.head(n) = c.head(n);
        return v;
    }
    return gaussian_matrix(core.frame(), dim, support) * c;
}

TruncatedState make_pure(const CoreState &core, int dim) {
    Eigen::VectorXcd v = core_vector(core, dim);
    double deficit = std::max(0.0, 1.0 - v.squaredNorm());
    if (deficit > kTruncationTolerance) {
        throw Error(ErrorCode::kCutoff, "core state loses " + std::to_string(deficit) +
                                            " of probability at cutoff " + std::to_string(dim));
    }
    return TruncatedState(v * v.adjoint(), deficit);
}

double fidelity(const TruncatedState &state, const CoreState &target) {
    Eigen::VectorXcd psi = core_vector(target, state.dim());
    return (psi.adjoint() * state.matrix() * psi)(0, 0).real();
}

cplx expectation(const TruncatedState &state, const TargetOperator &op) {
    int n = std::min(state.dim(), op.dim());
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            acc += op.matrix()(k, l) * state.matrix()(l, k);
        }
    }
    return acc;
}

}  // namespace dhdcert
