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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "dhdcert/specfun.hpp"

namespace dhdcert {

/// Probability mass a simulated state may lose to Fock truncation before an
/// operation refuses to continue.
inline constexpr double kTruncationTolerance = 1e-6;

/// Default Fock cutoff for states with at most ~3 dB of squeezing.
inline constexpr int kDefaultCutoff = 32;

/// Squeezing magnitude r for a quadrature variance reduction of `db` decibels.
double squeeze_r_from_db(double db);

/// Parameters of the Gaussian unitary G = S(xi) D(beta), xi = r e^{i theta},
/// with S(xi) = exp((xi a^2 - conj(xi) a^dag^2) / 2) and
/// D(beta) = exp(beta a^dag - conj(beta) a). The squeeze acts after the
/// displacement.
struct GaussianUnitaryParams {
    double squeeze_r = 0.0;
    double squeeze_theta = 0.0;
    cplx displacement{0.0, 0.0};

    static GaussianUnitaryParams identity() {
        return {};
    }
    bool is_identity() const {
        return squeeze_r == 0.0 && displacement == cplx{0.0, 0.0};
    }
    /// Parameters of G^dagger, again written in S(xi') D(beta') order.
    GaussianUnitaryParams inverse() const;
    /// Same operator with r >= 0 and theta in [0, 2 pi).
    GaussianUnitaryParams canonical() const;
};

/// Density matrix on the truncated Fock basis |0>..|dim-1>.
///
/// Hermitian, positive semidefinite, and trace() + trace_deficit() == 1 where
/// trace_deficit is the probability mass lost to truncation. The constructor
/// enforces all three; states are immutable afterwards.
class TruncatedState {
   public:
    TruncatedState(Eigen::MatrixXcd matrix, double trace_deficit);

    int dim() const noexcept {
        return static_cast<int>(matrix_.rows());
    }
    const Eigen::MatrixXcd &matrix() const noexcept {
        return matrix_;
    }
    double trace_deficit() const noexcept {
        return trace_deficit_;
    }
    cplx operator()(int k, int l) const {
        return matrix_(k, l);
    }

    double trace() const;
    double purity() const;
    double mean_photon_number() const;
    double photon_number_variance() const;
    bool is_diagonal(double tol = 0.0) const;

   private:
    Eigen::MatrixXcd matrix_;
    double trace_deficit_;
};

/// Normalised pure state G |C> with |C> = sum_m c_m |m> of finite support.
/// The stellar rank equals the index of the last nonzero coefficient.
class CoreState {
   public:
    CoreState(std::vector<cplx> coeffs, GaussianUnitaryParams frame = {});

    /// Rescales `coeffs` to unit norm and drops trailing zeros first.
    static CoreState normalized(std::vector<cplx> coeffs, GaussianUnitaryParams frame = {});
    static CoreState fock(int n);

    std::span<const cplx> coeffs() const noexcept {
        return coeffs_;
    }
    const GaussianUnitaryParams &frame() const noexcept {
        return frame_;
    }
    int stellar_rank() const noexcept {
        return static_cast<int>(coeffs_.size()) - 1;
    }

   private:
    std::vector<cplx> coeffs_;
    GaussianUnitaryParams frame_;
};

/// Operator A = sum_{k,l} A_kl |k><l| supported on the first dim() levels.
class TargetOperator {
   public:
    explicit TargetOperator(Eigen::MatrixXcd matrix);

    static TargetOperator fock_projector(int n);
    /// |k><l|.
    static TargetOperator element(int k, int l);
    /// |C><C|; only cores in the identity frame have bounded support.
    static TargetOperator from_core(const CoreState &core);

    int dim() const noexcept {
        return static_cast<int>(matrix_.rows());
    }
    const Eigen::MatrixXcd &matrix() const noexcept {
        return matrix_;
    }
    bool is_diagonal() const;
    bool is_hermitian(double tol = 1e-14) const;
    /// Real diagonal weights; only meaningful for diagonal operators.
    std::vector<double> diagonal_weights() const;

   private:
    Eigen::MatrixXcd matrix_;
};

TruncatedState make_fock(int n, int dim);

/// |n> sent through a pure-loss channel of transmission eta:
/// diag_k C(n,k) eta^k (1-eta)^(n-k).
TruncatedState make_lossy_fock(int n, double eta, int dim);

/// S(xi) rho_th S(xi)^dag with thermal occupation (1/purity - 1)/2, so that
/// the result has purity `purity`.
TruncatedState make_squeezed_thermal(double r, double theta, double purity, int dim);

/// a rho a^dag / Tr(a rho a^dag); the cutoff shrinks by one.
TruncatedState photon_subtract(const TruncatedState &state);

/// a^dag rho a / Tr(a^dag rho a); the cutoff grows by one.
TruncatedState photon_add(const TruncatedState &state);

/// <n| S(xi) D(beta) |m>.
cplx gaussian_matrix_element(int n, int m, const GaussianUnitaryParams &g);

/// Block <n| G |m> for n < rows, m < cols, by a two-index recurrence that only
/// looks at lower indices.
Eigen::MatrixXcd gaussian_matrix(const GaussianUnitaryParams &g, int rows, int cols);

/// G rho G^dag truncated to out_dim. Throws kCutoff when the resulting
/// deficit exceeds `tolerance`.
TruncatedState apply_gaussian(const TruncatedState &state, const GaussianUnitaryParams &g,
                              int out_dim, double tolerance = kTruncationTolerance);

/// Smallest cutoff >= state.dim() (up to `max_dim`) for which applying g
/// loses less than `tolerance` of additional mass.
int gaussian_output_dim(const TruncatedState &state, const GaussianUnitaryParams &g,
                        double tolerance = kTruncationTolerance, int max_dim = 256);

/// Coefficients of the coherent state |z> on |0>..|dim-1>.
Eigen::VectorXcd coherent_vector(cplx z, int dim);

/// Husimi function (1/pi) <z|rho|z>.
double husimi_q(const TruncatedState &state, cplx z);

/// Photon-number populations of D(alpha)^dag rho D(alpha) together with the
/// mass that fell outside the evaluated cutoff.
struct DisplacedPopulations {
    std::vector<double> populations;
    double tail_mass = 0.0;
};
DisplacedPopulations displaced_populations(const TruncatedState &state, cplx alpha,
                                           double tail_tolerance = 1e-13);

struct WignerValue {
    double value = 0.0;
    /// |W_exact - value| <= tail_bound for the truncated matrix.
    double tail_bound = 0.0;
};

/// (2/pi) sum_k (-1)^k <k|D^dag(alpha) rho D(alpha)|k>.
WignerValue wigner_parity(const TruncatedState &state, cplx alpha);
double wigner(const TruncatedState &state, cplx alpha);

/// Fock amplitudes of the core state on |0>..|dim-1>.
Eigen::VectorXcd core_vector(const CoreState &core, int dim);

/// |psi><psi| of a core state on a cutoff of `dim` levels.
TruncatedState make_pure(const CoreState &core, int dim);

/// <psi|rho|psi>.
double fidelity(const TruncatedState &state, const CoreState &target);

/// Tr(A rho).
cplx expectation(const TruncatedState &state, const TargetOperator &op);

}  // namespace dhdcert
