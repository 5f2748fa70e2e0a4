#pragma once

// Holomorphic quadratic differentials on H realized as word-length truncated
// weight-4 Poincare series over the Bolza group.

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "cp1lab/automorphic.hpp"
#include "cp1lab/fuchsian.hpp"

namespace cp1lab {

/// Pointwise evaluator of a differential phi(z) dz^2 in the H coordinate.
using DiffField = std::function<cplx(cplx)>;

struct PoleTerm {
    cplx pole;   // Im < 0
    cplx coeff;
};

class QuadDiff {
public:
    QuadDiff() = default;
    QuadDiff(const MarkedGroup& g, std::vector<PoleTerm> terms, int truncation_len);

    /// sum over |gamma| <= L and poles of coeff * gamma'(z)^2 (gamma z - pole)^-4.
    cplx operator()(cplx z) const;
    /// Several points at once (one pass over the element table).
    std::vector<cplx> evaluate(const std::vector<cplx>& zs) const;

    const std::vector<PoleTerm>& terms() const { return terms_; }
    int truncation_len() const { return L_; }
    const MarkedGroup& group() const { return group_; }

    /// Frontier sum over |gamma| = L of |coeff gamma'(z)^2 (gamma z - pole)^-4|,
    /// the size of the last shell added to the series.
    double tail_estimate(cplx z) const;

    QuadDiff scaled(cplx s) const;
    QuadDiff operator+(const QuadDiff& other) const;

    /// The L -> infinity limit as an exactly invariant differential.
    CompletedDiff completed(const AutomorphicBasis& basis = AutomorphicBasis::bolza()) const;

    operator DiffField() const;  // NOLINT: implicit use as a field is intended

private:
    MarkedGroup group_;
    std::vector<PoleTerm> terms_;
    int L_ = 0;
    std::shared_ptr<const ElementTable> table_;
};

QuadDiff poincare_diff(const MarkedGroup& g, cplx pole, int L, cplx coeff = 1.0);

struct EquivarianceSample {
    cplx z;
    MobiusMap gamma;
};

/// max |phi(gamma z) gamma'(z)^2 - phi(z)| / (1 + |phi(z)|).
double equivariance_residual(const DiffField& phi, const std::vector<EquivarianceSample>& samples);

/// Deterministic sample pairs: points inside the octagon paired with every
/// side pairing and standard generator.
std::vector<EquivarianceSample> default_equivariance_samples(const MarkedGroup& g, int n_points = 20);

/// Points of a Euclidean grid of spacing h over the octagon in the disk,
/// mapped to H.
std::vector<cplx> octagon_samples(double h = 0.02);

struct SupNorm {
    double value = 0.0;
    cplx argmax{0.0, 1.0};
    double mesh = 0.0;
};

/// max |phi(z)| (Im z)^2 over the samples.
SupNorm sup_norm(const DiffField& phi, const std::vector<cplx>& fd_samples, double mesh = 0.02);
SupNorm sup_norm(const QuadDiff& phi, const std::vector<cplx>& fd_samples, double mesh = 0.02);

/// int_F |phi| over the octagon (hyperbolic L1 norm, quadrature).
double l1_norm(const DiffField& phi, int angle_nodes = 24, int radius_nodes = 48);

/// Cauchy-Riemann residual |d phi / d zbar| by central differences.
double cauchy_riemann_residual(const DiffField& phi, cplx z, double h = 1e-4);

/// Shipped poles for the basis (lower half-plane), and extras for rank tests.
const std::array<cplx, 3>& basis_poles();
const std::vector<cplx>& extra_poles();

struct DiffBasis {
    std::array<QuadDiff, 3> series;
    /// Smallest singular value of the column-normalized sampling matrix.
    double gram_rank_certificate = 0.0;
    /// Exactly invariant limits of the three series, scaled so that each has
    /// sup norm 1 on the default octagon mesh.
    std::array<CompletedDiff, 3> normalized;
    std::array<double, 3> normalization{1.0, 1.0, 1.0};
};

/// Sampling matrix: rows = sample points, columns = differentials, entries phi(z) (Im z)^2.
std::vector<std::vector<cplx>> sampling_matrix(const std::vector<QuadDiff>& series, const std::vector<cplx>& points);

/// Singular values of the column-normalized sampling matrix.
std::vector<double> sampling_singular_values(const std::vector<std::vector<cplx>>& columns_by_point);

struct RankEstimate {
    std::vector<double> singular_values;  // column-normalized truncated sampling matrix
    double noise = 0.0;  // ||E||_2, E = truncated minus L -> infinity matrix (same scaling)
    int rank = 0;        // #{sigma > noise}
    double max_tail = 0.0;  // largest tail_estimate (Im z)^2 over the samples
};

/// Numerical rank of the sampling matrix of Bolza series, with the truncation
/// error as the noise floor (Weyl: |sigma_i(A) - sigma_i(A + E)| <= ||E||_2).
RankEstimate sampling_rank(const std::vector<QuadDiff>& series, const std::vector<cplx>& points);

/// Points used for sampling-matrix tests.
std::vector<cplx> rank_sample_points(int n = 30);

DiffBasis basis(const MarkedGroup& g, int L);

}  // namespace cp1lab
