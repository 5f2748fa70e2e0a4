#pragma once

// Exactly invariant holomorphic quadratic differentials on the Bolza surface,
// computed by collocation of a disk power series against the octagon side
// pairings. Used wherever a differential must be invariant to rounding level
// (holonomy), and as the limit against which truncated Poincare series are
// measured.

#include <array>
#include <vector>

#include "cp1lab/moebius.hpp"

namespace cp1lab {

struct OctagonReduction {
    cplx w;        // reduced disk point, inside the closed octagon
    cplx factor;   // phi_D(w_in) = phi_D(w) * factor for any invariant phi_D
    int steps = 0;
};

/// Bring a disk point into the octagon by greedily applying side pairings
/// that move it closer to the center.
OctagonReduction reduce_to_octagon(cplx w);

class AutomorphicBasis {
public:
    static constexpr int kDimension = 3;

    struct Options {
        int terms = 200;             // power series length
        int points_per_side = 140;   // collocation points per paired side
        int quad_angle = 48;         // Gauss nodes in angle per octagon sector
        int quad_radius = 160;       // Gauss nodes in radius
    };

    /// Shared instance with default options; built once, thread-safe.
    static const AutomorphicBasis& bolza();

    explicit AutomorphicBasis(const Options& opt);

    /// Petersson-orthonormal basis q_0, q_1, q_2 in the H coordinate (z-plane).
    std::array<cplx, kDimension> values(cplx z) const;
    /// The same basis in the disk coordinate.
    std::array<cplx, kDimension> disk_values(cplx w) const;

    /// Singular values of the collocation matrix: the last three are the
    /// nullspace residuals, the fourth from last is the gap.
    const std::vector<double>& singular_values() const { return sigma_; }
    double null_residual() const;
    double spectral_gap() const;

    /// Petersson Gram matrix of the returned basis (should be the identity).
    std::array<std::array<cplx, kDimension>, kDimension> gram() const;

    /// Coordinates of the limit of the weight-4 Poincare series with kernel
    /// coeff * (z - pole)^-4, i.e. (pi/12) conj(q_j(conj pole)) * coeff.
    std::array<cplx, kDimension> poincare_limit(cplx pole, cplx coeff = 1.0) const;

    int terms() const { return static_cast<int>(coeff_[0].size()); }
    double scale_radius() const { return rho_; }

private:
    cplx series(int j, cplx w_scaled) const;
    std::array<std::vector<cplx>, kDimension> coeff_;  // in powers of w / rho
    std::vector<double> sigma_;
    double rho_ = 1.0;
    Options opt_;
};

/// An exactly invariant differential given by coordinates in the automorphic basis.
class CompletedDiff {
public:
    CompletedDiff() = default;
    CompletedDiff(const AutomorphicBasis* basis, std::array<cplx, AutomorphicBasis::kDimension> coords)
        : basis_(basis), coords_(coords) {}

    cplx operator()(cplx z) const;
    const std::array<cplx, AutomorphicBasis::kDimension>& coords() const { return coords_; }
    const AutomorphicBasis* basis() const { return basis_; }
    CompletedDiff scaled(cplx s) const;

private:
    const AutomorphicBasis* basis_ = nullptr;
    std::array<cplx, AutomorphicBasis::kDimension> coords_{};
};

}  // namespace cp1lab
