#pragma once

// Holonomy representations of projective structures in the Bolza fiber,
// obtained as monodromy of the Schwarzian equation, and their characters.

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cp1lab/fuchsian.hpp"
#include "cp1lab/quaddiff.hpp"
#include "cp1lab/schwarzian.hpp"

namespace cp1lab {

enum class Provenance { explicit_generators, ode_monodromy, bending };

const char* to_string(Provenance p);

struct RepresentationOrigin {
    Provenance kind = Provenance::explicit_generators;
    std::vector<cplx> c;     // basis coefficients (ode_monodromy)
    double t = 0.0;          // bending angle (bending)
    std::string curve;       // bending curve name (bending)
};

/// A homomorphism from the surface group given by its generator images.
class Representation {
public:
    Representation() = default;
    Representation(std::array<MobiusMap, kGenerators> gens, Word relator, RepresentationOrigin origin = {});

    /// rho0: the inclusion of a marked Fuchsian group.
    static Representation fuchsian(const MarkedGroup& g);

    MobiusMap operator()(const Word& w) const;
    const std::array<MobiusMap, kGenerators>& generators() const { return gens_; }
    const Word& relator() const { return relator_; }
    const RepresentationOrigin& origin() const { return origin_; }

    /// PSL2 distance of rho(relator) from the identity.
    double relator_defect() const;
    /// max over pairs of ||rho(u v) - rho(u) rho(v)|| in PSL2.
    double homomorphism_defect(const std::vector<std::pair<Word, Word>>& probes) const;

    /// A rho A^-1.
    Representation conjugated(const MobiusMap& a) const;

private:
    std::array<MobiusMap, kGenerators> gens_;
    Word relator_;
    RepresentationOrigin origin_;
};

/// Squared traces over the fixed word catalog.
struct Character {
    static constexpr int kWords = 12;
    std::array<cplx, kWords> values{};

    /// a1, b1, a2, b2, the six pairwise products, [a1,b1], [a2,b2].
    static const std::array<Word, kWords>& words();
    double distance(const Character& other) const;
};

Character character_of(const Representation& r);

/// Change from transported data (u, u') at gamma z0 to the frame of twisted
/// solutions u(gamma z) gamma'(z)^(-1/2) at z0, followed by the seed basis.
MobiusMap monodromy_from_transport(const Mat2& t, const MobiusMap& gamma, cplx z0);

/// Monodromy of u'' + phi u / 2 = 0 for one group element, integrated along
/// the geodesic from z0 to gamma z0.
MobiusMap monodromy(const PhiField& phi, const MobiusMap& gamma, cplx z0, const TransportOptions& opt = {});

struct HolonomyOptions {
    TransportOptions transport{};
    double relator_tol = 1e-6;
    double equivariance_tol = 1e-4;
    bool check_equivariance = true;
};

/// Holonomy of the structure with Schwarzian phi (an invariant differential).
Representation holonomy_rep(const MarkedGroup& g, const PhiField& phi, std::vector<cplx> c = {},
                            const HolonomyOptions& opt = {});

/// phi = sum_k c_k basis.normalized[k].
PhiField combine(const DiffBasis& basis, std::span<const cplx> c);
Representation holonomy_rep(const MarkedGroup& g, const DiffBasis& basis, std::span<const cplx> c,
                            const HolonomyOptions& opt = {});

/// The normalized Bolza basis at truncation 8 (built once).
const DiffBasis& default_basis();

/// Recorded generator transports for a family phi = sum_k c_k basis.normalized[k];
/// evaluation at c replays the recorded steps.
class MonodromyPlan {
public:
    /// Steps are adapted to the design coefficients.
    MonodromyPlan(const MarkedGroup& g, const DiffBasis& basis, std::span<const cplx> design,
                  const TransportOptions& opt = {});

    Representation at(std::span<const cplx> c) const;
    int total_steps() const;

private:
    MarkedGroup group_;
    std::vector<TransportPlan> plans_;
};

struct HolomorphyResidual {
    double dbar = 0.0;  // |dF/dcbar|
    double d = 0.0;     // |dF/dc|
};

/// Four-point stencil on F(c) = tr^2 rho_{c e_k}(word) at c0.
HolomorphyResidual holomorphy_residual(const MarkedGroup& g, const DiffBasis& basis, int k, cplx c0, const Word& word,
                                       double h = 1e-4, const HolonomyOptions& opt = {});
/// All catalog words at once (one set of transports per stencil point).
std::array<HolomorphyResidual, Character::kWords> holomorphy_residuals(const MarkedGroup& g, const DiffBasis& basis,
                                                                        int k, cplx c0, double h = 1e-4,
                                                                        const HolonomyOptions& opt = {});

struct HolonomyRecord {
    std::vector<cplx> c;
    Character character;
    double relator_defect = 0.0;
    double transport_tol = 0.0;
    double relator_tol = 0.0;
};

HolonomyRecord make_record(const Representation& r, const HolonomyOptions& opt = {});

}  // namespace cp1lab
