#pragma once

// An explicit cocompact genus-2 Fuchsian group (the Bolza group, from the
// regular octagon with angles pi/4) with word evaluation, element
// enumeration and the lifts of closed geodesics.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cp1lab/moebius.hpp"

namespace cp1lab {

/// Signed generator indices: 1 = a1, 2 = b1, 3 = a2, 4 = b2; negative = inverse.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters);
    explicit Word(std::vector<int> letters);

    const std::vector<int>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const;
    Word operator*(const Word& other) const;  // concatenation, freely reduced
    /// Cyclic shift by k letters (k taken mod length).
    Word rotated(std::size_t k) const;
    Word power(int n) const;

    bool operator==(const Word& other) const = default;

    /// "a1 b1 A1 B1" style; capital letter = inverse.
    std::string to_string() const;
    static Word parse(const std::string& text);

private:
    friend Word freely_reduced(std::vector<int> letters);
    std::vector<int> letters_;
};

Word freely_reduced(std::vector<int> letters);
Word commutator(const Word& x, const Word& y);

inline constexpr int kGenerators = 4;
/// Deterministic letter order used by enumeration: a1, A1, b1, B1, a2, A2, b2, B2.
inline constexpr std::array<int, 8> kLetterOrder{1, -1, 2, -2, 3, -3, 4, -4};

struct MarkedGroup {
    std::array<MobiusMap, kGenerators> gens;  // a1, b1, a2, b2
    Word relator;
    cplx basepoint{0.0, 1.0};
    /// Side pairings of the fundamental octagon (H coordinates), in pairs
    /// (s, s^-1); s_k maps the side opposite to side k onto side k. Empty for
    /// groups without a known fundamental domain.
    std::vector<MobiusMap> side_pairings;

    MobiusMap generator(int letter) const;
};

/// Fixed letters for the standard generators expressed in the octagon side
/// pairings g1..g4 (g_k = R^(k-1) g0 R^-(k-1)).
struct BolzaConversion {
    static const std::array<std::vector<int>, kGenerators>& words();
};

MarkedGroup bolza_group();

/// Geometry of the regular octagon in the unit disk (the Bolza fundamental domain).
struct OctagonGeometry {
    double inradius;         // hyperbolic distance center -> side midpoint
    double midpoint_radius;  // Euclidean |w| of side midpoints
    double vertex_radius;    // Euclidean |w| of vertices
    double side_center;      // Euclidean distance from 0 to the side circle's center
    double side_radius;      // radius of the side circle
    /// Disk side pairings g_k (k = 0..3) mapping the side at angle k pi/4 + pi
    /// onto the side at angle k pi/4.
    std::array<MobiusMap, 4> disk_pairings;
};
const OctagonGeometry& octagon_geometry();

/// Radius of the octagon boundary along the ray at angle theta.
double octagon_boundary_radius(double theta);
bool in_octagon_disk(cplx w, double slack = 1e-12);

MobiusMap evaluate_word(const MarkedGroup& g, const Word& w);

/// 2 arccosh(|tr| / 2) for loxodromic images; uses the complex length for
/// non-real traces.
double geodesic_length(const MarkedGroup& g, const Word& w);

/// Elementary test for a pair of maps: shared fixed point or commutator trace 2.
bool is_elementary_pair(const MobiusMap& x, const MobiusMap& y, double tol = 1e-9);

// ------------------------------------------------------------ enumeration

/// All group elements up to a word length, deduplicated, in shortlex order of
/// their representative words. Stored as a parent tree so words and matrices
/// can be rebuilt cheaply.
class ElementTable {
public:
    std::size_t size() const { return parent_.size(); }
    int max_length() const { return max_length_; }

    int length(std::size_t i) const { return length_[i]; }
    int last_letter(std::size_t i) const { return letter_[i]; }
    std::int32_t parent(std::size_t i) const { return parent_[i]; }
    Word word(std::size_t i) const;
    MobiusMap matrix(std::size_t i) const;

    struct RealMatrix {
        double a, b, c, d;
    };
    const std::vector<RealMatrix>& matrices() const { return matrices_; }
    /// Index range [begin, end) of elements with word length n.
    std::pair<std::size_t, std::size_t> sphere(int n) const;

    /// Index range of the children of i (children are contiguous).
    std::pair<std::size_t, std::size_t> children(std::size_t i) const;

private:
    friend ElementTable enumerate_elements(const MarkedGroup& g, int max_len);
    std::vector<std::int32_t> parent_;
    std::vector<std::int8_t> letter_;
    std::vector<std::uint8_t> length_;
    std::vector<RealMatrix> matrices_;
    std::vector<std::size_t> sphere_start_;
    int max_length_ = 0;
};

/// Breadth-first enumeration over the (real) group matrices. Elements are
/// identified when min(|M - N|, |M + N|) <= 1e-8 max(1, |M|) (max-entry norm);
/// candidates are only compared inside a narrow window of their orbit point.
ElementTable enumerate_elements(const MarkedGroup& g, int max_len);

/// Shared, lazily built tables for the Bolza group; thread-safe.
std::shared_ptr<const ElementTable> bolza_elements(int max_len);

/// Evaluate a representation given by generator images on every element of
/// a table (same index order).
std::vector<MobiusMap> evaluate_table(const ElementTable& table, const std::array<MobiusMap, kGenerators>& images);

/// Depth-first visit of the images of all elements up to max_len, without
/// materializing them; memory is O(max_len).
void for_each_image(const ElementTable& table, const std::array<MobiusMap, kGenerators>& images, int max_len,
                    const std::function<void(std::size_t, const MobiusMap&)>& visit);

// ------------------------------------------------------------------ lifts

struct GeodesicAxis {
    ComplexPoint from;  // repelling endpoint for an axis of an element
    ComplexPoint to;    // attracting endpoint
    double translation_length = 0.0;
};

GeodesicAxis axis_of(const MobiusMap& m);

struct SeparatingLift {
    GeodesicAxis axis;      // oriented so the segment's end point lies to the right
    double crossing = 0.0;  // arclength fraction along the segment
    std::size_t coset_index = 0;  // index of the coset representative h in the table
};

/// Lifts h.axis(gamma) that separate x from y, ordered along the segment
/// from x to y. Throws DomainError("basepoint on lift, perturb") if x or y is
/// within 1e-10 of a candidate lift.
std::vector<SeparatingLift> separating_lifts(const MarkedGroup& g, const Word& gamma, cplx x, cplx y,
                                             int max_len);

/// The same computation against a precomputed table (must cover max_len).
std::vector<SeparatingLift> separating_lifts(const MarkedGroup& g, const ElementTable& table, const Word& gamma,
                                             cplx x, cplx y, int max_len);

/// The lifts h.axis(gamma) over the elements h of a table up to max_len, with
/// normalizers precomputed for repeated separation queries.
class LiftSet {
public:
    LiftSet(const MarkedGroup& g, std::shared_ptr<const ElementTable> table, const Word& gamma, int max_len);

    /// Same contract as separating_lifts, restricted to |h| <= max_len.
    std::vector<SeparatingLift> separating(cplx x, cplx y, int max_len) const;
    int max_length() const { return max_len_; }

private:
    struct Entry {
        ComplexPoint from, to;
        MobiusMap normalizer;
    };
    std::shared_ptr<const ElementTable> table_;
    std::vector<Entry> entries_;
    double translation_length_ = 0.0;
    int max_len_ = 0;
};

/// Shipped simple closed curves: the separating [a1, b1] and the nonseparating a1.
struct CurveSpec {
    std::string name;
    Word word;
    bool separating;
};
const std::vector<CurveSpec>& simple_curve_catalog();
const CurveSpec& find_curve(const std::string& name);

}  // namespace cp1lab
