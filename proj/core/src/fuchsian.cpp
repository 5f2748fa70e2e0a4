#include "cp1lab/fuchsian.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "cp1lab/hyperbolic.hpp"

namespace cp1lab {

// ------------------------------------------------------------------- Word

Word::Word(std::initializer_list<int> letters) : Word(std::vector<int>(letters)) {}

Word::Word(std::vector<int> letters) {
    for (int x : letters)
        if (x == 0 || std::abs(x) > kGenerators) throw DomainError("Word: generator index out of range");
    letters_ = freely_reduced(std::move(letters)).letters_;
}

Word freely_reduced(std::vector<int> letters) {
    std::vector<int> out;
    out.reserve(letters.size());
    for (int x : letters) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    Word w;
    w.letters_ = std::move(out);
    return w;
}

Word Word::inverse() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    for (int& x : out) x = -x;
    return Word(std::move(out));
}

Word Word::operator*(const Word& other) const {
    std::vector<int> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return freely_reduced(std::move(out));
}

Word Word::rotated(std::size_t k) const {
    if (letters_.empty()) return *this;
    std::vector<int> out = letters_;
    std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
    return freely_reduced(std::move(out));
}

Word Word::power(int n) const {
    Word base = n >= 0 ? *this : inverse();
    Word out;
    for (int i = 0; i < std::abs(n); ++i) out = out * base;
    return out;
}

std::string Word::to_string() const {
    static const char* names[] = {"", "a1", "b1", "a2", "b2"};
    static const char* inv_names[] = {"", "A1", "B1", "A2", "B2"};
    std::string s;
    for (int x : letters_) {
        if (!s.empty()) s += ' ';
        s += x > 0 ? names[x] : inv_names[-x];
    }
    return s.empty() ? "1" : s;
}

Word Word::parse(const std::string& text) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == ',') {
            ++i;
            continue;
        }
        if (ch == '1' && (i + 1 == text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            ++i;
            continue;
        }
        if (i + 1 >= text.size()) throw DomainError("Word::parse: dangling letter in '" + text + "'");
        const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        const char idx = text[i + 1];
        if ((lower != 'a' && lower != 'b') || (idx != '1' && idx != '2'))
            throw DomainError("Word::parse: bad letter in '" + text + "'");
        int g = (idx == '1' ? 1 : 3) + (lower == 'b' ? 1 : 0);
        out.push_back(std::isupper(static_cast<unsigned char>(ch)) ? -g : g);
        i += 2;
    }
    return Word(std::move(out));
}

Word commutator(const Word& x, const Word& y) { return x * y * x.inverse() * y.inverse(); }

// ------------------------------------------------------------ Bolza group

namespace {

using cld = std::complex<long double>;

struct Mat2L {
    cld a, b, c, d;
    Mat2L operator*(const Mat2L& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2L inverse() const { return {d, -b, -c, a}; }
};

Mat2L rotation_l(int k) {
    const long double th = std::numbers::pi_v<long double> / 8.0L * k;
    const cld e = std::polar(1.0L, th);
    return {e, 0.0L, 0.0L, 1.0L / e};
}

Mat2L translation_l() {
    const long double ch = 1.0L + std::numbers::sqrt2_v<long double>;
    const long double sh = std::sqrt(ch * ch - 1.0L);
    return {ch, sh, sh, ch};
}

// Disk side pairings g_k = R^k g0 R^-k, k = 0..3.
std::array<Mat2L, 4> disk_pairings_l() {
    std::array<Mat2L, 4> out;
    const Mat2L g0 = translation_l();
    for (int k = 0; k < 4; ++k) out[k] = rotation_l(k) * g0 * rotation_l(-k);
    return out;
}

Mat2L cayley_l() {
    // w -> i (1 + w)/(1 - w), normalized to det 1 (det of [[i, i], [-1, 1]] is 2i).
    const cld s = std::sqrt(cld(0.0L, 2.0L));
    return {cld(0, 1) / s, cld(0, 1) / s, cld(-1, 0) / s, cld(1, 0) / s};
}

MobiusMap to_double_real(const Mat2L& m) {
    return MobiusMap(static_cast<double>(m.a.real()), static_cast<double>(m.b.real()),
                     static_cast<double>(m.c.real()), static_cast<double>(m.d.real()));
}

MobiusMap to_double(const Mat2L& m) {
    auto cv = [](cld z) { return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag())); };
    return MobiusMap(cv(m.a), cv(m.b), cv(m.c), cv(m.d));
}

}  // namespace

const std::array<std::vector<int>, kGenerators>& BolzaConversion::words() {
    // a1 = g4^-1, b1 = g1^-1, a2 = g2^-1 g3, b2 = g4^-1 g1^-1 g2; the product
    // [a1,b1][a2,b2] is trivial by the octagon relation g1 G2 g3 G4 G1 g2 G3 g4.
    static const std::array<std::vector<int>, kGenerators> w{
        std::vector<int>{-4}, std::vector<int>{-1}, std::vector<int>{-2, 3}, std::vector<int>{-4, -1, 2}};
    return w;
}

MobiusMap MarkedGroup::generator(int letter) const {
    const MobiusMap& m = gens.at(static_cast<std::size_t>(std::abs(letter) - 1));
    return letter > 0 ? m : m.inverse();
}

MarkedGroup bolza_group() {
    const auto disk = disk_pairings_l();
    const Mat2L cay = cayley_l();
    const Mat2L cay_inv = cay.inverse();
    std::array<Mat2L, 4> half;  // g1..g4 in H coordinates
    for (int k = 0; k < 4; ++k) {
        half[k] = cay * disk[k] * cay_inv;
        half[k].a = half[k].a.real();
        half[k].b = half[k].b.real();
        half[k].c = half[k].c.real();
        half[k].d = half[k].d.real();
    }
    auto letter = [&](int x) { return x > 0 ? half[x - 1] : half[-x - 1].inverse(); };

    MarkedGroup g;
    const auto& conv = BolzaConversion::words();
    for (int i = 0; i < kGenerators; ++i) {
        Mat2L m{1.0L, 0.0L, 0.0L, 1.0L};
        for (int x : conv[i]) m = m * letter(x);
        g.gens[i] = to_double_real(m);
    }
    g.relator = commutator(Word{1}, Word{2}) * commutator(Word{3}, Word{4});
    g.basepoint = cplx(0.0, 1.0);
    for (int k = 0; k < 4; ++k) {
        g.side_pairings.push_back(to_double_real(half[k]));
        g.side_pairings.push_back(to_double_real(half[k].inverse()));
    }
    return g;
}

const OctagonGeometry& octagon_geometry() {
    static const OctagonGeometry geo = [] {
        OctagonGeometry o{};
        const double ch = 1.0 + std::numbers::sqrt2;
        o.inradius = std::acosh(ch);
        o.midpoint_radius = std::tanh(o.inradius / 2.0);
        o.vertex_radius = std::tanh(std::acosh(ch * ch) / 2.0);
        const double m = o.midpoint_radius;
        o.side_center = (1.0 + m * m) / (2.0 * m);
        o.side_radius = (1.0 - m * m) / (2.0 * m);
        const auto disk = disk_pairings_l();
        for (int k = 0; k < 4; ++k) o.disk_pairings[k] = to_double(disk[k]);
        return o;
    }();
    return geo;
}

double octagon_boundary_radius(double theta) {
    const double step = std::numbers::pi / 4.0;
    const double phi = theta - step * std::round(theta / step);
    const double x0 = octagon_geometry().side_center;
    const double c = x0 * std::cos(phi);
    return c - std::sqrt(c * c - 1.0);
}

bool in_octagon_disk(cplx w, double slack) {
    if (std::abs(w) == 0.0) return true;
    return std::abs(w) <= octagon_boundary_radius(std::arg(w)) + slack;
}

MobiusMap evaluate_word(const MarkedGroup& g, const Word& w) {
    MobiusMap m;
    for (int x : w.letters()) m = m * g.generator(x);
    return m;
}

double geodesic_length(const MarkedGroup& g, const Word& w) {
    const MobiusMap m = evaluate_word(g, w);
    const MobiusClass cls = classify(m);
    if (cls.kind != MobiusKind::loxodromic)
        throw DomainError("geodesic_length: no geodesic representative (" + std::string(to_string(cls.kind)) + ")");
    const cplx tr = m.trace();
    if (std::abs(tr.imag()) <= 1e-12 * std::abs(tr)) return 2.0 * std::acosh(std::abs(tr.real()) / 2.0);
    return 2.0 * std::abs(std::acosh(tr / 2.0).real());
}

bool is_elementary_pair(const MobiusMap& x, const MobiusMap& y, double tol) {
    if (x.distance_from_identity() <= tol || y.distance_from_identity() <= tol) return true;
    const cplx trc = (x * y * x.inverse() * y.inverse()).trace();
    if (std::abs(trc - 2.0) <= tol) return true;
    const auto fx = fixed_points(x), fy = fixed_points(y);
    for (const auto& p : fx)
        for (const auto& q : fy)
            if (p.chordal_distance(q) <= tol) return true;
    return false;
}

// ------------------------------------------------------------ enumeration

Word ElementTable::word(std::size_t i) const {
    std::vector<int> out(length_[i]);
    std::size_t k = out.size();
    while (i != 0) {
        out[--k] = letter_[i];
        i = static_cast<std::size_t>(parent_[i]);
    }
    return Word(std::move(out));
}

MobiusMap ElementTable::matrix(std::size_t i) const {
    const auto& m = matrices_[i];
    return MobiusMap(m.a, m.b, m.c, m.d);
}

std::pair<std::size_t, std::size_t> ElementTable::sphere(int n) const {
    if (n < 0 || n > max_length_) return {size(), size()};
    return {sphere_start_[n], sphere_start_[n + 1]};
}

std::pair<std::size_t, std::size_t> ElementTable::children(std::size_t i) const {
    const int n = length_[i];
    if (n >= max_length_) return {size(), size()};
    const auto [lo, hi] = sphere(n + 1);
    const auto first = parent_.begin();
    const auto b = std::lower_bound(first + static_cast<std::ptrdiff_t>(lo), first + static_cast<std::ptrdiff_t>(hi),
                                    static_cast<std::int32_t>(i));
    const auto e = std::upper_bound(b, first + static_cast<std::ptrdiff_t>(hi), static_cast<std::int32_t>(i));
    return {static_cast<std::size_t>(b - first), static_cast<std::size_t>(e - first)};
}

namespace {

using RM = ElementTable::RealMatrix;

RM mul(const RM& x, const RM& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// Normalized PSL2 distance min(|x - y|, |x + y|) / max(1, |x|) in the max-entry norm.
double psl2_gap(const RM& x, const RM& y) {
    const double minus = std::max(std::max(std::abs(x.a - y.a), std::abs(x.b - y.b)),
                                  std::max(std::abs(x.c - y.c), std::abs(x.d - y.d)));
    const double plus = std::max(std::max(std::abs(x.a + y.a), std::abs(x.b + y.b)),
                                 std::max(std::abs(x.c + y.c), std::abs(x.d + y.d)));
    const double scale = std::max({1.0, std::abs(x.a), std::abs(x.b), std::abs(x.c), std::abs(x.d)});
    return std::min(minus, plus) / scale;
}

// Real part of the disk image of the orbit point m(i); equal elements agree to rounding.
double orbit_key(const RM& m) {
    const cplx w = (cplx(0, m.a) + m.b) / (cplx(0, m.c) + m.d);
    const cplx u = (w - cplx(0, 1)) / (w + cplx(0, 1));
    return u.real();
}

}  // namespace

ElementTable enumerate_elements(const MarkedGroup& g, int max_len) {
    if (max_len < 0) throw DomainError("enumerate_elements: max_len must be >= 0");
    for (const auto& m : g.gens)
        if (!m.is_real(1e-12)) throw DomainError("enumerate_elements: generators must be real (Fuchsian)");

    std::array<RM, 9> gen{};
    for (int x : kLetterOrder) {
        const MobiusMap m = g.generator(x);
        gen[static_cast<std::size_t>(x + 4)] = {m.a().real(), m.b().real(), m.c().real(), m.d().real()};
    }

    ElementTable t;
    t.max_length_ = max_len;
    t.parent_.push_back(0);
    t.letter_.push_back(0);
    t.length_.push_back(0);
    t.matrices_.push_back({1.0, 0.0, 0.0, 1.0});
    t.sphere_start_ = {0, 1};

    constexpr double kWindow = 1e-9;
    constexpr double kSameElement = 1e-8;

    struct Candidate {
        RM m;
        std::int32_t parent;
        std::int8_t letter;
    };
    for (int n = 1; n <= max_len; ++n) {
        const std::size_t lo = t.sphere_start_[n - 1], hi = t.sphere_start_[n];
        std::vector<Candidate> cand;
        cand.reserve((hi - lo) * 7);
        for (std::size_t i = lo; i < hi; ++i) {
            for (int x : kLetterOrder) {
                if (x == -t.letter_[i] && n > 1) continue;
                cand.push_back({mul(t.matrices_[i], gen[static_cast<std::size_t>(x + 4)]),
                                static_cast<std::int32_t>(i), static_cast<std::int8_t>(x)});
            }
        }
        // Pool: spheres n-2 and n-1 (earlier elements) followed by candidates in BFS order.
        const std::size_t old_lo = n >= 2 ? t.sphere_start_[n - 2] : 0;
        const std::size_t n_old = hi - old_lo;
        struct Key {
            double key;
            std::uint32_t pool;
        };
        std::vector<Key> keys;
        keys.reserve(n_old + cand.size());
        for (std::size_t i = old_lo; i < hi; ++i)
            keys.push_back({orbit_key(t.matrices_[i]), static_cast<std::uint32_t>(i - old_lo)});
        for (std::size_t j = 0; j < cand.size(); ++j)
            keys.push_back({orbit_key(cand[j].m), static_cast<std::uint32_t>(n_old + j)});
        std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
            return x.key < y.key || (x.key == y.key && x.pool < y.pool);
        });
        auto pool_matrix = [&](std::uint32_t p) -> const RM& {
            return p < n_old ? t.matrices_[old_lo + p] : cand[p - n_old].m;
        };
        std::vector<char> duplicate(cand.size(), 0);
        for (std::size_t i = 0; i < keys.size(); ++i) {
            for (std::size_t j = i + 1; j < keys.size() && keys[j].key - keys[i].key <= kWindow; ++j) {
                const std::uint32_t pi = keys[i].pool, pj = keys[j].pool;
                if (pi < n_old && pj < n_old) continue;
                if (psl2_gap(pool_matrix(pi), pool_matrix(pj)) <= kSameElement) {
                    const std::uint32_t later = std::max(pi, pj);
                    duplicate[later - n_old] = 1;
                }
            }
        }
        for (std::size_t j = 0; j < cand.size(); ++j) {
            if (duplicate[j]) continue;
            t.parent_.push_back(cand[j].parent);
            t.letter_.push_back(cand[j].letter);
            t.length_.push_back(static_cast<std::uint8_t>(n));
            t.matrices_.push_back(cand[j].m);
        }
        t.sphere_start_.push_back(t.parent_.size());
    }
    return t;
}

std::shared_ptr<const ElementTable> bolza_elements(int max_len) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const ElementTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(max_len);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<const ElementTable>(enumerate_elements(bolza_group(), max_len));
    cache.emplace(max_len, table);
    return table;
}

std::vector<MobiusMap> evaluate_table(const ElementTable& table, const std::array<MobiusMap, kGenerators>& images) {
    std::array<MobiusMap, 9> gen;
    for (int x : kLetterOrder) {
        const MobiusMap& m = images[static_cast<std::size_t>(std::abs(x) - 1)];
        gen[static_cast<std::size_t>(x + 4)] = x > 0 ? m : m.inverse();
    }
    std::vector<MobiusMap> out(table.size());
    for (std::size_t i = 1; i < table.size(); ++i)
        out[i] = out[static_cast<std::size_t>(table.parent(i))] * gen[static_cast<std::size_t>(table.last_letter(i) + 4)];
    return out;
}

void for_each_image(const ElementTable& table, const std::array<MobiusMap, kGenerators>& images, int max_len,
                    const std::function<void(std::size_t, const MobiusMap&)>& visit) {
    if (max_len > table.max_length()) throw DomainError("for_each_image: table shorter than max_len");
    std::array<MobiusMap, 9> gen;
    for (int x : kLetterOrder) {
        const MobiusMap& m = images[static_cast<std::size_t>(std::abs(x) - 1)];
        gen[static_cast<std::size_t>(x + 4)] = x > 0 ? m : m.inverse();
    }
    struct Frame {
        std::size_t index;
        MobiusMap value;
    };
    std::vector<Frame> stack{{0, MobiusMap{}}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        visit(f.index, f.value);
        if (table.length(f.index) >= max_len) continue;
        const auto [lo, hi] = table.children(f.index);
        for (std::size_t c = hi; c-- > lo;)
            stack.push_back({c, f.value * gen[static_cast<std::size_t>(table.last_letter(c) + 4)]});
    }
}

// ------------------------------------------------------------------ lifts

GeodesicAxis axis_of(const MobiusMap& m) {
    const LoxodromicAxis fp = loxodromic_fixed_points(m);
    const cplx tr = m.trace();
    double len = 2.0 * std::abs(std::acosh(tr / 2.0).real());
    return {fp.repelling, fp.attracting, len};
}

std::vector<SeparatingLift> separating_lifts(const MarkedGroup& g, const Word& gamma, cplx x, cplx y, int max_len) {
    const ElementTable table = enumerate_elements(g, max_len);
    return separating_lifts(g, table, gamma, x, y, max_len);
}

std::vector<SeparatingLift> separating_lifts(const MarkedGroup& g, const ElementTable& table, const Word& gamma,
                                             cplx x, cplx y, int max_len) {
    if (max_len > table.max_length()) throw DomainError("separating_lifts: table shorter than max_len");
    const std::shared_ptr<const ElementTable> view(&table, [](const ElementTable*) {});
    return LiftSet(g, view, gamma, max_len).separating(x, y, max_len);
}

LiftSet::LiftSet(const MarkedGroup& g, std::shared_ptr<const ElementTable> table, const Word& gamma, int max_len)
    : table_(std::move(table)), max_len_(max_len) {
    if (max_len > table_->max_length()) throw DomainError("separating_lifts: table shorter than max_len");
    const GeodesicAxis base = axis_of(evaluate_word(g, gamma));
    translation_length_ = base.translation_length;
    const std::size_t end = table_->sphere(max_len).second;
    entries_.reserve(end);
    for (std::size_t i = 0; i < end; ++i) {
        const MobiusMap h = table_->matrix(i);
        const ComplexPoint p = h.apply(base.from), q = h.apply(base.to);
        entries_.push_back({p, q, geodesic_normalizer(p, q)});
    }
}

std::vector<SeparatingLift> LiftSet::separating(cplx x, cplx y, int max_len) const {
    if (x.imag() <= 0.0 || y.imag() <= 0.0) throw DomainError("separating_lifts: points must lie in H");
    if (max_len > max_len_) throw DomainError("separating_lifts: lift set shorter than max_len");
    std::vector<SeparatingLift> out;
    if (std::abs(x - y) <= 1e-14 * (1.0 + std::abs(x))) return out;

    auto side = [](const MobiusMap& n, cplx z) {
        const ComplexPoint image = n.apply(z);
        if (image.is_infinite(1e-300)) return 0.0;
        const cplx v = image.value();
        return v.real() / std::abs(v);
    };
    constexpr double kTie = 1e-10;
    const std::size_t end = table_->sphere(max_len).second;
    for (std::size_t i = 0; i < end; ++i) {
        const Entry& e = entries_[i];
        const double sx = side(e.normalizer, x);
        const double sy = side(e.normalizer, y);
        if (std::abs(sx) < kTie || std::abs(sy) < kTie) throw DomainError("separating_lifts: basepoint on lift, perturb");
        if ((sx > 0.0) == (sy > 0.0)) continue;
        ComplexPoint p = e.from, q = e.to;
        if (sy < 0.0) std::swap(p, q);
        // h and h gamma^k give the same lift; for long h the endpoints carry
        // errors ~1e-7, while distinct lifts crossing a bounded segment are far apart.
        bool seen = false;
        for (const auto& l : out)
            if (l.axis.from.chordal_distance(p) < 1e-6 && l.axis.to.chordal_distance(q) < 1e-6) seen = true;
        if (seen) continue;
        out.push_back({{p, q, translation_length_}, 0.0, i});
    }
    const GeodesicSegment seg(x, y);
    for (auto& l : out) {
        const MobiusMap n = geodesic_normalizer(l.axis.from, l.axis.to);
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 64; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (side(n, seg.at(mid)) > 0.0)
                hi = mid;
            else
                lo = mid;
        }
        l.crossing = 0.5 * (lo + hi);
    }
    std::sort(out.begin(), out.end(), [](const SeparatingLift& a, const SeparatingLift& b) {
        return a.crossing < b.crossing || (a.crossing == b.crossing && a.coset_index < b.coset_index);
    });
    return out;
}

const std::vector<CurveSpec>& simple_curve_catalog() {
    static const std::vector<CurveSpec> catalog{
        {"sep", commutator(Word{1}, Word{2}), true},
        {"nonsep", Word{1}, false},
    };
    return catalog;
}

const CurveSpec& find_curve(const std::string& name) {
    for (const auto& c : simple_curve_catalog())
        if (c.name == name) return c;
    if (name == "separating" || name == "[a1,b1]") return simple_curve_catalog()[0];
    if (name == "nonseparating" || name == "a1") return simple_curve_catalog()[1];
    throw DomainError("unknown curve '" + name + "' (catalog: sep, nonsep)");
}

}  // namespace cp1lab
