#pragma once

#include "lensgrid/grid.hpp"
#include "lensgrid/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

namespace lensgrid {

// One bit per row (first n) and per column annulus (next n).
// Row bit 0: the horizontal arc that does not cross the left/right seam.
// Column bit 0: the vertical arc crossing the top gluing fewer times (upward on ties).
struct RoutingChoice {
    std::vector<std::uint8_t> bits;

    static RoutingChoice from_mask(int n, std::uint64_t mask) {
        RoutingChoice r;
        for (int i = 0; i < 2 * n; ++i) r.bits.push_back(static_cast<std::uint8_t>((mask >> i) & 1U));
        return r;
    }
};

struct HArc {
    int row = 0;
    int from = 0, to = 0;  // X cell -> O cell
    int disp = 0;          // signed length in cells, east positive
    bool crosses_seam = false;
    std::vector<int> interior;  // cells strictly between the endpoints
};

struct VArc {
    int annulus = 0;
    int from_row = 0, from_cell = 0;  // O
    int to_row = 0, to_cell = 0;      // X
    int disp = 0;                     // signed length in rows, up positive
    int seam_crossings = 0;
    std::vector<std::pair<int, int>> interior;  // (row, cell) strictly between
};

struct RectCorner {
    int row = 0, cell = 0;
    Marking marking = Marking::O;
    Compass compass = Compass::NE;
    int component = 0;
};

struct RectCrossing {
    int row = 0, cell = 0;
    int h = 0;  // index into hs (the row)
    int v = 0;  // index into vs (the annulus)
    int sign = 0;
};

// Arcs on the fundamental rectangle of the dual-view diagram; vertical strands pass over.
struct Rectilinear {
    GridDiagram view;
    RoutingChoice routing;
    std::vector<HArc> hs;  // indexed by row (empty arc for coincident rows)
    std::vector<VArc> vs;  // indexed by annulus
    std::vector<RectCorner> corners;
    std::vector<RectCrossing> crossings;
    std::vector<int> trivial_rows;
    std::vector<int> component_of_row;
    int component_count = 0;
};

namespace detail {
// Walk one step up (dir = +1) or down along a column annulus of the view.
inline std::pair<int, int> vstep(const GridDiagram& g, int row, int cell, int dir, bool& wrapped) {
    const int n = g.n, W = g.width();
    const long long qn = 1LL * g.params.q * n;
    wrapped = false;
    if (dir > 0) {
        if (row < n - 1) return {row + 1, cell};
        wrapped = true;
        return {0, mod(cell - qn, W)};
    }
    if (row > 0) return {row - 1, cell};
    wrapped = true;
    return {n - 1, mod(cell + qn, W)};
}
}  // namespace detail

inline Rectilinear rectilinear(const GridDiagram& g, const RoutingChoice& routing) {
    require_valid(g);
    if (static_cast<int>(routing.bits.size()) != 2 * g.n)
        throw Error(ErrorCode::BadRoutingLength, "routing has " + std::to_string(routing.bits.size()) +
                                                    " bits, expected " + std::to_string(2 * g.n));
    Rectilinear R;
    R.view = dual(g);
    R.routing = routing;
    const GridDiagram& D = R.view;
    const int n = D.n, W = D.width();
    auto comps = components(D);
    R.component_of_row = component_of_row(comps, n);
    R.component_count = static_cast<int>(comps.size());

    R.hs.resize(n);
    for (int r = 0; r < n; ++r) {
        HArc& h = R.hs[r];
        h.row = r;
        h.from = D.x[r];
        h.to = D.o[r];
        if (h.from == h.to) {
            R.trivial_rows.push_back(r);
            continue;
        }
        int direct = h.to - h.from;  // stays inside [0, W)
        if (routing.bits[r] == 0) {
            h.disp = direct;
        } else {
            h.disp = direct > 0 ? direct - W : direct + W;
            h.crosses_seam = true;
        }
        int dir = sgn(h.disp);
        for (int k = 1; k < std::abs(h.disp); ++k) h.interior.push_back(mod(h.from + dir * k, W));
    }

    std::vector<int> o_row(n), x_row(n);
    for (int r = 0; r < n; ++r) {
        o_row[D.o[r] % n] = r;
        x_row[D.x[r] % n] = r;
    }
    R.vs.resize(n);
    for (int i = 0; i < n; ++i) {
        VArc& v = R.vs[i];
        v.annulus = i;
        v.from_row = o_row[i];
        v.from_cell = D.o[v.from_row];
        v.to_row = x_row[i];
        v.to_cell = D.x[v.to_row];
        if (v.from_row == v.to_row && v.from_cell == v.to_cell) continue;
        auto walk = [&](int dir, std::vector<std::pair<int, int>>* cells) {
            int r = v.from_row, c = v.from_cell, steps = 0, wraps = 0;
            while (true) {
                bool w = false;
                std::tie(r, c) = detail::vstep(D, r, c, dir, w);
                wraps += w;
                ++steps;
                if (r == v.to_row && c == v.to_cell) break;
                if (cells) cells->push_back({r, c});
            }
            return std::pair<int, int>{steps, wraps};
        };
        auto [up_steps, up_wraps] = walk(+1, nullptr);
        int down_wraps = D.params.p - up_wraps;
        int preferred = up_wraps <= down_wraps ? +1 : -1;
        int dir = routing.bits[n + i] == 0 ? preferred : -preferred;
        auto [steps, wraps] = walk(dir, &v.interior);
        (void)up_steps;
        v.disp = dir * steps;
        v.seam_crossings = wraps;
    }

    std::vector<int> vmap(static_cast<size_t>(n) * W, -1);
    for (int i = 0; i < n; ++i)
        for (auto [r, c] : R.vs[i].interior) vmap[static_cast<size_t>(r) * W + c] = i;
    for (int r = 0; r < n; ++r)
        for (int c : R.hs[r].interior) {
            int i = vmap[static_cast<size_t>(r) * W + c];
            if (i < 0) continue;
            // sign of cross(over, under): over vertical (0, vd), under horizontal (hd, 0)
            R.crossings.push_back({r, c, r, i, -sgn(R.vs[i].disp) * sgn(R.hs[r].disp)});
        }

    for (int r = 0; r < n; ++r) {
        if (R.hs[r].disp == 0) continue;
        int comp = R.component_of_row[r];
        const HArc& h = R.hs[r];
        const VArc& vx = R.vs[D.x[r] % n];
        const VArc& vo = R.vs[D.o[r] % n];
        R.corners.push_back({r, D.x[r], Marking::X, corner_from_arms(h.disp > 0, vx.disp < 0), comp});
        R.corners.push_back({r, D.o[r], Marking::O, corner_from_arms(h.disp < 0, vo.disp > 0), comp});
    }
    return R;
}

inline long long total_horizontal(const Rectilinear& R) {
    long long s = 0;
    for (const auto& h : R.hs) s += h.disp;
    return s;
}
inline long long total_vertical(const Rectilinear& R) {
    long long s = 0;
    for (const auto& v : R.vs) s += v.disp;
    return s;
}

// ---- toroidal fronts ------------------------------------------------------------

struct Point {
    Rational x, y;
};

struct FrontSegment {
    bool column_adjacent = false;
    int line = 0;  // row, or column annulus
    int component = 0;
    Rational slope;  // d(theta2)/d(theta1)
    int direction = 1;
    int length = 0;
    Point start, end;                               // smoothed endpoints, unwrapped
    std::vector<std::pair<Point, Point>> pieces;    // inside the fundamental rectangle
};

struct FrontCorner {
    Point at;
    Marking marking = Marking::O;
    Compass compass = Compass::NE;
    bool cusp = false;
    int component = 0;
};

struct FrontCrossing {
    Point at;
    int a = 0, b = 0;          // segment indices
    int over = -1, under = -1;  // filled by front_crossings
    int sign = 0;
};

struct Front {
    LensParams params;
    int n = 1;
    std::vector<FrontSegment> segments;
    std::vector<std::vector<int>> component_segments;  // cyclic order per component
    std::vector<FrontCorner> corners;
    std::vector<FrontCrossing> crossings;
    int trivial_count = 0;
    long long H = 0, V = 0;  // total signed displacement (cells, rows)
    bool planar_supported = false;  // no arc meets a seam
};

inline const Rational kSmoothing = Rational(1, 8);

// Over-strand selection: the more negative slope lies in front.
inline int over_strand(const Rational& m1, const Rational& m2) {
    if (m1 == m2) throw Error(ErrorCode::TangentialCrossing, "strands of equal slope " + m1.str() + " meet");
    return m1 < m2 ? 0 : 1;
}

inline Rational depth_squared(const Rational& m) {
    if (m >= Rational(0)) throw Error(ErrorCode::SlopeOutOfRange, "slope " + m.str() + " is not negative");
    return m / (m - Rational(1));
}

inline double depth(const Rational& m) {
    Rational r2 = depth_squared(m);
    return std::sqrt(static_cast<double>(r2.num()) / static_cast<double>(r2.den()));
}

namespace detail {
inline Rational half(int v) { return Rational(2 * v + 1, 2); }  // cell centre

// Split an unwrapped horizontal segment (a.x inside [0, W)) at the left/right seam.
inline std::vector<std::pair<Point, Point>> split_h(Point a, Point b, int W) {
    std::vector<std::pair<Point, Point>> out;
    const Rational w(W), zero(0);
    const Rational slope = (b.y - a.y) / (b.x - a.x);
    while (b.x > w || b.x < zero) {
        Rational cut = b.x > w ? w : zero;
        Point m{cut, a.y + slope * (cut - a.x)};
        if (m.x != a.x) out.push_back({a, m});
        Rational jump = b.x > w ? -w : w;
        a = {m.x + jump, m.y};
        b = {b.x + jump, b.y};
    }
    out.push_back({a, b});
    return out;
}
}  // namespace detail

// Smooth each corner: NW and SE corners become cusps, NE and SW corners get rounded.
// Row-adjacent strands tilt by the smoothing offset over their length (slope in [-1,0)),
// column-adjacent strands lean the other way (slope in (-inf,-1]).
inline Front toroidal_front(const Rectilinear& R) {
    const GridDiagram& D = R.view;
    const int n = D.n, W = D.width();
    Front F;
    F.params = D.params;
    F.n = n;
    F.trivial_count = static_cast<int>(R.trivial_rows.size());
    F.H = total_horizontal(R);
    F.V = total_vertical(R);
    F.planar_supported = D.params.p == 1;
    std::vector<int> hseg(n, -1), vseg(n, -1);
    const Rational e = kSmoothing;
    for (int r = 0; r < n; ++r) {
        const HArc& h = R.hs[r];
        if (h.disp == 0) continue;
        FrontSegment s;
        s.column_adjacent = false;
        s.line = r;
        s.component = R.component_of_row[r];
        s.length = std::abs(h.disp);
        s.direction = sgn(h.disp);
        s.slope = -Rational(2) * e / Rational(s.length);
        s.start = {detail::half(h.from), detail::half(r) + e * Rational(s.direction)};
        s.end = {s.start.x + Rational(h.disp), detail::half(r) - e * Rational(s.direction)};
        s.pieces = detail::split_h(s.start, s.end, W);
        if (h.crosses_seam) F.planar_supported = false;
        hseg[r] = static_cast<int>(F.segments.size());
        F.segments.push_back(std::move(s));
    }
    for (int i = 0; i < n; ++i) {
        const VArc& v = R.vs[i];
        if (v.disp == 0) continue;
        FrontSegment s;
        s.column_adjacent = true;
        s.line = i;
        s.component = R.component_of_row[v.from_row];
        s.length = std::abs(v.disp);
        s.direction = sgn(v.disp);
        s.slope = -Rational(s.length) / (Rational(2) * e);
        s.start = {detail::half(v.from_cell) + e * Rational(s.direction), detail::half(v.from_row)};
        s.end = {detail::half(v.to_cell) - e * Rational(s.direction), detail::half(v.from_row) + Rational(v.disp)};
        // pieces: follow the annulus, one piece per sheet of the rectangle
        int r = v.from_row, c = v.from_cell;
        Rational x = s.start.x, y = s.start.y;
        Rational dx_per_row = Rational(1) / s.slope;
        for (int k = 0; k < s.length; ++k) {
            bool wrapped = false;
            auto [r2, c2] = detail::vstep(D, r, c, s.direction, wrapped);
            Rational ny = y + Rational(s.direction);
            Rational nx = x + dx_per_row * Rational(s.direction);
            if (wrapped) {
                Rational edge = s.direction > 0 ? Rational(n) : Rational(0);
                Rational ex = x + dx_per_row * (edge - y);
                s.pieces.push_back({{x, y}, {ex, edge}});
                Rational shift = Rational(c2 - c);
                y = s.direction > 0 ? Rational(0) : Rational(n);
                x = ex + shift;
                ny = ny + (s.direction > 0 ? -Rational(n) : Rational(n));
                nx = nx + shift;
            }
            s.pieces.push_back({{x, y}, {nx, ny}});
            x = nx;
            y = ny;
            r = r2;
            c = c2;
        }
        if (v.seam_crossings > 0) F.planar_supported = false;
        vseg[i] = static_cast<int>(F.segments.size());
        F.segments.push_back(std::move(s));
    }
    // cyclic order per component: row arc, then the column arc leaving its O
    auto comps = components(D);
    for (const auto& cyc : comps) {
        std::vector<int> seq;
        for (int r : cyc) {
            if (hseg[r] >= 0) seq.push_back(hseg[r]);
            if (vseg[D.o[r] % n] >= 0) seq.push_back(vseg[D.o[r] % n]);
        }
        F.component_segments.push_back(std::move(seq));
    }
    for (const auto& k : R.corners) {
        bool cusp = k.compass == Compass::NW || k.compass == Compass::SE;
        F.corners.push_back({{detail::half(k.cell), detail::half(k.row)}, k.marking, k.compass, cusp, k.component});
    }
    for (const auto& c : R.crossings)
        F.crossings.push_back({{detail::half(c.cell), detail::half(c.row)}, hseg[c.h], vseg[c.v], -1, -1, 0});
    return F;
}

inline Point direction_vector(const FrontSegment& s) {
    // tangent of the oriented strand: slope m, pointing along the traversal
    if (s.column_adjacent) return {Rational(s.direction) / s.slope, Rational(s.direction)};
    return {Rational(s.direction), s.slope * Rational(s.direction)};
}

inline int cross_sign(const Point& a, const Point& b) {
    Rational c = a.x * b.y - a.y * b.x;
    return c > Rational(0) ? 1 : (c < Rational(0) ? -1 : 0);
}

inline std::vector<FrontCrossing> front_crossings(const Front& F) {
    std::vector<FrontCrossing> out;
    for (auto c : F.crossings) {
        const auto& A = F.segments[c.a];
        const auto& B = F.segments[c.b];
        int w = over_strand(A.slope, B.slope);
        c.over = w == 0 ? c.a : c.b;
        c.under = w == 0 ? c.b : c.a;
        c.sign = cross_sign(direction_vector(F.segments[c.over]), direction_vector(F.segments[c.under]));
        out.push_back(c);
    }
    return out;
}

inline int front_cusps(const Front& F) {
    int c = 2 * F.trivial_count;
    for (const auto& k : F.corners) c += k.cusp;
    return c;
}

inline int front_writhe(const Front& F) {
    int w = 0;
    for (const auto& c : front_crossings(F)) w += c.sign;
    return w;
}

// writhe - cusps/2 read literally off the toroidal picture
inline Rational front_tb_naive(const Front& F) { return Rational(front_writhe(F)) - Rational(front_cusps(F), 2); }

// writhe - cusps/2 plus the homological term H V / (p n^2): the two-torus does not
// fix a blackboard framing for homologically nontrivial fronts, the correction does.
inline Rational front_tb(const Front& F) {
    return front_tb_naive(F) + Rational(BigInt(F.H) * F.V, BigInt(1LL * F.params.p * F.n * F.n));
}

struct FrontCheck {
    bool ok = true;
    std::string why;
};

inline FrontCheck validate_front(const Front& F) {
    auto fail = [](std::string w) { return FrontCheck{false, std::move(w)}; };
    for (const auto& s : F.segments) {
        if (s.slope >= Rational(0)) return fail("non-negative slope " + s.slope.str());
        if (s.column_adjacent && s.slope > Rational(-1)) return fail("column strand slope above -1");
        if (!s.column_adjacent && s.slope < Rational(-1)) return fail("row strand slope below -1");
    }
    std::vector<int> cusps(F.component_segments.size(), 0);
    for (const auto& k : F.corners) cusps[k.component] += k.cusp;
    for (int c : cusps)
        if (c % 2 != 0) return fail("odd cusp count on a component");
    for (const auto& c : F.crossings) {
        if (c.a < 0 || c.b < 0) return fail("crossing without two strands");
        if (F.segments[c.a].column_adjacent == F.segments[c.b].column_adjacent)
            return fail("crossing between parallel strands");
    }
    return {};
}

// ---- planar fronts ---------------------------------------------------------------

struct PlanarFrontSegment {
    Point start, end;  // (x, z)
    Rational slope;    // dz/dx, in (-1, 1)
    Rational y;        // 1 - 2 r1^2 along the strand
    bool column_adjacent = false;
    int line = 0;
    int component = 0;
    int direction = 1;
};

struct PlanarFrontCorner {
    Point at;
    bool cusp = false;
    Marking marking = Marking::O;
    Compass compass = Compass::NE;
    int component = 0;
};

struct PlanarFrontCrossing {
    Point at;
    int a = 0, b = 0;
};

struct PlanarFront {
    int N = 1;
    std::vector<PlanarFrontSegment> segments;
    std::vector<PlanarFrontCorner> corners;
    std::vector<PlanarFrontCrossing> crossings;
    int trivial_count = 0;
};

inline Point to_xz(const Point& th) { return {(th.x - th.y) / Rational(2), (th.x + th.y) / Rational(2)}; }
inline Point from_xz(const Point& xz) { return {xz.x + xz.y, xz.y - xz.x}; }
inline Rational slope_to_xz(const Rational& m) { return (Rational(1) + m) / (Rational(1) - m); }
inline Rational slope_from_xz(const Rational& s) { return (s - Rational(1)) / (s + Rational(1)); }

// (theta1, theta2) centred on the fundamental square, then rotated by 45 degrees.
inline PlanarFront planar_front(const Front& F) {
    if (F.params.p != 1 || !F.planar_supported)
        throw Error(ErrorCode::NotPlanarSupported, "front meets a seam circle (or p > 1)");
    PlanarFront P;
    P.N = F.n;
    P.trivial_count = F.trivial_count;
    const Rational c = Rational(F.n, 2);
    auto centred = [&](const Point& p) { return Point{p.x - c, p.y - c}; };
    for (const auto& s : F.segments) {
        PlanarFrontSegment t;
        t.start = to_xz(centred(s.start));
        t.end = to_xz(centred(s.end));
        t.slope = slope_to_xz(s.slope);
        t.y = Rational(1) - Rational(2) * depth_squared(s.slope);
        t.column_adjacent = s.column_adjacent;
        t.line = s.line;
        t.component = s.component;
        t.direction = s.direction;
        P.segments.push_back(t);
    }
    for (const auto& k : F.corners) P.corners.push_back({to_xz(centred(k.at)), k.cusp, k.marking, k.compass, k.component});
    for (const auto& x : F.crossings) P.crossings.push_back({to_xz(centred(x.at)), x.a, x.b});
    return P;
}

inline Point planar_direction(const PlanarFrontSegment& s) {
    // image of the oriented toroidal tangent under the linear part of the map
    Rational m = slope_from_xz(s.slope);
    Point t = s.column_adjacent ? Point{Rational(s.direction) / m, Rational(s.direction)}
                                : Point{Rational(s.direction), m * Rational(s.direction)};
    return to_xz(t);
}

// In the xz-plane the strand with smaller dz/dx is in front.
inline int planar_writhe(const PlanarFront& P) {
    int w = 0;
    for (const auto& c : P.crossings) {
        const auto& A = P.segments[c.a];
        const auto& B = P.segments[c.b];
        if (A.slope == B.slope) throw Error(ErrorCode::TangentialCrossing, "planar strands of equal slope");
        const auto& over = A.slope < B.slope ? A : B;
        const auto& under = A.slope < B.slope ? B : A;
        w += cross_sign(planar_direction(over), planar_direction(under));
    }
    return w;
}

inline int planar_cusps(const PlanarFront& P) {
    int c = 2 * P.trivial_count;
    for (const auto& k : P.corners) c += k.cusp;
    return c;
}

inline Rational planar_tb(const PlanarFront& P) { return Rational(planar_writhe(P)) - Rational(planar_cusps(P), 2); }

// Inverse map back to a toroidal front on the fundamental square.
inline Front pull_back(const PlanarFront& P) {
    Front F;
    F.params = {1, 0};
    F.n = P.N;
    F.trivial_count = P.trivial_count;
    F.planar_supported = true;
    const Rational c = Rational(P.N, 2);
    auto uncentre = [&](const Point& xz) {
        Point t = from_xz(xz);
        return Point{t.x + c, t.y + c};
    };
    int comps = 0;
    for (const auto& s : P.segments) {
        FrontSegment t;
        t.column_adjacent = s.column_adjacent;
        t.line = s.line;
        t.component = s.component;
        t.direction = s.direction;
        t.slope = slope_from_xz(s.slope);
        t.start = uncentre(s.start);
        t.end = uncentre(s.end);
        t.pieces.push_back({t.start, t.end});
        comps = std::max(comps, s.component + 1);
        F.segments.push_back(t);
    }
    for (const auto& k : P.corners) {
        F.corners.push_back({uncentre(k.at), k.marking, k.compass, k.cusp, k.component});
        comps = std::max(comps, k.component + 1);
    }
    F.component_segments.resize(comps);
    for (int i = 0; i < static_cast<int>(F.segments.size()); ++i) F.component_segments[F.segments[i].component].push_back(i);
    for (const auto& x : P.crossings) F.crossings.push_back({uncentre(x.at), x.a, x.b, -1, -1, 0});
    return F;
}

}  // namespace lensgrid
