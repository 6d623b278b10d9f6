#pragma once

#include "lensgrid/error.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace lensgrid {

inline int mod(long long a, long long m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

inline int sgn(long long v) { return (v > 0) - (v < 0); }

// Standard toroidal grid of size N: row r holds an O in column o[r] and an X in column x[r].
struct S3Grid {
    int N = 0;
    std::vector<int> o, x;

    friend bool operator==(const S3Grid&, const S3Grid&) = default;
};

inline bool is_permutation_of_range(const std::vector<int>& v, int N) {
    if (static_cast<int>(v.size()) != N) return false;
    std::vector<char> seen(N, 0);
    for (int c : v) {
        if (c < 0 || c >= N || seen[c]) return false;
        seen[c] = 1;
    }
    return true;
}

inline void require_valid(const S3Grid& g) {
    if (g.N <= 0) throw Error(ErrorCode::RangeViolation, "grid size must be positive");
    if (!is_permutation_of_range(g.o, g.N)) throw Error(ErrorCode::NotBijection, "O columns are not a permutation");
    if (!is_permutation_of_range(g.x, g.N)) throw Error(ErrorCode::NotBijection, "X columns are not a permutation");
}

inline std::vector<int> inverse_perm(const std::vector<int>& v) {
    std::vector<int> inv(v.size());
    for (int i = 0; i < static_cast<int>(v.size()); ++i) inv[v[i]] = i;
    return inv;
}

// Rotate a quarter turn clockwise and exchange O with X: cell (R, C) -> (N-1-C, R).
inline S3Grid dual_s3(const S3Grid& g) {
    S3Grid d{g.N, std::vector<int>(g.N), std::vector<int>(g.N)};
    for (int R = 0; R < g.N; ++R) {
        d.o[g.N - 1 - g.x[R]] = R;
        d.x[g.N - 1 - g.o[R]] = R;
    }
    return d;
}

inline S3Grid translate_s3(const S3Grid& g, long long dx, long long dy) {
    S3Grid t{g.N, std::vector<int>(g.N), std::vector<int>(g.N)};
    for (int r = 0; r < g.N; ++r) {
        t.o[mod(r + dy, g.N)] = mod(g.o[r] + dx, g.N);
        t.x[mod(r + dy, g.N)] = mod(g.x[r] + dx, g.N);
    }
    return t;
}

// Point reflection (x, y) -> (-x, -y) of the torus, O and X kept.
inline S3Grid half_turn_s3(const S3Grid& g) {
    S3Grid t{g.N, std::vector<int>(g.N), std::vector<int>(g.N)};
    for (int r = 0; r < g.N; ++r) {
        t.o[g.N - 1 - r] = g.N - 1 - g.o[r];
        t.x[g.N - 1 - r] = g.N - 1 - g.x[r];
    }
    return t;
}

// Mirror image: reflect the columns (c -> N-1-c). Vertical strands stay over, so
// every crossing changes sign. (Transposing with O/X exchanged is not a mirror:
// it is a rotation about the diagonal and preserves writhe.)
inline S3Grid mirror_s3(const S3Grid& g) {
    S3Grid t{g.N, std::vector<int>(g.N), std::vector<int>(g.N)};
    for (int r = 0; r < g.N; ++r) {
        t.o[r] = g.N - 1 - g.o[r];
        t.x[r] = g.N - 1 - g.x[r];
    }
    return t;
}

inline S3Grid transpose_s3(const S3Grid& g) {
    S3Grid t{g.N, std::vector<int>(g.N), std::vector<int>(g.N)};
    for (int r = 0; r < g.N; ++r) {
        t.o[g.x[r]] = r;
        t.x[g.o[r]] = r;
    }
    return t;
}

// Components as cycles of rows: from row r follow the horizontal arc to its O,
// then the vertical arc in that column to the row holding the X.
// Each cycle starts at its smallest row; cycles are ordered by that row.
inline std::vector<std::vector<int>> components_s3(const S3Grid& g) {
    auto xinv = inverse_perm(g.x);
    std::vector<char> seen(g.N, 0);
    std::vector<std::vector<int>> out;
    for (int r = 0; r < g.N; ++r) {
        if (seen[r]) continue;
        std::vector<int> cyc;
        for (int s = r; !seen[s]; s = xinv[g.o[s]]) {
            seen[s] = 1;
            cyc.push_back(s);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

inline std::vector<int> component_of_row(const std::vector<std::vector<int>>& comps, int N) {
    std::vector<int> of(N, -1);
    for (int i = 0; i < static_cast<int>(comps.size()); ++i)
        for (int r : comps[i]) of[r] = i;
    return of;
}

enum class Compass { NE, NW, SE, SW };

inline const char* to_string(Compass c) {
    switch (c) {
        case Compass::NE: return "NE";
        case Compass::NW: return "NW";
        case Compass::SE: return "SE";
        case Compass::SW: return "SW";
    }
    return "?";
}

// A corner is named by where it sits relative to its two arms:
// arms east+south make a NW corner, west+north a SE corner, and so on.
inline Compass corner_from_arms(bool arm_east, bool arm_north) {
    if (arm_east) return arm_north ? Compass::SW : Compass::NW;
    return arm_north ? Compass::SE : Compass::NE;
}

struct PlanarSegment {
    bool vertical = false;
    int line = 0;  // row for horizontal, column for vertical
    int from = 0;  // X column -> O column, or O row -> X row
    int to = 0;
    int component = 0;
};

struct PlanarCorner {
    int row = 0, col = 0;
    char marking = 'O';
    Compass compass = Compass::NE;
    int component = 0;
};

struct PlanarCrossing {
    int row = 0, col = 0;
    int over_segment = 0, under_segment = 0;  // indices into segments
    int over_component = 0, under_component = 0;
    int sign = 0;
};

struct PlanarRectilinear {
    int N = 0;
    std::vector<PlanarSegment> segments;
    std::vector<PlanarCorner> corners;
    std::vector<PlanarCrossing> crossings;
    std::vector<int> trivial_rows;
    std::vector<int> component_of_row;
    int component_count = 0;
};

// Arcs stay inside [0, N) in both directions, so they never meet the
// row-0 / column-0 boundary circles. Vertical strands pass over horizontal ones.
inline PlanarRectilinear planar_rectilinear(const S3Grid& g) {
    require_valid(g);
    const int N = g.N;
    PlanarRectilinear d;
    d.N = N;
    auto comps = components_s3(g);
    d.component_of_row = component_of_row(comps, N);
    d.component_count = static_cast<int>(comps.size());
    auto oinv = inverse_perm(g.o), xinv = inverse_perm(g.x);

    std::vector<int> hseg(N, -1), vseg(N, -1);
    for (int r = 0; r < N; ++r) {
        if (g.o[r] == g.x[r]) {
            d.trivial_rows.push_back(r);
            continue;
        }
        hseg[r] = static_cast<int>(d.segments.size());
        d.segments.push_back({false, r, g.x[r], g.o[r], d.component_of_row[r]});
    }
    for (int c = 0; c < N; ++c) {
        if (oinv[c] == xinv[c]) continue;
        vseg[c] = static_cast<int>(d.segments.size());
        d.segments.push_back({true, c, oinv[c], xinv[c], d.component_of_row[oinv[c]]});
    }

    for (int r = 0; r < N; ++r) {
        if (hseg[r] < 0) continue;
        const auto& h = d.segments[hseg[r]];
        int hd = sgn(h.to - h.from);
        int lo = std::min(h.from, h.to), hi = std::max(h.from, h.to);
        for (int c = lo + 1; c < hi; ++c) {
            if (vseg[c] < 0) continue;  // column of a coincident marking: nothing to cross
            const auto& v = d.segments[vseg[c]];
            int vlo = std::min(v.from, v.to), vhi = std::max(v.from, v.to);
            if (vlo < r && r < vhi) {
                int vd = sgn(v.to - v.from);
                // sign of cross(over, under) with over = (0, vd), under = (hd, 0)
                d.crossings.push_back({r, c, vseg[c], hseg[r], v.component, h.component, -vd * hd});
            }
        }
    }

    for (int r = 0; r < N; ++r) {
        if (hseg[r] < 0) continue;
        int comp = d.component_of_row[r];
        // X: horizontal arm toward the O of its row, vertical arm toward the O of its column.
        bool xe = g.o[r] > g.x[r];
        bool xn = oinv[g.x[r]] > r;
        d.corners.push_back({r, g.x[r], 'X', corner_from_arms(xe, xn), comp});
        bool oe = g.x[r] > g.o[r];
        bool on = xinv[g.o[r]] > r;
        d.corners.push_back({r, g.o[r], 'O', corner_from_arms(oe, on), comp});
    }
    return d;
}

inline int writhe(const PlanarRectilinear& d) {
    int w = 0;
    for (const auto& c : d.crossings) w += c.sign;
    return w;
}

// NW and SE corners, plus two virtual cusps per coincident (trivial) component.
inline int cusp_count(const PlanarRectilinear& d) {
    int c = 2 * static_cast<int>(d.trivial_rows.size());
    for (const auto& k : d.corners)
        if (k.compass == Compass::NW || k.compass == Compass::SE) ++c;
    return c;
}

// Legendrian tb: the front is read off the dual view.
inline int tb_s3(const S3Grid& g) {
    auto d = planar_rectilinear(dual_s3(g));
    return writhe(d) - cusp_count(d) / 2;
}

inline int linking_number_s3(const PlanarRectilinear& d, int i, int j) {
    if (i == j) throw Error(ErrorCode::SameComponent, "linking number needs two distinct components");
    if (i < 0 || j < 0 || i >= d.component_count || j >= d.component_count)
        throw Error(ErrorCode::RangeViolation, "component index out of range");
    int s = 0;
    for (const auto& c : d.crossings)
        if ((c.over_component == i && c.under_component == j) || (c.over_component == j && c.under_component == i))
            s += c.sign;
    return s / 2;
}

inline int linking_number_s3(const S3Grid& g, int i, int j) {
    return linking_number_s3(planar_rectilinear(g), i, j);
}

// One lattice point per horizontal line: row-line r carries the point at column-line col[r].
struct Generator {
    std::vector<int> col;
    friend bool operator==(const Generator&, const Generator&) = default;
};

// z- at the lower-left corners of the X cells, z+ at their upper-right corners.
inline std::pair<Generator, Generator> z_generators(const S3Grid& g) {
    require_valid(g);
    Generator zm{std::vector<int>(g.N)}, zp{std::vector<int>(g.N)};
    for (int r = 0; r < g.N; ++r) {
        zm.col[r] = g.x[r];
        zp.col[(r + 1) % g.N] = (g.x[r] + 1) % g.N;
    }
    return {zm, zp};
}

namespace detail {
struct Pt {
    int x, y;
};
inline long long count_below_left(const std::vector<Pt>& a, const std::vector<Pt>& b) {
    long long n = 0;
    for (const auto& p : a)
        for (const auto& q : b)
            if (p.x < q.x && p.y < q.y) ++n;
    return n;
}
}  // namespace detail

// Maslov grading in the square [0,N)^2. Coordinates are doubled so that the O
// markings at cell centres stay integral: M = I(x,x) - I(x,O) - I(O,x) + I(O,O) + 1.
inline long long maslov(const S3Grid& g, const Generator& gen) {
    require_valid(g);
    if (!is_permutation_of_range(gen.col, g.N)) throw Error(ErrorCode::NotBijection, "generator is not a bijection");
    std::vector<detail::Pt> xs, os;
    for (int r = 0; r < g.N; ++r) {
        xs.push_back({2 * gen.col[r], 2 * r});
        os.push_back({2 * g.o[r] + 1, 2 * r + 1});
    }
    using detail::count_below_left;
    return count_below_left(xs, xs) - count_below_left(xs, os) - count_below_left(os, xs) +
           count_below_left(os, os) + 1;
}

}  // namespace lensgrid
