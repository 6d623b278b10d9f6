#pragma once

#include "lensgrid/grid.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace lensgrid {

enum class MoveKind { Stabilize, Destabilize, CommuteRows, CommuteColumns };
enum class MoveClass { Topological, Legendrian };

// Stabilization K:E adds a 2x2 block whose E corner is left empty: the original
// K marking sat there. The opposite corner receives the other kind of marking.
// Destabilization K:E is addressed by that empty cell (row, col).
struct GridMove {
    MoveKind kind = MoveKind::CommuteRows;
    Marking marking = Marking::X;
    Compass corner = Compass::NW;
    int row = 0;
    int col = 0;
    int index = 0;  // commutation site

    friend bool operator==(const GridMove&, const GridMove&) = default;
};

inline bool is_legendrian_move(const GridMove& m) {
    if (m.kind == MoveKind::CommuteRows || m.kind == MoveKind::CommuteColumns) return true;
    return m.corner == Compass::NW || m.corner == Compass::SE;
}

namespace detail {
inline bool south(Compass c) { return c == Compass::SW || c == Compass::SE; }
inline bool west(Compass c) { return c == Compass::SW || c == Compass::NW; }
inline std::vector<int>& same_of(GridDiagram& g, Marking k) { return k == Marking::X ? g.x : g.o; }
inline std::vector<int>& other_of(GridDiagram& g, Marking k) { return k == Marking::X ? g.o : g.x; }
inline const std::vector<int>& same_of(const GridDiagram& g, Marking k) { return k == Marking::X ? g.x : g.o; }
inline const std::vector<int>& other_of(const GridDiagram& g, Marking k) { return k == Marking::X ? g.o : g.x; }
}  // namespace detail

inline GridDiagram stabilize(const GridDiagram& g, Marking kind, int row, Compass corner) {
    require_valid(g);
    if (row < 0 || row >= g.n) throw Error(ErrorCode::InvalidMarking, "row " + std::to_string(row) + " does not exist");
    const int n = g.n, p = g.params.p, n2 = n + 1, W2 = p * n2;
    const int c = detail::same_of(g, kind)[row];
    const bool S = detail::south(corner), Wst = detail::west(corner);
    const int row_after = S ? row : row - 1;
    const int ann_after = Wst ? c % n : c % n - 1;
    // a new annulus goes in after residue ann_after in every one of the p blocks
    auto remap = [&](int cell) {
        int b = cell / n, j = cell % n;
        return b * n2 + j + (j > ann_after ? 1 : 0);
    };
    GridDiagram h{g.params, n2, {}, {}};
    if (row_after == -1) {
        h.o.push_back(-1);
        h.x.push_back(-1);
    }
    for (int r = 0; r < n; ++r) {
        h.o.push_back(remap(g.o[r]));
        h.x.push_back(remap(g.x[r]));
        if (r == row_after) {
            h.o.push_back(-1);
            h.x.push_back(-1);
        }
    }
    const int rr = S ? row : row + 1;  // original row, new index
    const int cc = remap(c);
    const int nr = S ? rr + 1 : rr - 1;
    const int ncol = mod(Wst ? cc + 1 : cc - 1, W2);
    auto& same = detail::same_of(h, kind);
    auto& other = detail::other_of(h, kind);
    same[rr] = ncol;
    same[nr] = cc;
    other[nr] = ncol;
    return h;
}

// The destabilization undoing stabilize(g, kind, row, corner): its empty cell is
// where the original marking sat, after the row and annulus insertions.
inline GridMove stabilization_inverse(const GridDiagram& g, Marking kind, int row, Compass corner) {
    const int n = g.n, c = detail::same_of(g, kind)[row];
    const bool S = detail::south(corner), Wst = detail::west(corner);
    const int ann_after = Wst ? c % n : c % n - 1;
    const int cc = (c / n) * (n + 1) + c % n + (c % n > ann_after ? 1 : 0);
    return {MoveKind::Destabilize, kind, corner, S ? row : row + 1, cc, 0};
}

namespace detail {
// Position the 2x2 block of a destabilization at rows {0,1}, cells {0,1}.
// Returns the translated diagram and the empty corner's local coordinates.
struct LocalBlock {
    GridDiagram t;
    int eR, eC;
};
inline LocalBlock local_block(const GridDiagram& g, int row, int col, Compass corner) {
    const bool S = south(corner), Wst = west(corner);
    int row0 = S ? row : row - 1;
    int col0 = Wst ? col : col - 1;
    return {translate(g, -col0, -row0), S ? 0 : 1, Wst ? 0 : 1};
}
inline bool block_matches(const LocalBlock& b, Marking kind) {
    const int dr = 1 - b.eR, da = 1 - b.eC;
    return same_of(b.t, kind)[b.eR] == da && same_of(b.t, kind)[dr] == b.eC && other_of(b.t, kind)[dr] == da;
}
}  // namespace detail

inline bool destabilization_applies(const GridDiagram& g, Marking kind, int row, int col, Compass corner) {
    if (g.n < 2 || row < 0 || row >= g.n || col < 0 || col >= g.width()) return false;
    return detail::block_matches(detail::local_block(g, row, col, corner), kind);
}

inline GridDiagram destabilize(const GridDiagram& g, Marking kind, int row, int col, Compass corner) {
    require_valid(g);
    if (g.n < 2) throw Error(ErrorCode::MinimumSize, "cannot destabilize a diagram with n = 1");
    if (row < 0 || row >= g.n || col < 0 || col >= g.width())
        throw Error(ErrorCode::PatternAbsent, "site outside the diagram");
    auto b = detail::local_block(g, row, col, corner);
    if (!detail::block_matches(b, kind))
        throw Error(ErrorCode::PatternAbsent, std::string("no ") + to_string(kind) + ":" + to_string(corner) +
                                                  " block with empty cell (" + std::to_string(row) + ", " +
                                                  std::to_string(col) + ")");
    const int n = g.n, n2 = n - 1, p = g.params.p;
    const int dr = 1 - b.eR, da = 1 - b.eC;
    detail::same_of(b.t, kind)[b.eR] = b.eC;
    auto remap = [&](int cell) {
        int blk = cell / n, j = cell % n;
        return blk * n2 + j - (j > da ? 1 : 0);
    };
    GridDiagram h{g.params, n2, {}, {}};
    for (int r = 0; r < n; ++r) {
        if (r == dr) continue;
        h.o.push_back(remap(b.t.o[r]));
        h.x.push_back(remap(b.t.x[r]));
    }
    // move the merged marking (now at row 0, cell 0) back to where the empty cell was
    const bool S = detail::south(corner), Wst = detail::west(corner);
    int del_row = mod(S ? row + 1 : row - 1, n);
    int del_ann = mod(Wst ? col + 1 : col - 1, p * n) % n;
    int new_row = row - (del_row < row ? 1 : 0);
    int new_col = (col / n) * n2 + col % n - (col % n > del_ann ? 1 : 0);
    return translate(h, new_col, new_row);
}

// How two marking pairs sit on a common circle of length N.
enum class PairRelation { Separate, Degenerate, SameEndpoints, SharedEndpoint, Interleaved };

inline PairRelation pair_relation(int N, int a, int b, int c, int d) {
    if (a == b || c == d) return PairRelation::Degenerate;
    int shared = (a == c) + (a == d) + (b == c) + (b == d);
    if (shared == 2) return PairRelation::SameEndpoints;
    if (shared == 1) return PairRelation::SharedEndpoint;
    auto inside = [&](int t) { return 0 < mod(t - a, N) && mod(t - a, N) < mod(b - a, N); };
    return inside(c) != inside(d) ? PairRelation::Interleaved : PairRelation::Separate;
}

inline bool relation_legal(PairRelation r) {
    return r == PairRelation::Separate || r == PairRelation::Degenerate || r == PairRelation::SameEndpoints;
}

namespace detail {
struct CommSite {
    int N, a, b, c, d;
};
inline CommSite row_site(const GridDiagram& g, int r) {
    const int n = g.n, N = g.width();
    const int r2 = (r + 1) % n;
    const long long sh = r == n - 1 ? 1LL * g.params.q * n : 0;
    return {N, g.x[r], g.o[r], mod(g.x[r2] + sh, N), mod(g.o[r2] + sh, N)};
}
inline CommSite col_site(const GridDiagram& g, int i) {
    auto L = lift_to_cover(g).grid;
    const int N = L.N;
    auto oinv = inverse_perm(L.o), xinv = inverse_perm(L.x);
    return {N, oinv[i], xinv[i], oinv[(i + 1) % N], xinv[(i + 1) % N]};
}
inline void check_site(const CommSite& s, const char* what, int index) {
    auto rel = pair_relation(s.N, s.a, s.b, s.c, s.d);
    if (relation_legal(rel)) return;
    std::string why = rel == PairRelation::Interleaved ? "markings interleave" : "markings share one endpoint";
    throw InterleavedError(std::string(what) + " " + std::to_string(index) + " and its neighbour: " + why + " at (" +
                               std::to_string(s.a) + ", " + std::to_string(s.b) + ") vs (" + std::to_string(s.c) +
                               ", " + std::to_string(s.d) + ")",
                           s.a, s.b, s.c, s.d);
}
}  // namespace detail

enum class Axis { Row, Column };

inline bool commutation_legal(const GridDiagram& g, Axis axis, int index) {
    if (g.n < 2 || index < 0 || index >= g.n) return false;
    auto s = axis == Axis::Row ? detail::row_site(g, index) : detail::col_site(g, index);
    return relation_legal(pair_relation(s.N, s.a, s.b, s.c, s.d));
}

// Exchange row index with row index+1 (across the twist when index = n-1), or
// column annulus index with index+1.
inline GridDiagram commute(const GridDiagram& g, Axis axis, int index) {
    require_valid(g);
    if (g.n < 2) throw Error(ErrorCode::MinimumSize, "commutation needs n >= 2");
    if (index < 0 || index >= g.n) throw Error(ErrorCode::RangeViolation, "commutation index out of range");
    const int n = g.n, N = g.width();
    GridDiagram h = g;
    if (axis == Axis::Row) {
        auto s = detail::row_site(g, index);
        detail::check_site(s, "row", index);
        const int r2 = (index + 1) % n;
        const long long sh = index == n - 1 ? 1LL * g.params.q * n : 0;
        h.x[index] = s.c;
        h.o[index] = s.d;
        h.x[r2] = mod(s.a - sh, N);
        h.o[r2] = mod(s.b - sh, N);
    } else {
        auto s = detail::col_site(g, index);
        detail::check_site(s, "column annulus", index);
        const int j = (index + 1) % n;
        auto mv = [&](int c) { return c % n == index ? mod(c + 1, N) : (c % n == j ? mod(c - 1, N) : c); };
        for (int r = 0; r < n; ++r) {
            h.o[r] = mv(g.o[r]);
            h.x[r] = mv(g.x[r]);
        }
    }
    return h;
}

inline GridDiagram apply_move(const GridDiagram& g, const GridMove& m) {
    switch (m.kind) {
        case MoveKind::Stabilize: {
            require_valid(g);
            if (m.row < 0 || m.row >= g.n || detail::same_of(g, m.marking)[m.row] != m.col)
                throw Error(ErrorCode::InvalidMarking, std::string("no ") + to_string(m.marking) + " at row " +
                                                           std::to_string(m.row) + ", cell " + std::to_string(m.col));
            return stabilize(g, m.marking, m.row, m.corner);
        }
        case MoveKind::Destabilize: return destabilize(g, m.marking, m.row, m.col, m.corner);
        case MoveKind::CommuteRows: return commute(g, Axis::Row, m.index);
        case MoveKind::CommuteColumns: return commute(g, Axis::Column, m.index);
    }
    return g;
}

inline constexpr Compass kCorners[4] = {Compass::NW, Compass::NE, Compass::SW, Compass::SE};
inline constexpr Marking kMarkings[2] = {Marking::X, Marking::O};

// Every applicable move of the class, in a fixed order:
// stabilizations, destabilizations, row commutations, column commutations.
inline std::vector<GridMove> legal_moves(const GridDiagram& g, MoveClass cls, int max_n = -1) {
    require_valid(g);
    std::vector<GridMove> out;
    auto allowed = [&](Compass c) {
        return cls == MoveClass::Topological || c == Compass::NW || c == Compass::SE;
    };
    if (max_n < 0 || g.n + 1 <= max_n)
        for (int r = 0; r < g.n; ++r)
            for (Marking k : kMarkings)
                for (Compass c : kCorners)
                    if (allowed(c))
                        out.push_back({MoveKind::Stabilize, k, c, r, detail::same_of(g, k)[r], 0});
    if (g.n >= 2) {
        for (int r = 0; r < g.n; ++r)
            for (int col = 0; col < g.width(); ++col)
                for (Marking k : kMarkings)
                    for (Compass c : kCorners)
                        if (allowed(c) && destabilization_applies(g, k, r, col, c))
                            out.push_back({MoveKind::Destabilize, k, c, r, col, 0});
        for (int i = 0; i < g.n; ++i)
            if (commutation_legal(g, Axis::Row, i)) out.push_back({MoveKind::CommuteRows, Marking::X, Compass::NW, 0, 0, i});
        for (int i = 0; i < g.n; ++i)
            if (commutation_legal(g, Axis::Column, i))
                out.push_back({MoveKind::CommuteColumns, Marking::X, Compass::NW, 0, 0, i});
    }
    return out;
}

// ---- text form -----------------------------------------------------------------

inline std::string format_move(const GridMove& m) {
    std::ostringstream os;
    switch (m.kind) {
        case MoveKind::Stabilize:
        case MoveKind::Destabilize:
            os << (m.kind == MoveKind::Stabilize ? "STAB " : "DESTAB ") << to_string(m.marking) << ' '
               << to_string(m.corner) << " @r=" << m.row << ",c=" << m.col;
            break;
        case MoveKind::CommuteRows: os << "COMM ROW " << m.index; break;
        case MoveKind::CommuteColumns: os << "COMM COL " << m.index; break;
    }
    return os.str();
}

inline GridMove parse_move(const std::string& text) {
    std::istringstream is(text);
    std::string head;
    is >> head;
    auto bad = [&](const std::string& why) { return Error(ErrorCode::Parse, "move '" + text + "': " + why); };
    GridMove m;
    if (head == "COMM") {
        std::string axis;
        long long idx = 0;
        if (!(is >> axis >> idx)) throw bad("expected 'COMM ROW|COL <index>'");
        if (axis == "ROW") m.kind = MoveKind::CommuteRows;
        else if (axis == "COL") m.kind = MoveKind::CommuteColumns;
        else throw bad("axis must be ROW or COL");
        m.index = static_cast<int>(idx);
    } else if (head == "STAB" || head == "DESTAB") {
        m.kind = head == "STAB" ? MoveKind::Stabilize : MoveKind::Destabilize;
        std::string mk, cn, site;
        if (!(is >> mk >> cn >> site)) throw bad("expected '<STAB|DESTAB> <O|X> <NE|NW|SE|SW> @r=<row>,c=<col>'");
        if (mk == "O") m.marking = Marking::O;
        else if (mk == "X") m.marking = Marking::X;
        else throw bad("marking must be O or X");
        if (cn == "NE") m.corner = Compass::NE;
        else if (cn == "NW") m.corner = Compass::NW;
        else if (cn == "SE") m.corner = Compass::SE;
        else if (cn == "SW") m.corner = Compass::SW;
        else throw bad("corner must be NE, NW, SE or SW");
        int r = 0, c = 0;
        char tail = 0;
        if (std::sscanf(site.c_str(), "@r=%d,c=%d%c", &r, &c, &tail) != 2) throw bad("site must look like @r=2,c=7");
        m.row = r;
        m.col = c;
    } else {
        throw bad("unknown move");
    }
    std::string extra;
    if (is >> extra) throw bad("trailing text '" + extra + "'");
    return m;
}

// ---- bounded search -----------------------------------------------------------

struct GridHash {
    size_t operator()(const GridDiagram& g) const {
        size_t h = std::hash<int>()(g.params.p) * 31 + std::hash<int>()(g.params.q);
        h = h * 1000003 + static_cast<size_t>(g.n);
        for (int v : g.o) h = h * 1000003 + static_cast<size_t>(v);
        for (int v : g.x) h = h * 1000003 + static_cast<size_t>(v);
        return h;
    }
};

struct SearchResult {
    bool found = false;
    std::vector<GridMove> moves;        // apply in order starting from G1 itself
    std::vector<GridDiagram> states;    // states[0] = G1, states[i+1] = apply(moves[i], states[i])
    size_t nodes = 0;                   // distinct canonical classes stored
    bool exhausted = false;             // a frontier ran dry inside the max_n bound
};

// Bidirectional breadth-first search over translation classes (the half-turn is
// not a grid move, so it is not quotiented here). The smaller frontier
// (side 1 on ties) is expanded a full layer at a time in insertion order, so the
// returned path is deterministic.
inline SearchResult connected(const GridDiagram& g1, const GridDiagram& g2, MoveClass cls, int max_n,
                              size_t node_budget) {
    require_valid(g1);
    require_valid(g2);
    SearchResult res;
    res.states.push_back(g1);
    if (!(g1.params == g2.params)) {
        res.exhausted = true;
        return res;
    }
    struct Node {
        GridDiagram canon;
        int parent;
        int side;
    };
    std::vector<Node> nodes;
    std::unordered_map<GridDiagram, int, GridHash> index;
    std::vector<int> frontier[2];
    auto add = [&](GridDiagram c, int parent, int side) {
        index.emplace(c, static_cast<int>(nodes.size()));
        nodes.push_back({std::move(c), parent, side});
        return static_cast<int>(nodes.size()) - 1;
    };
    GridDiagram c1 = canonical_form(g1, true), c2 = canonical_form(g2, true);
    frontier[0].push_back(add(c1, -1, 0));
    if (c1 == c2) {
        res.found = true;
        res.nodes = 1;
        return res;
    }
    frontier[1].push_back(add(c2, -1, 1));

    int meet_a = -1, meet_b = -1;  // meet_a on side 0, meet_b on side 1
    while (meet_a < 0) {
        if (frontier[0].empty() || frontier[1].empty()) {
            res.exhausted = true;
            res.nodes = nodes.size();
            return res;
        }
        int s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        std::vector<int> next;
        for (int u : frontier[s]) {
            GridDiagram cu = nodes[u].canon;
            for (const auto& m : legal_moves(cu, cls, max_n)) {
                GridDiagram h = canonical_form(apply_move(cu, m), true);
                auto it = index.find(h);
                if (it != index.end()) {
                    if (nodes[it->second].side != s) {
                        meet_a = s == 0 ? u : it->second;
                        meet_b = s == 0 ? it->second : u;
                        break;
                    }
                    continue;
                }
                if (nodes.size() >= node_budget) {
                    res.nodes = nodes.size();
                    return res;
                }
                next.push_back(add(std::move(h), u, s));
            }
            if (meet_a >= 0) break;
        }
        frontier[s] = std::move(next);
    }
    res.nodes = nodes.size();

    std::vector<GridDiagram> chain;
    for (int v = meet_a; v >= 0; v = nodes[v].parent) chain.push_back(nodes[v].canon);
    std::reverse(chain.begin(), chain.end());
    for (int v = meet_b; v >= 0; v = nodes[v].parent) chain.push_back(nodes[v].canon);

    // realise each canonical step as a concrete move on the current diagram
    GridDiagram cur = g1;
    for (size_t i = 1; i < chain.size(); ++i) {
        bool ok = false;
        for (const auto& m : legal_moves(cur, cls)) {
            GridDiagram nxt = apply_move(cur, m);
            if (canonical_form(nxt, true) == chain[i]) {
                res.moves.push_back(m);
                res.states.push_back(nxt);
                cur = std::move(nxt);
                ok = true;
                break;
            }
        }
        if (!ok) throw std::logic_error("search path step could not be realised");
    }
    res.found = true;
    return res;
}

}  // namespace lensgrid
