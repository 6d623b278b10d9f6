#pragma once

#include "lensgrid/error.hpp"
#include "lensgrid/s3_grid.hpp"

#include <numeric>
#include <string>
#include <tuple>
#include <vector>

namespace lensgrid {

struct LensParams {
    int p = 1;
    int q = 0;
    friend bool operator==(const LensParams&, const LensParams&) = default;
};

// Twisted toroidal grid in L(p,q). The fundamental rectangle has n rows and
// p*n cell-columns; the bottom edge at cell-column c is glued to the top edge at c + q*n.
// Row r holds its O in cell-column o[r] and its X in cell-column x[r].
struct GridDiagram {
    LensParams params;
    int n = 1;
    std::vector<int> o, x;

    int width() const { return params.p * n; }
    friend bool operator==(const GridDiagram&, const GridDiagram&) = default;
    friend bool operator<(const GridDiagram& a, const GridDiagram& b) {
        return std::tie(a.params.p, a.params.q, a.n, a.o, a.x) < std::tie(b.params.p, b.params.q, b.n, b.o, b.x);
    }
};

enum class Marking { O, X };

inline const char* to_string(Marking m) { return m == Marking::O ? "O" : "X"; }

struct DeckAction {
    int row_shift = 0;
    int col_shift = 0;
};

struct Lift {
    S3Grid grid;
    DeckAction deck;
};

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationCheck> checks;
    std::vector<int> trivial_rows;  // rows whose O and X share a cell
    ErrorCode first_error = ErrorCode::Parse;
};

inline ValidationReport validate(const GridDiagram& g) {
    ValidationReport rep;
    auto add = [&](const std::string& name, bool ok, ErrorCode code, const std::string& detail = "") {
        rep.checks.push_back({name, ok, detail});
        if (!ok && rep.ok) {
            rep.ok = false;
            rep.first_error = code;
        }
    };
    const int p = g.params.p, q = g.params.q;
    add("p positive", p >= 1, ErrorCode::BadParams, "p = " + std::to_string(p));
    if (p < 1) return rep;
    bool qrange = (p == 1) ? q == 0 : (q >= 0 && q < p);
    add("q in range", qrange, ErrorCode::RangeViolation, "q = " + std::to_string(q));
    add("gcd(p,q) = 1", p == 1 || std::gcd(p, q) == 1, ErrorCode::GcdViolation,
        "gcd = " + std::to_string(std::gcd(p, q)));
    add("n positive", g.n >= 1, ErrorCode::RangeViolation, "n = " + std::to_string(g.n));
    if (g.n < 1) return rep;
    bool sizes = static_cast<int>(g.o.size()) == g.n && static_cast<int>(g.x.size()) == g.n;
    add("one O and one X per row", sizes, ErrorCode::RangeViolation);
    if (!sizes) return rep;
    const int W = g.width();
    bool inr = true;
    for (int r = 0; r < g.n; ++r) inr = inr && g.o[r] >= 0 && g.o[r] < W && g.x[r] >= 0 && g.x[r] < W;
    add("cell-columns in [0, pn)", inr, ErrorCode::RangeViolation);
    if (!inr) return rep;
    auto annuli_ok = [&](const std::vector<int>& v, std::string& why) {
        std::vector<int> seen(g.n, -1);
        for (int r = 0; r < g.n; ++r) {
            int a = v[r] % g.n;
            if (seen[a] >= 0) {
                why = "rows " + std::to_string(seen[a]) + " and " + std::to_string(r) + " share column annulus " +
                      std::to_string(a);
                return false;
            }
            seen[a] = r;
        }
        return true;
    };
    std::string why;
    bool ob = annuli_ok(g.o, why);
    add("one O per column annulus", ob, ErrorCode::NotBijection, why);
    why.clear();
    bool xb = annuli_ok(g.x, why);
    add("one X per column annulus", xb, ErrorCode::NotBijection, why);
    for (int r = 0; r < g.n; ++r)
        if (g.o[r] == g.x[r]) rep.trivial_rows.push_back(r);
    return rep;
}

inline void require_valid(const GridDiagram& g) {
    auto rep = validate(g);
    if (rep.ok) return;
    for (const auto& c : rep.checks)
        if (!c.passed) throw Error(rep.first_error, c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
}

inline GridDiagram make_grid(int p, int q, std::vector<int> o, std::vector<int> x) {
    GridDiagram g{{p, q}, static_cast<int>(o.size()), std::move(o), std::move(x)};
    require_valid(g);
    return g;
}

inline int mod_inverse(int a, int m) {
    a = mod(a, m);
    for (int s = 1; s < m; ++s)
        if ((1LL * a * s) % m == 1) return s;
    throw Error(ErrorCode::BadParams, "no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
}

// q* with q q* = -1 (mod p); 0 for p = 1.
inline int q_star(int p, int q) {
    if (p == 1) return 0;
    return mod(-static_cast<long long>(mod_inverse(q, p)), p);
}

inline DeckAction deck_action(const GridDiagram& g) { return {g.n, mod(1LL * g.params.q * g.n, g.width())}; }

// Row r + k n of the lift carries the markings of row r shifted by k q n.
inline Lift lift_to_cover(const GridDiagram& g) {
    const int p = g.params.p, q = g.params.q, n = g.n, N = p * n;
    S3Grid s{N, std::vector<int>(N), std::vector<int>(N)};
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < p; ++k) {
            s.o[r + k * n] = mod(g.o[r] + 1LL * k * q * n, N);
            s.x[r + k * n] = mod(g.x[r] + 1LL * k * q * n, N);
        }
    return {s, deck_action(g)};
}

inline bool is_deck_invariant(const S3Grid& s, const DeckAction& a) {
    for (int R = 0; R < s.N; ++R) {
        int R2 = (R + a.row_shift) % s.N;
        if (s.o[R2] != mod(s.o[R] + a.col_shift, s.N) || s.x[R2] != mod(s.x[R] + a.col_shift, s.N)) return false;
    }
    return true;
}

// Lens diagram whose lift is s (s must be invariant under the deck action of (p,q,n)).
inline GridDiagram restrict_lift(const S3Grid& s, LensParams params, int n) {
    return {params, n, std::vector<int>(s.o.begin(), s.o.begin() + n), std::vector<int>(s.x.begin(), s.x.begin() + n)};
}

// Horizontal shift by dx cell-columns, vertical shift by dy rows. Lift row n is
// lens row 0 seen one sheet up, so a marking pushed up past the top re-enters
// the bottom row with its cell-column shifted by -q n (and +q n going down).
inline GridDiagram translate(const GridDiagram& g, long long dx, long long dy) {
    const int n = g.n, W = g.width();
    const long long qn = 1LL * g.params.q * n;
    GridDiagram t = g;
    for (int r = 0; r < n; ++r) {
        long long rr = r + dy;
        long long wraps = rr >= 0 ? rr / n : -((-rr + n - 1) / n);
        int nr = mod(rr, n);
        t.o[nr] = mod(g.o[r] + dx - wraps * qn, W);
        t.x[nr] = mod(g.x[r] + dx - wraps * qn, W);
    }
    return t;
}

// The point reflection of the torus, computed on the lift.
inline GridDiagram half_turn(const GridDiagram& g) {
    return restrict_lift(half_turn_s3(lift_to_cover(g).grid), g.params, g.n);
}

// Minimal encoding over all translations of G and (unless translations_only) of its half-turn.
inline GridDiagram canonical_form(const GridDiagram& g, bool translations_only = false) {
    const int n = g.n, W = g.width();
    const long long qn = 1LL * g.params.q * n;
    GridDiagram best = g;
    bool have = false;
    GridDiagram cand = g;
    auto consider = [&](const GridDiagram& h) {
        for (int dy = 0; dy < n; ++dy) {
            // rows after the vertical shift; horizontal shift chosen afterwards
            for (int r = 0; r < n; ++r) {
                int rr = r + dy, nr = rr % n;
                long long w = rr / n;
                cand.o[nr] = mod(h.o[r] - w * qn, W);
                cand.x[nr] = mod(h.x[r] - w * qn, W);
            }
            for (int dx = 0; dx < W; ++dx) {
                // compare cand shifted by dx against best without materialising it
                if (have) {
                    int cmp = 0;
                    for (int r = 0; r < n && cmp == 0; ++r) {
                        int v = (cand.o[r] + dx) % W;
                        cmp = v < best.o[r] ? -1 : (v > best.o[r] ? 1 : 0);
                    }
                    for (int r = 0; r < n && cmp == 0; ++r) {
                        int v = (cand.x[r] + dx) % W;
                        cmp = v < best.x[r] ? -1 : (v > best.x[r] ? 1 : 0);
                    }
                    if (cmp >= 0) continue;
                }
                for (int r = 0; r < n; ++r) {
                    best.o[r] = (cand.o[r] + dx) % W;
                    best.x[r] = (cand.x[r] + dx) % W;
                }
                have = true;
            }
        }
    };
    consider(g);
    if (!translations_only) consider(half_turn(g));
    return best;
}

inline bool equivalent(const GridDiagram& a, const GridDiagram& b) {
    return a.params == b.params && a.n == b.n && canonical_form(a) == canonical_form(b);
}

// Quarter-turn of the lift with O/X exchanged, read back as a diagram in L(p, q*).
inline GridDiagram dual(const GridDiagram& g) {
    auto d = dual_s3(lift_to_cover(g).grid);
    return restrict_lift(d, {g.params.p, q_star(g.params.p, g.params.q)}, g.n);
}

inline std::vector<int> trivial_rows(const GridDiagram& g) {
    std::vector<int> t;
    for (int r = 0; r < g.n; ++r)
        if (g.o[r] == g.x[r]) t.push_back(r);
    return t;
}

// Lens components as cycles of rows (row r -> row holding the X in the column annulus of O(r)).
inline std::vector<std::vector<int>> components(const GridDiagram& g) {
    const int n = g.n;
    std::vector<int> x_row_of_annulus(n);
    for (int r = 0; r < n; ++r) x_row_of_annulus[g.x[r] % n] = r;
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> out;
    for (int r = 0; r < n; ++r) {
        if (seen[r]) continue;
        std::vector<int> cyc;
        for (int s = r; !seen[s]; s = x_row_of_annulus[g.o[s] % n]) {
            seen[s] = 1;
            cyc.push_back(s);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

// d_i = p / (number of lift components over component i).
inline std::vector<int> component_orders(const GridDiagram& g) {
    auto comps = components(g);
    auto of = component_of_row(comps, g.n);
    auto lc = components_s3(lift_to_cover(g).grid);
    std::vector<int> count(comps.size(), 0);
    for (const auto& c : lc) ++count[of[c.front() % g.n]];
    std::vector<int> d;
    for (int c : count) d.push_back(g.params.p / c);
    return d;
}

}  // namespace lensgrid
