// Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.
// Criteria are read literally; where a literal reading fails for a structural
// reason the line stays red and the indented notes show what does hold.

#include "lensgrid/correction_terms.hpp"
#include "lensgrid/fronts.hpp"
#include "lensgrid/grid_io.hpp"
#include "lensgrid/invariants.hpp"
#include "lensgrid/moves.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace lensgrid;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> notes;
};

int failures = 0;

template <class F>
void criterion(int id, const char* title, F body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = body();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.summary.c_str(), secs);
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    failures += !o.pass;
}

std::string mark(bool ok) { return ok ? "ok" : "VIOLATED"; }

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// all grid-number-one diagrams of L(p,q), p <= 13, every valid q
std::vector<GridDiagram> gn1_corpus() {
    std::vector<GridDiagram> out;
    for (int p = 1; p <= 13; ++p)
        for (int q = 0; q < p; ++q) {
            if (p == 1 ? q != 0 : (q == 0 || std::gcd(p, q) != 1)) continue;
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b) out.push_back({{p, q}, 1, {a}, {b}});
        }
    return out;
}

std::vector<GridDiagram> random_corpus(unsigned seed, int count, int max_p, int max_n) {
    std::mt19937 rng(seed);
    std::vector<GridDiagram> out;
    for (int i = 0; i < count; ++i) out.push_back(oracle::random_grid(rng, max_p, max_n));
    return out;
}

std::vector<GridDiagram> corpus_one() {
    auto c = gn1_corpus();
    auto r = random_corpus(2024, 500, 5, 3);
    c.insert(c.end(), r.begin(), r.end());
    return c;
}

int coincident_count(const GridDiagram& g) {
    int t = 0;
    for (int r = 0; r < g.n; ++r) t += g.o[r] == g.x[r];
    return t;
}

// every valid diagram with the given p and n, all q
std::vector<GridDiagram> all_diagrams(int p, int n) {
    std::vector<GridDiagram> out;
    std::vector<int> perm(n);
    std::vector<std::vector<int>> perms;
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    int sheets = 1;
    for (int i = 0; i < 2 * n; ++i) sheets *= p;
    for (int q = 0; q < p; ++q) {
        if (p == 1 ? q != 0 : (q == 0 || std::gcd(p, q) != 1)) continue;
        for (const auto& so : perms)
            for (const auto& sx : perms)
                for (int s = 0; s < sheets; ++s) {
                    GridDiagram g{{p, q}, n, std::vector<int>(n), std::vector<int>(n)};
                    int t = s;
                    for (int r = 0; r < n; ++r) {
                        g.o[r] = so[r] + n * (t % p);
                        t /= p;
                        g.x[r] = sx[r] + n * (t % p);
                        t /= p;
                    }
                    out.push_back(g);
                }
    }
    return out;
}

Outcome pipeline_equality() {
    auto corpus = corpus_one();
    int bad = 0;
    std::string first;
    for (const auto& g : corpus)
        if (tb_via_grading(g) != tb(g)) {
            if (!bad) first = format_grid(g);
            ++bad;
        }
    Outcome o{bad == 0, std::to_string(corpus.size()) + " diagrams, " + std::to_string(bad) + " mismatches", {}};
    if (bad) o.notes.push_back("first mismatch: " + first);
    return o;
}

Outcome matsuda() {
    auto corpus = corpus_one();
    int literal_bad = 0, literal_bad_coincident = 0, with_t_bad = 0, clean = 0, clean_bad = 0;
    for (const auto& g : corpus) {
        Rational s = tb(g) + tb(dual(g));
        int t = coincident_count(g);
        bool lit = s == Rational(-g.n);
        literal_bad += !lit;
        literal_bad_coincident += !lit && t > 0;
        with_t_bad += s != Rational(-g.n - t);
        if (t == 0) {
            ++clean;
            clean_bad += !lit;
        }
    }
    Outcome o;
    o.pass = literal_bad == 0;
    o.summary = "tb + tb(dual) = -n fails on " + std::to_string(literal_bad) + " of " + std::to_string(corpus.size()) +
                " diagrams";
    o.notes.push_back("failures with a coincident O/X cell: " + std::to_string(literal_bad_coincident) + " of " +
                      std::to_string(literal_bad) + " (each such cell is a tb -1 unknot in G and in dual G)");
    o.notes.push_back("coincidence-free subset: " + std::to_string(clean_bad) + " failures in " +
                      std::to_string(clean) + " diagrams");
    o.notes.push_back("form -n - t (t = coincident cells): " + std::to_string(with_t_bad) + " failures, " +
                      mark(with_t_bad == 0));
    return o;
}

Outcome grading_identity() {
    std::mt19937 rng(3);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        int N = std::uniform_int_distribution<int>(1, 8)(rng);
        auto g = oracle::random_s3(rng, N);
        auto [zm, zp] = z_generators(g);
        bad += maslov(g, zm) + maslov(g, zp) != 2 * tb_s3(g) + 2;
    }
    return {bad == 0, "200 random S3 grids, N <= 8, " + std::to_string(bad) + " violations", {}};
}

Outcome structural() {
    auto corpus = corpus_one();
    int dd = 0, ld = 0, lv = 0, deck = 0;
    for (const auto& g : corpus) {
        auto d = dual(g);
        dd += canonical_form(dual(d)) != canonical_form(g);
        auto L = lift_to_cover(g);
        auto Ld = lift_to_cover(d);
        ld += Ld.grid != dual_s3(L.grid);
        lv += !(is_permutation_of_range(L.grid.o, L.grid.N) && is_permutation_of_range(L.grid.x, L.grid.N)) ||
              L.grid != oracle::lift(g);
        deck += !is_deck_invariant(L.grid, L.deck);
    }
    Outcome o{dd + ld + lv + deck == 0, std::to_string(corpus.size()) + " diagrams", {}};
    o.notes.push_back("dual(dual G) ~ G: " + std::to_string(dd) + " failures");
    o.notes.push_back("lift(dual G) = dual(lift G): " + std::to_string(ld) + " failures");
    o.notes.push_back("lift is a valid grid (and matches the shear formula): " + std::to_string(lv) + " failures");
    o.notes.push_back("lift is deck invariant: " + std::to_string(deck) + " failures");
    return o;
}

Outcome move_suite() {
    auto corpus = random_corpus(5150, 150, 5, 3);
    long round = 0, round_bad = 0, comm = 0, comm_bad = 0, leg = 0, leg_bad = 0, topo = 0, topo_bad = 0;
    long nesw = 0, nesw_bad = 0, nesw_bad_coincident = 0;
    for (const auto& g : corpus) {
        for (int r = 0; r < g.n; ++r)
            for (Marking k : kMarkings)
                for (Compass c : kCorners) {
                    auto s = stabilize(g, k, r, c);
                    ++round;
                    auto inv = stabilization_inverse(g, k, r, c);
                    round_bad += apply_move(s, inv) != g;
                    if (c == Compass::NE || c == Compass::SW) {
                        ++nesw;
                        if (tb(s) - tb(g) != Rational(-1)) {
                            ++nesw_bad;
                            nesw_bad_coincident += g.o[r] == g.x[r];
                        }
                    }
                }
        for (Axis ax : {Axis::Row, Axis::Column})
            for (int i = 0; i < g.n; ++i)
                if (commutation_legal(g, ax, i)) {
                    ++comm;
                    comm_bad += commute(commute(g, ax, i), ax, i) != g;
                }
        Rational t = tb(g);
        for (const auto& m : legal_moves(g, MoveClass::Legendrian)) {
            ++leg;
            leg_bad += tb(apply_move(g, m)) != t;
        }
        auto orders = sorted(component_orders(g));
        for (const auto& m : legal_moves(g, MoveClass::Topological)) {
            ++topo;
            topo_bad += sorted(component_orders(apply_move(g, m))) != orders;
        }
    }
    Outcome o;
    o.pass = round_bad + comm_bad + leg_bad + topo_bad + nesw_bad == 0;
    o.summary = std::to_string(corpus.size()) + " random diagrams, p <= 5, n <= 3";
    o.notes.push_back("stabilize/destabilize round trip, 8 types: " + std::to_string(round_bad) + " failures in " +
                      std::to_string(round) + ", " + mark(round_bad == 0));
    o.notes.push_back("commutation twice is the identity: " + std::to_string(comm_bad) + " failures in " +
                      std::to_string(comm) + ", " + mark(comm_bad == 0));
    o.notes.push_back("Legendrian moves keep tb: " + std::to_string(leg_bad) + " failures in " + std::to_string(leg) +
                      ", " + mark(leg_bad == 0));
    o.notes.push_back("moves keep component count and orders: " + std::to_string(topo_bad) + " failures in " +
                      std::to_string(topo) + ", " + mark(topo_bad == 0));
    o.notes.push_back("NE/SW stabilization changes tb by -1: " + std::to_string(nesw_bad) + " exceptions in " +
                      std::to_string(nesw) + ", " + mark(nesw_bad == 0));
    if (nesw_bad)
        o.notes.push_back("finding: " + std::to_string(nesw_bad_coincident) + " of the " + std::to_string(nesw_bad) +
                          " exceptions stabilize a coincident O/X cell, where the change is 0");
    return o;
}

Outcome berge() {
    int pairs = 0, sum_bad = 0, label_bad = 0;
    std::vector<std::string> coeff_bad;
    for (int p = 1; p <= 13; ++p)
        for (int q = 0; q < p; ++q) {
            if (p == 1 ? q != 0 : (q == 0 || std::gcd(p, q) != 1)) continue;
            auto t = berge_scan(p, q);
            std::set<int> seen;
            for (const auto& r : t.rows) {
                if (r.trivial || r.order != p || !r.surgery) continue;
                if (!r.surgery->residue_ok) {
                    label_bad += r.label != "excluded";
                    continue;
                }
                if (!seen.insert(r.klass).second) continue;
                ++pairs;
                sum_bad += !r.pair_ok;
                if (!r.coeffs_ok) {
                    std::ostringstream s;
                    s << "L(" << p << "," << q << ") O=" << r.a << " X=" << r.b << " k=" << r.surgery->k->str()
                      << " k_dual=" << (r.surgery_dual && r.surgery_dual->k ? r.surgery_dual->k->str() : "-");
                    coeff_bad.push_back(s.str());
                }
            }
        }
    Outcome o;
    o.pass = sum_bad == 0 && coeff_bad.empty() && label_bad == 0;
    o.summary = std::to_string(pairs) + " residue +-1 classes, p <= 13";
    o.notes.push_back("k1 + k2 = -1: " + std::to_string(sum_bad) + " failures, " + mark(sum_bad == 0));
    o.notes.push_back("coefficients {0, +1}: " + std::to_string(coeff_bad.size()) + " failures, " +
                      mark(coeff_bad.empty()));
    for (const auto& s : coeff_bad) o.notes.push_back("  " + s);
    o.notes.push_back("residue failures labeled excluded: " + std::to_string(label_bad) + " mislabeled, " +
                      mark(label_bad == 0));
    return o;
}

Outcome fronts() {
    long diagrams = 0, fronts_seen = 0, naive_split = 0, corrected_bad = 0;
    std::string example;
    for (int n = 1; n <= 2; ++n)
        for (int p = 1; p <= 5; ++p)
            for (const auto& g : all_diagrams(p, n)) {
                ++diagrams;
                Rational expect = tb(g);
                std::set<Rational> naive;
                for (std::uint64_t m = 0; m < (1ULL << (2 * n)); ++m) {
                    auto F = toroidal_front(rectilinear(g, RoutingChoice::from_mask(n, m)));
                    ++fronts_seen;
                    naive.insert(front_tb_naive(F));
                    corrected_bad += front_tb(F) != expect;
                }
                if (naive.size() > 1) {
                    if (!naive_split) {
                        example = format_grid(g);
                        std::replace(example.begin(), example.end(), '\n', ' ');
                    }
                    ++naive_split;
                }
            }
    Outcome o;
    o.pass = naive_split == 0;
    o.summary = "writhe - cusps/2 varies with the routing on " + std::to_string(naive_split) + " of " +
                std::to_string(diagrams) + " diagrams (n <= 2, p <= 5, " + std::to_string(fronts_seen) + " fronts)";
    if (naive_split) o.notes.push_back("first: " + example);
    o.notes.push_back("with the homological term H V / (p n^2): " + std::to_string(corrected_bad) +
                      " fronts differ from tb(G), " + mark(corrected_bad == 0));
    return o;
}

Outcome base_cases() {
    GridDiagram u2{{1, 0}, 2, {1, 0}, {0, 1}};
    bool a = tb(u2) == Rational(-1), b = d_invariant(1, 0, 0) == Rational(0), c = depth_squared(Rational(-1)) == Rational(1, 2);
    return {a && b && c, "tb(U2) = -1 " + mark(a) + ", d(1,0,0) = 0 " + mark(b) + ", r1(-1)^2 = 1/2 " + mark(c), {}};
}

Outcome search() {
    auto corpus = random_corpus(99, 25, 5, 2);
    long searches = 0, bad = 0;
    double worst = 0;
    std::mt19937 rng(7);
    auto timed = [&](const GridDiagram& a, const GridDiagram& b, int max_n, size_t expect_len) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = connected(a, b, MoveClass::Topological, max_n, 10000);
        worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        ++searches;
        bad += !r.found || r.moves.size() != expect_len;
    };
    for (const auto& g : corpus) {
        timed(g, translate(g, std::uniform_int_distribution<int>(0, 40)(rng), std::uniform_int_distribution<int>(0, 9)(rng)),
              g.n, 0);
        auto base = canonical_form(g, true);
        for (const auto& m : legal_moves(g, MoveClass::Topological)) {
            auto h = apply_move(g, m);
            timed(g, h, std::max(g.n, h.n), canonical_form(h, true) == base ? 0 : 1);
        }
    }
    Outcome o{bad == 0 && worst < 1.0, std::to_string(searches) + " searches, " + std::to_string(bad) +
                                             " wrong lengths, slowest " + std::to_string(worst) + " s",
              {}};
    return o;
}

}  // namespace

int main() {
    criterion(1, "tb_via_grading = tb", pipeline_equality);
    criterion(2, "Matsuda identity", matsuda);
    criterion(3, "grading-geometry identity", grading_identity);
    criterion(4, "structural oracles", structural);
    criterion(5, "move suite", move_suite);
    criterion(6, "Berge arithmetic", berge);
    criterion(7, "front tb across routings", fronts);
    criterion(8, "base cases", base_cases);
    criterion(9, "search", search);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
