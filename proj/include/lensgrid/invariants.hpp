#pragma once

#include "lensgrid/correction_terms.hpp"
#include "lensgrid/grid.hpp"
#include "lensgrid/rational.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

namespace lensgrid {

// tb(G) = tb of the p-fold lift divided by p.
inline Rational tb(const GridDiagram& g) {
    require_valid(g);
    return Rational(tb_s3(lift_to_cover(g).grid)) / Rational(g.params.p);
}

inline int correction_index(const GridDiagram& g) { return g.params.p == 1 ? 0 : g.params.q - 1; }

inline Rational maslov_sum_z(const GridDiagram& g) {
    require_valid(g);
    const int p = g.params.p;
    auto L = lift_to_cover(g).grid;
    auto [zm, zp] = z_generators(L);
    Rational m = Rational(maslov(L, zm) + maslov(L, zp)) / Rational(p);
    return m + Rational(2) * d_invariant(p, g.params.q, correction_index(g)) + Rational(2 * (p - 1)) / Rational(p);
}

inline Rational tb_via_grading(const GridDiagram& g) {
    return maslov_sum_z(g) / Rational(2) - d_invariant(g.params.p, g.params.q, correction_index(g)) - Rational(1);
}

// A class on a boundary torus in (meridian, longitude) coordinates.
struct Coord {
    BigInt mu = 0;
    BigInt lambda = 0;
    friend bool operator==(const Coord&, const Coord&) = default;
};

// Oriented intersection on the boundary torus, with meridian . longitude = +1.
inline BigInt pairing(const Coord& a, const Coord& b) { return a.mu * b.lambda - a.lambda * b.mu; }

using RationalMatrix = std::vector<std::vector<Rational>>;

struct SeifertFraming {
    std::vector<Coord> lambda;
    BigInt d = 1;
};

struct FramingData {
    std::vector<Coord> gamma;         // contact framings
    std::vector<Coord> lambda_prime;  // chosen longitudes
    RationalMatrix A;                 // chosen longitudes in the meridian basis
    std::vector<Coord> lambda;        // Seifert framings, meridian . lambda_i = d
    BigInt d = 1;
};

// A expresses each chosen longitude lambda'_j (given as (k_j, 1)) as a rational combination of meridians.
// lambda_j = d (lambda'_j - c_j mu_j) with c_j the j-th column sum of A and d the least integer clearing A.
inline SeifertFraming seifert_framing(const RationalMatrix& A, const std::vector<Coord>& lambda_prime) {
    const size_t l = lambda_prime.size();
    if (A.size() != l) throw Error(ErrorCode::DimensionMismatch, "A has " + std::to_string(A.size()) + " rows for " + std::to_string(l) + " longitudes");
    for (const auto& row : A)
        if (row.size() != l) throw Error(ErrorCode::DimensionMismatch, "A is not square");
    for (size_t i = 0; i < l; ++i) {
        if (lambda_prime[i].lambda != 1)
            throw Error(ErrorCode::SingularInput, "longitude " + std::to_string(i) + " does not meet its meridian once");
        for (size_t j = 0; j < i; ++j)
            if (A[i][j] != A[j][i]) throw Error(ErrorCode::SingularInput, "linking part of A is not symmetric");
    }
    SeifertFraming out;
    out.d = 1;
    for (const auto& row : A)
        for (const auto& a : row) out.d = boost::multiprecision::lcm(out.d, a.den());
    for (size_t j = 0; j < l; ++j) {
        Rational c = 0;
        for (size_t i = 0; i < l; ++i) c += A[i][j];
        Rational mu = Rational(out.d) * (Rational(lambda_prime[j].mu) - c);
        out.lambda.push_back({mu.num(), out.d});
    }
    return out;
}

inline Rational tb_from_framings(const std::vector<Coord>& gamma, const std::vector<Coord>& lambda, const BigInt& d) {
    if (gamma.size() != lambda.size()) throw Error(ErrorCode::DimensionMismatch, "gamma and lambda lengths differ");
    if (d <= 0) throw Error(ErrorCode::BadParams, "d must be positive");
    BigInt s = 0;
    for (size_t i = 0; i < gamma.size(); ++i) s += pairing(gamma[i], lambda[i]);
    return Rational(s, d);
}

struct ContactFraming {
    std::vector<Coord> gamma;  // relative to the reference longitudes (0, 1)
    RationalMatrix A;
};

// Framing data read from the Legendrian (dual-view) picture of the lift.
// l_ii = (writhe - cusps/2 of everything over component i) / p is the contact
// framing against the homological longitude; its integer part goes into gamma and
// the remainder becomes A_ii. Off-diagonal A_ik are rational linking numbers.
inline ContactFraming contact_framing_of(const GridDiagram& g) {
    require_valid(g);
    const int p = g.params.p, n = g.n;
    auto comps = components(g);
    auto of = component_of_row(comps, n);
    const size_t l = comps.size();
    auto D = dual_s3(lift_to_cover(g).grid);
    auto P = planar_rectilinear(D);
    // lens component of each row of D: the O of D-row R sits in D-column R' = lift row of an X of G
    std::vector<int> lensc(D.N);
    for (int R = 0; R < D.N; ++R) lensc[R] = of[D.o[R] % n];

    std::vector<std::vector<long long>> cross(l, std::vector<long long>(l, 0));
    std::vector<long long> cusps(l, 0);
    for (const auto& c : P.crossings) {
        int a = lensc[P.segments[c.over_segment].from];  // vertical: from = O row
        int b = lensc[P.segments[c.under_segment].line];
        cross[a][b] += c.sign;
    }
    for (const auto& k : P.corners)
        if (k.compass == Compass::NW || k.compass == Compass::SE) ++cusps[lensc[k.row]];
    for (int r : P.trivial_rows) cusps[lensc[r]] += 2;

    ContactFraming out;
    out.A.assign(l, std::vector<Rational>(l, Rational(0)));
    for (size_t i = 0; i < l; ++i) {
        Rational lii = Rational(BigInt(2 * cross[i][i] - cusps[i]), BigInt(2LL * p));
        BigInt t = lii.floor();
        out.gamma.push_back({t, 1});
        out.A[i][i] = lii - Rational(t);
        for (size_t k = 0; k < l; ++k)
            if (k != i) out.A[i][k] = Rational(BigInt(cross[i][k] + cross[k][i]), BigInt(2LL * p));
    }
    return out;
}

inline FramingData framing_data(const GridDiagram& g) {
    auto cf = contact_framing_of(g);
    FramingData f;
    f.gamma = cf.gamma;
    f.A = cf.A;
    f.lambda_prime.assign(cf.gamma.size(), Coord{0, 1});
    auto sf = seifert_framing(f.A, f.lambda_prime);
    f.lambda = sf.lambda;
    f.d = sf.d;
    return f;
}

inline Rational tb_via_framings(const GridDiagram& g) {
    auto f = framing_data(g);
    return tb_from_framings(f.gamma, f.lambda, f.d);
}

struct SurgeryArithmetic {
    Rational tb;
    BigInt p_tb = 0;
    int residue = 0;
    bool residue_ok = false;  // p tb = +-1 mod p
    std::optional<BigInt> k;
    int sign = 0;                   // p tb = k p + sign
    std::optional<BigInt> alt_k;    // second decomposition when both signs work (p <= 2)
    std::optional<BigInt> coefficient;  // contact surgery coefficient, proof form -k
};

inline SurgeryArithmetic surgery_from_tb(const Rational& t, int p, int preferred_sign = +1) {
    SurgeryArithmetic s;
    s.tb = t;
    Rational pt = t * Rational(p);
    if (!pt.is_integer()) throw Error(ErrorCode::OrderNotP, "p * tb is not an integer");
    s.p_tb = pt.num();
    s.residue = static_cast<int>(to_ll(((s.p_tb % p) + p) % p));
    std::vector<int> signs;
    for (int sg : {preferred_sign, -preferred_sign})
        if (((s.p_tb - sg) % p) == 0) signs.push_back(sg);
    s.residue_ok = !signs.empty();
    if (s.residue_ok) {
        s.sign = signs[0];
        s.k = (s.p_tb - s.sign) / p;
        s.coefficient = -*s.k;
        if (signs.size() > 1) s.alt_k = (s.p_tb - signs[1]) / p;
    }
    return s;
}

inline SurgeryArithmetic surgery_arithmetic(const GridDiagram& g) {
    require_valid(g);
    if (components(g).size() != 1) throw Error(ErrorCode::NotAKnot, "diagram has more than one component");
    if (component_orders(g)[0] != g.params.p) throw Error(ErrorCode::OrderNotP, "homology class has order below p");
    return surgery_from_tb(tb(g), g.params.p);
}

// ---- GN1 scan ---------------------------------------------------------------

struct ScanRow {
    int a = 0, b = 0;  // O and X cells of the representative
    bool trivial = false;
    int orbit = 0;   // translation orbit index
    int klass = 0;   // full equivalence class index (translations and half-turn)
    Rational tb, tb_dual;
    bool sum_ok = false;  // tb + tb(dual) = -1
    int order = 0;
    std::optional<SurgeryArithmetic> surgery, surgery_dual;
    bool pair_ok = false;     // k + k_dual = -1
    bool coeffs_ok = false;   // {0, +1} reachable from the candidate coefficients
    std::string label;
};

struct ScanTable {
    int p = 1, q = 0;
    std::vector<ScanRow> rows;
    int orbit_count = 0, class_count = 0;
    int nontrivial_orbits = 0, nontrivial_classes = 0;
};

namespace detail {
struct Gn1Data {
    GridDiagram g, canon_t, canon_full;
    Rational tb, tb_dual;
    int order = 0;
};

inline bool coeffs_reach_zero_one(const BigInt& k1, const BigInt& k2) {
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
            BigInt c1 = s1 * k1, c2 = s2 * k2;
            if ((c1 == 0 && c2 == 1) || (c1 == 1 && c2 == 0)) return true;
        }
    return false;
}
}  // namespace detail

inline ScanTable berge_scan(int p, int q, unsigned threads = 0) {
    GridDiagram probe{{p, q}, 1, {0}, {0}};
    require_valid(probe);
    const int total = p * p;
    std::vector<detail::Gn1Data> data(total);
    auto work = [&](int lo, int hi) {
        for (int idx = lo; idx < hi; ++idx) {
            auto& d = data[idx];
            d.g = GridDiagram{{p, q}, 1, {idx / p}, {idx % p}};
            d.canon_t = canonical_form(d.g, true);
            d.canon_full = canonical_form(d.g);
            d.tb = tb(d.g);
            d.tb_dual = tb(dual(d.g));
            d.order = component_orders(d.g)[0];
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(total));
    std::vector<std::thread> pool;
    int chunk = (total + static_cast<int>(threads) - 1) / static_cast<int>(threads);
    for (unsigned t = 0; t < threads; ++t) {
        int lo = static_cast<int>(t) * chunk, hi = std::min(total, lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();

    // ordered merge: first occurrence in (a, b) order represents its orbit
    ScanTable table;
    table.p = p;
    table.q = q;
    std::map<GridDiagram, int> orbit_id, class_id;
    for (int idx = 0; idx < total; ++idx) {
        const auto& d = data[idx];
        if (orbit_id.count(d.canon_t)) continue;
        int oid = static_cast<int>(orbit_id.size());
        orbit_id[d.canon_t] = oid;
        auto [it, fresh] = class_id.try_emplace(d.canon_full, static_cast<int>(class_id.size()));
        ScanRow row;
        row.a = d.g.o[0];
        row.b = d.g.x[0];
        row.trivial = row.a == row.b;
        row.orbit = oid;
        row.klass = it->second;
        row.tb = d.tb;
        row.tb_dual = d.tb_dual;
        row.order = d.order;
        if (row.trivial) {
            row.sum_ok = d.tb + d.tb_dual == Rational(-2);
            row.label = "trivial";
        } else {
            row.sum_ok = d.tb + d.tb_dual == Rational(-1);
            if (row.order != p) {
                row.label = "order<p";
            } else {
                row.surgery = surgery_from_tb(d.tb, p);
                if (!row.surgery->residue_ok) {
                    row.label = "excluded";
                } else {
                    row.surgery_dual = surgery_from_tb(d.tb_dual, p, -row.surgery->sign);
                    row.pair_ok = row.surgery_dual->residue_ok && *row.surgery->k + *row.surgery_dual->k == -1;
                    row.coeffs_ok = row.surgery_dual->residue_ok &&
                                    detail::coeffs_reach_zero_one(*row.surgery->k, *row.surgery_dual->k);
                    row.label = "residue+-1";
                }
            }
        }
        table.rows.push_back(std::move(row));
    }
    table.orbit_count = static_cast<int>(orbit_id.size());
    table.class_count = static_cast<int>(class_id.size());
    std::map<int, bool> nontriv_class;
    for (const auto& r : table.rows)
        if (!r.trivial) {
            ++table.nontrivial_orbits;
            nontriv_class[r.klass] = true;
        }
    table.nontrivial_classes = static_cast<int>(nontriv_class.size());
    return table;
}

// ---- report -------------------------------------------------------------------

struct InvariantReport {
    int p = 1, q = 0, n = 1;
    int components = 0;
    std::vector<int> orders;
    int trivial_components = 0;
    Rational tb, tb_grading, tb_framing, tb_dual, maslov_sum, d_invariant;
    bool matsuda_ok = false;
    std::optional<int> residue;
    std::optional<BigInt> k;
    std::optional<BigInt> surgery_coeff;
    std::string surgery_note;

    bool cross_checks_ok() const { return tb == tb_grading && tb == tb_framing && matsuda_ok; }
};

inline InvariantReport invariant_report(const GridDiagram& g) {
    require_valid(g);
    InvariantReport r;
    r.p = g.params.p;
    r.q = g.params.q;
    r.n = g.n;
    r.components = static_cast<int>(components(g).size());
    r.orders = component_orders(g);
    r.trivial_components = static_cast<int>(trivial_rows(g).size());
    r.tb = tb(g);
    r.tb_grading = tb_via_grading(g);
    r.tb_framing = tb_via_framings(g);
    r.tb_dual = tb(dual(g));
    r.maslov_sum = maslov_sum_z(g);
    r.d_invariant = d_invariant(g.params.p, g.params.q, correction_index(g));
    r.matsuda_ok = r.tb + r.tb_dual == Rational(-g.n - r.trivial_components);
    try {
        auto s = surgery_arithmetic(g);
        r.residue = s.residue;
        if (s.residue_ok) {
            r.k = s.k;
            r.surgery_coeff = s.coefficient;
            r.surgery_note = "candidates " + s.k->str() + ", " + BigInt(-*s.k).str();
        } else {
            r.surgery_note = "excluded: p*tb is not +-1 mod p";
        }
    } catch (const Error& e) {
        r.surgery_note = std::string("not applicable: ") + to_string(e.code());
    }
    return r;
}

inline std::string to_text(const InvariantReport& r) {
    std::ostringstream os;
    os << "p = " << r.p << "\nq = " << r.q << "\nn = " << r.n << "\ncomponents = " << r.components << "\norders =";
    for (int d : r.orders) os << ' ' << d;
    os << "\ntrivial_components = " << r.trivial_components << "\ntb = " << r.tb << "\ntb_grading = " << r.tb_grading
       << "\ntb_framing = " << r.tb_framing << "\ntb_dual = " << r.tb_dual << "\nmaslov_sum = " << r.maslov_sum
       << "\nd_invariant = " << r.d_invariant << "\nmatsuda_ok = " << (r.matsuda_ok ? "true" : "false")
       << "\nresidue = " << (r.residue ? std::to_string(*r.residue) : "none")
       << "\nk = " << (r.k ? r.k->str() : "none")
       << "\nsurgery_coeff = " << (r.surgery_coeff ? r.surgery_coeff->str() : "none")
       << "\nsurgery_note = " << r.surgery_note << '\n';
    return os.str();
}

namespace detail {
inline nlohmann::json big_json(const BigInt& v) {
    if (v <= std::numeric_limits<long long>::max() && v >= std::numeric_limits<long long>::min())
        return static_cast<long long>(v);
    return v.str();
}
}  // namespace detail

inline nlohmann::json to_json(const InvariantReport& r) {
    using detail::big_json;
    nlohmann::json j;
    j["p"] = r.p;
    j["q"] = r.q;
    j["n"] = r.n;
    j["components"] = r.components;
    j["orders"] = r.orders;
    j["tb_num"] = big_json(r.tb.num());
    j["tb_den"] = big_json(r.tb.den());
    j["tb_grading_num"] = big_json(r.tb_grading.num());
    j["tb_grading_den"] = big_json(r.tb_grading.den());
    j["matsuda_ok"] = r.matsuda_ok;
    j["residue"] = r.residue ? nlohmann::json(*r.residue) : nlohmann::json(nullptr);
    j["k"] = r.k ? big_json(*r.k) : nlohmann::json(nullptr);
    j["surgery_coeff"] = r.surgery_coeff ? big_json(*r.surgery_coeff) : nlohmann::json(nullptr);
    return j;
}

}  // namespace lensgrid
