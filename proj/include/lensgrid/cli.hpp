#pragma once

#include "lensgrid/fronts.hpp"
#include "lensgrid/grid_io.hpp"
#include "lensgrid/invariants.hpp"
#include "lensgrid/moves.hpp"
#include "lensgrid/svg.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

namespace lensgrid::cli {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kBudget = 3, kCrossCheck = 4 };

namespace detail {

inline std::string show(const Rational& r, bool decimal) { return decimal ? r.decimal(6) : r.str(); }

inline MoveClass parse_class(const std::string& s) {
    if (s == "legendrian") return MoveClass::Legendrian;
    return MoveClass::Topological;
}

inline std::string opt_big(const std::optional<BigInt>& v) { return v ? v->str() : "-"; }

inline int cmd_validate(const std::string& file, std::ostream& out) {
    auto g = read_grid_file(file, false);
    auto rep = validate(g);
    for (const auto& c : rep.checks)
        out << (c.passed ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]") << '\n';
    out << "trivial components:";
    if (rep.trivial_rows.empty()) out << " none";
    for (int r : rep.trivial_rows) out << " row " << r << " cell " << g.o[r];
    out << '\n' << (rep.ok ? "valid" : std::string("invalid: ") + to_string(rep.first_error)) << '\n';
    return rep.ok ? kOk : kInput;
}

inline int cmd_tb(const std::string& file, bool decimal, std::ostream& out, std::ostream& err) {
    auto g = read_grid_file(file);
    Rational a = tb(g), b = tb_via_grading(g);
    out << "tb = " << show(a, decimal) << "\ntb_grading = " << show(b, decimal) << '\n';
    if (a != b) {
        err << "cross-check failure: tb pipelines disagree\n";
        return kCrossCheck;
    }
    return kOk;
}

inline int cmd_invariants(const std::string& file, bool json, std::ostream& out, std::ostream& err) {
    auto g = read_grid_file(file);
    auto r = invariant_report(g);
    if (json) out << to_json(r).dump(2) << '\n';
    else out << to_text(r);
    if (!r.cross_checks_ok()) {
        err << "cross-check failure: tb pipelines or the Matsuda bound disagree\n";
        return kCrossCheck;
    }
    return kOk;
}

inline int cmd_move(const std::string& file, const std::vector<std::string>& moves, std::ostream& out) {
    auto g = read_grid_file(file);
    for (const auto& m : moves) g = apply_move(g, parse_move(m));
    out << format_grid(g);
    return kOk;
}

inline int cmd_moves(const std::string& file, const std::string& cls, std::ostream& out) {
    auto g = read_grid_file(file);
    for (const auto& m : legal_moves(g, parse_class(cls))) out << format_move(m) << '\n';
    return kOk;
}

inline int cmd_explore(const std::string& f1, const std::string& f2, const std::string& cls, int max_n,
                       const std::string& budget_text, std::ostream& out, std::ostream& err) {
    auto g1 = read_grid_file(f1), g2 = read_grid_file(f2);
    double b = 0;
    try {
        b = std::stod(budget_text);
    } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "budget must be a number, got '" + budget_text + "'");
    }
    if (!(b >= 1) || b > 1e12) throw Error(ErrorCode::Parse, "budget out of range");
    if (max_n < std::max(g1.n, g2.n)) throw Error(ErrorCode::RangeViolation, "--max-n is below the input grid numbers");
    auto res = connected(g1, g2, parse_class(cls), max_n, static_cast<size_t>(std::llround(b)));
    if (!res.found) {
        err << (res.exhausted ? "no connection: search space within --max-n exhausted"
                              : "not found within node budget")
            << " (" << res.nodes << " classes visited)\n";
        return kBudget;
    }
    out << "path length " << res.moves.size() << " (" << res.nodes << " classes visited)\n";
    for (const auto& m : res.moves) out << format_move(m) << '\n';
    return kOk;
}

inline nlohmann::json row_json(const ScanRow& r) {
    using lensgrid::detail::big_json;
    nlohmann::json j;
    j["a"] = r.a;
    j["b"] = r.b;
    j["orbit"] = r.orbit;
    j["class"] = r.klass;
    j["trivial"] = r.trivial;
    j["tb"] = r.tb.str();
    j["tb_dual"] = r.tb_dual.str();
    j["sum_ok"] = r.sum_ok;
    j["order"] = r.order;
    j["label"] = r.label;
    if (r.surgery) {
        j["residue"] = r.surgery->residue;
        j["k"] = r.surgery->k ? big_json(*r.surgery->k) : nlohmann::json(nullptr);
        j["surgery_coeff"] = r.surgery->coefficient ? big_json(*r.surgery->coefficient) : nlohmann::json(nullptr);
    } else {
        j["residue"] = nullptr;
        j["k"] = nullptr;
        j["surgery_coeff"] = nullptr;
    }
    if (r.surgery_dual && r.surgery_dual->k) {
        j["k_dual"] = big_json(*r.surgery_dual->k);
        j["pair_sum_ok"] = r.pair_ok;
        j["coeffs_zero_one"] = r.coeffs_ok;
    }
    return j;
}

inline int cmd_scan(int p, int q, bool json, std::ostream& out, std::ostream& err) {
    q = mod(q, p);
    auto t = berge_scan(p, q);
    bool ok = true;
    for (const auto& r : t.rows) ok = ok && r.sum_ok;
    if (json) {
        nlohmann::json j;
        j["p"] = t.p;
        j["q"] = t.q;
        j["translation_orbits"] = t.orbit_count;
        j["classes"] = t.class_count;
        j["nontrivial_orbits"] = t.nontrivial_orbits;
        j["nontrivial_classes"] = t.nontrivial_classes;
        j["rows"] = nlohmann::json::array();
        for (const auto& r : t.rows) j["rows"].push_back(row_json(r));
        out << j.dump(2) << '\n';
    } else {
        out << "scan L(" << p << "," << q << ")  grid number 1\n";
        out << std::left << std::setw(6) << "orbit" << std::setw(6) << "class" << std::setw(4) << "O" << std::setw(4)
            << "X" << std::setw(10) << "tb" << std::setw(10) << "tb_dual" << std::setw(7) << "sum" << std::setw(6)
            << "order" << std::setw(8) << "residue" << std::setw(6) << "k" << std::setw(7) << "k_dual" << std::setw(9)
            << "coeffs" << "label\n";
        for (const auto& r : t.rows) {
            std::string res = r.surgery ? std::to_string(r.surgery->residue) : "-";
            std::string k = r.surgery ? opt_big(r.surgery->k) : "-";
            std::string kd = r.surgery_dual ? opt_big(r.surgery_dual->k) : "-";
            std::string co = "-";
            if (r.surgery && r.surgery->k && r.surgery_dual && r.surgery_dual->k)
                co = BigInt(-*r.surgery->k).str() + "," + BigInt(-*r.surgery_dual->k).str();
            out << std::setw(6) << r.orbit << std::setw(6) << r.klass << std::setw(4) << r.a << std::setw(4) << r.b
                << std::setw(10) << r.tb.str() << std::setw(10) << r.tb_dual.str() << std::setw(7)
                << (r.sum_ok ? "ok" : "FAIL") << std::setw(6) << r.order << std::setw(8) << res << std::setw(6) << k
                << std::setw(7) << kd << std::setw(9) << co << r.label << '\n';
        }
        out << "translation orbits: " << t.orbit_count << " (non-trivial " << t.nontrivial_orbits << ")\n";
        out << "classes up to translation and half-turn: " << t.class_count << " (non-trivial "
            << t.nontrivial_classes << ")\n";
    }
    if (!ok) {
        err << "cross-check failure: tb + tb(dual) != -1 on some class\n";
        return kCrossCheck;
    }
    return kOk;
}

inline int cmd_render(const std::string& file, const std::string& outpath, const std::string& view, long long routing,
                      int width, int height, std::ostream& out) {
    auto g = read_grid_file(file);
    SvgOptions opt;
    opt.width = width;
    opt.height = height;
    std::string doc;
    if (view == "grid") {
        doc = render_svg(g, opt);
    } else {
        if (routing < 0 || (2 * g.n < 63 && routing >= (1LL << (2 * g.n))))
            throw Error(ErrorCode::BadRoutingLength, "routing mask has more than 2n bits");
        auto R = rectilinear(g, RoutingChoice::from_mask(g.n, static_cast<std::uint64_t>(routing)));
        doc = view == "rectilinear" ? render_svg(R, opt) : render_svg(toroidal_front(R), opt);
    }
    if (outpath.empty() || outpath == "-") {
        out << doc;
    } else {
        std::ofstream f(outpath);
        if (!f) throw Error(ErrorCode::Parse, "cannot write " + outpath);
        f << doc;
    }
    return kOk;
}

}  // namespace detail

// argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Grid diagrams for links in lens spaces", "lensgrid"};
    app.require_subcommand(1);
    std::string file, file2, cls = "topological", outpath, view = "front", budget = "1e6";
    std::vector<std::string> applies;
    bool decimal = false, json = false;
    int max_n = 4, p = 1, q = 0, width = 640, height = 320;
    long long routing = 0;

    auto* validate_c = app.add_subcommand("validate", "check a grid file");
    validate_c->add_option("FILE", file)->required();
    auto* dual_c = app.add_subcommand("dual", "print the dual diagram");
    dual_c->add_option("FILE", file)->required();
    auto* lift_c = app.add_subcommand("lift", "print the p-fold lift as an S^3 grid");
    lift_c->add_option("FILE", file)->required();
    auto* tb_c = app.add_subcommand("tb", "Thurston-Bennequin number by both pipelines");
    tb_c->add_option("FILE", file)->required();
    tb_c->add_flag("--decimal", decimal, "print decimals instead of fractions");
    auto* inv_c = app.add_subcommand("invariants", "full invariant report");
    inv_c->add_option("FILE", file)->required();
    inv_c->add_flag("--json", json, "structured output");
    auto* move_c = app.add_subcommand("move", "apply moves and print the result");
    move_c->add_option("FILE", file)->required();
    move_c->add_option("--apply", applies, "move text, e.g. \"STAB X NW @r=0,c=1\" (repeatable)")->required();
    auto* moves_c = app.add_subcommand("moves", "list applicable moves");
    moves_c->add_option("FILE", file)->required();
    moves_c->add_option("--class", cls, "topological | legendrian")->check(CLI::IsMember({"topological", "legendrian"}));
    auto* explore_c = app.add_subcommand("explore", "search for a move sequence between two diagrams");
    explore_c->add_option("FILE1", file)->required();
    explore_c->add_option("FILE2", file2)->required();
    explore_c->add_option("--class", cls, "topological | legendrian")->check(CLI::IsMember({"topological", "legendrian"}));
    explore_c->add_option("--max-n", max_n, "largest grid number visited");
    explore_c->add_option("--budget", budget, "node budget (accepts 1e6)");
    auto* scan_c = app.add_subcommand("scan", "grid number one scan of L(p,q)");
    scan_c->add_option("--p", p)->required()->check(CLI::Range(1, 200));
    scan_c->add_option("--q", q)->required();
    scan_c->add_flag("--json", json, "structured output");
    auto* render_c = app.add_subcommand("render", "write an SVG picture");
    render_c->add_option("FILE", file)->required();
    render_c->add_option("--out", outpath, "output path (default stdout)");
    render_c->add_option("--view", view, "front | grid | rectilinear")->check(CLI::IsMember({"front", "grid", "rectilinear"}));
    render_c->add_option("--routing", routing, "routing bitmask (rows first, then column annuli)");
    render_c->add_option("--width", width)->check(CLI::Range(16, 100000));
    render_c->add_option("--height", height)->check(CLI::Range(16, 100000));

    std::vector<std::string> rev(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << "run with --help for usage\n";
        return kUsage;
    }

    try {
        if (*validate_c) return detail::cmd_validate(file, out);
        if (*dual_c) {
            out << format_grid(dual(read_grid_file(file)));
            return kOk;
        }
        if (*lift_c) {
            out << format_grid(lift_to_cover(read_grid_file(file)).grid);
            return kOk;
        }
        if (*tb_c) return detail::cmd_tb(file, decimal, out, err);
        if (*inv_c) return detail::cmd_invariants(file, json, out, err);
        if (*move_c) return detail::cmd_move(file, applies, out);
        if (*moves_c) return detail::cmd_moves(file, cls, out);
        if (*explore_c) return detail::cmd_explore(file, file2, cls, max_n, budget, out, err);
        if (*scan_c) {
            if (p > 1 && std::gcd(p, mod(q, p)) != 1) throw Error(ErrorCode::GcdViolation, "gcd(p, q) must be 1");
            return detail::cmd_scan(p, q, json, out, err);
        }
        if (*render_c) return detail::cmd_render(file, outpath, view, routing, width, height, out);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kInput;
    }
    return kUsage;
}

}  // namespace lensgrid::cli
