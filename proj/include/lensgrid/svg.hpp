#pragma once

#include "lensgrid/fronts.hpp"
#include "lensgrid/grid.hpp"

#include <cstdio>
#include <sstream>
#include <string>

namespace lensgrid {

struct SvgOptions {
    int width = 640;
    int height = 320;
    int margin = 24;
};

// Coordinates: theta1 (cell-columns) grows to the right, theta2 (rows) grows upward;
// row 0 is drawn at the bottom. Numbers are written with two decimals.
namespace svg {

inline double to_double(const Rational& r) {
    return static_cast<double>(r.num()) / static_cast<double>(r.den());
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

class Canvas {
public:
    Canvas(const SvgOptions& o, int cols, int rows) : o_(o), cols_(cols), rows_(rows) {
        sx_ = static_cast<double>(o.width - 2 * o.margin) / cols;
        sy_ = static_cast<double>(o.height - 2 * o.margin) / rows;
        os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << o.width << "\" height=\""
            << o.height << "\" viewBox=\"0 0 " << o.width << ' ' << o.height << "\">\n"
            << "<rect x=\"0\" y=\"0\" width=\"" << o.width << "\" height=\"" << o.height << "\" fill=\"white\"/>\n";
    }
    double X(double t1) const { return o_.margin + t1 * sx_; }
    double Y(double t2) const { return o_.height - o_.margin - t2 * sy_; }
    double cell() const { return std::min(sx_, sy_); }

    void line(double x1, double y1, double x2, double y2, const char* stroke, double w, const char* extra = "") {
        os_ << "<line x1=\"" << num(X(x1)) << "\" y1=\"" << num(Y(y1)) << "\" x2=\"" << num(X(x2)) << "\" y2=\""
            << num(Y(y2)) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(w) << '"' << extra << "/>\n";
    }
    void raw(const std::string& s) { os_ << s; }

    void frame() {
        os_ << "<g id=\"grid\">\n";
        for (int r = 0; r <= rows_; ++r) line(0, r, cols_, r, "#b0c4de", 1);  // alpha circles
        for (int c = 0; c <= cols_; ++c) line(c, 0, c, rows_, "#f0c0c0", 1);  // beta arcs
        os_ << "</g>\n";
    }
    void marking_o(double t1, double t2) {
        os_ << "<circle class=\"O\" cx=\"" << num(X(t1)) << "\" cy=\"" << num(Y(t2)) << "\" r=\"" << num(cell() * 0.3)
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.50\"/>\n";
    }
    void marking_x(double t1, double t2) {
        double h = cell() * 0.25;
        double cx = X(t1), cy = Y(t2);
        os_ << "<path class=\"X\" d=\"M " << num(cx - h) << ' ' << num(cy - h) << " L " << num(cx + h) << ' '
            << num(cy + h) << " M " << num(cx - h) << ' ' << num(cy + h) << " L " << num(cx + h) << ' '
            << num(cy - h) << "\" stroke=\"black\" stroke-width=\"1.50\"/>\n";
    }
    void text(double px, double py, const std::string& s) {
        os_ << "<text x=\"" << num(px) << "\" y=\"" << num(py) << "\" font-family=\"monospace\" font-size=\"12\">" << s
            << "</text>\n";
    }
    void twist_note(const LensParams& lp, int n) {
        if (lp.p == 1) return;
        long long sh = 1LL * lp.q * n;
        text(o_.margin, o_.margin - 8,
             "L(" + std::to_string(lp.p) + "," + std::to_string(lp.q) + "): bottom c glued to top c+" + std::to_string(sh));
        // glyph: a short slanted arrow at the top edge
        double x0 = X(0), y0 = Y(rows_);
        os_ << "<path class=\"twist\" d=\"M " << num(x0) << ' ' << num(y0) << " L " << num(X(static_cast<double>(sh) / 4 + 0.5))
            << ' ' << num(y0 - 6) << "\" stroke=\"#806000\" stroke-width=\"1.50\" fill=\"none\"/>\n";
    }
    void markings(const GridDiagram& g) {
        os_ << "<g id=\"markings\">\n";
        for (int r = 0; r < g.n; ++r) {
            marking_o(g.o[r] + 0.5, r + 0.5);
            marking_x(g.x[r] + 0.5, r + 0.5);
        }
        os_ << "</g>\n";
    }
    std::string finish() {
        os_ << "</svg>\n";
        return os_.str();
    }

private:
    SvgOptions o_;
    int cols_, rows_;
    double sx_ = 1, sy_ = 1;
    std::ostringstream os_;
};

}  // namespace svg

inline std::string render_svg(const GridDiagram& g, const SvgOptions& opt = {}) {
    require_valid(g);
    svg::Canvas cv(opt, g.width(), g.n);
    cv.frame();
    cv.twist_note(g.params, g.n);
    cv.markings(g);
    return cv.finish();
}

inline std::string render_svg(const Rectilinear& R, const SvgOptions& opt = {}) {
    const GridDiagram& D = R.view;
    const int W = D.width(), n = D.n;
    svg::Canvas cv(opt, W, n);
    cv.frame();
    cv.twist_note(D.params, n);
    cv.raw("<g id=\"horizontal\">\n");
    for (const auto& h : R.hs) {
        if (h.disp == 0) continue;
        double y = h.row + 0.5;
        double a = h.from + 0.5, b = a + h.disp;
        // unwrapped, then folded into [0, W]
        while (b > W || b < 0) {
            double cut = b > W ? W : 0;
            cv.line(a, y, cut, y, "#204080", 2);
            double jump = b > W ? -W : W;
            a = cut + jump;
            b += jump;
        }
        cv.line(a, y, b, y, "#204080", 2);
    }
    cv.raw("</g>\n<g id=\"gaps\">\n");
    for (const auto& c : R.crossings) cv.line(c.cell + 0.5, c.row + 0.3, c.cell + 0.5, c.row + 0.7, "white", 6);
    cv.raw("</g>\n<g id=\"vertical\">\n");
    for (const auto& v : R.vs) {
        if (v.disp == 0) continue;
        int r = v.from_row, c = v.from_cell, dir = sgn(v.disp);
        for (int k = 0; k < std::abs(v.disp); ++k) {
            bool wrapped = false;
            auto [r2, c2] = detail::vstep(D, r, c, dir, wrapped);
            if (wrapped) {
                cv.line(c + 0.5, r + 0.5, c + 0.5, dir > 0 ? n : 0, "#802020", 2);
                cv.line(c2 + 0.5, dir > 0 ? 0 : n, c2 + 0.5, r2 + 0.5, "#802020", 2);
            } else {
                cv.line(c + 0.5, r + 0.5, c2 + 0.5, r2 + 0.5, "#802020", 2);
            }
            r = r2;
            c = c2;
        }
    }
    cv.raw("</g>\n");
    cv.markings(D);
    return cv.finish();
}

inline std::string render_svg(const Front& F, const SvgOptions& opt = {}) {
    const int W = F.params.p * F.n, n = F.n;
    svg::Canvas cv(opt, W, n);
    cv.frame();
    cv.twist_note(F.params, n);
    auto crossings = front_crossings(F);
    auto draw_segment = [&](const FrontSegment& s) {
        for (const auto& [a, b] : s.pieces)
            cv.line(svg::to_double(a.x), svg::to_double(a.y), svg::to_double(b.x), svg::to_double(b.y), "#303030", 2,
                    " stroke-linecap=\"round\"");
    };
    std::vector<char> is_over(F.segments.size(), 0);
    for (const auto& c : crossings) is_over[c.over] = 1;
    cv.raw("<g id=\"under\">\n");
    for (size_t i = 0; i < F.segments.size(); ++i)
        if (!is_over[i]) draw_segment(F.segments[i]);
    cv.raw("</g>\n<g id=\"gaps\">\n");
    for (const auto& c : crossings) {
        double x = svg::to_double(c.at.x), y = svg::to_double(c.at.y);
        cv.raw("<circle cx=\"" + svg::num(cv.X(x)) + "\" cy=\"" + svg::num(cv.Y(y)) + "\" r=\"" +
               svg::num(cv.cell() * 0.15) + "\" fill=\"white\"/>\n");
    }
    cv.raw("</g>\n<g id=\"over\">\n");
    for (size_t i = 0; i < F.segments.size(); ++i)
        if (is_over[i]) draw_segment(F.segments[i]);
    cv.raw("</g>\n<g id=\"corners\">\n");
    const double e = svg::to_double(kSmoothing);
    for (const auto& k : F.corners) {
        double x = svg::to_double(k.at.x), y = svg::to_double(k.at.y);
        if (k.cusp) {
            // beak pointing out of the corner
            double dx = k.compass == Compass::NW ? -e : e;
            double dy = k.compass == Compass::NW ? e : -e;
            cv.raw("<path class=\"cusp\" d=\"M " + svg::num(cv.X(x)) + ' ' + svg::num(cv.Y(y + dy)) + " L " +
                   svg::num(cv.X(x + dx)) + ' ' + svg::num(cv.Y(y + dy)) + " L " + svg::num(cv.X(x)) + ' ' +
                   svg::num(cv.Y(y)) + "\" stroke=\"#303030\" stroke-width=\"2.00\" fill=\"none\"/>\n");
        } else {
            cv.raw("<circle class=\"rounding\" cx=\"" + svg::num(cv.X(x)) + "\" cy=\"" + svg::num(cv.Y(y)) + "\" r=\"" +
                   svg::num(cv.cell() * e) + "\" fill=\"none\" stroke=\"#303030\" stroke-width=\"1.00\"/>\n");
        }
    }
    cv.raw("</g>\n");
    return cv.finish();
}

}  // namespace lensgrid
