#pragma once

#include "lensgrid/grid.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace lensgrid {

namespace detail {
inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> t;
    for (std::string w; is >> w;) t.push_back(w);
    return t;
}

inline long long parse_int(const std::string& s, int line_no) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected an integer, got '" + s + "'");
}
}  // namespace detail

// Grid text:  lens p q / n N / O c0 .. / X c0 ..   ('#' starts a comment).
// Negative q is normalised to q mod p. Unless `check` is false the diagram is
// validated before returning.
inline GridDiagram parse_grid(const std::string& text, bool check = true) {
    std::istringstream in(text);
    std::vector<std::pair<int, std::vector<std::string>>> lines;
    std::string line;
    for (int no = 1; std::getline(in, line); ++no) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto t = detail::tokens(line);
        if (!t.empty()) lines.emplace_back(no, std::move(t));
    }
    if (lines.size() != 4)
        throw Error(ErrorCode::Parse, "expected 4 non-comment lines (lens, n, O, X), found " + std::to_string(lines.size()));
    auto expect = [&](size_t i, const char* kw) -> const std::vector<std::string>& {
        const auto& [no, t] = lines[i];
        if (t[0] != kw) throw Error(ErrorCode::Parse, "line " + std::to_string(no) + ": expected '" + kw + "'");
        return t;
    };
    const auto& lt = expect(0, "lens");
    if (lt.size() != 3) throw Error(ErrorCode::Parse, "line " + std::to_string(lines[0].first) + ": usage 'lens <p> <q>'");
    long long p = detail::parse_int(lt[1], lines[0].first);
    long long q = detail::parse_int(lt[2], lines[0].first);
    if (p < 1) throw Error(ErrorCode::BadParams, "p must be at least 1");
    if (p > 100000) throw Error(ErrorCode::BadParams, "p too large");
    q = mod(q, p);
    const auto& nt = expect(1, "n");
    if (nt.size() != 2) throw Error(ErrorCode::Parse, "line " + std::to_string(lines[1].first) + ": usage 'n <n>'");
    long long n = detail::parse_int(nt[1], lines[1].first);
    if (n < 1 || n * p > 1000000) throw Error(ErrorCode::RangeViolation, "grid number out of range");
    GridDiagram g;
    g.params = {static_cast<int>(p), static_cast<int>(q)};
    g.n = static_cast<int>(n);
    for (int k = 0; k < 2; ++k) {
        const auto& t = expect(2 + k, k == 0 ? "O" : "X");
        if (static_cast<long long>(t.size()) != n + 1)
            throw Error(ErrorCode::Parse, "line " + std::to_string(lines[2 + k].first) + ": expected " +
                                              std::to_string(n) + " cell-columns");
        auto& v = k == 0 ? g.o : g.x;
        for (size_t i = 1; i < t.size(); ++i) {
            long long c = detail::parse_int(t[i], lines[2 + k].first);
            if (c < 0 || c >= p * n)
                throw Error(ErrorCode::RangeViolation, "cell-column " + std::to_string(c) + " outside [0, " +
                                                           std::to_string(p * n) + ")");
            v.push_back(static_cast<int>(c));
        }
    }
    if (check) require_valid(g);
    return g;
}

inline GridDiagram read_grid_file(const std::string& path, bool check = true) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::Parse, "cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_grid(ss.str(), check);
}

inline std::string format_grid(const GridDiagram& g) {
    std::ostringstream os;
    os << "lens " << g.params.p << ' ' << g.params.q << "\nn " << g.n << "\nO";
    for (int c : g.o) os << ' ' << c;
    os << "\nX";
    for (int c : g.x) os << ' ' << c;
    os << '\n';
    return os.str();
}

inline GridDiagram as_lens(const S3Grid& s) { return {{1, 0}, s.N, s.o, s.x}; }
inline S3Grid as_s3(const GridDiagram& g) {
    if (g.params.p != 1) throw Error(ErrorCode::BadParams, "not an S^3 grid (p != 1)");
    return {g.n, g.o, g.x};
}

inline std::string format_grid(const S3Grid& s) { return format_grid(as_lens(s)); }

}  // namespace lensgrid
