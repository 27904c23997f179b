#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubillage.hpp"
#include "subset.hpp"

namespace sepsys {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

struct Line {
    int number;
    std::string text;
};

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Non-empty lines with comments stripped.
inline std::vector<Line> content_lines(std::istream& in) {
    std::vector<Line> out;
    std::string s;
    int no = 0;
    while (std::getline(in, s)) {
        ++no;
        auto hash = s.find('#');
        if (hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (!s.empty()) out.push_back({no, s});
    }
    return out;
}

inline int parse_int(const std::string& tok, int line) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
    return v;
}

inline std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

inline GroundSize parse_header(const std::vector<Line>& lines) {
    if (lines.empty()) throw ParseError(0, "missing header 'n <int>'");
    auto t = tokens(lines[0].text);
    if (t.size() != 2 || t[0] != "n") throw ParseError(lines[0].number, "expected header 'n <int>'");
    int n = parse_int(t[1], lines[0].number);
    if (n < 1 || n > 64) throw ParseError(lines[0].number, "ground size must be in 1..64");
    return GroundSize(n);
}

}  // namespace detail

// "-" or ascending space-separated elements of [n].
inline Subset parse_subset_literal(const std::string& text, int n, int line = 0) {
    std::string s = detail::trim(text);
    if (s == "-") return Subset{};
    auto toks = detail::tokens(s);
    if (toks.empty()) throw ParseError(line, "empty subset literal (use '-')");
    std::vector<int> elems;
    for (const auto& t : toks) {
        int e = detail::parse_int(t, line);
        if (e < 1 || e > n) throw ParseError(line, "element " + t + " outside [" + std::to_string(n) + "]");
        if (!elems.empty() && e <= elems.back()) throw ParseError(line, "elements must be strictly ascending");
        elems.push_back(e);
    }
    return Subset::of(elems);
}

inline std::string subset_literal(Subset x) {
    if (x.empty()) return "-";
    std::string out;
    for (int e : x.elements()) out += (out.empty() ? "" : " ") + std::to_string(e);
    return out;
}

// Canonical member order: by size, then lexicographically by elements.
inline std::vector<Subset> canonical_order(const Collection& c) {
    std::vector<Subset> v(c.begin(), c.end());
    std::sort(v.begin(), v.end(), [](Subset a, Subset b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.elements() < b.elements();
    });
    return v;
}

inline Collection parse_collection(std::istream& in) {
    auto lines = detail::content_lines(in);
    GroundSize g = detail::parse_header(lines);
    Collection c(g);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        Subset x = parse_subset_literal(lines[r].text, g.value(), lines[r].number);
        if (!c.insert(x)) throw ParseError(lines[r].number, "duplicate subset " + x.str());
    }
    return c;
}

inline Collection parse_collection(const std::string& text) {
    std::istringstream is(text);
    return parse_collection(is);
}

inline std::string serialize_collection(const Collection& c) {
    std::string out = "n " + std::to_string(c.n()) + "\n";
    for (Subset x : canonical_order(c)) out += subset_literal(x) + "\n";
    return out;
}

inline Cubillage parse_cubillage(std::istream& in) {
    auto lines = detail::content_lines(in);
    GroundSize g = detail::parse_header(lines);
    int n = g.value();
    std::set<Cube> cubes;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto& [no, text] = lines[r];
        if (text.rfind("cube", 0) != 0 || text.size() < 5 || (text[4] != ' ' && text[4] != '\t'))
            throw ParseError(no, "expected 'cube <X> | <i> <j> <k>'");
        auto bar = text.find('|');
        if (bar == std::string::npos) throw ParseError(no, "missing '|'");
        Subset x = parse_subset_literal(text.substr(4, bar - 4), n, no);
        auto cs = detail::tokens(text.substr(bar + 1));
        if (cs.size() != 3) throw ParseError(no, "expected three colors after '|'");
        Cube c{x, detail::parse_int(cs[0], no), detail::parse_int(cs[1], no), detail::parse_int(cs[2], no)};
        if (!c.well_formed(n)) throw ParseError(no, "malformed cube " + c.str());
        if (!cubes.insert(c).second) throw ParseError(no, "duplicate cube " + c.str());
    }
    return Cubillage{g, cubes};
}

inline Cubillage parse_cubillage(const std::string& text) {
    std::istringstream is(text);
    return parse_cubillage(is);
}

inline std::string serialize_cubillage(const Cubillage& q) {
    std::string out = "n " + std::to_string(q.n()) + "\n";
    for (const auto& c : q.cubes())
        out += "cube " + subset_literal(c.bottom) + " | " + std::to_string(c.i) + " " + std::to_string(c.j) + " " +
               std::to_string(c.k) + "\n";
    return out;
}

// Reads a whole file; "-" is standard input.
inline std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sepsys
