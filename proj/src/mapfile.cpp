#include "skewdyn/mapfile.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace skewdyn {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("map file line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

int to_int(const std::string& s, int line) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        fail(line, "expected an integer, got '" + s + "'");
    }
    if (pos != s.size()) fail(line, "expected an integer, got '" + s + "'");
    return v;
}

double to_double(const std::string& s, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + s + "'");
    }
    if (pos != s.size()) fail(line, "expected a number, got '" + s + "'");
    return v;
}

MapSource parse_builtin(const std::string& text, int line) {
    const auto semi = text.find(';');
    if (semi == std::string::npos) fail(line, "builtin needs '; h:' followed by coefficient triples");
    const auto head = tokens(text.substr(0, semi));
    auto tail = tokens(text.substr(semi + 1));
    if (head.size() != 5 || head[1] != "semiconjugate") {
        fail(line, "expected 'builtin semiconjugate <kind> <alpha> <delta>'");
    }
    if (tail.empty() || tail[0] != "h:") fail(line, "expected 'h:' after ';'");
    tail.erase(tail.begin());
    if (tail.empty() || tail.size() % 3 != 0) fail(line, "h coefficients come in triples <k> <re> <im>");
    std::map<int, Complex> h;
    for (std::size_t k = 0; k < tail.size(); k += 3) {
        const int deg = to_int(tail[k], line);
        if (h.count(deg)) fail(line, "duplicate h degree " + tail[k]);
        h[deg] = Complex(to_double(tail[k + 1], line), to_double(tail[k + 2], line));
    }
    oracles::SemiconjugateKind kind;
    if (head[2] == "degenerate") {
        kind = oracles::SemiconjugateKind::degenerate;
    } else if (head[2] == "nondegenerate") {
        kind = oracles::SemiconjugateKind::nondegenerate;
    } else {
        fail(line, "kind must be degenerate or nondegenerate");
    }
    try {
        oracles::SemiconjugateSpec spec{oracles::OneDimPoly(h), to_int(head[3], line), to_int(head[4], line), kind};
        SkewProduct f = oracles::build_semiconjugate(spec);
        return MapSource{std::move(f), spec};
    } catch (const std::invalid_argument& e) {
        fail(line, e.what());
    }
}

}  // namespace

MapSource parse_map(const std::string& text) {
    std::istringstream in(text);
    std::map<int, Complex> p;
    std::map<Exponent, Complex> q;
    std::optional<MapSource> builtin;
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto t = tokens(line);
        if (t.empty()) continue;
        if (t[0] == "builtin") {
            if (builtin || !p.empty() || !q.empty()) fail(line_no, "builtin must be the only map definition");
            builtin = parse_builtin(line, line_no);
        } else if (t[0] == "p") {
            if (builtin) fail(line_no, "builtin must be the only map definition");
            if (t.size() != 3 && t.size() != 4) fail(line_no, "expected 'p <i> <re> [<im>]'");
            const int i = to_int(t[1], line_no);
            if (p.count(i)) fail(line_no, "duplicate p term of degree " + t[1]);
            p[i] = Complex(to_double(t[2], line_no), t.size() == 4 ? to_double(t[3], line_no) : 0.0);
        } else if (t[0] == "q") {
            if (builtin) fail(line_no, "builtin must be the only map definition");
            if (t.size() != 4 && t.size() != 5) fail(line_no, "expected 'q <i> <j> <re> [<im>]'");
            const Exponent e{to_int(t[1], line_no), to_int(t[2], line_no)};
            if (q.count(e)) fail(line_no, "duplicate q term z^" + t[1] + " w^" + t[2]);
            q[e] = Complex(to_double(t[3], line_no), t.size() == 5 ? to_double(t[4], line_no) : 0.0);
        } else {
            fail(line_no, "unknown record '" + t[0] + "'");
        }
    }
    if (builtin) return *builtin;
    if (p.empty() || q.empty()) throw std::invalid_argument("map file: needs at least one p term and one q term");
    return MapSource{SkewProduct(UniPoly(p), BiPoly(q)), std::nullopt};
}

MapSource load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_map(buf.str());
}

std::string format_map(const SkewProduct& f) {
    std::string out;
    char buf[128];
    for (const auto& [i, a] : f.p().terms()) {
        std::snprintf(buf, sizeof buf, "p %d %.17g %.17g\n", i, a.real(), a.imag());
        out += buf;
    }
    for (const auto& [e, b] : f.q().terms()) {
        std::snprintf(buf, sizeof buf, "q %d %d %.17g %.17g\n", e.first, e.second, b.real(), b.imag());
        out += buf;
    }
    return out;
}

std::uint64_t map_hash(const SkewProduct& f) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : format_map(f)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace skewdyn
