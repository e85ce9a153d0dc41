#include "trisec/io.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace trisec {
namespace io {

namespace {

struct Token {
    std::string text;
    int column; // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i + 1)});
        i = j;
    }
    return out;
}

Scalar parse_scalar_at(const Token& tok, int line) {
    std::string err;
    auto s = Scalar::try_parse(tok.text, &err);
    if (!s) throw ParseError("bad scalar '" + tok.text + "': " + err, line, tok.column);
    return *s;
}

long parse_int_at(const Token& tok, int line) {
    try {
        size_t used = 0;
        long v = std::stol(tok.text, &used);
        if (used != tok.text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected integer, got '" + tok.text + "'", line, tok.column);
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Kind::Io, "cannot open " + path);
    return in;
}

} // namespace

PointConfiguration read_config(std::istream& in) {
    std::string line;
    int lineno = 0;
    // Header.
    std::vector<Token> header;
    while (std::getline(in, line)) {
        ++lineno;
        header = tokenize(line);
        if (!header.empty()) break;
    }
    if (header.empty()) throw ParseError("missing 'points' header", lineno, 1);
    if (header[0].text != "points")
        throw ParseError("expected 'points', got '" + header[0].text + "'", lineno,
                         header[0].column);
    if (header.size() < 3 || header.size() > 4)
        throw ParseError("header is 'points <n> <d> [homogeneous]'", lineno, header[0].column);
    long n = parse_int_at(header[1], lineno);
    long d = parse_int_at(header[2], lineno);
    bool homogeneous = false;
    if (header.size() == 4) {
        if (header[3].text != "homogeneous")
            throw ParseError("unknown header flag '" + header[3].text + "'", lineno,
                             header[3].column);
        homogeneous = true;
    }
    if (n <= 0 || d <= 0) throw ParseError("n and d must be positive", lineno, header[1].column);
    size_t width = homogeneous ? d + 1 : d;

    std::vector<Label> labels;
    std::vector<Vec> coords;
    while (static_cast<long>(labels.size()) < n && std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks.size() != width + 1)
            throw ParseError("expected <label> and " + std::to_string(width) + " scalars", lineno,
                             toks[0].column);
        labels.push_back(static_cast<Label>(parse_int_at(toks[0], lineno)));
        Vec row;
        for (size_t i = 1; i < toks.size(); ++i) row.push_back(parse_scalar_at(toks[i], lineno));
        coords.push_back(std::move(row));
    }
    if (static_cast<long>(labels.size()) != n)
        throw ParseError("expected " + std::to_string(n) + " point lines", lineno, 1);
    return PointConfiguration(std::move(labels), std::move(coords), homogeneous);
}

PointConfiguration read_config_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_config(in);
}

void write_config(std::ostream& out, const PointConfiguration& cfg) {
    out << "points " << cfg.size() << ' ' << cfg.dim();
    if (cfg.homogeneous()) out << " homogeneous";
    out << '\n';
    for (Label l : cfg.labels()) {
        out << l;
        for (const auto& x : cfg.coords(l)) out << ' ' << x.str();
        out << '\n';
    }
}

std::string config_str(const PointConfiguration& cfg) {
    std::ostringstream os;
    write_config(os, cfg);
    return os.str();
}

std::vector<Cell> read_cells(std::istream& in) {
    std::vector<Cell> cells;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        Cell c;
        for (const auto& t : toks) c.push_back(static_cast<Label>(parse_int_at(t, lineno)));
        cells.push_back(make_cell(c));
    }
    if (cells.empty()) throw ParseError("no cells in file", lineno, 1);
    return cells;
}

std::vector<Cell> read_cells_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_cells(in);
}

void write_cells(std::ostream& out, const std::vector<Cell>& cells) {
    std::vector<Cell> sorted = cells;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& c : sorted) out << cell_str(c) << '\n';
}

Lift read_lift(std::istream& in) {
    Lift w;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks.size() != 2)
            throw ParseError("lift lines are '<label> <scalar>'", lineno, toks[0].column);
        Label l = static_cast<Label>(parse_int_at(toks[0], lineno));
        if (w.values.count(l)) throw ParseError("duplicate lift label", lineno, toks[0].column);
        w.values[l] = parse_scalar_at(toks[1], lineno);
    }
    if (w.values.empty()) throw ParseError("empty lift file", lineno, 1);
    return w;
}

Lift read_lift_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_lift(in);
}

void write_lift(std::ostream& out, const Lift& w) {
    for (const auto& [l, v] : w.values) out << l << ' ' << v.str() << '\n';
}

} // namespace io
} // namespace trisec
