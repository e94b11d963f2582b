#include "ddfv/errors.hpp"
#include "ddfv/primal_mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ddfv {

namespace {

struct LineReader {
    std::istringstream in;
    std::size_t line_no = 0;

    explicit LineReader(const std::string& text) : in(text) {}

    /// Next non-blank, non-comment line split into tokens; false at EOF.
    bool next(std::vector<std::string>& tokens)
    {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#')
                continue;
            tokens.clear();
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok)
                tokens.push_back(tok);
            return true;
        }
        return false;
    }
};

double parse_double(const std::string& tok, std::size_t line)
{
    double v = 0.0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ParseError(line, "expected a number, got '" + tok + "'");
    return v;
}

std::size_t parse_count(const std::string& tok, std::size_t line)
{
    std::size_t v = 0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
    return v;
}

std::size_t expect_header(LineReader& reader, const char* keyword)
{
    std::vector<std::string> tokens;
    if (!reader.next(tokens))
        throw ParseError(reader.line_no, std::string("missing '") + keyword + "' section");
    if (tokens.size() != 2 || tokens[0] != keyword)
        throw ParseError(reader.line_no, std::string("expected '") + keyword + " <count>'");
    return parse_count(tokens[1], reader.line_no);
}

} // namespace

MeshReadResult parse_mesh(const std::string& text)
{
    LineReader reader(text);
    std::vector<std::string> tokens;

    const std::size_t nv = expect_header(reader, "vertices");
    std::vector<Point> vertices;
    vertices.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        if (!reader.next(tokens))
            throw ParseError(reader.line_no, "unexpected end of file in vertex list");
        if (tokens.size() != 2)
            throw ParseError(reader.line_no, "vertex line must hold exactly 'x y'");
        vertices.push_back({parse_double(tokens[0], reader.line_no), parse_double(tokens[1], reader.line_no)});
    }

    const std::size_t nc = expect_header(reader, "cells");
    std::vector<std::vector<Index>> cells;
    std::vector<std::string> warnings;
    cells.reserve(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        if (!reader.next(tokens))
            throw ParseError(reader.line_no, "unexpected end of file in cell list");
        const std::size_t k = parse_count(tokens[0], reader.line_no);
        if (k < 3 || tokens.size() != k + 1)
            throw ParseError(reader.line_no, "cell line must hold 'k i1 ... ik' with k >= 3");
        std::vector<Index> cell;
        std::vector<Point> poly;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t v = parse_count(tokens[i + 1], reader.line_no);
            if (v >= nv)
                throw ParseError(reader.line_no, "cell references missing vertex " + std::to_string(v));
            cell.push_back(v);
            poly.push_back(vertices[v]);
        }
        if (polygon_signed_area(poly) < 0.0) {
            std::reverse(cell.begin(), cell.end());
            warnings.push_back("cell " + std::to_string(c) + " (line " + std::to_string(reader.line_no) +
                               ") was clockwise and has been reoriented");
        }
        cells.push_back(std::move(cell));
    }
    if (reader.next(tokens))
        throw ParseError(reader.line_no, "trailing content after cell list");

    return {PrimalMesh(std::move(vertices), std::move(cells)), std::move(warnings)};
}

MeshReadResult read_mesh(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_mesh(buffer.str());
}

std::string format_mesh(const PrimalMesh& mesh)
{
    std::string out;
    char buf[64];
    out += "vertices " + std::to_string(mesh.num_vertices()) + "\n";
    for (const auto& p : mesh.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
        out += buf;
    }
    out += "cells " + std::to_string(mesh.num_cells()) + "\n";
    for (const auto& cell : mesh.cells()) {
        out += std::to_string(cell.size());
        for (Index v : cell)
            out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

void write_mesh(const PrimalMesh& mesh, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    out << format_mesh(mesh);
}

} // namespace ddfv
