#include "dyext/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "dyext/errors.hpp"

namespace dyext {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Non-empty lines with comments stripped.
std::vector<std::string_view> content_lines(std::string_view text) {
    std::vector<std::string_view> out;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

std::uint32_t parse_index(std::string_view s, const char* what) {
    s = trim(s);
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ParseError(std::string("malformed ") + what + " '" + std::string(s) + "'");
    return v;
}

Cell parse_cell(std::string_view s, const GridGeometry& g) {
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected col,row in '" + std::string(s) + "'");
    const Cell c{parse_index(s.substr(0, comma), "column"), parse_index(s.substr(comma + 1), "row")};
    if (c.column >= g.columns() || c.row >= g.rows())
        throw ParseError("cell " + std::string(trim(s)) + " lies outside the grid");
    return c;
}

std::pair<GridGeometry, std::vector<std::string_view>> split_header(std::string_view text, const char* what) {
    auto lines = content_lines(text);
    if (lines.empty()) throw ParseError(std::string(what) + ": missing header");
    GridGeometry g = parse_header(lines.front());
    lines.erase(lines.begin());
    return {std::move(g), std::move(lines)};
}

}  // namespace

GridGeometry parse_header(std::string_view line) {
    std::optional<unsigned> rank;
    std::optional<std::uint32_t> rows;
    std::string kind;
    std::vector<Rational> weights;
    std::istringstream in{std::string(line)};
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw ParseError("header token '" + token + "' is not key=value");
        const std::string key = token.substr(0, eq), value = token.substr(eq + 1);
        if (key == "rank") {
            rank = parse_index(value, "rank");
        } else if (key == "rows") {
            rows = parse_index(value, "rows");
        } else if (key == "kind") {
            if (value != "square" && value != "discrete") throw ParseError("unknown kind '" + value + "'");
            kind = value;
        } else if (key == "weights") {
            std::string_view rest = value;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                weights.push_back(parse_rational(rest.substr(0, comma)));
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            }
        } else {
            throw ParseError("unknown header key '" + key + "'");
        }
    }
    if (!rank || !rows) throw ParseError("header needs rank= and rows=");
    if (*rank > 30) throw ParseError("rank " + std::to_string(*rank) + " is out of range");
    if (kind.empty()) kind = weights.empty() ? "square" : "discrete";
    if (kind == "square") {
        if (!weights.empty()) throw ParseError("a square header takes no weights");
        if (*rows != (std::uint64_t{1} << *rank)) throw ParseError("a square grid of rank k has 2^k rows");
        return GridGeometry::square(*rank);
    }
    if (weights.empty()) {
        if (*rows == 0) throw ParseError("a discrete grid needs at least one level");
        return GridGeometry::discrete_uniform(*rank, *rows);
    }
    if (weights.size() != *rows) throw ParseError("weights= lists " + std::to_string(weights.size()) + " levels");
    try {
        return GridGeometry::discrete(*rank, std::move(weights));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

std::string format_header(const GridGeometry& g) {
    std::string out = "rank=" + std::to_string(g.rank()) + " rows=" + std::to_string(g.rows());
    if (g.is_square()) return out + " kind=square";
    out += " kind=discrete weights=";
    for (std::size_t i = 0; i < g.weights().size(); ++i) out += (i ? "," : "") + to_string(g.weights()[i]);
    return out;
}

CellPermutation parse_permutation(std::string_view text) {
    auto [g, lines] = split_header(text, "permutation");
    const std::uint32_t n = g.cell_count();
    std::vector<std::uint32_t> image(n, n);
    auto assign = [&](std::uint32_t from, std::uint32_t to) {
        if (image[from] != n) throw ParseError("cell " + std::to_string(from + 1) + " is mapped twice");
        image[from] = to;
    };
    for (auto line : lines) {
        if (line.front() == '(') {
            std::string_view rest = line;
            while (!(rest = trim(rest)).empty()) {
                if (rest.front() != '(') throw ParseError("expected '(' in '" + std::string(line) + "'");
                const auto close = rest.find(')');
                if (close == std::string_view::npos) throw ParseError("unclosed cycle in '" + std::string(line) + "'");
                std::istringstream in{std::string(rest.substr(1, close - 1))};
                std::vector<std::uint32_t> cycle;
                std::string label;
                while (in >> label) {
                    const std::uint32_t v = parse_index(label, "label");
                    if (v == 0 || v > n) throw ParseError("label " + label + " is outside 1.." + std::to_string(n));
                    cycle.push_back(v - 1);
                }
                for (std::size_t i = 0; i < cycle.size(); ++i) assign(cycle[i], cycle[(i + 1) % cycle.size()]);
                rest = rest.substr(close + 1);
            }
        } else {
            const auto arrow = line.find("->");
            if (arrow == std::string_view::npos) throw ParseError("unrecognized line '" + std::string(line) + "'");
            assign(g.index(parse_cell(line.substr(0, arrow), g)), g.index(parse_cell(line.substr(arrow + 2), g)));
        }
    }
    std::vector<bool> hit(n, false);
    for (std::uint32_t i = 0; i < n; ++i)
        if (image[i] != n) {
            if (hit[image[i]]) throw ParseError("cell " + std::to_string(image[i] + 1) + " has two preimages");
            hit[image[i]] = true;
        }
    for (std::uint32_t i = 0; i < n; ++i)
        if (image[i] == n) {
            if (hit[i]) throw ParseError("cell " + std::to_string(i + 1) + " is an image but is never mapped");
            image[i] = i;
        }
    return CellPermutation(g, std::move(image));
}

std::string format_permutation(const CellPermutation& p, PermutationStyle style) {
    const auto& g = p.geometry();
    std::string out = format_header(g) + "\n";
    if (style == PermutationStyle::explicit_map) {
        for (std::uint32_t i = 0; i < g.cell_count(); ++i) {
            if (p(i) == i) continue;
            const Cell a = g.cell(i), b = g.cell(p(i));
            out += std::to_string(a.column) + "," + std::to_string(a.row) + " -> " + std::to_string(b.column) + "," +
                   std::to_string(b.row) + "\n";
        }
        return out;
    }
    std::string body;
    for (const auto& c : p.cycles().cycles) {
        if (c.size() < 2) continue;
        body += "(";
        for (std::size_t i = 0; i < c.size(); ++i) body += (i ? " " : "") + std::to_string(c[i] + 1);
        body += ")";
    }
    if (!body.empty()) out += body + "\n";
    return out;
}

DyadicSet parse_dyadic_set(std::string_view text) {
    auto [g, lines] = split_header(text, "set");
    DyadicSet s(g);
    for (auto line : lines) s.insert(g.index(parse_cell(line, g)));
    return s;
}

std::string format_dyadic_set(const DyadicSet& set) {
    const auto& g = set.geometry();
    std::string out = format_header(g) + "\n";
    for (auto i : set.cells()) {
        const Cell c = g.cell(i);
        out += std::to_string(c.column) + "," + std::to_string(c.row) + "\n";
    }
    return out;
}

GridFunction parse_grid_function(std::string_view text) {
    auto [g, lines] = split_header(text, "function");
    std::vector<Rational> values;
    for (auto line : lines) {
        std::istringstream in{std::string(line)};
        std::string token;
        while (in >> token) values.push_back(parse_rational(token));
    }
    if (values.size() != g.cell_count())
        throw ParseError("function lists " + std::to_string(values.size()) + " values for " +
                         std::to_string(g.cell_count()) + " cells");
    return GridFunction(g, std::move(values));
}

std::string format_grid_function(const GridFunction& f) {
    const auto& g = f.geometry();
    std::string out = format_header(g) + "\n";
    for (std::uint32_t r = 0; r < g.rows(); ++r) {
        for (std::uint32_t c = 0; c < g.columns(); ++c) out += (c ? " " : "") + to_string(f.at({c, r}));
        out += "\n";
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw Error("cannot write " + path.string());
}

}  // namespace dyext
