#include "qmask/latin.hpp"

#include <fstream>
#include <sstream>

namespace qmask {

namespace {

// n reduced into the representative set {1..d}.
int mod1(long long n, int d) {
    long long r = (n - 1) % d;
    if (r < 0) r += d;
    return static_cast<int>(r + 1);
}

void validate_grid(int order, const std::vector<int>& cells) {
    if (order < 1) throw FormatError("Latin square: order must be >= 1");
    if (cells.size() != static_cast<std::size_t>(order) * order)
        throw FormatError("Latin square: expected " + std::to_string(order * order) +
                          " cells, got " + std::to_string(cells.size()));
    for (int s : cells)
        if (s < 1 || s > order)
            throw FormatError("Latin square: symbol " + std::to_string(s) +
                              " out of range 1.." + std::to_string(order));
}

} // namespace

bool is_latin(int order, const std::vector<int>& cells) {
    validate_grid(order, cells);
    std::vector<char> seen(static_cast<std::size_t>(order) + 1);
    for (int r = 0; r < order; ++r) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int c = 0; c < order; ++c) {
            const int s = cells[static_cast<std::size_t>(r) * order + c];
            if (seen[s]) return false;
            seen[s] = 1;
        }
    }
    for (int c = 0; c < order; ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int r = 0; r < order; ++r) {
            const int s = cells[static_cast<std::size_t>(r) * order + c];
            if (seen[s]) return false;
            seen[s] = 1;
        }
    }
    return true;
}

LatinSquare LatinSquare::from_cells(int order, std::vector<int> cells) {
    if (!is_latin(order, cells))
        throw FormatError("Latin square: a symbol repeats within a row or column");
    return LatinSquare(order, std::move(cells));
}

bool are_orthogonal(const LatinSquare& v, const LatinSquare& w) {
    if (v.order() != w.order())
        throw ArgumentError("are_orthogonal: squares have different orders");
    const int d = v.order();
    std::vector<char> seen(static_cast<std::size_t>(d) * d, 0);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            const std::size_t key =
                static_cast<std::size_t>(v.at(r, c) - 1) * d + (w.at(r, c) - 1);
            if (seen[key]) return false;
            seen[key] = 1;
        }
    }
    return true;
}

MOLSPair make_mols_pair(LatinSquare first, LatinSquare second) {
    if (first.order() != second.order())
        throw ArgumentError("make_mols_pair: squares have different orders");
    const bool ok = are_orthogonal(first, second);
    return MOLSPair{std::move(first), std::move(second), ok};
}

MOLSPair cyclic_pair(int d) {
    if (d < 3 || d % 2 == 0)
        throw UnsupportedOrderError("cyclic_pair: the circulant pair exists only for odd d >= 3"
                                    " (got d = " + std::to_string(d) + ")");
    std::vector<int> v(static_cast<std::size_t>(d) * d);
    std::vector<int> w(static_cast<std::size_t>(d) * d);
    for (int j = 1; j <= d; ++j) {
        for (int k = 1; k <= d; ++k) {
            v[static_cast<std::size_t>(j - 1) * d + (k - 1)] = mod1(k - j + 1, d);
            w[static_cast<std::size_t>(j - 1) * d + (k - 1)] = mod1(j + k - 1, d);
        }
    }
    MOLSPair pair = make_mols_pair(LatinSquare::from_cells(d, std::move(v)),
                                   LatinSquare::from_cells(d, std::move(w)));
    if (!pair.certified)
        throw CertificationRequiredError("cyclic_pair: orthogonality check failed");
    return pair;
}

LatinSquare read_square(std::istream& in) {
    std::vector<int> cells;
    int order = -1;
    int line_no = 0;
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<int> row;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            int s = 0;
            try {
                s = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw FormatError("line " + std::to_string(line_no) + ": '" + tok +
                                  "' is not an integer");
            }
            if (used != tok.size())
                throw FormatError("line " + std::to_string(line_no) + ": '" + tok +
                                  "' is not an integer");
            row.push_back(s);
        }
        if (row.empty()) {
            if (order >= 0 && rows == order) continue; // trailing blank lines
            throw FormatError("line " + std::to_string(line_no) + ": empty row");
        }
        if (order < 0) order = static_cast<int>(row.size());
        if (rows == order)
            throw FormatError("line " + std::to_string(line_no) + ": extra row beyond order " +
                              std::to_string(order));
        if (static_cast<int>(row.size()) != order)
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(order) + " symbols, got " +
                              std::to_string(row.size()));
        for (int s : row)
            if (s < 1 || s > order)
                throw FormatError("line " + std::to_string(line_no) + ": symbol " +
                                  std::to_string(s) + " out of range for order " +
                                  std::to_string(order));
        cells.insert(cells.end(), row.begin(), row.end());
        ++rows;
    }
    if (order < 0) throw FormatError("line 1: empty input");
    if (rows != order)
        throw FormatError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(order) + " rows, got " + std::to_string(rows));
    return LatinSquare::from_cells(order, std::move(cells));
}

LatinSquare read_square(const std::string& text) {
    std::istringstream in(text);
    return read_square(in);
}

LatinSquare read_square_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open square file: " + path);
    return read_square(in);
}

std::string write_square(const LatinSquare& square) {
    std::ostringstream out;
    const int d = square.order();
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            if (c) out << ' ';
            out << square.at(r, c);
        }
        out << '\n';
    }
    return out.str();
}

void write_square_file(const LatinSquare& square, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write square file: " + path);
    out << write_square(square);
}

} // namespace qmask
