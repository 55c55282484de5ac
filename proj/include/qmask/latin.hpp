// latin.hpp
// Latin squares over symbols {1..d} and orthogonal pairs. A pair is
// orthogonal when the cellwise symbol pairs (v_jk, w_jk) exhaust all d^2
// ordered pairs; that property is what makes a pair usable as a tripartite
// masking recipe.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qmask/errors.hpp"

namespace qmask {

// True iff every row and every column of the d x d grid is a permutation of
// 1..d. Throws FormatError for a non-square grid or out-of-range symbols.
bool is_latin(int order, const std::vector<int>& cells);

class LatinSquare {
public:
    // cells row-major, symbols 1..order. Throws FormatError unless the grid
    // is a valid Latin square.
    static LatinSquare from_cells(int order, std::vector<int> cells);

    int order() const { return order_; }

    // row/col are 0-based; the returned symbol is 1-based.
    int at(int row, int col) const {
        return cells_[static_cast<std::size_t>(row) * order_ + col];
    }

    const std::vector<int>& cells() const { return cells_; }

    friend bool operator==(const LatinSquare& a, const LatinSquare& b) = default;

private:
    LatinSquare(int order, std::vector<int> cells)
        : order_(order), cells_(std::move(cells)) {}

    int order_ = 0;
    std::vector<int> cells_;
};

// True iff the d^2 cellwise pairs (v_jk, w_jk) are pairwise distinct.
// Throws ArgumentError on an order mismatch.
bool are_orthogonal(const LatinSquare& v, const LatinSquare& w);

struct MOLSPair {
    LatinSquare first;
    LatinSquare second;
    // Set only after are_orthogonal returned true.
    bool certified = false;
};

// Bundles two squares, running the orthogonality check to set `certified`.
MOLSPair make_mols_pair(LatinSquare first, LatinSquare second);

// The circulant pair for odd d >= 3:
//   v_jk = k - j + 1 (mod d),  w_jk = j + k - 1 (mod d)
// with representatives taken in {1..d}. Returns a certified pair.
MOLSPair cyclic_pair(int d);

// Text format: d lines of d whitespace-separated symbols in 1..d.
LatinSquare read_square(std::istream& in);
LatinSquare read_square(const std::string& text);
LatinSquare read_square_file(const std::string& path);

// Rows in order, single spaces, one trailing newline per row.
std::string write_square(const LatinSquare& square);
void write_square_file(const LatinSquare& square, const std::string& path);

} // namespace qmask
