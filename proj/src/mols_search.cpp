#include "qmask/mols_search.hpp"

#include <bit>
#include <utility>
#include <vector>

namespace qmask {

namespace {

// Symbols are 0-based inside the search; masks are per-row/per-column
// bitmasks of used symbols, pair_used[v] is the bitmask of w symbols already
// paired with v.
//
// The first square is filled row-by-row in reduced form with symbols tried
// in ascending order. For each completed first square the second square is
// filled cell-by-cell; the next cell is always one with the fewest remaining
// candidates under the (row, column, pair-distinctness) constraints, ties
// broken row-major, so a square without an orthogonal mate is refuted
// quickly. Everything is deterministic given (d, budget).
class Searcher {
public:
    Searcher(int d, std::uint64_t budget)
        : d_(d),
          budget_(budget),
          full_((1u << d) - 1u),
          v_(static_cast<std::size_t>(d) * d, -1),
          w_(static_cast<std::size_t>(d) * d, -1),
          w_open_(static_cast<std::size_t>(d) * d, 0),
          vrow_(d, 0), vcol_(d, 0), wrow_(d, 0), wcol_(d, 0),
          pair_used_(d, 0) {
        // First square reduced: row 0 and column 0 natural.
        for (int c = 0; c < d_; ++c) set_v(0, c, c);
        for (int r = 1; r < d_; ++r) set_v(r, 0, r);
        for (int r = 1; r < d_; ++r)
            for (int c = 1; c < d_; ++c) vcells_.emplace_back(r, c);
        // Second square: first row natural; seeds the pair set with (c, c).
        for (int c = 0; c < d_; ++c) set_w(0, c, c);
        for (int r = 1; r < d_; ++r)
            for (int c = 0; c < d_; ++c) w_open_[static_cast<std::size_t>(r) * d_ + c] = 1;
    }

    SearchResult run() {
        const bool found = fill_v(0);
        SearchResult result;
        result.stats.nodes = nodes_;
        result.stats.node_budget = budget_;
        result.stats.found = found;
        result.stats.exhausted = !found && !budget_hit_;
        if (found) {
            std::vector<int> vc(v_.size()), wc(w_.size());
            for (std::size_t i = 0; i < v_.size(); ++i) {
                vc[i] = v_[i] + 1;
                wc[i] = w_[i] + 1;
            }
            MOLSPair pair = make_mols_pair(LatinSquare::from_cells(d_, std::move(vc)),
                                           LatinSquare::from_cells(d_, std::move(wc)));
            if (!pair.certified)
                throw CertificationRequiredError("mols_search: produced pair failed certification");
            result.pair = std::move(pair);
        }
        return result;
    }

private:
    void set_v(int r, int c, int s) {
        v_[static_cast<std::size_t>(r) * d_ + c] = s;
        vrow_[r] |= 1u << s;
        vcol_[c] |= 1u << s;
    }
    void unset_v(int r, int c, int s) {
        v_[static_cast<std::size_t>(r) * d_ + c] = -1;
        vrow_[r] &= ~(1u << s);
        vcol_[c] &= ~(1u << s);
    }
    void set_w(int r, int c, int s) {
        w_[static_cast<std::size_t>(r) * d_ + c] = s;
        wrow_[r] |= 1u << s;
        wcol_[c] |= 1u << s;
        pair_used_[v_[static_cast<std::size_t>(r) * d_ + c]] |= 1u << s;
    }
    void unset_w(int r, int c, int s) {
        w_[static_cast<std::size_t>(r) * d_ + c] = -1;
        wrow_[r] &= ~(1u << s);
        wcol_[c] &= ~(1u << s);
        pair_used_[v_[static_cast<std::size_t>(r) * d_ + c]] &= ~(1u << s);
    }

    bool fill_v(std::size_t pos) {
        if (pos == vcells_.size()) return fill_w(static_cast<int>(w_open_count()));
        const auto [r, c] = vcells_[pos];
        std::uint32_t avail = full_ & ~(vrow_[r] | vcol_[c]);
        while (avail) {
            const int s = std::countr_zero(avail);
            avail &= avail - 1;
            if (++nodes_ > budget_) {
                budget_hit_ = true;
                return false;
            }
            set_v(r, c, s);
            if (fill_v(pos + 1)) return true;
            unset_v(r, c, s);
            if (budget_hit_) return false;
        }
        return false;
    }

    std::size_t w_open_count() const {
        return static_cast<std::size_t>(d_ - 1) * d_;
    }

    bool fill_w(int open) {
        if (open == 0) return true;

        // Most-constrained open cell, ties row-major.
        int best_r = -1, best_c = -1, best_count = d_ + 1;
        std::uint32_t best_avail = 0;
        for (int r = 1; r < d_; ++r) {
            for (int c = 0; c < d_; ++c) {
                if (!w_open_[static_cast<std::size_t>(r) * d_ + c]) continue;
                const int v = v_[static_cast<std::size_t>(r) * d_ + c];
                const std::uint32_t avail = full_ & ~(wrow_[r] | wcol_[c] | pair_used_[v]);
                const int count = std::popcount(avail);
                if (count < best_count) {
                    best_count = count;
                    best_avail = avail;
                    best_r = r;
                    best_c = c;
                    if (count == 0) return false;
                }
            }
        }

        std::uint32_t avail = best_avail;
        w_open_[static_cast<std::size_t>(best_r) * d_ + best_c] = 0;
        while (avail) {
            const int s = std::countr_zero(avail);
            avail &= avail - 1;
            if (++nodes_ > budget_) {
                budget_hit_ = true;
                break;
            }
            set_w(best_r, best_c, s);
            if (fill_w(open - 1)) return true;
            unset_w(best_r, best_c, s);
            if (budget_hit_) break;
        }
        w_open_[static_cast<std::size_t>(best_r) * d_ + best_c] = 1;
        return false;
    }

    int d_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool budget_hit_ = false;
    std::uint32_t full_;
    std::vector<int> v_, w_;
    std::vector<char> w_open_;
    std::vector<std::uint32_t> vrow_, vcol_, wrow_, wcol_, pair_used_;
    std::vector<std::pair<int, int>> vcells_;
};

} // namespace

SearchResult mols_search(int d, std::uint64_t node_budget) {
    if (d < 2) throw ArgumentError("mols_search: order must be >= 2");
    if (d > 16)
        throw ResourceCapError("mols_search: orders above 16 are outside the supported range");
    return Searcher(d, node_budget).run();
}

} // namespace qmask
