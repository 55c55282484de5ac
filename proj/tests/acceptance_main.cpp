// Acceptance suite: runs every top-level certification of the toolkit at its
// pinned tolerance and prints one pass/fail line per criterion. The qmask
// binary path must be passed as the only argument (used by the CLI
// determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "qmask/mols_search.hpp"
#include "qmask/partial_trace.hpp"
#include "qmask/verifier.hpp"
#include "test_support.hpp"

using namespace qmask;
using namespace qmask::test;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

LatinSquare xor_table_v4() {
    return LatinSquare::from_cells(4, {1, 2, 3, 4, 2, 1, 4, 3, 3, 4, 1, 2, 4, 3, 2, 1});
}
LatinSquare xor_mate_w4() {
    return LatinSquare::from_cells(4, {1, 2, 3, 4, 4, 3, 2, 1, 2, 1, 4, 3, 3, 4, 1, 2});
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

// 1. Four-qubit encoding exactness for 50 random inputs.
Criterion criterion1() {
    Criterion c;
    const Masker m = bell_masker(2);
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
        const InputState x = sample_input(2, 42, s);
        const Complex a0 = x.coeffs[0], a1 = x.coeffs[1];
        const SparseState enc = encode(m, x);
        const Complex plus = (a0 + a1) / 2.0;
        const Complex minus = (a0 - a1) / 2.0;
        worst = std::max(worst, std::abs(enc.amplitude({0, 0, 0, 0}) - plus));
        worst = std::max(worst, std::abs(enc.amplitude({1, 1, 1, 1}) - plus));
        worst = std::max(worst, std::abs(enc.amplitude({0, 0, 1, 1}) - minus));
        worst = std::max(worst, std::abs(enc.amplitude({1, 1, 0, 0}) - minus));
        for (const auto& e : enc.entries()) {
            const bool doubled = e.idx[0] == e.idx[1] && e.idx[2] == e.idx[3];
            if (!doubled) worst = std::max(worst, std::abs(e.amp));
        }
        c.require(enc.support_size() <= 4, "support exceeds the 4 expected terms");
    }
    c.require(worst <= 1e-14, "amplitude deviation " + fmt(worst));
    c.note("max amplitude deviation " + fmt(worst) + " over 50 inputs");
    return c;
}

// 2. Qutrit encoding: all 27 amplitudes follow the three coefficient classes.
Criterion criterion2() {
    Criterion c;
    const Masker m = bell_masker(3);
    const auto roots = unit_roots(3);
    const double scale = 1.0 / (3.0 * std::sqrt(3.0));
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
        const InputState x = sample_input(3, 42, s);
        const SparseState enc = encode(m, x);
        int checked = 0;
        for (int j0 = 0; j0 < 3; ++j0)
            for (int j1 = 0; j1 < 3; ++j1)
                for (int j2 = 0; j2 < 3; ++j2) {
                    const int t = (j0 + j1 + j2) % 3;
                    const Complex expect =
                        scale * (x.coeffs[0] + roots[t] * x.coeffs[1] +
                                 roots[(2 * t) % 3] * x.coeffs[2]);
                    const Complex got = enc.amplitude({j0, j0, j1, j1, j2, j2});
                    worst = std::max(worst, std::abs(got - expect));
                    ++checked;
                }
        c.require(checked == 27, "expected 27 expansion terms");
        c.require(enc.support_size() <= 27, "support exceeds the 27 expansion terms");
    }
    c.require(worst <= 1e-13, "amplitude deviation " + fmt(worst));
    c.note("max amplitude deviation " + fmt(worst) + " over 20 inputs");
    return c;
}

// 3. Marginal certification across every scheme battery.
Criterion criterion3() {
    Criterion c;
    CheckOptions opt; // 100 samples, seed 42, tol 1e-10
    std::vector<std::pair<std::string, Masker>> battery;
    for (int d = 2; d <= 5; ++d)
        battery.emplace_back("bell d=" + std::to_string(d), bell_masker(d));
    battery.emplace_back("shor", shor_masker());
    battery.emplace_back("mols d=4 (reference pair)",
                         mols_masker(make_mols_pair(xor_table_v4(), xor_mate_w4())));
    for (int d : {3, 5, 7})
        battery.emplace_back("mols d=" + std::to_string(d) + " (cyclic)",
                             mols_masker(cyclic_pair(d)));
    for (int d : {2, 4, 6})
        battery.emplace_back("embedded d=" + std::to_string(d), embedded_masker(d));

    double worst = 0.0;
    for (const auto& [name, m] : battery) {
        const MaskingReport r = masking_check(m, opt);
        worst = std::max({worst, r.gram_dev, r.basis_dev, r.superpos_dev});
        c.require(r.pass, name + " failed (superpos_dev " + fmt(r.superpos_dev) + ")");
    }
    c.note(std::to_string(battery.size()) + " maskers, worst deviation " + fmt(worst));
    return c;
}

// 4. Two-party reduced state identity for bell d=2,3,4.
Criterion criterion4() {
    Criterion c;
    double worst = 0.0;
    for (int d : {2, 3, 4}) {
        const Masker m = bell_masker(d);
        for (int s = 0; s < 50; ++s)
            worst = std::max(worst, two_party_check(m, sample_input(d, 42, s)));
    }
    c.require(worst < 1e-10, "two-party deviation " + fmt(worst));
    c.note("max two-party deviation " + fmt(worst) + " over 3 x 50 inputs");
    return c;
}

// 5. The 9-qubit masker: Gram and all single-qubit marginals.
Criterion criterion5() {
    Criterion c;
    const Masker m = shor_masker();
    const double gram = gram_check(m);
    c.require(gram < 1e-12, "gram deviation " + fmt(gram));

    const DensityMatrix half = DensityMatrix::maximally_mixed(2);
    double worst = 0.0;
    for (const auto& img : m.images)
        for (const auto& rho : single_party_marginals(img))
            worst = std::max(worst, rho.max_abs_diff(half));
    for (int s = 0; s < 100; ++s) {
        const SparseState enc = encode(m, sample_input(2, 42, s));
        for (const auto& rho : single_party_marginals(enc))
            worst = std::max(worst, rho.max_abs_diff(half));
    }
    c.require(worst <= 1e-10, "marginal deviation " + fmt(worst));
    c.note("gram " + fmt(gram) + ", worst of 9x102 marginals " + fmt(worst));
    return c;
}

// 6. Latin-square suite: validation, certification, cyclic family, search.
Criterion criterion6() {
    Criterion c;
    c.require(is_latin(3, {1, 2, 3, 3, 1, 2, 2, 3, 1}), "3x3 example square rejected");
    c.require(are_orthogonal(xor_table_v4(), xor_mate_w4()), "reference order-4 pair not orthogonal");
    for (int d : {3, 5, 7, 9, 11}) {
        const MOLSPair p = cyclic_pair(d);
        c.require(p.certified && is_latin(d, p.first.cells()) && is_latin(d, p.second.cells()),
                  "cyclic pair d=" + std::to_string(d) + " not certified");
    }
    const SearchResult none = mols_search(2);
    c.require(!none.stats.found && none.stats.exhausted,
              "order-2 search did not prove nonexistence");
    for (int d : {3, 4, 5, 7, 8}) {
        const SearchResult r = mols_search(d);
        c.require(r.pair.has_value() && r.pair->certified &&
                      r.stats.nodes <= r.stats.node_budget,
                  "order-" + std::to_string(d) + " search failed within default budget");
    }
    c.note("cyclic d<=11 certified; search: d=2 exhaustive none, d=3,4,5,7,8 found");
    return c;
}

// 7. Oracle equivalence: closed form vs grouping trace; general vs single.
Criterion criterion7() {
    Criterion c;
    auto g = rng(2024);
    double worst_closed = 0.0;
    for (int it = 0; it < 200; ++it) {
        std::uniform_int_distribution<int> dim_pick(2, 5);
        std::uniform_int_distribution<int> comp_pick(2, 4);
        const int keep_dim = dim_pick(g);
        const int c1 = comp_pick(g);
        const int c2 = comp_pick(g);
        const int comp_dim = c1 * c2;
        std::uniform_int_distribution<int> n_pick(1, std::min(comp_dim, 6));
        const int terms = n_pick(g);

        std::vector<std::vector<Complex>> mu;
        while (static_cast<int>(mu.size()) < terms) {
            auto cand = random_unit_vector(g, comp_dim);
            for (const auto& prev : mu) {
                Complex ov{0.0, 0.0};
                for (int i = 0; i < comp_dim; ++i) ov += std::conj(prev[i]) * cand[i];
                for (int i = 0; i < comp_dim; ++i) cand[i] -= ov * prev[i];
            }
            double n2 = 0.0;
            for (const auto& z : cand) n2 += std::norm(z);
            if (n2 < 1e-6) continue;
            const double inv = 1.0 / std::sqrt(n2);
            for (auto& z : cand) z *= inv;
            mu.push_back(std::move(cand));
        }
        std::vector<std::vector<Complex>> locals;
        for (int k = 0; k < terms; ++k) locals.push_back(random_unit_vector(g, keep_dim));
        const auto coeffs = random_unit_vector(g, terms);

        std::vector<AmpEntry> entries;
        for (int k = 0; k < terms; ++k)
            for (int a = 0; a < keep_dim; ++a)
                for (int r = 0; r < comp_dim; ++r)
                    entries.push_back(
                        {MultiIndex{a, r / c2, r % c2}, coeffs[k] * locals[k][a] * mu[k][r]});
        const SparseState state({keep_dim, c1, c2}, std::move(entries));

        worst_closed = std::max(worst_closed, closed_form_reduced_state(coeffs, locals)
                                                  .max_abs_diff(partial_trace(state, 0)));
    }
    c.require(worst_closed <= 1e-12, "closed-form deviation " + fmt(worst_closed));

    double worst_single = 0.0;
    for (int it = 0; it < 200; ++it) {
        const std::vector<int> dims{2, 3, 2, 2};
        const SparseState s = random_sparse_state(g, dims, 8);
        for (int p = 0; p < 4; ++p)
            worst_single = std::max(
                worst_single, partial_trace_general(s, {p}).max_abs_diff(partial_trace(s, p)));
    }
    c.require(worst_single == 0.0,
              "general/single trace disagreement " + fmt(worst_single));
    c.note("closed-form dev " + fmt(worst_closed) + " (200 decompositions), single-keep dev " +
           fmt(worst_single) + " (200 states)");
    return c;
}

// 8. Negative control: the duplicate-register (V,V) map must be flagged.
// Note: every basis image of a (V,V) map is itself perfectly masked — the
// leak appears only for superpositions, which is what the sampled tier of
// the verifier catches (witness: (e1+e2)/sqrt(2) has a 0.25 cross term).
Criterion criterion8() {
    Criterion c;
    const LatinSquare v = xor_table_v4();
    std::vector<int> dims{4, 4, 4};
    std::vector<SparseState> images;
    for (int j = 0; j < 4; ++j) {
        std::vector<AmpEntry> entries;
        for (int k = 0; k < 4; ++k)
            entries.push_back({MultiIndex{k, v.at(j, k) - 1, v.at(j, k) - 1}, Complex{0.5, 0.0}});
        images.emplace_back(dims, std::move(entries));
    }
    const Masker broken = make_masker_unchecked(Scheme::mols, 4, dims, std::move(images));

    // Direct witness, computed with the dense oracle rather than the
    // implementation under test.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::vector<Complex> witness{{inv_sqrt2, 0}, {inv_sqrt2, 0}, {0, 0}, {0, 0}};
    const DensityMatrix direct = dense_partial_trace(combine_images(broken, witness), {0});
    const double direct_dev = direct.max_abs_diff(DensityMatrix::maximally_mixed(4));
    c.require(direct_dev >= 0.1, "direct witness deviation " + fmt(direct_dev));
    c.require(std::abs(direct_dev - 0.25) < 1e-12,
              "witness cross term is " + fmt(direct_dev) + ", expected 0.25");

    const MaskingReport r = masking_check(broken, {});
    c.require(r.superpos_dev >= 0.1, "verifier superpos_dev " + fmt(r.superpos_dev));
    c.require(!r.pass, "verifier did not flag the broken map");
    c.note("witness dev 0.25 on (e1+e2)/sqrt2; verifier superpos_dev " + fmt(r.superpos_dev) +
           ", fail reported (basis images of a (V,V) map are themselves masked)");
    return c;
}

// 9. CLI determinism: identical report invocations are byte-identical.
Criterion criterion9(const std::string& binary) {
    Criterion c;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("qmask_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const std::string cells = "bell:2..3,mols:3,embedded:2";
    for (int run = 1; run <= 2; ++run) {
        const std::string cmd = binary + " report --cells " + cells + " --samples 25 --out " +
                                (dir / ("r" + std::to_string(run) + ".csv")).string() +
                                " --json " + (dir / ("r" + std::to_string(run) + ".json")).string() +
                                " > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        c.require(WIFEXITED(rc) && WEXITSTATUS(rc) == 0,
                  "report run " + std::to_string(run) + " failed");
    }
    const std::string csv1 = slurp(dir / "r1.csv");
    c.require(!csv1.empty() && csv1 == slurp(dir / "r2.csv"), "CSV outputs differ");
    const std::string json1 = slurp(dir / "r1.json");
    c.require(!json1.empty() && json1 == slurp(dir / "r2.json"), "JSON outputs differ");
    c.note("CSV and JSON byte-identical across two runs");
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
    return c;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-qmask-binary>\n");
        return 2;
    }
    const std::string binary = argv[1];

    struct Entry {
        const char* name;
        double time_limit_s;
        std::function<Criterion()> run;
    };
    const std::vector<Entry> entries{
        {"four-qubit encoding exactness (50 inputs, 1e-14)", 1.0, criterion1},
        {"qutrit coefficient classes (20 inputs, 27 amps, 1e-13)", 1.0, criterion2},
        {"marginal certification battery (tol 1e-10, 100 samples)", 60.0, criterion3},
        {"two-party reduced-state identity (bell d=2,3,4, 1e-10)", 5.0, criterion4},
        {"9-qubit masker gram + marginals (1e-12 / 1e-10)", 2.0, criterion5},
        {"latin-square suite (cyclic, searches, default budget)", 30.0, criterion6},
        {"oracle equivalence (closed form + single-keep, 200 each)", 10.0, criterion7},
        {"negative control: duplicate-register map flagged", 30.0, criterion8},
        {"CLI report determinism (byte-identical CSV/JSON)", 60.0, [&] { return criterion9(binary); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Criterion c = entries[i].run();
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt > entries[i].time_limit_s)
            c.require(false, "runtime " + fmt(dt) + " s exceeds " +
                                 fmt(entries[i].time_limit_s) + " s");
        std::printf("[%s] criterion %zu: %s — %s (%.2f s)\n", c.pass ? "PASS" : "FAIL", i + 1,
                    entries[i].name, c.detail.c_str(), dt);
        if (!c.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all %zu criteria passed\n", entries.size());
    return failures == 0 ? 0 : 1;
}
