// qmask — command-line front end for the masking toolkit.
//
// Subcommands:
//   mask    encode an input state through a masking scheme, write the dump
//   verify  certify the masking property, write a report (exit 2 on fail)
//   latin   Latin-square tooling: check | cyclic | search
//   report  one CSV/JSON row of certification results per (scheme, d) cell
//
// Exit codes: 0 success/pass, 1 usage or construction error, 2 verification
// failure. Identical flags produce byte-identical output files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmask/errors.hpp"
#include "qmask/latin.hpp"
#include "qmask/masker.hpp"
#include "qmask/mols_search.hpp"
#include "qmask/state_io.hpp"
#include "qmask/util.hpp"
#include "qmask/verifier.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qmask;

constexpr int EXIT_USAGE = 1;
constexpr int EXIT_CHECK_FAILED = 2;

int bell_cap_from_env() {
    if (const char* cap = std::getenv("QMASK_CAP_D")) {
        try {
            const int v = std::stoi(cap);
            if (v >= 2) return v;
        } catch (const std::exception&) {
        }
        throw ArgumentError("QMASK_CAP_D must be an integer >= 2");
    }
    return BELL_DIM_CAP;
}

// "re" or "re+imJ" / "re-imJ" (J or j), e.g. 0.5, -0.25+0.3J, 1e-2-2j.
Complex parse_complex(const std::string& tok) {
    if (tok.empty()) throw FormatError("empty coefficient");
    std::size_t pos = 0;
    double re = 0.0;
    try {
        re = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw FormatError("coefficient '" + tok + "' is not a number");
    }
    if (pos == tok.size()) return Complex{re, 0.0};

    const std::string rest = tok.substr(pos);
    if (rest.back() != 'J' && rest.back() != 'j')
        throw FormatError("coefficient '" + tok + "': expected re or re+imJ");
    const std::string imag_part = rest.substr(0, rest.size() - 1);
    if (imag_part.empty() || (imag_part[0] != '+' && imag_part[0] != '-'))
        throw FormatError("coefficient '" + tok + "': expected re or re+imJ");
    double im = 0.0;
    std::size_t ipos = 0;
    try {
        im = std::stod(imag_part, &ipos);
    } catch (const std::exception&) {
        throw FormatError("coefficient '" + tok + "': bad imaginary part");
    }
    if (ipos != imag_part.size())
        throw FormatError("coefficient '" + tok + "': bad imaginary part");
    return Complex{re, im};
}

std::vector<Complex> parse_coeff_list(const std::string& list) {
    std::vector<Complex> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_complex(tok));
    if (out.empty()) throw FormatError("empty coefficient list");
    return out;
}

// Renormalizes inputs within 1e-6 of unit norm (with a notice); larger
// deviations are rejected rather than silently rescaled.
InputState input_from_coeffs(std::vector<Complex> coeffs) {
    double n2 = 0.0;
    for (const auto& c : coeffs) n2 += std::norm(c);
    const double n = std::sqrt(n2);
    if (std::abs(n - 1.0) > 1e-6)
        throw ArgumentError("input coefficients are not normalized (|norm-1| = " +
                            format_double(std::abs(n - 1.0)) + " > 1e-06)");
    if (n == 0.0) throw ArgumentError("input coefficients are all zero");
    if (std::abs(n - 1.0) > 1e-12) {
        std::cerr << "notice: renormalizing input coefficients (|norm-1| = "
                  << format_double(std::abs(n - 1.0)) << ")\n";
    }
    for (auto& c : coeffs) c /= n;
    return InputState::make(std::move(coeffs));
}

std::pair<std::string, std::string> split_pair_arg(const std::string& arg, const char* what) {
    const auto comma = arg.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 >= arg.size())
        throw ArgumentError(std::string(what) + " expects two comma-separated paths");
    return {arg.substr(0, comma), arg.substr(comma + 1)};
}

MOLSPair load_pair(const std::string& pair_arg) {
    auto [vpath, wpath] = split_pair_arg(pair_arg, "--pair");
    return make_mols_pair(read_square_file(vpath), read_square_file(wpath));
}

// Builds the masker for a (scheme, d) cell. For the mols scheme without an
// explicit pair: odd d uses the cyclic pair, even d runs the bounded search.
Masker build_masker(const std::string& scheme_str, int d,
                    const std::optional<std::string>& pair_arg,
                    std::uint64_t budget) {
    const Scheme scheme = scheme_from_name(scheme_str);
    switch (scheme) {
        case Scheme::bell:
            if (d < 2) throw ArgumentError("bell scheme needs --d >= 2");
            return bell_masker(d, bell_cap_from_env());
        case Scheme::shor:
            if (d != 0 && d != 2) throw ArgumentError("shor scheme is fixed at d = 2");
            return shor_masker();
        case Scheme::mols: {
            if (pair_arg) {
                const MOLSPair pair = load_pair(*pair_arg);
                if (d != 0 && d != pair.first.order())
                    throw ArgumentError("--d " + std::to_string(d) +
                                        " does not match the pair order " +
                                        std::to_string(pair.first.order()));
                return mols_masker(pair);
            }
            if (d < 3) throw ArgumentError("mols scheme needs --d >= 3 or --pair files");
            if (d % 2 == 1) return mols_masker(cyclic_pair(d));
            const SearchResult res = mols_search(d, budget);
            if (!res.pair)
                throw UnsupportedOrderError(
                    "no orthogonal pair of order " + std::to_string(d) +
                    (res.stats.exhausted ? " exists" : " found within the node budget") +
                    "; use the embedded scheme");
            return mols_masker(*res.pair);
        }
        case Scheme::embedded:
            if (d < 2) throw ArgumentError("embedded scheme needs --d >= 2");
            return embedded_masker(d);
    }
    throw ArgumentError("unknown scheme");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write output file: " + path);
    out << text;
}

void emit_json(const ordered_json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

// ---------------------------------------------------------------- mask ----

struct MaskArgs {
    std::string scheme;
    int d = 0;
    std::string pair;
    std::string coeffs;
    int basis = 0;
    bool basis_given = false;
    std::string out;
};

int run_mask(const MaskArgs& a) {
    ordered_json config;
    config["command"] = "mask";
    config["scheme"] = a.scheme;
    config["d"] = a.d;
    if (!a.pair.empty()) config["pair"] = a.pair;
    if (a.basis_given) config["basis"] = a.basis;
    if (!a.coeffs.empty()) config["coeffs"] = a.coeffs;
    config["format"] = "json";

    const Masker m = build_masker(a.scheme, a.d,
                                  a.pair.empty() ? std::nullopt : std::optional(a.pair),
                                  DEFAULT_NODE_BUDGET);

    InputState x = [&] {
        if (a.basis_given && !a.coeffs.empty())
            throw ArgumentError("--basis and --coeffs are mutually exclusive");
        if (a.basis_given) return InputState::basis(m.input_dim, a.basis);
        if (!a.coeffs.empty()) {
            auto c = parse_coeff_list(a.coeffs);
            if (static_cast<int>(c.size()) != m.input_dim)
                throw ArgumentError("expected " + std::to_string(m.input_dim) +
                                    " coefficients, got " + std::to_string(c.size()));
            return input_from_coeffs(std::move(c));
        }
        throw ArgumentError("mask needs --basis or --coeffs");
    }();

    ordered_json j;
    j["config"] = std::move(config);
    ordered_json dump = state_to_json(encode(m, x));
    j["dims"] = std::move(dump["dims"]);
    j["amps"] = std::move(dump["amps"]);
    emit_json(j, a.out);
    return 0;
}

// -------------------------------------------------------------- verify ----

struct VerifyArgs {
    std::string scheme;
    int d = 0;
    std::string pair;
    int samples = 100;
    std::uint64_t seed = 42;
    double tol = DEFAULT_CHECK_TOL;
    std::string out;
    bool serial = false;
    bool diagnostics = false;
};

int run_verify(const VerifyArgs& a) {
    ordered_json config;
    config["command"] = "verify";
    config["scheme"] = a.scheme;
    config["d"] = a.d;
    if (!a.pair.empty()) config["pair"] = a.pair;
    config["samples"] = a.samples;
    config["seed"] = a.seed;
    config["tol"] = a.tol;
    config["serial"] = a.serial;
    config["diagnostics"] = a.diagnostics;
    config["format"] = "json";

    const Masker m = build_masker(a.scheme, a.d,
                                  a.pair.empty() ? std::nullopt : std::optional(a.pair),
                                  DEFAULT_NODE_BUDGET);

    CheckOptions opt;
    opt.samples = a.samples;
    opt.seed = a.seed;
    opt.tol = a.tol;
    opt.mode = a.serial ? ExecMode::serial : ExecMode::parallel;
    opt.diagnostics = a.diagnostics;
    const MaskingReport rep = masking_check(m, opt);

    ordered_json j;
    j["config"] = std::move(config);
    j["report"] = report_to_json(rep);
    emit_json(j, a.out);

    std::cerr << (rep.pass ? "PASS" : "FAIL") << " scheme=" << rep.scheme << " d=" << rep.d
              << " gram_dev=" << format_double(rep.gram_dev)
              << " basis_dev=" << format_double(rep.basis_dev)
              << " superpos_dev=" << format_double(rep.superpos_dev) << "\n";
    return rep.pass ? 0 : EXIT_CHECK_FAILED;
}

// --------------------------------------------------------------- latin ----

int run_latin_check(const std::string& vpath, const std::string& wpath) {
    const LatinSquare v = read_square_file(vpath);
    const LatinSquare w = read_square_file(wpath);
    const bool ok = are_orthogonal(v, w);
    std::cout << "orthogonal: " << (ok ? "true" : "false") << "\n";
    return ok ? 0 : EXIT_CHECK_FAILED;
}

int run_latin_cyclic(int d, const std::string& out) {
    const MOLSPair pair = cyclic_pair(d);
    if (out.empty()) {
        std::cout << write_square(pair.first) << "\n" << write_square(pair.second);
        return 0;
    }
    auto [vpath, wpath] = split_pair_arg(out, "--out");
    write_square_file(pair.first, vpath);
    write_square_file(pair.second, wpath);
    std::cout << "wrote certified pair: " << vpath << " " << wpath << "\n";
    return 0;
}

int run_latin_search(int d, std::uint64_t budget, const std::string& out) {
    const SearchResult res = mols_search(d, budget);
    std::cout << "order: " << d << "\n";
    std::cout << "nodes: " << res.stats.nodes << " (budget " << res.stats.node_budget << ")\n";
    if (res.pair) {
        std::cout << "found certified pair\n";
        if (!out.empty()) {
            auto [vpath, wpath] = split_pair_arg(out, "--out");
            write_square_file(res.pair->first, vpath);
            write_square_file(res.pair->second, wpath);
            std::cout << "wrote pair: " << vpath << " " << wpath << "\n";
        } else {
            std::cout << write_square(res.pair->first) << "\n" << write_square(res.pair->second);
        }
        return 0;
    }
    if (res.stats.exhausted) {
        std::cout << "none exists (exhaustive)\n";
    } else {
        std::cout << "none found within budget (not a nonexistence proof)\n";
    }
    return EXIT_CHECK_FAILED;
}

// -------------------------------------------------------------- report ----

struct ReportArgs {
    std::string cells;
    int samples = 100;
    std::uint64_t seed = 42;
    double tol = DEFAULT_CHECK_TOL;
    std::string out;
    std::string json_out;
    bool serial = false;
};

struct Cell {
    std::string scheme;
    int d = 0;
};

// "bell:2..4,mols:3,shor" -> cells in argument order.
std::vector<Cell> parse_cells(const std::string& arg) {
    std::vector<Cell> cells;
    if (arg.empty()) return cells;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw ArgumentError("--cells: empty cell");
        const auto colon = tok.find(':');
        std::string scheme = tok.substr(0, colon);
        if (colon == std::string::npos) {
            if (scheme != "shor")
                throw ArgumentError("--cells: '" + tok + "' needs an explicit dimension");
            cells.push_back({scheme, 2});
            continue;
        }
        const std::string range = tok.substr(colon + 1);
        const auto dots = range.find("..");
        try {
            if (dots == std::string::npos) {
                cells.push_back({scheme, std::stoi(range)});
            } else {
                const int lo = std::stoi(range.substr(0, dots));
                const int hi = std::stoi(range.substr(dots + 2));
                if (hi < lo) throw ArgumentError("--cells: empty range in '" + tok + "'");
                for (int d = lo; d <= hi; ++d) cells.push_back({scheme, d});
            }
        } catch (const std::invalid_argument&) {
            throw ArgumentError("--cells: bad dimension in '" + tok + "'");
        } catch (const std::out_of_range&) {
            throw ArgumentError("--cells: bad dimension in '" + tok + "'");
        }
    }
    return cells;
}

std::string join_dims(const std::vector<int>& dims) {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(dims[i]);
    }
    return s;
}

int run_report(const ReportArgs& a) {
    ordered_json config;
    config["command"] = "report";
    config["cells"] = a.cells;
    config["samples"] = a.samples;
    config["seed"] = a.seed;
    config["tol"] = a.tol;
    config["serial"] = a.serial;
    config["format"] = a.json_out.empty() ? "csv" : "csv+json";

    const std::vector<Cell> cells = parse_cells(a.cells);

    CheckOptions opt;
    opt.samples = a.samples;
    opt.seed = a.seed;
    opt.tol = a.tol;
    opt.mode = a.serial ? ExecMode::serial : ExecMode::parallel;

    std::ostringstream csv;
    csv << "# config: " << config.dump() << "\n";
    csv << "scheme,d,parties,local_dims,gram_dev,basis_dev,superpos_dev,pass\n";
    auto rows = ordered_json::array();

    bool any_error = false;
    bool all_pass = true;
    for (const Cell& cell : cells) {
        try {
            const Masker m = build_masker(cell.scheme, cell.d, std::nullopt, DEFAULT_NODE_BUDGET);
            const MaskingReport rep = masking_check(m, opt);
            csv << rep.scheme << ',' << rep.d << ',' << rep.parties << ','
                << join_dims(rep.local_dims) << ',' << format_double(rep.gram_dev) << ','
                << format_double(rep.basis_dev) << ',' << format_double(rep.superpos_dev) << ','
                << (rep.pass ? "true" : "false") << "\n";
            rows.push_back(report_to_json(rep));
            all_pass = all_pass && rep.pass;
        } catch (const Error& e) {
            csv << cell.scheme << ',' << cell.d << ",,,,,,ERROR\n";
            ordered_json err;
            err["scheme"] = cell.scheme;
            err["d"] = cell.d;
            err["error"] = e.what();
            rows.push_back(std::move(err));
            any_error = true;
        }
    }

    if (a.out.empty())
        std::cout << csv.str();
    else
        write_text_file(a.out, csv.str());

    if (!a.json_out.empty()) {
        ordered_json j;
        j["config"] = config;
        j["rows"] = std::move(rows);
        emit_json(j, a.json_out);
    }

    if (any_error) return EXIT_CHECK_FAILED;
    return all_pass ? 0 : EXIT_CHECK_FAILED;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum information masking toolkit"};
    app.require_subcommand(1);

    MaskArgs mask_args;
    auto* mask_cmd = app.add_subcommand("mask", "encode an input state through a masking scheme");
    mask_cmd->add_option("--scheme", mask_args.scheme, "bell|shor|mols|embedded")->required();
    mask_cmd->add_option("--d", mask_args.d, "input dimension");
    mask_cmd->add_option("--pair", mask_args.pair, "v.txt,w.txt square files (mols)");
    mask_cmd->add_option("--coeffs", mask_args.coeffs, "comma-separated re or re+imJ literals");
    mask_cmd->add_option("--basis", mask_args.basis, "encode basis state |j>");
    mask_cmd->add_option("--out", mask_args.out, "output path (default: stdout)");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "certify the masking property");
    verify_cmd->add_option("--scheme", verify_args.scheme, "bell|shor|mols|embedded")->required();
    verify_cmd->add_option("--d", verify_args.d, "input dimension");
    verify_cmd->add_option("--pair", verify_args.pair, "v.txt,w.txt square files (mols)");
    verify_cmd->add_option("--samples", verify_args.samples, "random inputs to test (default 100)");
    verify_cmd->add_option("--seed", verify_args.seed, "sampling seed (default 42)");
    verify_cmd->add_option("--tol", verify_args.tol, "certification tolerance (default 1e-10)");
    verify_cmd->add_option("--out", verify_args.out, "report path (default: stdout)");
    verify_cmd->add_flag("--serial", verify_args.serial, "use the serial reference path");
    verify_cmd->add_flag("--diagnostics", verify_args.diagnostics,
                         "add trace-norm and eigenvalue diagnostics");

    auto* latin_cmd = app.add_subcommand("latin", "Latin-square tooling");
    latin_cmd->require_subcommand(1);
    std::string check_v, check_w;
    auto* check_cmd = latin_cmd->add_subcommand("check", "test two squares for orthogonality");
    check_cmd->add_option("v", check_v, "first square file")->required();
    check_cmd->add_option("w", check_w, "second square file")->required();
    int cyclic_d = 0;
    std::string cyclic_out;
    auto* cyclic_cmd = latin_cmd->add_subcommand("cyclic", "emit the circulant pair (odd d)");
    cyclic_cmd->add_option("--d", cyclic_d, "order (odd, >= 3)")->required();
    cyclic_cmd->add_option("--out", cyclic_out, "v.txt,w.txt output paths");
    int search_d = 0;
    std::uint64_t search_budget = DEFAULT_NODE_BUDGET;
    std::string search_out;
    auto* search_cmd = latin_cmd->add_subcommand("search", "backtracking search for a pair");
    search_cmd->add_option("--d", search_d, "order (>= 2)")->required();
    search_cmd->add_option("--budget", search_budget, "branch-node budget (default 1e7)");
    search_cmd->add_option("--out", search_out, "v.txt,w.txt output paths");

    ReportArgs report_args;
    auto* report_cmd = app.add_subcommand("report", "CSV certification table over (scheme, d) cells");
    report_cmd->add_option("--cells", report_args.cells,
                           "e.g. bell:2..4,mols:3,shor (rows in argument order)");
    report_cmd->add_option("--samples", report_args.samples, "random inputs per cell (default 100)");
    report_cmd->add_option("--seed", report_args.seed, "sampling seed (default 42)");
    report_cmd->add_option("--tol", report_args.tol, "certification tolerance (default 1e-10)");
    report_cmd->add_option("--out", report_args.out, "CSV path (default: stdout)");
    report_cmd->add_option("--json", report_args.json_out, "also write a JSON report here");
    report_cmd->add_flag("--serial", report_args.serial, "use the serial reference path");

    try {
        app.parse(argc, argv);
        mask_args.basis_given = mask_cmd->count("--basis") > 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return EXIT_USAGE;
    }

    try {
        if (mask_cmd->parsed()) return run_mask(mask_args);
        if (verify_cmd->parsed()) return run_verify(verify_args);
        if (latin_cmd->parsed()) {
            if (check_cmd->parsed()) return run_latin_check(check_v, check_w);
            if (cyclic_cmd->parsed()) return run_latin_cyclic(cyclic_d, cyclic_out);
            if (search_cmd->parsed()) return run_latin_search(search_d, search_budget, search_out);
        }
        if (report_cmd->parsed()) return run_report(report_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }
    return EXIT_USAGE;
}
