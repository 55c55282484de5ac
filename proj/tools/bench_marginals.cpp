// bench_marginals — compares the serial reference path of the verifier with
// the OpenMP-parallel path on the same workload and confirms the two produce
// byte-identical reports.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "qmask/masker.hpp"
#include "qmask/verifier.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace qmask;

namespace {

double run_once(const Masker& m, CheckOptions opt, ExecMode mode, std::string* out) {
    opt.mode = mode;
    const auto t0 = std::chrono::steady_clock::now();
    const MaskingReport rep = masking_check(m, opt);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    *out = report_to_json(rep).dump();
    return dt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP masking verification benchmark"};
    int d = 4;
    int samples = 200;
    int repeat = 3;
    app.add_option("--d", d, "bell masker dimension (default 4)");
    app.add_option("--samples", samples, "random inputs per run (default 200)");
    app.add_option("--repeat", repeat, "timed repetitions (default 3)");
    CLI11_PARSE(app, argc, argv);

    const Masker m = bell_masker(d);
    CheckOptions opt;
    opt.samples = samples;

#if defined(_OPENMP)
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP not enabled; parallel path runs serially)\n");
#endif
    std::printf("workload: bell d=%d, %d samples, %d basis images, %d parties\n", d, samples, d,
                m.parties);

    double best_serial = 1e300;
    double best_parallel = 1e300;
    std::string serial_report, parallel_report;
    for (int r = 0; r < repeat; ++r) {
        best_serial = std::min(best_serial, run_once(m, opt, ExecMode::serial, &serial_report));
        best_parallel =
            std::min(best_parallel, run_once(m, opt, ExecMode::parallel, &parallel_report));
    }

    const bool identical = serial_report == parallel_report;
    std::printf("serial   : %8.3f s\n", best_serial);
    std::printf("parallel : %8.3f s   speedup %.2fx\n", best_parallel,
                best_serial / best_parallel);
    std::printf("reports byte-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
