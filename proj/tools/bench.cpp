// Benchmark of the OpenMP-parallel kernels against their serial reference
// paths. Every kernel assigns work by index, so the parallel results must be
// bit-identical to the serial ones; this harness verifies that while timing.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gsum/certify.hpp"
#include "gsum/density.hpp"
#include "gsum/io.hpp"
#include "gsum/parallel.hpp"

using namespace gsum;

namespace {

double time_once(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name.c_str(), serial_ms,
                parallel_ms, serial_ms / parallel_ms, identical ? "bit-identical" : "DIFFER");
}

} // namespace

int main() {
    const int jobs = hardware_jobs();
    std::printf("kernels: serial reference vs OpenMP (%d threads)\n\n", jobs);
    std::printf("%-28s %13s %13s %7s\n", "kernel", "serial", "parallel", "speedup");

    {
        GammaSumModel m(0.8, WeightVector({0.4, 0.3, 0.2, 0.1}));
        std::vector<double> serial, parallel;
        const double ts = time_once([&] { serial = sample(m, 4000000, 42, 1); });
        const double tp = time_once([&] { parallel = sample(m, 4000000, 42, jobs); });
        row("monte-carlo sampling (4M)", ts, tp, serial == parallel);
    }
    {
        GammaSumModel m(0.7, WeightVector({0.4, 0.3, 0.2, 0.1}));
        std::vector<double> grid = default_grid(m, 512);
        DensityCurve s, p;
        const double ts = time_once([&] { s = density_convolution(m, grid, {}, 1); });
        const double tp = time_once([&] { p = density_convolution(m, grid, {}, jobs); });
        row("convolution curve (512)", ts, tp, s.values == p.values);
    }
    {
        GammaSumModel m(1.5, WeightVector({0.5, 0.3, 0.2}));
        std::vector<double> grid = default_grid(m, 256);
        DensityCurve s, p;
        const double ts = time_once(
            [&] { s = density_curve(m, grid, {}, DensityEngine::CfInversion, 1); });
        const double tp = time_once(
            [&] { p = density_curve(m, grid, {}, DensityEngine::CfInversion, jobs); });
        row("cf-inversion curve (256)", ts, tp, s.values == p.values);
    }
    {
        CertifyOptions a;
        a.trials = 400;
        a.seed = 5;
        CertifyOptions b = a;
        b.jobs = jobs;
        CertificateReport rs, rp;
        const double ts = time_once([&] { rs = certify_run("moments", a); });
        const double tp = time_once([&] { rp = certify_run("moments", b); });
        row("moments suite (400)", ts, tp,
            io::report_to_json(rs) == io::report_to_json(rp));
    }
    {
        CertifyOptions a;
        a.trials = 60;
        a.seed = 5;
        CertifyOptions b = a;
        b.jobs = jobs;
        CertificateReport rs, rp;
        const double ts = time_once([&] { rs = certify_run("entropy", a); });
        const double tp = time_once([&] { rp = certify_run("entropy", b); });
        row("entropy suite (60)", ts, tp,
            io::report_to_json(rs) == io::report_to_json(rp));
    }
    return 0;
}
