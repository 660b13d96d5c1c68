// Compares the OpenMP simulation kernel against the serial reference on the
// same spec and checks the reports agree bit for bit.

#include "setid/popsim.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace setid;

namespace {

sim::PopulationSpec bench_spec(std::uint64_t size) {
    sim::PopulationSpec spec;
    spec.alternatives = {"a0", "a1", "a2"};
    spec.midpoint = {dist::SampleFamily::normal(0.0, 1.0), dist::SampleFamily::normal(0.2, 1.0),
                     dist::SampleFamily::normal(0.4, 1.0)};
    spec.half_width = {dist::SampleFamily::uniform(0.0, 1.0), dist::SampleFamily::uniform(0.0, 1.0),
                       dist::SampleFamily::uniform(0.0, 1.0)};
    spec.rule = sim::SelectionRule::UniformOverM;
    spec.size = size;
    return spec;
}

template <typename F>
double time_of(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

} // namespace

int main(int argc, char** argv) {
    const std::uint64_t size = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2'000'000ULL;
    const std::uint64_t seed = 424242;
    const auto spec = bench_spec(size);

    sim::SimulationReport serial_report = sim::simulate_serial(spec, seed);
    sim::SimulationReport parallel_report = sim::simulate(spec, seed);
    if (!(serial_report == parallel_report)) {
        std::fprintf(stderr, "FATAL: serial and parallel reports differ\n");
        return 1;
    }

    const double t_serial = time_of([&] { serial_report = sim::simulate_serial(spec, seed); });
    const double t_parallel = time_of([&] { parallel_report = sim::simulate(spec, seed); });

    std::printf("agents:            %llu\n", static_cast<unsigned long long>(size));
    std::printf("threads:           %d\n", omp_get_max_threads());
    std::printf("serial reference:  %.3f s  (%.1f M agents/s)\n", t_serial,
                size / t_serial / 1e6);
    std::printf("openmp kernel:     %.3f s  (%.1f M agents/s)\n", t_parallel,
                size / t_parallel / 1e6);
    std::printf("speedup:           %.2fx\n", t_serial / t_parallel);
    std::printf("reports identical: yes\n");
    return 0;
}
