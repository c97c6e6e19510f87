// Compares the serial reference census against the OpenMP kernel: same table,
// wall-clock timings, speedup. Usage: census_bench [q] [ext_degree] [jobs]

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "p1dyn/census.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace p1dyn;

namespace {

double run_timed(const char* name, CensusTable& out, const CensusOptions& opt, bool serial) {
    auto t0 = std::chrono::steady_clock::now();
    out = serial ? census_serial(opt) : census_parallel(opt);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << name << ": " << s << " s, " << out.rows.size() << " moduli points\n";
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CensusOptions opt;
    opt.q = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 5;
    opt.ext_degree = argc > 2 ? static_cast<uint32_t>(std::atoi(argv[2])) : 6;
    opt.jobs = argc > 3 ? std::atoi(argv[3]) : 0;
    opt.oracle_bound = 0;  // no oracle in the benchmark: measure the kernel

#ifdef _OPENMP
    std::cout << "OpenMP threads available: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP; parallel run falls back to serial\n";
#endif
    std::cout << "census q=" << opt.q << " ext=" << opt.ext_degree << "\n";

    CensusTable serial_table, parallel_table;
    double ts = run_timed("serial  ", serial_table, opt, true);
    double tp = run_timed("parallel", parallel_table, opt, false);

    if (serial_table.to_csv() != parallel_table.to_csv()) {
        std::cout << "MISMATCH: parallel census differs from the serial reference\n";
        return 1;
    }
    std::cout << "tables identical; speedup " << (tp > 0 ? ts / tp : 0.0) << "x\n";
    return 0;
}
