// Benchmark: serial reference vs OpenMP coefficient-table generation.
#include <chrono>
#include <iostream>

#include "maass/maass.hpp"

using namespace maass;
using Clock = std::chrono::steady_clock;

int main(int argc, char** argv) {
    long d = -23, k = 4, trace = 14;
    unsigned long seed = 2718;
    if (argc > 1) d = std::stol(argv[1]);
    if (argc > 2) trace = std::stol(argv[2]);

    QuadField K = make_field(Int(d));
    Base B = build_base(K);
    if (k % K.w != 0) k = K.w * 2;
    Int N = K.D_F * trace * trace;  // covers D_F det h over the whole domain
    MaassSystem M = random_system(K, k, B, N, seed);
    std::vector<HermitianForm> hs = table_domain(K, Int(trace));
    std::cout << "field d=" << d << " k=" << k << " base size " << B.size() << ", "
              << hs.size() << " forms, trace <= " << trace << "\n";

    auto t0 = Clock::now();
    auto serial = coefficient_table(M, hs, false);
    auto t1 = Clock::now();
    auto parallel = coefficient_table(M, hs, true);
    auto t2 = Clock::now();

    bool equal = serial == parallel;
    double ts = std::chrono::duration<double>(t1 - t0).count();
    double tp = std::chrono::duration<double>(t2 - t1).count();
    std::cout << "serial:   " << ts << " s\n";
    std::cout << "parallel: " << tp << " s"
#ifdef MAASS_HAVE_OPENMP
              << " (OpenMP)"
#else
              << " (OpenMP unavailable: serial fallback)"
#endif
              << "\n";
    std::cout << "speedup:  " << (tp > 0 ? ts / tp : 0.0) << "x\n";
    std::cout << "tables identical: " << (equal ? "yes" : "NO") << "\n";
    return equal ? 0 : 1;
}
