// The tangential example sequence a_n on E_{1,2}: tangency data in quad precision and
// squeezing lower bounds along the sequence.
//
//   demo_example11 [samples]

#include "squeezing.hpp"

#include <iostream>

using namespace squeezing;

int main(int argc, char** argv) {
    SqueezeOptions opt;
    opt.samples = argc > 1 ? std::stoul(argv[1]) : 5000;
    const auto res = example11(e12(), {10, 100, 1000, 10000}, 0.5, opt);
    write_csv(std::cout, res.table);
    std::cerr << "chains:\n";
    for (const auto& e : res.estimates) std::cerr << "  " << e.descriptor() << "\n";
    return 0;
}
