#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "su11/types.hpp"

namespace su11 {

struct Invariant {
    std::string name;
    double value;
    double bound;
    // "<" : value < bound, ">=" : value >= bound
    std::string relation;
    bool pass;
};

struct SuiteParams {
    double lambda = 2.0;
    double k = -1.0;  // negative: derived from lambda where needed
    int dim = 64;
    int boson_dim = 512;
    long n = 100000;
    std::uint64_t seed = 42;
    Tolerances tol;
};

struct SuiteReport {
    std::string suite;
    std::vector<Invariant> invariants;
    bool pass() const;
};

const std::vector<std::string>& suite_names();
// throws DomainError on parameters the suite cannot use
SuiteReport run_suite(const std::string& name, const SuiteParams& p);

}  // namespace su11
