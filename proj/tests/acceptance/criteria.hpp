#pragma once

#include "../support.hpp"

#include <chrono>
#include <string>

namespace rvtest {

struct Verdict {
    bool pass = false;
    std::string detail;
};

Verdict monoid_laws();
Verdict frame_reduction();
Verdict closure_suites();
Verdict rgsep_frame_bridge();
Verdict atomic_increment();
Verdict flat_combiner();
Verdict bug_detection();
Verdict proof_lin_consistency();
Verdict determinism();

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string secs(double s);

} // namespace rvtest
