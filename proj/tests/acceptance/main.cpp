#include "criteria.hpp"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>

using namespace rvtest;

std::string rvtest::secs(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", s);
    return buf;
}

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"monoid laws on DCSL micro domains", monoid_laws},
        {"DCSL frame-reduction oracle", frame_reduction},
        {"locality, consequence, distributivity and safety closure suites", closure_suites},
        {"RGSep frame-free action check against full frame quantification", rgsep_frame_bridge},
        {"atomic increment end to end", atomic_increment},
        {"flat combiner end to end", flat_combiner},
        {"bug detection", bug_detection},
        {"obligations never pass where check-lin finds a violation", proof_lin_consistency},
        {"jobs=1 and jobs=8 agree", determinism},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int n = static_cast<int>(i + 1);
        if (!only.empty() && !only.count(n)) continue;
        Verdict v;
        Stopwatch sw;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        if (!v.pass) ++failed;
        std::printf("criterion %d: %s - %s (%s) [%s]\n", n, v.pass ? "PASS" : "FAIL", criteria[i].first,
                    v.detail.c_str(), secs(sw.seconds()).c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
