#include "criteria.hpp"

#include <filesystem>
#include <fstream>
#include <map>

using namespace rvtest;

namespace {

struct LinRun {
    bool ok = true;
    std::string counterexample;
    double secs = 0;
};

struct ProofRun {
    bool ok = true;
    int obligation = 0;
    std::string path, message;
    double secs = 0;
};

struct FixtureRun {
    std::map<std::size_t, LinRun> lin;
    std::optional<ProofRun> proof;
};

std::string dir(const std::string& name) { return std::string(RELVIEWS_FIXTURES) + "/" + name; }

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(RELVIEWS_FIXTURES)) {
        if (std::filesystem::exists(e.path() / "model")) out.push_back(e.path().filename().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> lin_bounds(const std::string& name) {
    std::ifstream in(dir(name) + "/expected");
    std::vector<std::size_t> out;
    if (in) {
        const json e = json::parse(in);
        if (e.contains("check-lin")) {
            for (const auto& c : e["check-lin"]) out.push_back(c["bound"].get<std::size_t>());
        }
    }
    if (out.empty()) out.push_back(8);
    return out;
}

const FixtureRun& run(const std::string& name, int jobs) {
    static std::map<std::pair<std::string, int>, FixtureRun> cache;
    auto key = std::make_pair(name, jobs);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    FixtureRun r;
    auto s = fixture_session(name);
    const Library conc = s->concrete_library(), abs = s->abstract_library();
    for (std::size_t b : lin_bounds(name)) {
        Stopwatch sw;
        LinRun lr;
        try {
            HistoryOptions opt;
            opt.bound = b;
            const auto res = check_linearizable(conc, abs, opt, jobs);
            lr.ok = res.ok;
            if (res.counterexample) {
                for (char c : format_history(*res.counterexample, s->domains())) {
                    if (c != '\n') lr.counterexample += c;
                    else lr.counterexample += "; ";
                }
            }
        } catch (const Error& e) {
            lr.ok = false;
            lr.counterexample = e.what();
        }
        lr.secs = sw.seconds();
        r.lin[b] = lr;
    }
    if (std::filesystem::exists(dir(name) + "/outline")) {
        Stopwatch sw;
        const OutlineSet outlines = load_outline_file(dir(name) + "/outline", s->model());
        ProofRun pr;
        try {
            const auto rep = check_obligations(*s, outlines, static_cast<unsigned>(jobs));
            pr.ok = rep.ok;
            if (rep.failure) {
                pr.obligation = rep.failure->obligation;
                pr.message = rep.failure->str(s->domains());
                if (rep.failure->proof) pr.path = rep.failure->proof->path;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::StabilityViolation && e.kind() != ErrorKind::FaultReachable) throw;
            pr.ok = false;
            pr.obligation = 1;
            pr.message = e.what();
        }
        pr.secs = sw.seconds();
        r.proof = pr;
    }
    return cache.emplace(key, std::move(r)).first->second;
}

bool ends_with(const std::string& s, const std::string& tail) {
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

std::string verdict(bool ok) { return ok ? "ok" : "violation"; }

} // namespace

Verdict rvtest::atomic_increment() {
    const auto& r = run("atomic-inc", 1);
    const auto& lin = r.lin.at(8);
    const double t = lin.secs + r.proof->secs;
    return {lin.ok && r.proof->ok && t < 10.0,
            "check-lin bound 8 " + verdict(lin.ok) + ", check-proof " + verdict(r.proof->ok) + ", " + secs(t)};
}

Verdict rvtest::flat_combiner() {
    const auto& lit = run("flat-combiner", 1);
    const auto& lin = lit.lin.at(12);
    const double t = lin.secs + lit.proof->secs;
    const bool pass = lit.proof->ok && lin.ok && t < 60.0;
    std::string detail = "check-lin bound 12 " + verdict(lin.ok) + ", check-proof " + verdict(lit.proof->ok);
    if (!lit.proof->ok) detail += " at " + lit.proof->path;
    const auto& g = run("flat-combiner-guarded", 1);
    const auto& glin = g.lin.at(12);
    detail += "; guarded variant: check-lin bound 12 " + verdict(glin.ok) + ", check-proof " +
              verdict(g.proof->ok) + ", " + secs(glin.secs + g.proof->secs);
    return {pass, detail};
}

Verdict rvtest::bug_detection() {
    const auto& nolock = run("flat-combiner-nolock", 1);
    const auto& [bound, lin] = *nolock.lin.begin();
    const bool found = !lin.ok && !lin.counterexample.empty() && bound <= 12;
    const auto& nh = run("flat-combiner-no-helping", 1);
    const bool rejected = !nh.proof->ok && nh.proof->obligation == 1 && ends_with(nh.proof->path, "/lp");
    std::string detail = "no-lock check-lin bound " + std::to_string(bound) + ": " +
                         (found ? "counterexample " + lin.counterexample : std::string("no counterexample")) +
                         "; without action 4: " +
                         (rejected ? "rejected at " + nh.proof->path : "not rejected at lp (" + nh.proof->path + ")");
    return {found && rejected, detail};
}

Verdict rvtest::proof_lin_consistency() {
    int proved = 0, total = 0;
    std::vector<std::string> bad;
    for (const auto& name : fixture_names()) {
        const auto& r = run(name, 1);
        ++total;
        if (!r.proof || !r.proof->ok) continue;
        ++proved;
        for (const auto& [b, lin] : r.lin) {
            if (!lin.ok) bad.push_back(name + " at bound " + std::to_string(b));
        }
    }
    std::string detail = std::to_string(total) + " fixtures, " + std::to_string(proved) +
                         " with obligations discharged, " + std::to_string(bad.size()) + " inconsistent";
    if (!bad.empty()) detail += ": " + bad.front();
    return {bad.empty(), detail};
}

Verdict rvtest::determinism() {
    std::vector<std::string> diff;
    std::size_t compared = 0;
    for (const auto& name : fixture_names()) {
        const auto& a = run(name, 1);
        const auto& b = run(name, 8);
        for (const auto& [bound, lin] : a.lin) {
            ++compared;
            const auto& other = b.lin.at(bound);
            if (lin.ok != other.ok || lin.counterexample != other.counterexample)
                diff.push_back(name + " check-lin " + std::to_string(bound));
        }
        if (a.proof) {
            ++compared;
            if (a.proof->ok != b.proof->ok || a.proof->obligation != b.proof->obligation ||
                a.proof->path != b.proof->path || a.proof->message != b.proof->message)
                diff.push_back(name + " check-proof");
        }
    }
    std::string detail = std::to_string(compared) + " verdicts compared, " + std::to_string(diff.size()) + " differ";
    if (!diff.empty()) detail += ": " + diff.front();
    return {diff.empty(), detail};
}
