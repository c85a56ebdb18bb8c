#include "relviews/obligations.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace relviews;
using nlohmann::json;

namespace {

struct Common {
    std::size_t cap = 0;
    int jobs = 1;
    std::string format = "text";
};

struct Report {
    std::string command;
    std::string verdict; // ok, violation, error
    json counterexample;
    json stats = json::object();
    std::string text;
};

int emit(const Report& r, const Common& c) {
    if (c.format == "machine") {
        json out{{"command", r.command}, {"verdict", r.verdict}, {"counterexample", r.counterexample}, {"stats", r.stats}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << r.text;
        if (!r.text.empty() && r.text.back() != '\n') std::cout << "\n";
    }
    if (r.verdict == "ok") return 0;
    return r.verdict == "violation" ? 1 : 2;
}

std::size_t effective_cap(const Common& c) {
    if (c.cap) return c.cap;
    if (const char* env = std::getenv("RELVIEWS_CAP")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw Error(ErrorKind::SchemaError, "RELVIEWS_CAP is not a number: " + std::string(env));
        }
    }
    return 0;
}

json history_json(const History& h, const Domains& d) {
    json a = json::array();
    for (const auto& e : h) a.push_back(format_event(e, d));
    return a;
}

std::string indent(const std::string& s) {
    std::string out = "  ";
    for (char ch : s) {
        out += ch;
        if (ch == '\n') out += "  ";
    }
    return out;
}

HistoryOptions history_options(const Model& m, std::size_t bound) {
    HistoryOptions opt;
    opt.bound = bound;
    opt.kind = m.bound_kind;
    opt.cap = m.domains.cap;
    return opt;
}

Report check_lin(const std::string& path, std::size_t bound, const Common& c) {
    Session s(load_model_file(path, effective_cap(c)));
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = check_linearizable(s.concrete_library(), s.abstract_library(), history_options(s.model(), bound), c.jobs);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    Report r;
    r.command = "check-lin";
    r.stats = {{"bound", bound},
               {"bound_kind", s.model().bound_kind == BoundKind::Events ? "events" : "steps"},
               {"abstract_bound", res.abstract_bound},
               {"concrete_histories", res.concrete_histories},
               {"abstract_histories", res.abstract_histories},
               {"configurations", res.configurations},
               {"elapsed_ms", ms}};
    std::ostringstream os;
    if (res.ok) {
        r.verdict = "ok";
        os << "ok: every concrete history up to bound " << bound << " is an abstract history\n";
        if (res.bound_too_small) os << "note: the abstract side was still growing at bound " << res.abstract_bound << "\n";
    } else {
        r.verdict = "violation";
        r.counterexample = history_json(*res.counterexample, s.domains());
        os << "violation: concrete history with no abstract counterpart\n"
           << indent(format_history(*res.counterexample, s.domains())) << "\n";
    }
    os << "concrete histories " << res.concrete_histories << ", abstract histories " << res.abstract_histories
       << ", configurations " << res.configurations << "\n";
    os << "checked up to bound " << bound << " only\n";
    r.text = os.str();
    return r;
}

Report check_proof_cmd(const std::string& model_path, const std::string& outline_path, const Common& c) {
    Session s(load_model_file(model_path, effective_cap(c)));
    const OutlineSet outlines = load_outline_file(outline_path, s.model());
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = check_obligations(s, outlines, static_cast<unsigned>(std::max(1, c.jobs)));
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    Report r;
    r.command = "check-proof";
    r.stats = {{"instances", rep.instances},
               {"proof_obligations", rep.proof_obligations},
               {"checks", rep.checks},
               {"elapsed_ms", ms}};
    std::ostringstream os;
    if (rep.ok) {
        r.verdict = "ok";
        os << "ok: outline and obligations hold for " << rep.instances << " method instances ("
           << rep.proof_obligations << " proof obligations)\n";
    } else {
        r.verdict = "violation";
        const auto& f = *rep.failure;
        json cx{{"obligation", f.obligation},
                {"method", f.method},
                {"instance", f.instance},
                {"thread", f.thread},
                {"message", f.message},
                {"not_established", f.not_established}};
        if (f.witness) cx["witness"] = format_world(*f.witness, s.domains());
        if (f.proof) {
            cx["path"] = f.proof->path;
            cx["rule"] = f.proof->rule;
            cx["report"] = f.proof->str(s.domains());
        }
        r.counterexample = cx;
        os << "failed: " << f.str(s.domains()) << "\n";
    }
    r.text = os.str();
    return r;
}

Report histories_cmd(const std::string& path, const std::string& side, std::size_t bound, const Common& c) {
    Session s(load_model_file(path, effective_cap(c)));
    const Library lib = side == "abstract" ? s.abstract_library() : s.concrete_library();
    const HistorySet hs = generate_histories(lib, history_options(s.model(), bound));
    Report r;
    r.command = "histories";
    r.verdict = "ok";
    r.stats = {{"side", side}, {"bound", bound}, {"histories", hs.histories.size()}, {"configurations", hs.configurations}};
    json all = json::array();
    std::ostringstream os;
    for (std::size_t i = 0; i < hs.histories.size(); ++i) {
        all.push_back(history_json(hs.histories[i], s.domains()));
        if (i) os << "\n";
        os << format_history(hs.histories[i], s.domains()) << "\n";
    }
    os << "-- " << hs.histories.size() << (hs.histories.size() == 1 ? " history" : " histories") << " up to bound "
       << bound << "\n";
    r.stats["list"] = all;
    r.text = os.str();
    return r;
}

Report error_report(const std::string& command, const std::string& msg) {
    Report r;
    r.command = command;
    r.verdict = "error";
    r.counterexample = nullptr;
    r.stats = {{"message", msg}};
    r.text = "error: " + msg + "\n";
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded checker for linearizability proofs with relational views"};
    app.require_subcommand(1);
    Common common;
    std::string model_path, outline_path, side = "concrete";
    std::size_t bound = 8;

    auto add_common = [&](CLI::App* sub, bool jobs) {
        sub->add_option("--cap", common.cap, "Limit on enumerated states (also RELVIEWS_CAP)");
        sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
        if (jobs) sub->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* lin = app.add_subcommand("check-lin", "Check history inclusion up to a bound");
    lin->add_option("model", model_path, "Model file")->required();
    lin->add_option("--bound", bound, "History bound");
    add_common(lin, true);

    auto* proof = app.add_subcommand("check-proof", "Check a proof outline and the linearizability obligations");
    proof->add_option("model", model_path, "Model file")->required();
    proof->add_option("outline", outline_path, "Outline file")->required();
    add_common(proof, true);

    auto* hist = app.add_subcommand("histories", "Print the histories of a library up to a bound");
    hist->add_option("model", model_path, "Model file")->required();
    hist->add_option("--side", side, "Which library")->check(CLI::IsMember({"concrete", "abstract"}));
    hist->add_option("--bound", bound, "History bound");
    add_common(hist, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string name = lin->parsed() ? "check-lin" : proof->parsed() ? "check-proof" : "histories";
    try {
        if (lin->parsed()) return emit(check_lin(model_path, bound, common), common);
        if (proof->parsed()) return emit(check_proof_cmd(model_path, outline_path, common), common);
        return emit(histories_cmd(model_path, side, bound, common), common);
    } catch (const Error& e) {
        std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
        Report r = error_report(name, msg);
        if (e.kind() == ErrorKind::FaultReachable || e.kind() == ErrorKind::StabilityViolation) r.verdict = "violation";
        return emit(r, common);
    } catch (const std::exception& e) {
        return emit(error_report(name, e.what()), common);
    }
}
