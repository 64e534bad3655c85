#include "qrev/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "qrev/entropy.hpp"
#include "qrev/io.hpp"
#include "qrev/verify.hpp"

namespace qrev::cli {

namespace {

using io::json;

struct Outcome {
    int code = kSuccess;
    std::string out;
    std::string err;
};

enum class Kind { Channel, State, Code };

struct Inputs {
    std::vector<QuantumChannel> channels;
    std::vector<DensityOperator> states;
    std::vector<CodeSubspace> codes;
};

// Argument signature of each command, in positional order.
const std::vector<std::pair<std::string, std::vector<Kind>>> &signatures() {
    static const std::vector<std::pair<std::string, std::vector<Kind>>> table = {
        {"validate", {}},
        {"choi", {Kind::Channel}},
        {"kraus", {Kind::Channel}},
        {"complement", {Kind::Channel}},
        {"stinespring", {Kind::Channel}},
        {"entropy", {Kind::State}},
        {"relent", {Kind::State, Kind::State}},
        {"mutinfo", {Kind::Channel, Kind::State}},
        {"coherent", {Kind::Channel, Kind::State}},
        {"fidelity", {Kind::Channel, Kind::State}},
        {"petz", {Kind::Channel, Kind::State}},
        {"check-kl", {Kind::Channel, Kind::Code}},
        {"check-reversible", {Kind::Channel, Kind::Code}},
        {"check-vanishing", {Kind::Channel, Kind::Code}},
        {"tradeoff", {Kind::Channel, Kind::Code}},
    };
    return table;
}

const std::vector<Kind> &signature_of(const std::string &command) {
    for (const auto &[name, kinds] : signatures()) {
        if (name == command) {
            return kinds;
        }
    }
    throw ParseError("unknown command \"" + command + "\"");
}

const char *describe(const std::string &command) {
    static const std::map<std::string, const char *> help = {
        {"validate", "parse and validate channel, state and code files"},
        {"choi", "print a channel in Choi form"},
        {"kraus", "print the canonical Kraus operators of a channel"},
        {"complement", "print the complementary channel"},
        {"stinespring", "print the Stinespring isometry"},
        {"entropy", "von Neumann entropy of a state"},
        {"relent", "relative entropy D(rho || sigma)"},
        {"mutinfo", "channel mutual information I(rho, E)"},
        {"coherent", "coherent information I_c(rho, E)"},
        {"fidelity", "entanglement fidelity F_e(rho, E)"},
        {"petz", "print the Petz recovery channel for a state"},
        {"check-kl", "Knill-Laflamme condition on a code"},
        {"check-reversible", "perfect reversibility on a code"},
        {"check-vanishing", "constant output on a code"},
        {"tradeoff", "information split between two output factors (needs --split B C)"},
    };
    return help.at(command);
}

Kind detect_kind(const json &j, const std::string &path) {
    if (j.is_object() && (j.contains("kraus") || j.contains("choi"))) {
        return Kind::Channel;
    }
    if (j.is_object() && j.contains("isometry")) {
        return Kind::Code;
    }
    if (j.is_object() && j.contains("matrix")) {
        return Kind::State;
    }
    throw ParseError(path + ": not a channel, state, or code document");
}

void load(Kind kind, const std::string &path, Inputs &in) {
    const json j = io::read_json_file(path);
    try {
        switch (kind) {
            case Kind::Channel:
                in.channels.push_back(io::channel_from_json(j));
                break;
            case Kind::State:
                in.states.push_back(io::state_from_json(j));
                break;
            case Kind::Code:
                in.codes.push_back(io::code_from_json(j));
                break;
        }
    } catch (const Error &e) {
        // Re-throw the same type family with the file name attached.
        if (dynamic_cast<const ParseError *>(&e) != nullptr) {
            throw ParseError(path + ": " + e.what());
        }
        if (dynamic_cast<const DimensionMismatch *>(&e) != nullptr) {
            throw DimensionMismatch(path + ": " + e.what());
        }
        throw Error(path + ": " + e.what());
    }
}

// Human-readable output only; JSON reports carry the raw doubles.
std::string format_number(double v) {
    std::ostringstream s;
    if (std::abs(v) < 1e-12) {
        s << 0;
    } else if (std::isfinite(v)) {
        s << std::setprecision(12) << v;
    } else {
        s << "+inf";
    }
    return s.str();
}

std::string render(const CheckReport &report, bool as_json) {
    if (as_json) {
        return io::to_json(report).dump() + "\n";
    }
    std::ostringstream s;
    s << report.method() << ": " << to_string(report.verdict()) << " (tolerance "
      << report.tolerance() << ")\n";
    for (const auto &[name, value] : report.quantities()) {
        s << "  " << name << " = " << format_number(value) << "\n";
    }
    return s.str();
}

// Single-number commands: JSON mode wraps the value in a passing report.
std::string render_scalar(const std::string &method, const std::string &name, double value,
                          const std::string &unit, double tol, bool as_json) {
    if (as_json) {
        CheckReport report(method, tol);
        report.record(name, value);
        return io::to_json(report).dump() + "\n";
    }
    return format_number(value) + (unit.empty() ? "" : " " + unit) + "\n";
}

int verdict_code(const CheckReport &report) {
    return report.passed() ? kSuccess : kFailVerdict;
}

Outcome run_single(const Invocation &inv, const std::vector<std::string> &files) {
    Outcome result;
    try {
        const auto &kinds = signature_of(inv.command);
        const double tol = inv.tol.value_or(kDefaultTolerance);
        VerifyOptions options;
        options.tolerance = tol;

        if (inv.command == "validate") {
            if (files.empty()) {
                throw ParseError("validate: expected at least one input file");
            }
            CheckReport report("validate", tol);
            std::size_t counts[3] = {0, 0, 0};
            for (const auto &path : files) {
                Inputs scratch;
                const Kind kind = detect_kind(io::read_json_file(path), path);
                load(kind, path, scratch);
                ++counts[static_cast<int>(kind)];
            }
            report.record("channels", static_cast<double>(counts[0]));
            report.record("states", static_cast<double>(counts[1]));
            report.record("codes", static_cast<double>(counts[2]));
            result.out = render(report, inv.json_out);
            return result;
        }

        if (files.size() != kinds.size()) {
            throw ParseError(inv.command + ": expected " + std::to_string(kinds.size()) +
                             " input file(s), got " + std::to_string(files.size()));
        }
        // Every input is parsed and validated before any computation.
        Inputs in;
        for (std::size_t i = 0; i < files.size(); ++i) {
            load(kinds[i], files[i], in);
        }

        const std::string &cmd = inv.command;
        if (cmd == "choi") {
            result.out = io::to_json(in.channels[0], io::ChannelForm::Choi).dump() + "\n";
        } else if (cmd == "kraus") {
            const auto canonical = QuantumChannel::from_kraus(to_kraus(in.channels[0]));
            result.out = io::to_json(canonical, io::ChannelForm::Kraus).dump() + "\n";
        } else if (cmd == "complement") {
            result.out =
                io::to_json(complement(in.channels[0]), io::ChannelForm::Kraus).dump() + "\n";
        } else if (cmd == "stinespring") {
            const auto dilation = to_stinespring(in.channels[0]);
            result.out = json{{"in_dim", in.channels[0].in_dim()},
                              {"out_dim", dilation.out_dim},
                              {"env_dim", dilation.env_dim},
                              {"isometry", io::to_json(dilation.isometry)}}
                             .dump() +
                         "\n";
        } else if (cmd == "petz") {
            const auto recovery = petz_recovery(in.channels[0], in.states[0]);
            result.out = io::to_json(recovery, io::ChannelForm::Kraus).dump() + "\n";
        } else if (cmd == "entropy") {
            result.out = render_scalar(cmd, "entropy_bits", vn_entropy(in.states[0]).bits(),
                                       "bits", tol, inv.json_out);
        } else if (cmd == "relent") {
            const auto d = relative_entropy(in.states[0], in.states[1]);
            if (inv.json_out) {
                CheckReport report(cmd, tol);
                report.record("relative_entropy_bits",
                              d.is_finite() ? d.bits() : std::numeric_limits<double>::infinity());
                report.record("support_violation", d.is_finite() ? 0.0 : 1.0);
                result.out = io::to_json(report).dump() + "\n";
            } else {
                result.out = (d.is_finite() ? format_number(d.bits()) : std::string("+inf")) +
                             " bits\n";
            }
        } else if (cmd == "mutinfo") {
            result.out = render_scalar(
                cmd, "mutual_information_bits",
                channel_mutual_information(in.states[0], in.channels[0]).bits(), "bits", tol,
                inv.json_out);
        } else if (cmd == "coherent") {
            result.out = render_scalar(
                cmd, "coherent_information_bits",
                coherent_information(in.states[0], in.channels[0]).bits(), "bits", tol,
                inv.json_out);
        } else if (cmd == "fidelity") {
            result.out = render_scalar(cmd, "entanglement_fidelity",
                                       entanglement_fidelity(in.states[0], in.channels[0]), "",
                                       tol, inv.json_out);
        } else if (cmd == "check-kl") {
            const auto report = check_kl(in.channels[0], in.codes[0], options).first;
            result.out = render(report, inv.json_out);
            result.code = verdict_code(report);
        } else if (cmd == "check-reversible") {
            const auto report = check_reversible(in.channels[0], in.codes[0], options);
            result.out = render(report, inv.json_out);
            result.code = verdict_code(report);
        } else if (cmd == "check-vanishing") {
            const auto report = check_vanishing(in.channels[0], in.codes[0], options);
            result.out = render(report, inv.json_out);
            result.code = verdict_code(report);
        } else if (cmd == "tradeoff") {
            if (!inv.split) {
                throw ParseError("tradeoff: --split B C is required");
            }
            const auto report = check_tradeoff(in.channels[0], *inv.split, in.codes[0], options);
            result.out = render(report, inv.json_out);
            result.code = verdict_code(report);
        }
    } catch (const Error &e) {
        result.code = kInputError;
        result.out.clear();
        result.err = std::string("error: ") + e.what() + "\n";
    }
    return result;
}

std::vector<std::vector<std::string>> read_batch(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open batch file");
    }
    std::vector<std::vector<std::string>> runs;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream words(line);
        std::vector<std::string> files;
        for (std::string w; words >> w;) {
            files.push_back(w);
        }
        if (!files.empty()) {
            runs.push_back(std::move(files));
        }
    }
    return runs;
}

}  // namespace

const std::vector<std::string> &commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &entry : signatures()) {
            out.push_back(entry.first);
        }
        return out;
    }();
    return names;
}

int run(const Invocation &inv, std::ostream &out, std::ostream &err) {
    if (!inv.batch) {
        const Outcome o = run_single(inv, inv.inputs);
        out << o.out;
        err << o.err;
        return o.code;
    }

    std::vector<std::vector<std::string>> runs;
    try {
        runs = read_batch(*inv.batch);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    // Library calls are pure, so every line runs on its own thread.
    std::vector<std::future<Outcome>> pending;
    pending.reserve(runs.size());
    for (const auto &files : runs) {
        pending.push_back(std::async(std::launch::async, run_single, std::cref(inv), files));
    }
    int code = kSuccess;
    for (auto &f : pending) {
        const Outcome o = f.get();
        out << o.out;
        err << o.err;
        code = std::max(code, o.code);
    }
    return code;
}

int main_entry(int argc, char **argv) {
    CLI::App app{"Perfect-recovery checks for quantum channels on code subspaces"};
    app.require_subcommand(1);

    Invocation inv;
    double tol = 0.0;
    std::vector<std::size_t> split;
    std::string batch;

    for (const auto &name : commands()) {
        auto *sub = app.add_subcommand(name, describe(name));
        sub->add_option("inputs", inv.inputs, "input JSON files");
        sub->add_flag("--json", inv.json_out, "emit a JSON report");
        sub->add_option("--tol", tol, "verdict tolerance");
        sub->add_option("--batch", batch, "file listing one input set per line");
        if (name == "tradeoff") {
            sub->add_option("--split", split, "output dimensions B C")->expected(2);
        }
        sub->callback([&inv, name] { inv.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kInputError;
    }

    for (auto *sub : app.get_subcommands()) {
        if (sub->count("--tol") > 0) {
            inv.tol = tol;
        }
        if (sub->count("--batch") > 0) {
            inv.batch = batch;
        }
    }
    if (split.size() == 2) {
        inv.split = std::make_pair(split[0], split[1]);
    }
    return run(inv, std::cout, std::cerr);
}

}  // namespace qrev::cli
