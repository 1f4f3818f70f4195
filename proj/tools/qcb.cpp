// Command line front end: canon, verify, gram, bar, act.
//
// Configuration comes from a JSON file (--config); --depth, --format and
// --oracle override it. Output goes to stdout or --out. Exit codes:
// 0 success, 1 certification/verification failure, 2 input error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qcb/driver.hpp"

namespace {

qcb::Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qcb::input_error("cannot open " + path);
    qcb::Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw qcb::input_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

qcb::Json parse_json_arg(const std::string& text) {
    if (!text.empty() && text[0] == '@') return read_json_file(text.substr(1));
    try {
        return qcb::Json::parse(text);
    } catch (const std::exception& e) {
        throw qcb::input_error(std::string("bad JSON argument: ") + e.what());
    }
}

// "E_i", "F_j^(2)", "K_i", "K_i^-1"
qcb::Gen parse_gen(const qcb::CartanData& cd, const std::string& text) {
    auto us = text.find('_');
    if (us == std::string::npos || us == 0) throw qcb::input_error("bad generator: " + text);
    std::string kind = text.substr(0, us);
    std::string rest = text.substr(us + 1);
    long n = 1;
    auto caret = rest.find('^');
    std::string vertex = rest.substr(0, caret);
    if (caret != std::string::npos) {
        std::string power = rest.substr(caret + 1);
        if (power == "-1") n = -1;
        else if (power.size() > 2 && power.front() == '(' && power.back() == ')')
            n = std::stol(power.substr(1, power.size() - 2));
        else n = std::stol(power);
    }
    size_t v = cd.vertex_index(vertex);
    if (kind == "E") return {qcb::Gen::E, v, n};
    if (kind == "F") return {qcb::Gen::F, v, n};
    if (kind == "K" && n == -1) return {qcb::Gen::Kinv, v, 1};
    if (kind == "K") return {qcb::Gen::K, v, n};
    throw qcb::input_error("bad generator: " + text);
}

void emit(const qcb::CommandResult& res, const qcb::Config& cfg, const std::string& out_path) {
    std::string text = cfg.format == "json" ? res.json.dump(2) + "\n" : res.pretty;
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            std::exit(2);
        }
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact canonical bases of tensor products of highest weight integrable modules"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path, format_flag, oracle_flag;
    long depth_flag = -1;
    app.add_option("--config", config_path, "configuration JSON file")->required();
    app.add_option("--depth", depth_flag, "override the depth cutoff");
    app.add_option("--out", out_path, "write output to a file instead of stdout");
    app.add_option("--format", format_flag, "json or pretty")
        ->check(CLI::IsMember({"json", "pretty"}));
    app.add_option("--oracle", oracle_flag, "oracle mode: off, check or force")
        ->check(CLI::IsMember({"off", "check", "force"}));

    auto* canon = app.add_subcommand("canon", "compute and certify canonical bases");
    canon->fallthrough();
    auto* verify = app.add_subcommand("verify", "check the relation and form identities");
    verify->fallthrough();
    auto* gram = app.add_subcommand("gram", "contravariant form of standard vectors");
    gram->fallthrough();
    std::string mu1_arg, mu2_arg;
    gram->add_option("--mu", mu1_arg, "mu sequence (JSON or @file)")->required();
    gram->add_option("--mu2", mu2_arg, "second mu sequence; defaults to --mu");
    auto* bar = app.add_subcommand("bar", "bar involution of a vector");
    bar->fallthrough();
    std::string vector_arg;
    bar->add_option("--vector", vector_arg, "vector as pure tensors of words (JSON or @file)")
        ->required();
    auto* act = app.add_subcommand("act", "generator action expanded over the canonical basis");
    act->fallthrough();
    std::string gen_arg, nu_arg;
    act->add_option("--gen", gen_arg, "generator, e.g. E_i, F_j^(2), K_i^-1")->required();
    act->add_option("--nu", nu_arg, "content JSON, e.g. {\"i\":1}")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        qcb::Config cfg = qcb::parse_config(read_json_file(config_path));
        if (depth_flag >= 0) cfg.depth = depth_flag;
        if (!format_flag.empty()) cfg.format = format_flag;
        if (oracle_flag == "off") cfg.solver.oracle_mode = qcb::SolverOptions::Off;
        else if (oracle_flag == "check") cfg.solver.oracle_mode = qcb::SolverOptions::Check;
        else if (oracle_flag == "force") cfg.solver.oracle_mode = qcb::SolverOptions::Force;

        qcb::CommandResult res;
        if (*canon) res = qcb::cmd_canon(cfg);
        else if (*verify) res = qcb::cmd_verify(cfg);
        else if (*gram)
            res = qcb::cmd_gram(cfg, parse_json_arg(mu1_arg),
                                mu2_arg.empty() ? std::nullopt
                                                : std::optional(parse_json_arg(mu2_arg)));
        else if (*bar) res = qcb::cmd_bar(cfg, parse_json_arg(vector_arg));
        else if (*act) res = qcb::cmd_act(cfg, parse_gen(cfg.cd, gen_arg), parse_json_arg(nu_arg));
        emit(res, cfg, out_path);
        return res.exit_code;
    } catch (const qcb::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
