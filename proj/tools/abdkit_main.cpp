#include <fstream>
#include <sstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "abdkit/engine.hpp"
#include "abdkit/lattice.hpp"
#include "abdkit/oracle.hpp"
#include "abdkit/parser.hpp"
#include "abdkit/reductions.hpp"
#include "abdkit/wsat.hpp"

namespace {

using json = nlohmann::json;

abdkit::AbductionInstance load_instance(const std::string& path, std::optional<int> size_override) {
    abdkit::AbductionInstance inst = abdkit::parse_instance_file(path);
    if (size_override) {
        inst.size = *size_override;
        inst.finalize();
    }
    return inst;
}

abdkit::Variant parse_variant(const std::string& s) {
    auto v = abdkit::variant_from_string(s);
    if (!v) throw CLI::ValidationError("--variant", "expected plain, le or eq");
    return *v;
}

abdkit::Param parse_param(const std::string& s) {
    auto p = abdkit::param_from_string(s);
    if (!p) throw CLI::ValidationError("--param", "expected H, M, V or E");
    return *p;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"abdkit: solve, classify and transform propositional abduction problems"};
    app.require_subcommand(1);

    std::string in_path, out_path, variant_str = "plain", param_str = "H", engine = "auto";
    std::string target = "wsat", edges;
    std::optional<int> size_override;
    int k = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_variant) {
        cmd->add_option("-i,--input", in_path, "instance file (.abd)")->required();
        if (needs_variant)
            cmd->add_option("--variant", variant_str, "plain | le | eq")->capture_default_str();
        cmd->add_option("-s,--size", size_override, "override the instance's size bound");
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "complexity verdict for a fragment");
    add_common(classify_cmd, true);
    classify_cmd->add_option("--param", param_str, "H | M | V | E")->capture_default_str();

    CLI::App* solve_cmd = app.add_subcommand("solve", "decide the instance and print a witness");
    add_common(solve_cmd, true);
    solve_cmd->add_option("--engine", engine, "auto, oracle, or a named solver")
        ->capture_default_str();
    solve_cmd->add_option("--param", param_str, "parameter for the reported verdict")
        ->capture_default_str();

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "export the exact variant as weighted SAT");
    add_common(reduce_cmd, true);
    reduce_cmd->add_option("--target", target, "only 'wsat' is supported")->capture_default_str();
    reduce_cmd->add_option("-o,--output", out_path, "output file")->required();

    CLI::App* generate_cmd =
        app.add_subcommand("generate", "instance generators from graph problems");
    std::string generator;
    generate_cmd->add_option("kind", generator, "indset | vcover")->required();
    generate_cmd->add_option("--edges", edges, "edge list, e.g. a-b,b-c,d")->required();
    generate_cmd->add_option("-k", k, "parameter of the source problem")->required();
    generate_cmd->add_option("-o,--output", out_path, "output file")->required();

    CLI::App* verify_cmd = app.add_subcommand("verify", "run all applicable engines and compare");
    add_common(verify_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (classify_cmd->parsed()) {
            abdkit::AbductionInstance inst = load_instance(in_path, size_override);
            abdkit::Variant variant = parse_variant(variant_str);
            abdkit::Param param = parse_param(param_str);
            abdkit::Verdict verdict = abdkit::classify(inst.language, variant, param);
            abdkit::CoCloneLabel label = abdkit::identify_coclone(inst.language);
            json out = {{"coclone", label.to_string()},
                        {"variant", abdkit::to_string(variant)},
                        {"param", abdkit::to_string(param)},
                        {"verdict", abdkit::to_string(verdict.label)},
                        {"citation", verdict.source}};
            std::cout << out.dump(2) << '\n';
            return 0;
        }
        if (solve_cmd->parsed()) {
            abdkit::AbductionInstance inst = load_instance(in_path, size_override);
            abdkit::Variant variant = parse_variant(variant_str);
            abdkit::Param param = parse_param(param_str);
            if (variant == abdkit::Variant::plain && param == abdkit::Param::E)
                param = abdkit::Param::H;
            abdkit::SolveResult result = abdkit::solve(inst, variant, engine, param);
            json out = {{"answer", result.yes ? "yes" : "no"},
                        {"verdict", abdkit::to_string(result.verdict.label)},
                        {"engine", result.engine},
                        {"citation", result.verdict.source}};
            if (result.witness) out["witness"] = *result.witness;
            std::cout << out.dump(2) << '\n';
            return 0;
        }
        if (reduce_cmd->parsed()) {
            if (target != "wsat") throw std::runtime_error("unsupported reduction target");
            abdkit::AbductionInstance inst = load_instance(in_path, size_override);
            abdkit::Variant variant = parse_variant(variant_str);
            if (variant != abdkit::Variant::exact)
                throw std::runtime_error("the weighted-SAT reductions are exact-variant only; "
                                         "pass --variant eq");
            abdkit::LatticeProfile prof = abdkit::lattice_profile(inst.language);
            abdkit::WsatInstance w;
            std::string route;
            if (prof.in_is12()) {
                w = abdkit::reduce_essneg_eq_to_wsat(inst);
                route = "essneg";
            } else if (prof.shapes_im) {
                w = abdkit::reduce_im_eq_to_wsat(inst);
                route = "im";
            } else if (prof.in_is10()) {
                w = abdkit::reduce_is10_eq_to_wsat(inst);
                route = "is10";
            } else if (prof.in_iv2()) {
                w = abdkit::reduce_iv2_eq_to_wsat(inst);
                route = "iv2";
            } else {
                throw std::runtime_error("no weighted-SAT reduction covers this language");
            }
            write_file(out_path, abdkit::write_wsat(w));
            json out = {{"route", route},
                        {"nvars", w.variables.size()},
                        {"nclauses", w.clauses.size()},
                        {"k", w.weight},
                        {"mode", w.mode == abdkit::WsatInstance::Mode::exact ? "eq" : "le"},
                        {"file", out_path}};
            std::cout << out.dump(2) << '\n';
            return 0;
        }
        if (generate_cmd->parsed()) {
            // --edges takes a literal list or the name of a whitespace
            // edge-list file
            std::string edge_text = edges;
            if (std::ifstream file(edges); file) {
                std::ostringstream buf;
                buf << file.rdbuf();
                edge_text = buf.str();
            }
            abdkit::Graph g = abdkit::parse_graph(edge_text);
            abdkit::AbductionInstance inst;
            std::string variant_hint;
            if (generator == "indset") {
                inst = abdkit::gen_indset_eq(g, k);
                variant_hint = "eq";
            } else if (generator == "vcover") {
                inst = abdkit::gen_vertexcover_le(g, k);
                variant_hint = "le";
            } else {
                throw std::runtime_error("unknown generator " + generator);
            }
            write_file(out_path, abdkit::serialize_instance(inst));
            json out = {{"file", out_path},
                        {"variant", variant_hint},
                        {"variables", inst.variables.size()},
                        {"constraints", inst.kb.constraints.size()},
                        {"size", inst.size ? json(*inst.size) : json(nullptr)}};
            std::cout << out.dump(2) << '\n';
            return 0;
        }
        if (verify_cmd->parsed()) {
            abdkit::AbductionInstance inst = load_instance(in_path, size_override);
            abdkit::Variant variant = parse_variant(variant_str);
            abdkit::VerifyReport report = abdkit::verify(inst, variant);
            std::cout << report.summary();
            json out = json::array();
            for (const abdkit::VerifyEntry& e : report.entries)
                out.push_back({{"engine", e.engine},
                               {"answer", e.yes ? "yes" : "no"},
                               {"witness_valid", e.witness_valid}});
            std::cout << json{{"agree", report.agree()}, {"engines", out}}.dump(2) << '\n';
            return report.agree() ? 0 : 3;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
