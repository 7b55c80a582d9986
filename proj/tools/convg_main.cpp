// convg — a command-line toolkit for finite convergence spaces.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "convg/function_space.hpp"
#include "convg/io.hpp"
#include "convg/search.hpp"

namespace {

using namespace convg;

struct Options {
    bool quiet = false;
    bool json = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_error(Errc::SchemaError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_error(Errc::SchemaError, "cannot write '" + path + "'");
    out << text;
}

ParsedSpace load_space(const std::string& path, const Options& opt) {
    ParsedSpace parsed = parse_space(read_file(path));
    if (!opt.quiet)
        for (const auto& w : parsed.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
    return parsed;
}

PointSet parse_set_arg(const CarrierRef& carrier, const std::string& arg) {
    std::vector<std::string> labels;
    std::istringstream ss(arg);
    std::string token;
    while (ss >> token) labels.push_back(token);
    return PointSet::of(carrier, labels);
}

std::vector<std::pair<std::string, std::string>> parse_map_arg(const std::string& arg) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::istringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        require(colon != std::string::npos, Errc::InvalidArgument,
                "map entries look like 'from:to', got '" + item + "'");
        pairs.emplace_back(item.substr(0, colon), item.substr(colon + 1));
    }
    require(!pairs.empty(), Errc::InvalidArgument, "empty map argument");
    return pairs;
}

std::string graph_to_map_arg(const CarrierRef& src, const CarrierRef& dst,
                             const std::vector<int>& graph) {
    std::string out;
    for (size_t i = 0; i < graph.size(); ++i) {
        if (i) out += ',';
        out += src->label(static_cast<int>(i)) + ":" + dst->label(graph[i]);
    }
    return out;
}

int run_check(const std::string& file, const std::string& axiom_arg, const Options& opt) {
    ParsedSpace parsed = load_space(file, opt);
    AxiomReport report = axiom_report(parsed.space);
    std::vector<Axiom> requested;
    if (axiom_arg == "all") {
        requested = {Axiom::Centered, Axiom::Isotone, Axiom::Stable, Axiom::Kent,
                     Axiom::Pseudotopological, Axiom::Pretopological, Axiom::Topological};
    } else {
        auto a = axiom_from_name(axiom_arg);
        require(a.has_value(), Errc::InvalidArgument, "unknown axiom '" + axiom_arg + "'");
        requested = {*a};
    }
    bool all_pass = true;
    nlohmann::ordered_json j;
    j["name"] = parsed.name;
    for (Axiom a : requested) {
        const AxiomCheck& c = report.get(a);
        all_pass = all_pass && c.holds;
        if (opt.json) {
            nlohmann::ordered_json e;
            e["holds"] = c.holds;
            if (!c.holds) e["witness"] = c.witness.describe(parsed.space.carrier());
            j[axiom_name(a)] = std::move(e);
        } else {
            std::cout << axiom_name(a) << ": " << (c.holds ? "pass" : "FAIL");
            if (!c.holds) std::cout << "  (" << c.witness.describe(parsed.space.carrier()) << ")";
            std::cout << "\n";
        }
    }
    if (!report.isotone.holds && axiom_arg == "all" && !opt.json && !opt.quiet)
        std::cout << "note: " << AxiomReport::stable_dependency_note() << "\n";
    if (opt.json) std::cout << j.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int run_modify(const std::string& file, const std::string& kind, const std::string& out,
               const Options& opt) {
    ParsedSpace parsed = load_space(file, opt);
    Preconvergence modified = kind == "topological" ? topological_modification(parsed.space)
                                                    : limit_modification(parsed.space);
    std::string suffix = kind == "topological" ? ".top" : ".lim";
    write_file(out, serialize_space(modified, parsed.name + suffix));
    return 0;
}

int run_continuity(const std::string& file_x, const std::string& file_y, const std::string& map_arg,
                   const Options& opt) {
    ParsedSpace px = load_space(file_x, opt);
    ParsedSpace py = load_space(file_y, opt);
    PointMap pm = PointMap::from_labels(px.space.carrier(), py.space.carrier(),
                                        parse_map_arg(map_arg));
    SpaceMap f(px.space, py.space, pm.graph());
    ContinuityCheck c = is_continuous(f);
    if (opt.json) {
        nlohmann::ordered_json j;
        j["continuous"] = c.continuous;
        if (!c.continuous) {
            j["witness"] = {{"A", subset_key(px.space.carrier(), c.witness->base)},
                            {"x", px.space.carrier()->label(c.witness->point)}};
        }
        std::cout << j.dump(2) << "\n";
    } else if (c.continuous) {
        std::cout << "continuous\n";
    } else {
        std::cout << "not continuous  (A={" << subset_key(px.space.carrier(), c.witness->base)
                  << "} x=" << px.space.carrier()->label(c.witness->point) << ")\n";
    }
    return c.continuous ? 0 : 1;
}

int run_funcspace(const std::string& file_x, const std::string& file_y, const std::string& out,
                  const Options& opt) {
    ParsedSpace px = load_space(file_x, opt);
    ParsedSpace py = load_space(file_y, opt);
    FunctionSpace fs = continuous_convergence(px.space, py.space);
    std::string name = "C(" + px.name + "," + py.name + ")";
    SpaceDocument doc = space_to_document(fs.space, name);
    nlohmann::ordered_json functions = nlohmann::ordered_json::object();
    for (size_t i = 0; i < fs.functions.size(); ++i)
        functions[function_label(static_cast<int>(i))] =
            graph_to_map_arg(px.space.carrier(), py.space.carrier(), fs.functions[i]);
    doc.metadata = nlohmann::ordered_json::object();
    doc.metadata["source"] = px.name;
    doc.metadata["target"] = py.name;
    doc.metadata["functions"] = std::move(functions);
    write_file(out, serialize_document(doc));
    if (!opt.quiet)
        std::cout << fs.functions.size() << " continuous maps; function space written to " << out
                  << "\n";
    return 0;
}

int run_search(const SearchSpec& spec, const Options& opt) {
    std::optional<Witness> w = search_counterexample(spec);
    if (!w) {
        std::cout << (opt.json ? "{\"witness\": null}\n" : "none found\n");
        return 0;
    }
    if (!replay_witness(*w)) throw Falsification("a search witness failed to replay");
    std::cout << witness_to_json(*w);
    return 1;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"finite convergence-space toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--quiet", opt.quiet, "suppress warnings and informational output");
    app.add_flag("--json", opt.json, "machine-readable reports");

    std::string file, file_b, out, axiom = "all", kind, map_arg, set_arg, classes_arg;
    bool dot = false;

    auto* check = app.add_subcommand("check", "classify a space against the axioms");
    check->add_option("file", file)->required();
    check->add_option("--axiom", axiom,
                      "centered|isotone|stable|kent|pseudotopological|pretopological|topological|all");

    auto* modify = app.add_subcommand("modify", "write the topological or limit modification");
    modify->add_option("file", file)->required();
    modify->add_option("--kind", kind, "topological|limit")->required();
    modify->add_option("-o", out)->required();

    auto* op = app.add_subcommand("op", "binary and unary space constructions");
    op->require_subcommand(1);
    auto* op_product = op->add_subcommand("product");
    op_product->add_option("fileA", file)->required();
    op_product->add_option("fileB", file_b)->required();
    op_product->add_option("-o", out)->required();
    auto* op_coproduct = op->add_subcommand("coproduct");
    op_coproduct->add_option("fileA", file)->required();
    op_coproduct->add_option("fileB", file_b)->required();
    op_coproduct->add_option("-o", out)->required();
    auto* op_subspace = op->add_subcommand("subspace");
    op_subspace->add_option("file", file)->required();
    op_subspace->add_option("--set", set_arg)->required();
    op_subspace->add_option("-o", out)->required();
    auto* op_quotient = op->add_subcommand("quotient");
    op_quotient->add_option("file", file)->required();
    op_quotient->add_option("--classes", classes_arg)->required();
    op_quotient->add_option("-o", out)->required();

    auto* continuity = app.add_subcommand("continuity", "check a map between two spaces");
    continuity->add_option("fileX", file)->required();
    continuity->add_option("fileY", file_b)->required();
    continuity->add_option("--map", map_arg, "graph as 'a:b,b:b'")->required();

    auto* funcspace = app.add_subcommand("funcspace", "emit C(X,Y) with the continuous convergence");
    funcspace->add_option("fileX", file)->required();
    funcspace->add_option("fileY", file_b)->required();
    funcspace->add_option("-o", out)->required();

    auto* compact = app.add_subcommand("compact", "compactness verdict");
    compact->add_option("file", file)->required();

    auto* adh = app.add_subcommand("adh", "adherence of a subset");
    adh->add_option("file", file)->required();
    adh->add_option("--set", set_arg)->required();

    auto* inh = app.add_subcommand("inh", "inherence of a subset");
    inh->add_option("file", file)->required();
    inh->add_option("--set", set_arg)->required();

    SearchSpec spec;
    auto* search = app.add_subcommand("search", "look for counterexamples");
    search->add_option("--property", spec.property,
                       "stability|quotient-limit|pasting-closed|pasting-stability")
        ->required();
    search->add_option("--max-points", spec.max_points);
    search->add_option("--seed", spec.seed);
    search->add_option("--budget", spec.budget);

    auto* exportc = app.add_subcommand("export", "export the induced topology");
    exportc->add_option("file", file)->required();
    exportc->add_flag("--dot", dot, "DOT digraph of the specialization preorder");
    exportc->add_option("-o", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad usage is an input error
    }

    if (check->parsed()) return run_check(file, axiom, opt);
    if (modify->parsed()) {
        require(kind == "topological" || kind == "limit", Errc::InvalidArgument,
                "--kind must be topological or limit");
        return run_modify(file, kind, out, opt);
    }
    if (op->parsed()) {
        if (op_product->parsed() || op_coproduct->parsed()) {
            ParsedSpace pa = load_space(file, opt);
            ParsedSpace pb = load_space(file_b, opt);
            bool prod = op_product->parsed();
            Preconvergence result = prod ? product({pa.space, pb.space})
                                         : coproduct({pa.space, pb.space});
            std::string name = pa.name + (prod ? "*" : "+") + pb.name;
            write_file(out, serialize_space(result, name));
            return 0;
        }
        ParsedSpace pa = load_space(file, opt);
        if (op_subspace->parsed()) {
            PointSet s = parse_set_arg(pa.space.carrier(), set_arg);
            write_file(out, serialize_space(subspace(pa.space, s), pa.name + "[" + set_arg + "]"));
            return 0;
        }
        std::vector<PointSet> classes;
        std::istringstream ss(classes_arg);
        std::string cls;
        while (std::getline(ss, cls, '|')) classes.push_back(parse_set_arg(pa.space.carrier(), cls));
        write_file(out, serialize_space(quotient(pa.space, classes), pa.name + "/" + classes_arg));
        return 0;
    }
    if (continuity->parsed()) return run_continuity(file, file_b, map_arg, opt);
    if (funcspace->parsed()) return run_funcspace(file, file_b, out, opt);
    if (compact->parsed()) {
        ParsedSpace p = load_space(file, opt);
        bool c = is_compact(p.space);
        if (opt.json)
            std::cout << "{\"compact\": " << (c ? "true" : "false") << "}\n";
        else
            std::cout << (c ? "compact" : "not compact") << "\n";
        return c ? 0 : 1;
    }
    if (adh->parsed() || inh->parsed()) {
        ParsedSpace p = load_space(file, opt);
        PointSet s = parse_set_arg(p.space.carrier(), set_arg);
        PointSet result = adh->parsed() ? adherence(p.space, s) : inherence(p.space, s);
        if (opt.json)
            std::cout << "{\"" << (adh->parsed() ? "adherence" : "inherence") << "\": \""
                      << result.to_string() << "\"}\n";
        else
            std::cout << "{" << result.to_string() << "}\n";
        return 0;
    }
    if (search->parsed()) return run_search(spec, opt);
    if (exportc->parsed()) {
        require(dot, Errc::InvalidArgument, "pass --dot to choose the export format");
        ParsedSpace p = load_space(file, opt);
        write_file(out, export_dot(p.space, p.name));
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const convg::Falsification& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const convg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
