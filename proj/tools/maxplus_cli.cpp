#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "maxplus/harness.hpp"

namespace {

using namespace maxplus;

int run_analyze(const std::string& path, const std::string& scheme, bool oracle,
                int node_limit, bool json_out, bool per_scc) {
    InstanceFile inst = read_instance_file(path);
    AnalyzeOptions opts;
    opts.with_oracle = oracle;
    opts.node_limit = node_limit;
    opts.nacht = scheme == "all" || scheme == "nacht";
    opts.ha = scheme == "all" || scheme == "ha";
    opts.ct = scheme == "all" || scheme == "ct";
    if (per_scc) {
        PerSccReport rep = analyze_per_scc(inst, opts);
        std::cout << (json_out ? rep.to_json() : rep.to_text());
        if (json_out) std::cout << '\n';
        return 0;
    }
    AnalyzeReport rep = analyze(inst, opts);
    std::cout << (json_out ? rep.to_json() : rep.to_text());
    if (json_out) std::cout << '\n';
    return 0;
}

int run_compare(const std::string& path, int node_limit, bool json_out) {
    InstanceFile inst = read_instance_file(path);
    AnalyzeOptions opts;
    opts.node_limit = node_limit;
    CompareReport rep = compare(inst, opts);
    std::cout << (json_out ? rep.to_json() : rep.to_text());
    if (json_out) std::cout << '\n';
    return 0;
}

int run_fuzz(const FuzzOptions& opts, bool json_out) {
    FuzzReport rep = fuzz(opts);
    std::cout << (json_out ? rep.to_json() : rep.to_text());
    if (json_out) std::cout << '\n';
    return rep.ok() ? 0 : 3;
}

int run_gen(const std::string& sizes, const std::string& lambdas, const std::string& out) {
    SeparatorParams params;
    auto parse_list = [](const std::string& text) {
        std::vector<std::string> items;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) items.push_back(item);
        return items;
    };
    auto ss = parse_list(sizes);
    auto ls = parse_list(lambdas);
    if (ss.size() != 4 || ls.size() != 4)
        throw Error("gen needs four block sizes and four eigenvalues");
    for (int k = 0; k < 4; ++k) {
        params.sizes[k] = std::stoi(ss[k]);
        Scalar s = parse_scalar_token(ls[k]);
        if (s.is_bottom()) throw Error("block eigenvalues must be finite");
        params.lambdas[k] = s.rat();
    }
    Matrix a = gen_scheme_separator(params);
    std::string text = serialize_matrix(a);
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) throw Error("cannot write " + out);
        f << text;
    }
    return 0;
}

int run_power(const std::string& path, long long t) {
    InstanceFile inst = read_instance_file(path);
    std::cout << serialize_matrix(mat_power(inst.a, t));
    return 0;
}

int run_star(const std::string& path) {
    InstanceFile inst = read_instance_file(path);
    std::cout << serialize_matrix(kleene_star(inst.a));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"max-plus transience bounds workbench"};
    app.require_subcommand(1);

    std::string path, scheme = "all", out_path;
    bool oracle = true, json_out = false, per_scc = false;
    int node_limit = maxplus::kDefaultNodeLimit;
    long long t = 0;
    maxplus::FuzzOptions fuzz_opts;
    std::string sizes = "2,1,1,1", lambdas = "0,-1,-2,-3";

    auto* analyze_cmd = app.add_subcommand("analyze", "full report on one instance");
    analyze_cmd->add_option("file", path, "instance file")->required();
    analyze_cmd->add_option("--scheme", scheme, "nacht|ha|ct|all")
        ->check(CLI::IsMember({"nacht", "ha", "ct", "all"}));
    analyze_cmd->add_flag("--oracle,!--no-oracle", oracle, "run the exact oracle");
    analyze_cmd->add_option("--node-limit", node_limit, "exponential search guard");
    analyze_cmd->add_flag("--json", json_out, "machine-readable output");
    analyze_cmd->add_flag("--per-scc", per_scc, "analyze each component separately");

    auto* compare_cmd =
        app.add_subcommand("compare", "our bounds against the literature bounds");
    compare_cmd->add_option("file", path, "instance file")->required();
    compare_cmd->add_option("--node-limit", node_limit, "exponential search guard");
    compare_cmd->add_flag("--json", json_out, "machine-readable output");

    auto* fuzz_cmd = app.add_subcommand("fuzz", "seeded random soundness run");
    fuzz_cmd->add_option("--count", fuzz_opts.count, "number of instances");
    fuzz_cmd->add_option("--n-max", fuzz_opts.n_max, "max dimension");
    fuzz_cmd->add_option("--weight-lo", fuzz_opts.weight_lo, "weight range low end");
    fuzz_cmd->add_option("--weight-hi", fuzz_opts.weight_hi, "weight range high end");
    fuzz_cmd->add_option("--seed", fuzz_opts.seed, "rng seed");
    fuzz_cmd->add_option("--node-limit", fuzz_opts.node_limit, "exponential search guard");
    fuzz_cmd->add_flag("--json", json_out, "machine-readable output");

    auto* gen_cmd = app.add_subcommand("gen", "four-block scheme separator instance");
    gen_cmd->add_option("--sizes", sizes, "block sizes, e.g. 2,1,1,1");
    gen_cmd->add_option("--lambdas", lambdas, "block eigenvalues, strictly decreasing");
    gen_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* power_cmd = app.add_subcommand("power", "print A^t");
    power_cmd->add_option("file", path, "instance file")->required();
    power_cmd->add_option("t", t, "exponent")->required();

    auto* star_cmd = app.add_subcommand("star", "print the Kleene star A*");
    star_cmd->add_option("file", path, "instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (analyze_cmd->parsed())
            return run_analyze(path, scheme, oracle, node_limit, json_out, per_scc);
        if (compare_cmd->parsed()) return run_compare(path, node_limit, json_out);
        if (fuzz_cmd->parsed()) return run_fuzz(fuzz_opts, json_out);
        if (gen_cmd->parsed()) return run_gen(sizes, lambdas, out_path);
        if (power_cmd->parsed()) return run_power(path, t);
        if (star_cmd->parsed()) return run_star(path);
    } catch (const maxplus::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const maxplus::FalsificationError& e) {
        std::cerr << "soundness violation: " << e.what() << '\n';
        return 3;
    } catch (const maxplus::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
