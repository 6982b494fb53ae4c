// Command-line front end for the sgflow library.
//
// Exit codes: 0 success (including mathematical "none" answers), 2 precondition, 3 resource cap,
// 4 invariant violation or failed suite, 5 IO/parse.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "sgflow.hpp"

namespace fs = std::filesystem;
using namespace sgflow;

namespace {

enum Exit { ok = 0, precondition = 2, resource_cap_exit = 3, invariant = 4, io = 5 };

struct Output {
    std::string dir;
    json index = json::array();

    void emit(const std::string& name, const json& doc) {
        std::string text = doc.dump(2) + "\n";
        if (dir.empty()) {
            std::cout << text;
            return;
        }
        fs::create_directories(dir);
        write_text_file((fs::path(dir) / name).string(), text);
        index.push_back(name);
    }

    void emit_text(const std::string& name, const std::string& text) {
        fs::create_directories(fs::path(dir) / fs::path(name).parent_path());
        write_text_file((fs::path(dir) / name).string(), text);
        index.push_back(name);
    }

    void finish() {
        if (dir.empty()) return;
        write_text_file((fs::path(dir) / "index.json").string(), json{{"artifacts", index}}.dump(2) + "\n");
    }
};

SignedGraph load_graph(const std::string& path) { return parse_graph(read_text_file(path)); }

int run_flow(const std::string& file, std::optional<long long> k, std::optional<long long> mod, bool circular, Output& out) {
    SignedGraph g = load_graph(file);
    int chosen = (k ? 1 : 0) + (mod ? 1 : 0) + (circular ? 1 : 0);
    if (chosen != 1) throw PreconditionError("give exactly one of --k, --modulo, --circular");
    FlowKind kind = circular ? FlowKind::circular(2) : k ? FlowKind::integer(*k) : FlowKind::modulo(*mod);
    if (!circular && kind.k < 2) throw PreconditionError("k must be at least 2");
    out.emit("flow.json", flow_certificate(g, kind));
    return Exit::ok;
}

int run_convert(const std::string& file, const std::string& flow_file, long long k, bool even, Output& out) {
    SignedGraph g = load_graph(file);
    auto fa = to_integer_flow(parse_flow(read_text_file(flow_file), g));
    if (!fa) throw PreconditionError("flow file must hold integer values");
    ConversionOptions opt;
    opt.experimental_even_k = even;
    auto r = modflow_to_intflow(g, *fa, k, opt);
    out.emit("conversion.json", conversion_certificate(g, *fa, k, r));
    return Exit::ok;
}

int run_decompose(const std::string& file, const std::string& flow_file, std::optional<long long> k, bool eulerian,
                  Output& out) {
    SignedGraph g = load_graph(file);
    if (eulerian) {
        out.emit("eulerian.json", eulerian_certificate(g, eulerian_decompose(g)));
        return Exit::ok;
    }
    if (flow_file.empty() || !k) throw PreconditionError("give a flow file and --k, or --eulerian");
    auto fa = to_integer_flow(parse_flow(read_text_file(flow_file), g));
    if (!fa) throw PreconditionError("flow file must hold integer values");
    auto f = fold_positive(*fa);
    out.emit("decomposition.json", decomposition_certificate(g, f, *k, decompose_into_2_flows(g, f, *k)));
    return Exit::ok;
}

int run_normalize(const std::string& file, const std::string& flow_file, long long p, long long q, Output& out) {
    SignedGraph g = load_graph(file);
    auto fa = parse_flow(read_text_file(flow_file), g);
    auto s = normalize_circular_flow(g, fa, p, q);
    out.emit("normalization.json", normalization_certificate(g, fa, s));
    return Exit::ok;
}

int run_generate(const std::string& family, int t, int max_v, int max_e, std::uint64_t seed, int v, int e, double neg,
                 Output& out) {
    std::vector<CorpusItem> items;
    json params = {{"family", family}};
    if (family == "petersen-fig1") {
        items.push_back({"signed-petersen", signed_petersen()});
    } else if (family == "g-family") {
        items.push_back({"g-family-" + std::to_string(t), g_family(t)});
        params["t"] = t;
    } else if (family == "w5-all-signatures") {
        items = w5_all_signatures();
    } else if (family == "enumerate") {
        items = enumerate_signed_graphs(max_v, max_e);
        params["max_v"] = max_v;
        params["max_e"] = max_e;
    } else if (family == "random") {
        items.push_back({"random-" + std::to_string(seed), random_signed_graph(seed, v, e, neg)});
        params["seed"] = seed;
        params["v"] = v;
        params["e"] = e;
        params["neg_prob"] = neg;
    } else {
        throw PreconditionError("unknown family '" + family + "'");
    }
    if (out.dir.empty()) {
        for (const auto& it : items) std::cout << "# " << it.name << "\n" << serialize_graph(it.graph);
        return Exit::ok;
    }
    json files = json::array();
    for (const auto& it : items) {
        out.emit_text("graphs/" + it.name + ".graph", serialize_graph(it.graph));
        files.push_back("graphs/" + it.name + ".graph");
    }
    out.emit("manifest.json", json{{"params", params}, {"count", items.size()}, {"graphs", files}});
    return Exit::ok;
}

int run_verify(const std::string& suite, int max_v, int max_e, std::vector<long long> ks, int workers, Output& out) {
    suite_check(suite); // validates the name
    SuiteOptions opt;
    opt.workers = workers > 0 ? workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    opt.ks = std::move(ks);
    auto s = run_suite(suite, suite_corpus(suite, max_v, max_e), opt);
    json j = s.to_json();
    j["bounds"] = {{"max_v", max_v}, {"max_e", max_e}};
    out.emit("summary.json", j);
    if (!out.dir.empty())
        for (const auto& f : s.failures) out.emit_text("failures/" + f.item + ".graph", f.graph);
    if (s.capped && !s.failed) return Exit::resource_cap_exit;
    return s.failed ? Exit::invariant : Exit::ok;
}

int run_check(const std::string& file) {
    json cert;
    try {
        cert = json::parse(read_text_file(file));
    } catch (const json::parse_error& e) {
        throw ParseError(0, e.what());
    }
    auto c = verify_certificate(cert);
    std::cout << (c ? "verified" : "rejected: " + c.reason) << "\n";
    return c ? Exit::ok : Exit::precondition;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flows on signed graphs: analysis, exact solvers, constructive algorithms and verification suites"};
    app.require_subcommand(1);
    Output out;
    std::string file, flow_file, family = "enumerate", suite;
    std::optional<long long> k, mod;
    bool circular = false, even = false, eulerian = false;
    long long p = 0, q = 1;
    int t = 1, max_v = 5, max_e = 8, v = 5, e = 8, workers = 1;
    std::uint64_t seed = 1;
    double neg = 0.3;
    std::vector<long long> ks;

    auto* analyze = app.add_subcommand("analyze", "structural report for a graph file");
    analyze->add_option("file", file, "graph file")->required();

    auto* flow = app.add_subcommand("flow", "find a nowhere-zero flow or prove none exists");
    flow->add_option("file", file, "graph file")->required();
    flow->add_option("--k", k, "integer k-flow");
    flow->add_option("--modulo", mod, "Z_k-flow");
    flow->add_flag("--circular", circular, "circular flow number with witness");

    auto* convert = app.add_subcommand("convert", "turn a Z_k-flow into a congruent integer k-flow");
    convert->add_option("file", file, "graph file")->required();
    convert->add_option("flow", flow_file, "flow file")->required();
    convert->add_option("--k", k, "modulus")->required();
    convert->add_flag("--experimental-even-k", even, "allow even k (open problem; no correctness claim)");

    auto* decompose = app.add_subcommand("decompose", "sum-of-2-flows or eulerian decomposition");
    decompose->add_option("file", file, "graph file")->required();
    decompose->add_option("flow", flow_file, "integer k-flow file");
    decompose->add_option("--k", k, "flow bound");
    decompose->add_flag("--eulerian", eulerian, "partition into balanced circuits and short barbells");

    auto* normalize = app.add_subcommand("normalize", "push a circular (p/q + 1)-flow onto the 1/q grid");
    normalize->add_option("file", file, "graph file")->required();
    normalize->add_option("flow", flow_file, "flow file")->required();
    normalize->add_option("--p", p, "numerator")->required();
    normalize->add_option("--q", q, "denominator");

    auto* generate = app.add_subcommand("generate", "write graphs of a family");
    generate->add_option("family", family, "petersen-fig1 | g-family | w5-all-signatures | enumerate | random")->required();
    generate->add_option("--t", t, "copies of K4 for g-family");
    generate->add_option("--max-v", max_v, "enumeration vertex bound");
    generate->add_option("--max-e", max_e, "enumeration edge bound");
    generate->add_option("--seed", seed, "random seed");
    generate->add_option("--v", v, "random: vertices");
    generate->add_option("--e", e, "random: edges");
    generate->add_option("--neg-prob", neg, "random: probability of a negative edge");

    auto* verify = app.add_subcommand("verify", "run a theorem suite over the enumerated corpus");
    verify->add_option("suite", suite, "suite name")->required();
    verify->add_option("--max-v", max_v, "vertex bound");
    verify->add_option("--max-e", max_e, "edge bound");
    verify->add_option("--k", ks, "k values (suite default when omitted)");
    verify->add_option("--workers", workers, "worker threads (0 = hardware)");

    auto* check = app.add_subcommand("check", "re-verify a certificate");
    check->add_option("file", file, "certificate JSON")->required();

    for (auto* sub : {analyze, flow, convert, decompose, normalize, generate, verify})
        sub->add_option("--out", out.dir, "write artifacts and index.json here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Exit::precondition;
    }

    try {
        int code = Exit::ok;
        if (*analyze) out.emit("analysis.json", analysis_report(load_graph(file)));
        else if (*flow) code = run_flow(file, k, mod, circular, out);
        else if (*convert) code = run_convert(file, flow_file, *k, even, out);
        else if (*decompose) code = run_decompose(file, flow_file, k, eulerian, out);
        else if (*normalize) code = run_normalize(file, flow_file, p, q, out);
        else if (*generate) code = run_generate(family, t, max_v, max_e, seed, v, e, neg, out);
        else if (*verify) code = run_verify(suite, max_v, max_e, ks, workers, out);
        else if (*check) code = run_check(file);
        out.finish();
        return code;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        switch (err.kind()) {
        case ErrorKind::precondition: return Exit::precondition;
        case ErrorKind::resource_cap: return Exit::resource_cap_exit;
        case ErrorKind::invariant_violation: return Exit::invariant;
        case ErrorKind::parse: return Exit::io;
        }
    } catch (const fs::filesystem_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return Exit::io;
    }
    return Exit::invariant;
}
