// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "sgflow.hpp"

using namespace sgflow;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failures;
    std::ostringstream line;
    line.precision(1);
    line << std::fixed << "criterion " << n << " [" << title << "]: " << (o.ok ? "PASS" : "FAIL") << " - " << o.detail << " ("
         << secs << " s)";
    std::cout << line.str() << std::endl;
}

SuiteOptions options() {
    SuiteOptions opt;
    opt.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return opt;
}

std::string counters(const SuiteSummary& s) {
    std::string out;
    for (const auto& [k, v] : s.counters) out += (out.empty() ? "" : ", ") + k + "=" + std::to_string(v);
    return out;
}

std::string brief(const SuiteSummary& s) {
    std::string out = "eligible " + std::to_string(s.eligible) + "/" + std::to_string(s.items) + ", failed " +
                      std::to_string(s.failed) + ", capped " + std::to_string(s.capped);
    if (!s.failures.empty()) out += ", first failure " + s.failures.front().item + ": " + s.failures.front().detail;
    return out;
}

long long parity_checks = 0;

SuiteSummary suite(const std::string& name, const std::vector<CorpusItem>& corpus) {
    auto s = run_suite(name, corpus, options());
    if (auto it = s.counters.find("parity_checks"); it != s.counters.end()) parity_checks += it->second;
    return s;
}

} // namespace

int main() {
    const auto corpus = enumerate_signed_graphs(5, 8);
    std::cout << "corpus: " << corpus.size() << " connected signed multigraphs, <= 5 vertices, <= 8 edges" << std::endl;

    report(1, "signed Petersen", [] {
        SignedGraph g = signed_petersen();
        auto six = find_nz_k_flow(g, 6);
        auto five = find_nz_k_flow(g, 5);
        bool six_ok = six.found() && check_flow(g, *six, FlowKind::integer(6));
        std::string d = "k=6 " + std::string(to_string(six.status)) + (six_ok ? " (verified)" : "") + ", k=5 " +
                        to_string(five.status) + " after " + std::to_string(five.nodes) + " nodes";
        return Outcome{six_ok && five.none(), d};
    });

    report(2, "G_t family", [] {
        bool ok = true;
        std::string d;
        for (int t = 1; t <= 3; ++t) {
            SignedGraph g = g_family(t);
            auto w = g_family_circular_witness(t);
            bool wit = check_flow(g, w, FlowKind::circular(3)) && w[0] == Rational(3, 2) && w[1] == Rational(3, 2);
            auto c = circular_flow_number(g);
            auto k3 = find_nz_k_flow(g, 3);
            auto z3 = find_nz_zk_flow(g, 3);
            bool good = wit && c.phi_c <= 3 && k3.none() && z3.none();
            ok = ok && good;
            d += (t > 1 ? "; " : "") + std::string("t=") + std::to_string(t) + ": phi_c=" + to_string(c.phi_c) +
                 ", witness " + (wit ? "ok" : "bad") + ", k3 " + to_string(k3.status) + ", Z3 " + to_string(z3.status);
        }
        return Outcome{ok, d};
    });

    report(3, "six-flow suite", [&] {
        auto s = suite("six-flow", corpus);
        return Outcome{s.ok() && s.eligible > 0, brief(s)};
    });

    report(4, "Z_k / k equivalence", [&] {
        auto s = suite("mod-int-equiv", corpus);
        int separating = 0;
        auto w5 = w5_all_signatures();
        for (const auto& it : w5)
            if (find_nz_zk_flow(it.graph, 4).found() && find_nz_k_flow(it.graph, 4).none()) ++separating;
        return Outcome{s.ok() && s.eligible > 0 && separating > 0,
                       brief(s) + "; W5: " + std::to_string(separating) + " of " + std::to_string(w5.size()) +
                           " classes have a Z_4-flow but no 4-flow"};
    });

    report(5, "odd-k conversion", [&] {
        auto s = suite("conversion", corpus);
        long long n = s.counters.count("conversions") ? s.counters.at("conversions") : 0;
        return Outcome{s.ok() && n > 0, brief(s) + "; " + counters(s)};
    });

    report(6, "sum of 2-flows", [&] {
        auto s = suite("two-flow-sum", corpus);
        long long n = s.counters.count("decompositions") ? s.counters.at("decompositions") : 0;
        return Outcome{s.ok() && n > 0, brief(s) + "; decompositions=" + std::to_string(n)};
    });

    report(7, "eulerian decomposition", [&] {
        auto s = suite("eulerian-decomp", corpus);
        return Outcome{s.ok() && s.eligible > 0, brief(s) + "; " + counters(s)};
    });

    report(8, "ceil(phi_c) = phi_i", [&] {
        auto s = suite("phi-equality", corpus);
        SignedGraph g1 = g_family(1);
        auto c = circular_flow_number(g1);
        auto i = integer_flow_number(g1);
        bool g1_gap = i.phi_i && ceil_of(c.phi_c) < *i.phi_i;
        std::string gaps;
        for (const auto& [k, v] : s.counters)
            if (k.rfind("barbell_gap", 0) == 0) gaps += (gaps.empty() ? "" : ", ") + k + ": " + std::to_string(v);
        return Outcome{s.ok() && s.eligible > 0 && g1_gap,
                       brief(s) + "; barbell gaps {" + gaps + "}; G_1 phi_c=" + to_string(c.phi_c) +
                           " phi_i=" + (i.phi_i ? std::to_string(*i.phi_i) : "?")};
    });

    report(9, "normalization", [&] {
        auto s = suite("normalization", corpus);
        SignedGraph g1 = g_family(1);
        auto st = normalize_circular_flow(g1, g_family_circular_witness(1), 2, 1);
        bool loops = st.off_grid == std::vector<int>{0, 1} && terminal_structure_ok(g1, st);
        return Outcome{s.ok() && loops, brief(s) + "; " + counters(s) + "; G_1 terminal F = " +
                                            (loops ? "the two loops" : "unexpected")};
    });

    report(10, "oracle agreement and parity", [&] {
        auto s = suite("oracle", enumerate_signed_graphs(4, 6));
        return Outcome{s.ok() && parity_checks > 0,
                       brief(s) + "; parity law held on " + std::to_string(parity_checks) + " integer flows"};
    });

    report(11, "cubic Z_4 vs 3-edge-colouring", [&] {
        auto s = suite("cubic-z4", suite_corpus("cubic-z4", 5, 8));
        SignedGraph p = signed_petersen();
        bool z4 = find_nz_zk_flow(p, 4).found();
        bool col = three_edge_coloring(p).has_value();
        return Outcome{s.ok() && !z4 && !col, brief(s) + "; " + counters(s) + "; Petersen Z_4 " + (z4 ? "yes" : "no") +
                                                  ", 3-edge-colourable " + (col ? "yes" : "no")};
    });

    std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
