#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sgflow/circular.hpp"
#include "sgflow/conversion.hpp"
#include "sgflow/corpus.hpp"
#include "sgflow/decomposition.hpp"
#include "sgflow/normalization.hpp"
#include "sgflow/oracle.hpp"
#include "sgflow/solve.hpp"
#include "sgflow/structure.hpp"

namespace sgflow {

struct SuiteOptions {
    int workers = 1;
    std::vector<long long> ks;      // suite-specific k list; empty = suite default
    int max_circular_edges = 12;    // phi-equality / normalization
};

/// Outcome for one corpus item.
struct ItemResult {
    enum class Status { skipped, passed, failed, capped };
    Status status = Status::skipped;
    std::string detail;                    // failure / cap reason
    std::map<std::string, long long> tally; // summed into the suite counters
    std::vector<std::string> records;       // free-form observations kept in the summary
};

struct SuiteFailure {
    std::string item;
    std::string detail;
    std::string graph; // serialized, for reproduction
};

struct SuiteSummary {
    std::string suite;
    long long items = 0, eligible = 0, passed = 0, failed = 0, capped = 0;
    std::map<std::string, long long> counters;
    std::vector<std::string> records;
    std::vector<SuiteFailure> failures;

    bool ok() const { return failed == 0 && capped == 0; }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["suite"] = suite;
        j["items"] = items;
        j["eligible"] = eligible;
        j["passed"] = passed;
        j["failed"] = failed;
        j["cap_exceeded"] = capped;
        j["counters"] = counters;
        j["records"] = records;
        auto fs = nlohmann::ordered_json::array();
        for (const auto& f : failures) fs.push_back({{"item", f.item}, {"detail", f.detail}});
        j["failures"] = fs;
        return j;
    }
};

using SuiteCheck = std::function<ItemResult(const CorpusItem&, const SuiteOptions&)>;

/// Runs `check` over the corpus on `opt.workers` threads; results are aggregated in corpus order.
inline SuiteSummary run_over_corpus(const std::string& name, const std::vector<CorpusItem>& corpus, const SuiteCheck& check,
                                    const SuiteOptions& opt) {
    std::vector<ItemResult> results(corpus.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < corpus.size();) {
            try {
                results[i] = check(corpus[i], opt);
            } catch (const ResourceCapError& e) {
                results[i] = {ItemResult::Status::capped, e.what(), {}, {}};
            } catch (const std::exception& e) {
                results[i] = {ItemResult::Status::failed, std::string("exception: ") + e.what(), {}, {}};
            }
        }
    };
    int workers = std::max(1, opt.workers);
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    SuiteSummary s;
    s.suite = name;
    s.items = static_cast<long long>(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& r = results[i];
        for (const auto& [k, v] : r.tally) s.counters[k] += v;
        for (const auto& rec : r.records) s.records.push_back(corpus[i].name + ": " + rec);
        switch (r.status) {
        case ItemResult::Status::skipped: continue;
        case ItemResult::Status::passed: ++s.passed; break;
        case ItemResult::Status::failed:
            ++s.failed;
            s.failures.push_back({corpus[i].name, r.detail, serialize_graph(corpus[i].graph)});
            break;
        case ItemResult::Status::capped:
            ++s.capped;
            s.failures.push_back({corpus[i].name, "cap: " + r.detail, serialize_graph(corpus[i].graph)});
            break;
        }
        ++s.eligible;
    }
    return s;
}

namespace suite_detail {

using Status = ItemResult::Status;

inline ItemResult fail(std::string why) { return {Status::failed, std::move(why), {}, {}}; }

inline bool barbell_free_admissible(const SignedGraph& g) {
    return is_flow_admissible(g).admissible && !has_long_barbell(g);
}

/// Records a parity-law check of an integer flow; returns false on violation.
inline bool parity_ok(ItemResult& r, const SignedGraph& g, const IntegerFlow& f) {
    ++r.tally["parity_checks"];
    if (parity_law_holds(g, f)) return true;
    r.status = Status::failed;
    r.detail = "parity law violated";
    return false;
}

inline std::vector<long long> ks_or(const SuiteOptions& opt, std::vector<long long> dflt) {
    return opt.ks.empty() ? dflt : opt.ks;
}

inline ItemResult six_flow(const CorpusItem& it, const SuiteOptions&) {
    const auto& g = it.graph;
    if (!barbell_free_admissible(g)) return {};
    ItemResult r{Status::passed, {}, {}, {}};
    auto s = find_nz_k_flow(g, 6);
    if (s.capped()) return {Status::capped, "6-flow search", {}, {}};
    if (!s.found()) return fail("no nowhere-zero 6-flow");
    if (auto v = check_flow(g, *s.value, FlowKind::integer(6)); !v) return fail("6-flow witness: " + v.violation);
    parity_ok(r, g, *s.value);
    return r;
}

inline ItemResult mod_int_equiv(const CorpusItem& it, const SuiteOptions& opt) {
    const auto& g = it.graph;
    if (!barbell_free_admissible(g)) return {};
    ItemResult r{Status::passed, {}, {}, {}};
    for (long long k : ks_or(opt, {3, 5, 6, 7})) {
        auto zk = find_nz_zk_flow(g, k);
        auto ik = find_nz_k_flow(g, k);
        if (zk.capped() || ik.capped()) return {Status::capped, "k = " + std::to_string(k), {}, {}};
        if (zk.found() && !check_flow(g, *zk.value, FlowKind::modulo(k))) return fail("bad Z_k witness, k = " + std::to_string(k));
        if (ik.found()) {
            if (!check_flow(g, *ik.value, FlowKind::integer(k))) return fail("bad k-flow witness, k = " + std::to_string(k));
            if (!parity_ok(r, g, *ik.value)) return r;
        }
        if (zk.found() != ik.found()) return fail("Z_k and k solvers disagree at k = " + std::to_string(k));
        ++r.tally["k" + std::to_string(k) + (ik.found() ? "_both" : "_neither")];
    }
    return r;
}

inline ItemResult conversion(const CorpusItem& it, const SuiteOptions& opt) {
    const auto& g = it.graph;
    if (!barbell_free_admissible(g)) return {};
    ItemResult r{Status::passed, {}, {}, {}};
    for (long long k : ks_or(opt, {3, 5, 7})) {
        auto zk = find_nz_zk_flow(g, k);
        if (zk.capped()) return {Status::capped, "Z_k search", {}, {}};
        if (!zk.found()) continue;
        auto res = modflow_to_intflow(g, *zk.value, k);
        if (!check_flow(g, res.flow, FlowKind::integer(k))) return fail("output is not a k-flow");
        for (int e = 0; e < g.num_edges(); ++e)
            if ((res.flow[e] - (*zk.value)[e]) % k != 0) return fail("output not congruent");
        if (!parity_ok(r, g, res.flow)) return r;
        ++r.tally["conversions"];
        r.tally["ditrail_minus"] += res.stats.ditrail_minus;
        r.tally["tadpole_minus"] += res.stats.tadpole_minus;
        r.tally["source_splits"] += res.stats.source_splits;
        r.tally["relocations"] += res.stats.relocations;
        r.tally["sink_switches"] += res.stats.sink_switches;
        if (res.stats.eta0 == 0) ++r.tally["already_integer"];
    }
    return r;
}

inline ItemResult two_flow_sum(const CorpusItem& it, const SuiteOptions& opt) {
    const auto& g = it.graph;
    if (!barbell_free_admissible(g)) return {};
    ItemResult r{Status::passed, {}, {}, {}};
    for (long long k : ks_or(opt, {2, 3, 4, 5, 6})) {
        auto s = find_nz_k_flow(g, k);
        if (s.capped()) return {Status::capped, "k-flow search", {}, {}};
        if (!s.found()) continue;
        auto f = fold_positive(*s.value);
        auto parts = decompose_into_2_flows(g, f, k, {false});
        if (static_cast<long long>(parts.size()) != k - 1) return fail("wrong number of parts");
        for (int e = 0; e < g.num_edges(); ++e) {
            long long sum = 0;
            for (const auto& p : parts) sum += p[e];
            if (sum != f[e]) return fail("parts do not sum to the input");
        }
        for (const auto& p : parts) {
            for (long long v : p.values)
                if (v != 0 && v != 1) return fail("part value outside {0, 1}");
            for (long long b : boundary(g, p))
                if (b != 0) return fail("part is not a flow");
            if (!parity_ok(r, g, p)) return r;
        }
        ++r.tally["decompositions"];
    }
    return r;
}

inline ItemResult eulerian(const CorpusItem& it, const SuiteOptions&) {
    const auto& g = it.graph;
    if (!is_eulerian(g) || g.num_negative() % 2 != 0 || !barbell_free_admissible(g)) return {};
    auto d = eulerian_decompose(g, {false});
    if (!d.verify(g)) return fail("decomposition does not verify");
    ItemResult r{Status::passed, {}, {}, {}};
    for (const auto& m : d.members) ++r.tally[to_string(m.kind)];
    return r;
}

inline ItemResult phi_equality(const CorpusItem& it, const SuiteOptions& opt) {
    const auto& g = it.graph;
    if (g.num_edges() > opt.max_circular_edges || !is_flow_admissible(g).admissible) return {};
    auto fi = integer_flow_number(g);
    if (fi.status == SearchStatus::cap_exceeded) return {Status::capped, "integer flow number", {}, {}};
    if (!fi.phi_i) return fail("admissible graph without a k-flow for k <= 8");
    ItemResult r{Status::passed, {}, {}, {}};
    if (!parity_ok(r, g, *fi.witness)) return r;
    auto fc = circular_flow_number(g, to_rational_flow(*fi.witness));
    Rational c = fc.phi_c;
    long long ceil_c = static_cast<long long>(ceil_of(c));
    bool barbell = has_long_barbell(g);
    if (barbell) {
        ++r.tally["barbell_gap=" + std::to_string(*fi.phi_i - ceil_c)];
        if (ceil_c != *fi.phi_i) r.records.push_back("phi_c = " + to_string(c) + ", phi_i = " + std::to_string(*fi.phi_i));
        return r;
    }
    if (ceil_c != *fi.phi_i)
        return fail("ceil(phi_c) = " + std::to_string(ceil_c) + " but phi_i = " + std::to_string(*fi.phi_i));
    ++r.tally["phi_i=" + std::to_string(*fi.phi_i)];
    if (!is_integer(c)) ++r.tally["fractional_phi_c"];
    return r;
}

/// Off-grid circular flow: double an integer k-flow and push 1/3 along the first signed circuit of g.
inline std::optional<std::pair<FlowAssignment, long long>> perturbed_flow(const SignedGraph& g, const IntegerFlow& f, long long k) {
    std::vector<int> all(static_cast<std::size_t>(g.num_edges()));
    for (int e = 0; e < g.num_edges(); ++e) all[static_cast<std::size_t>(e)] = e;
    auto w = find_signed_circuit(g, all);
    if (!w) return std::nullopt;
    auto phi1 = reorient(g, signed_circuit_flow(g, *w), f.orientation);
    FlowAssignment out{f.orientation, {}};
    for (int e = 0; e < g.num_edges(); ++e) out.values.push_back(Rational(2 * f[e]) + Rational(phi1[e], 3));
    return std::make_pair(fold_positive(out), 2 * k - 1);
}

inline ItemResult normalization(const CorpusItem& it, const SuiteOptions& opt) {
    const auto& g = it.graph;
    if (g.num_edges() > opt.max_circular_edges || !is_flow_admissible(g).admissible) return {};
    auto fi = integer_flow_number(g);
    if (fi.status == SearchStatus::cap_exceeded) return {Status::capped, "integer flow number", {}, {}};
    if (!fi.witness) return fail("admissible graph without a k-flow for k <= 8");
    const bool barbell = has_long_barbell(g);
    ItemResult r{Status::passed, {}, {}, {}};
    auto run = [&](const FlowAssignment& f, long long p, long long q, const char* tag) {
        auto s = normalize_circular_flow(g, f, p, q);
        if (!terminal_structure_ok(g, s)) {
            r = fail(std::string(tag) + ": terminal structure violated");
            return false;
        }
        if (!barbell && !s.off_grid.empty()) {
            r = fail(std::string(tag) + ": off-grid edges remain without long barbells");
            return false;
        }
        for (std::size_t i = 1; i < s.off_grid_trace.size(); ++i)
            if (s.off_grid_trace[i] >= s.off_grid_trace[i - 1]) {
                r = fail(std::string(tag) + ": off-grid set did not shrink");
                return false;
            }
        ++r.tally["runs"];
        r.tally["pushes"] += s.pushes;
        if (!s.off_grid.empty()) ++r.tally["half_grid_terminal"];
        return true;
    };
    auto fc = circular_flow_number(g, to_rational_flow(*fi.witness));
    Rational pq = fc.phi_c - 1;
    if (!run(fc.witness, static_cast<long long>(numerator_of(pq)), static_cast<long long>(denominator_of(pq)), "optimal"))
        return r;
    if (auto pf = perturbed_flow(g, *fi.witness, *fi.phi_i))
        if (!run(pf->first, pf->second, 1, "perturbed")) return r;
    return r;
}

inline ItemResult cubic_z4(const CorpusItem& it, const SuiteOptions&) {
    const auto& g = it.graph;
    if (!is_cubic(g) || !barbell_free_admissible(g)) return {};
    auto z4 = find_nz_zk_flow(g, 4);
    if (z4.capped()) return {Status::capped, "Z_4 search", {}, {}};
    bool colorable = three_edge_coloring(g).has_value();
    if (z4.found() != colorable) return fail("Z_4-flow existence and 3-edge-colourability disagree");
    ItemResult r{Status::passed, {}, {}, {}};
    ++r.tally[colorable ? "both_yes" : "both_no"];
    if (find_antibalanced_2_factor(g).has_value() != colorable) ++r.tally["antibalanced_2_factor_mismatch"];
    return r;
}

inline ItemResult even_k(const CorpusItem& it, const SuiteOptions& opt) {
    const auto& g = it.graph;
    if (!barbell_free_admissible(g)) return {};
    ItemResult r{Status::passed, {}, {}, {}};
    for (long long k : ks_or(opt, {4, 6})) {
        auto zk = find_nz_zk_flow(g, k);
        if (zk.capped()) return {Status::capped, "Z_k search", {}, {}};
        if (!zk.found()) continue;
        std::string key = "k" + std::to_string(k);
        ConversionOptions co;
        co.experimental_even_k = true;
        try {
            auto res = modflow_to_intflow(g, *zk.value, k, co);
            ++r.tally[key + "_converted"];
            if (!parity_ok(r, g, res.flow)) return r;
        } catch (const InvariantViolation&) {
            ++r.tally[key + "_scheduler_stuck"];
            if (find_nz_k_flow(g, k).found()) ++r.tally[key + "_stuck_but_k_flow_exists"];
            else r.records.push_back("Z_" + std::to_string(k) + "-flow without a " + std::to_string(k) + "-flow");
        }
    }
    return r;
}

inline ItemResult oracle(const CorpusItem& it, const SuiteOptions& opt) {
    const auto& g = it.graph;
    ItemResult r{Status::passed, {}, {}, {}};
    for (long long k : ks_or(opt, {2, 3, 4})) {
        for (bool modulo : {false, true}) {
            auto s = modulo ? find_nz_zk_flow(g, k) : find_nz_k_flow(g, k);
            if (s.capped()) return {Status::capped, "solver", {}, {}};
            bool brute = brute_force_flow_exists(g, k, modulo);
            if (s.found() != brute)
                return fail(std::string(modulo ? "Z_" : "") + std::to_string(k) + (modulo ? "" : "-flow") +
                            ": solver and brute force disagree");
            if (s.found()) {
                if (!check_flow(g, *s.value, modulo ? FlowKind::modulo(k) : FlowKind::integer(k)))
                    return fail("solver witness fails verification");
                if (!modulo && !parity_ok(r, g, *s.value)) return r;
            }
            ++r.tally["comparisons"];
        }
    }
    return r;
}

} // namespace suite_detail

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"six-flow",     "mod-int-equiv", "conversion", "two-flow-sum",
                                                "eulerian-decomp", "phi-equality", "normalization", "cubic-z4",
                                                "even-k-experimental", "oracle"};
    return names;
}

inline SuiteCheck suite_check(const std::string& name) {
    namespace d = suite_detail;
    if (name == "six-flow") return d::six_flow;
    if (name == "mod-int-equiv") return d::mod_int_equiv;
    if (name == "conversion") return d::conversion;
    if (name == "two-flow-sum") return d::two_flow_sum;
    if (name == "eulerian-decomp") return d::eulerian;
    if (name == "phi-equality") return d::phi_equality;
    if (name == "normalization") return d::normalization;
    if (name == "cubic-z4") return d::cubic_z4;
    if (name == "even-k-experimental") return d::even_k;
    if (name == "oracle") return d::oracle;
    throw PreconditionError("unknown suite '" + name + "'");
}

/// Corpus for a suite: the exhaustive enumeration within the bounds, plus signed Petersen for cubic-z4.
inline std::vector<CorpusItem> suite_corpus(const std::string& name, int max_v, int max_e) {
    auto corpus = enumerate_signed_graphs(max_v, max_e);
    if (name == "cubic-z4") corpus.push_back({"signed-petersen", signed_petersen()});
    return corpus;
}

inline SuiteSummary run_suite(const std::string& name, const std::vector<CorpusItem>& corpus, const SuiteOptions& opt = {}) {
    return run_over_corpus(name, corpus, suite_check(name), opt);
}

} // namespace sgflow
