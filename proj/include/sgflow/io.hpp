#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sgflow/circular.hpp"
#include "sgflow/conversion.hpp"
#include "sgflow/decomposition.hpp"
#include "sgflow/error.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/graph.hpp"
#include "sgflow/normalization.hpp"
#include "sgflow/solve.hpp"
#include "sgflow/structure.hpp"

namespace sgflow {

using json = nlohmann::ordered_json;

inline constexpr int certificate_schema_version = 1;

// ---------------------------------------------------------------------------
// Files

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

/// Flow file: a `flip <e>...` line (1-based edges reversed from the canonical orientation), then one
/// `<edge> <fraction>` line per edge. `#` starts a comment line.
inline FlowAssignment parse_flow(std::string_view text, const SignedGraph& g) {
    std::vector<int> flips;
    bool have_flip = false;
    std::vector<std::optional<Rational>> vals(static_cast<std::size_t>(g.num_edges()));
    int last = 0;
    detail::for_each_line(text, [&](int lineno, std::string_view line) {
        last = lineno;
        auto tok = detail::split_ws(line);
        if (tok.empty() || tok[0][0] == '#') return;
        if (tok[0] == "flip") {
            if (have_flip) throw ParseError(lineno, "duplicate flip line");
            have_flip = true;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                long long e = 0;
                if (!detail::parse_int(tok[i], e) || e < 1 || e > g.num_edges())
                    throw ParseError(lineno, "bad edge index in flip line");
                flips.push_back(static_cast<int>(e - 1));
            }
            return;
        }
        long long e = 0;
        if (tok.size() != 2 || !detail::parse_int(tok[0], e)) throw ParseError(lineno, "expected '<edge> <fraction>'");
        if (e < 1 || e > g.num_edges()) throw ParseError(lineno, "edge index out of range");
        auto& slot = vals[static_cast<std::size_t>(e - 1)];
        if (slot) throw ParseError(lineno, "duplicate value for edge " + std::to_string(e));
        try {
            slot = parse_rational(tok[1]);
        } catch (const std::exception&) {
            throw ParseError(lineno, "bad fraction '" + std::string(tok[1]) + "'");
        }
    });
    FlowAssignment f{Orientation::from_flip_set(g, flips), {}};
    for (std::size_t e = 0; e < vals.size(); ++e) {
        if (!vals[e]) throw ParseError(last, "no value for edge " + std::to_string(e + 1));
        f.values.push_back(*vals[e]);
    }
    return f;
}

inline std::string serialize_flow(const SignedGraph& g, const FlowAssignment& f) {
    std::ostringstream os;
    os << "flip";
    for (int e : f.orientation.flip_set(g)) os << ' ' << e + 1;
    os << '\n';
    for (int e = 0; e < g.num_edges(); ++e) os << e + 1 << ' ' << to_string(f[e]) << '\n';
    return os.str();
}

inline std::string serialize_flow(const SignedGraph& g, const IntegerFlow& f) {
    return serialize_flow(g, to_rational_flow(f));
}

// ---------------------------------------------------------------------------
// JSON pieces

inline json graph_json(const SignedGraph& g) {
    return {{"serialization", serialize_graph(g)}, {"hash", content_hash(g)}};
}

inline SignedGraph graph_from_json(const json& j) {
    SignedGraph g = parse_graph(j.at("serialization").get<std::string>());
    if (content_hash(g) != j.at("hash").get<std::string>()) throw PreconditionError("graph hash mismatch");
    return g;
}

inline json one_based(std::span<const int> xs) {
    json a = json::array();
    for (int x : xs) a.push_back(x + 1);
    return a;
}

inline std::vector<int> zero_based(const json& a) {
    std::vector<int> out;
    for (const auto& x : a) out.push_back(x.get<int>() - 1);
    return out;
}

inline json flow_json(const SignedGraph& g, const FlowAssignment& f) {
    json vals = json::array();
    for (const auto& v : f.values) vals.push_back(to_string(v));
    return {{"flip", one_based(f.orientation.flip_set(g))}, {"values", vals}};
}

inline json flow_json(const SignedGraph& g, const IntegerFlow& f) { return flow_json(g, to_rational_flow(f)); }

inline FlowAssignment flow_from_json(const SignedGraph& g, const json& j) {
    auto flips = zero_based(j.at("flip"));
    for (int e : flips)
        if (e < 0 || e >= g.num_edges()) throw PreconditionError("flip edge out of range");
    FlowAssignment f{Orientation::from_flip_set(g, flips), {}};
    for (const auto& v : j.at("values")) f.values.push_back(parse_rational(v.get<std::string>()));
    if (f.values.size() != static_cast<std::size_t>(g.num_edges())) throw PreconditionError("value count does not match edges");
    return f;
}

inline IntegerFlow integer_flow_from_json(const SignedGraph& g, const json& j) {
    auto f = to_integer_flow(flow_from_json(g, j));
    if (!f) throw PreconditionError("flow values are not integers");
    return *f;
}

inline json query_json(const FlowKind& k) {
    switch (k.type) {
    case FlowKind::Type::integer: return {{"type", "integer"}, {"k", k.k}};
    case FlowKind::Type::modulo: return {{"type", "modulo"}, {"k", k.k}};
    case FlowKind::Type::circular: return {{"type", "circular"}, {"r", to_string(k.r)}};
    }
    return {};
}

inline FlowKind query_from_json(const json& j) {
    auto t = j.at("type").get<std::string>();
    if (t == "integer") return FlowKind::integer(j.at("k").get<long long>());
    if (t == "modulo") return FlowKind::modulo(j.at("k").get<long long>());
    if (t == "circular") return FlowKind::circular(parse_rational(j.at("r").get<std::string>()));
    throw PreconditionError("unknown query type " + t);
}

// ---------------------------------------------------------------------------
// Certificates

struct CertificateCheck {
    bool ok = true;
    std::string reason;
    explicit operator bool() const { return ok; }
};

inline json certificate_base(const SignedGraph& g, const std::string& claim) {
    return {{"schema_version", certificate_schema_version}, {"graph", graph_json(g)}, {"claim", claim}};
}

namespace detail {

inline json verdict_json(bool ok, const std::string& detail) { return {{"verified", ok}, {"detail", detail}}; }

inline json journal_json(const std::vector<JournalEntry>& journal) {
    json a = json::array();
    for (const auto& j : journal)
        a.push_back({{"op", j.op == JournalEntry::Op::minus ? "minus" : "switch"}, {"items", one_based(j.items)}});
    return a;
}

inline std::vector<JournalEntry> journal_from_json(const json& a) {
    std::vector<JournalEntry> out;
    for (const auto& j : a) {
        auto op = j.at("op").get<std::string>();
        if (op != "minus" && op != "switch") throw PreconditionError("unknown journal op " + op);
        out.push_back({op == "minus" ? JournalEntry::Op::minus : JournalEntry::Op::switch_vertices, zero_based(j.at("items"))});
    }
    return out;
}

inline json circuit_witness_json(const SignedCircuitWitness& w) {
    json cs = json::array();
    for (const auto& c : w.circuits) cs.push_back(one_based(c));
    return {{"kind", to_string(w.kind)}, {"circuits", cs}, {"path", one_based(w.path)}};
}

} // namespace detail

/// Runs a flow query and packages the answer. `nonexistence` certificates attest an exhaustive search.
inline json flow_certificate(const SignedGraph& g, const FlowKind& kind) {
    if (kind.type == FlowKind::Type::circular) {
        auto c = circular_flow_number(g);
        json cert = certificate_base(g, "circular-flow-number");
        cert["query"] = {{"type", "circular"}};
        cert["phi_c"] = to_string(c.phi_c);
        cert["witness"] = flow_json(g, c.witness);
        cert["attestation"] = {{"method", "orientation-enumeration-exact-lp"}, {"orientations", c.orientations}};
        cert["resources"] = {{"lp_solves", c.lp_solves}};
        auto v = check_flow(g, c.witness, FlowKind::circular(c.phi_c));
        cert["verdict"] = detail::verdict_json(v.ok, v.violation);
        return cert;
    }
    auto r = kind.type == FlowKind::Type::integer ? find_nz_k_flow(g, kind.k) : find_nz_zk_flow(g, kind.k);
    if (r.capped()) throw ResourceCapError("flow search exceeded its cap after " + std::to_string(r.nodes) + " nodes");
    json cert = certificate_base(g, r.found() ? "existence" : "nonexistence");
    cert["query"] = query_json(kind);
    if (r.found()) {
        cert["witness"] = flow_json(g, *r.value);
        auto v = check_flow(g, *r.value, kind);
        cert["verdict"] = detail::verdict_json(v.ok, v.violation);
    } else {
        cert["witness"] = nullptr;
        cert["verdict"] = detail::verdict_json(true, "");
    }
    cert["attestation"] = {{"method", "exhaustive-backtracking"}, {"status", to_string(r.status)}, {"nodes", r.nodes}};
    cert["resources"] = {{"search_nodes", r.nodes}};
    return cert;
}

inline json conversion_certificate(const SignedGraph& g, const IntegerFlow& fa, long long k, const ConversionResult& r) {
    json cert = certificate_base(g, "conversion");
    cert["k"] = k;
    cert["input"] = flow_json(g, fa);
    cert["witness"] = flow_json(g, r.flow);
    cert["journal"] = detail::journal_json(r.final_state.journal);
    cert["stats"] = {{"eta0", r.stats.eta0},
                     {"iterations", r.stats.iterations},
                     {"sink_switches", r.stats.sink_switches},
                     {"ditrail_minus", r.stats.ditrail_minus},
                     {"tadpole_minus", r.stats.tadpole_minus},
                     {"source_splits", r.stats.source_splits},
                     {"relocations", r.stats.relocations}};
    cert["verdict"] = detail::verdict_json(true, "");
    return cert;
}

inline json decomposition_certificate(const SignedGraph& g, const IntegerFlow& fa, long long k,
                                      const std::vector<IntegerFlow>& parts) {
    json cert = certificate_base(g, "two-flow-decomposition");
    cert["k"] = k;
    cert["input"] = flow_json(g, fa);
    json ps = json::array();
    for (const auto& p : parts) ps.push_back(flow_json(g, p));
    cert["witness"] = ps;
    cert["verdict"] = detail::verdict_json(true, "");
    return cert;
}

inline json eulerian_certificate(const SignedGraph& g, const EulerianDecomposition& d) {
    json cert = certificate_base(g, "eulerian-decomposition");
    json ms = json::array();
    for (const auto& m : d.members) ms.push_back({{"kind", to_string(m.kind)}, {"edges", one_based(m.edges)}});
    cert["witness"] = ms;
    cert["verdict"] = detail::verdict_json(d.verify(g), "");
    return cert;
}

inline json normalization_certificate(const SignedGraph& g, const FlowAssignment& fa, const NormalizationState& s) {
    json cert = certificate_base(g, "normalization");
    cert["p"] = s.p;
    cert["q"] = s.q;
    cert["input"] = flow_json(g, fa);
    cert["witness"] = flow_json(g, s.values);
    cert["off_grid"] = one_based(s.off_grid);
    cert["pushes"] = s.pushes;
    cert["verdict"] = detail::verdict_json(terminal_structure_ok(g, s), "");
    return cert;
}

/// Structural report: balance, admissibility, bridges, long barbell, star-cut, eulerian flag, negative parity.
inline json analysis_report(const SignedGraph& g) {
    json cert = certificate_base(g, "analysis");
    auto bal = is_balanced(g);
    cert["balanced"] = bal.balanced();
    cert["unbalanced_circuit"] = bal.balanced() ? json(nullptr) : one_based(bal.unbalanced_circuit);
    auto adm = is_flow_admissible(g);
    cert["admissible"] = adm.admissible;
    json comps = json::array();
    for (const auto& c : adm.components) {
        json jc = {{"component", c.component + 1}, {"reason", to_string(c.reason)}};
        if (c.reason == ComponentAdmissibility::Reason::one_negative_edge) {
            jc["switching_set"] = one_based(c.switching_set);
            jc["edge"] = c.edge + 1;
        } else if (c.reason == ComponentAdmissibility::Reason::bad_cut_edge) {
            jc["edge"] = c.edge + 1;
            jc["balanced_side"] = one_based(c.balanced_side);
        }
        comps.push_back(jc);
    }
    cert["components"] = comps;
    cert["bridges"] = one_based(find_bridges(g));
    auto lb = find_long_barbell(g);
    cert["long_barbell"] = lb.capped() ? json("cap-exceeded") : lb.found() ? detail::circuit_witness_json(*lb.value) : json(nullptr);
    auto star = has_star_cut(g);
    cert["star_cut"] = star ? json{{"center", star->center + 1}, {"leaves", one_based(star->leaves)}, {"edges", one_based(star->edges)}}
                            : json(nullptr);
    cert["eulerian"] = is_eulerian(g);
    cert["negative_edges"] = g.num_negative();
    cert["negative_parity"] = g.num_negative() % 2 == 0 ? "even" : "odd";
    cert["verdict"] = detail::verdict_json(adm.verify(g), "");
    return cert;
}

/// Recomputes a certificate's verdict from its graph and witness alone.
inline CertificateCheck verify_certificate(const json& cert) {
    auto fail = [](std::string why) { return CertificateCheck{false, std::move(why)}; };
    try {
        if (cert.at("schema_version").get<int>() != certificate_schema_version) return fail("unsupported schema version");
        SignedGraph g = graph_from_json(cert.at("graph"));
        const auto claim = cert.at("claim").get<std::string>();
        if (!cert.at("verdict").at("verified").get<bool>()) return fail("certificate records a failed verdict");
        if (claim == "existence") {
            auto kind = query_from_json(cert.at("query"));
            auto v = check_flow(g, flow_from_json(g, cert.at("witness")), kind);
            return v ? CertificateCheck{} : fail(v.violation);
        }
        if (claim == "nonexistence") {
            auto kind = query_from_json(cert.at("query"));
            if (!cert.at("witness").is_null()) return fail("nonexistence certificate carries a witness");
            auto r = kind.type == FlowKind::Type::integer ? find_nz_k_flow(g, kind.k) : find_nz_zk_flow(g, kind.k);
            if (!r.none()) return fail(std::string("re-run search reports ") + to_string(r.status));
            if (cert.at("attestation").at("nodes").get<std::uint64_t>() != r.nodes) return fail("node count differs on re-run");
            return {};
        }
        if (claim == "circular-flow-number") {
            Rational phi = parse_rational(cert.at("phi_c").get<std::string>());
            auto v = check_flow(g, flow_from_json(g, cert.at("witness")), FlowKind::circular(phi));
            if (!v) return fail(v.violation);
            auto c = circular_flow_number(g);
            if (c.phi_c != phi) return fail("recomputed circular flow number is " + to_string(c.phi_c));
            return {};
        }
        if (claim == "conversion") {
            long long k = cert.at("k").get<long long>();
            auto in = integer_flow_from_json(g, cert.at("input"));
            auto out = integer_flow_from_json(g, cert.at("witness"));
            if (!check_flow(g, in, FlowKind::modulo(k))) return fail("input is not a Z_k-flow");
            if (auto v = check_flow(g, out, FlowKind::integer(k)); !v) return fail(v.violation);
            auto rin = reorient(g, in, out.orientation);
            for (int e = 0; e < g.num_edges(); ++e)
                if ((out[e] - rin[e]) % k != 0) return fail("edge " + std::to_string(e + 1) + " not congruent mod k");
            auto s = replay_conversion(g, in, k, detail::journal_from_json(cert.at("journal")));
            for (long long b : s.boundary())
                if (b != 0) return fail("journal replay does not end in a flow");
            if (s.unwind(g, in.orientation) != reorient(g, out, in.orientation)) return fail("journal replay differs from witness");
            return {};
        }
        if (claim == "two-flow-decomposition") {
            long long k = cert.at("k").get<long long>();
            auto in = integer_flow_from_json(g, cert.at("input"));
            const auto& ps = cert.at("witness");
            if (static_cast<long long>(ps.size()) != k - 1) return fail("expected k-1 parts");
            std::vector<long long> sum(static_cast<std::size_t>(g.num_edges()), 0);
            for (const auto& pj : ps) {
                auto p = reorient(g, integer_flow_from_json(g, pj), in.orientation);
                for (long long b : boundary(g, p))
                    if (b != 0) return fail("a part is not a flow");
                for (int e = 0; e < g.num_edges(); ++e) {
                    if (p[e] != 0 && p[e] != 1) return fail("a part has a value outside {0, 1}");
                    sum[static_cast<std::size_t>(e)] += p[e];
                }
            }
            if (sum != in.values) return fail("parts do not sum to the input");
            return {};
        }
        if (claim == "eulerian-decomposition") {
            EulerianDecomposition d;
            for (const auto& m : cert.at("witness")) {
                auto kind = m.at("kind").get<std::string>();
                EulerianMember em;
                if (kind == to_string(CircuitKind::balanced_circuit)) em.kind = CircuitKind::balanced_circuit;
                else if (kind == to_string(CircuitKind::short_barbell)) em.kind = CircuitKind::short_barbell;
                else return fail("member kind " + kind + " not allowed");
                em.edges = zero_based(m.at("edges"));
                for (int e : em.edges)
                    if (e < 0 || e >= g.num_edges()) return fail("member edge out of range");
                d.members.push_back(std::move(em));
            }
            return d.verify(g) ? CertificateCheck{} : fail("members do not partition E into balanced circuits and short barbells");
        }
        if (claim == "normalization") {
            NormalizationState s;
            s.p = cert.at("p").get<long long>();
            s.q = cert.at("q").get<long long>();
            s.values = flow_from_json(g, cert.at("witness"));
            if (auto v = check_flow(g, s.values, FlowKind::circular(Rational(s.p, s.q) + 1)); !v) return fail(v.violation);
            s.off_grid = off_grid_edges(s.values, s.q);
            if (one_based(s.off_grid) != cert.at("off_grid")) return fail("off-grid set differs");
            if (!terminal_structure_ok(g, s)) return fail("terminal off-grid structure is wrong");
            if (!check_flow(g, flow_from_json(g, cert.at("input")), FlowKind::circular(Rational(s.p, s.q) + 1)))
                return fail("input is not a circular flow");
            return {};
        }
        if (claim == "analysis") {
            json again = analysis_report(g);
            return again == cert ? CertificateCheck{} : fail("recomputed report differs");
        }
        return fail("unknown claim " + claim);
    } catch (const json::exception& e) {
        return fail(std::string("malformed certificate: ") + e.what());
    } catch (const Error& e) {
        return fail(e.what());
    }
}

} // namespace sgflow
