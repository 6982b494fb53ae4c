#pragma once

#include <cstdint>
#include <vector>

#include "sgflow/error.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/graph.hpp"

namespace sgflow {

/// Unpruned reference: tries every value vector under the canonical orientation and checks the boundary at the end.
/// Integer mode uses values +-1..+-(k-1); modulo mode uses residues 1..k-1. Intended for |E| <= 8.
inline bool brute_force_flow_exists(const SignedGraph& g, long long k, bool modulo) {
    if (k < 2) throw PreconditionError("k must be at least 2");
    if (g.num_edges() > 10) throw ResourceCapError("brute-force oracle limited to 10 edges");
    std::vector<long long> choices;
    for (long long v = 1; v < k; ++v) {
        choices.push_back(v);
        if (!modulo) choices.push_back(-v);
    }
    const Orientation o = Orientation::canonical(g);
    const std::size_t m = static_cast<std::size_t>(g.num_edges());
    std::vector<std::size_t> idx(m, 0);
    std::vector<long long> vals(m);
    for (;;) {
        for (std::size_t e = 0; e < m; ++e) vals[e] = choices[idx[e]];
        bool ok = true;
        for (long long b : boundary<long long>(g, o, vals))
            if (modulo ? b % k != 0 : b != 0) {
                ok = false;
                break;
            }
        if (ok) return true;
        std::size_t e = 0;
        while (e < m && ++idx[e] == choices.size()) idx[e++] = 0;
        if (e == m) return false;
    }
}

} // namespace sgflow
