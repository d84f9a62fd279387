#pragma once

#include "stability.hpp"

#include <string>
#include <vector>

namespace twofold {

struct CatalogueEntry {
    double H = 0.0;
    bool found = false;
    std::string error;
    SymmetricCycle cycle;
    MonodromyReport report;
};

struct ScanOptions {
    double y_lo = 1e-2;
    double y_hi = 1e7;
    int bracket_points = 240;
    unsigned threads = 1;
    CycleOptions cycle{};
};

inline CatalogueEntry catalogue_entry(const SystemParams& p, const ScanOptions& o) {
    CatalogueEntry e;
    e.H = p.H();
    try {
        std::optional<SymmetricCycle> c;
        if (const auto seed = asymptotic_seed(p)) {
            try {
                c = find_cycle_newton(p, *seed, o.cycle);
            } catch (const Error&) {
            }
        }
        if (!c) {
            const auto brackets = bracket_scan(p, o.y_lo, o.y_hi, o.bracket_points, o.cycle.returns);
            if (brackets.empty()) throw NoConvergence("no sign change of the closure residual on the scan range");
            // the largest-amplitude root is the one continued from infinity
            const auto& b = brackets.back();
            c = find_cycle_bracketed(p, b.first, b.second, o.cycle);
        }
        e.cycle = *c;
        e.report = monodromy(p, e.cycle);
        if (e.report.trivial_residual > 1e-7) throw NotACycle("trivial multiplier check failed");
        e.found = true;
    } catch (const Error& ex) {
        e.found = false;
        e.error = ex.what();
    }
    return e;
}

// One entry per H value; failures are recorded in the entry and the scan goes on.
inline std::vector<CatalogueEntry> scan_cycles(const SystemParams& base, const std::vector<double>& H_grid,
                                               const ScanOptions& o = {}) {
    std::vector<CatalogueEntry> out(H_grid.size());
    parallel_for(H_grid.size(), o.threads, [&](std::size_t i) {
        try {
            out[i] = catalogue_entry(build_resonant(base.C(), H_grid[i], base.Lambda()), o);
        } catch (const Error& ex) {
            out[i].H = H_grid[i];
            out[i].error = ex.what();
        }
    });
    return out;
}

}  // namespace twofold
