#pragma once

#include "netmod/laplacian.hpp"
#include "netmod/stable.hpp"

#include <iosfwd>
#include <string>

namespace netmod {

// CSV with header "s,t,margin,destabilizing,hinf,h2_lower_bound";
// infinities written as the literal token "inf".
void write_scan_csv(const std::vector<DeltaEntry>& entries, std::ostream& out);

// CSV with header "s,t,w,coherence_delta,admissible".
void write_coherence_csv(const CoherenceReport& rep, std::ostream& out);

// {"initial": C, "steps": [{"s":..,"t":..,"w":..,"coherence":..}]}
void write_grow_json(const GreedyGrowResult& res, double w, std::ostream& out);

std::string format_sig(double v);  // 12 significant digits, "inf" for infinity

}  // namespace netmod
