#include "netmod/report.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace netmod {

std::string format_sig(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

void write_scan_csv(const std::vector<DeltaEntry>& entries, std::ostream& out) {
    out << "s,t,margin,destabilizing,hinf,h2_lower_bound\n";
    for (const DeltaEntry& e : entries) {
        out << e.s << ',' << e.t << ',' << format_sig(e.margin) << ','
            << (e.destabilizing ? 1 : 0) << ',' << format_sig(e.hinf) << ','
            << format_sig(e.h2_lower_bound) << '\n';
    }
}

void write_coherence_csv(const CoherenceReport& rep, std::ostream& out) {
    out << "s,t,w,coherence_delta,admissible\n";
    const int n = static_cast<int>(rep.q.rows());
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t) {
            out << s << ',' << t << ',' << format_sig(rep.w) << ','
                << format_sig(rep.q(t, s)) << ','
                << (rep.admissible(t, s) ? 1 : 0) << '\n';
        }
}

void write_grow_json(const GreedyGrowResult& res, double w, std::ostream& out) {
    nlohmann::json j;
    j["initial"] = res.trajectory.front();
    nlohmann::json steps = nlohmann::json::array();
    for (size_t i = 0; i < res.mods.size(); ++i) {
        steps.push_back({{"s", res.mods[i].s},
                         {"t", res.mods[i].t},
                         {"w", w},
                         {"coherence", res.trajectory[i + 1]}});
    }
    j["steps"] = std::move(steps);
    out << j.dump(2) << "\n";
}

}  // namespace netmod
