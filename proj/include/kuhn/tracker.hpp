#pragma once
// Folds per-article classifications into a field's Kuhnian-cycle history.
//
// Two readings are kept side by side: a pure per-window stage indicator,
// which may cool down as the window moves, and a machine stage that only
// ever advances along the cycle
//
//   pre-science -> normal science -> model drift -> model crisis
//       -> model revolution -> paradigm shift -> normal science
//
// so a field never regresses against the cycle's orientation.

#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kuhn/classifier.hpp"
#include "kuhn/error.hpp"
#include "kuhn/scenario.hpp"

namespace kuhn {

enum class CycleStage {
    PreScience,
    NormalScience,
    ModelDrift,
    ModelCrisis,
    ModelRevolution,
    ParadigmShift,
};

inline constexpr std::array<CycleStage, 6> kAllStages = {
    CycleStage::PreScience,      CycleStage::NormalScience,
    CycleStage::ModelDrift,      CycleStage::ModelCrisis,
    CycleStage::ModelRevolution, CycleStage::ParadigmShift,
};

inline std::string_view stage_name(CycleStage s) {
    switch (s) {
        case CycleStage::PreScience: return "pre-science";
        case CycleStage::NormalScience: return "normal-science";
        case CycleStage::ModelDrift: return "model-drift";
        case CycleStage::ModelCrisis: return "model-crisis";
        case CycleStage::ModelRevolution: return "model-revolution";
        case CycleStage::ParadigmShift: return "paradigm-shift";
    }
    return "?";
}

inline std::optional<CycleStage> parse_stage(std::string_view s) {
    for (CycleStage stage : kAllStages)
        if (stage_name(stage) == s) return stage;
    return std::nullopt;
}

// The single forward edge out of each stage. Paradigm shift routes back to
// normal science and closes the cycle; pre-science has no incoming edge.
inline CycleStage cycle_successor(CycleStage s) {
    switch (s) {
        case CycleStage::PreScience: return CycleStage::NormalScience;
        case CycleStage::NormalScience: return CycleStage::ModelDrift;
        case CycleStage::ModelDrift: return CycleStage::ModelCrisis;
        case CycleStage::ModelCrisis: return CycleStage::ModelRevolution;
        case CycleStage::ModelRevolution: return CycleStage::ParadigmShift;
        case CycleStage::ParadigmShift: return CycleStage::NormalScience;
    }
    return CycleStage::PreScience;
}

struct TrackerConfig {
    std::size_t window = 20;      // classifications per sliding window
    std::size_t min_establish = 3; // P1/P2 articles needed for normal science
    double theta_drift = 0.25;    // window fraction of P3/P4 that means drift
    double theta_crisis = 0.25;   // window fraction of P4 that means crisis
};

// Pure stage indicator over one window. `established_history` is the count
// of P1/P2 articles across the field's whole history (since the last
// paradigm-shift reset), which may exceed what the window still shows.
//
// Rules, first match wins:
//   1. paradigm shift    window holds a P5 article AND a P6 article
//   2. model revolution  drift condition AND any P5/P6 article
//   3. model crisis      frac(P4) >= theta_crisis OR frac(P3/P4) >= 2*theta_drift
//   4. model drift       frac(P3/P4) >= theta_drift
//   5. normal science    established_history >= min_establish
//   6. pre-science       otherwise
inline CycleStage stage_indicator(std::span<const Classification> recent,
                                  const TrackerConfig& config,
                                  std::size_t established_history) {
    std::size_t drifting = 0, crisis = 0, p5 = 0, p6 = 0;
    for (const Classification& c : recent) {
        if (c.scenario.p == 3 || c.scenario.p == 4) ++drifting;
        if (c.scenario.p == 4) ++crisis;
        if (c.scenario.p == 5) ++p5;
        if (c.scenario.p == 6) ++p6;
    }
    const double size = static_cast<double>(recent.size());
    const double drift_frac = recent.empty() ? 0.0 : drifting / size;
    const double crisis_frac = recent.empty() ? 0.0 : crisis / size;
    const bool drift_condition = !recent.empty() && drift_frac >= config.theta_drift;

    if (p5 > 0 && p6 > 0) return CycleStage::ParadigmShift;
    if (drift_condition && (p5 > 0 || p6 > 0)) return CycleStage::ModelRevolution;
    if (!recent.empty() && (crisis_frac >= config.theta_crisis ||
                            drift_frac >= 2.0 * config.theta_drift))
        return CycleStage::ModelCrisis;
    if (drift_condition) return CycleStage::ModelDrift;
    if (established_history >= config.min_establish)
        return CycleStage::NormalScience;
    return CycleStage::PreScience;
}

// Convenience overload: establishment counted from the window itself.
inline CycleStage stage_indicator(std::span<const Classification> recent,
                                  const TrackerConfig& config) {
    std::size_t established = 0;
    for (const Classification& c : recent)
        if (c.scenario.p <= 2) ++established;
    return stage_indicator(recent, config, established);
}

// Moves to the indicated stage iff it is reachable from the current stage
// by following 1..6 cycle edges forward; otherwise stays put. Skipping
// intermediate stages traverses several edges at once; pre-science is
// never re-entered.
inline CycleStage advance(CycleStage current, CycleStage indicator) {
    CycleStage s = current;
    for (int step = 0; step < 6; ++step) {
        s = cycle_successor(s);
        if (s == indicator) return indicator;
    }
    return current;
}

struct TimelineEntry {
    std::string article_id;
    int year = 0;
    ScenarioCode scenario;
    CycleStage indicator = CycleStage::PreScience;
    CycleStage machine = CycleStage::PreScience;
};

struct FieldTimeline {
    std::string field_id;
    std::vector<TimelineEntry> entries;

    CycleStage final_stage() const {
        return entries.empty() ? CycleStage::PreScience
                               : entries.back().machine;
    }
};

// Folds advance over per-article indicators. The stream must belong to one
// field and be ordered by (year, article id). When the machine enters
// paradigm shift, the establishment counter resets: the new paradigm has
// to earn normal science again.
inline FieldTimeline track(std::span<const Classification> stream,
                           const TrackerConfig& config) {
    FieldTimeline timeline;
    if (stream.empty()) return timeline;

    timeline.field_id = stream.front().field_id;
    for (const Classification& c : stream)
        if (c.field_id != timeline.field_id)
            throw Error(ErrorCode::MixedFields,
                        "stream mixes field '" + timeline.field_id +
                            "' with '" + c.field_id + "'");

    std::deque<Classification> window;
    std::size_t established = 0;
    CycleStage machine = CycleStage::PreScience;

    for (const Classification& c : stream) {
        window.push_back(c);
        if (window.size() > config.window) window.pop_front();
        if (c.scenario.p <= 2) ++established;

        std::vector<Classification> recent(window.begin(), window.end());
        CycleStage indicator = stage_indicator(recent, config, established);
        CycleStage previous = machine;
        machine = advance(machine, indicator);
        if (machine == CycleStage::ParadigmShift &&
            previous != CycleStage::ParadigmShift)
            established = 0;

        timeline.entries.push_back(TimelineEntry{
            c.article_id, c.year, c.scenario, indicator, machine});
    }
    return timeline;
}

// Machine-stage sequence with consecutive repeats collapsed; the shape of
// a field's journey around the cycle.
inline std::vector<CycleStage> stage_visits(const FieldTimeline& timeline) {
    std::vector<CycleStage> visits;
    for (const TimelineEntry& e : timeline.entries)
        if (visits.empty() || visits.back() != e.machine)
            visits.push_back(e.machine);
    return visits;
}

} // namespace kuhn
