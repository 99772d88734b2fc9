#include "prox/pei.hpp"

#include <algorithm>
#include <stdexcept>

namespace prox::pei {

std::set<std::string> group_a_states(const babynames::NameKey& key, int year,
                                     const babynames::NamePanel& panel,
                                     const adjacency::AdjacencyGraph& graph) {
    const auto seeded = panel.states_before(key, year);
    if (seeded.empty()) return {};
    return adjacency::expand(seeded, graph);
}

PeiPoint compute_pei(const babynames::NameKey& key, int year,
                     const babynames::NamePanel& panel,
                     const adjacency::AdjacencyGraph& graph) {
    const auto group_a = group_a_states(key, year, panel, graph);
    if (group_a.empty())
        throw std::runtime_error("compute_pei: name not yet seeded (" + key.name + "/" +
                                 key.sex + " at " + std::to_string(year) + ")");

    long n_i_a = 0;
    long n_i_b = 0;
    long tot_a = 0;
    long tot_b = 0;
    for (const auto& state : adjacency::state_codes()) {
        const bool in_a = group_a.count(state) > 0;
        const long name_count = panel.state_count(key, year, state);
        const long total = panel.state_total(state, year);
        (in_a ? n_i_a : n_i_b) += name_count;
        (in_a ? tot_a : tot_b) += total;
    }

    const long n_i = n_i_a + n_i_b; // N^i(t) under the state-sum policy
    if (n_i == 0)
        throw std::runtime_error("compute_pei: zero count for " + key.name + "/" + key.sex +
                                 " in " + std::to_string(year));
    if (tot_a == 0)
        throw std::runtime_error("compute_pei: zero Group-A total births in " +
                                 std::to_string(year));

    const double expected = static_cast<double>(tot_a) /
                            static_cast<double>(tot_a + tot_b) * static_cast<double>(n_i);

    PeiPoint point;
    point.name = key.name;
    point.sex = key.sex;
    point.year = year;
    point.pei = static_cast<double>(n_i_a) / expected - 1.0;
    point.n_i_a = n_i_a;
    point.n_i_b = n_i_b;
    point.tot_a = tot_a;
    point.tot_b = tot_b;
    point.group_a_size = group_a.size();
    return point;
}

AggregateRow yearly_aggregate(const std::vector<PeiPoint>& points, int year,
                              const std::vector<double>& percentiles) {
    std::vector<double> values;
    for (const auto& p : points)
        if (p.year == year) values.push_back(p.pei);
    if (values.empty())
        throw std::runtime_error("yearly_aggregate: no points for year " + std::to_string(year));

    AggregateRow row;
    row.year = year;
    row.median = stats::median(values);
    for (double p : percentiles)
        row.percentiles[p] = stats::percentile(values, p);
    row.count = values.size();
    return row;
}

const char* cohort_rule_name(CohortRule rule) {
    switch (rule) {
        case CohortRule::first_inside_window: return "first-inside-window";
        case CohortRule::nonempty_group_a: return "nonempty-group-a";
        case CohortRule::first_after_year: return "first-after-year";
    }
    return "?";
}

std::vector<EligibleName> eligible_names(const babynames::NamePanel& panel,
                                         int window_lo, int window_hi,
                                         CohortRule rule, int after_year) {
    std::vector<EligibleName> out;
    for (const auto& [key, by_year] : panel.state_records()) {
        const auto first = panel.first_year(key);
        if (!first) continue;
        bool keep = false;
        switch (rule) {
            case CohortRule::first_inside_window:
                // excludes left-censored names already present in the first year
                keep = *first > window_lo && *first <= window_hi;
                break;
            case CohortRule::nonempty_group_a:
                keep = true; // group emptiness handled per (name, year)
                break;
            case CohortRule::first_after_year:
                keep = *first > after_year;
                break;
        }
        if (keep)
            out.push_back({key, *first});
    }
    return out;
}

PeiSeries compute_series(const babynames::NamePanel& panel,
                         const adjacency::AdjacencyGraph& graph,
                         int window_lo, int window_hi,
                         CohortRule rule, int after_year,
                         const std::vector<double>& percentiles) {
    const auto names = eligible_names(panel, window_lo, window_hi, rule, after_year);
    if (names.empty())
        throw std::runtime_error(std::string("compute_series: no eligible names under rule ") +
                                 cohort_rule_name(rule));

    PeiSeries series;
    for (const auto& entry : names) {
        const auto& by_year = panel.state_records().at(entry.key);
        for (const auto& [year, per_state] : by_year) {
            if (year < window_lo || year > window_hi) continue;
            if (year <= entry.first_year) continue; // no prior appearance yet
            try {
                series.points.push_back(compute_pei(entry.key, year, panel, graph));
            } catch (const std::runtime_error&) {
                // undefined for this (name, year): skip
            }
        }
    }
    if (series.points.empty())
        throw std::runtime_error("compute_series: no PEI points computable in the window");

    std::set<int> years;
    for (const auto& p : series.points) years.insert(p.year);
    for (int year : years)
        series.aggregates.push_back(yearly_aggregate(series.points, year, percentiles));
    return series;
}

BreakpointResult breakpoint_test(const PeiSeries& series, int breakpoint_year, bool pool_points) {
    std::vector<double> pre;
    std::vector<double> post;
    if (pool_points) {
        for (const auto& p : series.points)
            (p.year < breakpoint_year ? pre : post).push_back(p.pei);
    } else {
        for (const auto& row : series.aggregates)
            (row.year < breakpoint_year ? pre : post).push_back(row.median);
    }
    if (pre.size() < 2 || post.size() < 2)
        throw std::runtime_error("breakpoint_test: need >= 2 observations on each side");

    const auto welch = stats::welch_t_test(pre, post);

    BreakpointResult r;
    r.breakpoint_year = breakpoint_year;
    r.mean_pre = welch.mean_a;
    r.mean_post = welch.mean_b;
    r.t = welch.t;
    r.dof = welch.dof;
    r.p_two_sided = welch.p_two_sided;
    r.n_pre = pre.size();
    r.n_post = post.size();
    r.pooled = pool_points;
    return r;
}

std::map<std::string, double> name_share_by_state(const babynames::NameKey& key, int year,
                                                  const babynames::NamePanel& panel) {
    std::map<std::string, double> shares;
    for (const auto& state : adjacency::state_codes()) {
        const long total = panel.state_total(state, year);
        const long count = panel.state_count(key, year, state);
        shares[state] = total > 0 ? static_cast<double>(count) / static_cast<double>(total) : 0.0;
    }
    return shares;
}

} // namespace prox::pei
