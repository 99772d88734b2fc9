#ifndef PROX_PEI_HPP
#define PROX_PEI_HPP

#include "prox/adjacency.hpp"
#include "prox/babynames.hpp"
#include "prox/stats.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

// Proximity-Effect Index. Group A for (name, sex) at year t: states where
// the name appeared on the state top-100 list in any year strictly before t,
// plus their immediately bordering states. PEI is the ratio of the name's
// actual Group-A count to the proximity-free expectation, minus one.

namespace prox::pei {

struct PeiPoint {
    std::string name;
    char sex;
    int year;
    double pei;
    long n_i_a;  // name count in Group A
    long n_i_b;  // name count in Group B
    long tot_a;  // total births in Group A (totals policy applies)
    long tot_b;
    std::size_t group_a_size;
};

// Cumulative seeding: states with any appearance strictly before `year`,
// expanded one hop through the border graph. Empty when the name has no
// prior appearance.
std::set<std::string> group_a_states(const babynames::NameKey& key, int year,
                                     const babynames::NamePanel& panel,
                                     const adjacency::AdjacencyGraph& graph);

// Throws when Group A is empty ("not yet seeded") or the name has zero
// count for the year. Group A covering every unit (tot_b == 0) is the
// saturation case and yields PEI == 0 exactly.
PeiPoint compute_pei(const babynames::NameKey& key, int year,
                     const babynames::NamePanel& panel,
                     const adjacency::AdjacencyGraph& graph);

struct AggregateRow {
    int year;
    double median;
    std::map<double, double> percentiles; // requested percentile -> value
    std::size_t count;                    // eligible names that year
};

AggregateRow yearly_aggregate(const std::vector<PeiPoint>& points, int year,
                              const std::vector<double>& percentiles = {25.0, 75.0});

enum class CohortRule {
    first_inside_window, // default: first_year strictly inside the window
    nonempty_group_a,    // any name with a nonempty Group A
    first_after_year,    // first_year > threshold
};

const char* cohort_rule_name(CohortRule rule);

struct EligibleName {
    babynames::NameKey key;
    int first_year;
};

std::vector<EligibleName> eligible_names(const babynames::NamePanel& panel,
                                         int window_lo, int window_hi,
                                         CohortRule rule = CohortRule::first_inside_window,
                                         int after_year = 0);

struct PeiSeries {
    std::vector<PeiPoint> points;
    std::vector<AggregateRow> aggregates; // one per year with data, ascending
};

// Full run: eligible names x years with data inside the window, skipping
// (name, year) combinations where PEI is undefined.
PeiSeries compute_series(const babynames::NamePanel& panel,
                         const adjacency::AdjacencyGraph& graph,
                         int window_lo, int window_hi,
                         CohortRule rule = CohortRule::first_inside_window,
                         int after_year = 0,
                         const std::vector<double>& percentiles = {25.0, 75.0});

struct BreakpointResult {
    int breakpoint_year;
    double mean_pre;
    double mean_post;
    double t;
    double dof;
    double p_two_sided;
    std::size_t n_pre;
    std::size_t n_post;
    bool pooled; // individual points pooled instead of yearly medians
};

// Welch two-sample t on yearly medians (default) or pooled PeiPoints;
// pre = years < breakpoint, post = years >= breakpoint.
BreakpointResult breakpoint_test(const PeiSeries& series, int breakpoint_year = 1995,
                                 bool pool_points = false);

// share = state count / state total; 0 for states without the name.
std::map<std::string, double> name_share_by_state(const babynames::NameKey& key, int year,
                                                  const babynames::NamePanel& panel);

} // namespace prox::pei

#endif
