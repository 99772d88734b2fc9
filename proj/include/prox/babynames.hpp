#ifndef PROX_BABYNAMES_HPP
#define PROX_BABYNAMES_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

// Ingest of the published SSA baby-name files: national per-year files
// ("Name,Sex,Count", year in the filename) and per-state files
// ("ST,Sex,Year,Name,Count"). Names are case-normalized to lower case;
// (name, sex) pairs are distinct series.

namespace prox::babynames {

inline constexpr const char* kNational = "NATIONAL";

struct NameKey {
    std::string name; // lower case
    char sex;         // 'F' or 'M'
    auto operator<=>(const NameKey&) const = default;
};

struct NameRecord {
    std::string name;
    char sex;
    std::string state; // 2-letter code or NATIONAL
    int year;
    long count; // >= 1
};

struct FileReport {
    std::string path;
    std::size_t parsed = 0;
    std::vector<std::string> malformed; // line text, capped
};

struct ParseResult {
    std::vector<NameRecord> records;
    std::vector<FileReport> reports;
    std::size_t malformed_total = 0;
};

// Directory of per-year national files (e.g. yob1992.txt). The year is the
// first 4-digit run in the filename. Duplicate (name, sex) within one file
// is an error.
ParseResult parse_national(const std::string& dir);

// Directory of per-state files (e.g. CO.TXT). Duplicate
// (state, sex, year, name) is an error; unknown state codes are rejected.
ParseResult parse_state(const std::string& dir);

class NamePanel {
public:
    // Per (name, sex): year -> state -> count. State records only.
    long state_count(const NameKey& key, int year, const std::string& state) const;

    // Sum of the name's counts in `year` over the given states.
    long count_in(const NameKey& key, int year, const std::set<std::string>& states) const;

    // National-file count for the year, 0 when unlisted.
    long national_count(const NameKey& key, int year) const;

    // Sum over state files for the year (the panel's default N^i(t)).
    long state_sum(const NameKey& key, int year) const;

    // Total births in (state, year). Default policy: sum of the listed
    // top-100 counts; an external births table overrides it when loaded.
    long state_total(const std::string& state, int year) const;

    std::optional<int> first_year(const NameKey& key) const;

    // States where the name appeared in any year strictly before `year`.
    std::set<std::string> states_before(const NameKey& key, int year) const;

    const std::set<std::string>& states_with_data(int year) const;
    const std::map<NameKey, std::map<int, std::map<std::string, long>>>& state_records() const {
        return state_records_;
    }

    int year_lo() const { return year_lo_; }
    int year_hi() const { return year_hi_; }
    bool has_totals_override() const { return !totals_override_.empty(); }

    // (name, sex, year) keys where the sum over state files exceeds the
    // national count (top-100 truncation makes the <= direction expected).
    std::vector<std::string> totals_anomalies() const;

    friend NamePanel build_panel(const std::vector<NameRecord>& records, int year_lo, int year_hi);
    void load_totals_override(const std::string& path); // CSV state,year,births with header

private:
    std::map<NameKey, std::map<int, std::map<std::string, long>>> state_records_;
    std::map<NameKey, std::map<int, long>> national_records_;
    std::map<std::pair<std::string, int>, long> state_totals_;
    std::map<std::pair<std::string, int>, long> totals_override_;
    std::map<NameKey, int> first_year_;
    std::map<int, std::set<std::string>> states_with_data_;
    int year_lo_ = 0;
    int year_hi_ = 0;
};

// Index records within [year_lo, year_hi]; throws when nothing survives the
// filter. first_year is computed over state records only.
NamePanel build_panel(const std::vector<NameRecord>& records, int year_lo, int year_hi);

} // namespace prox::babynames

#endif
