#include "prox/babynames.hpp"

#include "prox/adjacency.hpp"
#include "prox/csv.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace prox::babynames {

namespace {

constexpr std::size_t kMalformedReportCap = 20;

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<char> parse_sex(const std::string& s) {
    if (s == "F" || s == "f") return 'F';
    if (s == "M" || s == "m") return 'M';
    return std::nullopt;
}

std::optional<long> parse_positive_long(const std::string& s) {
    if (s.empty()) return std::nullopt;
    long v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        v = v * 10 + (c - '0');
        if (v > 100000000L) return std::nullopt;
    }
    if (v < 1) return std::nullopt;
    return v;
}

std::optional<int> year_from_filename(const std::string& stem) {
    for (std::size_t i = 0; i + 4 <= stem.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(stem[i])) &&
            std::isdigit(static_cast<unsigned char>(stem[i + 1])) &&
            std::isdigit(static_cast<unsigned char>(stem[i + 2])) &&
            std::isdigit(static_cast<unsigned char>(stem[i + 3]))) {
            if (i + 4 < stem.size() && std::isdigit(static_cast<unsigned char>(stem[i + 4]))) {
                // a 5+ digit run is not a year; skip past it
                while (i < stem.size() && std::isdigit(static_cast<unsigned char>(stem[i]))) ++i;
                continue;
            }
            return std::stoi(stem.substr(i, 4));
        }
    }
    return std::nullopt;
}

std::vector<fs::path> data_files(const std::string& dir) {
    if (!fs::is_directory(dir))
        throw std::runtime_error("babynames: not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = to_lower(entry.path().extension().string());
        if (ext == ".txt" || ext == ".csv")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw std::runtime_error("babynames: no .txt/.csv files in " + dir);
    return files;
}

void note_malformed(FileReport& report, std::size_t& total, const std::string& line) {
    ++total;
    if (report.malformed.size() < kMalformedReportCap)
        report.malformed.push_back(line);
}

} // namespace

ParseResult parse_national(const std::string& dir) {
    ParseResult result;
    for (const auto& path : data_files(dir)) {
        const auto year = year_from_filename(path.stem().string());
        if (!year)
            throw std::runtime_error("parse_national: no 4-digit year in filename " +
                                     path.filename().string());

        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("parse_national: cannot open " + path.string());

        FileReport report;
        report.path = path.string();
        std::set<NameKey> seen;
        std::string line;
        while (std::getline(in, line)) {
            const std::string t = csv::trim(line);
            if (t.empty()) continue;
            const auto fields = csv::split_line(t);
            if (fields.size() != 3) {
                note_malformed(report, result.malformed_total, t);
                continue;
            }
            const auto sex = parse_sex(fields[1]);
            const auto count = parse_positive_long(fields[2]);
            if (fields[0].empty() || !sex || !count) {
                note_malformed(report, result.malformed_total, t);
                continue;
            }
            NameKey key{to_lower(fields[0]), *sex};
            if (!seen.insert(key).second)
                throw std::runtime_error("parse_national: duplicate key " + key.name + "/" +
                                         key.sex + " in " + path.string());
            result.records.push_back({key.name, key.sex, kNational, *year, *count});
            ++report.parsed;
        }
        result.reports.push_back(std::move(report));
    }
    return result;
}

ParseResult parse_state(const std::string& dir) {
    ParseResult result;
    for (const auto& path : data_files(dir)) {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("parse_state: cannot open " + path.string());

        FileReport report;
        report.path = path.string();
        std::set<std::tuple<std::string, char, int, std::string>> seen;
        std::string line;
        while (std::getline(in, line)) {
            const std::string t = csv::trim(line);
            if (t.empty()) continue;
            const auto fields = csv::split_line(t);
            if (fields.size() != 5) {
                note_malformed(report, result.malformed_total, t);
                continue;
            }
            const std::string state = fields[0];
            if (!adjacency::is_state_code(state))
                throw std::runtime_error("parse_state: unknown state code '" + state +
                                         "' in " + path.string());
            const auto sex = parse_sex(fields[1]);
            const auto count = parse_positive_long(fields[4]);
            int year = 0;
            try {
                std::size_t used = 0;
                year = std::stoi(fields[2], &used);
                if (used != fields[2].size() || fields[2].size() != 4)
                    throw std::invalid_argument("year");
            } catch (const std::exception&) {
                throw std::runtime_error("parse_state: malformed year '" + fields[2] +
                                         "' in " + path.string());
            }
            if (fields[3].empty() || !sex || !count) {
                note_malformed(report, result.malformed_total, t);
                continue;
            }
            const std::string name = to_lower(fields[3]);
            if (!seen.emplace(state, *sex, year, name).second)
                throw std::runtime_error("parse_state: duplicate key " + state + "/" + *sex +
                                         "/" + fields[2] + "/" + name + " in " + path.string());
            result.records.push_back({name, *sex, state, year, *count});
            ++report.parsed;
        }
        result.reports.push_back(std::move(report));
    }
    return result;
}

NamePanel build_panel(const std::vector<NameRecord>& records, int year_lo, int year_hi) {
    if (year_lo > year_hi)
        throw std::invalid_argument("build_panel: empty year range");

    NamePanel panel;
    panel.year_lo_ = year_lo;
    panel.year_hi_ = year_hi;

    std::size_t kept = 0;
    for (const auto& rec : records) {
        if (rec.year < year_lo || rec.year > year_hi) continue;
        ++kept;
        NameKey key{rec.name, rec.sex};
        if (rec.state == kNational) {
            panel.national_records_[key][rec.year] += rec.count;
            continue;
        }
        panel.state_records_[key][rec.year][rec.state] += rec.count;
        panel.state_totals_[{rec.state, rec.year}] += rec.count;
        panel.states_with_data_[rec.year].insert(rec.state);
        auto [it, inserted] = panel.first_year_.emplace(key, rec.year);
        if (!inserted)
            it->second = std::min(it->second, rec.year);
    }
    if (kept == 0)
        throw std::runtime_error("build_panel: no records inside the year range");
    return panel;
}

long NamePanel::state_count(const NameKey& key, int year, const std::string& state) const {
    auto it = state_records_.find(key);
    if (it == state_records_.end()) return 0;
    auto yit = it->second.find(year);
    if (yit == it->second.end()) return 0;
    auto sit = yit->second.find(state);
    return sit == yit->second.end() ? 0 : sit->second;
}

long NamePanel::count_in(const NameKey& key, int year, const std::set<std::string>& states) const {
    auto it = state_records_.find(key);
    if (it == state_records_.end()) return 0;
    auto yit = it->second.find(year);
    if (yit == it->second.end()) return 0;
    long sum = 0;
    for (const auto& [state, count] : yit->second)
        if (states.count(state)) sum += count;
    return sum;
}

long NamePanel::national_count(const NameKey& key, int year) const {
    auto it = national_records_.find(key);
    if (it == national_records_.end()) return 0;
    auto yit = it->second.find(year);
    return yit == it->second.end() ? 0 : yit->second;
}

long NamePanel::state_sum(const NameKey& key, int year) const {
    auto it = state_records_.find(key);
    if (it == state_records_.end()) return 0;
    auto yit = it->second.find(year);
    if (yit == it->second.end()) return 0;
    long sum = 0;
    for (const auto& [state, count] : yit->second) sum += count;
    return sum;
}

long NamePanel::state_total(const std::string& state, int year) const {
    if (!totals_override_.empty()) {
        auto it = totals_override_.find({state, year});
        if (it != totals_override_.end()) return it->second;
    }
    auto it = state_totals_.find({state, year});
    return it == state_totals_.end() ? 0 : it->second;
}

std::optional<int> NamePanel::first_year(const NameKey& key) const {
    auto it = first_year_.find(key);
    if (it == first_year_.end()) return std::nullopt;
    return it->second;
}

std::set<std::string> NamePanel::states_before(const NameKey& key, int year) const {
    std::set<std::string> out;
    auto it = state_records_.find(key);
    if (it == state_records_.end()) return out;
    for (const auto& [y, per_state] : it->second) {
        if (y >= year) break;
        for (const auto& [state, count] : per_state)
            out.insert(state);
    }
    return out;
}

const std::set<std::string>& NamePanel::states_with_data(int year) const {
    static const std::set<std::string> empty;
    auto it = states_with_data_.find(year);
    return it == states_with_data_.end() ? empty : it->second;
}

std::vector<std::string> NamePanel::totals_anomalies() const {
    std::vector<std::string> out;
    for (const auto& [key, by_year] : state_records_) {
        for (const auto& [year, per_state] : by_year) {
            const long national = national_count(key, year);
            if (national == 0) continue; // not on the national list; nothing to compare
            long sum = 0;
            for (const auto& [state, count] : per_state) sum += count;
            if (sum > national)
                out.push_back(key.name + "," + key.sex + "," + std::to_string(year));
        }
    }
    return out;
}

void NamePanel::load_totals_override(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("totals override: cannot open " + path);

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("totals override: empty file " + path);
    // header: state,year,births
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        const std::string t = csv::trim(line);
        if (t.empty()) continue;
        const auto fields = csv::split_line(t);
        if (fields.size() != 3)
            throw std::runtime_error("totals override: bad line '" + t + "'");
        if (!adjacency::is_state_code(fields[0]))
            throw std::runtime_error("totals override: unknown state '" + fields[0] + "'");
        const auto births = parse_positive_long(fields[2]);
        if (!births)
            throw std::runtime_error("totals override: bad births in '" + t + "'");
        totals_override_[{fields[0], std::stoi(fields[1])}] = *births;
        ++rows;
    }
    if (rows == 0)
        throw std::runtime_error("totals override: zero data rows in " + path);
}

} // namespace prox::babynames
