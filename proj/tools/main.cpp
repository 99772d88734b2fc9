#include "prox/adjacency.hpp"
#include "prox/babynames.hpp"
#include "prox/geodesy.hpp"
#include "prox/gravity.hpp"
#include "prox/pei.hpp"
#include "prox/powerlaw.hpp"
#include "prox/provenance.hpp"
#include "prox/tilemap.hpp"

#include "fetch_cmd.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

// Exit codes: 0 success, 1 usage error, 2 data error.
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct GlobalOpts {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool quiet = false;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    fs::create_directories(fs::path(path).parent_path().empty()
                               ? "."
                               : fs::path(path).parent_path().string());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string out_path(const GlobalOpts& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return (fs::path(g.out_dir) / name).string();
}

// --config JSON overlay: config entries become appended arguments, skipping
// any key the user already passed, so explicit CLI flags win.
std::vector<std::string> overlay_config_args(const std::string& config_path,
                                             const std::vector<std::string>& user_args) {
    std::ifstream in(config_path);
    if (!in)
        throw std::runtime_error("cannot open config " + config_path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_object())
        throw std::runtime_error("config must be a JSON object: " + config_path);

    std::vector<std::string> args = user_args;
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        bool given = false;
        for (const auto& a : user_args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
        if (given) continue; // CLI wins
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_string()) {
            args.push_back(flag + "=" + value.get<std::string>());
        } else {
            args.push_back(flag + "=" + value.dump());
        }
    }
    return args;
}

std::string fit_row_csv(const prox::powerlaw::PowerLawFit& f) {
    std::ostringstream row;
    row << prox::powerlaw::method_name(f.method) << "," << fmt(f.exponent) << ","
        << fmt(f.std_error) << ","
        << (std::isnan(f.correlation) ? "" : fmt(f.correlation)) << "," << fmt(f.r_min) << ","
        << fmt(f.r_max) << "," << f.n_used << "," << f.zeros_excluded;
    if (f.method == prox::powerlaw::Method::rank)
        row << ",A=" << fmt(f.rank_a) << ";B=" << fmt(f.rank_b)
            << (f.rank_b_degenerate ? ";degenerate" : "");
    else
        row << ",";
    return row.str();
}

std::string fit_table(const std::vector<prox::powerlaw::PowerLawFit>& fits) {
    std::ostringstream out;
    out << "method,exponent,std_error,correlation,r_min,r_max,n_used,zeros_excluded,extra\n";
    for (const auto& f : fits)
        out << fit_row_csv(f) << "\n";
    return out.str();
}

std::vector<prox::powerlaw::PowerLawFit> run_fits(const prox::powerlaw::DistanceSample& sample,
                                                  const std::vector<std::string>& methods,
                                                  int bins, double mle_rmin, double mle_rmax) {
    using namespace prox::powerlaw;
    auto wants = [&](const std::string& m) {
        for (const auto& w : methods)
            if (w == m || w == "all") return true;
        return false;
    };

    std::vector<PowerLawFit> fits;
    if (wants("density")) fits.push_back(fit_density(sample, LogBinSpec{bins}));
    if (wants("cumulative")) fits.push_back(fit_cumulative(sample));
    if (wants("rank")) fits.push_back(fit_rank(sample));
    if (wants("mle")) {
        if (mle_rmin > 0.0)
            fits.push_back(fit_mle(sample, mle_rmin, mle_rmax));
        else
            fits.push_back(fit_mle(sample));
    }
    return fits;
}

// ---------------------------------------------------------------- commands

int cmd_fit_distances(const GlobalOpts& g, const std::string& input,
                      const std::string& synthetic, std::size_t n, double rmin, double rmax,
                      const std::vector<std::string>& methods, int bins, double mle_rmin,
                      double mle_rmax, const std::string& effective_config) {
    prox::provenance::Block prov;
    prov.tool = "fit-distances";
    prov.config_text = effective_config;

    prox::powerlaw::DistanceSample sample;
    if (!input.empty()) {
        sample = prox::powerlaw::read_sample(input);
        prov.add_input(input);
    } else if (synthetic == "zipf") {
        sample = prox::powerlaw::sample_truncated_zipf(n, rmin, rmax, g.seed);
        prov.seed = g.seed;
        prov.has_seed = true;
        prov.note("synthetic: zipf n=" + std::to_string(n) + " rmin=" + fmt(rmin) +
                  " rmax=" + fmt(rmax));
    } else {
        std::cerr << "fit-distances: provide --input or --synthetic zipf\n";
        return kExitUsage;
    }

    const auto fits = run_fits(sample, methods, bins, mle_rmin, mle_rmax);
    const std::string table = fit_table(fits);
    const std::string header = prov.render();

    write_file(out_path(g, "fit_report.txt"), header + table);
    write_file(out_path(g, "fit_methods.csv"), header + table);
    if (!g.quiet)
        std::cout << table;
    return 0;
}

int cmd_simulate_gravity(const GlobalOpts& g, const std::string& config_path,
                         const std::vector<std::string>& methods, int bins,
                         const std::string& effective_config) {
    auto config = prox::gravity::config_from_json_file(config_path);
    if (g.seed_given) config.seed = g.seed;

    prox::provenance::Block prov;
    prov.tool = "simulate-gravity";
    prov.config_text = effective_config + prox::gravity::config_to_json(config);
    prov.add_input(config_path);
    prov.seed = config.seed;
    prov.has_seed = true;

    const auto links = prox::gravity::simulate(config);
    if (links.links.empty()) {
        std::cerr << "simulate-gravity: 0 links realized (is G too small or zero?)\n";
        return kExitData;
    }
    prov.note("links: " + std::to_string(links.links.size()) + " of " +
              std::to_string(links.pairs_evaluated) + " pairs (" +
              std::to_string(links.pairs_below_floor) + " below r_floor)");

    const auto sample = links.distances();
    prox::powerlaw::write_sample(out_path(g, "gravity_distances.txt"), sample);

    // Default MLE window excludes the clamped short range and torus corners.
    double mle_rmin = std::max(config.r_floor_km, std::sqrt(config.g_constant));
    double mle_rmax = config.region == prox::gravity::RegionKind::torus
                          ? config.extent_km / 4.0
                          : config.extent_km / 2.0;
    const auto fits = run_fits(sample, methods, bins, mle_rmin, mle_rmax);
    const std::string table = fit_table(fits);
    const std::string header = prov.render();

    write_file(out_path(g, "gravity_fit_report.txt"), header + table);
    if (!g.quiet) {
        std::cout << "links: " << links.links.size() << "\n";
        std::cout << table;
    }
    return 0;
}

prox::pei::CohortRule parse_cohort(const std::string& name) {
    if (name == "first-inside-window") return prox::pei::CohortRule::first_inside_window;
    if (name == "nonempty-group-a") return prox::pei::CohortRule::nonempty_group_a;
    if (name == "first-after-year") return prox::pei::CohortRule::first_after_year;
    throw CLI::ValidationError("--cohort", "unknown cohort rule '" + name + "'");
}

int cmd_compute_pei(const GlobalOpts& g, const std::string& state_dir,
                    const std::string& national_dir, const std::string& totals_csv,
                    int window_lo, int window_hi, int breakpoint_year,
                    const std::string& cohort, int after_year, bool corner_pairs,
                    const std::string& adjacency_file, bool pool_points,
                    const std::string& effective_config) {
    prox::provenance::Block prov;
    prov.tool = "compute-pei";
    prov.config_text = effective_config;
    prov.note("window: " + std::to_string(window_lo) + "-" + std::to_string(window_hi));
    prov.note("breakpoint: " + std::to_string(breakpoint_year));
    prov.note("cohort-rule: " + cohort +
              (cohort == "first-after-year" ? " " + std::to_string(after_year) : ""));
    prov.note("t-test-unit: " + std::string(pool_points ? "pooled-points" : "yearly-medians"));

    const auto rule = parse_cohort(cohort);

    auto state = prox::babynames::parse_state(state_dir);
    std::vector<prox::babynames::NameRecord> records = std::move(state.records);
    if (!national_dir.empty()) {
        auto national = prox::babynames::parse_national(national_dir);
        records.insert(records.end(), national.records.begin(), national.records.end());
    }
    auto panel = prox::babynames::build_panel(records, window_lo, window_hi);

    if (!totals_csv.empty()) {
        panel.load_totals_override(totals_csv);
        prov.add_input(totals_csv);
        prov.note("totals-policy: external births table");
    } else {
        // Fidelity gap: true birth totals are not recoverable from top-100
        // files, so totals default to the sum of listed counts.
        prov.note("totals-policy: top-100-proxy (sum of listed state top-100 counts; "
                  "NOT full birth totals)");
    }

    const auto graph = adjacency_file.empty()
                           ? prox::adjacency::load_builtin(corner_pairs)
                           : prox::adjacency::load_from_file(adjacency_file, corner_pairs);
    prov.note(std::string("corner-pairs: ") + (corner_pairs ? "included" : "excluded"));

    const auto series =
        prox::pei::compute_series(panel, graph, window_lo, window_hi, rule, after_year);
    const std::string header = prov.render();

    std::ostringstream points_csv;
    points_csv << header << "name,sex,year,pei,n_i_a,n_i_b,tot_a,tot_b,group_a_size\n";
    for (const auto& p : series.points)
        points_csv << p.name << "," << p.sex << "," << p.year << "," << fmt(p.pei) << ","
                   << p.n_i_a << "," << p.n_i_b << "," << p.tot_a << "," << p.tot_b << ","
                   << p.group_a_size << "\n";
    write_file(out_path(g, "pei_points.csv"), points_csv.str());

    std::ostringstream yearly_csv;
    yearly_csv << header << "year,median,p25,p75,count\n";
    for (const auto& row : series.aggregates)
        yearly_csv << row.year << "," << fmt(row.median) << "," << fmt(row.percentiles.at(25.0))
                   << "," << fmt(row.percentiles.at(75.0)) << "," << row.count << "\n";
    write_file(out_path(g, "pei_yearly.csv"), yearly_csv.str());

    std::ostringstream report;
    report << header;
    try {
        const auto bp = prox::pei::breakpoint_test(series, breakpoint_year, pool_points);
        report << "pre-mean: " << fmt(bp.mean_pre) << " (n=" << bp.n_pre << ")\n"
               << "post-mean: " << fmt(bp.mean_post) << " (n=" << bp.n_post << ")\n"
               << "welch-t: " << fmt(bp.t) << "\n"
               << "welch-dof: " << fmt(bp.dof) << "\n"
               << "p-two-sided: " << fmt(bp.p_two_sided) << "\n";
    } catch (const std::exception& e) {
        report << "breakpoint-test: unavailable (" << e.what() << ")\n";
    }
    write_file(out_path(g, "breakpoint_report.txt"), report.str());

    if (!g.quiet) {
        std::cout << "pei points: " << series.points.size() << ", years: "
                  << series.aggregates.size() << "\n";
        std::cout << report.str();
    }
    return 0;
}

int cmd_export_map(const GlobalOpts& g, const std::string& state_dir, const std::string& name,
                   const std::string& sex, int year, const std::string& effective_config) {
    prox::provenance::Block prov;
    prov.tool = "export-map";
    prov.config_text = effective_config;
    prov.note("name: " + name + " sex: " + sex + " year: " + std::to_string(year));

    auto parsed = prox::babynames::parse_state(state_dir);
    const auto panel = prox::babynames::build_panel(parsed.records, year - 200, year + 200);

    std::string lower = name;
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const prox::babynames::NameKey key{lower, sex == "M" ? 'M' : 'F'};
    const auto shares = prox::pei::name_share_by_state(key, year, panel);

    bool any_nonzero = false;
    for (const auto& [state, share] : shares)
        if (share > 0.0) any_nonzero = true;

    const std::string header = prov.render();
    std::ostringstream csv;
    csv << header << "state,share\n";
    for (const auto& [state, share] : shares)
        csv << state << "," << fmt(share) << "\n";

    const std::string base = "map_" + lower + "_" + (key.sex == 'M' ? "M" : "F") + "_" +
                             std::to_string(year);
    write_file(out_path(g, base + ".csv"), csv.str());

    prox::tilemap::RenderOptions opts;
    opts.title = name + " (" + key.sex + ") " + std::to_string(year) + " share of state births";
    opts.header_comment = header;
    opts.warning_empty = !any_nonzero;
    write_file(out_path(g, base + ".svg"), prox::tilemap::render_svg(shares, opts));

    if (!g.quiet) {
        if (!any_nonzero)
            std::cout << "warning: " << lower << "/" << key.sex << " absent everywhere in "
                      << year << "; emitted an all-zero map\n";
        std::cout << "wrote " << out_path(g, base + ".svg") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial proximity toolkit: power-law distance fits, gravity-model "
                 "simulation, and the baby-name Proximity-Effect Index"};
    app.require_subcommand(1);

    GlobalOpts g;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config overlaid under CLI flags")
        ->expected(1);
    app.add_option("--out-dir", g.out_dir, "Output directory")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", g.seed, "Random seed");
    app.add_flag("--quiet", g.quiet, "Suppress stdout reporting");

    // fit-distances
    std::string fd_input;
    std::string fd_synthetic;
    std::size_t fd_n = 1000;
    double fd_rmin = 1.0;
    double fd_rmax = 5000.0;
    std::vector<std::string> fd_methods = {"all"};
    int fd_bins = 20;
    double fd_mle_rmin = 0.0;
    double fd_mle_rmax = std::numeric_limits<double>::infinity();
    auto* fit_cmd = app.add_subcommand("fit-distances", "Fit power-law models to a distance sample");
    fit_cmd->add_option("--input", fd_input, "Distance sample file (one km value per line)");
    fit_cmd->add_option("--synthetic", fd_synthetic, "Synthetic source: zipf");
    fit_cmd->add_option("--n", fd_n, "Synthetic sample size");
    fit_cmd->add_option("--rmin", fd_rmin, "Synthetic lower truncation (km)");
    fit_cmd->add_option("--rmax", fd_rmax, "Synthetic upper truncation (km)");
    fit_cmd->add_option("--method", fd_methods,
                        "Estimators: density, cumulative, rank, mle, all");
    fit_cmd->add_option("--bins", fd_bins, "Log bins for the density fit");
    fit_cmd->add_option("--mle-rmin", fd_mle_rmin, "MLE lower cutoff (km)");
    fit_cmd->add_option("--mle-rmax", fd_mle_rmax, "MLE upper cutoff (km)");

    // simulate-gravity
    std::string sg_config;
    std::vector<std::string> sg_methods = {"all"};
    int sg_bins = 20;
    auto* grav_cmd = app.add_subcommand("simulate-gravity",
                                        "Simulate gravity-model links and fit the distances");
    grav_cmd->add_option("--gravity-config", sg_config, "Gravity config JSON")->required();
    grav_cmd->add_option("--method", sg_methods, "Estimators to run on the link distances");
    grav_cmd->add_option("--bins", sg_bins, "Log bins for the density fit");

    // compute-pei
    std::string cp_state;
    std::string cp_national;
    std::string cp_totals;
    int cp_lo = 1970;
    int cp_hi = 2005;
    int cp_breakpoint = 1995;
    std::string cp_cohort = "first-inside-window";
    int cp_after = 0;
    bool cp_corners = false;
    std::string cp_adjacency;
    bool cp_pool = false;
    auto* pei_cmd = app.add_subcommand("compute-pei",
                                       "Proximity-Effect Index series and breakpoint test");
    pei_cmd->add_option("--state", cp_state, "Directory of SSA per-state files")->required();
    pei_cmd->add_option("--national", cp_national, "Directory of SSA national files (optional)");
    pei_cmd->add_option("--totals", cp_totals, "Births-by-state-year override CSV");
    pei_cmd->add_option("--window-lo", cp_lo, "First analysis year")->capture_default_str();
    pei_cmd->add_option("--window-hi", cp_hi, "Last analysis year")->capture_default_str();
    pei_cmd->add_option("--breakpoint", cp_breakpoint, "Breakpoint year")->capture_default_str();
    pei_cmd->add_option("--cohort", cp_cohort,
                        "first-inside-window | nonempty-group-a | first-after-year");
    pei_cmd->add_option("--after-year", cp_after, "Threshold for first-after-year");
    pei_cmd->add_flag("--corner-pairs", cp_corners, "Count Four Corners contacts as borders");
    pei_cmd->add_option("--adjacency", cp_adjacency, "Adjacency override file");
    pei_cmd->add_flag("--pool-points", cp_pool, "t-test on pooled points, not yearly medians");

    // export-map
    std::string em_state;
    std::string em_name;
    std::string em_sex = "F";
    int em_year = 1970;
    auto* map_cmd = app.add_subcommand("export-map", "Choropleth-style state share map (SVG + CSV)");
    map_cmd->add_option("--state", em_state, "Directory of SSA per-state files")->required();
    map_cmd->add_option("--name", em_name, "Name to map")->required();
    map_cmd->add_option("--sex", em_sex, "F or M")->check(CLI::IsMember({"F", "M"}));
    map_cmd->add_option("--year", em_year, "Year to map")->required();

    // fetch
    std::string fe_dest = "data/ssa";
    auto* fetch_cmd = app.add_subcommand("fetch", "Download the public SSA archives");
    fetch_cmd->add_option("--dest", fe_dest, "Destination directory")->capture_default_str();

    // Assemble args, applying the JSON overlay when --config is present.
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string effective_config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string value;
        if (args[i] == "--config" && i + 1 < args.size())
            value = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            value = args[i].substr(9);
        else
            continue;
        try {
            args = overlay_config_args(value, args);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        break;
    }
    for (const auto& a : args) {
        effective_config += a;
        effective_config += '\n';
    }

    try {
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }
    g.seed_given = seed_opt->count() > 0;

    try {
        if (fit_cmd->parsed())
            return cmd_fit_distances(g, fd_input, fd_synthetic, fd_n, fd_rmin, fd_rmax,
                                     fd_methods, fd_bins, fd_mle_rmin, fd_mle_rmax,
                                     effective_config);
        if (grav_cmd->parsed())
            return cmd_simulate_gravity(g, sg_config, sg_methods, sg_bins, effective_config);
        if (pei_cmd->parsed())
            return cmd_compute_pei(g, cp_state, cp_national, cp_totals, cp_lo, cp_hi,
                                   cp_breakpoint, cp_cohort, cp_after, cp_corners,
                                   cp_adjacency, cp_pool, effective_config);
        if (map_cmd->parsed())
            return cmd_export_map(g, em_state, em_name, em_sex, em_year, effective_config);
        if (fetch_cmd->parsed()) {
            fetch_ssa_archives(fe_dest, g.quiet);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
