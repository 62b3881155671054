#include "ncarea/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncarea/analysis.hpp"
#include "ncarea/area.hpp"
#include "ncarea/checks.hpp"
#include "ncarea/errors.hpp"
#include "ncarea/homodyne.hpp"
#include "ncarea/io.hpp"
#include "ncarea/quadrep.hpp"
#include "ncarea/states.hpp"
#include "ncarea/version.hpp"

namespace ncarea::cli {

namespace {

using nlohmann::json;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::parse_error:
        case ErrorCode::invalid_parameter:
            return 2;
        default:
            return 3;
    }
}

// Relative output paths land in $NCAREA_OUT_DIR when it is set.
std::string resolve_out(const std::string& out) {
    if (out.empty()) return out;
    std::filesystem::path p(out);
    if (p.is_absolute() || out.find('/') != std::string::npos) return out;
    if (const char* dir = std::getenv("NCAREA_OUT_DIR"); dir && *dir)
        return (std::filesystem::path(dir) / p).string();
    return out;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        const std::string resolved = resolve_out(out_path);
        write_text_file(resolved, content);
        std::cout << "wrote " << resolved << "\n";
    }
}

json area_result_json(const AreaResult& r) {
    return json{{"sigma", r.sigma},
                {"nonclassical_area", r.nonclassical_area},
                {"method", to_string(r.method)},
                {"error_estimate", r.error_estimate},
                {"notes", r.notes}};
}

struct AreaCmdConfig {
    std::string state;
    double tolerance = 1e-9;
    std::string route = "analytic";
    std::string format = "text";
    std::string out;
};

int run_area(const AreaCmdConfig& cfg) {
    const StateSpec spec = parse_state_spec(cfg.state);
    SigmaOptions options;
    options.tolerance = cfg.tolerance;
    options.route = (cfg.route == "tomographic") ? SigmaRoute::tomographic
                                                 : SigmaRoute::analytic_moments;
    const AreaResult numeric = sigma_numeric(spec, options);

    std::optional<AreaResult> exact;
    try {
        exact = sigma_analytic(spec);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_closed_form) throw;
    }
    std::optional<double> agreement;
    if (exact) agreement = std::abs(numeric.sigma - exact->sigma) / exact->sigma;

    std::string content;
    if (cfg.format == "json") {
        json j;
        j["state"] = to_string(spec);
        j["numeric"] = area_result_json(numeric);
        if (exact) {
            j["analytic"] = area_result_json(*exact);
            j["agreement_delta"] = *agreement;
        }
        content = j.dump(2) + "\n";
    } else if (cfg.format == "csv") {
        content = "state,method,sigma,nonclassical_area,error_estimate\n";
        content += to_string(spec) + ",numeric," + format_double17(numeric.sigma) +
                   "," + format_double17(numeric.nonclassical_area) + "," +
                   format_double17(numeric.error_estimate) + "\n";
        if (exact)
            content += to_string(spec) + ",analytic," + format_double17(exact->sigma) +
                       "," + format_double17(exact->nonclassical_area) + "," +
                       format_double17(exact->error_estimate) + "\n";
    } else {
        content = "state:             " + to_string(spec) + "\n";
        content += "sigma (numeric):   " + format_double(numeric.sigma) + "\n";
        content += "nonclassical area: " + format_double(numeric.nonclassical_area) + "\n";
        content += "error estimate:    " + format_double(numeric.error_estimate) + "\n";
        if (exact) {
            content += "sigma (analytic):  " + format_double(exact->sigma) + "\n";
            content += "agreement delta:   " + format_double(*agreement) + " (relative)\n";
        }
        content += "notes:             " + numeric.notes + "\n";
    }
    emit(content, cfg.out);

    if (agreement && *agreement > std::max(1e-6, 1000.0 * cfg.tolerance)) {
        std::cerr << "numeric and analytic sigma disagree beyond tolerance: delta="
                  << format_double(*agreement) << "\n";
        return 1;
    }
    return 0;
}

struct ProfileCmdConfig {
    std::string state;
    int theta_points = 181;
    std::string method = "analytic";
    std::string format = "csv";
    std::string out;
};

int run_profile(const ProfileCmdConfig& cfg) {
    const StateSpec spec = parse_state_spec(cfg.state);
    const FockExpansion exp = expand(spec);
    const ProfileMethod method = (cfg.method == "tomographic")
                                     ? ProfileMethod::tomographic
                                     : ProfileMethod::analytic;
    const QuadratureProfile profile =
        std_profile(exp, uniform_theta_grid(cfg.theta_points), method);
    emit(cfg.format == "json" ? profile_json(profile, to_string(spec))
                              : profile_csv(profile),
         cfg.out);
    return 0;
}

struct TomogramCmdConfig {
    std::string state;
    int theta_points = 65;
    int x_points = kDefaultXPoints;
    std::string format = "csv";
    std::string out;
};

int run_tomogram(const TomogramCmdConfig& cfg) {
    const StateSpec spec = parse_state_spec(cfg.state);
    const FockExpansion exp = expand(spec);
    const TomogramGrid grid =
        tomogram_grid(exp, uniform_theta_grid(cfg.theta_points), cfg.x_points,
                      kDefaultGridTolerance, to_string(spec));
    emit(cfg.format == "json" ? tomogram_json(grid) : tomogram_csv(grid), cfg.out);
    return 0;
}

struct SweepCmdConfig {
    std::string figure;
    std::string out_dir = ".";
    int n_max = 20;
    int r_points = 16;
    double r_max = 1.5;
    double delta = 0.0;
    std::vector<int> n_list = {0, 1, 5, 10};
    double intensity = 5.0;
    int m_max = 10;
    std::vector<int> m_list = {1, 5, 10};
    std::vector<double> intensity_list = {0.5, 1.0, 2.0, 3.0, 5.0};
    int intensity_points = 12;
    double intensity_max = 6.0;
};

int run_sweep(const SweepCmdConfig& cfg) {
    std::vector<SweepRow> rows;
    json config;
    if (cfg.figure == "fock-n") {
        rows = sweep_fock_n(0, cfg.n_max);
        config = {{"n_max", cfg.n_max}};
    } else if (cfg.figure == "squeezed-r") {
        std::vector<double> rs(cfg.r_points);
        for (int k = 0; k < cfg.r_points; ++k)
            rs[k] = cfg.r_max * k / (cfg.r_points - 1);
        rows = sweep_squeezed_r(cfg.n_list, rs, cfg.delta);
        config = {{"r_max", cfg.r_max},
                  {"r_points", cfg.r_points},
                  {"delta", cfg.delta},
                  {"n_list", cfg.n_list}};
    } else if (cfg.figure == "pacs-m") {
        rows = sweep_pacs_m(cfg.intensity, 1, cfg.m_max);
        config = {{"intensity", cfg.intensity}, {"m_max", cfg.m_max}};
    } else if (cfg.figure == "pacs-intensity") {
        rows = sweep_pacs_intensity(cfg.m_list, cfg.intensity_list);
        config = {{"m_list", cfg.m_list}, {"intensity_list", cfg.intensity_list}};
    } else if (cfg.figure == "cat-intensity") {
        std::vector<double> intensities(cfg.intensity_points);
        for (int k = 0; k < cfg.intensity_points; ++k)
            intensities[k] = cfg.intensity_max * (k + 1) / cfg.intensity_points;
        rows = sweep_cat_intensity(intensities);
        config = {{"intensity_points", cfg.intensity_points},
                  {"intensity_max", cfg.intensity_max}};
    } else {
        fail(ErrorCode::parse_error, "unknown figure '" + cfg.figure + "'");
    }

    const std::vector<CheckResult> assertions = sweep_assertions(cfg.figure, rows);

    const std::filesystem::path dir = resolve_out(cfg.out_dir).empty()
                                          ? std::filesystem::path(".")
                                          : std::filesystem::path(resolve_out(cfg.out_dir));
    std::filesystem::create_directories(dir);
    const std::string csv_path = (dir / (cfg.figure + ".csv")).string();
    write_text_file(csv_path, sweep_csv(rows));

    json manifest;
    manifest["figure"] = cfg.figure;
    manifest["config"] = config;
    manifest["code_version"] = kVersion;
    manifest["created_utc"] = current_utc_timestamp();
    manifest["rows"] = rows.size();
    json checks = json::array();
    for (const auto& a : assertions)
        checks.push_back({{"name", a.name},
                          {"pass", a.pass},
                          {"worst", a.worst},
                          {"tolerance", a.tolerance}});
    manifest["assertions"] = checks;
    const std::string manifest_path = (dir / (cfg.figure + ".manifest.json")).string();
    write_text_file(manifest_path, manifest.dump(2) + "\n");

    std::cout << "wrote " << csv_path << " (" << rows.size() << " rows)\n";
    std::cout << format_check_report(assertions);
    return all_passed(assertions) ? 0 : 1;
}

struct SampleCmdConfig {
    std::string state;
    int angles = 32;
    std::int64_t samples = 10000;
    std::uint64_t seed = 1;
    int table_points = 4001;
    std::string out;
};

int run_sample(const SampleCmdConfig& cfg) {
    const StateSpec spec = parse_state_spec(cfg.state);
    const FockExpansion exp = expand(spec);
    SampleOptions options;
    options.table_points = cfg.table_points;
    const HomodyneDataset ds = sample_dataset(exp, uniform_angles(cfg.angles),
                                              cfg.samples, cfg.seed,
                                              to_string(spec), options);
    std::string prefix = cfg.out;
    if (prefix.empty()) {
        prefix = to_string(spec);
        for (char& c : prefix)
            if (c == ':' || c == '=' || c == ',' || c == '.') c = '_';
        prefix += "_seed" + std::to_string(cfg.seed);
    }
    prefix = resolve_out(prefix);
    write_dataset_csv(ds, prefix + ".csv");
    write_dataset_manifest(ds, prefix + ".manifest.json");
    std::cout << "wrote " << prefix << ".csv (" << ds.records.size() << " rows) and "
              << prefix << ".manifest.json\n";
    return 0;
}

struct EstimateCmdConfig {
    std::string data;
    std::string manifest;
    std::string format = "text";
    std::string out;
};

int run_estimate(const EstimateCmdConfig& cfg) {
    std::string manifest = cfg.manifest;
    if (manifest.empty()) {
        std::string guess = cfg.data;
        const std::string suffix = ".csv";
        if (guess.size() > suffix.size() &&
            guess.compare(guess.size() - suffix.size(), suffix.size(), suffix) == 0)
            guess = guess.substr(0, guess.size() - suffix.size()) + ".manifest.json";
        if (std::filesystem::exists(guess)) manifest = guess;
    }
    const HomodyneDataset ds = load_dataset(cfg.data, manifest);
    const AreaResult result = estimate_area(ds);

    std::string content;
    if (cfg.format == "json") {
        json j = area_result_json(result);
        j["state"] = ds.spec_label;
        j["seed"] = ds.seed;
        j["generator"] = ds.generator;
        content = j.dump(2) + "\n";
    } else {
        content = "state:             " + ds.spec_label + "\n";
        content += "sigma (sampled):   " + format_double(result.sigma) + "\n";
        content += "nonclassical area: " + format_double(result.nonclassical_area) + "\n";
        content += "error estimate:    " + format_double(result.error_estimate) + "\n";
        content += "notes:             " + result.notes + "\n";
    }
    emit(content, cfg.out);
    return 0;
}

struct CheckCmdConfig {
    std::vector<std::string> families;
    int cases = 8;
    std::uint64_t seed = 20180709;
    int perturb_index = -1;
    double perturb_scale = 1.0;
};

int run_check(const CheckCmdConfig& cfg) {
    CheckOptions options;
    options.families = cfg.families;
    options.cases_per_family = cfg.cases;
    options.seed = cfg.seed;
    options.perturb_index = cfg.perturb_index;
    options.perturb_scale = cfg.perturb_scale;
    const std::vector<CheckResult> results = run_invariant_checks(options);
    std::cout << format_check_report(results);
    return all_passed(results) ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"nonclassical area of pure single-mode optical states", "ncarea"};
    app.require_subcommand(1);

    AreaCmdConfig area_cfg;
    auto* area_cmd = app.add_subcommand(
        "area", "sigma = integral of DeltaX_theta and the nonclassical area");
    area_cmd->add_option("--state", area_cfg.state, "state spec, e.g. fock:n=2")
        ->required();
    area_cmd->add_option("--tolerance", area_cfg.tolerance, "theta quadrature tolerance");
    area_cmd->add_option("--route", area_cfg.route, "numeric route")
        ->check(CLI::IsMember({"analytic", "tomographic"}));
    area_cmd->add_option("--format", area_cfg.format, "text|csv|json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    area_cmd->add_option("--out", area_cfg.out, "output file");

    ProfileCmdConfig profile_cfg;
    auto* profile_cmd =
        app.add_subcommand("profile", "std profile of the rotated quadrature");
    profile_cmd->add_option("--state", profile_cfg.state, "state spec")->required();
    profile_cmd->add_option("--theta-points", profile_cfg.theta_points, "grid size")
        ->check(CLI::Range(3, 100000));
    profile_cmd->add_option("--method", profile_cfg.method, "analytic|tomographic")
        ->check(CLI::IsMember({"analytic", "tomographic"}));
    profile_cmd->add_option("--format", profile_cfg.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    profile_cmd->add_option("--out", profile_cfg.out, "output file");

    TomogramCmdConfig tomogram_cfg;
    auto* tomogram_cmd = app.add_subcommand("tomogram", "omega(x, theta) grid export");
    tomogram_cmd->add_option("--state", tomogram_cfg.state, "state spec")->required();
    tomogram_cmd->add_option("--theta-points", tomogram_cfg.theta_points, "grid size")
        ->check(CLI::Range(2, 100000));
    tomogram_cmd->add_option("--x-points", tomogram_cfg.x_points, "row resolution")
        ->check(CLI::Range(9, 1000000));
    tomogram_cmd->add_option("--format", tomogram_cfg.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    tomogram_cmd->add_option("--out", tomogram_cfg.out, "output file");

    SweepCmdConfig sweep_cfg;
    auto* sweep_cmd = app.add_subcommand("sweep", "figure-reproduction sweeps");
    sweep_cmd
        ->add_option("--figure", sweep_cfg.figure,
                     "fock-n|squeezed-r|pacs-m|pacs-intensity|cat-intensity")
        ->required()
        ->check(CLI::IsMember({"fock-n", "squeezed-r", "pacs-m", "pacs-intensity",
                               "cat-intensity"}));
    sweep_cmd->add_option("--out", sweep_cfg.out_dir, "output directory");
    sweep_cmd->add_option("--n-max", sweep_cfg.n_max)->check(CLI::Range(1, 100));
    sweep_cmd->add_option("--r-points", sweep_cfg.r_points)->check(CLI::Range(2, 1000));
    sweep_cmd->add_option("--r-max", sweep_cfg.r_max);
    sweep_cmd->add_option("--delta", sweep_cfg.delta);
    sweep_cmd->add_option("--n-list", sweep_cfg.n_list)->delimiter(',');
    sweep_cmd->add_option("--intensity", sweep_cfg.intensity);
    sweep_cmd->add_option("--m-max", sweep_cfg.m_max)->check(CLI::Range(1, 100));
    sweep_cmd->add_option("--m-list", sweep_cfg.m_list)->delimiter(',');
    sweep_cmd->add_option("--intensity-list", sweep_cfg.intensity_list)->delimiter(',');
    sweep_cmd->add_option("--intensity-points", sweep_cfg.intensity_points)
        ->check(CLI::Range(2, 1000));
    sweep_cmd->add_option("--intensity-max", sweep_cfg.intensity_max);

    SampleCmdConfig sample_cfg;
    auto* sample_cmd =
        app.add_subcommand("sample", "synthetic balanced-homodyne dataset");
    sample_cmd->add_option("--state", sample_cfg.state, "state spec")->required();
    sample_cmd->add_option("--angles", sample_cfg.angles, "angle count on [0, pi)")
        ->check(CLI::Range(2, 100000));
    sample_cmd->add_option("--samples", sample_cfg.samples, "samples per angle")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000000}));
    sample_cmd->add_option("--seed", sample_cfg.seed, "RNG seed");
    sample_cmd->add_option("--table-points", sample_cfg.table_points,
                           "inverse-CDF table resolution")
        ->check(CLI::Range(64, 1000000));
    sample_cmd->add_option("--out", sample_cfg.out, "output prefix");

    EstimateCmdConfig estimate_cfg;
    auto* estimate_cmd =
        app.add_subcommand("estimate", "nonclassical area from a dataset");
    estimate_cmd->add_option("--data", estimate_cfg.data, "dataset CSV")->required();
    estimate_cmd->add_option("--manifest", estimate_cfg.manifest, "JSON sidecar");
    estimate_cmd->add_option("--format", estimate_cfg.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    estimate_cmd->add_option("--out", estimate_cfg.out, "output file");

    CheckCmdConfig check_cfg;
    auto* check_cmd = app.add_subcommand("check", "invariant suite");
    check_cmd->add_option("--families", check_cfg.families,
                          "subset of fock,coherent,sqvac,sqfock,dsqfock,pacs,cat,custom")
        ->delimiter(',');
    check_cmd->add_option("--cases", check_cfg.cases, "cases per family")
        ->check(CLI::Range(1, 1000));
    check_cmd->add_option("--seed", check_cfg.seed, "RNG seed");
    check_cmd->add_option("--perturb-index", check_cfg.perturb_index,
                          "test hook: coefficient index to scale");
    check_cmd->add_option("--perturb-scale", check_cfg.perturb_scale,
                          "test hook: scale factor");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*area_cmd) return run_area(area_cfg);
        if (*profile_cmd) return run_profile(profile_cfg);
        if (*tomogram_cmd) return run_tomogram(tomogram_cfg);
        if (*sweep_cmd) return run_sweep(sweep_cfg);
        if (*sample_cmd) return run_sample(sample_cfg);
        if (*estimate_cmd) return run_estimate(estimate_cfg);
        if (*check_cmd) return run_check(check_cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace ncarea::cli
