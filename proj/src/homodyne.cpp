#include "ncarea/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "ncarea/errors.hpp"
#include "ncarea/io.hpp"
#include "ncarea/quadrep.hpp"
#include "ncarea/version.hpp"

namespace ncarea {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::size_t angle_index) {
    std::uint64_t state = seed;
    splitmix64(state);
    state ^= 0xA24BAED4963EE407ULL * (angle_index + 1);
    return splitmix64(state);
}

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Monotone cubic (Fritsch-Carlson) interpolant of a tabulated CDF on a
// uniform x grid, invertible segment by segment.
struct CdfTable {
    std::vector<double> x;
    std::vector<double> cdf;
    std::vector<double> slope;

    double invert(double u) const {
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t i = (it == cdf.begin()) ? 0 : (it - cdf.begin() - 1);
        if (i + 1 >= cdf.size()) i = cdf.size() - 2;
        const double h = x[i + 1] - x[i];
        const double f0 = cdf[i], f1 = cdf[i + 1];
        if (f1 <= f0) return x[i];
        const double d0 = slope[i] * h, d1 = slope[i + 1] * h;
        const auto value = [&](double t) {
            const double t2 = t * t, t3 = t2 * t;
            return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * d0 +
                   (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * d1;
        };
        const auto deriv = [&](double t) {
            const double t2 = t * t;
            return (6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * d0 +
                   (-6 * t2 + 6 * t) * f1 + (3 * t2 - 2 * t) * d1;
        };
        double lo = 0.0, hi = 1.0;
        double t = (u - f0) / (f1 - f0);
        for (int iter = 0; iter < 60; ++iter) {
            const double g = value(t) - u;
            if (g > 0.0)
                hi = t;
            else
                lo = t;
            const double dg = deriv(t);
            double next = (dg > 0.0) ? t - g / dg : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - t) < 1e-15) {
                t = next;
                break;
            }
            t = next;
        }
        return x[i] + t * h;
    }
};

CdfTable build_cdf_table(const FockExpansion& exp, double theta,
                         int table_points) {
    const std::vector<double> one_theta{theta};
    // Row-normalization tolerance is immaterial here; the CDF renormalizes.
    const TomogramGrid grid =
        tomogram_grid(exp, one_theta, auto_window(exp), table_points, 1e-2);
    const auto& density = grid.density.front();
    CdfTable table;
    table.x = grid.x_values;
    table.cdf.resize(table.x.size());
    table.cdf[0] = 0.0;
    for (std::size_t i = 1; i < table.x.size(); ++i)
        table.cdf[i] = table.cdf[i - 1] + 0.5 * (density[i - 1] + density[i]) *
                                              (table.x[i] - table.x[i - 1]);
    const double total = table.cdf.back();
    if (total <= 0.0)
        fail(ErrorCode::window_too_small, "tomogram mass vanished in sampling table");
    for (auto& v : table.cdf) v /= total;

    // Fritsch-Carlson slopes; secants are >= 0, so monotonicity holds.
    const std::size_t n = table.x.size();
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        secant[i] = (table.cdf[i + 1] - table.cdf[i]) / (table.x[i + 1] - table.x[i]);
    table.slope.assign(n, 0.0);
    table.slope[0] = secant[0];
    table.slope[n - 1] = secant[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (secant[i - 1] <= 0.0 || secant[i] <= 0.0)
            table.slope[i] = 0.0;
        else
            table.slope[i] =
                2.0 * secant[i - 1] * secant[i] / (secant[i - 1] + secant[i]);
    }
    return table;
}

}  // namespace

std::vector<double> uniform_angles(int count) {
    if (count < 2) fail(ErrorCode::invalid_parameter, "need at least 2 angles");
    std::vector<double> angles(count);
    const double h = std::numbers::pi / count;
    for (int k = 0; k < count; ++k) angles[k] = k * h;
    return angles;
}

HomodyneDataset sample_dataset(const FockExpansion& exp,
                               const std::vector<double>& angles,
                               std::int64_t samples_per_angle, std::uint64_t seed,
                               const std::string& spec_label,
                               const SampleOptions& options) {
    if (angles.size() < 2) fail(ErrorCode::invalid_parameter, "need at least 2 angles");
    if (samples_per_angle < 2)
        fail(ErrorCode::invalid_parameter, "need at least 2 samples per angle");
    for (double a : angles)
        if (a < 0.0 || a > 2.0 * std::numbers::pi)
            fail(ErrorCode::invalid_parameter, "angles must lie in [0, 2pi]");
    if (options.table_points < 64)
        fail(ErrorCode::invalid_parameter, "sampling table needs >= 64 points");

    HomodyneDataset ds;
    ds.spec_label = spec_label;
    ds.seed = seed;
    ds.angles = angles;
    ds.samples_per_angle = samples_per_angle;
    ds.generator = kGeneratorName;
    ds.records.reserve(angles.size() * static_cast<std::size_t>(samples_per_angle));

    for (std::size_t a = 0; a < angles.size(); ++a) {
        const CdfTable table = build_cdf_table(exp, angles[a], options.table_points);
        std::mt19937_64 eng(substream_seed(seed, a));
        for (std::int64_t k = 0; k < samples_per_angle; ++k)
            ds.records.push_back({angles[a], table.invert(uniform01(eng))});
    }
    return ds;
}

namespace {

struct AngleStats {
    double theta = 0.0;
    std::int64_t count = 0;
    double std = 0.0;
    double stderr_of_std = 0.0;
};

std::vector<AngleStats> per_angle_stats(const HomodyneDataset& data) {
    // Welford accumulators keyed by the angle's exact bit pattern.
    struct Acc {
        std::int64_t n = 0;
        double mean = 0.0;
        double m2 = 0.0;
    };
    std::map<double, Acc> acc;
    for (const auto& rec : data.records) {
        Acc& a = acc[rec.theta];
        a.n += 1;
        const double d = rec.x - a.mean;
        a.mean += d / a.n;
        a.m2 += d * (rec.x - a.mean);
    }
    std::vector<AngleStats> stats;
    stats.reserve(acc.size());
    for (const auto& [theta, a] : acc) {
        AngleStats s;
        s.theta = theta;
        s.count = a.n;
        if (a.n >= 2) {
            s.std = std::sqrt(a.m2 / (a.n - 1));
            s.stderr_of_std = s.std / std::sqrt(2.0 * (a.n - 1));
        }
        stats.push_back(s);
    }
    return stats;
}

bool is_uniform_spacing(const std::vector<AngleStats>& stats, double spacing) {
    for (std::size_t k = 0; k < stats.size(); ++k) {
        const double expected = stats.front().theta + k * spacing;
        if (std::abs(stats[k].theta - expected) > 1e-9) return false;
    }
    return true;
}

}  // namespace

AreaResult estimate_area(const HomodyneDataset& data) {
    const std::vector<AngleStats> stats = per_angle_stats(data);
    if (stats.size() < 2)
        fail(ErrorCode::insufficient_data, "estimator needs at least 2 angles");
    for (const auto& s : stats) {
        if (s.count != stats.front().count)
            fail(ErrorCode::insufficient_data,
                 "per-angle sample counts differ (angle " + format_double(s.theta) +
                     " has " + std::to_string(s.count) + ")");
        if (s.count < 30)
            fail(ErrorCode::insufficient_data,
                 "need >= 30 samples per angle for meaningful error bars");
    }

    const std::size_t n_angles = stats.size();
    const double span = stats.back().theta - stats.front().theta;
    const double pi = std::numbers::pi;

    double sigma = 0.0, sigma_coarse = 0.0, stat_var = 0.0;
    std::string note;

    const double uniform_half = pi / n_angles;
    const double uniform_full = 2.0 * pi / n_angles;
    if (span + uniform_half <= pi + 1e-9 && is_uniform_spacing(stats, uniform_half)) {
        // Uniform grid over one half period: periodic trapezoid, doubled.
        const double w = 2.0 * uniform_half;
        for (const auto& s : stats) sigma += w * s.std;
        for (const auto& s : stats) stat_var += (w * s.stderr_of_std) * (w * s.stderr_of_std);
        for (std::size_t k = 0; k < n_angles; k += 2) sigma_coarse += 2.0 * w * stats[k].std;
        if (n_angles % 2 != 0) sigma_coarse = sigma;  // no clean coarsening
        note = "periodic trapezoid on uniform [0, pi) grid, doubled";
    } else if (span + uniform_full <= 2.0 * pi + 1e-9 &&
               is_uniform_spacing(stats, uniform_full)) {
        const double w = uniform_full;
        for (const auto& s : stats) sigma += w * s.std;
        for (const auto& s : stats) stat_var += (w * s.stderr_of_std) * (w * s.stderr_of_std);
        for (std::size_t k = 0; k < n_angles; k += 2) sigma_coarse += 2.0 * w * stats[k].std;
        if (n_angles % 2 != 0) sigma_coarse = sigma;
        note = "periodic trapezoid on uniform [0, 2pi) grid";
    } else {
        // Sorted irregular grid: need endpoints pinning a half or full period.
        const bool half = std::abs(span - pi) < 1e-9 && std::abs(stats.front().theta) < 1e-9;
        const bool full =
            std::abs(span - 2.0 * pi) < 1e-9 && std::abs(stats.front().theta) < 1e-9;
        if (!half && !full)
            fail(ErrorCode::insufficient_data,
                 "angles must form a uniform grid or span [0, pi] / [0, 2pi] exactly");
        const double scale = half ? 2.0 : 1.0;
        for (std::size_t k = 0; k + 1 < n_angles; ++k) {
            const double w = stats[k + 1].theta - stats[k].theta;
            sigma += scale * 0.5 * w * (stats[k].std + stats[k + 1].std);
        }
        for (std::size_t k = 0; k < n_angles; ++k) {
            double w = 0.0;
            if (k > 0) w += 0.5 * (stats[k].theta - stats[k - 1].theta);
            if (k + 1 < n_angles) w += 0.5 * (stats[k + 1].theta - stats[k].theta);
            const double ws = scale * w * stats[k].stderr_of_std;
            stat_var += ws * ws;
        }
        for (std::size_t k = 0; k + 2 < n_angles; k += 2) {
            const double w = stats[k + 2].theta - stats[k].theta;
            sigma_coarse += scale * 0.5 * w * (stats[k].std + stats[k + 2].std);
        }
        if ((n_angles - 1) % 2 != 0) sigma_coarse = sigma;
        note = half ? "trapezoid over [0, pi], doubled" : "trapezoid over [0, 2pi]";
    }

    const double quad_err = (sigma_coarse == sigma) ? 0.0 : std::abs(sigma - sigma_coarse);
    AreaResult result;
    result.sigma = sigma;
    result.nonclassical_area = sigma - kSqrt2Pi;
    result.method = AreaMethod::sampled;
    result.error_estimate = std::sqrt(stat_var) + quad_err;
    result.notes = note + "; " + std::to_string(n_angles) + " angles x " +
                   std::to_string(stats.front().count) + " samples";
    return result;
}

void write_dataset_csv(const HomodyneDataset& data, const std::string& path) {
    std::string out = "theta,x\n";
    for (const auto& rec : data.records)
        out += format_double17(rec.theta) + "," + format_double17(rec.x) + "\n";
    write_text_file(path, out);
}

void write_dataset_manifest(const HomodyneDataset& data, const std::string& path) {
    nlohmann::json j;
    j["spec"] = data.spec_label;
    j["seed"] = data.seed;
    j["angles"] = data.angles;
    j["samples_per_angle"] = data.samples_per_angle;
    j["generator"] = data.generator;
    j["code_version"] = kVersion;
    j["created_utc"] = current_utc_timestamp();
    write_text_file(path, j.dump(2) + "\n");
}

HomodyneDataset load_dataset(const std::string& csv_path,
                             const std::string& manifest_path) {
    HomodyneDataset ds;
    const std::string text = read_text_file(csv_path);
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "theta,x")
                fail(ErrorCode::parse_error, "expected 'theta,x' header in " + csv_path);
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            fail(ErrorCode::parse_error, "malformed dataset row: " + line);
        try {
            ds.records.push_back({std::stod(line.substr(0, comma)),
                                  std::stod(line.substr(comma + 1))});
        } catch (const std::exception&) {
            fail(ErrorCode::parse_error, "malformed dataset row: " + line);
        }
    }
    if (!header_seen) fail(ErrorCode::parse_error, "empty dataset file " + csv_path);

    if (!manifest_path.empty()) {
        const auto j = nlohmann::json::parse(read_text_file(manifest_path), nullptr, false);
        if (j.is_discarded())
            fail(ErrorCode::parse_error, "malformed manifest " + manifest_path);
        ds.spec_label = j.value("spec", "");
        ds.seed = j.value("seed", std::uint64_t{0});
        ds.samples_per_angle = j.value("samples_per_angle", std::int64_t{0});
        ds.generator = j.value("generator", "");
        if (j.contains("angles")) ds.angles = j["angles"].get<std::vector<double>>();
    }
    if (ds.angles.empty()) {
        std::map<double, std::int64_t> counts;
        for (const auto& rec : ds.records) counts[rec.theta] += 1;
        for (const auto& [theta, count] : counts) ds.angles.push_back(theta);
        if (!counts.empty()) ds.samples_per_angle = counts.begin()->second;
    }
    return ds;
}

}  // namespace ncarea
