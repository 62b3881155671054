#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncarea/area.hpp"
#include "ncarea/states.hpp"

namespace ncarea {

/// RNG scheme identifier stored in dataset manifests. Per-angle substreams
/// are mt19937_64 engines seeded by splitmix64 over (seed, angle index);
/// uniforms come from the top 53 bits, so datasets are bit-identical across
/// platforms.
inline constexpr const char* kGeneratorName = "splitmix64-mt19937_64/v1";

struct HomodyneRecord {
    double theta;
    double x;
};

struct HomodyneDataset {
    std::vector<HomodyneRecord> records;  // grouped by angle, sample order
    std::string spec_label;
    std::uint64_t seed = 0;
    std::vector<double> angles;
    std::int64_t samples_per_angle = 0;
    std::string generator = kGeneratorName;
};

/// count angles uniform over [0, pi); the std profile is pi-periodic, so the
/// second half-turn adds no information.
std::vector<double> uniform_angles(int count);

struct SampleOptions {
    int table_points = 4001;  // inverse-CDF table resolution per angle
};

/// Draws samples_per_angle values of X_theta at each angle by inverse-CDF
/// lookup on a monotone-cubic interpolant of the tabulated tomogram CDF.
/// Deterministic in (exp, angles, samples_per_angle, seed).
HomodyneDataset sample_dataset(const FockExpansion& exp,
                               const std::vector<double>& angles,
                               std::int64_t samples_per_angle, std::uint64_t seed,
                               const std::string& spec_label = "",
                               const SampleOptions& options = {});

/// Per-angle corrected sample standard deviations integrated over theta
/// (periodic trapezoid on uniform grids, doubled when the grid spans only
/// [0, pi)). error_estimate combines the asymptotic standard error of each
/// std, s/sqrt(2(N-1)), with a quadrature coarsening bound.
AreaResult estimate_area(const HomodyneDataset& data);

void write_dataset_csv(const HomodyneDataset& data, const std::string& path);
void write_dataset_manifest(const HomodyneDataset& data, const std::string& path);

/// Reads `theta,x` CSV; the optional manifest restores metadata. Without a
/// manifest, angles are inferred from the records.
HomodyneDataset load_dataset(const std::string& csv_path,
                             const std::string& manifest_path = "");

}  // namespace ncarea
