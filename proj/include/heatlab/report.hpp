#ifndef HEATLAB_REPORT_HPP
#define HEATLAB_REPORT_HPP

// JSON serialization of check reports, CSV profile dumps, the binary field
// cache, and deterministic SVG line plots.

#include "heatlab/aronson.hpp"
#include "heatlab/kernels.hpp"
#include "heatlab/lattice.hpp"
#include "heatlab/mixed.hpp"
#include "heatlab/semigroup.hpp"
#include "heatlab/verify.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace heatlab {

// All reports serialize to ordered JSON so the byte layout is reproducible.
using json = nlohmann::ordered_json;

json to_json(const BoundReport& rep);
json to_json(const OndiagReport& rep);
json to_json(const MeyerReport& rep);
json to_json(const HInequalityReport& rep);
json to_json(const NuSearchResult& rep);
json to_json(const WeightedEstimateReport& rep);
json to_json(const DecaySweepReport& rep);
json to_json(const LinftyL2Report& rep);
json to_json(const LiYauLocalReport& rep);
json to_json(const LiYauNonlocalReport& rep);
json to_json(const MixedIntegralsReport& rep);
json to_json(const MixedBoundReport& rep);

// Two-space indented dump with trailing newline; shortest round-trip number
// formatting makes the output byte-stable for identical inputs.
std::string render_json(const json& j);

// CSV layout for fields: header "cell,x0,x1,value", one row per cell.
void write_field_csv(const std::string& path, const GridField& f);

// CSV layout for bound profiles: header "distance,p,reference,ratio".
void write_profile_csv(const std::string& path,
                       const std::vector<ProfilePoint>& profile);
std::vector<ProfilePoint> read_profile_csv(const std::string& path);

// Binary field cache. Files carry a header (format version, d, h, L, eta, s,
// step count, kernel tag) and are only reused when every header field matches.
struct CacheKey {
    int dim = 0;
    double h = 0.0;
    double L = 0.0;
    double eta = 0.0;
    double s = 0.0;
    int steps = 0;
    std::string kernel_tag;
    int source = 0;
};

void write_cached_field(const std::string& path, const CacheKey& key,
                        const std::vector<double>& values);
std::optional<std::vector<double>> read_cached_field(const std::string& path,
                                                     const CacheKey& key);

// Heat-kernel column with a disk cache: when the HEATLAB_CACHE environment
// variable names a directory, computed columns are stored there and reused on
// later runs with identical parameters.
GridField cached_fundamental_solution(const JumpKernel& k, const Lattice& lat,
                                      const Schedule& sched, int source);

// Deterministic SVG line plot of one or more named series over a shared
// x-axis. Axes switch to log scale when the data spans more than three
// decades. Throws std::runtime_error on empty input.
struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

std::string render_svg_plot(const std::string& title,
                            const std::vector<PlotSeries>& series);

} // namespace heatlab

#endif
