#include "heatlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace heatlab {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

json params_json(const std::map<std::string, double>& params) {
    json j = json::object();
    for (const auto& [key, value] : params) j[key] = value;
    return j;
}

} // namespace

json to_json(const BoundReport& rep) {
    json j;
    j["check"] = rep.bound_name;
    j["params"] = params_json(rep.params);
    j["fitted_constant"] = rep.fitted_constant;
    j["max_ratio_location"] = {{"cell", rep.max_ratio_cell},
                               {"distance", rep.max_ratio_distance}};
    j["refinement_drift"] = rep.refinement_drift;
    j["wraparound_indicator"] = rep.wraparound_indicator;
    j["excluded_cells"] = rep.excluded_cells;
    j["pass"] = rep.pass;
    return j;
}

json to_json(const OndiagReport& rep) {
    json j;
    j["check"] = "ondiag";
    j["fitted_constant"] = rep.fitted_constant;
    j["selfsim_max_dev"] = rep.selfsim_max_dev;
    j["refinement_drift"] = rep.refinement_drift;
    j["fitted_chat"] = rep.fitted_chat;
    j["dts"] = rep.dts;
    j["diag_products"] = rep.diag_products;
    j["pass"] = rep.pass;
    return j;
}

json to_json(const MeyerReport& rep) {
    json j;
    j["check"] = "meyer";
    j["rhos"] = rep.rhos;
    j["c1"] = rep.c1;
    j["c2"] = rep.c2;
    j["excluded_cells"] = rep.excluded;
    j["c1_max_over_median"] = rep.c1_max_over_median;
    j["c2_max_over_median"] = rep.c2_max_over_median;
    j["c2_tau_drift"] = rep.c2_tau_drift;
    j["pass"] = rep.pass;
    return j;
}

json to_json(const HInequalityReport& rep) {
    json j;
    j["check"] = "h-inequality";
    j["params"] = {{"rho", rep.params.rho},     {"eta", rep.params.eta},
                   {"s", rep.params.s},         {"nu", rep.params.nu},
                   {"alpha", rep.params.alpha}, {"C", rep.C}};
    j["min_slack"] = rep.min_slack;
    j["scale"] = rep.scale;
    j["worst_point"] = {{"time", rep.worst_time}, {"cell", rep.worst_cell}};
    j["cases"] = {{"near", {{"cells", rep.cells_case1},
                            {"min_slack", rep.min_slack_case1},
                            {"max_gamma", rep.max_gamma_case1}}},
                  {"middle", {{"cells", rep.cells_case2},
                              {"min_slack", rep.min_slack_case2}}},
                  {"far", {{"cells", rep.cells_case3},
                           {"min_slack", rep.min_slack_case3}}}};
    j["pass"] = rep.pass;
    return j;
}

json to_json(const NuSearchResult& rep) {
    json j;
    j["check"] = "nu-search";
    j["found"] = rep.found;
    j["nu"] = rep.nu;
    j["tried"] = rep.tried;
    j["monotonicity_checked"] = rep.monotonicity_checked;
    j["monotonicity_holds"] = rep.monotonicity_holds;
    if (rep.found) j["certificate"] = to_json(rep.report);
    return j;
}

json to_json(const WeightedEstimateReport& rep) {
    json j;
    j["check"] = "weighted-estimate";
    j["params"] = {{"rho", rep.params.rho},     {"eta", rep.params.eta},
                   {"s", rep.params.s},         {"nu", rep.params.nu},
                   {"alpha", rep.params.alpha}, {"C", rep.C}};
    j["W_initial"] = rep.W_initial;
    j["W_max"] = rep.W_max;
    j["worst_time"] = rep.worst_time;
    j["h_inequality_certified"] = rep.h_inequality_certified;
    j["pass"] = rep.pass;
    return j;
}

json to_json(const DecaySweepReport& rep) {
    json j;
    j["check"] = "decay";
    json runs = json::array();
    for (const auto& r : rep.runs) {
        runs.push_back({{"sigma", r.sigma},
                        {"rho", r.rho},
                        {"nu", r.nu},
                        {"value_at_center", r.value_at_center},
                        {"rhs_without_constant", r.rhs_without_constant},
                        {"ratio", r.ratio}});
    }
    j["runs"] = runs;
    j["max_over_median"] = rep.max_over_median;
    j["pass"] = rep.pass;
    return j;
}

json to_json(const LinftyL2Report& rep) {
    json j;
    j["check"] = "linfty-l2";
    json pairs = json::array();
    for (size_t i = 0; i < rep.pairs.size(); ++i) {
        pairs.push_back({{"R", rep.pairs[i].R},
                         {"rho", rep.pairs[i].rho},
                         {"fitted_constant", rep.fitted[i]}});
    }
    j["pairs"] = pairs;
    j["max_over_median"] = rep.max_over_median;
    j["pass"] = rep.pass;
    return j;
}

json to_json(const LiYauLocalReport& rep) {
    json j;
    j["check"] = "li-yau-local";
    j["max_residual"] = rep.max_residual;
    j["fd_convergence_rate"] = rep.fd_convergence_rate;
    j["pass"] = rep.pass;
    return j;
}

json to_json(const LiYauNonlocalReport& rep) {
    json j;
    j["check"] = "li-yau-nonlocal-violation";
    j["ts"] = rep.ts;
    j["identity_residuals"] = rep.identity_residuals;
    j["carre_du_champ"] = rep.gammas;
    j["carre_du_champ_floors"] = rep.gamma_floors;
    j["radial_identity_residual"] = rep.radial_identity_residual;
    j["pass"] = rep.pass;
    return j;
}

json to_json(const MixedIntegralsReport& rep) {
    json j;
    j["check"] = "mixed-integrals";
    j["radii"] = rep.radii;
    j["second_moment"] = rep.second_moment;
    j["tail_mass"] = rep.tail_mass;
    j["c1"] = rep.c1;
    j["c2"] = rep.c2;
    j["c1_max_over_median"] = rep.c1_max_over_median;
    j["c2_max_over_median"] = rep.c2_max_over_median;
    j["pass"] = rep.pass;
    return j;
}

json to_json(const MixedBoundReport& rep) {
    json j = to_json(rep.bound);
    j["fitted_C2"] = rep.fitted_C2;
    j["pass"] = rep.pass;
    return j;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

void write_field_csv(const std::string& path, const GridField& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "cell,x0,x1,value\n";
    for (int i = 0; i < f.lattice.cell_count(); ++i) {
        const Point p = f.lattice.coord(i);
        out << i << ',' << fmt(p[0]) << ',' << fmt(p[1]) << ','
            << fmt(f.values[static_cast<size_t>(i)]) << '\n';
    }
}

void write_profile_csv(const std::string& path,
                       const std::vector<ProfilePoint>& profile) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "distance,p,reference,ratio\n";
    for (const ProfilePoint& pt : profile) {
        out << fmt(pt.distance) << ',' << fmt(pt.p) << ',' << fmt(pt.reference)
            << ',' << fmt(pt.ratio) << '\n';
    }
}

std::vector<ProfilePoint> read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "distance,p,reference,ratio") {
        throw std::runtime_error(path + ": not a profile CSV");
    }
    std::vector<ProfilePoint> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ProfilePoint pt;
        std::istringstream row(line);
        std::string field;
        double* slots[4] = {&pt.distance, &pt.p, &pt.reference, &pt.ratio};
        for (double* slot : slots) {
            if (!std::getline(row, field, ',')) {
                throw std::runtime_error(path + ": malformed row: " + line);
            }
            *slot = std::strtod(field.c_str(), nullptr);
        }
        out.push_back(pt);
    }
    return out;
}

namespace {

constexpr std::uint32_t kCacheVersion = 1;
constexpr char kCacheMagic[4] = {'H', 'L', 'C', 'F'};

template <typename T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool get(std::ifstream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return static_cast<bool>(in);
}

} // namespace

void write_cached_field(const std::string& path, const CacheKey& key,
                        const std::vector<double>& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(kCacheMagic, 4);
    put(out, kCacheVersion);
    put(out, static_cast<std::int32_t>(key.dim));
    put(out, key.h);
    put(out, key.L);
    put(out, key.eta);
    put(out, key.s);
    put(out, static_cast<std::int32_t>(key.steps));
    put(out, static_cast<std::int32_t>(key.source));
    put(out, static_cast<std::uint32_t>(key.kernel_tag.size()));
    out.write(key.kernel_tag.data(),
              static_cast<std::streamsize>(key.kernel_tag.size()));
    put(out, static_cast<std::uint64_t>(values.size()));
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
}

std::optional<std::vector<double>> read_cached_field(const std::string& path,
                                                     const CacheKey& key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kCacheMagic, 4) != 0) return std::nullopt;
    std::uint32_t version;
    std::int32_t dim, steps, source;
    double h, L, eta, s;
    std::uint32_t tag_len;
    if (!get(in, version) || version != kCacheVersion) return std::nullopt;
    if (!get(in, dim) || !get(in, h) || !get(in, L) || !get(in, eta) ||
        !get(in, s) || !get(in, steps) || !get(in, source) || !get(in, tag_len)) {
        return std::nullopt;
    }
    std::string tag(tag_len, '\0');
    in.read(tag.data(), tag_len);
    if (!in) return std::nullopt;
    if (dim != key.dim || h != key.h || L != key.L || eta != key.eta ||
        s != key.s || steps != key.steps || source != key.source ||
        tag != key.kernel_tag) {
        return std::nullopt;
    }
    std::uint64_t count;
    if (!get(in, count)) return std::nullopt;
    std::vector<double> values(count);
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) return std::nullopt;
    return values;
}

namespace {

// FNV-1a over the header fields; stable across runs and platforms.
std::uint64_t cache_name_hash(const CacheKey& key) {
    std::string blob;
    blob += std::to_string(key.dim) + '|' + fmt(key.h) + '|' + fmt(key.L) + '|';
    blob += fmt(key.eta) + '|' + fmt(key.s) + '|' + std::to_string(key.steps);
    blob += '|' + std::to_string(key.source) + '|' + key.kernel_tag;
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : blob) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

} // namespace

GridField cached_fundamental_solution(const JumpKernel& k, const Lattice& lat,
                                      const Schedule& sched, int source) {
    const char* dir = std::getenv("HEATLAB_CACHE");
    if (dir == nullptr || *dir == '\0') {
        return fundamental_solution(k, lat, sched, source);
    }
    CacheKey key{lat.dim(),     lat.spacing(), lat.period(), sched.start,
                 sched.end,     sched.steps,   k.tag,        source};
    char name[32];
    std::snprintf(name, sizeof(name), "%016llx.bin",
                  static_cast<unsigned long long>(cache_name_hash(key)));
    const std::string path = std::string(dir) + "/" + name;
    if (auto cached = read_cached_field(path, key)) {
        return GridField(lat, std::move(*cached), sched.end);
    }
    GridField p = fundamental_solution(k, lat, sched, source);
    write_cached_field(path, key, p.values);
    return p;
}

std::string render_svg_plot(const std::string& title,
                            const std::vector<PlotSeries>& series) {
    if (series.empty()) throw std::runtime_error("plot: no series given");
    for (const PlotSeries& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size()) {
            throw std::runtime_error("plot: empty or mismatched series '" +
                                     s.name + "'");
        }
    }

    constexpr double W = 640.0, H = 480.0;
    constexpr double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    double ymin_pos = xmin;
    for (const PlotSeries& s : series) {
        for (size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
            if (s.y[i] > 0.0) ymin_pos = std::min(ymin_pos, s.y[i]);
        }
    }
    const bool logy = ymin > 0.0 && ymax / ymin > 1e3;
    auto ty = [&](double y) { return logy ? std::log10(y) : y; };
    const double py_min = ty(logy ? ymin : ymin), py_max = ty(ymax);
    const double xspan = xmax > xmin ? xmax - xmin : 1.0;
    const double yspan = py_max > py_min ? py_max - py_min : 1.0;
    auto sx = [&](double x) { return ml + (x - xmin) / xspan * (W - ml - mr); };
    auto sy = [&](double y) {
        return H - mb - (ty(y) - py_min) / yspan * (H - mt - mb);
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
           "height=\"480\" viewBox=\"0 0 640 480\">\n";
    svg << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"monospace\" font-size=\"14\">"
        << title << "</text>\n";
    svg << "<line x1=\"" << fmt6(ml) << "\" y1=\"" << fmt6(H - mb) << "\" x2=\""
        << fmt6(W - mr) << "\" y2=\"" << fmt6(H - mb)
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt6(ml) << "\" y1=\"" << fmt6(mt) << "\" x2=\""
        << fmt6(ml) << "\" y2=\"" << fmt6(H - mb) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt6(ml) << "\" y=\"" << fmt6(H - mb + 20)
        << "\" font-family=\"monospace\" font-size=\"11\">" << fmt6(xmin)
        << "</text>\n";
    svg << "<text x=\"" << fmt6(W - mr) << "\" y=\"" << fmt6(H - mb + 20)
        << "\" text-anchor=\"end\" font-family=\"monospace\" "
           "font-size=\"11\">"
        << fmt6(xmax) << "</text>\n";
    svg << "<text x=\"" << fmt6(ml - 6) << "\" y=\"" << fmt6(H - mb)
        << "\" text-anchor=\"end\" font-family=\"monospace\" "
           "font-size=\"11\">"
        << fmt6(logy ? std::pow(10.0, py_min) : ymin) << "</text>\n";
    svg << "<text x=\"" << fmt6(ml - 6) << "\" y=\"" << fmt6(mt + 4)
        << "\" text-anchor=\"end\" font-family=\"monospace\" "
           "font-size=\"11\">"
        << fmt6(ymax) << (logy ? " (log)" : "") << "</text>\n";

    for (size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const char* color = palette[si % 6];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            const double y = logy ? std::max(s.y[i], ymin_pos) : s.y[i];
            svg << fmt6(sx(s.x[i])) << ',' << fmt6(sy(y));
            if (i + 1 < s.x.size()) svg << ' ';
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << fmt6(W - mr - 4) << "\" y=\""
            << fmt6(mt + 16.0 * static_cast<double>(si + 1))
            << "\" text-anchor=\"end\" font-family=\"monospace\" "
               "font-size=\"11\" fill=\""
            << color << "\">" << s.name << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace heatlab
