#include <doctest.h>

#include "heatlab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

using namespace heatlab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / name;
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("json rendering is deterministic and key order is preserved") {
    BoundReport rep;
    rep.bound_name = "power-bound";
    rep.params["alpha"] = 1.0;
    rep.params["h"] = 0.1;
    rep.fitted_constant = 1.25;
    rep.pass = true;
    const auto j = to_json(rep);
    CHECK(render_json(j) == render_json(to_json(rep)));
    CHECK(render_json(j).back() == '\n');
    CHECK(j["check"] == "power-bound");
    CHECK(j["pass"] == true);
}

TEST_CASE("profile CSV round trips exactly") {
    auto path = (temp_dir("heatlab-test-csv") / "profile.csv").string();
    std::vector<ProfilePoint> prof{
        {0.1, 3.0, 4.0, 0.75},
        {2.0, 0.125, 0.1, 1.25},
        {5.5, 1e-17, 2e-17, 0.5},
    };
    write_profile_csv(path, prof);
    auto back = read_profile_csv(path);
    REQUIRE(back.size() == prof.size());
    for (size_t i = 0; i < prof.size(); ++i) {
        CHECK(back[i].distance == prof[i].distance);
        CHECK(back[i].p == prof[i].p);
        CHECK(back[i].reference == prof[i].reference);
        CHECK(back[i].ratio == prof[i].ratio);
    }
    std::remove(path.c_str());
}

TEST_CASE("field CSV carries the documented header") {
    Lattice lat(1, 0.5, 2.0);
    GridField f(lat);
    f.values = {1.0, 2.0, 3.0, 4.0};
    auto path = (temp_dir("heatlab-test-csv") / "field.csv").string();
    write_field_csv(path, f);
    std::FILE* fp = std::fopen(path.c_str(), "r");
    REQUIRE(fp != nullptr);
    char line[128] = {0};
    REQUIRE(std::fgets(line, sizeof line, fp) != nullptr);
    std::fclose(fp);
    CHECK(std::string(line) == "cell,x0,x1,value\n");
    std::remove(path.c_str());
}

TEST_CASE("binary cache round trips and rejects mismatched headers") {
    auto path = (temp_dir("heatlab-test-cache") / "field.bin").string();
    CacheKey key;
    key.dim = 1;
    key.h = 0.25;
    key.L = 8.0;
    key.eta = 0.0;
    key.s = 0.5;
    key.steps = 16;
    key.kernel_tag = "fractional";
    key.source = 3;
    std::vector<double> values{1.0, -2.5, 3.25e-17, 0.0};
    write_cached_field(path, key, values);

    auto back = read_cached_field(path, key);
    REQUIRE(back.has_value());
    CHECK(*back == values);

    CacheKey other = key;
    other.steps = 17;
    CHECK_FALSE(read_cached_field(path, other).has_value());
    other = key;
    other.kernel_tag = "cone";
    CHECK_FALSE(read_cached_field(path, other).has_value());
    CHECK_FALSE(read_cached_field(path + ".missing", key).has_value());
    std::remove(path.c_str());
}

TEST_CASE("cached fundamental solution reproduces the direct computation") {
    auto dir = temp_dir("heatlab-test-cache-env");
    setenv("HEATLAB_CACHE", dir.string().c_str(), 1);

    auto k = make_preset("fractional", KernelParams{});
    Lattice lat(1, 0.25, 8.0);
    Schedule sched{0.0, 0.5, 16};
    auto direct = fundamental_solution(k, lat, sched, 4);
    auto first = cached_fundamental_solution(k, lat, sched, 4);   // computes + stores
    auto second = cached_fundamental_solution(k, lat, sched, 4);  // reads back
    CHECK(first.values == direct.values);
    CHECK(second.values == direct.values);
    CHECK(!fs::is_empty(dir));

    unsetenv("HEATLAB_CACHE");
    auto uncached = cached_fundamental_solution(k, lat, sched, 4);
    CHECK(uncached.values == direct.values);
    fs::remove_all(dir);
}

TEST_CASE("svg plots are deterministic and reject empty input") {
    PlotSeries a{"ratio", {1.0, 2.0, 3.0}, {0.5, 0.25, 0.125}};
    PlotSeries b{"reference", {1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}};
    const auto svg = render_svg_plot("profile", {a, b});
    CHECK(svg == render_svg_plot("profile", {a, b}));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("ratio") != std::string::npos);
    CHECK(svg.find("reference") != std::string::npos);

    // more than three decades of spread switches to a log axis
    PlotSeries wide{"tail", {1.0, 2.0, 3.0}, {1.0, 1e-3, 1e-8}};
    const auto log_svg = render_svg_plot("tail", {wide});
    CHECK(log_svg != svg);

    CHECK_THROWS_AS(render_svg_plot("empty", {}), std::runtime_error);
    PlotSeries hollow{"none", {}, {}};
    CHECK_THROWS_AS(render_svg_plot("hollow", {hollow}), std::runtime_error);
}

} // TEST_SUITE
