#include "qmac/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "qmac/capacity.hpp"
#include "qmac/counts.hpp"
#include "qmac/errors.hpp"
#include "qmac/version.hpp"

namespace qmac {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

int worker_count(const RunConfig& cfg) {
    if (cfg.workers > 0) return cfg.workers;
    if (const char* env = std::getenv("QMAC_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 2;
}

RateRegion closed_form_region(const std::string& name, const MacScenario& scn) {
    if (name == "coherent") return coherent_region(scn);
    if (name == "classical-outer") return classical_outer_region(scn);
    if (name == "ea-outer") return ea_outer_region(scn);
    if (name == "tmsv") return tmsv_region(scn);
    throw validation_error("unknown region name: " + name);
}

bool is_region_name(const std::string& name) {
    return name == "coherent" || name == "classical-outer" || name == "ea-outer" ||
           name == "tmsv";
}

std::vector<double> coherent_singletons(const MacScenario& scn) {
    const RateRegion coh = coherent_region(scn);
    std::vector<double> out(scn.senders());
    for (int k = 0; k < scn.senders(); ++k) out[k] = coh.bound(1u << k);
    return out;
}

ReceiverConfig to_receiver_config(const ReceiverTask& task) {
    ReceiverConfig cfg;
    cfg.kind = receiver_kind_from_string(task.kind);
    cfg.n_r = task.n_r;
    cfg.stats = task.stats == "exact" ? StatsMethod::exact_counts : StatsMethod::gaussian;
    cfg.gains = task.gains;
    cfg.split = task.split;
    return cfg;
}

struct SweepRow {
    double value;
    std::string series_label;
    double rate_bits;
    double normalized_rate;
};

std::vector<SweepRow> sweep_point_rows(const SweepTask& task, const MacScenario& base,
                                       double n_s, bool quantum) {
    MacScenario scn = base;
    for (double& b : scn.n_s) b = n_s;
    long n_r = 1;
    if (task.n_r) {
        n_r = *task.n_r;
    } else {
        const double raw = *task.snr * scn.n_b / (scn.tau * n_s);
        if (!(raw >= 1.0 && raw < 9e18))
            throw validation_error("sweep: repetition count out of range at n_s=" +
                                   fmt17(n_s));
        n_r = static_cast<long>(std::llround(raw));
    }
    // normalization divisor follows the quantum flag so normalized curves
    // are invariant under the halving
    const double coh1 = coherent_singletons(scn)[0] * (quantum ? 0.5 : 1.0);
    std::vector<SweepRow> rows;
    for (const std::string& name : task.series) {
        RateRegion region;
        if (is_region_name(name)) {
            region = closed_form_region(name, scn);
        } else {
            ReceiverTask rt;
            rt.kind = name;
            rt.n_r = n_r;
            rt.stats = task.stats;
            region = receiver_rate_region(receiver_kind_from_string(name), scn,
                                          to_receiver_config(rt));
        }
        if (quantum) region = region.scaled(0.5);
        const double max_single = region.bound(1);
        const double equal = region.equal_rate_point();
        rows.push_back({n_s, name + "/R1R2=inf", max_single,
                        coh1 > 0 ? max_single / coh1 : 0.0});
        rows.push_back({n_s, name + "/R1R2=1", equal, coh1 > 0 ? equal / coh1 : 0.0});
    }
    return rows;
}

std::string svg_plot(const std::vector<std::pair<std::string, Polygon2D>>& polygons) {
    // fixed 640x640 canvas with a 60px margin; data scaled to the max extent
    double extent = 1e-300;
    for (const auto& [label, poly] : polygons)
        for (const auto& v : poly.vertices) extent = std::max({extent, v[0], v[1]});
    extent *= 1.05;
    const double size = 640.0, margin = 60.0, span = size - 2 * margin;
    auto px = [&](double x) { return margin + span * x / extent; };
    auto py = [&](double y) { return size - margin - span * y / extent; };
    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    out += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    out += "<line x1=\"" + fmt17(margin) + "\" y1=\"" + fmt17(size - margin) + "\" x2=\"" +
           fmt17(size - margin) + "\" y2=\"" + fmt17(size - margin) +
           "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fmt17(margin) + "\" y1=\"" + fmt17(size - margin) + "\" x2=\"" +
           fmt17(margin) + "\" y2=\"" + fmt17(margin) + "\" stroke=\"black\"/>\n";
    int color = 0;
    double legend_y = margin;
    for (const auto& [label, poly] : polygons) {
        std::string points;
        for (const auto& v : poly.vertices)
            points += fmt17(px(v[0])) + "," + fmt17(py(v[1])) + " ";
        out += "<polygon points=\"" + points + "\" fill=\"none\" stroke=\"" +
               colors[color % 8] + "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + fmt17(size - margin - 210) + "\" y=\"" + fmt17(legend_y) +
               "\" fill=\"" + colors[color % 8] + "\" font-size=\"13\">" + label +
               "</text>\n";
        legend_y += 16.0;
        ++color;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace

RunResult run_tasks(const RunConfig& cfg) {
    cfg.scenario.validate();
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    RunResult result;
    const bool want_csv =
        std::find(cfg.formats.begin(), cfg.formats.end(), "csv") != cfg.formats.end();
    const bool want_json =
        std::find(cfg.formats.begin(), cfg.formats.end(), "json") != cfg.formats.end();
    const bool want_svg =
        std::find(cfg.formats.begin(), cfg.formats.end(), "svg") != cfg.formats.end();

    auto write_file = [&](const std::string& name, const std::string& text) {
        const std::string path = (fs::path(cfg.out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw validation_error("cannot write " + path);
        out << text;
        result.files_written.push_back(path);
    };

    json manifest;
    manifest["tool"] = "qmac";
    manifest["version"] = kVersion;
    manifest["scenario"] = {{"eta", cfg.scenario.eta},
                            {"tau", cfg.scenario.tau},
                            {"n_b", cfg.scenario.n_b},
                            {"n_s", cfg.scenario.n_s}};
    manifest["output"] = {{"normalize", cfg.normalize}, {"quantum", cfg.quantum}};
    manifest["adopted_readings"] = {
        {"opa_gain",
         "literal optimum sqrt(N_S/(N_B(1+N_B))) lies below 1; implemented as "
         "G = 1 + sqrt(N_S/(N_B(1+N_B)))"},
        {"difference_model",
         "the Gaussian model of the count-difference statistic carries the "
         "message-dependent mean vector; a zero-mean model could not separate "
         "the two phases"},
        {"opa_counts",
         "exact OPA-receiver rates use per-arm total counts over the n_r "
         "copies, inverted from the n_r-th power of the per-copy generating "
         "function"},
        {"asymptotic_ratio",
         "numerator and denominator logarithms share one base (value is base "
         "independent); accuracy degrades below n_b of order 1"},
    };

    // ---- closed-form and receiver regions -------------------------------
    std::vector<std::pair<std::string, RateRegion>> regions;
    for (const std::string& name : cfg.regions)
        regions.emplace_back(name, closed_form_region(name, cfg.scenario));
    json deficits = json::array();
    for (const ReceiverTask& task : cfg.receivers) {
        const ReceiverConfig rc = to_receiver_config(task);
        regions.emplace_back(task.kind + "/n_r=" + std::to_string(task.n_r),
                             receiver_rate_region(rc.kind, cfg.scenario, rc));
        if (rc.stats == StatsMethod::exact_counts) {
            const auto per_copy =
                joint_counts_from_state(receiver_front_end(rc.kind, cfg.scenario, rc, 0));
            const auto totals = total_counts_over_copies(per_copy, rc.n_r);
            deficits.push_back({{"receiver", task.kind},
                                {"per_copy_mass_deficit", per_copy.mass_deficit},
                                {"total_mass_deficit", totals.mass_deficit}});
        }
    }
    manifest["mass_deficits"] = deficits;
    if (cfg.quantum)
        for (auto& [name, region] : regions) region = region.scaled(0.5);

    std::vector<double> axis_scale;
    if (cfg.normalize) {
        axis_scale = coherent_singletons(cfg.scenario);
        if (cfg.quantum)
            for (double& s : axis_scale) s *= 0.5;
        manifest["normalization"] = {{"axis_divisors_bits", axis_scale}};
    }

    if (!regions.empty() && want_csv) {
        std::string csv = "region_label,subset_bitmask,bound_bits\n";
        for (const auto& [name, region] : regions)
            for (std::uint32_t mask = 1; mask < region.bounds.size(); ++mask)
                csv += name + "," + std::to_string(mask) + "," + fmt17(region.bound(mask)) +
                       "\n";
        write_file("regions.csv", csv);

        if (cfg.scenario.senders() == 2) {
            std::string verts = "region_label,x,y\n";
            std::vector<std::pair<std::string, Polygon2D>> polys;
            for (const auto& [name, region] : regions) {
                const Polygon2D poly = region_polygon(region, axis_scale);
                polys.emplace_back(name, poly);
                for (const auto& v : poly.vertices)
                    verts += name + "," + fmt17(v[0]) + "," + fmt17(v[1]) + "\n";
            }
            write_file("vertices2d.csv", verts);
            if (want_svg) write_file("regions.svg", svg_plot(polys));
        } else if (cfg.scenario.senders() == 3) {
            std::string verts = "region_label,vertex_index,x,y,z\n";
            std::string faces = "region_label,v0,v1,v2\n";
            for (const auto& [name, region] : regions) {
                const Mesh3D mesh = region_mesh(region, axis_scale);
                for (size_t i = 0; i < mesh.vertices.size(); ++i)
                    verts += name + "," + std::to_string(i) + "," +
                             fmt17(mesh.vertices[i][0]) + "," + fmt17(mesh.vertices[i][1]) +
                             "," + fmt17(mesh.vertices[i][2]) + "\n";
                for (const auto& t : mesh.triangles)
                    faces += name + "," + std::to_string(t[0]) + "," + std::to_string(t[1]) +
                             "," + std::to_string(t[2]) + "\n";
            }
            write_file("vertices3d.csv", verts);
            write_file("faces3d.csv", faces);
        }
    }

    // ---- sweeps ----------------------------------------------------------
    if (!cfg.sweeps.empty() && want_csv) {
        std::string csv = "sweep_param,value,series_label,rate_bits,normalized_rate\n";
        for (const SweepTask& task : cfg.sweeps) {
            const std::vector<double> grid = task.grid.values();
            std::vector<std::vector<SweepRow>> rows(grid.size());
            std::atomic<size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            auto work = [&] {
                for (;;) {
                    const size_t i = next.fetch_add(1);
                    if (i >= grid.size()) return;
                    try {
                        rows[i] = sweep_point_rows(task, cfg.scenario, grid[i], cfg.quantum);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            };
            const int threads = std::min<int>(worker_count(cfg), int(grid.size()));
            std::vector<std::thread> pool;
            for (int t = 1; t < threads; ++t) pool.emplace_back(work);
            work();
            for (auto& t : pool) t.join();
            if (failure) std::rethrow_exception(failure);
            for (const auto& point : rows)
                for (const SweepRow& row : point)
                    csv += task.parameter + "," + fmt17(row.value) + "," + row.series_label +
                           "," + fmt17(row.rate_bits) + "," + fmt17(row.normalized_rate) +
                           "\n";
        }
        write_file("sweep.csv", csv);
    }

    if (want_json) write_file("manifest.json", manifest.dump(2) + "\n");
    return result;
}

}  // namespace qmac
