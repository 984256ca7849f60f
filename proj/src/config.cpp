#include "qmac/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "qmac/errors.hpp"

namespace qmac {

namespace {

using nlohmann::json;

const std::set<std::string> kRegionNames = {"coherent", "classical-outer", "ea-outer",
                                            "tmsv"};
const std::set<std::string> kFormatNames = {"csv", "json", "svg"};
const std::set<std::string> kStatsNames = {"gaussian", "exact"};

void expect(bool cond, const std::string& message) {
    if (!cond) throw validation_error("config: " + message);
}

}  // namespace

std::vector<double> SweepGrid::values() const {
    expect(points >= 1, "sweep grid needs at least one point");
    expect(min > 0.0 || scale == "linear", "log grid needs a positive minimum");
    expect(max >= min, "sweep grid needs max >= min");
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = min;
        return out;
    }
    for (int i = 0; i < points; ++i) {
        const double t = double(i) / (points - 1);
        out[i] = scale == "log" ? min * std::pow(max / min, t) : min + t * (max - min);
    }
    return out;
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw validation_error(std::string("config: JSON parse failure: ") + err.what());
    }
    RunConfig cfg;
    expect(j.is_object(), "top level must be an object");
    cfg.version = j.value("version", 1);
    expect(cfg.version == 1, "unsupported config version");

    expect(j.contains("scenario"), "missing scenario");
    const json& s = j.at("scenario");
    cfg.scenario.eta = s.at("eta").get<std::vector<double>>();
    cfg.scenario.tau = s.at("tau").get<double>();
    cfg.scenario.n_b = s.at("n_b").get<double>();
    cfg.scenario.n_s = s.at("n_s").get<std::vector<double>>();
    cfg.scenario.validate();

    const json tasks = j.value("tasks", json::object());
    for (const auto& name : tasks.value("regions", std::vector<std::string>{})) {
        expect(kRegionNames.count(name) > 0, "unknown region name: " + name);
        cfg.regions.push_back(name);
    }
    if (tasks.contains("receivers")) {
        for (const json& r : tasks.at("receivers")) {
            ReceiverTask task;
            task.kind = r.at("kind").get<std::string>();
            receiver_kind_from_string(task.kind);  // validate
            task.n_r = r.at("n_r").get<long>();
            expect(task.n_r >= 1, "receiver n_r must be >= 1");
            task.stats = r.value("stats", std::string("gaussian"));
            expect(kStatsNames.count(task.stats) > 0, "unknown stats method: " + task.stats);
            if (r.contains("gains")) task.gains = r.at("gains").get<std::vector<double>>();
            if (r.contains("split")) task.split = r.at("split").get<std::vector<double>>();
            cfg.receivers.push_back(std::move(task));
        }
    }
    if (tasks.contains("sweeps")) {
        for (const json& sw : tasks.at("sweeps")) {
            SweepTask task;
            task.parameter = sw.at("parameter").get<std::string>();
            expect(task.parameter == "n_s", "only n_s sweeps are supported");
            const json& g = sw.at("grid");
            task.grid.scale = g.value("scale", std::string("log"));
            expect(task.grid.scale == "log" || task.grid.scale == "linear",
                   "grid scale must be log or linear");
            task.grid.min = g.at("min").get<double>();
            task.grid.max = g.at("max").get<double>();
            task.grid.points = g.at("points").get<int>();
            task.grid.values();  // validate monotone nonempty grid
            task.series = sw.at("series").get<std::vector<std::string>>();
            expect(!task.series.empty(), "sweep needs at least one series");
            for (const auto& name : task.series)
                if (kRegionNames.count(name) == 0) receiver_kind_from_string(name);
            if (sw.contains("snr")) task.snr = sw.at("snr").get<double>();
            if (sw.contains("n_r")) task.n_r = sw.at("n_r").get<long>();
            expect(task.snr.has_value() != task.n_r.has_value(),
                   "sweep needs exactly one of snr or n_r");
            task.stats = sw.value("stats", std::string("gaussian"));
            expect(kStatsNames.count(task.stats) > 0, "unknown stats method: " + task.stats);
            cfg.sweeps.push_back(std::move(task));
        }
    }

    const json out = j.value("output", json::object());
    if (out.contains("formats")) {
        cfg.formats = out.at("formats").get<std::vector<std::string>>();
        for (const auto& f : cfg.formats)
            expect(kFormatNames.count(f) > 0, "unknown output format: " + f);
    }
    cfg.out_dir = out.value("directory", std::string("out"));
    cfg.normalize = out.value("normalize", false);
    cfg.quantum = out.value("quantum", false);
    cfg.workers = out.value("workers", 0);
    expect(cfg.workers >= 0, "workers must be nonnegative");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

}  // namespace qmac
