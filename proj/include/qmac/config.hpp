#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmac/circuit.hpp"
#include "qmac/receivers.hpp"

namespace qmac {

struct SweepGrid {
    std::string scale = "log";  // "log" | "linear"
    double min = 0.0;
    double max = 0.0;
    int points = 0;

    std::vector<double> values() const;
};

struct SweepTask {
    std::string parameter;              // currently "n_s" (all senders together)
    SweepGrid grid;
    std::vector<std::string> series;    // receiver kinds and/or region labels
    std::optional<double> snr;          // fixes n_r = snr * n_b / (tau * n_s)
    std::optional<long> n_r;            // fixed repetition count
    std::string stats = "gaussian";
};

struct ReceiverTask {
    std::string kind;
    long n_r = 1;
    std::string stats = "gaussian";
    std::vector<double> gains;  // empty -> defaults
    std::vector<double> split;  // empty -> scenario weights
};

struct RunConfig {
    int version = 1;
    MacScenario scenario;
    std::vector<std::string> regions;      // closed-form/tmsv regions to emit
    std::vector<ReceiverTask> receivers;
    std::vector<SweepTask> sweeps;
    std::vector<std::string> formats = {"csv", "json"};
    std::string out_dir = "out";
    bool normalize = false;
    bool quantum = false;
    int workers = 0;  // 0 -> QMAC_WORKERS or hardware default
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace qmac
