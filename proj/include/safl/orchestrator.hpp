#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "safl/aggregation.hpp"
#include "safl/config.hpp"
#include "safl/monitor.hpp"

namespace safl {

struct ReportRow {
    std::string name;
    std::size_t size = 0;
    Modality modality = Modality::Sensor;
    AggregationMethod method_used = AggregationMethod::FedAvg;
    double final_accuracy = 0.0;
    double best_accuracy = 0.0;
    int rounds_executed = 0;
    double mean_round_time_s = 0.0;  // simulated
    std::uint64_t comm_bytes = 0;
    double comm_time_s = 0.0;
    bool failed = false;
    std::string error;  // diagnostic for failed runs, not part of the CSV
};

struct ExperimentSummary {
    double mean_final_accuracy = 0.0;  // over successful runs
    std::size_t total_communications = 0;
    std::uint64_t total_bytes = 0;
    std::size_t upload_count = 0;
    std::size_t download_count = 0;
    std::uint64_t upload_bytes = 0;
    std::uint64_t download_bytes = 0;
    std::uint64_t peak_client_bytes = 0;
    double mean_transfer_time_s = 0.0;
    int datasets_ok = 0;
    int datasets_failed = 0;
};

struct RunReport {
    std::vector<ReportRow> rows;  // ascending dataset size
    ExperimentSummary summary;
};

struct DatasetRunResult {
    ReportRow row;
    std::vector<RoundRecord> history;
    CommsLedger ledger;
};

/// One federated run over a single dataset: partition across clients, pick
/// the aggregation method from the complexity score, then per round sample
/// participants, broadcast the model, train locally with the adaptive
/// parameters, collect uploads, aggregate in ascending client-id order,
/// evaluate, log, and stop early once the accuracy slope flattens.
DatasetRunResult run_dataset(const Dataset& dataset, const DatasetProfile& profile,
                             const ExperimentConfig& config, MetricsWriter* metrics);

/// Full experiment: generate and profile every dataset, then execute the
/// per-dataset runs smallest-to-largest. A failing dataset is recorded as
/// failed and does not abort the rest. When out_dir is given, writes
/// <out>/<dataset>/metrics.jsonl and <out>/<dataset>/comms.csv as it goes.
RunReport run_experiment(const ExperimentConfig& config,
                         const std::optional<std::filesystem::path>& out_dir = {});

/// report.csv (one row per dataset) and summary.json. Overwrites.
void write_report(const RunReport& report, const std::filesystem::path& out_dir);

}  // namespace safl
