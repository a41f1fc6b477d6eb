#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "hollm/optimizer.hpp"

namespace hollm {

inline constexpr int kRecordSchemaVersion = 1;

std::string record_to_json_line(const TrajectoryRecord& record);
TrajectoryRecord record_from_json_line(const std::string& line);

/// One JSON object per evaluation, flushed per record so aborted runs stay
/// analyzable on disk.
class TrajectoryWriter {
public:
    explicit TrajectoryWriter(const std::string& path);
    void write(const TrajectoryRecord& record);

private:
    std::ofstream out_;
};

void write_trajectory_jsonl(const std::string& path, const Trajectory& trajectory);
std::vector<TrajectoryRecord> read_trajectory_jsonl(const std::string& path);

struct TrajectoryMeta {
    std::string method;
    std::string objective_name;
    std::string benchmark_spec;  // registry spec string, e.g. "levy:d=10"
    RunConfig config;
    double wall_ms = 0.0;
    TokenUsage tokens;
    int record_schema_version = kRecordSchemaVersion;
};

void write_trajectory_meta(const std::string& path, const TrajectoryMeta& meta);
TrajectoryMeta read_trajectory_meta(const std::string& path);

std::string run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const std::string& text);

} // namespace hollm
