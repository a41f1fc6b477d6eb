#include "hollm/trajectory_io.hpp"

#include <json.hpp>

#include <stdexcept>

namespace hollm {

using nlohmann::json;

namespace {

json record_to_json(const TrajectoryRecord& r) {
    return json{{"t", r.t},
                {"point", r.point},
                {"raw_value", r.raw_value},
                {"internal_value", r.internal_value},
                {"best_internal", r.best_internal},
                {"round", r.round},
                {"region_index", r.region_index},
                {"generator_tag", r.generator_tag},
                {"alpha_t", r.alpha_t}};
}

TrajectoryRecord record_from_json(const json& j) {
    TrajectoryRecord r;
    r.t = j.at("t").get<int>();
    r.point = j.at("point").get<Point>();
    r.raw_value = j.at("raw_value").get<double>();
    r.internal_value = j.at("internal_value").get<double>();
    r.best_internal = j.at("best_internal").get<double>();
    r.round = j.at("round").get<int>();
    r.region_index = j.at("region_index").get<int>();
    r.generator_tag = j.at("generator_tag").get<std::string>();
    r.alpha_t = j.at("alpha_t").get<double>();
    return r;
}

json config_to_json(const RunConfig& c) {
    return json{{"T", c.T},
                {"n0", c.n0},
                {"b", c.b},
                {"M", c.M},
                {"k", c.k},
                {"m0", c.m0},
                {"lambda", c.lambda},
                {"alpha_max", c.alpha_max},
                {"alpha_min", c.alpha_min},
                {"beta1", c.beta1},
                {"beta2", c.beta2},
                {"c", c.c},
                {"epsilon", c.epsilon},
                {"sigma0_sq", c.sigma0_sq},
                {"seed", c.seed},
                {"scoring_variant", to_string(c.scoring_variant)},
                {"volume_source", to_string(c.volume_source)}};
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.T = j.value("T", c.T);
    c.n0 = j.value("n0", c.n0);
    c.b = j.value("b", c.b);
    c.M = j.value("M", c.M);
    c.k = j.value("k", c.k);
    c.m0 = j.value("m0", c.m0);
    c.lambda = j.value("lambda", c.lambda);
    c.alpha_max = j.value("alpha_max", c.alpha_max);
    c.alpha_min = j.value("alpha_min", c.alpha_min);
    c.beta1 = j.value("beta1", c.beta1);
    c.beta2 = j.value("beta2", c.beta2);
    c.c = j.value("c", c.c);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.sigma0_sq = j.value("sigma0_sq", c.sigma0_sq);
    c.seed = j.value("seed", c.seed);
    if (j.contains("scoring_variant"))
        c.scoring_variant = scoring_variant_from_string(j["scoring_variant"].get<std::string>());
    if (j.contains("volume_source"))
        c.volume_source = volume_source_from_string(j["volume_source"].get<std::string>());
    return c;
}

} // namespace

std::string record_to_json_line(const TrajectoryRecord& record) {
    return record_to_json(record).dump();
}

TrajectoryRecord record_from_json_line(const std::string& line) {
    return record_from_json(json::parse(line));
}

TrajectoryWriter::TrajectoryWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open trajectory file: " + path);
}

void TrajectoryWriter::write(const TrajectoryRecord& record) {
    out_ << record_to_json_line(record) << "\n";
    out_.flush();
}

void write_trajectory_jsonl(const std::string& path, const Trajectory& trajectory) {
    TrajectoryWriter writer(path);
    for (const auto& r : trajectory.records) writer.write(r);
}

std::vector<TrajectoryRecord> read_trajectory_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read trajectory file: " + path);
    std::vector<TrajectoryRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(record_from_json_line(line));
    }
    return records;
}

void write_trajectory_meta(const std::string& path, const TrajectoryMeta& meta) {
    json j;
    j["record_schema_version"] = meta.record_schema_version;
    j["method"] = meta.method;
    j["objective_name"] = meta.objective_name;
    j["benchmark_spec"] = meta.benchmark_spec;
    j["config"] = config_to_json(meta.config);
    j["wall_ms"] = meta.wall_ms;
    j["tokens"] = {{"prompt", meta.tokens.prompt_tokens},
                   {"completion", meta.tokens.completion_tokens}};

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write meta file: " + path);
    out << j.dump(2) << "\n";
}

TrajectoryMeta read_trajectory_meta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read meta file: " + path);
    json j = json::parse(in);

    TrajectoryMeta meta;
    meta.record_schema_version = j.value("record_schema_version", -1);
    if (meta.record_schema_version != kRecordSchemaVersion)
        throw std::runtime_error("record schema version mismatch in " + path);
    meta.method = j.value("method", "");
    meta.objective_name = j.value("objective_name", "");
    meta.benchmark_spec = j.value("benchmark_spec", "");
    if (j.contains("config")) meta.config = config_from_json(j["config"]);
    meta.wall_ms = j.value("wall_ms", 0.0);
    if (j.contains("tokens")) {
        meta.tokens.prompt_tokens = j["tokens"].value("prompt", 0LL);
        meta.tokens.completion_tokens = j["tokens"].value("completion", 0LL);
    }
    return meta;
}

std::string run_config_to_json(const RunConfig& config) {
    return config_to_json(config).dump(2);
}

RunConfig run_config_from_json(const std::string& text) {
    return config_from_json(json::parse(text));
}

} // namespace hollm
