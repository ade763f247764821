#include "aoisched/json_io.hpp"

#include "aoisched/errors.hpp"

#include <json.hpp>

#include <map>

namespace aoisched {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

const json& require_field(const json& doc, const char* field) {
    if (!doc.is_object()) throw InvalidInput("expected a JSON object at top level");
    auto it = doc.find(field);
    if (it == doc.end()) throw InvalidInput(std::string("missing field \"") + field + "\"");
    return *it;
}

std::int64_t as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw InvalidInput("field \"" + where + "\" must be an integer");
    return v.get<std::int64_t>();
}

std::string name_of(SourceIndex s, const AoiConstraints& d, const std::vector<std::string>& unknown_ids) {
    if (s >= 0 && static_cast<std::size_t>(s) < d.size()) return d.id(s);
    const auto k = static_cast<std::size_t>(s) - d.size();
    if (s >= 0 && k < unknown_ids.size()) return unknown_ids[k];
    return "#" + std::to_string(s);
}

} // namespace

AoiConstraints parse_constraints_json(std::string_view text) {
    const json doc = parse_document(text);
    const json& dl = require_field(doc, "d");
    if (!dl.is_array()) throw InvalidInput("field \"d\" must be an array of integers");
    std::vector<std::int64_t> deadlines;
    for (std::size_t i = 0; i < dl.size(); ++i) {
        const std::int64_t v = as_int(dl[i], "d[" + std::to_string(i) + "]");
        if (v < 1) throw InvalidInput("field \"d[" + std::to_string(i) + "]\" must be at least 1");
        deadlines.push_back(v);
    }
    if (deadlines.empty()) throw InvalidInput("field \"d\" must not be empty");

    std::vector<std::string> ids;
    if (auto it = doc.find("sources"); it != doc.end()) {
        if (!it->is_array() || it->size() != deadlines.size())
            throw InvalidInput("field \"sources\" must be an array of strings as long as \"d\"");
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_string()) throw InvalidInput("field \"sources[" + std::to_string(i) + "]\" must be a string");
            ids.push_back((*it)[i].get<std::string>());
        }
    } else {
        for (std::size_t i = 0; i < deadlines.size(); ++i) ids.push_back("s" + std::to_string(i + 1));
    }

    AoiConstraints d(std::move(deadlines), std::move(ids));
    if (auto it = doc.find("id"); it != doc.end()) {
        if (!it->is_string()) throw InvalidInput("field \"id\" must be a string");
        d.set_name(it->get<std::string>());
    }
    return d;
}

std::string constraints_to_json(const AoiConstraints& d) {
    std::vector<std::int64_t> deadlines(d.size());
    std::vector<std::string> ids(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto s = static_cast<SourceIndex>(i);
        deadlines[d.input_position(s)] = d.deadline(s);
        ids[d.input_position(s)] = d.id(s);
    }
    json doc;
    doc["id"] = d.name();
    doc["d"] = deadlines;
    doc["sources"] = ids;
    return doc.dump();
}

std::string schedule_to_json(const CyclicSchedule& schedule, const AoiConstraints& d, ScheduleJsonOptions options) {
    const std::int64_t cycle = schedule.cycle_length();
    const std::int64_t channels = schedule.num_channels();
    if (channels > 0 && cycle > options.max_cells / channels)
        throw BudgetExceeded("schedule grid of " + std::to_string(channels) + " x " + std::to_string(cycle) +
                             " cells exceeds the output limit");
    json grid = json::array();
    for (ChannelIndex k = 0; k < schedule.num_channels(); ++k) {
        json row = json::array();
        for (std::int64_t t = 0; t < cycle; ++t) {
            const SourceIndex s = schedule.at(k, t);
            if (s == CyclicSchedule::kIdle)
                row.push_back(nullptr);
            else
                row.push_back(name_of(s, d, {}));
        }
        grid.push_back(std::move(row));
    }
    json doc;
    doc["cycle_length"] = cycle;
    doc["grid"] = std::move(grid);
    doc["num_channels"] = channels;
    return doc.dump(options.indent);
}

ParsedSchedule parse_schedule_json(std::string_view text, const AoiConstraints& d) {
    const json doc = parse_document(text);
    const std::int64_t cycle = as_int(require_field(doc, "cycle_length"), "cycle_length");
    if (cycle < 1) throw InvalidInput("field \"cycle_length\" must be positive");
    const json& grid = require_field(doc, "grid");
    if (!grid.is_array()) throw InvalidInput("field \"grid\" must be an array of channel rows");
    if (auto it = doc.find("num_channels"); it != doc.end()) {
        if (as_int(*it, "num_channels") != static_cast<std::int64_t>(grid.size()))
            throw InvalidInput("field \"num_channels\" does not match the number of grid rows");
    }

    ParsedSchedule out;
    std::map<std::string, SourceIndex> unknown;
    auto lookup = [&](const json& cell, const std::string& where) -> SourceIndex {
        if (!cell.is_string()) throw InvalidInput("field \"" + where + "\" must be a source id or null");
        const auto id = cell.get<std::string>();
        const SourceIndex s = d.find(id);
        if (s >= 0) return s;
        auto [it, inserted] = unknown.try_emplace(id, static_cast<SourceIndex>(d.size() + out.unknown_ids.size()));
        if (inserted) out.unknown_ids.push_back(id);
        return it->second;
    };

    for (std::size_t k = 0; k < grid.size(); ++k) {
        const json& row = grid[k];
        const std::string row_name = "grid[" + std::to_string(k) + "]";
        if (!row.is_array() || static_cast<std::int64_t>(row.size()) != cycle)
            throw InvalidInput("field \"" + row_name + "\" must be an array of cycle_length cells");
        const ChannelIndex channel = out.schedule.add_channel(cycle);
        for (std::size_t t = 0; t < row.size(); ++t) {
            const json& cell = row[t];
            const std::string where = row_name + "[" + std::to_string(t) + "]";
            if (cell.is_null()) continue;
            if (cell.is_array()) {
                for (std::size_t j = 0; j < cell.size(); ++j)
                    out.schedule.place(channel, static_cast<std::int64_t>(t),
                                       lookup(cell[j], where + "[" + std::to_string(j) + "]"));
            } else {
                out.schedule.place(channel, static_cast<std::int64_t>(t), lookup(cell, where));
            }
        }
    }
    return out;
}

std::string report_to_json(const VerificationReport& report, const AoiConstraints& d,
                           const std::vector<std::string>& unknown_ids) {
    json violations = json::array();
    for (const auto& v : report.violations) {
        json entry;
        entry["source"] = v.id;
        entry["deadline"] = v.deadline;
        entry["worst_gap"] = v.worst_gap ? json(*v.worst_gap) : json(nullptr);
        violations.push_back(std::move(entry));
    }
    json conflicts = json::array();
    for (const auto& c : report.channel_conflicts) {
        conflicts.push_back({{"channel", c.channel},
                             {"slot", c.slot},
                             {"occupant", name_of(c.occupant, d, unknown_ids)},
                             {"intruder", name_of(c.intruder, d, unknown_ids)}});
    }
    json unknown = json::array();
    for (const auto& u : report.unknown_sources)
        unknown.push_back({{"channel", u.channel}, {"slot", u.slot}, {"source", name_of(u.source, d, unknown_ids)}});

    json doc;
    doc["feasible"] = report.feasible;
    doc["violations"] = std::move(violations);
    doc["channel_conflicts"] = std::move(conflicts);
    doc["unknown_sources"] = std::move(unknown);
    doc["num_channels"] = report.num_channels;
    doc["cycle_length"] = report.cycle_length;
    doc["lower_bound"] = report.lower_bound;
    doc["meets_lower_bound"] = report.meets_lower_bound;
    return doc.dump(2);
}

} // namespace aoisched
