#include "aoisched/constraints.hpp"

#include "aoisched/errors.hpp"

#include <algorithm>
#include <numeric>

namespace aoisched {

AoiConstraints::AoiConstraints(std::vector<std::int64_t> deadlines)
    : AoiConstraints(deadlines, [&] {
          std::vector<std::string> ids;
          ids.reserve(deadlines.size());
          for (std::size_t i = 0; i < deadlines.size(); ++i) ids.push_back("s" + std::to_string(i + 1));
          return ids;
      }()) {}

AoiConstraints::AoiConstraints(std::vector<std::int64_t> deadlines, std::vector<std::string> ids) {
    if (deadlines.size() != ids.size())
        throw InvalidInput("constraints: " + std::to_string(deadlines.size()) + " deadlines but " +
                           std::to_string(ids.size()) + " ids");
    for (std::size_t i = 0; i < deadlines.size(); ++i) {
        if (deadlines[i] < 1)
            throw InvalidInput("constraints: deadline d[" + std::to_string(i) + "] = " +
                               std::to_string(deadlines[i]) + " is not a positive integer");
    }
    {
        std::vector<std::string> sorted_ids = ids;
        std::sort(sorted_ids.begin(), sorted_ids.end());
        auto dup = std::adjacent_find(sorted_ids.begin(), sorted_ids.end());
        if (dup != sorted_ids.end()) throw InvalidInput("constraints: duplicate source id '" + *dup + "'");
    }
    std::vector<std::size_t> order(deadlines.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return deadlines[a] < deadlines[b]; });
    deadlines_.reserve(order.size());
    ids_.reserve(order.size());
    input_pos_ = order;
    for (std::size_t pos : order) {
        deadlines_.push_back(deadlines[pos]);
        ids_.push_back(std::move(ids[pos]));
    }
    build_summary();
}

AoiConstraints AoiConstraints::subset(const AoiConstraints& parent, std::span<const SourceIndex> members) {
    AoiConstraints out;
    out.deadlines_.reserve(members.size());
    SourceIndex prev = -1;
    for (SourceIndex m : members) {
        if (m <= prev || static_cast<std::size_t>(m) >= parent.size())
            throw InvalidInput("constraints subset: member indices must be ascending and in range");
        prev = m;
        out.deadlines_.push_back(parent.deadline(m));
        out.ids_.push_back(parent.id(m));
        out.input_pos_.push_back(parent.input_position(m));
    }
    out.name_ = parent.name_;
    out.build_summary();
    return out;
}

void AoiConstraints::build_summary() {
    summary_.clear();
    for (std::int64_t d : deadlines_) {
        if (summary_.empty() || summary_.back().value != d)
            summary_.push_back({d, 1});
        else
            ++summary_.back().count;
    }
}

SourceIndex AoiConstraints::find(const std::string& id) const {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    return it == ids_.end() ? -1 : static_cast<SourceIndex>(it - ids_.begin());
}

Rational total_load(const AoiConstraints& d) {
    Rational sum;
    for (const auto& [value, count] : d.summary()) sum += Rational(count, value);
    return sum;
}

std::int64_t lower_bound(const AoiConstraints& d) {
    if (d.empty()) throw InvalidInput("lower_bound: empty constraint set");
    return total_load(d).ceil();
}

std::int64_t gd_upper_bound(const AoiConstraints& d) {
    if (d.empty()) throw InvalidInput("gd_upper_bound: empty constraint set");
    std::int64_t channels = 0;
    for (const auto& [value, count] : d.summary()) channels += (count + value - 1) / value;
    return channels;
}

bool is_harmonic(const AoiConstraints& d) {
    auto s = d.summary();
    if (s.size() < 2) return false;
    const std::int64_t base = s.front().value;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i].value % base != 0) return false;
        if (s[i].count % (s[i].value / base) != 0) return false;
    }
    return true;
}

bool is_consecutively_divisible(std::span<const Rational> x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < Rational(1)) return false;
        if (i > 0 && !(x[i] / x[i - 1]).is_integer()) return false;
    }
    return true;
}

bool is_consecutively_divisible(std::span<const std::int64_t> x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 1) return false;
        if (i > 0 && x[i] % x[i - 1] != 0) return false;
    }
    return true;
}

} // namespace aoisched
