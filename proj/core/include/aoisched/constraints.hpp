#pragma once

#include "aoisched/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aoisched {

/// Position of a source inside an AoiConstraints (ascending-deadline order).
using SourceIndex = std::int32_t;

struct DistinctValue {
    std::int64_t value = 0;
    std::int64_t count = 0;
};

/// Multiset of per-source AoI deadlines, canonicalised to ascending order.
///
/// Index i always refers to the i-th smallest deadline; ties keep the caller's
/// input order. id(i) and input_position(i) map back to what the caller
/// supplied, so schedules built over the sorted view can still name sources
/// the way the caller does.
class AoiConstraints {
public:
    AoiConstraints() = default;
    /// Sources are named "s1", "s2", ... after their input position.
    explicit AoiConstraints(std::vector<std::int64_t> deadlines);
    AoiConstraints(std::vector<std::int64_t> deadlines, std::vector<std::string> ids);

    /// Sub-instance made of `members` (ascending indices into `parent`). Its
    /// index k corresponds to parent index members[k].
    static AoiConstraints subset(const AoiConstraints& parent, std::span<const SourceIndex> members);

    [[nodiscard]] std::size_t size() const noexcept { return deadlines_.size(); }
    [[nodiscard]] bool empty() const noexcept { return deadlines_.empty(); }

    [[nodiscard]] std::int64_t deadline(SourceIndex i) const { return deadlines_.at(static_cast<std::size_t>(i)); }
    [[nodiscard]] std::span<const std::int64_t> deadlines() const noexcept { return deadlines_; }
    [[nodiscard]] const std::string& id(SourceIndex i) const { return ids_.at(static_cast<std::size_t>(i)); }
    [[nodiscard]] std::span<const std::string> ids() const noexcept { return ids_; }
    [[nodiscard]] std::size_t input_position(SourceIndex i) const { return input_pos_.at(static_cast<std::size_t>(i)); }

    /// Distinct deadline values u_1 < ... < u_v with their occurrence counts.
    [[nodiscard]] std::span<const DistinctValue> summary() const noexcept { return summary_; }
    [[nodiscard]] std::size_t num_distinct() const noexcept { return summary_.size(); }

    /// Optional instance label carried through the JSON format.
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    /// Index of the source with identifier `id`, or -1.
    [[nodiscard]] SourceIndex find(const std::string& id) const;

private:
    void build_summary();

    std::vector<std::int64_t> deadlines_;
    std::vector<std::string> ids_;
    std::vector<std::size_t> input_pos_;
    std::vector<DistinctValue> summary_;
    std::string name_;
};

/// Sum of 1/d_n, exact.
[[nodiscard]] Rational total_load(const AoiConstraints& d);

/// ceil(sum 1/d_n): no schedule can use fewer channels.
[[nodiscard]] std::int64_t lower_bound(const AoiConstraints& d);

/// sum_j ceil(o_j / u_j): the channel count GD achieves.
[[nodiscard]] std::int64_t gd_upper_bound(const AoiConstraints& d);

/// At least two distinct values, every value a multiple of the smallest one,
/// and each non-smallest value u_i occurring a multiple of u_i/u_1 times.
[[nodiscard]] bool is_harmonic(const AoiConstraints& d);

/// Every element >= 1 and each element an integer multiple of its predecessor.
[[nodiscard]] bool is_consecutively_divisible(std::span<const Rational> x);
[[nodiscard]] bool is_consecutively_divisible(std::span<const std::int64_t> x);

} // namespace aoisched
