// Finite measure-theoretic substrate: sample spaces with named points,
// events as bitmasks, random variables with their level partitions, and the
// classical formula of total probability used as a self-check oracle.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kontext/errors.hpp"
#include "kontext/scalar.hpp"

namespace kontext {

/// Subset of sample points, packed as a bitmask over the point indices of
/// one FiniteSpace. Keeps set algebra trivial and subset enumeration cheap.
struct Event {
    std::uint64_t mask = 0;

    std::size_t cardinality() const { return static_cast<std::size_t>(std::popcount(mask)); }
    bool empty() const { return mask == 0; }
    bool contains(std::size_t index) const { return (mask >> index) & 1u; }
    bool subset_of(Event other) const { return (mask & ~other.mask) == 0; }

    friend Event operator&(Event a, Event b) { return Event{a.mask & b.mask}; }
    friend Event operator|(Event a, Event b) { return Event{a.mask | b.mask}; }
    friend bool operator==(Event a, Event b) { return a.mask == b.mask; }
    friend auto operator<=>(Event a, Event b) { return a.mask <=> b.mask; }
};

/// Sample space with exact nonnegative point weights summing to one.
/// Immutable after construction; all queries are const.
template <class S>
class FiniteSpace {
public:
    using scalar_type = S;
    static constexpr std::size_t max_points = 62;

    FiniteSpace(std::vector<std::string> point_ids, std::vector<S> weights)
        : ids_(std::move(point_ids)), weights_(std::move(weights)) {
        if (ids_.size() != weights_.size())
            throw model_error("point/weight count mismatch");
        if (ids_.empty()) throw model_error("sample space is empty");
        if (ids_.size() > max_points)
            throw model_error("sample space exceeds " + std::to_string(max_points) + " points");
        S total = scalar_traits<S>::zero();
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (weights_[i] < scalar_traits<S>::zero())
                throw model_error("negative weight at point '" + ids_[i] + "'");
            total += weights_[i];
            if (!index_.emplace(ids_[i], static_cast<std::uint32_t>(i)).second)
                throw model_error("duplicate point identifier '" + ids_[i] + "'");
        }
        if (!scalar_traits<S>::sums_to_one(total))
            throw model_error("weights sum to " + scalar_traits<S>::str(total) + ", expected 1");
    }

    std::size_t size() const { return ids_.size(); }
    const std::string& point_id(std::size_t i) const { return ids_[i]; }
    const S& weight(std::size_t i) const { return weights_[i]; }

    std::optional<std::uint32_t> index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    Event full_event() const {
        return Event{size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size()) - 1)};
    }

    /// Builds an event from point identifiers, rejecting unknown ids.
    Event make_event(std::span<const std::string> point_ids) const {
        Event e;
        for (const auto& id : point_ids) {
            auto idx = index_of(id);
            if (!idx) throw model_error("unknown point identifier '" + id + "'");
            e.mask |= std::uint64_t{1} << *idx;
        }
        return e;
    }

    /// Renders an event back as a sorted list of point ids (for messages).
    std::string event_label(Event e) const {
        std::string out = "{";
        bool first = true;
        for (std::size_t i = 0; i < size(); ++i) {
            if (!e.contains(i)) continue;
            if (!first) out += ",";
            out += ids_[i];
            first = false;
        }
        return out + "}";
    }

    void check_event(Event e) const {
        if (!e.subset_of(full_event()))
            throw model_error("event refers to points outside the space");
    }

private:
    std::vector<std::string> ids_;
    std::vector<S> weights_;
    std::map<std::string, std::uint32_t> index_;
};

/// Real-valued function on the points of a space. The spectrum is the sorted
/// set of distinct values; cell(k) is the level set of the k-th value.
class RandomVariable {
public:
    template <class S>
    static RandomVariable from_values(const FiniteSpace<S>& space, std::string name,
                                      const std::map<std::string, double>& by_id) {
        std::vector<double> values(space.size());
        std::vector<bool> seen(space.size(), false);
        for (const auto& [id, v] : by_id) {
            auto idx = space.index_of(id);
            if (!idx) throw model_error("variable '" + name + "' assigns unknown point '" + id + "'");
            values[*idx] = v;
            seen[*idx] = true;
        }
        for (std::size_t i = 0; i < space.size(); ++i)
            if (!seen[i])
                throw model_error("variable '" + name + "' is undefined at point '" + space.point_id(i) + "'");
        return RandomVariable(std::move(name), std::move(values));
    }

    RandomVariable(std::string name, std::vector<double> values)
        : name_(std::move(name)), values_(std::move(values)) {
        spectrum_ = values_;
        std::sort(spectrum_.begin(), spectrum_.end());
        spectrum_.erase(std::unique(spectrum_.begin(), spectrum_.end()), spectrum_.end());
        if (spectrum_.size() < 2)
            throw model_error("variable '" + name_ + "' must take at least two distinct values");
        cells_.resize(spectrum_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) {
            auto it = std::lower_bound(spectrum_.begin(), spectrum_.end(), values_[i]);
            cells_[static_cast<std::size_t>(it - spectrum_.begin())].mask |= std::uint64_t{1} << i;
        }
    }

    const std::string& name() const { return name_; }
    double value_at(std::size_t point_index) const { return values_[point_index]; }
    std::size_t arity() const { return spectrum_.size(); }
    const std::vector<double>& spectrum() const { return spectrum_; }

    /// Level set of the k-th spectrum value (ascending order).
    Event cell(std::size_t k) const { return cells_[k]; }

    bool dichotomous() const { return spectrum_.size() == 2; }

private:
    std::string name_;
    std::vector<double> values_;
    std::vector<double> spectrum_;
    std::vector<Event> cells_;
};

/// Ordered family of disjoint exhaustive events, one per spectrum value.
struct Partition {
    std::vector<Event> cells;
    std::vector<double> values;
};

template <class S>
S measure(const FiniteSpace<S>& space, Event e) {
    space.check_event(e);
    S total = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < space.size(); ++i)
        if (e.contains(i)) total += space.weight(i);
    return total;
}

template <class S>
S cond_prob(const FiniteSpace<S>& space, Event a, Event given) {
    S pc = measure(space, given);
    if (scalar_traits<S>::is_zero(pc))
        throw degenerate_context_error("conditioning event " + space.event_label(given) +
                                       " has zero measure");
    return measure(space, a & given) / pc;
}

/// Level partition of a variable, cells in ascending spectrum order.
template <class S>
Partition level_partition(const FiniteSpace<S>& space, const RandomVariable& v) {
    if (space.size() == 0) throw model_error("empty space");
    Partition p;
    p.values = v.spectrum();
    for (std::size_t k = 0; k < v.arity(); ++k) p.cells.push_back(v.cell(k));
    return p;
}

/// P(B|C) minus the total-probability sum over the partition cells.
/// Identically zero; kept as a self-check oracle against the space itself.
template <class S>
S classical_ftp_residual(const FiniteSpace<S>& space, Event b, const Partition& cells, Event c) {
    std::vector<std::string> offending;
    for (std::size_t k = 0; k < cells.cells.size(); ++k)
        if (scalar_traits<S>::is_zero(measure(space, cells.cells[k] & c)))
            offending.push_back(space.event_label(cells.cells[k]));
    if (!offending.empty()) {
        std::string msg = "cells with zero mass inside the context: ";
        for (std::size_t i = 0; i < offending.size(); ++i)
            msg += (i ? ", " : "") + offending[i];
        throw degenerate_context_error(msg);
    }
    S lhs = cond_prob(space, b, c);
    S rhs = scalar_traits<S>::zero();
    for (const Event& cell : cells.cells)
        rhs += cond_prob(space, cell, c) * cond_prob(space, b, cell & c);
    return lhs - rhs;
}

}  // namespace kontext
