#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace multiport {

/// Error thrown on violated preconditions (non-bijective relabel maps,
/// malformed device parameters, index mismatches and the like).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Every variable is either the voltage or the current of a named edge.
/// Current labels model the primed copies (S", P") of the edge set.
enum class Kind : std::uint8_t { Voltage = 0, Current = 1 };

struct Label {
    std::string edge;
    Kind kind = Kind::Voltage;

    Label() = default;
    Label(std::string e, Kind k) : edge(std::move(e)), kind(k) {}

    static Label voltage(std::string e) { return {std::move(e), Kind::Voltage}; }
    static Label current(std::string e) { return {std::move(e), Kind::Current}; }

    /// Printable form, "v:edge" or "i:edge".
    std::string str() const {
        return (kind == Kind::Voltage ? "v:" : "i:") + edge;
    }

    friend bool operator==(const Label& a, const Label& b) {
        return a.kind == b.kind && a.edge == b.edge;
    }
    /// Canonical order: lexicographic by (edge, kind), voltage before current.
    friend bool operator<(const Label& a, const Label& b) {
        if (a.edge != b.edge) return a.edge < b.edge;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    }
};

/// Ordered set of distinct labels in canonical order. Two IndexSets with the
/// same label set compare equal and induce identical column orderings.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::vector<Label> labels);

    /// v and i labels for each edge, e.g. the set S ⊎ S".
    static IndexSet pair_set(const std::vector<std::string>& edges);
    static IndexSet voltages(const std::vector<std::string>& edges);
    static IndexSet currents(const std::vector<std::string>& edges);

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const std::vector<Label>& labels() const { return labels_; }
    const Label& at(std::size_t i) const { return labels_.at(i); }

    /// Column position of a label, if present.
    std::optional<std::size_t> position(const Label& l) const;
    bool contains(const Label& l) const { return position(l).has_value(); }
    bool contains_all(const IndexSet& other) const;

    IndexSet set_union(const IndexSet& other) const;
    IndexSet set_intersection(const IndexSet& other) const;
    IndexSet set_difference(const IndexSet& other) const;
    IndexSet symmetric_difference(const IndexSet& other) const;

    /// True when every edge contributes both its voltage and current label.
    bool is_pair_set() const;
    /// Edge names, deduplicated, in canonical order.
    std::vector<std::string> edges() const;

    friend bool operator==(const IndexSet& a, const IndexSet& b) {
        return a.labels_ == b.labels_;
    }
    friend bool operator!=(const IndexSet& a, const IndexSet& b) { return !(a == b); }

    std::string str() const;

private:
    std::vector<Label> labels_;  // sorted, distinct
};

/// Per-label sign in {+1, -1}; the K_{X(-Y)} notation of the paper.
struct SignMap {
    IndexSet index;
    std::vector<int> signs;  // aligned with index

    /// All +1 except the labels in `flip`, which get -1.
    static SignMap flipping(const IndexSet& on, const IndexSet& flip);
    int at(std::size_t i) const { return signs.at(i); }
};

/// A bijective renaming of labels; used for S -> S~ copies and for the
/// voltage/current interchange in the adjoint.
class LabelMap {
public:
    LabelMap() = default;

    void add(Label from, Label to);
    /// Swap v:e <-> i:e for every edge of a pair set.
    static LabelMap swap_kinds(const IndexSet& pair_set);
    /// Rename every edge via suffix, preserving kinds.
    static LabelMap rename_edges(const IndexSet& on, const std::string& suffix);

    const Label& apply(const Label& l) const;
    std::size_t size() const { return from_.size(); }
    /// Throws unless the map is a bijection with domain exactly `domain`.
    void validate_bijection_on(const IndexSet& domain) const;

private:
    std::vector<Label> from_;  // sorted
    std::vector<Label> to_;
};

}  // namespace multiport
