#include "multiport/labels.hpp"

#include <algorithm>
#include <sstream>

namespace multiport {

IndexSet::IndexSet(std::vector<Label> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    auto dup = std::adjacent_find(labels_.begin(), labels_.end());
    if (dup != labels_.end()) {
        throw Error("duplicate label in index set: " + dup->str());
    }
}

IndexSet IndexSet::pair_set(const std::vector<std::string>& edges) {
    std::vector<Label> ls;
    ls.reserve(edges.size() * 2);
    for (const auto& e : edges) {
        ls.push_back(Label::voltage(e));
        ls.push_back(Label::current(e));
    }
    return IndexSet(std::move(ls));
}

IndexSet IndexSet::voltages(const std::vector<std::string>& edges) {
    std::vector<Label> ls;
    ls.reserve(edges.size());
    for (const auto& e : edges) ls.push_back(Label::voltage(e));
    return IndexSet(std::move(ls));
}

IndexSet IndexSet::currents(const std::vector<std::string>& edges) {
    std::vector<Label> ls;
    ls.reserve(edges.size());
    for (const auto& e : edges) ls.push_back(Label::current(e));
    return IndexSet(std::move(ls));
}

std::optional<std::size_t> IndexSet::position(const Label& l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it != labels_.end() && *it == l) {
        return static_cast<std::size_t>(it - labels_.begin());
    }
    return std::nullopt;
}

bool IndexSet::contains_all(const IndexSet& other) const {
    return std::includes(labels_.begin(), labels_.end(), other.labels_.begin(),
                         other.labels_.end());
}

IndexSet IndexSet::set_union(const IndexSet& other) const {
    std::vector<Label> out;
    std::set_union(labels_.begin(), labels_.end(), other.labels_.begin(),
                   other.labels_.end(), std::back_inserter(out));
    IndexSet r;
    r.labels_ = std::move(out);
    return r;
}

IndexSet IndexSet::set_intersection(const IndexSet& other) const {
    std::vector<Label> out;
    std::set_intersection(labels_.begin(), labels_.end(), other.labels_.begin(),
                          other.labels_.end(), std::back_inserter(out));
    IndexSet r;
    r.labels_ = std::move(out);
    return r;
}

IndexSet IndexSet::set_difference(const IndexSet& other) const {
    std::vector<Label> out;
    std::set_difference(labels_.begin(), labels_.end(), other.labels_.begin(),
                        other.labels_.end(), std::back_inserter(out));
    IndexSet r;
    r.labels_ = std::move(out);
    return r;
}

IndexSet IndexSet::symmetric_difference(const IndexSet& other) const {
    std::vector<Label> out;
    std::set_symmetric_difference(labels_.begin(), labels_.end(),
                                  other.labels_.begin(), other.labels_.end(),
                                  std::back_inserter(out));
    IndexSet r;
    r.labels_ = std::move(out);
    return r;
}

bool IndexSet::is_pair_set() const {
    if (labels_.size() % 2 != 0) return false;
    for (std::size_t i = 0; i < labels_.size(); i += 2) {
        const Label& v = labels_[i];
        const Label& c = labels_[i + 1];
        if (v.kind != Kind::Voltage || c.kind != Kind::Current || v.edge != c.edge) {
            return false;
        }
    }
    return true;
}

std::vector<std::string> IndexSet::edges() const {
    std::vector<std::string> out;
    for (const auto& l : labels_) {
        if (out.empty() || out.back() != l.edge) out.push_back(l.edge);
    }
    // labels are sorted by edge first, so consecutive duplicates are the only ones
    return out;
}

std::string IndexSet::str() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (i) os << ", ";
        os << labels_[i].str();
    }
    os << "}";
    return os.str();
}

SignMap SignMap::flipping(const IndexSet& on, const IndexSet& flip) {
    if (!on.contains_all(flip)) {
        throw Error("sign flip labels not contained in index set");
    }
    SignMap m;
    m.index = on;
    m.signs.assign(on.size(), +1);
    for (const auto& l : flip.labels()) {
        m.signs[*on.position(l)] = -1;
    }
    return m;
}

void LabelMap::add(Label from, Label to) {
    auto it = std::lower_bound(from_.begin(), from_.end(), from);
    if (it != from_.end() && *it == from) {
        throw Error("relabel map defines " + from.str() + " twice");
    }
    auto idx = it - from_.begin();
    from_.insert(it, std::move(from));
    to_.insert(to_.begin() + idx, std::move(to));
}

LabelMap LabelMap::swap_kinds(const IndexSet& pair_set) {
    if (!pair_set.is_pair_set()) {
        throw Error("kind swap requires a voltage/current pair set");
    }
    LabelMap m;
    for (const auto& e : pair_set.edges()) {
        m.add(Label::voltage(e), Label::current(e));
        m.add(Label::current(e), Label::voltage(e));
    }
    return m;
}

LabelMap LabelMap::rename_edges(const IndexSet& on, const std::string& suffix) {
    LabelMap m;
    for (const auto& l : on.labels()) {
        m.add(l, Label(l.edge + suffix, l.kind));
    }
    return m;
}

const Label& LabelMap::apply(const Label& l) const {
    auto it = std::lower_bound(from_.begin(), from_.end(), l);
    if (it == from_.end() || !(*it == l)) {
        throw Error("relabel map does not cover " + l.str());
    }
    return to_[static_cast<std::size_t>(it - from_.begin())];
}

void LabelMap::validate_bijection_on(const IndexSet& domain) const {
    if (from_.size() != domain.size()) {
        throw Error("relabel map domain does not match index set");
    }
    for (const auto& l : domain.labels()) {
        auto it = std::lower_bound(from_.begin(), from_.end(), l);
        if (it == from_.end() || !(*it == l)) {
            throw Error("relabel map does not cover " + l.str());
        }
    }
    std::vector<Label> image = to_;
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
        throw Error("relabel map is not injective");
    }
}

}  // namespace multiport
