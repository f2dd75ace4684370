#include "funnelkern/labeling.hpp"

#include <stdexcept>
#include <string>

namespace funnelkern {

bool Labeling::is_labeled(VertexId v) const {
    return v >= 0 && v < static_cast<int>(state_.size()) && state_[v] != unset;
}

std::optional<Label> Labeling::get(VertexId v) const {
    if (!is_labeled(v)) return std::nullopt;
    return static_cast<Label>(state_[v]);
}

void Labeling::set(VertexId v, Label l) {
    if (v < 0) throw std::invalid_argument("negative vertex id");
    if (v >= static_cast<int>(state_.size())) state_.resize(v + 1, unset);
    if (state_[v] == static_cast<char>(l)) return;
    if (state_[v] != unset)
        throw std::logic_error("relabeling vertex " + std::to_string(v));
    state_[v] = static_cast<char>(l);
    ++labeled_;
}

void Labeling::erase(VertexId v) {
    if (!is_labeled(v)) return;
    state_[v] = unset;
    --labeled_;
}

bool Labeling::extends(const Labeling& base) const {
    for (VertexId v = 0; v < static_cast<int>(base.state_.size()); ++v)
        if (base.state_[v] != unset && get(v) != base.get(v)) return false;
    return true;
}

bool Labeling::operator==(const Labeling& other) const {
    if (labeled_ != other.labeled_) return false;
    return extends(other) && other.extends(*this);
}

}  // namespace funnelkern
