#pragma once

#include <optional>
#include <vector>

#include "funnelkern/digraph.hpp"

namespace funnelkern {

enum class Label : char { fork = 'F', merge = 'M' };

// Partial vertex labeling. Labels are write-once: assigning a different label
// to an already labeled vertex throws. Storage is a dense array indexed by
// vertex id; ids beyond the current size read as unlabeled.
class Labeling {
public:
    Labeling() = default;
    explicit Labeling(int capacity) : state_(capacity, unset) {}

    bool is_labeled(VertexId v) const;
    std::optional<Label> get(VertexId v) const;
    void set(VertexId v, Label l);
    void erase(VertexId v);
    int labeled_count() const { return labeled_; }

    // true when every assignment of `base` is present here too
    bool extends(const Labeling& base) const;

    bool operator==(const Labeling& other) const;

private:
    static constexpr char unset = 0;
    std::vector<char> state_;
    int labeled_ = 0;
};

}  // namespace funnelkern
