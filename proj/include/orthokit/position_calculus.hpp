#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "orthokit/error.hpp"
#include "orthokit/term.hpp"

namespace orthokit {

/// Ordered sequence of distinct positions.
class PositionSeq {
public:
    PositionSeq() = default;
    PositionSeq(std::initializer_list<Position> items) : PositionSeq(std::vector<Position>(items)) {}
    /// Throws duplicate_position if an element repeats.
    explicit PositionSeq(std::vector<Position> items);

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    const Position& operator[](std::size_t i) const { return items_[i]; }
    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }
    const std::vector<Position>& items() const noexcept { return items_; }

    friend bool operator==(const PositionSeq&, const PositionSeq&) = default;

private:
    std::vector<Position> items_;
};

bool pos_leq(const Position& p, const Position& q) noexcept;
bool pos_parallel(const Position& p, const Position& q) noexcept;

/// All pairs parallel (the empty and singleton sequences qualify).
bool is_pp(std::span<const Position> seq) noexcept;
inline bool is_pp(const PositionSeq& seq) noexcept { return is_pp(std::span<const Position>(seq.items())); }

/// Elements of `seq` strictly below `p`, order kept.
PositionSeq sub_pos(const PositionSeq& seq, const Position& p);
/// Elements of `seq` at or below `p`, order kept.
PositionSeq sub_pos_le(const PositionSeq& seq, const Position& p);

/// Elements q of `over` that have some element of `under` strictly below
/// them, or are parallel to every element of `under`.
PositionSeq pos_over(const PositionSeq& over, const PositionSeq& under);

/// Suffixes r with p·r = q for each q in `seq` strictly below `p`.
PositionSeq complement_pos(const Position& p, const PositionSeq& seq);
/// As complement_pos, but q = p contributes the root suffix.
PositionSeq complement_pos_le(const Position& p, const PositionSeq& seq);

/// 0-based index of `p` in `seq`, or seq.size() when absent.
std::size_t index_of(const PositionSeq& seq, const Position& p) noexcept;

/// For each element of `selected` found in `keys`, the value aligned with it.
template <typename V>
std::vector<V> choose_seq(const PositionSeq& selected, const PositionSeq& keys, std::span<const V> values) {
    if (keys.size() != values.size()) {
        throw Error(ErrorKind::length_mismatch, "choose_seq keys/values differ in length");
    }
    std::vector<V> out;
    for (const Position& p : selected) {
        std::size_t i = index_of(keys, p);
        if (i < keys.size()) {
            out.push_back(values[i]);
        }
    }
    return out;
}

template <typename V>
std::vector<V> choose_seq(const PositionSeq& selected, const PositionSeq& keys, const std::vector<V>& values) {
    return choose_seq(selected, keys, std::span<const V>(values));
}

}  // namespace orthokit
