#include "orthokit/position_calculus.hpp"

#include <algorithm>

namespace orthokit {

PositionSeq::PositionSeq(std::vector<Position> items) : items_(std::move(items)) {
    for (std::size_t i = 0; i < items_.size(); ++i) {
        for (std::size_t j = i + 1; j < items_.size(); ++j) {
            if (items_[i] == items_[j]) {
                throw Error(ErrorKind::duplicate_position, items_[i].to_string());
            }
        }
    }
}

bool pos_leq(const Position& p, const Position& q) noexcept { return p.is_prefix_of(q); }

bool pos_parallel(const Position& p, const Position& q) noexcept { return !pos_leq(p, q) && !pos_leq(q, p); }

bool is_pp(std::span<const Position> seq) noexcept {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            if (!pos_parallel(seq[i], seq[j])) {
                return false;
            }
        }
    }
    return true;
}

PositionSeq sub_pos(const PositionSeq& seq, const Position& p) {
    std::vector<Position> out;
    for (const Position& q : seq) {
        if (pos_leq(p, q) && p != q) {
            out.push_back(q);
        }
    }
    return PositionSeq(std::move(out));
}

PositionSeq sub_pos_le(const PositionSeq& seq, const Position& p) {
    std::vector<Position> out;
    for (const Position& q : seq) {
        if (pos_leq(p, q)) {
            out.push_back(q);
        }
    }
    return PositionSeq(std::move(out));
}

PositionSeq pos_over(const PositionSeq& over, const PositionSeq& under) {
    std::vector<Position> out;
    for (const Position& q : over) {
        bool has_below = !sub_pos(under, q).empty();
        std::vector<Position> extended{q};
        extended.insert(extended.end(), under.begin(), under.end());
        if (has_below || is_pp(extended)) {
            out.push_back(q);
        }
    }
    return PositionSeq(std::move(out));
}

PositionSeq complement_pos(const Position& p, const PositionSeq& seq) {
    std::vector<Position> out;
    for (const Position& q : seq) {
        if (pos_leq(p, q) && p != q) {
            out.push_back(q.drop(p.length()));
        }
    }
    return PositionSeq(std::move(out));
}

PositionSeq complement_pos_le(const Position& p, const PositionSeq& seq) {
    std::vector<Position> out;
    for (const Position& q : seq) {
        if (pos_leq(p, q)) {
            out.push_back(q.drop(p.length()));
        }
    }
    return PositionSeq(std::move(out));
}

std::size_t index_of(const PositionSeq& seq, const Position& p) noexcept {
    auto it = std::find(seq.begin(), seq.end(), p);
    return static_cast<std::size_t>(it - seq.begin());
}

}  // namespace orthokit
