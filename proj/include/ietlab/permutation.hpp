#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "ietlab/errors.hpp"

namespace ietlab {

// Combinatorial datum of an IET: an ordered alphabet of d labels and the two
// bijections (top, bottom) onto {1..d}.  Stored as the label orders, i.e.
// top_order[p] is the label occupying top position p (0-based internally).
class Permutation {
  public:
    Permutation() = default;
    Permutation(std::vector<std::string> labels, std::vector<std::size_t> top_order,
                std::vector<std::size_t> bottom_order)
        : labels_(std::move(labels)), top_(std::move(top_order)), bot_(std::move(bottom_order)) {
        validate();
    }

    // Build from label sequences: top row and bottom row, e.g. ({"A","B"},{"B","A"}).
    static Permutation from_rows(const std::vector<std::string>& top_row,
                                 const std::vector<std::string>& bottom_row) {
        if (top_row.size() != bottom_row.size() || top_row.size() < 2)
            throw DimensionMismatch("permutation rows must have equal size d >= 2");
        std::vector<std::string> labels = top_row;
        std::vector<std::size_t> top(labels.size()), bot(labels.size());
        for (std::size_t p = 0; p < labels.size(); ++p) top[p] = p;
        for (std::size_t p = 0; p < bottom_row.size(); ++p) {
            auto it = std::find(labels.begin(), labels.end(), bottom_row[p]);
            if (it == labels.end())
                throw ConfigError("bottom row label not in top row: " + bottom_row[p]);
            bot[p] = static_cast<std::size_t>(it - labels.begin());
        }
        return Permutation(std::move(labels), std::move(top), std::move(bot));
    }

    // Parse "A B C / C B A".
    static Permutation parse(const std::string& text) {
        std::vector<std::string> top_row, bottom_row;
        bool after_slash = false;
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            if (tok == "/") {
                after_slash = true;
                continue;
            }
            (after_slash ? bottom_row : top_row).push_back(tok);
        }
        if (!after_slash) throw ConfigError("permutation text needs 'top / bottom' rows");
        return from_rows(top_row, bottom_row);
    }

    // Canonical d-IET pair (id on top, given bottom positions 1..d as a
    // 0-based vector bottom_of_label[i] = position of label i).
    static Permutation from_bottom_positions(const std::vector<std::size_t>& bottom_pos) {
        std::size_t d = bottom_pos.size();
        std::vector<std::string> labels(d);
        for (std::size_t i = 0; i < d; ++i) labels[i] = std::string(1, char('A' + i));
        std::vector<std::size_t> top(d), bot(d);
        for (std::size_t i = 0; i < d; ++i) top[i] = i;
        for (std::size_t i = 0; i < d; ++i) bot[bottom_pos[i]] = i;
        return Permutation(std::move(labels), std::move(top), std::move(bot));
    }

    static Permutation symmetric(std::size_t d) {  // top = id, bottom = reversal
        std::vector<std::size_t> pos(d);
        for (std::size_t i = 0; i < d; ++i) pos[i] = d - 1 - i;
        return from_bottom_positions(pos);
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    // Label index occupying the given 0-based position.
    std::size_t top_at(std::size_t pos) const { return top_[pos]; }
    std::size_t bottom_at(std::size_t pos) const { return bot_[pos]; }
    // 0-based position of a label index.
    std::size_t top_pos(std::size_t label) const { return top_inv()[label]; }
    std::size_t bottom_pos(std::size_t label) const { return bot_inv()[label]; }

    std::size_t top_last() const { return top_.back(); }     // alpha_t
    std::size_t bottom_last() const { return bot_.back(); }  // alpha_b

    bool irreducible() const {
        std::size_t d = size();
        std::vector<bool> in_top(d, false), in_bot(d, false);
        for (std::size_t k = 0; k + 1 < d; ++k) {
            in_top[top_[k]] = true;
            in_bot[bot_[k]] = true;
            bool same = true;
            for (std::size_t i = 0; i < d && same; ++i) same = (in_top[i] == in_bot[i]);
            if (same) return false;
        }
        return true;
    }

    // sigma = pi_b o pi_t^{-1} on positions; rotation <=> sigma is a power of
    // the cyclic shift p -> p+1 (mod d).
    bool is_rotation() const {
        std::size_t d = size();
        std::size_t shift = (bottom_pos(top_[0]) + d - 0) % d;
        for (std::size_t p = 0; p < d; ++p)
            if (bottom_pos(top_[p]) != (p + shift) % d) return false;
        return true;
    }
    // Amount c such that pi_b(alpha) = pi_t(alpha) + c mod d, valid when is_rotation().
    std::size_t rotation_shift() const { return (bottom_pos(top_[0]) + size()) % size(); }

    // Key usable for hashing/set membership: bottom positions read along the top order.
    std::vector<std::size_t> shape() const {
        std::vector<std::size_t> s(size());
        for (std::size_t p = 0; p < size(); ++p) s[p] = bottom_pos(top_[p]);
        return s;
    }

    // Relabel so that the top row reads A, B, C, ... in order.
    Permutation canonical() const { return from_bottom_positions(shape()); }

    std::string to_string() const {
        std::string s;
        for (std::size_t p = 0; p < size(); ++p) {
            if (p) s += ' ';
            s += labels_[top_[p]];
        }
        s += " / ";
        for (std::size_t p = 0; p < size(); ++p) {
            if (p) s += ' ';
            s += labels_[bot_[p]];
        }
        return s;
    }

    bool operator==(const Permutation& o) const {
        return labels_ == o.labels_ && top_ == o.top_ && bot_ == o.bot_;
    }

    // In-place moves used by Rauzy induction (combinatorics only).
    // Top type: alpha_b is removed from the end of the bottom row and
    // reinserted right after alpha_t's bottom position.
    Permutation after_top_move() const {
        Permutation p = *this;
        std::size_t ab = bottom_last();
        std::size_t at_pos = bottom_pos(top_last());
        p.bot_.pop_back();
        p.bot_.insert(p.bot_.begin() + static_cast<std::ptrdiff_t>(at_pos) + 1, ab);
        p.invalidate();
        return p;
    }
    // Bottom type: alpha_t reinserted right after alpha_b's top position.
    Permutation after_bottom_move() const {
        Permutation p = *this;
        std::size_t at = top_last();
        std::size_t ab_pos = top_pos(bottom_last());
        p.top_.pop_back();
        p.top_.insert(p.top_.begin() + static_cast<std::ptrdiff_t>(ab_pos) + 1, at);
        p.invalidate();
        return p;
    }

  private:
    void validate() const {
        std::size_t d = labels_.size();
        if (d < 2) throw DimensionMismatch("need d >= 2 labels");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (labels_[i] == labels_[j]) throw ConfigError("duplicate label " + labels_[i]);
        auto check = [&](const std::vector<std::size_t>& v, const char* which) {
            if (v.size() != d) throw DimensionMismatch("row size mismatch");
            std::vector<bool> seen(d, false);
            for (std::size_t x : v) {
                if (x >= d || seen[x]) throw ConfigError(std::string(which) + " row not a bijection");
                seen[x] = true;
            }
        };
        check(top_, "top");
        check(bot_, "bottom");
    }

    void invalidate() {
        top_inv_.clear();
        bot_inv_.clear();
    }
    const std::vector<std::size_t>& top_inv() const {
        if (top_inv_.empty()) {
            top_inv_.resize(size());
            for (std::size_t p = 0; p < size(); ++p) top_inv_[top_[p]] = p;
        }
        return top_inv_;
    }
    const std::vector<std::size_t>& bot_inv() const {
        if (bot_inv_.empty()) {
            bot_inv_.resize(size());
            for (std::size_t p = 0; p < size(); ++p) bot_inv_[bot_[p]] = p;
        }
        return bot_inv_;
    }

    std::vector<std::string> labels_;
    std::vector<std::size_t> top_, bot_;  // position -> label index
    mutable std::vector<std::size_t> top_inv_, bot_inv_;
};

}  // namespace ietlab
