#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ietlab/matrix.hpp"
#include "ietlab/rauzy.hpp"

namespace ietlab {

// Words are strings over 'A', 'B', ...; letter index i <-> char 'A' + i.
inline char letter_char(std::size_t i) { return static_cast<char>('A' + i); }
inline std::size_t letter_index(char c) { return static_cast<std::size_t>(c - 'A'); }

// Substitution: letter -> nonempty word, extended to words by concatenation.
class Substitution {
  public:
    Substitution() = default;
    explicit Substitution(std::vector<std::string> images) : images_(std::move(images)) {
        for (const auto& w : images_)
            if (w.empty()) throw ConfigError("substitution image must be nonempty");
    }

    static Substitution identity(std::size_t d) {
        std::vector<std::string> im(d);
        for (std::size_t i = 0; i < d; ++i) im[i] = std::string(1, letter_char(i));
        return Substitution(std::move(im));
    }

    // The Rauzy dictionary: top type maps the loser alpha_b to alpha_b
    // alpha_t; bottom type maps the loser alpha_t to alpha_b alpha_t (the
    // paper's dot marking past/future is dropped; one-sided codings only).
    static Substitution from_step(const RauzyStep& s) {
        std::size_t d = s.from.size();
        Substitution z = identity(d);
        std::size_t at = (s.kind == StepKind::Top) ? s.winner : s.loser;
        std::size_t ab = (s.kind == StepKind::Top) ? s.loser : s.winner;
        std::string w{letter_char(ab), letter_char(at)};
        z.images_[s.kind == StepKind::Top ? ab : at] = w;
        return z;
    }

    std::size_t size() const { return images_.size(); }
    const std::string& image(std::size_t letter) const { return images_[letter]; }
    const std::vector<std::string>& images() const { return images_; }

    std::string apply(const std::string& word) const {
        std::string out;
        for (char c : word) out += images_[letter_index(c)];
        return out;
    }

    // (this o other)(a) = this(other(a))
    Substitution compose(const Substitution& other) const {
        if (size() != other.size()) throw DimensionMismatch("alphabet mismatch in composition");
        std::vector<std::string> im(other.size());
        for (std::size_t i = 0; i < other.size(); ++i) im[i] = apply(other.image(i));
        return Substitution(std::move(im));
    }

    // S(a, b) = number of symbols a in image(b)
    IntMatrix matrix() const {
        std::size_t d = size();
        IntMatrix s(d);
        for (std::size_t b = 0; b < d; ++b)
            for (char c : images_[b]) s(letter_index(c), b) += 1;
        return s;
    }

    // Membership in the admissible class: every letter appears among the
    // images and some image is longer than one letter.
    bool in_class_a() const {
        std::size_t d = size();
        std::vector<bool> seen(d, false);
        bool longer = false;
        for (const auto& w : images_) {
            if (w.size() > 1) longer = true;
            for (char c : w) {
                std::size_t i = letter_index(c);
                if (i >= d) return false;
                seen[i] = true;
            }
        }
        return longer && std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }

    std::size_t max_image_length() const {
        std::size_t m = 0;
        for (const auto& w : images_) m = std::max(m, w.size());
        return m;
    }
    std::size_t min_image_length() const {
        std::size_t m = images_.empty() ? 0 : images_[0].size();
        for (const auto& w : images_) m = std::min(m, w.size());
        return m;
    }

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::object();
        for (std::size_t i = 0; i < size(); ++i) j[std::string(1, letter_char(i))] = images_[i];
        return j;
    }
    static Substitution from_json(const nlohmann::json& j) {
        std::vector<std::string> im(j.size());
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::size_t i = letter_index(it.key()[0]);
            if (i >= im.size()) throw ConfigError("substitution json has a gap in letters");
            im[i] = it.value().get<std::string>();
        }
        return Substitution(std::move(im));
    }

    bool operator==(const Substitution& o) const { return images_ == o.images_; }

  private:
    std::vector<std::string> images_;
};

// zeta^{[k]} = zeta_1 o zeta_2 o ... o zeta_k
inline Substitution compose_all(const std::vector<Substitution>& zs) {
    if (zs.empty()) throw ConfigError("empty substitution sequence");
    Substitution acc = zs.front();
    for (std::size_t i = 1; i < zs.size(); ++i) acc = acc.compose(zs[i]);
    return acc;
}

inline std::vector<Int> population_vector(const std::string& word, std::size_t d) {
    std::vector<Int> v(d, Int(0));
    for (char c : word) {
        std::size_t i = letter_index(c);
        if (i >= d) throw OutOfDomain("letter outside alphabet");
        v[i] += 1;
    }
    return v;
}

inline double tiling_length(const std::string& word, const std::vector<double>& s) {
    double t = 0;
    for (char c : word) t += s[letter_index(c)];
    return t;
}

inline Rational tiling_length_exact(const std::string& word, const std::vector<Rational>& s) {
    Rational t(0);
    for (char c : word) t += s[letter_index(c)];
    return t;
}

// Good return words: v starting with letter c such that vc occurs in every
// image.  Exhaustive over subwords of the shortest image up to the cap
// max_alpha |zeta(alpha)| (lossless for a single substitution; a documented
// heuristic for compositions).
inline std::vector<std::string> good_return_words(const Substitution& z) {
    std::size_t cap = z.max_image_length();
    const std::string* shortest = &z.image(0);
    for (std::size_t i = 1; i < z.size(); ++i)
        if (z.image(i).size() < shortest->size()) shortest = &z.image(i);
    std::set<std::string> candidates;
    for (std::size_t i = 0; i < shortest->size(); ++i)
        for (std::size_t len = 1; len <= cap && i + len <= shortest->size(); ++len)
            candidates.insert(shortest->substr(i, len));
    std::vector<std::string> out;
    for (const auto& v : candidates) {
        std::string u = v + v[0];
        bool good = true;
        for (std::size_t a = 0; a < z.size() && good; ++a)
            good = z.image(a).find(u) != std::string::npos;
        if (good) out.push_back(v);
    }
    return out;
}

}  // namespace ietlab
