#include "cfree/word.hpp"

#include <algorithm>
#include <limits>

#include "cfree/error.hpp"

namespace cfree {

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word concat(const Word& a, const Word& b) {
    Word out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
    return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

Word prepend(Letter i, const Word& w) {
    Word out;
    out.reserve(w.size() + 1);
    out.push_back(i);
    out.insert(out.end(), w.begin(), w.end());
    return out;
}

Word append(const Word& w, Letter i) {
    Word out = w;
    out.push_back(i);
    return out;
}

std::string to_string(const Word& w) {
    std::string s = "(";
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(w[k] + 1);
    }
    return s + ")";
}

std::size_t WordSpace::total_words(std::size_t d, std::size_t N) {
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    std::size_t total = 0;
    std::size_t p = 1;
    for (std::size_t n = 0; n <= N; ++n) {
        if (total > kMax - p) return kMax;
        total += p;
        if (n < N) {
            if (d != 0 && p > kMax / d) return kMax;
            p *= d;
        }
    }
    return total;
}

WordSpace::WordSpace(std::size_t d, std::size_t N, std::size_t max_size) : d_(d), N_(N) {
    if (d == 0) throw PreconditionError("number of variables must be positive");
    const std::size_t total = total_words(d, N);
    if (total > max_size) {
        throw PreconditionError("coefficient count sum_{k<=" + std::to_string(N) + "} " + std::to_string(d) +
                                "^k exceeds the limit " + std::to_string(max_size));
    }
    offsets_.resize(N + 2);
    powers_.resize(N + 1);
    offsets_[0] = 0;
    std::size_t p = 1;
    for (std::size_t n = 0; n <= N; ++n) {
        powers_[n] = p;
        offsets_[n + 1] = offsets_[n] + p;
        p *= d;
    }
}

std::size_t WordSpace::index(std::span<const Letter> w) const {
    if (w.size() > N_) throw TruncationError("word of length " + std::to_string(w.size()) + " exceeds truncation " + std::to_string(N_));
    std::size_t v = 0;
    for (Letter l : w) {
        if (l >= d_) throw IndexOutOfRange("letter " + std::to_string(l + 1) + " outside 1.." + std::to_string(d_));
        v = v * d_ + l;
    }
    return offsets_[w.size()] + v;
}

std::size_t WordSpace::degree(std::size_t index) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
    return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

Word WordSpace::word(std::size_t index) const {
    const std::size_t n = degree(index);
    std::size_t v = index - offsets_[n];
    Word w(n);
    for (std::size_t k = n; k-- > 0;) {
        w[k] = static_cast<Letter>(v % d_);
        v /= d_;
    }
    return w;
}

std::size_t WordSpace::concat_index(std::size_t a, std::size_t b) const {
    const std::size_t na = degree(a);
    const std::size_t nb = degree(b);
    if (na + nb > N_) throw TruncationError("concatenation exceeds truncation degree");
    const std::size_t va = a - offsets_[na];
    const std::size_t vb = b - offsets_[nb];
    return offsets_[na + nb] + va * powers_[nb] + vb;
}

std::vector<Word> WordSpace::words_of_degree(std::size_t n) const {
    std::vector<Word> out;
    if (n > N_) return out;
    out.reserve(powers_[n]);
    for (std::size_t i = offsets_[n]; i < offsets_[n + 1]; ++i) out.push_back(word(i));
    return out;
}

std::vector<Word> WordSpace::words_up_to(std::size_t n) const {
    std::vector<Word> out;
    const std::size_t top = std::min(n, N_);
    for (std::size_t i = 0; i < offsets_[top + 1]; ++i) out.push_back(word(i));
    return out;
}

}  // namespace cfree
