#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cfree {

/// Variable index, 0-based (letter `i` stands for x_{i+1} in printed output).
using Letter = std::uint32_t;

/// Multi-index indexing monomials, moments and cumulants.  The empty word is
/// the unit.
using Word = std::vector<Letter>;

/// Graded lexicographic order: shorter words first, then lexicographic.
struct GradedLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

Word reversed(const Word& w);
Word concat(const Word& a, const Word& b);
Word slice(const Word& w, std::size_t from, std::size_t to);
Word prepend(Letter i, const Word& w);
Word append(const Word& w, Letter i);
std::string to_string(const Word& w);  // 1-based, e.g. "(1,2,1)"

/// Dense enumeration of all words over `d` letters of length at most `N`, in
/// graded-lex order.  Index of a word of length n is offset(n) plus the
/// base-d value of its letters, first letter most significant.
class WordSpace {
public:
    /// Default bound on the number of words a single space may hold.
    static constexpr std::size_t kDefaultMaxSize = 10'000'000;

    WordSpace(std::size_t d, std::size_t N, std::size_t max_size = kDefaultMaxSize);

    std::size_t d() const { return d_; }
    std::size_t trunc_degree() const { return N_; }
    std::size_t size() const { return offsets_.back(); }

    /// Number of words of length n, i.e. d^n.
    std::size_t count(std::size_t n) const { return offsets_[n + 1] - offsets_[n]; }
    std::size_t offset(std::size_t n) const { return offsets_[n]; }

    std::size_t index(std::span<const Letter> w) const;
    Word word(std::size_t index) const;
    std::size_t degree(std::size_t index) const;

    /// Index of the concatenation of two words given by index.
    std::size_t concat_index(std::size_t a, std::size_t b) const;

    /// All words of degree exactly n, in order.
    std::vector<Word> words_of_degree(std::size_t n) const;
    /// All words of degree at most n, in order.
    std::vector<Word> words_up_to(std::size_t n) const;

    /// Σ_{k ≤ N} d^k, saturating at SIZE_MAX on overflow.
    static std::size_t total_words(std::size_t d, std::size_t N);

private:
    std::size_t d_;
    std::size_t N_;
    std::vector<std::size_t> offsets_;  // offsets_[n] = Σ_{k<n} d^k
    std::vector<std::size_t> powers_;   // powers_[n] = d^n
};

}  // namespace cfree
