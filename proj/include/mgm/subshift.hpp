#pragma once

// The golden-mean (Fibonacci) subshift: one-sided 0/1 sequences with no two
// consecutive ones, and the Markov measures on it given by the transition
// matrix ((p, 1-p), (1, 0)) started from its stationary vector.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "mgm/rng.hpp"

namespace mgm {

using Symbol = std::uint8_t;
using SymbolSpan = std::span<const Symbol>;

class MarkovParams {
public:
    // Throws DomainError unless 0 < p < 1.
    explicit MarkovParams(double p);

    double p() const { return p_; }

    // Row-stochastic transition matrix, indexed [from][to].
    const std::array<std::array<double, 2>, 2>& transition() const { return transition_; }
    double transition(Symbol from, Symbol to) const { return transition_[from][to]; }

    // Left fixed vector of the transition matrix: (1/(2-p), (1-p)/(2-p)).
    const std::array<double, 2>& stationary() const { return stationary_; }

private:
    double p_;
    std::array<std::array<double, 2>, 2> transition_;
    std::array<double, 2> stationary_;
};

// True iff every symbol is 0 or 1 and "11" does not occur.
// Throws InvalidAlphabetError on a symbol outside {0,1}.
bool is_admissible(SymbolSpan symbols);

// A finite word of the golden-mean shift. Construction validates the alphabet
// and admissibility, so every live instance is admissible.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Symbol> symbols);
    Word(std::initializer_list<int> symbols);

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    SymbolSpan symbols() const { return symbols_; }
    operator SymbolSpan() const { return symbols_; }

    // Number of ones among the first `prefix` symbols.
    std::size_t ones_count(std::size_t prefix) const;
    std::size_t ones_count() const { return ones_count(size()); }

    // The word with the first `k` symbols removed (shift map applied k times).
    Word shifted(std::size_t k) const;
    Word prefix(std::size_t k) const;
    Word reversed() const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Symbol> symbols_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 24;

// All admissible words of length n in lexicographic order (F_{n+2} of them).
// Throws CapacityError when n > cap.
std::vector<Word> enumerate_words(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

// Number of admissible words of length n, F_{n+2}.
std::uint64_t admissible_word_count(std::size_t n);

// Markov measure of the cylinder [s_1 ... s_n]: stationary(s_1) times the
// transition probabilities along the word. Inadmissible words get 0 and the
// empty word gets 1.
double cylinder_measure(SymbolSpan symbols, const MarkovParams& params);

// Entropy of the Markov measure in nats:
//     -( p/(2-p) log p + (1-p)/(2-p) log(1-p) ).
double parry_entropy(const MarkovParams& params);

// Draws symbols of the chain. The first symbol comes from the stationary
// vector; a one is always followed by a zero without consuming randomness.
class ChainSampler {
public:
    explicit ChainSampler(const MarkovParams& params);

    template <typename Out>
    void draw(Engine& eng, std::size_t n, Out&& out) const {
        if (n == 0) return;
        Symbol prev = eng() < first_one_ ? 1 : 0;
        out(std::size_t{0}, prev);
        for (std::size_t k = 1; k < n; ++k) {
            Symbol next = 0;
            if (prev == 0) next = eng() < zero_to_one_ ? 1 : 0;
            out(k, next);
            prev = next;
        }
    }

    // n further symbols of a chain whose last symbol was `prev`.
    template <typename Out>
    void draw_continuation(Engine& eng, Symbol prev, std::size_t n, Out&& out) const {
        for (std::size_t k = 0; k < n; ++k) {
            Symbol next = 0;
            if (prev == 0) next = eng() < zero_to_one_ ? 1 : 0;
            out(k, next);
            prev = next;
        }
    }

private:
    std::uint64_t first_one_;
    std::uint64_t zero_to_one_;
};

// A realization (X_1, ..., X_n) of the chain, deterministic in (params, n, seed).
Word sample_word(const MarkovParams& params, std::size_t n, std::uint64_t seed);
Word sample_word(const MarkovParams& params, std::size_t n, Engine& eng);

struct PrefixComparison {
    std::size_t common_prefix = 0;  // number of leading agreeing symbols
    double product_distance = 0.0;  // sum_k |s_k - t_k| 2^-k over the common length
};

// Compares s and t up to the shorter of their lengths.
PrefixComparison common_prefix_and_product_distance(SymbolSpan s, SymbolSpan t);

}  // namespace mgm
