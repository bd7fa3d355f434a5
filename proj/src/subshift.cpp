#include "mgm/subshift.hpp"

#include <cmath>
#include <string>

#include "mgm/errors.hpp"

namespace mgm {

MarkovParams::MarkovParams(double p) : p_(p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("Markov parameter p must lie in (0,1), got " + std::to_string(p));
    }
    transition_ = {{{p, 1.0 - p}, {1.0, 0.0}}};
    stationary_ = {1.0 / (2.0 - p), (1.0 - p) / (2.0 - p)};
}

bool is_admissible(SymbolSpan symbols) {
    bool admissible = true;
    Symbol prev = 0;
    for (Symbol s : symbols) {
        if (s > 1) {
            throw InvalidAlphabetError("symbol " + std::to_string(int(s)) + " is not in {0,1}");
        }
        if (s == 1 && prev == 1) admissible = false;
        prev = s;
    }
    return admissible;
}

Word::Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (!is_admissible(symbols_)) {
        throw DomainError("word contains the forbidden block 11");
    }
}

Word::Word(std::initializer_list<int> symbols) {
    symbols_.reserve(symbols.size());
    for (int s : symbols) {
        if (s != 0 && s != 1) {
            throw InvalidAlphabetError("symbol " + std::to_string(s) + " is not in {0,1}");
        }
        symbols_.push_back(static_cast<Symbol>(s));
    }
    if (!is_admissible(symbols_)) {
        throw DomainError("word contains the forbidden block 11");
    }
}

std::size_t Word::ones_count(std::size_t prefix) const {
    std::size_t count = 0;
    for (std::size_t k = 0; k < prefix && k < symbols_.size(); ++k) count += symbols_[k];
    return count;
}

Word Word::shifted(std::size_t k) const {
    Word w;
    if (k < symbols_.size()) w.symbols_.assign(symbols_.begin() + k, symbols_.end());
    return w;
}

Word Word::prefix(std::size_t k) const {
    Word w;
    w.symbols_.assign(symbols_.begin(), symbols_.begin() + std::min(k, symbols_.size()));
    return w;
}

Word Word::reversed() const {
    Word w;
    w.symbols_.assign(symbols_.rbegin(), symbols_.rend());
    return w;
}

std::vector<Word> enumerate_words(std::size_t n, std::size_t cap) {
    if (n > cap) {
        throw CapacityError("enumerate_words: length " + std::to_string(n) + " exceeds cap " +
                            std::to_string(cap));
    }
    std::vector<Word> out;
    out.reserve(admissible_word_count(n));
    std::vector<Symbol> buf(n);
    // Depth-first in lexicographic order: 0 before 1 at every position.
    auto recurse = [&](auto&& self, std::size_t k, Symbol prev) -> void {
        if (k == n) {
            out.emplace_back(buf);
            return;
        }
        buf[k] = 0;
        self(self, k + 1, 0);
        if (prev == 0) {
            buf[k] = 1;
            self(self, k + 1, 1);
        }
    };
    recurse(recurse, 0, 0);
    return out;
}

std::uint64_t admissible_word_count(std::size_t n) {
    // F_{n+2} with F_1 = F_2 = 1.
    std::uint64_t a = 1, b = 2;  // counts for n = 0 and n = 1
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t next = a + b;
        a = b;
        b = next;
    }
    return a;
}

double cylinder_measure(SymbolSpan symbols, const MarkovParams& params) {
    if (symbols.empty()) return 1.0;
    if (!is_admissible(symbols)) return 0.0;
    double mass = params.stationary()[symbols[0]];
    for (std::size_t k = 1; k < symbols.size(); ++k) {
        mass *= params.transition(symbols[k - 1], symbols[k]);
    }
    return mass;
}

double parry_entropy(const MarkovParams& params) {
    const double p = params.p();
    const double q = 1.0 - p;
    return -(p * std::log(p) + q * std::log(q)) / (2.0 - p);
}

ChainSampler::ChainSampler(const MarkovParams& params)
    : first_one_(bernoulli_threshold(params.stationary()[1])),
      zero_to_one_(bernoulli_threshold(params.transition(0, 1))) {}

Word sample_word(const MarkovParams& params, std::size_t n, Engine& eng) {
    std::vector<Symbol> symbols(n);
    ChainSampler(params).draw(eng, n, [&](std::size_t k, Symbol s) { symbols[k] = s; });
    return Word(std::move(symbols));
}

Word sample_word(const MarkovParams& params, std::size_t n, std::uint64_t seed) {
    Engine eng = make_engine(seed);
    return sample_word(params, n, eng);
}

PrefixComparison common_prefix_and_product_distance(SymbolSpan s, SymbolSpan t) {
    const std::size_t n = std::min(s.size(), t.size());
    PrefixComparison out;
    out.common_prefix = n;
    bool agreeing = true;
    double weight = 0.5;
    for (std::size_t k = 0; k < n; ++k, weight *= 0.5) {
        if (s[k] != t[k]) {
            if (agreeing) {
                out.common_prefix = k;
                agreeing = false;
            }
            out.product_distance += weight;
        }
    }
    return out;
}

}  // namespace mgm
