// SPDX-License-Identifier: Apache-2.0
#pragma once

// Trace languages of units: regular expressions over slice labels, their
// automata, erasing projection and language inclusion.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hashcl {

using Alphabet = std::set<std::string>;
using Word = std::vector<std::string>;

class Regex {
public:
    enum class Op { Eps, Symbol, Concat, Alt, Star, AnyStar };

    static Regex eps();
    static Regex symbol(std::string name);
    static Regex concat(std::vector<Regex> parts);
    static Regex alt(std::vector<Regex> options);
    static Regex star(Regex body);
    // (s1 | ... | sn)* over an explicit symbol set; the empty set yields eps.
    static Regex any_star(Alphabet symbols);

    Op op() const { return op_; }
    const std::string& name() const { return name_; }
    const std::vector<Regex>& children() const { return children_; }
    const Alphabet& symbols() const { return symbols_; }

    Alphabet occurring_symbols() const;

    // Image under the homomorphism that maps every symbol outside `keep` to
    // the empty word.
    Regex erase_except(const Alphabet& keep) const;

    // Surface syntax: juxtaposition, '|', '*', parentheses, eps.
    std::string render() const;

    friend bool operator==(const Regex&, const Regex&) = default;

private:
    Regex(Op op) : op_(op) {}
    void collect(Alphabet& out) const;
    std::string render_at(int precedence) const;

    Op op_;
    std::string name_;
    std::vector<Regex> children_;
    Alphabet symbols_;
};

// Thompson automaton with a single accepting state.
struct Nfa {
    struct Edge {
        int symbol;  // index into `alphabet`
        int target;
    };
    struct State {
        std::vector<Edge> edges;
        std::vector<int> epsilon;
    };

    std::vector<std::string> alphabet;  // sorted
    std::vector<State> states;
    int start = 0;
    int accept = 0;

    int symbol_index(const std::string& name) const;  // -1 when absent
    std::vector<int> closure(std::vector<int> seeds) const;
    bool accepts(const Word& word) const;
};

Nfa compile_nfa(const Regex& regex, const Alphabet& alphabet);

class TraceLang {
public:
    // The alphabet is widened to include every symbol the regex mentions.
    TraceLang(Regex regex, Alphabet alphabet);

    // Σ* over the given alphabet; the meaning of an absent action.
    static TraceLang universal(Alphabet alphabet);

    const Regex& regex() const { return regex_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const Nfa& nfa() const { return *nfa_; }

    bool accepts(const Word& word) const { return nfa_->accepts(word); }

    // "Σ*" when the language is the universal one over its alphabet.
    std::string render() const;

    friend bool operator==(const TraceLang& a, const TraceLang& b)
    {
        return a.regex_ == b.regex_ && a.alphabet_ == b.alphabet_;
    }

private:
    Regex regex_;
    Alphabet alphabet_;
    std::shared_ptr<const Nfa> nfa_;
};

TraceLang project(const TraceLang& lang, const Alphabet& keep);

// Shortest word of `sub` that `sup` rejects, if any.
std::optional<Word> inclusion_counterexample(const TraceLang& sub, const TraceLang& sup);

bool includes(const TraceLang& sub, const TraceLang& sup);
bool equivalent(const TraceLang& a, const TraceLang& b);

std::string render_word(const Word& word);

}  // namespace hashcl
