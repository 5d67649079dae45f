// SPDX-License-Identifier: Apache-2.0
#include "tracelang.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace hashcl {

Regex Regex::eps() { return Regex(Op::Eps); }

Regex Regex::symbol(std::string name)
{
    Regex r(Op::Symbol);
    r.name_ = std::move(name);
    return r;
}

Regex Regex::concat(std::vector<Regex> parts)
{
    std::vector<Regex> flat;
    for (auto& p : parts) {
        if (p.op_ == Op::Eps) continue;
        if (p.op_ == Op::Concat) {
            for (auto& c : p.children_) flat.push_back(c);
        } else {
            flat.push_back(std::move(p));
        }
    }
    if (flat.empty()) return eps();
    if (flat.size() == 1) return std::move(flat.front());
    Regex r(Op::Concat);
    r.children_ = std::move(flat);
    return r;
}

Regex Regex::alt(std::vector<Regex> options)
{
    std::vector<Regex> flat;
    for (auto& o : options) {
        if (o.op_ == Op::Alt) {
            for (auto& c : o.children_) flat.push_back(c);
        } else {
            flat.push_back(std::move(o));
        }
    }
    if (flat.size() == 1) return std::move(flat.front());
    Regex r(Op::Alt);
    r.children_ = std::move(flat);
    return r;
}

Regex Regex::star(Regex body)
{
    if (body.op_ == Op::Eps || body.op_ == Op::Star || body.op_ == Op::AnyStar) return body;
    Regex r(Op::Star);
    r.children_.push_back(std::move(body));
    return r;
}

Regex Regex::any_star(Alphabet symbols)
{
    if (symbols.empty()) return eps();
    Regex r(Op::AnyStar);
    r.symbols_ = std::move(symbols);
    return r;
}

void Regex::collect(Alphabet& out) const
{
    switch (op_) {
        case Op::Symbol: out.insert(name_); break;
        case Op::AnyStar: out.insert(symbols_.begin(), symbols_.end()); break;
        default:
            for (const auto& c : children_) c.collect(out);
    }
}

Alphabet Regex::occurring_symbols() const
{
    Alphabet out;
    collect(out);
    return out;
}

Regex Regex::erase_except(const Alphabet& keep) const
{
    switch (op_) {
        case Op::Eps: return *this;
        case Op::Symbol: return keep.count(name_) ? *this : eps();
        case Op::AnyStar: {
            Alphabet kept;
            for (const auto& s : symbols_) {
                if (keep.count(s)) kept.insert(s);
            }
            return any_star(std::move(kept));
        }
        case Op::Star: return star(children_.front().erase_except(keep));
        case Op::Concat:
        case Op::Alt: {
            std::vector<Regex> kids;
            kids.reserve(children_.size());
            for (const auto& c : children_) kids.push_back(c.erase_except(keep));
            return op_ == Op::Concat ? concat(std::move(kids)) : alt(std::move(kids));
        }
    }
    return *this;
}

// Precedence: 0 alternation, 1 concatenation, 2 postfix star / atoms.
std::string Regex::render_at(int precedence) const
{
    std::string out;
    switch (op_) {
        case Op::Eps: return "eps";
        case Op::Symbol: return name_;
        case Op::AnyStar: {
            if (symbols_.size() == 1) return *symbols_.begin() + "*";
            out = "(";
            bool first = true;
            for (const auto& s : symbols_) {
                if (!first) out += " | ";
                out += s;
                first = false;
            }
            return out + ")*";
        }
        case Op::Star: return children_.front().render_at(2) + "*";
        case Op::Concat:
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i) out += ' ';
                out += children_[i].render_at(2);
            }
            return precedence > 1 ? "(" + out + ")" : out;
        case Op::Alt:
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i) out += " | ";
                out += children_[i].render_at(1);
            }
            return precedence > 0 ? "(" + out + ")" : out;
    }
    return out;
}

std::string Regex::render() const { return render_at(0); }

int Nfa::symbol_index(const std::string& name) const
{
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end() || *it != name) return -1;
    return static_cast<int>(it - alphabet.begin());
}

std::vector<int> Nfa::closure(std::vector<int> seeds) const
{
    std::vector<char> seen(states.size(), 0);
    std::vector<int> out;
    while (!seeds.empty()) {
        int s = seeds.back();
        seeds.pop_back();
        if (seen[s]) continue;
        seen[s] = 1;
        out.push_back(s);
        for (int t : states[s].epsilon) seeds.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Nfa::accepts(const Word& word) const
{
    auto current = closure({start});
    for (const auto& sym : word) {
        int idx = symbol_index(sym);
        if (idx < 0) return false;
        std::vector<int> next;
        for (int s : current) {
            for (const auto& e : states[s].edges) {
                if (e.symbol == idx) next.push_back(e.target);
            }
        }
        current = closure(std::move(next));
        if (current.empty()) return false;
    }
    return std::binary_search(current.begin(), current.end(), accept);
}

namespace {

struct Fragment {
    int start;
    int accept;
};

class ThompsonBuilder {
public:
    explicit ThompsonBuilder(Nfa& nfa) : nfa_(nfa) {}

    Fragment build(const Regex& r)
    {
        using Op = Regex::Op;
        switch (r.op()) {
            case Op::Eps: {
                Fragment f{fresh(), fresh()};
                link(f.start, f.accept);
                return f;
            }
            case Op::Symbol: {
                Fragment f{fresh(), fresh()};
                nfa_.states[f.start].edges.push_back({nfa_.symbol_index(r.name()), f.accept});
                return f;
            }
            case Op::AnyStar: {
                Fragment f{fresh(), fresh()};
                for (const auto& s : r.symbols()) {
                    nfa_.states[f.start].edges.push_back({nfa_.symbol_index(s), f.start});
                }
                link(f.start, f.accept);
                return f;
            }
            case Op::Star: {
                Fragment body = build(r.children().front());
                Fragment f{fresh(), fresh()};
                link(f.start, body.start);
                link(f.start, f.accept);
                link(body.accept, body.start);
                link(body.accept, f.accept);
                return f;
            }
            case Op::Concat: {
                Fragment first = build(r.children().front());
                Fragment last = first;
                for (std::size_t i = 1; i < r.children().size(); ++i) {
                    Fragment next = build(r.children()[i]);
                    link(last.accept, next.start);
                    last = next;
                }
                return {first.start, last.accept};
            }
            case Op::Alt: {
                Fragment f{fresh(), fresh()};
                for (const auto& c : r.children()) {
                    Fragment option = build(c);
                    link(f.start, option.start);
                    link(option.accept, f.accept);
                }
                return f;
            }
        }
        return {fresh(), fresh()};
    }

private:
    int fresh()
    {
        nfa_.states.emplace_back();
        return static_cast<int>(nfa_.states.size()) - 1;
    }
    void link(int from, int to) { nfa_.states[from].epsilon.push_back(to); }

    Nfa& nfa_;
};

}  // namespace

Nfa compile_nfa(const Regex& regex, const Alphabet& alphabet)
{
    Nfa nfa;
    nfa.alphabet.assign(alphabet.begin(), alphabet.end());
    for (const auto& s : regex.occurring_symbols()) {
        if (!alphabet.count(s)) nfa.alphabet.push_back(s);
    }
    std::sort(nfa.alphabet.begin(), nfa.alphabet.end());
    ThompsonBuilder builder(nfa);
    Fragment f = builder.build(regex);
    nfa.start = f.start;
    nfa.accept = f.accept;
    return nfa;
}

TraceLang::TraceLang(Regex regex, Alphabet alphabet)
    : regex_(std::move(regex)), alphabet_(std::move(alphabet))
{
    for (const auto& s : regex_.occurring_symbols()) alphabet_.insert(s);
    nfa_ = std::make_shared<const Nfa>(compile_nfa(regex_, alphabet_));
}

TraceLang TraceLang::universal(Alphabet alphabet)
{
    Regex r = Regex::any_star(alphabet);
    return TraceLang(std::move(r), std::move(alphabet));
}

std::string TraceLang::render() const
{
    if (regex_.op() == Regex::Op::AnyStar && regex_.symbols() == alphabet_) return "Σ*";
    if (regex_.op() == Regex::Op::Eps && alphabet_.empty()) return "Σ*";
    return regex_.render();
}

TraceLang project(const TraceLang& lang, const Alphabet& keep)
{
    return TraceLang(lang.regex().erase_except(keep), keep);
}

std::optional<Word> inclusion_counterexample(const TraceLang& sub, const TraceLang& sup)
{
    const Nfa& a = sub.nfa();
    const Nfa& b = sup.nfa();

    // Subsets of `b` (the determinized supertype) are interned to ids.
    std::map<std::vector<int>, int> subset_ids;
    std::vector<std::vector<int>> subsets;
    auto intern = [&](std::vector<int> set) {
        auto [it, inserted] = subset_ids.emplace(set, static_cast<int>(subsets.size()));
        if (inserted) subsets.push_back(std::move(set));
        return it->second;
    };

    // Symbol translation from sub's alphabet into sup's (-1: absent, leads to the sink).
    std::vector<int> translate(a.alphabet.size());
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) translate[i] = b.symbol_index(a.alphabet[i]);

    std::map<std::pair<int, int>, std::size_t> seen;
    struct Node {
        int sub_state;
        int sup_subset;
        std::ptrdiff_t parent;
        int symbol;  // index in sub's alphabet
    };
    std::vector<Node> nodes;
    std::deque<std::size_t> queue;

    auto visit = [&](int q, int subset, std::ptrdiff_t parent, int symbol) {
        if (seen.emplace(std::make_pair(q, subset), nodes.size()).second) {
            nodes.push_back({q, subset, parent, symbol});
            queue.push_back(nodes.size() - 1);
        }
    };

    int start_subset = intern(b.closure({b.start}));
    for (int q : a.closure({a.start})) visit(q, start_subset, -1, -1);

    std::map<std::pair<int, int>, int> step_cache;
    auto step = [&](int subset, int sub_symbol) {
        auto key = std::make_pair(subset, sub_symbol);
        if (auto it = step_cache.find(key); it != step_cache.end()) return it->second;
        std::vector<int> next;
        int sym = translate[sub_symbol];
        if (sym >= 0) {
            for (int s : subsets[subset]) {
                for (const auto& e : b.states[s].edges) {
                    if (e.symbol == sym) next.push_back(e.target);
                }
            }
        }
        int id = intern(b.closure(std::move(next)));
        step_cache.emplace(key, id);
        return id;
    };

    while (!queue.empty()) {
        std::size_t idx = queue.front();
        queue.pop_front();
        const Node node = nodes[idx];
        const auto& sup_set = subsets[node.sup_subset];
        if (node.sub_state == a.accept &&
            !std::binary_search(sup_set.begin(), sup_set.end(), b.accept)) {
            Word word;
            for (std::ptrdiff_t at = static_cast<std::ptrdiff_t>(idx); at >= 0; at = nodes[at].parent) {
                if (nodes[at].symbol >= 0) word.push_back(a.alphabet[nodes[at].symbol]);
            }
            std::reverse(word.begin(), word.end());
            return word;
        }
        for (const auto& e : a.states[node.sub_state].edges) {
            int next_subset = step(node.sup_subset, e.symbol);
            for (int q : a.closure({e.target})) {
                visit(q, next_subset, static_cast<std::ptrdiff_t>(idx), e.symbol);
            }
        }
    }
    return std::nullopt;
}

bool includes(const TraceLang& sub, const TraceLang& sup)
{
    return !inclusion_counterexample(sub, sup).has_value();
}

bool equivalent(const TraceLang& a, const TraceLang& b) { return includes(a, b) && includes(b, a); }

std::string render_word(const Word& word)
{
    if (word.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += ' ';
        out += word[i];
    }
    return out;
}

}  // namespace hashcl
