// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "parser.hpp"
#include "registry.hpp"
#include "tracelang.hpp"
#include "types.hpp"

namespace hashcl::testing {

inline std::filesystem::path corpus(const std::string& rel)
{
    return std::filesystem::path(HASHCL_CORPUS_DIR) / rel;
}

inline std::string read_text(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline AbstractConfig parse_abstract(std::string_view src)
{
    return std::get<AbstractConfig>(parse(src));
}

inline ConcreteConfig parse_concrete(std::string_view src)
{
    return std::get<ConcreteConfig>(parse(src));
}

inline Registry registry_of(const std::vector<std::string>& sources)
{
    Registry::Builder b;
    for (const auto& s : sources) b.add_source(s);
    return b.build();
}

// Channel universe; `impls` selects which ChannelImpl<i> are deployed.
inline std::vector<std::string> channel_sources(const std::vector<int>& impls = {})
{
    std::vector<std::string> out = {
        "synchronizer Channel [E: Environment, D: Data] begin unit send unit recv end",
        "environment MPIBasic begin unit process end",
        "environment MPIFull extends MPIBasic begin unit process end",
        "data Data begin unit element end",
        "data Vector extends Data begin unit element end",
    };
    const char* heads[] = {"MPIFull, D: Vector", "MPIBasic, D: Vector", "MPIFull, D: Data", "MPIBasic, D: Data"};
    for (int i : impls) {
        out.push_back("synchronizer ChannelImpl" + std::to_string(i) + " [E: " + heads[i - 1] +
                      "] implements Channel[E, D] version 1.0.0." + std::to_string(i) +
                      " begin unit send begin end unit recv begin end end");
    }
    return out;
}

inline ComponentType demand(const Registry& reg, std::string_view expr)
{
    return demand_type(parse_type_expression(expr), reg);
}

// ---------------------------------------------------------------------------
// Bounded-language oracle: the set of words of length <= cap, computed by
// structural recursion over the regex without any automaton.

using WordSet = std::set<Word>;

inline WordSet all_words(const Alphabet& sigma, std::size_t cap)
{
    WordSet out{{}};
    std::vector<Word> frontier{{}};
    for (std::size_t len = 0; len < cap; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            for (const auto& a : sigma) {
                Word v = w;
                v.push_back(a);
                out.insert(v);
                next.push_back(std::move(v));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

inline WordSet concat_capped(const WordSet& a, const WordSet& b, std::size_t cap)
{
    WordSet out;
    for (const auto& x : a) {
        for (const auto& y : b) {
            if (x.size() + y.size() > cap) continue;
            Word w = x;
            w.insert(w.end(), y.begin(), y.end());
            out.insert(std::move(w));
        }
    }
    return out;
}

inline WordSet bounded_language(const Regex& r, std::size_t cap)
{
    switch (r.op()) {
    case Regex::Op::Eps:
        return {{}};
    case Regex::Op::Symbol:
        return cap == 0 ? WordSet{} : WordSet{{r.name()}};
    case Regex::Op::Concat: {
        WordSet acc{{}};
        for (const auto& c : r.children()) acc = concat_capped(acc, bounded_language(c, cap), cap);
        return acc;
    }
    case Regex::Op::Alt: {
        WordSet acc;
        for (const auto& c : r.children()) {
            auto part = bounded_language(c, cap);
            acc.insert(part.begin(), part.end());
        }
        return acc;
    }
    case Regex::Op::Star: {
        WordSet body = bounded_language(r.children().front(), cap);
        WordSet acc{{}};
        for (;;) {
            WordSet grown = concat_capped(acc, body, cap);
            grown.insert(acc.begin(), acc.end());
            if (grown == acc) return acc;
            acc = std::move(grown);
        }
    }
    case Regex::Op::AnyStar:
        return all_words(r.symbols(), cap);
    }
    return {};
}

inline Word erase_word(const Word& w, const Alphabet& keep)
{
    Word out;
    for (const auto& a : w)
        if (keep.count(a)) out.push_back(a);
    return out;
}

inline bool bounded_includes(const WordSet& sub, const WordSet& sup)
{
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

// Random regex over `sigma`, depth-limited.
inline Regex random_regex(std::mt19937& rng, const std::vector<std::string>& sigma, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
    std::uniform_int_distribution<std::size_t> sym(0, sigma.size() - 1);
    switch (pick(rng)) {
    case 0:
        return Regex::symbol(sigma[sym(rng)]);
    case 1:
        return std::uniform_int_distribution<int>(0, 5)(rng) == 0 ? Regex::eps() : Regex::symbol(sigma[sym(rng)]);
    case 2:
    case 3:
        return Regex::concat({random_regex(rng, sigma, depth - 1), random_regex(rng, sigma, depth - 1)});
    case 4:
        return Regex::alt({random_regex(rng, sigma, depth - 1), random_regex(rng, sigma, depth - 1)});
    default:
        return Regex::star(random_regex(rng, sigma, depth - 1));
    }
}

// ---------------------------------------------------------------------------
// Random hierarchy universes. Every abstract is emitted as source text so the
// generated universe goes through the same parse/type/link path as real files.

struct RandomUniverse {
    std::vector<std::string> sources;
    std::vector<std::string> demands;  // closed type expressions
};

inline RandomUniverse random_universe(std::mt19937& rng)
{
    RandomUniverse u;
    auto coin = [&](int percent) { return std::uniform_int_distribution<int>(0, 99)(rng) < percent; };
    auto below = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    const std::size_t budget = 20;
    std::size_t used = 0;

    // Data forest: nodes with parent index (or none) and depth <= 5.
    struct Node {
        std::string name;
        int parent;
        int depth;
    };
    std::vector<Node> data;
    const std::size_t data_count = 3 + below(7);
    for (std::size_t i = 0; i < data_count && used < budget - 4; ++i, ++used) {
        int parent = -1;
        if (!data.empty() && coin(70)) {
            int cand = static_cast<int>(below(data.size()));
            if (data[cand].depth < 5) parent = cand;
        }
        Node n{"D" + std::to_string(i), parent, parent < 0 ? 1 : data[parent].depth + 1};
        u.sources.push_back("data " + n.name + (parent < 0 ? "" : " extends " + data[parent].name) +
                            " begin unit value end");
        data.push_back(n);
    }
    auto data_ancestors = [&](int i) {
        std::vector<int> out;
        for (int k = i; k >= 0; k = data[k].parent) out.push_back(k);
        return out;
    };
    auto root_of = [&](int i) { return data_ancestors(i).back(); };

    // Environment chain with one parameter bounded by Data's kind Top.
    std::vector<std::string> envs;
    const std::size_t env_count = 1 + below(3);
    for (std::size_t i = 0; i < env_count && used < budget - 2; ++i, ++used) {
        std::string name = "Env" + std::to_string(i);
        std::string ext = envs.empty() ? "" : " extends " + envs.back();
        u.sources.push_back("environment " + name + " [T: Data]" + ext + " begin unit process end");
        envs.push_back(name);
    }

    // Synchronizers with up to 4 parameters; some with a deployed implementation.
    struct Param {
        bool env;
        int data_root;  // for data params
    };
    std::size_t comp_index = 0;
    while (used + 1 < budget) {
        std::string name = "S" + std::to_string(comp_index++);
        const std::size_t arity = below(5);
        std::vector<Param> params;
        std::string head = "synchronizer " + name;
        if (arity > 0) {
            head += " [";
            for (std::size_t p = 0; p < arity; ++p) {
                Param pr{coin(25), root_of(static_cast<int>(below(data.size())))};
                params.push_back(pr);
                if (p) head += ", ";
                head += "P" + std::to_string(p) + ": ";
                head += pr.env ? "Environment" : (coin(30) ? std::string("Data") : data[pr.data_root].name);
            }
            head += "]";
        }
        u.sources.push_back(head + " begin unit run end");
        ++used;

        // Pick a random member under each parameter's root.
        auto member_under = [&](int root) {
            std::vector<int> members;
            for (std::size_t k = 0; k < data.size(); ++k)
                if (root_of(static_cast<int>(k)) == root) members.push_back(static_cast<int>(k));
            return members[below(members.size())];
        };
        auto arg_text = [&](const Param& pr) {
            if (pr.env) return envs[below(envs.size())] + "[" + data[below(data.size())].name + "]";
            return data[member_under(pr.data_root)].name;
        };

        for (int d = 0; d < 3; ++d) {
            std::string expr = name;
            if (!params.empty()) {
                expr += "[";
                for (std::size_t p = 0; p < params.size(); ++p) expr += (p ? ", " : "") + arg_text(params[p]);
                expr += "]";
            }
            u.demands.push_back(expr);
        }

        if (coin(50) && used < budget) {
            std::string impl = "synchronizer " + name + "Impl";
            std::string target = name;
            if (!params.empty()) {
                impl += " [";
                target += "[";
                for (std::size_t p = 0; p < params.size(); ++p) {
                    std::string a = "Q" + std::to_string(p);
                    impl += (p ? ", " : "") + a + ": " + arg_text(params[p]);
                    target += (p ? ", " : "") + a;
                }
                impl += "]";
                target += "]";
            }
            u.sources.push_back(impl + " implements " + target + " version 1.0.0.0 begin unit run begin end end");
        }
    }
    return u;
}

}  // namespace hashcl::testing
