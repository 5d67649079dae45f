// SPDX-License-Identifier: Apache-2.0
#include "resolver.hpp"

#include <sstream>

namespace hashcl {

ComponentType as_demand(const ComponentType& t)
{
    if (t.is_hash()) return t;
    if (t.is_shape() && !t.origin().empty()) return ComponentType::hash(HashType{t, {}, {}});
    throw Error(ErrorCode::InvalidArgument, render_nominal(t) + " is not an application of an abstract component");
}

namespace {

void mark(const ComponentType& node, NodePath& path, const std::string& label, std::vector<ChainNode>& out)
{
    if (node.is_hash()) {
        const HashType& h = node.as_hash();
        for (std::size_t i = 0; i < h.args.size(); ++i) {
            std::string name = h.base.is_abstract() ? h.base.as_abstract().bounds[i].var : std::to_string(i + 1);
            path.push_back(i);
            mark(h.args[i], path, label.empty() ? name : label + "." + name, out);
            path.pop_back();
        }
    }
    if (!path.empty()) out.push_back({path, label});
}

const ComponentType& at(const ComponentType& root, const NodePath& path, std::size_t depth = 0)
{
    if (depth == path.size()) return root;
    return at(root.as_hash().args[path[depth]], path, depth + 1);
}

ComponentType replaced(const ComponentType& root, const NodePath& path, const ComponentType& value,
                       std::size_t depth = 0)
{
    if (depth == path.size()) return value;
    HashType h = root.as_hash();
    h.args[path[depth]] = replaced(h.args[path[depth]], path, value, depth + 1);
    return ComponentType::hash(std::move(h));
}

class Traversal {
public:
    Traversal(const ComponentType& ctop, const Registry& reg, std::size_t limit)
        : reg_(reg), limit_(limit), original_(ctop), working_(ctop)
    {
        out_.demand = ctop;
        out_.chain = sort_parameters(ctop);
        out_.visited.push_back(ctop);
    }

    ResolveOutcome run()
    {
        // next of CTop is the last-marked parameter.
        try_generalize(static_cast<long>(out_.chain.size()) - 1);
        if (auto impl = implementation_of(working_, reg_)) {
            out_.implementation = impl;
            out_.generalized = working_;
        }
        return std::move(out_);
    }

private:
    bool has_implementation() const { return implementation_of(working_, reg_).has_value(); }

    void visit()
    {
        if (++out_.visits > limit_) {
            throw Error(ErrorCode::ResolutionLimit,
                        "resolution examined more than " + std::to_string(limit_) + " candidate demands");
        }
        if (!(out_.visited.back() == working_)) out_.visited.push_back(working_);
    }

    // Index into the chain; -1 plays the role of null.
    void try_generalize(long index)
    {
        if (index < 0) {
            visit();
            return;
        }
        if (has_implementation()) return;
        const NodePath& path = out_.chain[static_cast<std::size_t>(index)].path;
        ComponentType candidate = at(original_, path);  // reset C
        while (true) {
            working_ = replaced(working_, path, candidate);
            try_generalize(index - 1);
            if (candidate.is_top()) break;
            candidate = least_proper_supertype(at(working_, path), reg_);
            if (candidate.is_top() || has_implementation()) break;
        }
    }

    const Registry& reg_;
    std::size_t limit_;
    ComponentType original_;
    ComponentType working_;
    ResolveOutcome out_{ComponentType::top(Kind::Data), {}, {}, 0, std::nullopt, std::nullopt};
};

}  // namespace

std::vector<ChainNode> sort_parameters(const ComponentType& ctop)
{
    std::vector<ChainNode> out;
    NodePath path;
    mark(ctop, path, "", out);
    return out;
}

ResolveOutcome explore(const ComponentType& ctop, const Registry& reg, std::size_t limit)
{
    ComponentType demand = as_demand(ctop);
    if (demand.origin().empty() || !reg.find_abstract(demand.origin())) {
        throw Error(ErrorCode::UnknownConfig, "unknown configuration '" + demand.origin() + "'");
    }
    return Traversal(demand, reg, limit).run();
}

ResolveOutcome resolve(const ComponentType& ctop, const Registry& reg, std::size_t limit)
{
    ResolveOutcome out = explore(ctop, reg, limit);
    if (!out.found()) {
        throw Error(ErrorCode::NoImplementation,
                    "no implementation of " + render_nominal(out.demand) + " after " +
                        std::to_string(out.visited.size()) + " candidate demand(s)");
    }
    return out;
}

std::string render_explanation(const ResolveOutcome& outcome)
{
    std::ostringstream out;
    out << "demand: " << render_nominal(outcome.demand) << '\n';
    out << "order:";
    for (auto it = outcome.chain.rbegin(); it != outcome.chain.rend(); ++it) out << ' ' << it->label;
    if (outcome.chain.empty()) out << " (no parameters)";
    out << '\n';
    for (std::size_t i = 0; i < outcome.visited.size(); ++i) {
        out << "visit " << (i + 1) << ": " << render_nominal(outcome.visited[i]) << '\n';
    }
    if (outcome.found()) {
        const ConcreteConfig& c = outcome.implementation->entry->config;
        out << "found: " << c.name << ' ' << c.version.str() << " : " << render_nominal(outcome.implementation->type)
            << '\n';
        out << "matched demand: " << render_nominal(*outcome.generalized) << '\n';
    } else {
        out << "no implementation: " << render_nominal(outcome.demand) << '\n';
    }
    return out.str();
}

}  // namespace hashcl
