// SPDX-License-Identifier: Apache-2.0
#include "expand.hpp"

namespace hashcl {

std::string instance_name(const std::string& family, unsigned index)
{
    return family + "_" + std::to_string(index);
}

namespace {

long evaluate(const IterExpr& e, const std::string& replication, unsigned n, SourcePos pos)
{
    if (!e.symbol) return e.offset;
    if (*e.symbol != replication) {
        throw Error(ErrorCode::IteratorBoundMismatch,
                    "iterator bound mentions '" + *e.symbol + "', expected the replication symbol '" +
                        replication + "'",
                    pos);
    }
    return static_cast<long>(n) + e.offset;
}

}  // namespace

AbstractConfig expand_iterators(const AbstractConfig& cfg, unsigned n)
{
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "replication count must be at least 1", cfg.pos);
    if (!cfg.replication) return cfg;

    for (const auto& it : cfg.iterators) {
        long lo = evaluate(it.from, *cfg.replication, n, it.pos);
        long hi = evaluate(it.to, *cfg.replication, n, it.pos);
        if (lo != 0 || hi != static_cast<long>(n) - 1) {
            throw Error(ErrorCode::IteratorBoundMismatch,
                        "iterator '" + it.name + "' ranges over " + std::to_string(lo) + ".." +
                            std::to_string(hi) + ", expected 0.." + std::to_string(n - 1),
                        it.pos);
        }
    }
    auto declared = [&](const std::string& name) {
        for (const auto& it : cfg.iterators) {
            if (it.name == name) return true;
        }
        return false;
    };

    AbstractConfig out = cfg;
    out.iterators.clear();
    out.units.clear();
    for (const auto& u : cfg.units) {
        if (!u.index) {
            out.units.push_back(u);
            continue;
        }
        if (!declared(*u.index)) {
            throw Error(ErrorCode::IteratorBoundMismatch,
                        "unit family '" + u.name + "' is indexed by undeclared iterator '" + *u.index + "'",
                        u.pos);
        }
        for (unsigned i = 0; i < n; ++i) {
            UnitDecl inst = u;
            inst.name = instance_name(u.name, i);
            inst.index.reset();
            for (auto& s : inst.slices) {
                if (s.index && *s.index == *u.index) {
                    s.unit = instance_name(s.unit, i);
                    s.index.reset();
                }
            }
            out.units.push_back(std::move(inst));
        }
    }
    return out;
}

}  // namespace hashcl
