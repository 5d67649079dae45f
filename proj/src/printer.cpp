// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "parser.hpp"

namespace hashcl {

namespace {

void print_ref(std::ostream& out, const TypeRef& ref)
{
    out << ref.name;
    if (ref.replication) out << '<' << *ref.replication << '>';
    if (!ref.args.empty()) {
        out << '[';
        for (std::size_t i = 0; i < ref.args.size(); ++i) {
            if (i) out << ", ";
            print_ref(out, ref.args[i]);
        }
        out << ']';
    }
}

void print_iter_expr(std::ostream& out, const IterExpr& e)
{
    if (e.symbol) {
        out << *e.symbol;
        if (e.offset > 0) out << '+' << e.offset;
        if (e.offset < 0) out << '-' << -e.offset;
    } else if (e.offset < 0) {
        out << "0-" << -e.offset;
    } else {
        out << e.offset;
    }
}

template <typename Cfg>
void print_header(std::ostream& out, const Cfg& c)
{
    out << kind_keyword(c.kind) << ' ' << c.name;
    if (c.replication) out << '<' << *c.replication << '>';
}

void print_params(std::ostream& out, const std::vector<Param>& params)
{
    if (params.empty()) return;
    out << " [";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out << ", ";
        out << params[i].var << ": ";
        print_ref(out, params[i].bound);
    }
    out << ']';
}

void print_iterators(std::ostream& out, const std::vector<IteratorDecl>& its)
{
    for (const auto& it : its) {
        out << "  iterator " << it.name << " from ";
        print_iter_expr(out, it.from);
        out << " to ";
        print_iter_expr(out, it.to);
        out << '\n';
    }
}

void print_abstract(std::ostream& out, const AbstractConfig& a)
{
    print_header(out, a);
    if (!a.public_inners.empty()) {
        out << '(';
        for (std::size_t i = 0; i < a.public_inners.size(); ++i) {
            if (i) out << ", ";
            out << a.public_inners[i];
        }
        out << ')';
    }
    print_params(out, a.params);
    if (a.extends) out << " extends " << *a.extends;
    out << "\nbegin\n";
    print_iterators(out, a.iterators);
    for (const auto& inner : a.inners) {
        out << "  " << kind_keyword(inner.kind) << ' ' << inner.id << " : ";
        print_ref(out, inner.type);
        if (!inner.supplied.empty()) {
            out << " (";
            for (std::size_t i = 0; i < inner.supplied.size(); ++i) {
                if (i) out << ", ";
                out << inner.supplied[i];
            }
            out << ')';
        }
        out << '\n';
    }
    for (const auto& u : a.units) {
        out << "  unit " << u.name;
        if (u.index) out << '[' << *u.index << ']';
        if (u.slices.empty() && !u.action) {
            out << '\n';
            continue;
        }
        out << "\n  begin\n";
        for (const auto& s : u.slices) {
            out << "    slice " << s.id << " from " << s.inner << '.' << s.unit;
            if (s.index) out << '[' << *s.index << ']';
            out << '\n';
        }
        if (u.action) out << "    action " << u.action->render() << '\n';
        out << "  end\n";
    }
    out << "end\n";
}

void print_concrete(std::ostream& out, const ConcreteConfig& c)
{
    print_header(out, c);
    print_params(out, c.params);
    out << " implements ";
    print_ref(out, c.implements);
    out << " version " << c.version.str() << "\nbegin\n";
    print_iterators(out, c.iterators);
    for (const auto& u : c.units) {
        out << "  unit " << u.name;
        if (u.index) out << '[' << *u.index << ']';
        out << "\n  begin\n";
        if (!u.body.empty()) out << u.body << '\n';
        out << "  end\n";
    }
    out << "end\n";
}

}  // namespace

std::string print_typeref(const TypeRef& ref)
{
    std::ostringstream out;
    print_ref(out, ref);
    return out.str();
}

std::string print_config(const Config& cfg)
{
    std::ostringstream out;
    if (const auto* a = std::get_if<AbstractConfig>(&cfg)) {
        print_abstract(out, *a);
    } else {
        print_concrete(out, std::get<ConcreteConfig>(cfg));
    }
    return out.str();
}

}  // namespace hashcl
