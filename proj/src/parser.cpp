// SPDX-License-Identifier: Apache-2.0
#include "parser.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "lexer.hpp"

namespace hashcl {

SyntaxError::SyntaxError(std::string message, SourcePos pos, std::vector<std::string> expected)
    : Error(ErrorCode::SyntaxError, std::move(message), pos), expected_(std::move(expected))
{
}

bool is_reserved_word(std::string_view word)
{
    static const std::set<std::string_view> words = {
        "begin", "end",  "unit",       "slice",   "from",    "to", "iterator",
        "action", "implements", "version", "extends", "eps",
    };
    return words.count(word) > 0 || parse_kind_keyword(word).has_value();
}

namespace {

constexpr int kMaxNesting = 200;

class Parser {
public:
    explicit Parser(std::string_view source) : lex_(source) { advance(); }

    Config config();
    TypeRef typeref();
    Regex regex_alt();

    void expect_end_of_input()
    {
        if (cur_.kind != Tok::End) fail({token_name(Tok::End)});
    }

private:
    void advance() { cur_ = lex_.next(); }

    bool at(Tok kind) const { return cur_.kind == kind; }
    bool at_word(std::string_view word) const { return cur_.kind == Tok::Ident && cur_.text == word; }

    [[noreturn]] void fail(std::vector<std::string> expected) const
    {
        std::string msg = "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
        }
        msg += ", found ";
        msg += cur_.kind == Tok::End ? std::string("end of input") : "'" + cur_.text + "'";
        throw SyntaxError(msg, cur_.pos, std::move(expected));
    }

    void expect(Tok kind)
    {
        if (!at(kind)) fail({token_name(kind)});
        advance();
    }

    void expect_word(std::string_view word)
    {
        if (!at_word(word)) fail({"'" + std::string(word) + "'"});
        advance();
    }

    std::string name(const char* what)
    {
        if (!at(Tok::Ident) || is_reserved_word(cur_.text)) fail({what});
        std::string text = cur_.text;
        advance();
        return text;
    }

    unsigned long number()
    {
        if (!at(Tok::Number)) fail({token_name(Tok::Number)});
        unsigned long value = 0;
        auto [ptr, ec] = std::from_chars(cur_.text.data(), cur_.text.data() + cur_.text.size(), value);
        if (ec != std::errc() || ptr != cur_.text.data() + cur_.text.size()) {
            throw SyntaxError("number out of range", cur_.pos, {"number"});
        }
        advance();
        return value;
    }

    Kind kind_keyword()
    {
        if (!at(Tok::Ident)) fail({"component kind"});
        auto kind = parse_kind_keyword(cur_.text);
        if (!kind) {
            throw Error(ErrorCode::UnknownKind, "unknown component kind '" + cur_.text + "'", cur_.pos);
        }
        advance();
        return *kind;
    }

    struct Nesting {
        explicit Nesting(Parser& p) : p_(p)
        {
            if (++p_.depth_ > kMaxNesting) {
                throw SyntaxError("nesting too deep", p_.cur_.pos, {});
            }
        }
        ~Nesting() { --p_.depth_; }
        Parser& p_;
    };

    std::optional<std::string> replication();
    std::vector<Param> params();
    std::vector<std::string> name_list(const char* what);
    IterExpr iter_expr();
    IteratorDecl iterator();
    Version version();
    UnitDecl abstract_unit();
    ConcreteUnit concrete_unit();
    Regex regex_concat();
    Regex regex_postfix();

    Lexer lex_;
    Token cur_;
    int depth_ = 0;
};

std::optional<std::string> Parser::replication()
{
    if (!at(Tok::LAngle)) return std::nullopt;
    advance();
    std::string sym = name("replication symbol");
    expect(Tok::RAngle);
    return sym;
}

std::vector<std::string> Parser::name_list(const char* what)
{
    std::vector<std::string> out;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
        out.push_back(name(what));
        while (at(Tok::Comma)) {
            advance();
            out.push_back(name(what));
        }
    }
    expect(Tok::RParen);
    return out;
}

std::vector<Param> Parser::params()
{
    std::vector<Param> out;
    expect(Tok::LBracket);
    for (;;) {
        Param p;
        p.pos = cur_.pos;
        p.var = name("parameter name");
        expect(Tok::Colon);
        p.bound = typeref();
        out.push_back(std::move(p));
        if (!at(Tok::Comma)) break;
        advance();
    }
    expect(Tok::RBracket);
    return out;
}

TypeRef Parser::typeref()
{
    Nesting guard(*this);
    TypeRef ref;
    ref.pos = cur_.pos;
    ref.name = name("configuration name");
    ref.replication = replication();
    if (at(Tok::LBracket)) {
        advance();
        ref.args.push_back(typeref());
        while (at(Tok::Comma)) {
            advance();
            ref.args.push_back(typeref());
        }
        expect(Tok::RBracket);
    }
    return ref;
}

IterExpr Parser::iter_expr()
{
    IterExpr e;
    if (at(Tok::Number)) {
        e.offset = static_cast<long>(number());
    } else {
        e.symbol = name("iterator bound");
    }
    while (at(Tok::Minus) || at(Tok::Plus)) {
        bool minus = at(Tok::Minus);
        advance();
        long v = static_cast<long>(number());
        e.offset += minus ? -v : v;
    }
    return e;
}

IteratorDecl Parser::iterator()
{
    IteratorDecl it;
    it.pos = cur_.pos;
    expect_word("iterator");
    it.name = name("iterator name");
    expect_word("from");
    it.from = iter_expr();
    expect_word("to");
    it.to = iter_expr();
    return it;
}

Version Parser::version()
{
    Version v;
    for (std::size_t i = 0; i < v.parts.size(); ++i) {
        if (i) expect(Tok::Dot);
        v.parts[i] = number();
    }
    return v;
}

Regex Parser::regex_alt()
{
    Nesting guard(*this);
    std::vector<Regex> options;
    options.push_back(regex_concat());
    while (at(Tok::Pipe)) {
        advance();
        options.push_back(regex_concat());
    }
    return Regex::alt(std::move(options));
}

Regex Parser::regex_concat()
{
    std::vector<Regex> parts;
    while (at(Tok::LParen) || (at(Tok::Ident) && (cur_.text == "eps" || !is_reserved_word(cur_.text)))) {
        parts.push_back(regex_postfix());
    }
    if (parts.empty()) fail({"slice name", "'eps'", "'('"});
    return Regex::concat(std::move(parts));
}

Regex Parser::regex_postfix()
{
    Regex atom = Regex::eps();
    if (at(Tok::LParen)) {
        advance();
        atom = regex_alt();
        expect(Tok::RParen);
    } else if (at_word("eps")) {
        advance();
    } else {
        atom = Regex::symbol(name("slice name"));
    }
    while (at(Tok::Star)) {
        advance();
        atom = Regex::star(std::move(atom));
    }
    return atom;
}

UnitDecl Parser::abstract_unit()
{
    UnitDecl u;
    u.pos = cur_.pos;
    expect_word("unit");
    u.name = name("unit name");
    if (at(Tok::LBracket)) {
        advance();
        u.index = name("iterator name");
        expect(Tok::RBracket);
    }
    if (!at_word("begin")) return u;
    advance();
    while (at_word("slice")) {
        SliceDecl s;
        s.pos = cur_.pos;
        advance();
        s.id = name("slice name");
        expect_word("from");
        s.inner = name("inner component name");
        expect(Tok::Dot);
        s.unit = name("unit name");
        if (at(Tok::LBracket)) {
            advance();
            s.index = name("iterator name");
            expect(Tok::RBracket);
        }
        u.slices.push_back(std::move(s));
    }
    if (at_word("action")) {
        advance();
        u.action = regex_alt();
        if (at(Tok::Semicolon)) advance();
    }
    if (!at_word("end")) fail({"'slice'", "'action'", "'end'"});
    advance();
    return u;
}

ConcreteUnit Parser::concrete_unit()
{
    ConcreteUnit u;
    u.pos = cur_.pos;
    expect_word("unit");
    u.name = name("unit name");
    if (at(Tok::LBracket)) {
        advance();
        u.index = name("iterator name");
        expect(Tok::RBracket);
    }
    if (!at_word("begin")) fail({"'begin'"});
    // The lexer sits just past `begin`; take the host source verbatim.
    u.body = lex_.raw_block(cur_.pos);
    advance();
    return u;
}

void resolve_variables(TypeRef& ref, const std::set<std::string>& vars)
{
    if (ref.form == TypeRef::Form::Application && ref.args.empty() && !ref.replication &&
        vars.count(ref.name)) {
        ref.form = TypeRef::Form::Variable;
        return;
    }
    for (auto& a : ref.args) resolve_variables(a, vars);
}

Config Parser::config()
{
    SourcePos start = cur_.pos;
    Kind kind = kind_keyword();
    std::string cfg_name = name("configuration name");
    auto repl = replication();
    std::vector<std::string> publics;
    bool has_publics = false;
    if (at(Tok::LParen)) {
        publics = name_list("inner component name");
        has_publics = true;
    }
    std::vector<Param> ps;
    if (at(Tok::LBracket)) ps = params();

    std::set<std::string> vars;
    for (const auto& p : ps) vars.insert(p.var);

    if (at_word("implements")) {
        if (has_publics) {
            throw SyntaxError("a concrete configuration declares no public inner list", start,
                              {"'implements'"});
        }
        advance();
        ConcreteConfig c;
        c.pos = start;
        c.name = std::move(cfg_name);
        c.kind = kind;
        c.replication = std::move(repl);
        c.params = std::move(ps);
        c.implements = typeref();
        expect_word("version");
        c.version = version();
        expect_word("begin");
        for (;;) {
            if (at_word("iterator")) {
                c.iterators.push_back(iterator());
            } else if (at_word("unit")) {
                c.units.push_back(concrete_unit());
            } else {
                break;
            }
        }
        if (!at_word("end")) fail({"'iterator'", "'unit'", "'end'"});
        advance();
        for (auto& p : c.params) resolve_variables(p.bound, vars);
        resolve_variables(c.implements, vars);
        return c;
    }

    AbstractConfig a;
    a.pos = start;
    a.name = std::move(cfg_name);
    a.kind = kind;
    a.replication = std::move(repl);
    a.params = std::move(ps);
    a.public_inners = std::move(publics);
    if (at_word("extends")) {
        advance();
        a.extends = name("parent configuration name");
    }
    if (!at_word("begin")) fail({"'implements'", "'extends'", "'begin'"});
    advance();
    for (;;) {
        if (at_word("iterator")) {
            a.iterators.push_back(iterator());
        } else if (at_word("unit")) {
            a.units.push_back(abstract_unit());
        } else if (at_word("end")) {
            advance();
            break;
        } else if (at(Tok::Ident) && !is_reserved_word(cur_.text)) {
            throw Error(ErrorCode::UnknownKind, "unknown component kind '" + cur_.text + "'", cur_.pos);
        } else if (at(Tok::Ident) && parse_kind_keyword(cur_.text)) {
            InnerDecl inner;
            inner.pos = cur_.pos;
            inner.kind = kind_keyword();
            inner.id = name("inner component name");
            expect(Tok::Colon);
            inner.type = typeref();
            if (at(Tok::LParen)) inner.supplied = name_list("inner component name");
            a.inners.push_back(std::move(inner));
        } else {
            fail({"'iterator'", "'unit'", "inner component declaration", "'end'"});
        }
    }
    if (a.units.empty()) {
        throw SyntaxError("an abstract configuration declares at least one unit", cur_.pos, {"'unit'"});
    }
    for (auto& p : a.params) resolve_variables(p.bound, vars);
    for (auto& i : a.inners) resolve_variables(i.type, vars);
    return a;
}

}  // namespace

TypeRef TypeRef::variable(std::string name, SourcePos pos)
{
    TypeRef r;
    r.form = Form::Variable;
    r.name = std::move(name);
    r.pos = pos;
    return r;
}

TypeRef TypeRef::application(std::string name, std::vector<TypeRef> args, SourcePos pos)
{
    TypeRef r;
    r.form = Form::Application;
    r.name = std::move(name);
    r.args = std::move(args);
    r.pos = pos;
    return r;
}

const InnerDecl* AbstractConfig::find_inner(const std::string& id) const
{
    for (const auto& i : inners) {
        if (i.id == id) return &i;
    }
    return nullptr;
}

const UnitDecl* AbstractConfig::find_unit(const std::string& unit_name) const
{
    for (const auto& u : units) {
        if (u.name == unit_name) return &u;
    }
    return nullptr;
}

bool AbstractConfig::is_public(const std::string& inner_id) const
{
    return std::find(public_inners.begin(), public_inners.end(), inner_id) != public_inners.end();
}

std::string Version::str() const
{
    return std::to_string(parts[0]) + "." + std::to_string(parts[1]) + "." + std::to_string(parts[2]) +
           "." + std::to_string(parts[3]);
}

const std::string& config_name(const Config& cfg)
{
    return std::visit([](const auto& c) -> const std::string& { return c.name; }, cfg);
}

Kind config_kind(const Config& cfg)
{
    return std::visit([](const auto& c) { return c.kind; }, cfg);
}

Config parse(std::string_view source)
{
    Parser p(source);
    Config cfg = p.config();
    p.expect_end_of_input();
    return cfg;
}

TypeRef parse_type_expression(std::string_view source)
{
    Parser p(source);
    TypeRef ref = p.typeref();
    p.expect_end_of_input();
    return ref;
}

Regex parse_regex(std::string_view source)
{
    Parser p(source);
    Regex r = p.regex_alt();
    p.expect_end_of_input();
    return r;
}

}  // namespace hashcl
