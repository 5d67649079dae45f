// SPDX-License-Identifier: Apache-2.0
#include "registry.hpp"

#include <fstream>
#include <sstream>

#include "parser.hpp"

namespace hashcl {

namespace {

std::string located(const std::string& file, const SourcePos& pos)
{
    std::string out = file.empty() ? std::string("<input>") : file;
    if (pos.known()) out += ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column);
    return out;
}

[[noreturn]] void rethrow_with_file(const Error& e, const std::string& file)
{
    std::string message = located(file, e.pos()) + ": " + e.message();
    if (auto* bv = dynamic_cast<const BoundViolationError*>(&e)) message += "\n" + bv->trace().render();
    throw Error(e.code(), message, e.pos());
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Registry Registry::empty() { return Registry(); }

const AbstractConfig* Registry::find_abstract(const std::string& name) const
{
    auto it = abstracts_.find(name);
    return it == abstracts_.end() ? nullptr : &it->second.config;
}

const AbstractEntry* Registry::abstract_entry(const std::string& name) const
{
    auto it = abstracts_.find(name);
    return it == abstracts_.end() ? nullptr : &it->second;
}

ComponentType Registry::abstract_type(const std::string& name) const
{
    auto cached = types_.find(name);
    if (cached != types_.end()) return cached->second;
    auto it = abstracts_.find(name);
    if (it == abstracts_.end()) throw Error(ErrorCode::UnknownConfig, "unknown configuration '" + name + "'");
    if (!typing_.insert(name).second) {
        throw Error(ErrorCode::MalformedConfig, "configuration '" + name + "' refers to itself");
    }
    try {
        ComponentType t = type_abstract(it->second.config, Context{}, *this).type;
        typing_.erase(name);
        types_.insert_or_assign(name, t);
        return t;
    } catch (...) {
        typing_.erase(name);
        throw;
    }
}

std::optional<std::string> Registry::parent_of(const std::string& name) const
{
    auto it = abstracts_.find(name);
    if (it == abstracts_.end()) return std::nullopt;
    return it->second.parent;
}

const ConcreteEntry* Registry::concrete_for(const std::string& abstract_name) const
{
    auto it = concretes_.find(abstract_name);
    return it == concretes_.end() ? nullptr : &it->second;
}

const ConcreteEntry* Registry::find_concrete(const std::string& concrete_name) const
{
    for (const auto& [_, entry] : concretes_) {
        if (entry.config.name == concrete_name) return &entry;
    }
    return nullptr;
}

std::vector<std::string> Registry::abstract_names() const
{
    std::vector<std::string> out;
    for (const auto& [name, _] : abstracts_) out.push_back(name);
    return out;
}

std::vector<std::string> Registry::concrete_names() const
{
    std::vector<std::string> out;
    for (const auto& [_, entry] : concretes_) out.push_back(entry.config.name);
    return out;
}

std::size_t Registry::hierarchy_edges() const
{
    std::size_t n = 0;
    for (const auto& [_, entry] : abstracts_) n += entry.parent ? 1 : 0;
    return n;
}

std::vector<ComponentType> Registry::kind_tops() const
{
    std::vector<ComponentType> out;
    for (Kind k : kAllKinds) out.push_back(ComponentType::top(k));
    return out;
}

std::string Registry::canonical() const
{
    std::ostringstream out;
    for (const auto& [name, entry] : abstracts_) {
        out << "abstract " << name << " extends " << entry.parent.value_or("-") << " : "
            << render(abstract_type(name)) << '\n';
    }
    for (const auto& [abs, entry] : concretes_) {
        out << "concrete " << entry.config.name << ' ' << entry.config.version.str() << " implements " << abs
            << " : " << render(entry.type) << '\n';
    }
    return out.str();
}

void Registry::link()
{
    // Parents exist, share the kind, and form a forest.
    for (const auto& [name, entry] : abstracts_) {
        if (!entry.parent) continue;
        auto parent = abstracts_.find(*entry.parent);
        if (parent == abstracts_.end()) {
            throw Error(ErrorCode::UnknownConfig,
                        located(entry.file, entry.config.pos) + ": " + name + " extends unknown configuration '" +
                            *entry.parent + "'");
        }
        if (parent->second.config.kind != entry.config.kind) {
            throw Error(ErrorCode::ShapeInconsistentExtends,
                        located(entry.file, entry.config.pos) + ": " + name + " (" +
                            std::string(kind_keyword(entry.config.kind)) + ") extends " + *entry.parent + " (" +
                            std::string(kind_keyword(parent->second.config.kind)) + ")");
        }
    }
    for (const auto& [name, entry] : abstracts_) {
        std::set<std::string> seen{name};
        std::optional<std::string> cur = entry.parent;
        while (cur) {
            if (!seen.insert(*cur).second) {
                throw Error(ErrorCode::CycleInHierarchy, "extends cycle through '" + name + "'");
            }
            cur = abstracts_.at(*cur).parent;
        }
    }

    for (const auto& [name, entry] : abstracts_) {
        try {
            abstract_type(name);
        } catch (const Error& e) {
            rethrow_with_file(e, entry.file);
        }
    }

    // Declared edges must be structurally sound.
    for (const auto& [name, entry] : abstracts_) {
        if (!entry.parent) continue;
        const AbstractConfig& child_cfg = entry.config;
        const AbstractConfig& parent_cfg = abstracts_.at(*entry.parent).config;
        std::string where = located(entry.file, child_cfg.pos) + ": " + name + " extends " + *entry.parent;
        if (child_cfg.params.size() != parent_cfg.params.size()) {
            throw Error(ErrorCode::ShapeInconsistentExtends,
                        where + ": parameter counts differ (" + std::to_string(child_cfg.params.size()) + " vs " +
                            std::to_string(parent_cfg.params.size()) + ")");
        }
        ComponentType child = abstract_type(name);
        ComponentType parent = abstract_type(*entry.parent);
        Context gamma;
        const Shape* child_shape = nullptr;
        Shape parent_shape;
        if (child.is_abstract()) {
            const AbstractType& ca = child.as_abstract();
            const AbstractType& pa = parent.as_abstract();
            Substitution renaming;
            for (std::size_t i = 0; i < ca.bounds.size(); ++i) {
                ComponentType pbound = substitute(pa.bounds[i].bound, renaming);
                SubtypeResult r = is_subtype(gamma, ca.bounds[i].bound, pbound, *this);
                if (!r.holds) {
                    throw Error(ErrorCode::ShapeInconsistentExtends,
                                where + ": bound of parameter " + std::to_string(i + 1) + " is not a subtype\n" +
                                    r.trace.render());
                }
                gamma.push(ca.bounds[i]);
                renaming.insert_or_assign(pa.bounds[i].var, ComponentType::var(ca.bounds[i].var));
            }
            child_shape = &ca.shape;
            parent_shape = substitute(ComponentType::shape(pa.shape), renaming).as_shape();
        } else {
            child_shape = &child.as_shape();
            parent_shape = parent.as_shape();
        }
        SubtypeResult r = shape_subtype(gamma, *child_shape, parent_shape, *this);
        if (!r.holds) {
            throw Error(ErrorCode::ShapeInconsistentExtends, where + ": shapes are not related\n" + r.trace.render());
        }
    }

    for (auto& [abs, entry] : concretes_) {
        try {
            entry.type = type_concrete(entry.config, *this).type;
        } catch (const Error& e) {
            rethrow_with_file(e, entry.file);
        }
    }
}

Registry::Builder& Registry::Builder::add(Config cfg, std::string file)
{
    entries_.emplace_back(std::move(cfg), std::move(file));
    return *this;
}

Registry::Builder& Registry::Builder::add_source(std::string_view source, std::string file)
{
    try {
        return add(parse(source), std::move(file));
    } catch (const Error& e) {
        rethrow_with_file(e, file);
    }
}

Registry Registry::Builder::build() const
{
    Registry reg;
    reg.root_ = root_;
    std::map<std::string, std::pair<const ConcreteConfig*, std::string>> concretes;  // by concrete name
    for (const auto& [cfg, file] : entries_) {
        if (const auto* a = std::get_if<AbstractConfig>(&cfg)) {
            if (reg.abstracts_.count(a->name)) {
                throw Error(ErrorCode::ManifestError,
                            located(file, a->pos) + ": abstract configuration '" + a->name + "' registered twice");
            }
            reg.abstracts_.emplace(a->name, AbstractEntry{*a, a->extends, file});
        } else {
            const auto& c = std::get<ConcreteConfig>(cfg);
            auto it = concretes.find(c.name);
            if (it == concretes.end() || it->second.first->version < c.version) {
                concretes.insert_or_assign(c.name, std::make_pair(&c, file));
            }
        }
    }
    for (const auto& [name, entry] : concretes) {
        const ConcreteConfig& c = *entry.first;
        if (reg.abstracts_.count(name)) {
            throw Error(ErrorCode::ManifestError,
                        located(entry.second, c.pos) + ": '" + name + "' is both abstract and concrete");
        }
        const std::string& target = c.implements.name;
        auto existing = reg.concretes_.find(target);
        if (existing != reg.concretes_.end()) {
            throw Error(ErrorCode::DuplicateImplementation,
                        located(entry.second, c.pos) + ": " + target + " is already implemented by " +
                            existing->second.config.name + "; " + name + " would be a second implementation");
        }
        reg.concretes_.emplace(target, ConcreteEntry{c, entry.second, ComponentType::top(c.kind)});
    }
    reg.link();
    return reg;
}

namespace {

struct ManifestLine {
    std::vector<std::string> words;
    int line;
};

}  // namespace

Registry Registry::load(const std::filesystem::path& path)
{
    std::filesystem::path manifest = path;
    std::error_code ec;
    if (std::filesystem::is_directory(path, ec)) manifest = path / "registry.manifest";
    std::filesystem::path root = manifest.parent_path();
    std::string text = read_file(manifest);
    const std::string mname = manifest.filename().string();

    Builder builder;
    builder.set_root(root);
    std::istringstream lines(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(lines, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream words(raw);
        std::vector<std::string> w;
        for (std::string word; words >> word;) w.push_back(word);
        if (w.empty()) continue;
        auto fail = [&](const std::string& msg) -> void {
            throw Error(ErrorCode::ManifestError, mname + ":" + std::to_string(lineno) + ": " + msg);
        };

        if (w[0] == "abstract") {
            if (w.size() != 8 || w[2] != "kind" || w[4] != "extends" || w[6] != "file") {
                fail("expected 'abstract <name> kind <kind> extends <parent|-> file <path>'");
            }
            auto kind = parse_kind_keyword(w[3]);
            if (!kind) fail("unknown kind '" + w[3] + "'");
            std::string source = read_file(root / w[7]);
            Config cfg = [&] {
                try {
                    return parse(source);
                } catch (const Error& e) {
                    rethrow_with_file(e, w[7]);
                }
            }();
            auto* a = std::get_if<AbstractConfig>(&cfg);
            if (!a) fail(w[7] + " does not contain an abstract configuration");
            if (a->name != w[1]) fail(w[7] + " declares '" + a->name + "', not '" + w[1] + "'");
            if (a->kind != *kind) fail(w[1] + " is declared " + std::string(kind_keyword(a->kind)) + " in " + w[7]);
            std::string parent = a->extends.value_or("-");
            if (parent != w[5]) fail(w[1] + " extends '" + parent + "' in " + w[7] + ", manifest says '" + w[5] + "'");
            builder.add(std::move(cfg), w[7]);
        } else if (w[0] == "concrete") {
            if (w.size() != 8 || w[2] != "implements" || w[4] != "version" || w[6] != "file") {
                fail("expected 'concrete <name> implements <abstract> version <a.b.c.d> file <path>'");
            }
            std::string source = read_file(root / w[7]);
            Config cfg = [&] {
                try {
                    return parse(source);
                } catch (const Error& e) {
                    rethrow_with_file(e, w[7]);
                }
            }();
            auto* c = std::get_if<ConcreteConfig>(&cfg);
            if (!c) fail(w[7] + " does not contain a concrete configuration");
            if (c->name != w[1]) fail(w[7] + " declares '" + c->name + "', not '" + w[1] + "'");
            if (c->implements.name != w[3]) fail(w[1] + " implements '" + c->implements.name + "' in " + w[7]);
            if (c->version.str() != w[5]) fail(w[1] + " has version " + c->version.str() + " in " + w[7]);
            builder.add(std::move(cfg), w[7]);
        } else {
            fail("unknown record '" + w[0] + "'");
        }
    }
    return builder.build();
}

ComponentType least_proper_supertype(const ComponentType& t, const Registry& reg)
{
    if (t.is_var() || t.is_top()) {
        throw Error(ErrorCode::InvalidArgument, render_nominal(t) + " has no least proper supertype");
    }
    const std::string& head = t.origin();
    if (head.empty() || !reg.find_abstract(head)) {
        throw Error(ErrorCode::UnknownConfig, "unknown configuration '" + head + "'");
    }
    return *promote_nominal(t, reg);
}

std::optional<Implementation> implementation_of(const ComponentType& demand, const Registry& reg)
{
    const std::string& head = demand.origin();
    if (head.empty()) return std::nullopt;
    const ConcreteEntry* entry = reg.concrete_for(head);
    if (!entry) return std::nullopt;
    if (!check_subtype(Context{}, entry->type, demand, reg)) return std::nullopt;
    return Implementation{entry, entry->type};
}

ComponentType demand_type(const TypeRef& ref, const Registry& reg)
{
    return type_ref(ref, Context{}, reg).type;
}

}  // namespace hashcl
