// SPDX-License-Identifier: Apache-2.0
#include "hashcl/hashcl.h"

#include <exception>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "codegen.hpp"
#include "expand.hpp"
#include "parser.hpp"
#include "registry.hpp"
#include "resolver.hpp"
#include "typing.hpp"
#include "wellformed.hpp"

using namespace hashcl;

struct hashcl_registry {
    Registry registry;
};

struct hashcl_report {
    struct Diag {
        std::string text;
        std::string code;
        std::string message;
        int line = 0;
        int column = 0;
    };

    hashcl_status status = HASHCL_OK;
    std::vector<std::string> lines;
    std::vector<Diag> diags;
};

namespace {

thread_local std::string last_error;

hashcl_status fail(hashcl_status status, std::string message)
{
    last_error = std::move(message);
    return status;
}

hashcl_status status_for(ErrorCode code)
{
    switch (code) {
        case ErrorCode::InvalidArgument: return HASHCL_ERR_USAGE;
        case ErrorCode::NoImplementation: return HASHCL_ERR_NO_IMPLEMENTATION;
        case ErrorCode::IoError: return HASHCL_ERR_IO;
        default: return HASHCL_ERR_INPUT;
    }
}

void add_lines(hashcl_report& r, const std::string& text)
{
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) r.lines.push_back(line);
}

void add_error(hashcl_report& r, const std::string& file, const Error& e)
{
    hashcl_report::Diag d;
    d.code = error_code_name(e.code());
    d.message = e.message();
    if (auto* bv = dynamic_cast<const BoundViolationError*>(&e)) {
        std::string trace = bv->trace().render();
        if (!trace.empty() && trace.back() == '\n') trace.pop_back();
        d.message += "\n" + trace;
    }
    d.line = e.pos().line;
    d.column = e.pos().column;
    d.text = render_error(file, Error(e.code(), d.message, e.pos()));
    r.diags.push_back(std::move(d));
    r.status = status_for(e.code());
}

void add_diagnostic(hashcl_report& r, const std::string& file, const Diagnostic& diag)
{
    r.diags.push_back({render_diagnostic(file, diag), diag_code_name(diag.code), diag.message, diag.pos.line,
                       diag.pos.column});
    r.status = HASHCL_ERR_INPUT;
}

// Runs `body` on a fresh report, converting exceptions into diagnostics.
template <typename Body>
hashcl_status run(hashcl_report** out, const std::string& file, Body&& body)
{
    if (!out) return fail(HASHCL_ERR_USAGE, "output pointer is null");
    *out = nullptr;
    auto report = std::make_unique<hashcl_report>();
    try {
        body(*report);
    } catch (const Error& e) {
        add_error(*report, file, e);
    } catch (const std::bad_alloc&) {
        return fail(HASHCL_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        report->diags.push_back({file + ": error: Internal: " + e.what(), "Internal", e.what(), 0, 0});
        report->status = HASHCL_ERR_INTERNAL;
    }
    hashcl_status status = report->status;
    if (status != HASHCL_OK) {
        last_error = report->diags.empty() ? std::string(hashcl_status_name(status)) : report->diags.front().text;
    }
    *out = report.release();
    return status;
}

std::string display_name(const char* file) { return file && *file ? file : "<input>"; }

const Registry& registry_of(const hashcl_registry* registry)
{
    static const Registry empty = Registry::empty();
    return registry ? registry->registry : empty;
}

// Abstract configurations found in the input file but absent from the
// registry are visible while processing that file.
class Overlay final : public ConfigLookup {
public:
    Overlay(const Registry& base, const Config& cfg) : base_(base)
    {
        if (auto* a = std::get_if<AbstractConfig>(&cfg); a && !base.find_abstract(a->name)) local_ = *a;
    }

    const AbstractConfig* find_abstract(const std::string& name) const override
    {
        if (local_ && local_->name == name) return &*local_;
        return base_.find_abstract(name);
    }
    ComponentType abstract_type(const std::string& name) const override
    {
        if (local_ && local_->name == name) {
            if (!local_type_) {
                if (busy_) throw Error(ErrorCode::MalformedConfig, "configuration '" + name + "' refers to itself");
                busy_ = true;
                try {
                    local_type_ = type_abstract(*local_, Context{}, *this).type;
                } catch (...) {
                    busy_ = false;
                    throw;
                }
                busy_ = false;
            }
            return *local_type_;
        }
        return base_.abstract_type(name);
    }
    std::optional<std::string> parent_of(const std::string& name) const override
    {
        if (local_ && local_->name == name) return local_->extends;
        return base_.parent_of(name);
    }

private:
    const Registry& base_;
    std::optional<AbstractConfig> local_;
    mutable std::optional<ComponentType> local_type_;
    mutable bool busy_ = false;
};

TypingResult type_config(const Config& cfg, const ConfigLookup& lookup)
{
    if (auto* a = std::get_if<AbstractConfig>(&cfg)) return type_abstract(*a, Context{}, lookup);
    return type_concrete(std::get<ConcreteConfig>(cfg), lookup);
}

bool wellformed_or_report(hashcl_report& r, const std::string& file, const Config& cfg, const ConfigLookup& lookup)
{
    auto diags = check_wellformed(cfg, lookup);
    for (const auto& d : diags) add_diagnostic(r, file, d);
    return diags.empty();
}

}  // namespace

extern "C" {

const char* hashcl_version(void) { return "0.1.0"; }

const char* hashcl_last_error(void) { return last_error.c_str(); }

const char* hashcl_status_name(hashcl_status status)
{
    switch (status) {
        case HASHCL_OK: return "ok";
        case HASHCL_ERR_USAGE: return "usage";
        case HASHCL_ERR_INPUT: return "error";
        case HASHCL_ERR_NO_IMPLEMENTATION: return "no_implementation";
        case HASHCL_ERR_IO: return "io";
        case HASHCL_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

hashcl_status hashcl_registry_load(const char* path, hashcl_registry** out)
{
    if (!path || !out) return fail(HASHCL_ERR_USAGE, "registry path and output pointer are required");
    *out = nullptr;
    try {
        *out = new hashcl_registry{Registry::load(path)};
        return HASHCL_OK;
    } catch (const Error& e) {
        return fail(status_for(e.code()), std::string(error_code_name(e.code())) + ": " + e.message());
    } catch (const std::exception& e) {
        return fail(HASHCL_ERR_INTERNAL, e.what());
    }
}

hashcl_status hashcl_registry_empty(hashcl_registry** out)
{
    if (!out) return fail(HASHCL_ERR_USAGE, "output pointer is null");
    *out = new hashcl_registry{Registry::empty()};
    return HASHCL_OK;
}

void hashcl_registry_free(hashcl_registry* registry) { delete registry; }

size_t hashcl_registry_abstract_count(const hashcl_registry* registry)
{
    return registry ? registry->registry.abstract_names().size() : 0;
}

size_t hashcl_registry_concrete_count(const hashcl_registry* registry)
{
    return registry ? registry->registry.concrete_names().size() : 0;
}

size_t hashcl_registry_edge_count(const hashcl_registry* registry)
{
    return registry ? registry->registry.hierarchy_edges() : 0;
}

size_t hashcl_report_line_count(const hashcl_report* report) { return report ? report->lines.size() : 0; }

const char* hashcl_report_line(const hashcl_report* report, size_t index)
{
    return report && index < report->lines.size() ? report->lines[index].c_str() : nullptr;
}

size_t hashcl_report_diagnostic_count(const hashcl_report* report) { return report ? report->diags.size() : 0; }

const char* hashcl_report_diagnostic_text(const hashcl_report* report, size_t index)
{
    return report && index < report->diags.size() ? report->diags[index].text.c_str() : nullptr;
}

const char* hashcl_report_diagnostic_code(const hashcl_report* report, size_t index)
{
    return report && index < report->diags.size() ? report->diags[index].code.c_str() : nullptr;
}

const char* hashcl_report_diagnostic_message(const hashcl_report* report, size_t index)
{
    return report && index < report->diags.size() ? report->diags[index].message.c_str() : nullptr;
}

int hashcl_report_diagnostic_line(const hashcl_report* report, size_t index)
{
    return report && index < report->diags.size() ? report->diags[index].line : 0;
}

int hashcl_report_diagnostic_column(const hashcl_report* report, size_t index)
{
    return report && index < report->diags.size() ? report->diags[index].column : 0;
}

hashcl_status hashcl_report_status(const hashcl_report* report) { return report ? report->status : HASHCL_ERR_USAGE; }

void hashcl_report_free(hashcl_report* report) { delete report; }

hashcl_status hashcl_parse(const char* source, const char* file, unsigned n, hashcl_report** out)
{
    if (!source) return fail(HASHCL_ERR_USAGE, "source is null");
    const std::string name = display_name(file);
    return run(out, name, [&](hashcl_report& r) {
        Config cfg = parse(source);
        if (n > 0) {
            if (auto* a = std::get_if<AbstractConfig>(&cfg)) cfg = expand_iterators(*a, n);
        }
        add_lines(r, print_config(cfg));
    });
}

hashcl_status hashcl_check(const char* source, const char* file, const hashcl_registry* registry,
                           hashcl_report** out)
{
    if (!source) return fail(HASHCL_ERR_USAGE, "source is null");
    const std::string name = display_name(file);
    return run(out, name, [&](hashcl_report& r) {
        Config cfg = parse(source);
        Overlay lookup(registry_of(registry), cfg);
        if (!wellformed_or_report(r, name, cfg, lookup)) return;
        type_config(cfg, lookup);
        r.lines.push_back(config_name(cfg) + ": ok");
    });
}

hashcl_status hashcl_type(const char* source, const char* file, const hashcl_registry* registry, hashcl_report** out)
{
    if (!source) return fail(HASHCL_ERR_USAGE, "source is null");
    const std::string name = display_name(file);
    return run(out, name, [&](hashcl_report& r) {
        Config cfg = parse(source);
        Overlay lookup(registry_of(registry), cfg);
        if (!wellformed_or_report(r, name, cfg, lookup)) return;
        TypingResult t = type_config(cfg, lookup);
        r.lines.push_back(config_name(cfg) + " : " + render(t.type));
        for (const auto& o : t.obligations) r.lines.push_back("  obligation " + o.origin + ": " + o.render());
    });
}

hashcl_status hashcl_resolve(const char* type_expression, const hashcl_registry* registry, int explain,
                             hashcl_report** out)
{
    if (!type_expression) return fail(HASHCL_ERR_USAGE, "type expression is null");
    return run(out, "<demand>", [&](hashcl_report& r) {
        const Registry& reg = registry_of(registry);
        ComponentType demand = as_demand(demand_type(parse_type_expression(type_expression), reg));
        ResolveOutcome outcome = explore(demand, reg);
        if (explain) add_lines(r, render_explanation(outcome));
        if (!outcome.found()) {
            throw Error(ErrorCode::NoImplementation, "no implementation of " + render_nominal(outcome.demand));
        }
        if (!explain) r.lines.push_back(outcome.implementation->entry->config.name);
    });
}

hashcl_status hashcl_gen(const char* source, const char* file, const hashcl_registry* registry, const char* out_dir,
                         hashcl_report** out)
{
    if (!source || !out_dir) return fail(HASHCL_ERR_USAGE, "source and output directory are required");
    const std::string name = display_name(file);
    return run(out, name, [&](hashcl_report& r) {
        Config cfg = parse(source);
        Overlay lookup(registry_of(registry), cfg);
        if (!wellformed_or_report(r, name, cfg, lookup)) return;
        std::vector<StubFile> files;
        if (auto* a = std::get_if<AbstractConfig>(&cfg)) {
            files = gen_interface(*a, lookup);
        } else {
            files = gen_class(std::get<ConcreteConfig>(cfg), lookup);
        }
        files.push_back(gen_prelude());
        write_stubs(files, out_dir);
        for (const auto& f : files) r.lines.push_back(f.path);
    });
}

hashcl_status hashcl_interp(const char* source, const char* file, const hashcl_registry* registry,
                            hashcl_report** out)
{
    if (!source) return fail(HASHCL_ERR_USAGE, "source is null");
    const std::string name = display_name(file);
    return run(out, name, [&](hashcl_report& r) {
        Config cfg = parse(source);
        Overlay lookup(registry_of(registry), cfg);
        if (!wellformed_or_report(r, name, cfg, lookup)) return;
        r.lines.push_back(config_name(cfg) + " = " + emit_interpretation(type_config(cfg, lookup).type));
    });
}

}  // extern "C"
