// SPDX-License-Identifier: Apache-2.0
// hashcl: command-line driver over the C API.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hashcl/hashcl.h"
#include "json.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kNoImplementation = 3 };

int exit_for(hashcl_status status)
{
    switch (status) {
        case HASHCL_OK: return kOk;
        case HASHCL_ERR_USAGE:
        case HASHCL_ERR_IO: return kUsage;
        case HASHCL_ERR_NO_IMPLEMENTATION: return kNoImplementation;
        default: return kInput;
    }
}

struct Options {
    std::string format = "text";
    std::string registry;
    std::string input;
    std::string out_dir;
    unsigned n = 0;
    bool explain = false;
};

class Output {
public:
    Output(std::string command, bool machine) : command_(std::move(command)), machine_(machine) {}

    void line(const std::string& text)
    {
        if (machine_) {
            emit("ok", {{"line", text}});
        } else {
            std::cout << text << '\n';
        }
    }

    void error(const std::string& code, const std::string& message, const std::string& text, int line, int column)
    {
        if (machine_) {
            emit("error", {{"code", code}, {"message", message}, {"line", line}, {"column", column}, {"text", text}});
        } else {
            std::cerr << text << '\n';
        }
    }

    int finish(hashcl_status status)
    {
        int code = exit_for(status);
        if (machine_) emit(hashcl_status_name(status), {{"exit", code}});
        return code;
    }

    // Failures that happen before a report exists.
    int fail(hashcl_status status, const std::string& message)
    {
        error(hashcl_status_name(status), message, "hashcl: " + message, 0, 0);
        return finish(status);
    }

    int report(hashcl_status status, hashcl_report* report)
    {
        if (!report) return fail(status, hashcl_last_error());
        for (size_t i = 0; i < hashcl_report_line_count(report); ++i) line(hashcl_report_line(report, i));
        for (size_t i = 0; i < hashcl_report_diagnostic_count(report); ++i) {
            error(hashcl_report_diagnostic_code(report, i), hashcl_report_diagnostic_message(report, i),
                  hashcl_report_diagnostic_text(report, i), hashcl_report_diagnostic_line(report, i),
                  hashcl_report_diagnostic_column(report, i));
        }
        hashcl_report_free(report);
        return finish(status);
    }

private:
    void emit(const std::string& status, nlohmann::ordered_json payload)
    {
        nlohmann::ordered_json record;
        record["command"] = command_;
        record["status"] = status;
        record["payload"] = std::move(payload);
        std::cout << record.dump() << '\n';
    }

    std::string command_;
    bool machine_;
};

bool read_file(const std::string& path, std::string& text)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    return true;
}

int run_command(const std::string& command, const Options& opt)
{
    Output out(command, opt.format == "machine");

    std::string source;
    if (command != "resolve" && !read_file(opt.input, source)) {
        return out.fail(HASHCL_ERR_IO, "cannot read '" + opt.input + "'");
    }

    hashcl_registry* registry = nullptr;
    if (command != "parse") {
        std::string dir = opt.registry;
        if (dir.empty()) {
            if (const char* env = std::getenv("HASHCL_REGISTRY")) dir = env;
        }
        hashcl_status s = dir.empty() ? hashcl_registry_empty(&registry) : hashcl_registry_load(dir.c_str(), &registry);
        if (s != HASHCL_OK) return out.fail(s, hashcl_last_error());
    }

    hashcl_report* report = nullptr;
    hashcl_status status = HASHCL_OK;
    const char* file = opt.input.c_str();
    if (command == "parse") {
        status = hashcl_parse(source.c_str(), file, opt.n, &report);
    } else if (command == "check") {
        status = hashcl_check(source.c_str(), file, registry, &report);
    } else if (command == "type") {
        status = hashcl_type(source.c_str(), file, registry, &report);
    } else if (command == "resolve") {
        status = hashcl_resolve(opt.input.c_str(), registry, opt.explain ? 1 : 0, &report);
    } else if (command == "gen") {
        status = hashcl_gen(source.c_str(), file, registry, opt.out_dir.c_str(), &report);
    } else {
        status = hashcl_interp(source.c_str(), file, registry, &report);
    }
    int code = out.report(status, report);
    hashcl_registry_free(registry);
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Toolchain for HCL component configurations"};
    app.set_version_flag("--version", std::string(hashcl_version()));
    app.require_subcommand(1, 1);

    Options opt;
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
    app.add_option("--registry", opt.registry, "Registry root directory (default: $HASHCL_REGISTRY)");

    auto* parse = app.add_subcommand("parse", "Parse and print a configuration in canonical form");
    parse->add_option("file", opt.input, "HCL file")->required();
    parse->add_option("--n", opt.n, "Expand unit families into n instances")->check(CLI::PositiveNumber);

    auto* check = app.add_subcommand("check", "Check well-formedness and typing");
    check->add_option("file", opt.input, "HCL file")->required();

    auto* type = app.add_subcommand("type", "Print the type of a configuration");
    type->add_option("file", opt.input, "HCL file")->required();

    auto* resolve = app.add_subcommand("resolve", "Find the implementation for a demanded type");
    resolve->add_option("type", opt.input, "Type expression, e.g. \"Channel[MPIFull, Vector]\"")->required();
    resolve->add_flag("--explain", opt.explain, "Print the demands visited during resolution");

    auto* gen = app.add_subcommand("gen", "Generate interface or class stubs");
    gen->add_option("file", opt.input, "HCL file")->required();
    gen->add_option("--out", opt.out_dir, "Output directory")->required();

    auto* interp = app.add_subcommand("interp", "Print the quantifier reading of a configuration type");
    interp->add_option("file", opt.input, "HCL file")->required();

    for (auto* sub : {parse, check, type, resolve, gen, interp}) {
        sub->add_option("--registry", opt.registry, "Registry root directory (default: $HASHCL_REGISTRY)");
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    for (auto* sub : app.get_subcommands()) return run_command(sub->get_name(), opt);
    return kUsage;
}
