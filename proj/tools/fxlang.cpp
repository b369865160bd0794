#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fxlang/driver.hpp"
#include "fxlang/wasm.hpp"

namespace {

using fxlang::Event;
using fxlang::EventLog;

// Prints events appended to the log since the last call. In trace mode
// every event is shown in the `<seq> <KIND> <payload>` format; otherwise
// only intermediate results appear, as `=> <n>`.
class EventPrinter {
public:
    EventPrinter(const EventLog& log, bool trace) : log_(log), trace_(trace) {}

    void flush() {
        const auto& evs = log_.events();
        for (; seen_ < evs.size(); ++seen_) {
            const Event& e = evs[seen_];
            if (trace_) {
                std::cout << e.seq << ' ' << kind_name(e.kind);
                if (!e.payload.empty()) std::cout << ' ' << e.payload;
                std::cout << '\n';
            } else if (e.kind == Event::Kind::Intermediate) {
                std::cout << "=> " << e.payload << '\n';
            }
        }
        std::cout.flush();
    }

private:
    const EventLog& log_;
    bool trace_;
    std::size_t seen_ = 0;
};

int run_repl(fxlang::Semantics sem, bool trace) {
    EventLog log;
    EventPrinter printer(log, trace);
    fxlang::Repl repl(sem, log);
    bool any_error = false;

    auto report = [&](const std::vector<fxlang::ProgramResult>& results) {
        printer.flush();
        for (const auto& r : results) {
            if (!r.ok) {
                std::cerr << r.error << '\n';
                any_error = true;
            } else if (r.module) {
                std::cout << fxlang::wasm::emit(*r.module);
            } else {
                std::cout << r.value << '\n';
            }
        }
        std::cout.flush();
    };

    std::string line;
    while (std::getline(std::cin, line)) report(repl.feed_line(line));
    report(repl.finish());
    return any_error ? 1 : 0;
}

int run_compile(const std::string& path, fxlang::Semantics sem, const std::string& out_path,
                bool trace) {
    std::string source;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        source = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "Cannot open " << path << '\n';
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        source = ss.str();
    }

    EventLog log;
    EventPrinter printer(log, trace);
    fxlang::ProgramResult r = fxlang::run_source(source, sem, log);
    if (trace) printer.flush();
    if (!r.ok) {
        std::cerr << r.error << '\n';
        return 1;
    }

    std::string text = r.module ? fxlang::wasm::emit(*r.module) : std::to_string(r.value) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "Cannot open " << out_path << '\n';
            return 2;
        }
        out << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fxlang: streaming interpreter and Wasm compiler"};
    app.require_subcommand(1);

    std::string repl_sem = "eff";
    bool repl_trace = false;
    auto* repl = app.add_subcommand("repl", "interactive session; `;;` ends a program");
    repl->add_option("--semantics", repl_sem, "int | env | eff | wasm | wasm-no-alloc")
        ->check(CLI::IsMember({"int", "env", "eff", "wasm", "wasm-no-alloc"}));
    repl->add_flag("--trace", repl_trace, "print the event log as it grows");

    std::string file;
    std::string compile_sem = "wasm";
    std::string out_path;
    bool compile_trace = false;
    auto* compile = app.add_subcommand("compile", "compile a source file to .wat");
    compile->add_option("file", file, "source file, or - for stdin")->required();
    compile->add_option("--semantics", compile_sem, "wasm | wasm-no-alloc")
        ->check(CLI::IsMember({"wasm", "wasm-no-alloc"}));
    compile->add_option("-o,--output", out_path, "output path (default stdout)");
    compile->add_flag("--trace", compile_trace, "print the event log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    if (repl->parsed()) return run_repl(*fxlang::semantics_from_name(repl_sem), repl_trace);
    return run_compile(file, *fxlang::semantics_from_name(compile_sem), out_path, compile_trace);
}
