#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fxlang/driver.hpp"
#include "fxlang/events.hpp"
#include "fxlang/wasm.hpp"

namespace py = pybind11;

namespace {

fxlang::Semantics parse_semantics(const std::string& name) {
    auto sem = fxlang::semantics_from_name(name);
    if (!sem) throw py::value_error("unknown semantics: " + name);
    return *sem;
}

fxlang::ProgramResult run(const std::string& source, fxlang::Semantics sem,
                          fxlang::EventLog& log) {
    fxlang::ProgramResult r = fxlang::run_source(source, sem, log);
    return r;
}

long long evaluate(const std::string& source, const std::string& semantics) {
    fxlang::EventLog log;
    fxlang::ProgramResult r = run(source, parse_semantics(semantics), log);
    if (!r.ok) throw py::value_error(r.error);
    if (r.module) return fxlang::wasm::execute(*r.module);
    return r.value;
}

std::string compile_wat(const std::string& source, bool allocate) {
    fxlang::EventLog log;
    fxlang::ProgramResult r =
        run(source, allocate ? fxlang::Semantics::Wasm : fxlang::Semantics::WasmNoAlloc, log);
    if (!r.ok) throw py::value_error(r.error);
    return fxlang::wasm::emit(*r.module);
}

long long execute(const std::string& source, bool allocate) {
    fxlang::EventLog log;
    fxlang::ProgramResult r =
        run(source, allocate ? fxlang::Semantics::Wasm : fxlang::Semantics::WasmNoAlloc, log);
    if (!r.ok) throw py::value_error(r.error);
    return fxlang::wasm::execute(*r.module);
}

// Event log of a run, one `<seq> <KIND> <payload>` line per event. The
// log is returned even when the program fails: the error appears as an
// ERROR event.
std::vector<std::string> trace(const std::string& source, const std::string& semantics) {
    fxlang::EventLog log;
    run(source, parse_semantics(semantics), log);
    std::vector<std::string> lines;
    for (const fxlang::Event& e : log.events()) {
        std::string line = std::to_string(e.seq);
        line += ' ';
        line += fxlang::kind_name(e.kind);
        if (!e.payload.empty()) {
            line += ' ';
            line += e.payload;
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace

PYBIND11_MODULE(_fxlang, m) {
    m.doc() = "streaming interpreter and Wasm-subset compiler for a small let language";

    m.def("evaluate", &evaluate, py::arg("source"), py::arg("semantics") = "eff",
          "Run a program and return its integer value. Semantics: int, env, eff,\n"
          "wasm, wasm-no-alloc (the wasm variants compile and execute the module).");
    m.def("compile_wat", &compile_wat, py::arg("source"), py::arg("allocate") = true,
          "Compile a program to WebAssembly text. With allocate=False,\n"
          "multi-use bindings are inlined instead of receiving locals.");
    m.def("execute", &execute, py::arg("source"), py::arg("allocate") = true,
          "Compile a program and run it on the reference executor.");
    m.def("trace", &trace, py::arg("source"), py::arg("semantics") = "eff",
          "Event log of a run, one '<seq> <KIND> <payload>' line per event.");
    m.def("semantics_names", [] {
        return std::vector<std::string>{"int", "env", "eff", "wasm", "wasm-no-alloc"};
    });
}
