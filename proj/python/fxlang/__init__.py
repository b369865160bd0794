"""Streaming interpreter and Wasm-subset compiler for a small let language."""

from ._fxlang import compile_wat, evaluate, execute, semantics_names, trace

__all__ = ["compile_wat", "evaluate", "execute", "semantics_names", "trace"]
