"""Recursive-descent parser for component and variant/configuration files.

Syntax errors are reported as ``SYN`` diagnostics; after an error inside a
body the parser skips to the next ``;`` or ``}`` and carries on, so one run
reports every broken statement.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from . import lexer
from .diagnostics import Diagnostic, Location, error, has_errors, sort_diagnostics
from .lexer import EOF, IDENT, INT, Token
from .model import (
    IN, OUT, Cardinality, ComponentDef, ConnectorDecl, ConstraintClause, Definition, ModelSet,
    PortDecl, PortRef, QualifiedName, SubcomponentDecl, VariantConfig, VariantDef,
    VariantSelection, VariationPointDecl,
)

COMPONENT = "component"
VARIANT_OR_CONFIG = "variant-or-config"

EXTENSIONS = {".arc": COMPONENT, ".archv": VARIANT_OR_CONFIG}


@dataclass(frozen=True)
class SourceFile:
    path: str
    kind: str
    content: str

    @classmethod
    def from_text(cls, path: str, content: str) -> "SourceFile":
        return cls(path, kind_for(path), content)

    @classmethod
    def read(cls, path: Union[str, Path]) -> "SourceFile":
        path = str(path)
        with open(path, encoding="utf-8", errors="replace") as fh:
            return cls(path, kind_for(path), fh.read())


def kind_for(path: str) -> str:
    ext = os.path.splitext(path)[1]
    if ext not in EXTENSIONS:
        raise ValueError(f"unknown model file extension {ext!r} (expected .arc or .archv)")
    return EXTENSIONS[ext]


@dataclass
class ParseResult:
    value: Optional[Definition]
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.value is not None and not has_errors(self.diagnostics)


class _SyntaxError(Exception):
    def __init__(self, diag: Diagnostic):
        super().__init__(diag.message)
        self.diag = diag


@dataclass
class _Body:
    ports: list = field(default_factory=list)
    subcomponents: list = field(default_factory=list)
    inner: list = field(default_factory=list)
    connectors: list = field(default_factory=list)
    variation_points: list = field(default_factory=list)
    selections: list = field(default_factory=list)
    autoconnect: str = "none"


class Parser:
    def __init__(self, source: SourceFile):
        self.source = source
        self.path = source.path
        self.tokens, self.diags = lexer.tokenize(source.content, source.path)
        self.pos = 0
        self.package: tuple[str, ...] = ()

    # -- token helpers ------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def at(self, *kinds: str) -> bool:
        return self.tok.kind in kinds

    def loc(self, tok: Optional[Token] = None) -> Location:
        tok = tok or self.tok
        return Location(self.path, tok.line, tok.column)

    def fail(self, message: str, code: str = "SYN01", tok: Optional[Token] = None):
        raise _SyntaxError(error(code, message, self.loc(tok)))

    def next(self) -> Token:
        tok = self.tok
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def accept(self, kind: str) -> Optional[Token]:
        if self.tok.kind == kind:
            return self.next()
        return None

    def expect(self, kind: str, what: Optional[str] = None) -> Token:
        if self.tok.kind != kind:
            self.fail(f"expected {what or repr(kind)}, found {self.tok.describe()}",
                      "SYN07" if self.tok.kind == EOF else "SYN01")
        return self.next()

    def ident(self, what: str = "a name") -> str:
        return self.expect(IDENT, what).value

    def qualified_name(self, parametric: bool = False) -> QualifiedName:
        parts = [self.name(parametric)]
        while self.accept("."):
            parts.append(self.name(parametric))
        return QualifiedName(tuple(parts))

    def name(self, parametric: bool) -> str:
        """An identifier, optionally ``prefix~name`` where parameters are allowed."""
        first = self.expect(IDENT, "a name")
        if self.at("~"):
            if not parametric:
                self.fail("parametric names ('~') are only allowed inside variant bodies", "SYN06")
            self.next()
            return f"{first.value}~{self.ident()}"
        return first.value

    def sync(self) -> None:
        """Skip the rest of a broken statement."""
        while not self.at(EOF):
            if self.at(";"):
                self.next()
                return
            if self.at("}"):
                return
            if self.at("{"):
                self.skip_block()
                return
            self.next()

    def skip_block(self) -> None:
        depth = 0
        while not self.at(EOF):
            kind = self.next().kind
            if kind == "{":
                depth += 1
            elif kind == "}":
                depth -= 1
                if depth == 0:
                    return

    # -- files --------------------------------------------------------------

    def parse_file(self) -> ParseResult:
        value = None
        try:
            if self.accept("package"):
                self.package = self.qualified_name().parts
                self.expect(";")
            value = self.definition()
        except _SyntaxError as exc:
            self.diags.append(exc.diag)
            if self.tok.kind != EOF:
                # keep reporting errors from the body, but yield no value
                while not self.at("{", EOF):
                    self.next()
                if self.at("{"):
                    try:
                        self.body(self.source.kind == VARIANT_OR_CONFIG)
                    except _SyntaxError as again:
                        self.diags.append(again.diag)
            value = None
        if not self.at(EOF):
            if self.at("component", "variant", "variantConfig", "abstract"):
                self.diags.append(error("SYN04", "only one top-level definition is allowed per file", self.loc()))
            else:
                self.diags.append(error("SYN01", f"unexpected {self.tok.describe()} after definition", self.loc()))
        return ParseResult(value, sort_diagnostics(self.diags))

    def definition(self) -> Definition:
        tok = self.tok
        if self.source.kind == COMPONENT:
            if tok.kind in ("variant", "variantConfig", "abstract"):
                self.fail("variant and configuration definitions belong in .archv files", "SYN05")
            self.expect("component", "'component'")
            return self.component(tok)
        if tok.kind == "component":
            self.fail("component definitions belong in .arc files", "SYN05")
        if tok.kind == "variant":
            return self.variant()
        if tok.kind in ("abstract", "variantConfig"):
            return self.config()
        self.fail(f"expected 'variant' or 'variantConfig', found {tok.describe()}",
                  "SYN07" if tok.kind == EOF else "SYN01")

    def component(self, start: Token) -> ComponentDef:
        name = self.ident("a component name")
        body = self.body(False)
        return ComponentDef(
            name=name, package=self.package, autoconnect=body.autoconnect,
            ports=tuple(body.ports), subcomponents=tuple(body.subcomponents),
            inner=tuple(body.inner), connectors=tuple(body.connectors),
            variation_points=tuple(body.variation_points), location=self.loc(start),
        )

    def variant(self) -> VariantDef:
        start = self.expect("variant")
        name = self.ident("a variant name")
        params: list[str] = []
        if self.accept("("):
            params.append(self.ident("a parameter name"))
            while self.accept(","):
                params.append(self.ident("a parameter name"))
            self.expect(")")
        self.expect("realizes", "'realizes'")
        realizes = self.qualified_name()
        constraints = self.constraints()
        body = self.body(True)
        return VariantDef(
            name=name, realizes=realizes, package=self.package, params=tuple(params),
            constraints=tuple(constraints), ports=tuple(body.ports),
            subcomponents=tuple(body.subcomponents), inner=tuple(body.inner),
            connectors=tuple(body.connectors), selections=tuple(body.selections),
            location=self.loc(start), stray_variation_points=tuple(body.variation_points),
        )

    def constraints(self) -> list[ConstraintClause]:
        out: list[ConstraintClause] = []
        while True:
            if self.at("requires", "excludes"):
                out.append(self.clause())
            elif self.accept("constraint"):
                self.expect("(")
                out.append(self.clause())
                while not self.at(")"):
                    self.accept(",")
                    out.append(self.clause())
                self.expect(")")
            else:
                return out

    def clause(self) -> ConstraintClause:
        if not self.at("requires", "excludes"):
            self.fail(f"expected 'requires' or 'excludes', found {self.tok.describe()}")
        tok = self.next()
        return ConstraintClause(tok.kind, self.qualified_name(), self.loc(tok))

    def config(self) -> VariantConfig:
        start = self.tok
        abstract = bool(self.accept("abstract"))
        self.expect("variantConfig", "'variantConfig'")
        name = self.ident("a configuration name")
        self.expect("for", "'for'")
        target = self.qualified_name()
        extends = self.qualified_name() if self.accept("extends") else None
        self.expect("{")
        selections = []
        while not self.at("}", EOF):
            try:
                selections.append(self.selection(False))
            except _SyntaxError as exc:
                self.diags.append(exc.diag)
                self.sync()
        self.expect("}", "'}'")
        return VariantConfig(name=name, target=target, package=self.package, abstract=abstract,
                             extends=extends, selections=tuple(selections), location=self.loc(start))

    # -- bodies -------------------------------------------------------------

    def body(self, in_variant: bool) -> _Body:
        self.expect("{")
        body = _Body()
        while not self.at("}", EOF):
            try:
                self.element(body, in_variant)
            except _SyntaxError as exc:
                self.diags.append(exc.diag)
                self.sync()
        self.expect("}", "'}'")
        return body

    def element(self, body: _Body, in_variant: bool) -> None:
        tok = self.tok
        kind = tok.kind
        if kind == "autoconnect":
            self.next()
            mode = self.next()
            modes = {"port": "port", "type": "type", "off": "none", "none": "none"}
            if mode.value not in modes:
                self.fail(f"expected 'port', 'type' or 'off' after 'autoconnect', found {mode.describe()}", tok=mode)
            if in_variant:
                self.fail("autoconnect cannot be set inside a variant body", tok=tok)
            body.autoconnect = modes[mode.value]
            self.expect(";")
        elif kind == "port":
            self.next()
            body.ports.append(self.port(in_variant))
            while self.accept(","):
                body.ports.append(self.port(in_variant))
            self.expect(";")
        elif kind == "component":
            self.next()
            if self.tok.kind == IDENT and self.peek().kind == "{":
                body.inner.append(self.component(tok))
                self.accept(";")
                return
            type_name = self.qualified_name()
            names: list[str] = []
            if self.at(IDENT):
                names.append(self.name(in_variant))
                while self.accept(","):
                    names.append(self.name(in_variant))
            self.expect(";")
            implicit = not names
            body.subcomponents.append(SubcomponentDecl(
                type_name, tuple(names) if names else (type_name.last,), implicit, self.loc(tok)))
        elif kind == "connect":
            self.next()
            source = self.port_ref(in_variant)
            self.expect("->", "'->'")
            targets = [self.port_ref(in_variant)]
            while self.accept(","):
                targets.append(self.port_ref(in_variant))
            self.expect(";")
            body.connectors.append(ConnectorDecl(source, tuple(targets), "explicit", self.loc(tok)))
        elif kind == "variationPoint":
            self.next()
            self.expect(":", "':'")
            name = self.ident("a variation point name")
            card = self.cardinality() if self.at("[") else Cardinality(1, 1)
            self.expect(";")
            body.variation_points.append(VariationPointDecl(name, card, self.loc(tok)))
        elif kind == IDENT:
            if not in_variant:
                self.fail("variant selections are only allowed in variant bodies and configurations")
            body.selections.append(self.selection(True))
        else:
            self.fail(f"unexpected {tok.describe()} in body", "SYN07" if kind == EOF else "SYN01")

    def port(self, in_variant: bool) -> PortDecl:
        tok = self.tok
        if not self.at(IN, OUT):
            self.fail(f"expected 'in' or 'out', found {tok.describe()}")
        direction = self.next().kind
        type_name = self.ident("a port type")
        if self.at(IDENT):
            first = self.next().value
            if self.accept("~"):
                if not in_variant:
                    self.fail("parametric names ('~') are only allowed inside variant bodies", "SYN06")
                if self.at(IDENT):
                    return PortDecl(direction, type_name, f"{first}~{self.next().value}", False, self.loc(tok))
                return PortDecl(direction, type_name, f"{first}~{type_name}", True, self.loc(tok))
            return PortDecl(direction, type_name, first, False, self.loc(tok))
        return PortDecl(direction, type_name, type_name, True, self.loc(tok))

    def port_ref(self, in_variant: bool) -> PortRef:
        first = self.name(in_variant)
        if self.accept("."):
            return PortRef(first, self.name(in_variant))
        return PortRef(None, first)

    def cardinality(self) -> Cardinality:
        start = self.expect("[")
        lo = int(self.expect(INT, "a number").value)
        self.expect("..", "'..'")
        hi = int(self.expect(INT, "a number").value)
        self.expect("]", "']'")
        try:
            return Cardinality(lo, hi)
        except ValueError:
            self.fail(f"invalid cardinality [{lo}..{hi}]", "SYN08", start)

    def selection(self, in_variant: bool) -> VariantSelection:
        tok = self.tok
        vp = self.qualified_name(in_variant)
        self.expect("realizedBy", "'realizedBy'")
        variant = self.ident("a variant name")
        actuals: list[str] = []
        if self.accept("("):
            actuals.append(self.ident("an actual parameter"))
            while self.accept(","):
                actuals.append(self.ident("an actual parameter"))
            self.expect(")")
        self.expect(";")
        return VariantSelection(vp, variant, tuple(actuals), self.loc(tok))


def _parse(source: SourceFile) -> ParseResult:
    try:
        return Parser(source).parse_file()
    except RecursionError:
        return ParseResult(None, [error("SYN09", "model nested too deeply", Location(source.path, 1, 1))])


def parse_component_file(source: SourceFile) -> ParseResult:
    if source.kind != COMPONENT:
        raise ValueError(f"{source.path} is not a component file")
    return _parse(source)


def parse_variant_file(source: SourceFile) -> ParseResult:
    if source.kind != VARIANT_OR_CONFIG:
        raise ValueError(f"{source.path} is not a variant or configuration file")
    return _parse(source)


def parse_source(source: SourceFile) -> ParseResult:
    return _parse(source)


def parse_text(text: str, path: str = "<memory>.arc") -> ParseResult:
    return _parse(SourceFile.from_text(path, text))


# -- model sets ---------------------------------------------------------------

def discover(paths: Iterable[Union[str, Path]]) -> list[str]:
    """All model files under ``paths``, recursively, in sorted order."""
    found: set[str] = set()
    for p in paths:
        p = Path(p)
        if p.is_dir():
            for ext in EXTENSIONS:
                found.update(str(f) for f in p.rglob(f"*{ext}") if f.is_file())
        elif p.suffix in EXTENSIONS:
            found.add(str(p))
        else:
            raise ValueError(f"{p} is neither a directory nor a .arc/.archv file")
    return sorted(found)


def load_sources(sources: Iterable[SourceFile], workers: int = 4) -> tuple[ModelSet, list[Diagnostic]]:
    sources = sorted(sources, key=lambda s: s.path)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_parse, sources))
    defs = [r.value for r in results if r.value is not None]
    diags = [d for r in results for d in r.diagnostics]
    return ModelSet(defs), sort_diagnostics(diags)


def load_texts(texts: dict[str, str]) -> tuple[ModelSet, list[Diagnostic]]:
    """Build a model set from ``{path: content}``; the extension picks the file kind."""
    return load_sources([SourceFile.from_text(p, t) for p, t in texts.items()])


def load_paths(paths: Iterable[Union[str, Path]]) -> tuple[ModelSet, list[Diagnostic]]:
    return load_sources([SourceFile.read(p) for p in discover(paths)])
