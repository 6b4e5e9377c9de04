"""Text formats: the signature DSL, poset files, and algebra files.

Signature grammar (statements end with ';', '#' starts a comment):

    poset NAME { <poset lines> }
    op NAME ( arity = K | LABEL [, LABEL]* | ) [: const = POSETNAME] ;
    vars X Y Z ;
    ineq NAME : TERM <= TERM ;
    forall V in POSETNAME : ineq NAME : TERM <= TERM ;

    TERM := VAR | OP | OP [CONSTELEM] | OP ( TERM, ... ) | OP [CONSTELEM] ( TERM, ... )

Poset lines (used standalone and inside ``poset`` blocks) are 'element ID'
and 'leq ID ID' entries separated by newlines or ';'; 'leq' lines declare
covering pairs and the reflexive-transitive closure is taken.  Ids there are
arbitrary whitespace-free words.  A one-point poset named ``unit`` is in
scope unless shadowed; ops without a const clause use it.  ``vars`` sets the
variable context for the inequalities that follow.  ``forall`` expands into
one inequality per element of the named poset, substituted into constant
position, named ``NAME@ELEM``.

Algebra files:

    signature PATH
    carrier { <poset lines> }
    interp OPNAME { (ARG, ..., CONST) -> ELEM ; ... }
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

from .errors import InputError, ParseError
from .poset import FinPoset
from .signature import (
    UNIT,
    Apply,
    FormalIneq,
    Monomial,
    PreSignature,
    Signature,
    Term,
    Var,
    check_term,
    format_term,
)

_ID_RE = re.compile(r"[A-Za-z0-9_@.'+*-]+")
_KEYWORDS = ("poset", "op", "vars", "ineq", "forall")


@dataclass(frozen=True)
class _Tok:
    kind: str  # ID, SYM, LE, CONST, BLOCK, NEWLINE, EOF
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            toks.append(_Tok("NEWLINE", "\n", line, col))
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("<=", i):
            toks.append(_Tok("LE", "<=", line, col))
            i += 2
            col += 2
            continue
        if ch == "[":
            depth, j = 1, i + 1
            while j < n and depth:
                if text[j] == "[":
                    depth += 1
                elif text[j] == "]":
                    depth -= 1
                elif text[j] == "\n":
                    raise ParseError("newline inside [...] constant", line, col)
                j += 1
            if depth:
                raise ParseError("unterminated [...] constant", line, col)
            toks.append(_Tok("CONST", text[i + 1:j - 1], line, col))
            col += j - i
            i = j
            continue
        if ch == "{":
            depth, j = 1, i + 1
            while j < n and depth:
                if text[j] == "{":
                    depth += 1
                elif text[j] == "}":
                    depth -= 1
                j += 1
            if depth:
                raise ParseError("unterminated { ... } block", line, col)
            toks.append(_Tok("BLOCK", text[i + 1:j - 1], line, col))
            seg = text[i:j]
            line += seg.count("\n")
            col = 1 if "\n" in seg else col + len(seg)
            i = j
            continue
        if ch in "(),;:=":
            toks.append(_Tok("SYM", ch, line, col))
            i += 1
            col += 1
            continue
        m = _ID_RE.match(text, i)
        if m:
            toks.append(_Tok("ID", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Tok("EOF", "", line, col))
    return toks


def _split_balanced(s: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


# -- poset text -------------------------------------------------------------


def parse_poset(text: str, first_line: int = 1) -> FinPoset:
    """Poset file format: 'element ID' and 'leq ID ID' lines; covers get closed."""
    elements: list[str] = []
    seen: set[str] = set()
    covers: list[tuple[str, str, int]] = []
    for offset, raw in enumerate(text.split("\n")):
        lineno = first_line + offset
        raw = raw.split("#", 1)[0]
        for chunk in raw.split(";"):
            words = chunk.split()
            if not words:
                continue
            if words[0] == "element" and len(words) == 2:
                if words[1] in seen:
                    raise ParseError(f"duplicate element {words[1]!r}", lineno)
                seen.add(words[1])
                elements.append(words[1])
            elif words[0] == "leq" and len(words) == 3:
                covers.append((words[1], words[2], lineno))
            else:
                raise ParseError(f"bad poset line: {' '.join(words)!r}", lineno)
    for a, b, lineno in covers:
        if a not in seen:
            raise ParseError(f"leq mentions undeclared element {a!r}", lineno)
        if b not in seen:
            raise ParseError(f"leq mentions undeclared element {b!r}", lineno)
    try:
        return FinPoset.from_covers(elements, [(a, b) for a, b, _ in covers])
    except InputError as exc:
        raise ParseError(f"not a partial order: {exc}", first_line) from exc


def format_poset(p: FinPoset) -> str:
    lines = [f"element {e}" for e in p]
    lines += [f"leq {a} {b}" for a, b in p.covers()]
    return "\n".join(lines)


# -- signature DSL -----------------------------------------------------------


class _SigParser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.pos = 0
        self.posets: dict[str, FinPoset] = {}
        self.op_names: list[str] = []
        self.monomials: dict[str, Monomial] = {}
        self.cur_vars: tuple[str, ...] = ()
        self.ineq_names: list[str] = []
        self.ineqs: dict[str, FormalIneq] = {}

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise ParseError(f"expected {want!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def accept_sym(self, ch: str) -> bool:
        if self.peek().kind == "SYM" and self.peek().text == ch:
            self.pos += 1
            return True
        return False

    def skip_newlines(self):
        while self.peek().kind == "NEWLINE":
            self.pos += 1

    def const_poset(self, name: str, tok: _Tok) -> FinPoset:
        if name in self.posets:
            return self.posets[name]
        if name == "unit":
            return UNIT
        raise ParseError(f"unknown poset {name!r}", tok.line, tok.col)

    def parse(self) -> Signature:
        while True:
            self.skip_newlines()
            tok = self.peek()
            if tok.kind == "EOF":
                break
            if tok.kind != "ID":
                raise ParseError(f"expected a statement, found {tok.text!r}", tok.line, tok.col)
            if tok.text == "poset":
                self.stmt_poset()
            elif tok.text == "op":
                self.stmt_op()
            elif tok.text == "vars":
                self.stmt_vars()
            elif tok.text == "ineq":
                self.stmt_ineq(None, None)
            elif tok.text == "forall":
                self.stmt_forall()
            else:
                raise ParseError(f"unknown statement {tok.text!r}", tok.line, tok.col)
        return Signature(
            PreSignature(tuple(self.op_names), dict(self.monomials)),
            tuple(self.ineq_names),
            dict(self.ineqs),
        )

    def stmt_poset(self):
        self.next()
        name = self.expect("ID")
        block = self.expect("BLOCK")
        if name.text in self.posets:
            raise ParseError(f"duplicate poset {name.text!r}", name.line, name.col)
        self.posets[name.text] = parse_poset(block.text, block.line)

    def stmt_op(self):
        self.next()
        name = self.expect("ID")
        if name.text in self.monomials:
            raise ParseError(f"duplicate operation {name.text!r}", name.line, name.col)
        if name.text in self.cur_vars:
            raise ParseError(f"operation {name.text!r} collides with a variable", name.line, name.col)
        self.expect("SYM", "(")
        labels: list[str] = []
        if not self.accept_sym(")"):
            first = self.expect("ID")
            if first.text == "arity":
                self.expect("SYM", "=")
                count = self.expect("ID")
                if not count.text.isdigit():
                    raise ParseError("arity = N needs a number", count.line, count.col)
                labels = [str(i + 1) for i in range(int(count.text))]
                self.expect("SYM", ")")
            else:
                labels = [first.text]
                while not self.accept_sym(")"):
                    self.accept_sym(",")
                    labels.append(self.expect("ID").text)
        const = self.op_const()
        if len(set(labels)) != len(labels):
            raise ParseError(f"duplicate arity label in operation {name.text!r}", name.line, name.col)
        self.monomials[name.text] = Monomial(tuple(labels), const)
        self.op_names.append(name.text)

    def op_const(self) -> FinPoset:
        if self.accept_sym(":"):
            kw = self.expect("ID")
            if kw.text != "const":
                raise ParseError(f"expected 'const', found {kw.text!r}", kw.line, kw.col)
            self.expect("SYM", "=")
            pname = self.expect("ID")
            const = self.const_poset(pname.text, pname)
        else:
            const = UNIT
        self.expect("SYM", ";")
        return const

    def stmt_vars(self):
        self.next()
        names: list[str] = []
        while not self.accept_sym(";"):
            tok = self.expect("ID")
            if tok.text in names:
                raise ParseError(f"duplicate variable {tok.text!r}", tok.line, tok.col)
            if tok.text in self.monomials:
                raise ParseError(f"variable {tok.text!r} collides with an operation", tok.line, tok.col)
            names.append(tok.text)
        self.cur_vars = tuple(names)

    def stmt_ineq(self, quant: str | None, quant_poset: FinPoset | None):
        self.next()  # 'ineq'
        name = self.expect("ID")
        self.expect("SYM", ":")
        lhs = self.parse_term(quant)
        self.expect("LE")
        rhs = self.parse_term(quant)
        self.expect("SYM", ";")
        if quant is None:
            self.add_ineq(name, FormalIneq(self.cur_vars, lhs, rhs))
        else:
            assert quant_poset is not None
            for elem in quant_poset:
                self.add_ineq(
                    name,
                    FormalIneq(self.cur_vars, _subst_const(lhs, quant, elem),
                               _subst_const(rhs, quant, elem)),
                    suffix=f"@{elem}",
                    check_tok=name,
                )

    def add_ineq(self, name_tok: _Tok, ineq: FormalIneq, suffix: str = "",
                 check_tok: _Tok | None = None):
        full = name_tok.text + suffix
        if full in self.ineqs:
            raise ParseError(f"duplicate inequality {full!r}", name_tok.line, name_tok.col)
        pre = PreSignature(tuple(self.op_names), dict(self.monomials))
        tok = check_tok or name_tok
        try:
            check_term(ineq.lhs, pre, ineq.vars)
            check_term(ineq.rhs, pre, ineq.vars)
        except InputError as exc:
            raise ParseError(str(exc), tok.line, tok.col) from exc
        self.ineq_names.append(full)
        self.ineqs[full] = ineq

    def stmt_forall(self):
        self.next()
        qv = self.expect("ID")
        kw = self.expect("ID")
        if kw.text != "in":
            raise ParseError(f"expected 'in', found {kw.text!r}", kw.line, kw.col)
        pname = self.expect("ID")
        poset = self.const_poset(pname.text, pname)
        self.expect("SYM", ":")
        head = self.peek()
        if head.kind != "ID" or head.text != "ineq":
            raise ParseError("forall expects an ineq statement", head.line, head.col)
        if qv.text in self.cur_vars or qv.text in self.monomials:
            raise ParseError(f"forall binder {qv.text!r} collides with a variable or operation",
                             qv.line, qv.col)
        self.stmt_ineq(qv.text, poset)

    def parse_term(self, quant: str | None) -> Term:
        tok = self.expect("ID")
        name = tok.text
        const: str | None = None
        if self.peek().kind == "CONST":
            const = self.next().text.strip()
        args: list[Term] = []
        has_args = False
        if self.accept_sym("("):
            has_args = True
            if not self.accept_sym(")"):
                args.append(self.parse_term(quant))
                while self.accept_sym(","):
                    args.append(self.parse_term(quant))
                self.expect("SYM", ")")
        if name in self.cur_vars:
            if const is not None or has_args:
                raise ParseError(f"variable {name!r} cannot take arguments or a constant",
                                 tok.line, tok.col)
            return Var(name)
        if name in self.monomials:
            mono = self.monomials[name]
            if len(args) != len(mono.arity):
                raise ParseError(
                    f"operation {name!r} expects {len(mono.arity)} arguments, got {len(args)}",
                    tok.line, tok.col)
            if const is None:
                if len(mono.constant) != 1:
                    raise ParseError(
                        f"operation {name!r} needs a constant element in brackets",
                        tok.line, tok.col)
                const = mono.constant.elements[0]
            elif const != quant and const not in mono.constant:
                raise ParseError(
                    f"{const!r} is not an element of the constant poset of {name!r}",
                    tok.line, tok.col)
            return Apply(name, tuple(args), const)
        raise ParseError(f"unknown variable or operation {name!r}", tok.line, tok.col)


def _subst_const(t: Term, quant: str, elem: str) -> Term:
    if isinstance(t, Var):
        return t
    const = elem if t.const == quant else t.const
    return Apply(t.op, tuple(_subst_const(a, quant, elem) for a in t.args), const)


def parse_signature(text: str) -> Signature:
    """Parse the signature DSL; raises ParseError with a position on failure."""
    return _SigParser(text).parse()


def format_signature(sig: Signature) -> str:
    """Print a signature so that parse_signature reads back an equal value."""
    lines: list[str] = []
    poset_names: dict[FinPoset, str] = {}
    counter = 0
    for op in sig.op_names:
        const = sig.monomial(op).constant
        if const == UNIT or const in poset_names:
            continue
        poset_names[const] = f"P{counter}"
        counter += 1
    for const, pname in poset_names.items():
        body = "\n".join("  " + ln for ln in format_poset(const).split("\n"))
        lines.append(f"poset {pname} {{\n{body}\n}}")
    for op in sig.op_names:
        mono = sig.monomial(op)
        if mono.arity and all(lab == str(i + 1) for i, lab in enumerate(mono.arity)):
            arity = f"arity = {len(mono.arity)}"
        else:
            arity = ", ".join(mono.arity)
        constref = "" if mono.constant == UNIT else f" : const = {poset_names[mono.constant]}"
        lines.append(f"op {op}({arity}){constref};")
    for name in sig.ineq_names:
        ineq = sig.ineqs[name]
        lines.append(f"vars {' '.join(ineq.vars)};")
        lines.append(f"ineq {name}: {format_term(ineq.lhs, sig)} <= {format_term(ineq.rhs, sig)};")
    return "\n".join(lines) + "\n"


# -- algebra files ------------------------------------------------------------


def parse_algebra_file(text: str) -> tuple[str, FinPoset, dict[str, dict]]:
    """Raw parse of an algebra file: signature path, carrier, interp tables.

    Table keys are ``(args tuple, const)``; semantic validation happens when
    the PreAlgebra is built.
    """
    toks = _lex(text)
    pos = 0
    sig_path: str | None = None
    carrier: FinPoset | None = None
    tables: dict[str, dict] = {}

    while True:
        while toks[pos].kind == "NEWLINE":
            pos += 1
        tok = toks[pos]
        if tok.kind == "EOF":
            break
        if tok.kind != "ID":
            raise ParseError(f"expected a statement, found {tok.text!r}", tok.line, tok.col)
        if tok.text == "signature":
            pos += 1
            parts = []
            while toks[pos].kind not in ("NEWLINE", "EOF"):
                parts.append(toks[pos].text)
                pos += 1
            if not parts:
                raise ParseError("signature statement needs a path", tok.line, tok.col)
            sig_path = "".join(parts)
        elif tok.text == "carrier":
            pos += 1
            if toks[pos].kind != "BLOCK":
                raise ParseError("carrier needs a { ... } block", tok.line, tok.col)
            carrier = parse_poset(toks[pos].text, toks[pos].line)
            pos += 1
        elif tok.text == "interp":
            pos += 1
            if toks[pos].kind != "ID":
                raise ParseError("interp needs an operation name", tok.line, tok.col)
            opname = toks[pos].text
            pos += 1
            if toks[pos].kind != "BLOCK":
                raise ParseError("interp needs a { ... } block", toks[pos].line, toks[pos].col)
            if opname in tables:
                raise ParseError(f"duplicate interp block for {opname!r}", tok.line, tok.col)
            tables[opname] = _parse_interp_block(toks[pos].text, toks[pos].line)
            pos += 1
        else:
            raise ParseError(f"unknown statement {tok.text!r}", tok.line, tok.col)
    if sig_path is None:
        raise ParseError("algebra file lacks a signature statement", 1)
    if carrier is None:
        raise ParseError("algebra file lacks a carrier block", 1)
    return sig_path, carrier, tables


_ROW_RE = re.compile(r"\((.*)\)\s*->\s*(\S+)\s*\Z", re.S)


def _parse_interp_block(text: str, first_line: int) -> dict:
    table: dict[tuple[tuple[str, ...], str], str] = {}
    for entry in text.split(";"):
        stripped = re.sub(r"#[^\n]*", "", entry).strip()
        if not stripped:
            continue
        m = _ROW_RE.match(stripped)
        if not m:
            raise ParseError(f"bad interp row {stripped!r}", first_line)
        parts = [p.strip() for p in _split_balanced(m.group(1))]
        if parts == [""]:
            parts = []
        if not parts:
            raise ParseError(f"interp row needs at least a constant: {stripped!r}", first_line)
        key = (tuple(parts[:-1]), parts[-1])
        if key in table:
            raise ParseError(f"duplicate interp row for {parts!r}", first_line)
        table[key] = m.group(2)
    return table


def load_signature(path: str) -> Signature:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_signature(fh.read())


def load_poset(path: str) -> FinPoset:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_poset(fh.read())


def load_algebra(path: str):
    """Parse an algebra file and build the validated PreAlgebra it describes."""
    from .algebra import PreAlgebra

    with open(path, "r", encoding="utf-8") as fh:
        sig_path, carrier, tables = parse_algebra_file(fh.read())
    resolved = sig_path if os.path.isabs(sig_path) else os.path.join(os.path.dirname(path), sig_path)
    sig = load_signature(resolved)
    return PreAlgebra(sig, carrier, tables)
