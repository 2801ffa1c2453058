"""Recursive-descent parsers for modal formulas, FO formulas and programs.

Modal:    true false p ~F F&G F|G F->G F<->G <a>F [a]F   (<>F, []F use label R)
FO:       R(x,y) P(x) x=y x!=y ! & | -> A x. E x. E>=k x. E<=k x.
          TC[x,y]{F}(s,t) LFP[X,x]{F}(s)
Programs: F? a P;Q P|Q ~P  (tests take a modal formula at unary level)

Whitespace is insignificant and ``#`` starts a comment running to end of line.
Binary connectives associate to the left except ``->``, which is right
associative.  Quantifier bodies extend as far to the right as possible.
"""

from __future__ import annotations

import re

from ..errors import ArityError, ParseError
from . import fo, modal

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<iff><->)
  | (?P<arrow>->)
  | (?P<dia><(?:[A-Za-z_][A-Za-z0-9_']*[+-]?)?>)
  | (?P<box>\[(?:[A-Za-z_][A-Za-z0-9_']*[+-]?)?\])
  | (?P<le><=)
  | (?P<ge>>=)
  | (?P<neq>!=)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*(?:\+|-(?!>))?)
  | (?P<punct>[~!&|()\[\]{}.,=?;])
    """,
    re.VERBOSE,
)


class Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r})"


def tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "punct":
                kind = value
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def peek(self, k=1):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def expect(self, kind, text=None):
        if not self.at(kind, text):
            want = text or kind
            got = self.tok.text or "end of input"
            raise self.error(f"expected {want!r}, found {got!r}")
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, kind, text=None):
        if self.at(kind, text):
            self.i += 1
            return True
        return False

    def finish(self):
        if not self.at("eof"):
            raise self.error(f"unexpected {self.tok.text!r}")

    # modal ------------------------------------------------------------

    def modal(self):
        left = self.modal_imp()
        while self.accept("iff"):
            left = modal.Iff(left, self.modal_imp())
        return left

    def modal_imp(self):
        left = self.modal_or()
        if self.accept("arrow"):
            return modal.Implies(left, self.modal_imp())
        return left

    def modal_or(self):
        left = self.modal_and()
        while self.accept("|"):
            left = modal.Or(left, self.modal_and())
        return left

    def modal_and(self):
        left = self.modal_unary()
        while self.accept("&"):
            left = modal.And(left, self.modal_unary())
        return left

    def modal_unary(self):
        tok = self.tok
        if self.accept("~") or self.accept("!"):
            return modal.Not(self.modal_unary())
        if tok.kind in ("dia", "box"):
            self.i += 1
            label = tok.text[1:-1] or modal.DEFAULT_LABEL
            cls = modal.Dia if tok.kind == "dia" else modal.Box
            return cls(label, self.modal_unary())
        if self.accept("("):
            inner = self.modal()
            self.expect(")")
            return inner
        if tok.kind == "ident":
            self.i += 1
            if tok.text == "true":
                return modal.TOP
            if tok.text == "false":
                return modal.BOT
            return modal.Prop(tok.text)
        raise self.error(f"expected a formula, found {tok.text or 'end of input'!r}")

    # first-order ------------------------------------------------------

    def fo(self):
        left = self.fo_or()
        if self.accept("arrow"):
            return fo.Implies(left, self.fo())
        return left

    def fo_or(self):
        left = self.fo_and()
        while self.accept("|"):
            left = fo.Or(left, self.fo_and())
        return left

    def fo_and(self):
        left = self.fo_unary()
        while self.accept("&"):
            left = fo.And(left, self.fo_unary())
        return left

    def fo_unary(self):
        if self.accept("!") or self.accept("~"):
            return fo.Not(self.fo_unary())
        tok = self.tok
        if tok.kind == "ident" and tok.text in ("A", "E"):
            nxt = self.peek()
            if nxt.kind == "ident" or (tok.text == "E" and nxt.kind in ("ge", "le")):
                return self.fo_quantifier()
        return self.fo_primary()

    def fo_quantifier(self):
        q = self.expect("ident").text
        count = None
        if q == "E" and self.tok.kind in ("ge", "le"):
            bound = self.tok.kind
            self.i += 1
            k = int(self.expect("int").text)
            count = (bound, k)
        variables = [self.expect("ident").text]
        while self.at("ident"):
            variables.append(self.expect("ident").text)
        self.expect(".")
        body = self.fo()
        for v in reversed(variables):
            if count is None:
                body = (fo.Forall if q == "A" else fo.Exists)(v, body)
            elif count[0] == "ge":
                body = fo.CountGE(count[1], v, body)
            else:
                body = fo.CountLE(count[1], v, body)
        return body

    def fo_primary(self):
        tok = self.tok
        if self.accept("("):
            inner = self.fo()
            self.expect(")")
            return inner
        if tok.kind != "ident":
            raise self.error(f"expected a formula, found {tok.text or 'end of input'!r}")
        if tok.text == "true":
            self.i += 1
            return fo.TRUE
        if tok.text == "false":
            self.i += 1
            return fo.FALSE
        if tok.text == "TC" and self.peek().kind == "[":
            self.i += 2
            x = self.expect("ident").text
            self.expect(",")
            y = self.expect("ident").text
            self.expect("]")
            self.expect("{")
            body = self.fo()
            self.expect("}")
            self.expect("(")
            s = self.expect("ident").text
            self.expect(",")
            t = self.expect("ident").text
            self.expect(")")
            return fo.TC(x, y, body, s, t)
        if tok.text == "LFP" and self.peek().kind == "[":
            self.i += 2
            setvar = self.expect("ident").text
            self.expect(",")
            x = self.expect("ident").text
            self.expect("]")
            self.expect("{")
            body = self.fo()
            self.expect("}")
            self.expect("(")
            s = self.expect("ident").text
            self.expect(")")
            fo.check_positive(setvar, body)
            return fo.LFP(setvar, x, body, s)
        self.i += 1
        if self.accept("("):
            args = [self.expect("ident").text]
            while self.accept(","):
                args.append(self.expect("ident").text)
            self.expect(")")
            if len(args) not in (1, 2):
                raise ArityError(f"relation {tok.text} used with arity {len(args)}; "
                                 "only unary and binary relations are supported",
                                 tok.line, tok.column)
            return fo.Atom(tok.text, tuple(args))
        if self.accept("="):
            return fo.Equals(tok.text, self.expect("ident").text)
        if self.accept("neq"):
            return fo.Not(fo.Equals(tok.text, self.expect("ident").text))
        raise self.error(f"expected '(' or '=' after {tok.text!r}")

    # programs ---------------------------------------------------------

    def program(self):
        left = self.prog_comp()
        while self.accept("|"):
            left = Union(left, self.prog_comp())
        return left

    def prog_comp(self):
        left = self.prog_unary()
        while self.accept(";"):
            left = Comp(left, self.prog_unary())
        return left

    def prog_unary(self):
        start = self.i
        try:
            formula = self.modal_unary()
            if self.accept("?"):
                return Test(formula)
        except ParseError:
            pass
        self.i = start
        if self.accept("~"):
            return DynNeg(self.prog_unary())
        if self.accept("("):
            inner = self.program()
            self.expect(")")
            return inner
        tok = self.expect("ident")
        return Atom(tok.text)


# The program AST lives in kripkelab.programs; import lazily to avoid a cycle.
def _program_nodes():
    from .. import programs
    return programs.Test, programs.Atom, programs.Comp, programs.Union, programs.DynNeg


def Test(f):
    return _program_nodes()[0](f)


def Atom(label):
    return _program_nodes()[1](label)


def Comp(left, right):
    return _program_nodes()[2](left, right)


def Union(left, right):
    return _program_nodes()[3](left, right)


def DynNeg(sub):
    return _program_nodes()[4](sub)


def parse_modal(text):
    """Parse a modal formula."""
    p = _Parser(text)
    phi = p.modal()
    p.finish()
    return phi


def parse_fo(text, signature=None):
    """Parse an FO formula.

    ``signature`` optionally maps relation names to their arity; every atom
    must then agree with it.  Independently of that, a relation symbol may not
    be used with two different arities in the same formula.
    """
    p = _Parser(text)
    phi = p.fo()
    p.finish()
    check_arities(phi, signature)
    return phi


def check_arities(phi, signature=None):
    for node, sets in fo._walk_with_sets(phi, frozenset()):
        if isinstance(node, fo.Atom) and node.rel in sets and len(node.args) != 1:
            raise ArityError(f"set variable {node.rel} must be applied to one variable")
    for rel, arities in fo.relation_arities(phi).items():
        if len(arities) > 1:
            raise ArityError(f"relation {rel} used with arities {sorted(arities)}")
        if signature is not None:
            if rel not in signature:
                raise ArityError(f"relation {rel} is not in the signature")
            if signature[rel] not in arities:
                raise ArityError(f"relation {rel} has arity {signature[rel]} in the signature")


def parse_program(text):
    """Parse a modal program."""
    p = _Parser(text)
    prog = p.program()
    p.finish()
    return prog
