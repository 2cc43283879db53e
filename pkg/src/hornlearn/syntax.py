"""
Text syntax: parsing and canonical rendering of terms, clauses and programs.

Grammar (UTF-8 text):
  program file    = sequence of clauses, each terminated by "."
  fact            = atom
  rule            = head ":-" body1, ..., bodyk
  atom            = lowercase functor, optionally with parenthesized args
  variables       = uppercase-initial identifiers
  "%"             = line comment
  stream file     = one ground atom per line, "."-terminated, arrival order
                    = line order

Rendering is deterministic and canonical: clauses are sorted by (head
predicate, arity, max term depth, rendered text) and variables are renamed
X0, X1, ... in first-occurrence order. Canonical renderings of clauses are
renaming-invariant, so string equality of canonical forms is clause variant
equality.
"""

from __future__ import annotations

from itertools import permutations, product

from .logic import (
    Clause,
    ExampleStream,
    Fn,
    HornProgram,
    Literal,
    Term,
    Var,
    apply_to_literal,
    is_ground_literal,
)


class ParseError(ValueError):
    """Syntax or well-formedness error, with 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# Tokenizer


_PUNCT = {"(": "lparen", ")": "rparen", ",": "comma", ".": "dot", ";": "semi"}


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == ":" and i + 1 < n and text[i + 1] == "-":
            tokens.append(("arrow", ":-", line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT:
            tokens.append((_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isalpha() or ch.isdigit() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word[0].isupper():
                tokens.append(("var", word, line, col))
            else:
                tokens.append(("name", word, line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int, int]:
        return self.tokens[self.pos]

    def next(self) -> tuple[str, str, int, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> tuple[str, str, int, int]:
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {what}, found {tok[1]!r}", tok[2], tok[3])
        return tok

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok[2], tok[3])

    def parse_term(self) -> Term:
        kind, word, line, col = self.next()
        if kind == "var":
            return Var(word)
        if kind != "name":
            raise ParseError(f"expected a term, found {word!r}", line, col)
        if self.peek()[0] != "lparen":
            return Fn(word)
        self.next()
        args = [self.parse_term()]
        while self.peek()[0] == "comma":
            self.next()
            args.append(self.parse_term())
        self.expect("rparen", "')'")
        return Fn(word, tuple(args))

    def parse_atom(self) -> Literal:
        kind, word, line, col = self.peek()
        if kind != "name":
            raise ParseError(f"expected an atom, found {word!r}", line, col)
        t = self.parse_term()
        assert isinstance(t, Fn)
        return Literal(True, t.functor, t.args)

    def parse_clause(self) -> Clause:
        head = self.parse_atom()
        kind = self.peek()[0]
        if kind == "semi":
            raise self.error("disjunctive heads are not supported")
        if kind == "dot":
            self.next()
            return Clause((head,))
        self.expect("arrow", "':-' or '.'")
        body = [self.parse_atom()]
        while self.peek()[0] == "comma":
            self.next()
            body.append(self.parse_atom())
        self.expect("dot", "'.'")
        return Clause([head] + [b.negated() for b in body])


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.parse_term()
    p.expect("eof", "end of input")
    return t


def parse_atom(text: str) -> Literal:
    p = _Parser(text)
    a = p.parse_atom()
    if p.peek()[0] == "dot":
        p.next()
    p.expect("eof", "end of input")
    return a


def parse_program(text: str) -> HornProgram:
    p = _Parser(text)
    clauses = []
    while p.peek()[0] != "eof":
        clauses.append(p.parse_clause())
    return HornProgram(clauses)


def parse_clauses(text: str) -> list[Clause]:
    """Clauses in file order, without assembling a program."""
    p = _Parser(text)
    clauses = []
    while p.peek()[0] != "eof":
        clauses.append(p.parse_clause())
    return clauses


def parse_example_stream(text: str) -> ExampleStream:
    p = _Parser(text)
    arrivals = []
    while p.peek()[0] != "eof":
        _, _, line, col = p.peek()
        lit = p.parse_atom()
        p.expect("dot", "'.'")
        if not is_ground_literal(lit):
            raise ParseError(f"example is not ground: {render_literal(lit)}", line, col)
        arrivals.append(lit)
    return ExampleStream(arrivals)


# ---------------------------------------------------------------------------
# Rendering


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.functor
    return f"{t.functor}({', '.join(render_term(a) for a in t.args)})"


def render_literal(lit: Literal) -> str:
    if not lit.args:
        return lit.predicate
    return f"{lit.predicate}({', '.join(render_term(a) for a in lit.args)})"


def _render_clause_ordered(literals: list[Literal]) -> str:
    """Render with literals in the given order: positives first as the head
    part, negatives as the body. Non-definite clauses get a display-only
    form ('h1 ; h2 :- b') that the grammar deliberately rejects."""
    pos = [l for l in literals if l.positive]
    body = [l for l in literals if not l.positive]
    head_txt = " ; ".join(render_literal(l) for l in pos) if pos else ""
    if not body:
        return f"{head_txt}."
    body_txt = ", ".join(render_literal(l.atom()) for l in body)
    if not head_txt:
        return f":- {body_txt}."
    return f"{head_txt} :- {body_txt}."


def _skeleton(lit: Literal) -> str:
    """Rendering with variable names erased; renaming-invariant sort key."""

    def erase(t: Term) -> str:
        if isinstance(t, Var):
            return "*"
        if not t.args:
            return t.functor
        return f"{t.functor}({','.join(erase(a) for a in t.args)})"

    sign = "+" if lit.positive else "-"
    return f"{sign}{lit.predicate}/{len(lit.args)}({','.join(erase(a) for a in lit.args)})"


def _canonical_renaming(literals: list[Literal]) -> dict[Var, Term]:
    seen: dict[Var, Term] = {}

    def walk(t: Term) -> None:
        if isinstance(t, Var):
            if t not in seen:
                seen[t] = Var(f"X{len(seen)}")
            return
        for a in t.args:
            walk(a)

    for lit in literals:
        for a in lit.args:
            walk(a)
    return seen


def _rendered_with_renaming(literals: list[Literal]) -> str:
    theta = _canonical_renaming(literals)
    return _render_clause_ordered([apply_to_literal(l, theta) for l in literals])


_PERMUTE_BUDGET = 40320  # orderings tried before the (unreachable) fallback


def _local_var_pattern(lit: Literal) -> tuple[int, ...]:
    """Variable occurrences as first-occurrence indices local to the literal;
    renaming-invariant (q(X, Y) and q(Y, X) both give (0, 1))."""
    seen: dict = {}
    pattern = []

    def walk(t: Term) -> None:
        if isinstance(t, Var):
            pattern.append(seen.setdefault(t, len(seen)))
            return
        for a in t.args:
            walk(a)

    for a in lit.args:
        walk(a)
    return tuple(pattern)


def render_clause(c: Clause) -> str:
    """Canonical, renaming-invariant rendering.

    Literals are grouped by (sign, skeleton); group order is fixed by the
    skeleton sort (positives first). Same-skeleton literals differ only in
    variable identity, so the rendering that wins is the minimum over all
    within-group orderings under first-occurrence renaming. The minimum is
    global: a partial-prefix tie between two orderings can still bind
    variables differently and diverge in a later group.
    """
    pos = sorted((l for l in c.literals if l.positive), key=_skeleton)
    negs = sorted((l for l in c.literals if not l.positive), key=_skeleton)
    ordered = pos + negs

    groups: list[list[Literal]] = []
    for lit in ordered:
        if (
            groups
            and _skeleton(groups[-1][0]) == _skeleton(lit)
            and groups[-1][0].positive == lit.positive
        ):
            groups[-1].append(lit)
        else:
            groups.append([lit])

    combinations = 1
    for group in groups:
        for k in range(2, len(group) + 1):
            combinations *= k
    if combinations > _PERMUTE_BUDGET:
        # Clauses with this many renaming-twin literals are outside the
        # artifact's domain; settle for a deterministic structural order.
        flat = [
            lit
            for group in groups
            for lit in sorted(group, key=lambda l: (_local_var_pattern(l), _rendered_with_renaming([l])))
        ]
        return _rendered_with_renaming(flat)

    best: str | None = None
    for choice in product(*(permutations(g) for g in groups)):
        text = _rendered_with_renaming([lit for group in choice for lit in group])
        if best is None or text < best:
            best = text
    assert best is not None
    return best


def _program_sort_key(c: Clause) -> tuple:
    rendered = render_clause(c)
    if c.is_definite:
        head = c.head
        return (head.predicate, head.arity, c.max_depth(), rendered)
    return ("", -1, c.max_depth(), rendered)


def render_program(p: HornProgram) -> str:
    """Clauses sorted by (head predicate, arity, depth, rendering), newline
    separated, no trailing newline. Variant-equal clauses render identically
    and are emitted once. Empty program renders as ''."""
    lines = []
    for c in sorted(p.clauses, key=_program_sort_key):
        line = render_clause(c)
        if not lines or lines[-1] != line:
            lines.append(line)
    return "\n".join(lines)


def render_clause_set(clauses: list[Clause] | frozenset[Clause]) -> str:
    return "\n".join(sorted(render_clause(c) for c in clauses))
