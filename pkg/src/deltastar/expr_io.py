"""Text forms: an expression grammar and a line-oriented record codec.

Expression grammar (whitespace-insensitive)::

    expr     := ["+"|"-"] term (("+"|"-") term)*
    term     := atom ("*" atom)*                    # "*" is the one-sided product
    atom     := "delta" ["'" | "^" INT] "(" point ")"
              | "heaviside" "(" point ")"
              | "piece" "(" bound "," bound ":" poly ")"
              | "D" "(" expr ")"                    # distributional derivative
              | "(" expr ")"
              | scalar                              # constant distribution
    bound    := point | "inf" | "-inf"
    point    := ["+"|"-"] NUMBER                    # exact rational, e.g. 1/2 or 0.25
    poly     := ["+"|"-"] pterm (("+"|"-") pterm)*
    pterm    := scalar ["*"] ["x" ["^" INT]] | "x" ["^" INT]
    scalar   := NUMBER ["i"] | "i"

Multiplying by a constant atom and scaling coincide (the one-sided
product is bilinear), so "2*delta(0)" needs no special case.  Complex
coefficients are written as separate real and imaginary terms, e.g.
"1/2*delta(0) + 3i*delta(0)", which keeps the formatter inside the
grammar.  "3/4i" means (3/4)i.

Syntax errors raise ExprError carrying the character offset (equal to the
byte offset for this ASCII grammar) and the set of expected tokens.

The record codec is line-oriented: one "key value..." line per field,
terminated by "end", with scalars in the canonical token form of
Scalar.token().  encode() output is byte-stable; decode(encode(x)) == x.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .boundary_ops import (
    DeltaPrimeFamily,
    PointPotential,
    PseudoPotential,
)
from .dist_core import (
    AlgebraError,
    DeltaTerm,
    PiecewiseDist,
    Poly,
    Scalar,
    constant,
    delta_dist,
    derivative,
    heaviside,
    indicator,
    parse_scalar,
    star,
)
from .schrodinger import (
    BCMatrix,
    InteractingSA,
    NotSelfAdjoint,
    SeparatingSA,
)


class ExprError(ValueError):
    """Parse failure with position and, for syntax errors, expectations."""

    def __init__(self, message, pos=0, expected=()):
        self.pos = pos
        self.expected = frozenset(expected)
        tail = ""
        if expected:
            tail = " (expected %s)" % ", ".join(sorted(self.expected))
        super().__init__("%s at offset %d%s" % (message, pos, tail))


_TOKEN_RE = re.compile(
    r"\s+|(?P<num>\d+(?:\.\d+)?(?:/\d+)?i?)|(?P<name>[A-Za-z_]+)|(?P<op>[()+\-*^,:'])"
)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprError("unexpected character %r" % text[pos], pos)
        if m.lastgroup == "num":
            word = m.group()
            if word.endswith("i"):
                toks.append(("imag", Fraction(word[:-1]), pos))
            else:
                toks.append(("num", Fraction(word), pos))
        elif m.lastgroup == "name":
            word = m.group()
            if word == "i":
                toks.append(("imag", Fraction(1), pos))
            else:
                toks.append(("name", word, pos))
        elif m.lastgroup == "op":
            toks.append((m.group(), m.group(), pos))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, n_cap=None):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.n_cap = n_cap

    def peek(self):
        return self.toks[self.k]

    def next(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, kind, what=None):
        tok = self.next()
        if tok[0] != kind:
            raise ExprError(
                "unexpected %s" % _describe(tok),
                tok[2],
                {what or kind},
            )
        return tok

    def fail(self, tok, expected):
        raise ExprError("unexpected %s" % _describe(tok), tok[2], expected)

    # -- distributions ---------------------------------------------------

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        out = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.atom()
        while self.peek()[0] == "*":
            pos = self.next()[2]
            try:
                out = star(out, self.atom())
            except AlgebraError as exc:
                raise ExprError(str(exc), pos) from exc
        return out

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.next()
            return constant(Scalar(tok[1]))
        if tok[0] == "imag":
            self.next()
            return constant(Scalar(0, tok[1]))
        if tok[0] == "(":
            self.next()
            out = self.expr()
            self.expect(")")
            return out
        if tok[0] == "name":
            if tok[1] == "delta":
                return self.delta_atom()
            if tok[1] == "heaviside":
                self.next()
                self.expect("(")
                point = self.point()
                self.expect(")")
                return heaviside(point)
            if tok[1] == "piece":
                return self.piece_atom()
            if tok[1] == "D":
                self.next()
                self.expect("(")
                out = self.expr()
                self.expect(")")
                try:
                    return derivative(out)
                except AlgebraError as exc:
                    raise ExprError(str(exc), tok[2]) from exc
        self.fail(tok, {"delta", "heaviside", "piece", "D", "(", "number"})

    def delta_atom(self):
        tok = self.next()
        order = 0
        nxt = self.peek()
        if nxt[0] == "'":
            self.next()
            order = 1
        elif nxt[0] == "^":
            self.next()
            order = self.int_value()
        if self.n_cap is not None and order > self.n_cap:
            raise ExprError(
                "delta order %d exceeds the regularity cap %d"
                % (order, self.n_cap),
                tok[2],
            )
        self.expect("(")
        point = self.point()
        self.expect(")")
        return delta_dist(point, order, 1, n=order)

    def piece_atom(self):
        tok = self.next()
        self.expect("(")
        lo = self.bound()
        self.expect(",")
        hi = self.bound()
        self.expect(":")
        poly = self.poly()
        self.expect(")")
        if lo == "inf":
            raise ExprError("lower bound cannot be +inf", tok[2])
        if hi == "-inf":
            raise ExprError("upper bound cannot be -inf", tok[2])
        lo = None if lo == "-inf" else lo
        hi = None if hi == "inf" else hi
        try:
            return indicator(lo, hi, poly)
        except AlgebraError as exc:
            raise ExprError(str(exc), tok[2]) from exc

    def point(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        tok = self.next()
        if tok[0] != "num":
            self.fail(tok, {"number"})
        return sign * tok[1]

    def bound(self):
        tok = self.peek()
        if tok[0] == "name" and tok[1] == "inf":
            self.next()
            return "inf"
        if tok[0] == "-" and self.toks[self.k + 1][:2] == ("name", "inf"):
            self.next()
            self.next()
            return "-inf"
        return self.point()

    def int_value(self):
        tok = self.next()
        if tok[0] != "num" or tok[1].denominator != 1 or tok[1] < 0:
            self.fail(tok, {"nonnegative integer"})
        return int(tok[1])

    # -- polynomials -------------------------------------------------------

    def poly(self):
        coeffs = {}
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        self.poly_term(coeffs, sign)
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
            self.poly_term(coeffs, sign)
        top = max(coeffs) if coeffs else 0
        try:
            return Poly([coeffs.get(j, Scalar(0)) for j in range(top + 1)])
        except AlgebraError as exc:
            raise ExprError(str(exc), self.peek()[2]) from exc

    def poly_term(self, coeffs, sign):
        tok = self.peek()
        if tok[0] == "num":
            self.next()
            coeff = Scalar(tok[1] * sign)
        elif tok[0] == "imag":
            self.next()
            coeff = Scalar(0, tok[1] * sign)
        elif tok[0] == "name" and tok[1] == "x":
            coeff = Scalar(sign)
        else:
            self.fail(tok, {"number", "x"})
        if (
            tok[0] in ("num", "imag")
            and self.peek()[0] == "*"
            and self.toks[self.k + 1][:2] == ("name", "x")
        ):
            # "2*x": the "*" belongs to the monomial, not an enclosing
            # product, exactly when x follows
            self.next()
        deg = 0
        nxt = self.peek()
        if nxt[0] == "name" and nxt[1] == "x":
            self.next()
            deg = 1
            if self.peek()[0] == "^":
                self.next()
                deg = self.int_value()
        coeffs[deg] = coeffs.get(deg, Scalar(0)) + coeff


def _describe(tok):
    if tok[0] == "end":
        return "end of input"
    if tok[0] == "num":
        return "number %s" % tok[1]
    if tok[0] == "imag":
        return "imaginary number"
    if tok[0] == "name":
        return "'%s'" % tok[1]
    return "'%s'" % tok[0]


def parse_dist(text, n_cap=None):
    """Parse an expression into a distribution.

    n_cap, when given, bounds the allowed delta orders and fixes the
    regularity index of the result.
    """
    p = _Parser(text, n_cap)
    out = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        p.fail(tok, {"+", "-", "*", "end of input"})
    if n_cap is not None:
        try:
            out = PiecewiseDist(n_cap, out.breakpoints, out.pieces, out.deltas)
        except AlgebraError as exc:
            raise ExprError(str(exc), len(text)) from exc
    return out


def parse_poly(text):
    """Parse a bare polynomial in x."""
    p = _Parser(text)
    out = p.poly()
    tok = p.peek()
    if tok[0] != "end":
        p.fail(tok, {"+", "-", "end of input"})
    return out


# --------------------------------------------------------------------------
# formatting


def _rat(q):
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (
        q.numerator,
        q.denominator,
    )


def _coeff_terms(coeff, body):
    """Split a complex coefficient on a symbolic body into signed terms."""
    out = []
    if coeff.re:
        mag = abs(coeff.re)
        prefix = "" if mag == 1 else _rat(mag) + "*"
        out.append((-1 if coeff.re < 0 else 1, prefix + body if body else _rat(mag)))
    if coeff.im:
        mag = abs(coeff.im)
        prefix = "i*" if mag == 1 else _rat(mag) + "i*"
        out.append(
            (-1 if coeff.im < 0 else 1, prefix + body if body else prefix[:-1])
        )
    return out


def _poly_text(p):
    parts = []
    for deg, coeff in enumerate(p.coeffs):
        if coeff.is_zero:
            continue
        body = "" if deg == 0 else ("x" if deg == 1 else "x^%d" % deg)
        parts += _coeff_terms(coeff, body)
    return _join_terms(parts)


def _join_terms(parts):
    if not parts:
        return "0"
    chunks = []
    for k, (sign, body) in enumerate(parts):
        if k == 0:
            chunks.append(("-" if sign < 0 else "") + body)
        else:
            chunks.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(chunks)


def _delta_atom(point, order):
    if order == 0:
        name = "delta"
    elif order == 1:
        name = "delta'"
    else:
        name = "delta^%d" % order
    return "%s(%s)" % (name, _rat(point))


def format_dist(F):
    """Canonical expression text; parse_dist(format_dist(F)) == F."""
    if F.is_zero:
        return "0"
    parts = []
    for d in F.deltas:
        parts += _coeff_terms(d.coeff, _delta_atom(d.point, d.order))
    for k, piece in enumerate(F.pieces):
        if piece.is_zero:
            continue
        lo = "-inf" if k == 0 else _rat(F.breakpoints[k - 1])
        hi = "inf" if k == len(F.breakpoints) else _rat(F.breakpoints[k])
        parts.append((1, "piece(%s,%s: %s)" % (lo, hi, _poly_text(piece))))
    return _join_terms(parts)


# --------------------------------------------------------------------------
# record codec


def _tok(s):
    return s.token()


def encode(obj):
    """Line record for a distribution, operator spec, classification or
    boundary-condition matrix.  Output is byte-stable."""
    lines = []
    if isinstance(obj, PiecewiseDist):
        lines.append("dist")
        lines.append("n %d" % obj.n)
        lines.append(("breakpoints " + " ".join(_rat(b) for b in obj.breakpoints)).rstrip())
        for p in obj.pieces:
            lines.append(("piece " + " ".join(_tok(c) for c in p.coeffs)).rstrip())
        for d in obj.deltas:
            lines.append("delta %s %d %s" % (_rat(d.point), d.order, _tok(d.coeff)))
    elif isinstance(obj, PointPotential):
        lines.append("opspec potential")
        for name in ("c1", "c2", "b1", "b2"):
            lines.append("%s %s" % (name, _tok(getattr(obj, name))))
    elif isinstance(obj, PseudoPotential):
        lines.append("opspec pseudo")
        for name in ("direct", "after_dx", "dx_after_dx"):
            lines.append(
                "%s %s" % (name, " ".join(_tok(c) for c in getattr(obj, name)))
            )
    elif isinstance(obj, DeltaPrimeFamily):
        lines.append("opspec deltaprime")
        for name in ("c", "d", "e", "f"):
            lines.append("%s %s" % (name, _tok(getattr(obj, name))))
    elif isinstance(obj, InteractingSA):
        lines.append("classification interacting")
        for name in ("a", "b", "c"):
            lines.append("%s %s" % (name, _tok(getattr(obj, name))))
    elif isinstance(obj, SeparatingSA):
        lines.append("classification separating")
        for name, field in (
            ("a-", "a_minus"),
            ("b-", "b_minus"),
            ("a+", "a_plus"),
            ("b+", "b_plus"),
        ):
            lines.append("%s %s" % (name, _tok(getattr(obj, field))))
    elif isinstance(obj, NotSelfAdjoint):
        lines.append("classification not-self-adjoint")
        for row in obj.bc.rows:
            lines.append("row " + " ".join(_tok(c) for c in row))
    elif isinstance(obj, BCMatrix):
        lines.append("bc")
        for row in obj.rows:
            lines.append("row " + " ".join(_tok(c) for c in row))
    else:
        raise TypeError("cannot encode %r" % (obj,))
    lines.append("end")
    return "\n".join(lines) + "\n"


class _Records:
    """Cursor over 'key value...' lines with position tracking."""

    def __init__(self, text):
        self.items = []  # (key, [values], offset)
        offset = 0
        for line in text.split("\n"):
            stripped = line.strip()
            if stripped:
                words = stripped.split()
                self.items.append((words[0], words[1:], offset))
            offset += len(line) + 1
        self.k = 0

    def next(self, expect=None):
        if self.k >= len(self.items):
            raise ExprError("missing '%s' line" % (expect or "end"), 0)
        item = self.items[self.k]
        self.k += 1
        if expect is not None and item[0] != expect:
            raise ExprError(
                "expected '%s' line, got '%s'" % (expect, item[0]), item[2]
            )
        return item

    def peek_key(self):
        return self.items[self.k][0] if self.k < len(self.items) else None


def _scalar_field(rec, key):
    name, vals, off = rec.next(key)
    if len(vals) != 1:
        raise ExprError("'%s' takes one value" % key, off)
    try:
        return parse_scalar(vals[0])
    except ValueError as exc:
        raise ExprError(str(exc), off) from exc


def _scalar_list(vals, off):
    try:
        return [parse_scalar(v) for v in vals]
    except ValueError as exc:
        raise ExprError(str(exc), off) from exc


def decode(text):
    """Inverse of encode; dispatches on the first line."""
    rec = _Records(text)
    head, args, off = rec.next()
    try:
        if head == "dist":
            return _decode_dist(rec)
        if head == "opspec":
            return _decode_opspec(rec, args, off)
        if head == "classification":
            return _decode_classification(rec, args, off)
        if head == "bc":
            return BCMatrix(_decode_rows(rec))
    except AlgebraError as exc:
        raise ExprError(str(exc), off) from exc
    raise ExprError("unknown record '%s'" % head, off)


def _decode_dist(rec):
    name, vals, off = rec.next("n")
    if len(vals) != 1 or not vals[0].isdigit():
        raise ExprError("'n' takes one nonnegative integer", off)
    n = int(vals[0])
    name, vals, off = rec.next("breakpoints")
    try:
        breakpoints = [Fraction(v) for v in vals]
    except ValueError as exc:
        raise ExprError(str(exc), off) from exc
    pieces = []
    deltas = []
    while True:
        key = rec.peek_key()
        if key == "piece":
            _, vals, off = rec.next()
            pieces.append(Poly(_scalar_list(vals, off)))
        elif key == "delta":
            _, vals, off = rec.next()
            if len(vals) != 3:
                raise ExprError("'delta' takes point, order, coeff", off)
            try:
                point = Fraction(vals[0])
                order = int(vals[1])
            except ValueError as exc:
                raise ExprError(str(exc), off) from exc
            deltas.append(DeltaTerm(point, order, _scalar_list(vals[2:], off)[0]))
        else:
            break
    rec.next("end")
    return PiecewiseDist(n, breakpoints, pieces, deltas)


def _decode_opspec(rec, args, off):
    kind = args[0] if args else ""
    if kind == "potential":
        fields = [_scalar_field(rec, k) for k in ("c1", "c2", "b1", "b2")]
        rec.next("end")
        return PointPotential(*fields)
    if kind == "pseudo":
        rows = []
        for key in ("direct", "after_dx", "dx_after_dx"):
            _, vals, o = rec.next(key)
            if len(vals) != 4:
                raise ExprError("'%s' takes four values" % key, o)
            rows.append(tuple(_scalar_list(vals, o)))
        rec.next("end")
        return PseudoPotential(*rows)
    if kind == "deltaprime":
        fields = [_scalar_field(rec, k) for k in ("c", "d", "e", "f")]
        rec.next("end")
        return DeltaPrimeFamily(*fields)
    raise ExprError("unknown opspec kind '%s'" % kind, off)


def _decode_classification(rec, args, off):
    kind = args[0] if args else ""
    if kind == "interacting":
        fields = [_scalar_field(rec, k) for k in ("a", "b", "c")]
        rec.next("end")
        return InteractingSA(*fields)
    if kind == "separating":
        fields = [_scalar_field(rec, k) for k in ("a-", "b-", "a+", "b+")]
        rec.next("end")
        return SeparatingSA(*fields)
    if kind == "not-self-adjoint":
        return NotSelfAdjoint(BCMatrix(_decode_rows(rec)))
    raise ExprError("unknown classification kind '%s'" % kind, off)


def _decode_rows(rec):
    rows = []
    while rec.peek_key() == "row":
        _, vals, off = rec.next()
        if len(vals) != 4:
            raise ExprError("'row' takes four values", off)
        rows.append(tuple(_scalar_list(vals, off)))
    rec.next("end")
    return rows
