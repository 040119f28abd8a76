"""Polynomials in several variables with Puiseux-series coefficients."""
from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DimensionMismatch, FieldMismatch, ParseError, PrecisionTooLow
from .fields import FieldDescriptor
from .series import INF, PuiseuxSeries


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


class SeriesPoly:
    """Immutable polynomial ``sum_e c_e X^e`` with series coefficients.

    Coefficients that are exactly zero are dropped; a coefficient that is
    zero only modulo some ``t^mu`` is kept, because it carries precision.
    """

    __slots__ = ("field", "n_vars", "_terms", "names")

    def __init__(self, field: FieldDescriptor, n_vars: int, terms: Mapping = (), names=None):
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_vars:
                raise DimensionMismatch(f"monomial {exps} in a {n_vars}-variable polynomial")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in polynomial")
            if not isinstance(c, PuiseuxSeries):
                c = PuiseuxSeries.constant(field, c)
            elif c.field != field:
                raise FieldMismatch(f"{c.field} coefficient in a {field} polynomial")
            clean[exps] = clean[exps] + c if exps in clean else c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "_terms",
                           {e: c for e, c in sorted(clean.items()) if not c.is_exact_zero()})
        object.__setattr__(self, "names", tuple(names) if names else default_names(n_vars))

    def __setattr__(self, name, value):
        raise AttributeError("SeriesPoly is immutable")

    # construction ------------------------------------------------------

    @classmethod
    def variables(cls, field, n: int, names=None) -> list[SeriesPoly]:
        gens = []
        for i in range(n):
            e = tuple(int(j == i) for j in range(n))
            gens.append(cls(field, n, {e: 1}, names))
        return gens

    @classmethod
    def constant(cls, field, n: int, c, names=None) -> SeriesPoly:
        return cls(field, n, {(0,) * n: c}, names)

    @classmethod
    def parse(cls, text: str, field: FieldDescriptor, names: Sequence[str]) -> SeriesPoly:
        """Parse ``"x^2 + y^2 - (1+t)*z^2"``-style input; ``t`` is the
        uniformizer, ``O(t^k)`` marks precision."""
        return _ExprParser(field, names).parse(text)

    # inspection --------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exps) -> PuiseuxSeries:
        return self._terms.get(tuple(exps), PuiseuxSeries.zero(self.field))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._terms.values())

    def total_degree(self) -> int:
        live = [sum(e) for e, c in self._terms.items() if not c.is_zero()]
        return max(live) if live else -1

    def degree_in(self, i: int) -> int:
        live = [e[i] for e, c in self._terms.items() if not c.is_zero()]
        return max(live) if live else -1

    def homogeneous_degree(self) -> int | None:
        degs = {sum(e) for e in self._terms}
        if len(degs) == 1:
            return degs.pop()
        return 0 if not degs else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def precision(self):
        """Precision of the least precise coefficient."""
        return min((c.prec for c in self._terms.values()), default=INF)

    def content_val(self):
        """Least valuation bound among the coefficients."""
        return min((c.val_bound() for c in self._terms.values()), default=INF)

    def ram_index(self) -> int:
        from math import lcm
        return lcm(1, *(c.normalized().q for c in self._terms.values()))

    # arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SeriesPoly):
            if other.field != self.field or other.n_vars != self.n_vars:
                raise FieldMismatch("polynomials over different rings")
            return other
        if isinstance(other, (int, Fraction, PuiseuxSeries)):
            return SeriesPoly.constant(self.field, self.n_vars, other, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc[e] + c if e in acc else c
        return SeriesPoly(self.field, self.n_vars, acc, self.names)

    __radd__ = __add__

    def __neg__(self):
        return SeriesPoly(self.field, self.n_vars, {e: -c for e, c in self._terms.items()}, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exps(e1, e2)
                v = c1 * c2
                acc[e] = acc[e] + v if e in acc else v
        return SeriesPoly(self.field, self.n_vars, acc, self.names)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = SeriesPoly.constant(self.field, self.n_vars, 1, self.names)
        for _ in range(n):
            result = result * self
        return result

    def map_coefficients(self, fn) -> SeriesPoly:
        return SeriesPoly(self.field, self.n_vars, {e: fn(c) for e, c in self._terms.items()},
                          self.names)

    def shift_t(self, exponent) -> SeriesPoly:
        """Multiply every coefficient by ``t^exponent``."""
        return self.map_coefficients(lambda c: c.shift(exponent))

    def partial(self, i: int) -> SeriesPoly:
        acc = {}
        for e, c in self._terms.items():
            if e[i] == 0:
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            acc[e2] = c.scale(e[i])
        return SeriesPoly(self.field, self.n_vars, acc, self.names)

    # evaluation and substitution --------------------------------------

    def __call__(self, *xs):
        return eval_poly(self, xs)

    def substitute(self, values: Mapping[int, object]) -> SeriesPoly:
        """Replace the variables in ``values`` (index -> series or poly)."""
        F = self.field
        gens = SeriesPoly.variables(F, self.n_vars, self.names)
        images = []
        for i in range(self.n_vars):
            v = values.get(i, gens[i])
            if not isinstance(v, SeriesPoly):
                v = SeriesPoly.constant(F, self.n_vars, v, self.names)
            images.append(v)
        cache: dict = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = images[i] ** k
            return cache[(i, k)]

        result = SeriesPoly(F, self.n_vars, {}, self.names)
        for e, c in self._terms.items():
            term = SeriesPoly.constant(F, self.n_vars, c, self.names)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def affine_substitute(self, i: int, offset, scale_exponent) -> SeriesPoly:
        """``X_i -> offset + t^scale_exponent * X_i``."""
        F = self.field
        xi = SeriesPoly.variables(F, self.n_vars, self.names)[i]
        img = xi.map_coefficients(lambda c: c.shift(scale_exponent)) + offset
        return self.substitute({i: img})

    def drop_variable(self, i: int) -> SeriesPoly:
        """Forget variable ``i`` (which must not occur)."""
        if self.degree_in(i) > 0:
            raise ValueError(f"variable {i} still occurs")
        names = self.names[:i] + self.names[i + 1:]
        return SeriesPoly(self.field, self.n_vars - 1,
                          {e[:i] + e[i + 1:]: c for e, c in self._terms.items()}, names)

    def univariate_coefficients(self, i: int = 0) -> list[PuiseuxSeries]:
        """Coefficient list in ``X_i`` (index = degree); other variables
        must be absent."""
        deg = max((e[i] for e in self._terms), default=-1)
        out = [PuiseuxSeries.zero(self.field) for _ in range(deg + 1)]
        for e, c in self._terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial is not univariate in the requested variable")
            out[e[i]] = c
        return out

    def residue_terms(self) -> dict:
        """``{exps: coefficient of t^0}``, the reduction modulo the maximal
        ideal (coefficients are assumed integral)."""
        out = {}
        for e, c in self._terms.items():
            r = c.coeff(0)
            if r != 0:
                out[e] = r
        return out

    # display / serialization ------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SeriesPoly):
            return NotImplemented
        return (self.field == other.field and self.n_vars == other.n_vars
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.field, self.n_vars, tuple(self._terms.items())))

    def __repr__(self):
        return f"SeriesPoly({self.field}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda it: (-sum(it[0]), [-k for k in it[0]])):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            cs = str(c)
            if not mono:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "n_vars": self.n_vars,
            "names": list(self.names),
            "terms": [{"exps": list(e), "coeff": c.to_json()} for e, c in self._terms.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> SeriesPoly:
        field = FieldDescriptor.parse(obj["field"])
        n = int(obj["n_vars"])
        terms = []
        for t in obj["terms"]:
            coeff = PuiseuxSeries.from_json(t["coeff"])
            if coeff.field != field:
                raise ParseError("coefficient field differs from polynomial field")
            terms.append((tuple(t["exps"]), coeff))
        return cls(field, n, terms, obj.get("names"))


def default_names(n: int) -> tuple:
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i}" for i in range(n))


def eval_poly(F: SeriesPoly, xs: Sequence) -> PuiseuxSeries:
    """Evaluate with precision tracked through every product and sum."""
    if len(xs) != F.n_vars:
        raise DimensionMismatch(f"{len(xs)} values for {F.n_vars} variables")
    field = F.field
    pts = []
    for x in xs:
        if not isinstance(x, PuiseuxSeries):
            x = PuiseuxSeries.constant(field, x)
        elif x.field != field:
            raise FieldMismatch(f"{x.field} point for a {field} polynomial")
        pts.append(x)
    cache: dict = {}

    def power(i, k):
        if (i, k) not in cache:
            cache[(i, k)] = pts[i] ** k
        return cache[(i, k)]

    total = PuiseuxSeries.zero(field)
    for e, c in F.items():
        term = c
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Newton polygons


@dataclass(frozen=True)
class NewtonPolygonSlopes:
    """Lower convex hull of ``{(i, val(a_i))}``.

    ``slopes`` lists ``(slope, horizontal length)`` in increasing order;
    a segment of slope ``s`` and length ``m`` accounts for ``m`` roots of
    valuation ``-s``.  ``vertices`` are the hull corners.
    """

    slopes: tuple
    vertices: tuple

    def root_valuations(self) -> list[tuple[Fraction, int]]:
        return [(-s, m) for s, m in reversed(self.slopes)]

    def segments(self):
        """Yield ``(slope, i_start, i_end)``."""
        for (i0, v0), (i1, v1) in zip(self.vertices, self.vertices[1:]):
            yield Fraction(v1 - v0, i1 - i0), i0, i1


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points):
    hull = []
    for p in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def _hull_value(vertices, i):
    """Height of the hull above abscissa i (None outside its span)."""
    for (i0, v0), (i1, v1) in zip(vertices, vertices[1:]):
        if i0 <= i <= i1:
            return v0 + Fraction(v1 - v0, i1 - i0) * (i - i0)
    if len(vertices) == 1 and vertices[0][0] == i:
        return vertices[0][1]
    return None


def newton_polygon(f: SeriesPoly | Sequence[PuiseuxSeries], var: int = 0) -> NewtonPolygonSlopes:
    """Newton polygon of a univariate polynomial.

    Accepts a one-variable ``SeriesPoly`` or a coefficient list.  A
    coefficient that is zero only to its precision is a masked point: if
    it could lie below the hull the slopes are not determined and
    ``PrecisionTooLow`` is raised.
    """
    coeffs = f.univariate_coefficients(var) if isinstance(f, SeriesPoly) else list(f)
    points, masked = [], []
    for i, c in enumerate(coeffs):
        v = c.val_bound()
        if c.is_zero():
            if v != INF:
                masked.append((i, v))
        else:
            points.append((i, v))
    if not points:
        raise ValueError("newton_polygon of the zero polynomial")
    hull = lower_hull(points)
    for i, bound in masked:
        h = _hull_value(hull, i)
        if h is None or bound < h:
            raise PrecisionTooLow(f"coefficient of degree {i} is only known mod t^{bound}")
    slopes = []
    for (i0, v0), (i1, v1) in zip(hull, hull[1:]):
        slopes.append((Fraction(v1 - v0, i1 - i0), i1 - i0))
    return NewtonPolygonSlopes(tuple(slopes), tuple(hull))


# ---------------------------------------------------------------------------
# expression parsing


class _ExprParser:
    _BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)

    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        self.gens = dict(zip(self.names, SeriesPoly.variables(field, len(self.names), self.names)))
        if "t" in self.gens:
            raise ParseError("'t' is reserved for the uniformizer")

    def parse(self, text: str) -> SeriesPoly:
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
        value = self._eval(tree.body)
        return self._as_poly(value)

    def _as_poly(self, v):
        if isinstance(v, SeriesPoly):
            return v
        return SeriesPoly.constant(self.field, len(self.names), v, self.names)

    def _eval(self, node):
        F = self.field
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id == "t":
                return PuiseuxSeries.gen(F)
            if node.id in self.gens:
                return self.gens[node.id]
            raise ParseError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "O":
            if len(node.args) != 1:
                raise ParseError("O() takes one argument")
            arg = self._eval(node.args[0])
            if not isinstance(arg, PuiseuxSeries) or len(arg.terms) != 1:
                raise ParseError("O() expects a power of t")
            return PuiseuxSeries.zero(F, arg.val())
        if isinstance(node, ast.BinOp) and isinstance(node.op, self._BINOPS):
            a, b = self._eval(node.left), self._eval(node.right)
            op = node.op
            if isinstance(op, ast.Add):
                return a + b
            if isinstance(op, ast.Sub):
                return a - b
            if isinstance(op, ast.Mult):
                return a * b
            if isinstance(op, ast.Div):
                if not isinstance(b, Fraction):
                    raise ParseError("division only by numeric constants")
                if isinstance(a, Fraction):
                    return a / b
                inv = F.inv(F(b))
                return a * PuiseuxSeries.constant(F, inv)
            if isinstance(op, ast.Pow):
                if not isinstance(b, Fraction):
                    raise ParseError("exponents must be numeric")
                if isinstance(a, PuiseuxSeries) and b.denominator != 1:
                    if len(a.terms) != 1 or a.leading_coeff() != 1 or not a.is_exact:
                        raise ParseError("rational powers only of t")
                    return PuiseuxSeries.monomial(F, 1, a.val() * b)
                if b.denominator != 1:
                    raise ParseError("rational powers only of t")
                n = int(b)
                if isinstance(a, Fraction):
                    return a ** n
                if isinstance(a, PuiseuxSeries):
                    return a ** n
                if n < 0:
                    raise ParseError("negative powers of variables")
                return a ** n
        raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse_series(text: str, field: FieldDescriptor) -> PuiseuxSeries:
    poly = SeriesPoly.parse(text, field, ())
    return poly.coefficient(())

