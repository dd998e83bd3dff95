"""Exact sparse arithmetic in the variables q, t and an auxiliary variable z.

Three small rings cover everything the rest of the package needs:

``QTPoly``
    Laurent polynomials in q and t with ``fractions.Fraction`` coefficients,
    stored as a dict mapping ``(q_exponent, t_exponent)`` to a nonzero
    coefficient.  Negative exponents are allowed.

``QTRatio``
    Formal quotients of two ``QTPoly`` values.  Quotients are kept lazily
    unreduced; equality is decided by cross multiplication, which is exact
    and needs no multivariate gcd.

``ZPoly``
    Laurent polynomials in z whose coefficients are ``QTRatio`` values.
    These carry the alphabet-substitution bookkeeping where z appears with
    both positive and negative exponents.

Canonical string form (used by every serializer in the package): terms are
sorted lexicographically by (q exponent, t exponent), each term is rendered
as ``coefficient*q^a*t^b`` with unit parts omitted, and terms are joined by
`` + ``.  Examples: ``1 + q + q*t^2``, ``-q^-1 + 2/3*t``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Exponent = Tuple[int, int]
Scalar = Union[int, Fraction]


def _coerce(value: Union[int, Fraction]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class QTPoly:
    """Sparse Laurent polynomial in q and t over the rationals."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, Union[int, Fraction]] | None = None):
        data: Dict[Exponent, Fraction] = {}
        if terms:
            for (qe, te), c in terms.items():
                c = _coerce(c)
                if c:
                    key = (int(qe), int(te))
                    acc = data.get(key)
                    data[key] = acc + c if acc is not None else c
                    if not data[key]:
                        del data[key]
        self._terms = data

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "QTPoly":
        return cls()

    @classmethod
    def one(cls) -> "QTPoly":
        return cls({(0, 0): 1})

    @classmethod
    def const(cls, c: Union[int, Fraction]) -> "QTPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, qexp: int = 0, texp: int = 0,
                 coeff: Union[int, Fraction] = 1) -> "QTPoly":
        return cls({(qexp, texp): coeff})

    @classmethod
    def q(cls, exp: int = 1) -> "QTPoly":
        return cls({(exp, 0): 1})

    @classmethod
    def t(cls, exp: int = 1) -> "QTPoly":
        return cls({(0, exp): 1})

    # -- inspection ---------------------------------------------------

    def terms(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Yield (exponent pair, coefficient) sorted by (q exp, t exp)."""
        return iter(sorted(self._terms.items()))

    def coefficient(self, qexp: int, texp: int) -> Fraction:
        return self._terms.get((qexp, texp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0, 0): Fraction(1)}

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def has_negative_exponent(self) -> bool:
        return any(qe < 0 or te < 0 for qe, te in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; error if not constant."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {(0, 0)}:
            return self._terms[(0, 0)]
        raise ValueError(f"not a constant polynomial: {self}")

    # -- arithmetic ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QTPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == QTPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "QTPoly") -> "QTPoly":
        if isinstance(other, (int, Fraction)):
            other = QTPoly.const(other)
        if not isinstance(other, QTPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            acc = out.get(e)
            s = acc + c if acc is not None else c
            if s:
                out[e] = s
            elif acc is not None:
                del out[e]
        res = QTPoly.__new__(QTPoly)
        res._terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "QTPoly":
        res = QTPoly.__new__(QTPoly)
        res._terms = {e: -c for e, c in self._terms.items()}
        return res

    def __sub__(self, other: "QTPoly") -> "QTPoly":
        return self + (-other if isinstance(other, QTPoly) else QTPoly.const(-other))

    def __rsub__(self, other) -> "QTPoly":
        return (-self) + other

    def __mul__(self, other) -> "QTPoly":
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            if not c:
                return QTPoly.zero()
            res = QTPoly.__new__(QTPoly)
            res._terms = {e: cc * c for e, cc in self._terms.items()}
            return res
        if not isinstance(other, QTPoly):
            return NotImplemented
        out: Dict[Exponent, Fraction] = {}
        for (qa, ta), ca in self._terms.items():
            for (qb, tb), cb in other._terms.items():
                e = (qa + qb, ta + tb)
                acc = out.get(e)
                s = acc + ca * cb if acc is not None else ca * cb
                if s:
                    out[e] = s
                elif acc is not None:
                    del out[e]
        res = QTPoly.__new__(QTPoly)
        res._terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QTPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = QTPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def evaluate(self, qv: Union[int, Fraction], tv: Union[int, Fraction]) -> Fraction:
        """Evaluate at rational q=qv, t=tv (nonzero if negative exponents occur)."""
        qv, tv = Fraction(qv), Fraction(tv)
        total = Fraction(0)
        for (qe, te), c in self._terms.items():
            total += c * qv ** qe * tv ** te
        return total

    # -- exact division ----------------------------------------------

    def divexact(self, other: "QTPoly") -> "QTPoly":
        """Exact quotient self/other; raises ValueError when not divisible.

        Leading-term reduction under the (q, t) lexicographic order.  For
        Laurent polynomials with finite support, the extreme exponents of a
        product are the sums of the factors' extremes, which bounds every
        exponent a genuine quotient can use; stepping outside that box
        proves indivisibility and guarantees termination.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return QTPoly.zero()

        def extremes(p: "QTPoly"):
            qs = [e[0] for e in p._terms]
            ts = [e[1] for e in p._terms]
            return min(qs), max(qs), min(ts), max(ts)

        nql, nqh, ntl, nth = extremes(self)
        dql, dqh, dtl, dth = extremes(other)
        qlo, qhi = nql - dql, nqh - dqh
        tlo, thi = ntl - dtl, nth - dth

        lead_d = max(other._terms)  # (q, t) lex
        cd = other._terms[lead_d]
        rem = dict(self._terms)
        quot: Dict[Exponent, Fraction] = {}
        budget = (qhi - qlo + 1) * (thi - tlo + 1) + 1
        while rem:
            lead_r = max(rem)
            e = (lead_r[0] - lead_d[0], lead_r[1] - lead_d[1])
            if not (qlo <= e[0] <= qhi and tlo <= e[1] <= thi):
                raise ValueError("polynomials do not divide exactly")
            budget -= 1
            if budget < 0:
                raise ValueError("polynomials do not divide exactly")
            c = rem[lead_r] / cd
            quot[e] = c
            for (qb, tb), cb in other._terms.items():
                key = (e[0] + qb, e[1] + tb)
                acc = rem.get(key)
                s = (acc if acc is not None else Fraction(0)) - c * cb
                if s:
                    rem[key] = s
                elif acc is not None:
                    del rem[key]
        res = QTPoly.__new__(QTPoly)
        res._terms = quot
        return res

    def divides(self, other: "QTPoly") -> bool:
        """True when self divides other exactly."""
        try:
            other.divexact(self)
            return True
        except ValueError:
            return False

    # -- rendering ----------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (qe, te), c in sorted(self._terms.items()):
            factors = []
            if qe == 1:
                factors.append("q")
            elif qe:
                factors.append(f"q^{qe}")
            if te == 1:
                factors.append("t")
            elif te:
                factors.append(f"t^{te}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(c) + "*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"QTPoly({self})"


ZERO = QTPoly.zero()
ONE = QTPoly.one()


def q_int(n: int) -> QTPoly:
    """The q-analogue [n]_q = 1 + q + ... + q^(n-1); requires n >= 1."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"q_int requires a positive integer, got {n!r}")
    return QTPoly({(i, 0): 1 for i in range(n)})


def q_factorial(n: int) -> QTPoly:
    """[n]_q! = [1]_q [2]_q ... [n]_q; requires n >= 0."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"q_factorial requires a nonnegative integer, got {n!r}")
    out = QTPoly.one()
    for i in range(1, n + 1):
        out = out * q_int(i)
    return out


def qq_poch(k: int) -> QTPoly:
    """(q; q)_k = (1 - q)(1 - q^2)...(1 - q^k); requires k >= 0."""
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"qq_poch requires a nonnegative integer, got {k!r}")
    out = QTPoly.one()
    for i in range(1, k + 1):
        out = out * (QTPoly.one() - QTPoly.q(i))
    return out


class QTRatio:
    """Formal quotient num/den of two QTPoly values, kept unreduced.

    Equality is semantic: a/b == c/d exactly when a*d == c*b.  The only
    normalizations applied are cheap and value-preserving: a zero numerator
    resets the denominator to 1, and a monomial denominator is folded into
    the numerator (monomials are units in the Laurent ring).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[QTPoly, int, Fraction],
                 den: Union[QTPoly, int, Fraction] = 1):
        if not isinstance(num, QTPoly):
            num = QTPoly.const(num)
        if not isinstance(den, QTPoly):
            den = QTPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = QTPoly.one()
        elif len(den) == 1:
            (e, c), = den._terms.items()
            num = num * QTPoly.monomial(-e[0], -e[1], Fraction(1) / c)
            den = QTPoly.one()
        self.num = num
        self.den = den

    @classmethod
    def zero(cls) -> "QTRatio":
        return cls(QTPoly.zero())

    @classmethod
    def one(cls) -> "QTRatio":
        return cls(QTPoly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other) -> "QTRatio":
        other = _as_ratio(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return QTRatio(self.num + other.num, self.den)
        # When one denominator divides the other, keep the larger one as the
        # common denominator instead of multiplying them.  Long chains of
        # additions otherwise pile up unreduced denominator products fast
        # enough to dominate the whole computation.
        try:
            f = other.den.divexact(self.den)
        except ValueError:
            pass
        else:
            return QTRatio(self.num * f + other.num, other.den)
        try:
            f = self.den.divexact(other.den)
        except ValueError:
            pass
        else:
            return QTRatio(self.num + other.num * f, self.den)
        return QTRatio(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "QTRatio":
        return QTRatio(-self.num, self.den)

    def __sub__(self, other) -> "QTRatio":
        other = _as_ratio(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QTRatio":
        return (-self) + other

    def __mul__(self, other) -> "QTRatio":
        other = _as_ratio(other)
        if other is NotImplemented:
            return NotImplemented
        return QTRatio(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QTRatio":
        other = _as_ratio(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero ratio")
        return QTRatio(self.num * other.den, self.den * other.num)

    def __eq__(self, other: object) -> bool:
        r = _as_ratio(other)
        if r is NotImplemented:
            return NotImplemented
        return self.num * r.den == r.num * self.den

    def __hash__(self) -> int:  # pragma: no cover - rarely needed
        raise TypeError("QTRatio is not hashable (equality is semantic)")

    def evaluate(self, qv, tv) -> Fraction:
        d = self.den.evaluate(qv, tv)
        if not d:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num.evaluate(qv, tv) / d

    def is_polynomial(self) -> bool:
        try:
            self.num.divexact(self.den)
            return True
        except ValueError:
            return False

    def to_poly(self) -> QTPoly:
        """The quotient as a QTPoly; raises ValueError if it is not one."""
        return self.num.divexact(self.den)

    def reduced(self) -> "QTRatio":
        """An equal ratio in a normal form fit for printing.

        Exact quotients collapse to polynomials; otherwise shared
        binomial (1 - q^k, 1 - t^k) and q-integer factors are stripped
        and the denominator is rescaled to coprime integer coefficients
        with a positive leading term.  Without a multivariate gcd this
        does not catch every common factor, but the denominators built
        here are products of exactly these factors.
        """
        if self.is_zero():
            return QTRatio.zero()
        num, den = self.num, self.den
        if den.is_one():
            return self
        try:
            return QTRatio(num.divexact(den))
        except ValueError:
            pass

        def spans(p: QTPoly) -> Tuple[int, int]:
            qs = [e[0] for e in p._terms]
            ts = [e[1] for e in p._terms]
            return max(qs) - min(qs), max(ts) - min(ts)

        stripped = True
        while stripped:
            stripped = False
            qspan = min(spans(num)[0], spans(den)[0])
            tspan = min(spans(num)[1], spans(den)[1])
            cands = []
            for k in range(1, qspan + 1):
                cands.append(QTPoly.one() - QTPoly.q(k))
                if k >= 2:
                    cands.append(QTPoly({(j, 0): Fraction(1)
                                         for j in range(k)}))
            for k in range(1, tspan + 1):
                cands.append(QTPoly.one() - QTPoly.t(k))
                if k >= 2:
                    cands.append(QTPoly({(0, j): Fraction(1)
                                         for j in range(k)}))
            for f in cands:
                try:
                    n2 = num.divexact(f)
                    d2 = den.divexact(f)
                except ValueError:
                    continue
                num, den = n2, d2
                stripped = True
                break
            if den.is_one() or len(den) == 1:
                return QTRatio(num, den)
        qmin = min(e[0] for e in den._terms)
        tmin = min(e[1] for e in den._terms)
        coeffs = list(den._terms.values())
        content = Fraction(gcd(*(abs(c.numerator) for c in coeffs)),
                           lcm(*(c.denominator for c in coeffs)))
        if den._terms[max(den._terms)] < 0:
            content = -content
        scale = QTPoly.monomial(-qmin, -tmin, 1 / content)
        return QTRatio(num * scale, den * scale)

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"QTRatio({self})"


def _as_ratio(x) -> "QTRatio":
    if isinstance(x, QTRatio):
        return x
    if isinstance(x, (QTPoly, int, Fraction)):
        return QTRatio(x)
    return NotImplemented


def ratio_eq(a: Union[QTRatio, QTPoly, int, Fraction],
             b: Union[QTRatio, QTPoly, int, Fraction]) -> bool:
    """Semantic equality of quotients by cross multiplication."""
    ra, rb = _as_ratio(a), _as_ratio(b)
    if ra is NotImplemented or rb is NotImplemented:
        raise TypeError("ratio_eq expects ratios, polynomials, or scalars")
    return ra.num * rb.den == rb.num * ra.den


class ZPoly:
    """Laurent polynomial in z with QTRatio coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Union[QTRatio, QTPoly, int, Fraction]] | None = None):
        data: Dict[int, QTRatio] = {}
        if coeffs:
            for k, v in coeffs.items():
                r = _as_ratio(v)
                if r is NotImplemented:
                    raise TypeError("ZPoly coefficients must be ratio-like")
                if not r.is_zero():
                    if k in data:
                        r = data[k] + r
                        if r.is_zero():
                            del data[int(k)]
                            continue
                    data[int(k)] = r
        self._coeffs = data

    @classmethod
    def zero(cls) -> "ZPoly":
        return cls()

    @classmethod
    def one(cls) -> "ZPoly":
        return cls({0: 1})

    @classmethod
    def z(cls, exp: int = 1) -> "ZPoly":
        return cls({exp: 1})

    @classmethod
    def scalar(cls, value: Union[QTRatio, QTPoly, int, Fraction]) -> "ZPoly":
        return cls({0: value})

    def coefficient(self, k: int) -> QTRatio:
        return self._coeffs.get(k, QTRatio.zero())

    def items(self) -> Iterator[Tuple[int, QTRatio]]:
        return iter(sorted(self._coeffs.items()))

    def support(self) -> Iterable[int]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_exp(self) -> int:
        """Smallest z exponent present; 0 for the zero polynomial."""
        return min(self._coeffs) if self._coeffs else 0

    def max_exp(self) -> int:
        return max(self._coeffs) if self._coeffs else 0

    def is_z_free(self) -> bool:
        return set(self._coeffs) <= {0}

    def __add__(self, other) -> "ZPoly":
        if not isinstance(other, ZPoly):
            other = ZPoly.scalar(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            if k in out:
                s = out[k] + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        res = ZPoly.__new__(ZPoly)
        res._coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "ZPoly":
        res = ZPoly.__new__(ZPoly)
        res._coeffs = {k: -v for k, v in self._coeffs.items()}
        return res

    def __sub__(self, other) -> "ZPoly":
        if not isinstance(other, ZPoly):
            other = ZPoly.scalar(other)
        return self + (-other)

    def __mul__(self, other) -> "ZPoly":
        if isinstance(other, (QTRatio, QTPoly, int, Fraction)):
            r = _as_ratio(other)
            if r.is_zero():
                return ZPoly.zero()
            res = ZPoly.__new__(ZPoly)
            res._coeffs = {k: v * r for k, v in self._coeffs.items()}
            return res
        if not isinstance(other, ZPoly):
            return NotImplemented
        out: Dict[int, QTRatio] = {}
        for ka, va in self._coeffs.items():
            for kb, vb in other._coeffs.items():
                k = ka + kb
                prod = va * vb
                if k in out:
                    s = out[k] + prod
                    if s.is_zero():
                        del out[k]
                    else:
                        out[k] = s
                elif not prod.is_zero():
                    out[k] = prod
        res = ZPoly.__new__(ZPoly)
        res._coeffs = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ZPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a nonnegative integer: {n!r}")
        result = ZPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZPoly):
            if isinstance(other, (QTRatio, QTPoly, int, Fraction)):
                other = ZPoly.scalar(other)
            else:
                return NotImplemented
        keys = set(self._coeffs) | set(other._coeffs)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    def __hash__(self) -> int:  # pragma: no cover
        raise TypeError("ZPoly is not hashable")

    def evaluate_z(self, zv: Union[int, Fraction]) -> QTRatio:
        """Substitute a nonzero rational for z, collapsing to a QTRatio."""
        zv = Fraction(zv)
        if not zv and self.min_exp() < 0:
            raise ZeroDivisionError("negative z exponent at z = 0")
        total = QTRatio.zero()
        for k, v in self._coeffs.items():
            total = total + v * QTRatio(QTPoly.const(zv ** k))
        return total

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for k, v in sorted(self._coeffs.items()):
            if k == 0:
                parts.append(f"({v})")
            elif k == 1:
                parts.append(f"({v})*z")
            else:
                parts.append(f"({v})*z^{k}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ZPoly({self})"


def poch_zq(k: int) -> ZPoly:
    """(z; q)_k = (1 - z)(1 - zq)...(1 - zq^(k-1)); requires k >= 0."""
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"poch_zq requires a nonnegative integer, got {k!r}")
    out = ZPoly.one()
    for i in range(k):
        out = out * ZPoly({0: 1, 1: QTRatio(-QTPoly.q(i))})
    return out
